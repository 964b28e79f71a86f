#include "cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "pivotree/errors.hpp"
#include "pivotree/generator.hpp"
#include "pivotree/mps.hpp"
#include "pivotree/pivot_rules.hpp"

namespace pivotree::cli {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr std::string_view kMctsName = "mcts";

struct Options {
  std::vector<std::string> mps;
  std::vector<std::string> gen;
  std::vector<std::string> cache;
  std::uint64_t seed = 0;
  std::vector<std::string> rules;
  std::string action = "a1";
  std::string reward = "r1";
  std::vector<double> explore_mult;
  double c_ucb = 1.0 / std::sqrt(2.0);
  std::string alpha = "auto";
  Index cap = 1000;
  std::optional<Index> runs;
  Index n_exe = 50;
  Index max_iters = kDefaultMaxIters;
  std::string out;
  std::string format = "csv";
  std::string sweep;
  std::vector<double> values;
  std::vector<double> fractions;
  bool no_timing = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string join(const std::vector<Index>& xs, const char* sep = " ") {
  std::string s;
  for (Index k = 0; k < xs.size(); ++k) s += (k ? sep : "") + std::to_string(xs[k]);
  return s;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <typename F>
void parallel_for(Index count, F&& body) {
  const unsigned threads = std::min<unsigned>(worker_threads(), static_cast<unsigned>(count));
  if (threads <= 1) {
    for (Index k = 0; k < count; ++k) body(k);
    return;
  }
  std::atomic<Index> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (Index k; (k = next++) < count;) body(k);
    });
  for (auto& th : pool) th.join();
}

// Instances are either loaded or carry the reason they could not be.
struct Slot {
  std::string id;
  std::optional<Instance> instance;
  std::string error;
};

std::vector<Slot> load_instances(const Options& o) {
  std::vector<Slot> out;
  const auto attempt = [&](std::string id, const std::function<Instance()>& load) {
    Slot s{std::move(id), std::nullopt, {}};
    try {
      s.instance = load();
      s.id = s.instance->id;
    } catch (const std::exception& e) {
      s.error = e.what();
    }
    out.push_back(std::move(s));
  };
  for (const auto& path : o.mps) attempt(path, [&] { return load_mps(path); });
  for (Index k = 0; k < o.gen.size(); ++k)
    attempt(o.gen[k], [&] { return load_generated(o.gen[k], o.seed + k); });
  for (const auto& path : o.cache)
    attempt(path, [&] {
      std::ifstream in(path);
      if (!in) throw Error("cannot open " + path);
      const RandomInstance inst = read_instance(in);
      Instance result{"cache-" + std::to_string(inst.m) + "x" + std::to_string(inst.n) + "-s" +
                          std::to_string(inst.seed),
                      to_standard_form(inst), {}, inst.m, inst.n, -1.0};
      result.initial = phase_one(result.lp).state;
      return result;
    });
  if (out.empty()) throw UsageError("no instance given (use --mps, --gen or --cache)");
  return out;
}

Instance require_single(const Options& o) {
  auto slots = load_instances(o);
  if (slots.size() != 1) throw UsageError("this subcommand takes exactly one instance");
  if (!slots[0].instance) throw Error(slots[0].id + ": " + slots[0].error);
  return std::move(*slots[0].instance);
}

MctsConfig mcts_config(const Options& o, const Instance& inst, double mult) {
  MctsConfig cfg;
  const auto action = parse_action_variant(o.action);
  const auto reward = parse_reward_variant(o.reward);
  if (!action) throw UsageError("unknown --action '" + o.action + "'");
  if (!reward) throw UsageError("unknown --reward '" + o.reward + "'");
  cfg.action = *action;
  cfg.reward = *reward;
  cfg.n_explore = explorations_for(mult, inst.lp.cols());
  cfg.c_ucb = o.c_ucb;
  if (o.alpha != "auto") {
    try {
      cfg.alpha.fixed = std::stod(o.alpha);
    } catch (const std::exception&) {
      throw UsageError("--alpha expects a number or 'auto'");
    }
    if (*cfg.alpha.fixed < 0.0 || *cfg.alpha.fixed > 1.0) throw UsageError("--alpha must lie in [0, 1]");
  }
  if (o.cap == 0) throw UsageError("--cap must be at least 1");
  cfg.rollout_cap = o.cap;
  cfg.seed = o.seed;
  cfg.max_decisions = o.max_iters;
  return cfg;
}

double default_mult(const Options& o) { return o.explore_mult.empty() ? 6.0 : o.explore_mult.front(); }

// Replays a path from the instance's initial basis; throws if it is not a valid optimal path.
void verify(const Instance& inst, const PivotPath& path) {
  const ReplayResult r = replay_path(inst.lp, inst.initial, path.entering);
  const double obj = objective_value(inst.lp, r.final_state);
  if (!r.reached_optimal || std::abs(obj - path.final_objective) > 1e-6 * std::max(1.0, std::abs(obj)))
    throw Error("replay of the reported path does not reach the reported optimum");
}

struct Cell {
  /// Pivot count when the run reached an optimum.
  std::optional<Index> count;
  /// Printed form: the count, "1000+", "unbounded", "dead_end" or "error".
  std::string text;
  bool error = false;
  PivotPath path;
  double seconds = 0.0;
  std::string message;
};

Cell classical_cell(const Instance& inst, RuleKind rule, Index max_iters) {
  Cell c;
  const auto t0 = Clock::now();
  const SimplexRun run = run_simplex(inst.lp, inst.initial, rule, max_iters);
  c.seconds = seconds_since(t0);
  c.path = run.path;
  switch (run.status) {
    case RunStatus::Optimal:
      verify(inst, run.path);
      c.count = run.pivot_count();
      c.text = std::to_string(run.pivot_count());
      break;
    case RunStatus::IterLimit: c.text = std::to_string(max_iters) + "+"; break;
    case RunStatus::Unbounded: c.text = "unbounded"; break;
  }
  return c;
}

Cell mcts_cell(const Instance& inst, const MctsConfig& cfg, Index runs) {
  Cell c;
  const auto t0 = Clock::now();
  const PathCollection pc = collect_paths(inst.lp, inst.initial, cfg, runs);
  c.seconds = seconds_since(t0);
  if (pc.min_length) {
    c.count = *pc.min_length;
    c.text = std::to_string(*pc.min_length);
    c.path = pc.paths.front();
  } else {
    const MctsStatus s = pc.runs.front().status;
    c.text = s == MctsStatus::IterLimit ? std::to_string(cfg.max_decisions) + "+" : std::string(to_string(s));
  }
  return c;
}

Cell solve_cell(const Instance& inst, const std::string& rule, const Options& o, Index runs) {
  try {
    if (rule == kMctsName) return mcts_cell(inst, mcts_config(o, inst, default_mult(o)), runs);
    const auto kind = parse_rule(rule);
    if (!kind) throw UsageError("unknown rule '" + rule + "'");
    return classical_cell(inst, *kind, o.max_iters);
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    Cell c;
    c.text = "error";
    c.error = true;
    c.message = e.what();
    return c;
  }
}

std::vector<std::string> rule_list(const Options& o, bool single) {
  std::vector<std::string> rules;
  if (o.rules.empty()) {
    if (single) return {std::string(kMctsName)};
    for (RuleKind r : kAllRules) rules.emplace_back(to_string(r));
    rules.emplace_back(kMctsName);
    return rules;
  }
  for (const auto& r : o.rules) {
    if (r == kMctsName) {
      rules.push_back(r);
    } else if (const auto kind = parse_rule(r)) {
      rules.emplace_back(to_string(*kind));
    } else {
      throw UsageError("unknown rule '" + r + "'");
    }
  }
  return rules;
}

struct Output {
  std::ostream& fallback;
  std::ofstream file;
  std::ostream* stream;

  Output(const Options& o, std::ostream& out) : fallback(out), stream(&out) {
    if (o.out.empty()) return;
    file.open(o.out, std::ios::binary);
    if (!file) throw Error("cannot write " + o.out);
    stream = &file;
  }
  std::ostream& operator*() { return *stream; }
};

void check_format(const Options& o) {
  if (o.format != "csv" && o.format != "json") throw UsageError("--format must be csv or json");
}

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
  check_format(o);
  const auto rules = rule_list(o, true);
  if (rules.size() != 1) throw UsageError("solve takes a single --rule");
  const auto slots = load_instances(o);

  int code = kOk;
  json records = json::array();
  std::ostringstream csv;
  csv << "instance,m,n,rule,pivots,seconds,objective,path\n";
  for (const Slot& s : slots) {
    if (!s.instance) {
      err << s.id << ": " << s.error << '\n';
      code = kPartial;
      continue;
    }
    const Instance& inst = *s.instance;
    const Cell c = solve_cell(inst, rules[0], o, 1);
    if (c.error) {
      err << inst.id << ": " << c.message << '\n';
      code = kPartial;
      continue;
    }
    const std::string secs = o.no_timing ? "NA" : num(c.seconds);
    std::string objective = "NA";
    if (c.count) objective = num(inst.report_objective(replay_path(inst.lp, inst.initial, c.path.entering).final_state));
    csv << inst.id << ',' << inst.rows << ',' << inst.columns << ',' << rules[0] << ',' << c.text
        << ',' << secs << ',' << objective << ',' << join(c.path.entering) << '\n';
    json rec;
    rec["instance"] = inst.id;
    rec["m"] = inst.rows;
    rec["n"] = inst.columns;
    rec["rule"] = rules[0];
    rec["pivots"] = c.text;
    rec["seconds"] = o.no_timing ? json(nullptr) : json(c.seconds);
    rec["objective"] = objective == "NA" ? json(nullptr) : json(std::stod(objective));
    rec["path"] = c.path.entering;
    records.push_back(rec);
  }
  Output dst(o, out);
  if (o.format == "json")
    *dst << records.dump(2) << '\n';
  else
    *dst << csv.str();
  return code;
}

// Rules holding the best and second-best distinct counts.
std::pair<std::vector<std::string>, std::vector<std::string>> rank_cells(
    const std::vector<std::string>& rules, const std::vector<Cell>& cells) {
  std::set<Index> distinct;
  for (const Cell& c : cells)
    if (c.count) distinct.insert(*c.count);
  std::vector<std::string> best;
  std::vector<std::string> second;
  if (distinct.empty()) return {best, second};
  const Index first = *distinct.begin();
  const std::optional<Index> next =
      distinct.size() > 1 ? std::optional<Index>(*std::next(distinct.begin())) : std::nullopt;
  for (Index k = 0; k < cells.size(); ++k) {
    if (!cells[k].count) continue;
    if (*cells[k].count == first) best.push_back(rules[k]);
    if (next && *cells[k].count == *next) second.push_back(rules[k]);
  }
  return {best, second};
}

std::string join_names(const std::vector<std::string>& names) {
  std::string s;
  for (Index k = 0; k < names.size(); ++k) s += (k ? "|" : "") + names[k];
  return s;
}

int cmd_compare(const Options& o, std::ostream& out, std::ostream& err) {
  check_format(o);
  const auto rules = rule_list(o, false);
  const Index runs = o.runs.value_or(5);
  if (runs == 0) throw UsageError("--runs must be at least 1");
  const auto slots = load_instances(o);

  std::vector<std::vector<Cell>> table(slots.size(), std::vector<Cell>(rules.size()));
  // Validate MCTS flags once, before any worker starts.
  for (const Slot& s : slots)
    if (s.instance && std::find(rules.begin(), rules.end(), kMctsName) != rules.end())
      mcts_config(o, *s.instance, default_mult(o));
  parallel_for(slots.size() * rules.size(), [&](Index k) {
    const Index i = k / rules.size();
    const Index r = k % rules.size();
    if (!slots[i].instance) {
      table[i][r] = Cell{std::nullopt, "error", true, {}, 0.0, slots[i].error};
      return;
    }
    table[i][r] = solve_cell(*slots[i].instance, rules[r], o, runs);
  });

  int code = kOk;
  std::ostringstream csv;
  csv << "instance,m,n";
  for (const auto& r : rules) csv << ',' << r;
  csv << ",best,second\n";
  json rows = json::array();
  for (Index i = 0; i < slots.size(); ++i) {
    const Slot& s = slots[i];
    for (Index r = 0; r < rules.size(); ++r) {
      if (!table[i][r].error) continue;
      err << s.id << " / " << rules[r] << ": " << table[i][r].message << '\n';
      code = kPartial;
    }
    const auto [best, second] = rank_cells(rules, table[i]);
    const Index m = s.instance ? s.instance->rows : 0;
    const Index n = s.instance ? s.instance->columns : 0;
    csv << s.id << ',' << m << ',' << n;
    json row;
    row["instance"] = s.id;
    row["m"] = m;
    row["n"] = n;
    json counts = json::object();
    for (Index r = 0; r < rules.size(); ++r) {
      csv << ',' << table[i][r].text;
      counts[rules[r]] = table[i][r].count ? json(*table[i][r].count) : json(table[i][r].text);
    }
    csv << ',' << join_names(best) << ',' << join_names(second) << '\n';
    row["counts"] = counts;
    row["best"] = best;
    row["second"] = second;
    rows.push_back(row);
  }
  Output dst(o, out);
  if (o.format == "json")
    *dst << rows.dump(2) << '\n';
  else
    *dst << csv.str();
  return code;
}

int cmd_models(const Options& o, std::ostream& out, std::ostream& err) {
  check_format(o);
  const Instance inst = require_single(o);
  std::vector<double> mults = o.explore_mult;
  if (mults.empty())
    for (int k = 1; k <= 10; ++k) mults.push_back(k);
  const Index runs = o.runs.value_or(5);
  if (runs == 0) throw UsageError("--runs must be at least 1");

  struct Row {
    std::string model;
    double mult;
    double mean_pivots;
    double mean_seconds;
    Index failures;
  };
  std::vector<Row> rows;
  for (ActionVariant a : {ActionVariant::A1, ActionVariant::A2}) {
    for (RewardVariant r : {RewardVariant::R1, RewardVariant::R2}) {
      std::string model = std::string(to_string(a)) + "+" + std::string(to_string(r));
      std::transform(model.begin(), model.end(), model.begin(), [](unsigned char ch) { return std::toupper(ch); });
      for (double mult : mults) {
        MctsConfig cfg = mcts_config(o, inst, mult);
        cfg.action = a;
        cfg.reward = r;
        std::vector<double> pivots(runs);
        std::vector<double> secs(runs);
        std::vector<char> failed(runs, 0);
        parallel_for(runs, [&](Index k) {
          MctsConfig c = cfg;
          c.seed = cfg.seed + k;
          const auto t0 = Clock::now();
          const MctsResult res = mcts_solve(inst.lp, inst.initial, c);
          secs[k] = seconds_since(t0);
          pivots[k] = static_cast<double>(res.path.length());
          if (res.status != MctsStatus::Optimal) {
            failed[k] = 1;
            return;
          }
          try {
            verify(inst, res.path);
          } catch (const Error&) {
            failed[k] = 1;
          }
        });
        Row row{model, mult, 0.0, 0.0, 0};
        for (Index k = 0; k < runs; ++k) {
          row.mean_pivots += pivots[k] / static_cast<double>(runs);
          row.mean_seconds += secs[k] / static_cast<double>(runs);
          row.failures += static_cast<Index>(failed[k]);
        }
        rows.push_back(row);
      }
    }
  }

  // A1 models are expected to be at least as fast as A2 ones; logged only.
  if (!o.no_timing) {
    for (Index k = 0; k < mults.size(); ++k) {
      const double a1 = std::min(rows[k].mean_seconds, rows[mults.size() + k].mean_seconds);
      const double a2 = std::min(rows[2 * mults.size() + k].mean_seconds, rows[3 * mults.size() + k].mean_seconds);
      if (a1 > a2) err << "note: A2 faster than A1 at multiplier " << num(mults[k]) << '\n';
    }
  }

  int code = kOk;
  Output dst(o, out);
  if (o.format == "json") {
    json arr = json::array();
    for (const Row& r : rows) {
      json j;
      j["model"] = r.model;
      j["multiplier"] = r.mult;
      j["mean_pivots"] = r.mean_pivots;
      j["mean_seconds"] = o.no_timing ? json(nullptr) : json(r.mean_seconds);
      j["failures"] = r.failures;
      arr.push_back(j);
    }
    *dst << arr.dump(2) << '\n';
  } else {
    *dst << "model,multiplier,mean_pivots,mean_seconds,failures\n";
    for (const Row& r : rows)
      *dst << r.model << ',' << num(r.mult) << ',' << num(r.mean_pivots) << ','
           << (o.no_timing ? "NA" : num(r.mean_seconds)) << ',' << r.failures << '\n';
  }
  for (const Row& r : rows)
    if (r.failures) code = kPartial;
  return code;
}

json path_json(const Instance& inst, const PivotPath& p) {
  json j;
  j["entering"] = p.entering;
  std::vector<std::string> names;
  for (Index col : p.entering)
    names.push_back(col < inst.lp.var_names.size() ? inst.lp.var_names[col] : std::to_string(col));
  j["columns"] = names;
  j["length"] = p.length();
  j["objective"] = inst.objective_sign * p.final_objective;
  return j;
}

PathCollection verified_paths(const Instance& inst, const Options& o) {
  if (o.n_exe == 0) throw UsageError("--n-exe must be at least 1");
  const MctsConfig cfg = mcts_config(o, inst, default_mult(o));
  PathCollection pc = collect_paths(inst.lp, inst.initial, cfg, o.n_exe, worker_threads());
  for (const PivotPath& p : pc.paths) verify(inst, p);
  return pc;
}

int cmd_paths(const Options& o, std::ostream& out, std::ostream&) {
  const Instance inst = require_single(o);
  const PathCollection pc = verified_paths(inst, o);
  json j;
  j["instance"] = inst.id;
  j["n_exe"] = o.n_exe;
  j["min_length"] = pc.min_length ? json(*pc.min_length) : json(nullptr);
  j["paths"] = json::array();
  for (const PivotPath& p : pc.paths) j["paths"].push_back(path_json(inst, p));
  j["curve"] = pc.discovery_curve;
  Output dst(o, out);
  *dst << j.dump(2) << '\n';
  return pc.min_length ? kOk : kPartial;
}

int cmd_ablate(const Options& o, std::ostream& out, std::ostream&) {
  check_format(o);
  if (o.sweep != "c" && o.sweep != "alpha") throw UsageError("--sweep must be c or alpha");
  if (o.values.empty()) throw UsageError("empty sweep: give --values");
  const Instance inst = require_single(o);
  const Index runs = o.runs.value_or(5);
  if (runs == 0) throw UsageError("--runs must be at least 1");
  std::vector<double> fractions = o.fractions;
  if (fractions.empty()) {
    if (o.sweep == "alpha")
      fractions = {1.0, 0.5, 0.4, 0.3, 0.2, 0.1};
    else
      fractions = {default_mult(o)};
  }

  struct Row {
    double fraction;
    double value;
    double mean_pivots;
    Index failures;
  };
  std::vector<Row> rows;
  for (double fraction : fractions) {
    for (double value : o.values) {
      MctsConfig cfg = mcts_config(o, inst, fraction);
      if (o.sweep == "c") {
        cfg.c_ucb = value;
      } else {
        if (value < 0.0 || value > 1.0) throw UsageError("alpha values must lie in [0, 1]");
        cfg.alpha.fixed = value;
      }
      std::vector<double> pivots(runs);
      std::vector<char> failed(runs, 0);
      parallel_for(runs, [&](Index k) {
        MctsConfig c = cfg;
        c.seed = cfg.seed + k;
        const MctsResult res = mcts_solve(inst.lp, inst.initial, c);
        pivots[k] = static_cast<double>(res.path.length());
        failed[k] = res.status != MctsStatus::Optimal;
      });
      Row row{fraction, value, 0.0, 0};
      for (Index k = 0; k < runs; ++k) {
        row.mean_pivots += pivots[k] / static_cast<double>(runs);
        row.failures += static_cast<Index>(failed[k]);
      }
      rows.push_back(row);
    }
  }

  Output dst(o, out);
  if (o.format == "json") {
    json arr = json::array();
    for (const Row& r : rows) {
      json j;
      j["parameter"] = o.sweep;
      j["value"] = r.value;
      j["explore_fraction"] = r.fraction;
      j["mean_pivots"] = r.mean_pivots;
      j["failures"] = r.failures;
      arr.push_back(j);
    }
    *dst << arr.dump(2) << '\n';
  } else {
    *dst << "parameter,value,explore_fraction,mean_pivots,failures\n";
    for (const Row& r : rows)
      *dst << o.sweep << ',' << num(r.value) << ',' << num(r.fraction) << ',' << num(r.mean_pivots)
           << ',' << r.failures << '\n';
  }
  int code = kOk;
  for (const Row& r : rows)
    if (r.failures) code = kPartial;
  return code;
}

int cmd_label(const Options& o, std::ostream& out, std::ostream& err) {
  const auto slots = load_instances(o);
  int code = kOk;
  std::ostringstream lines;
  for (const Slot& s : slots) {
    if (!s.instance) {
      err << s.id << ": " << s.error << '\n';
      code = kPartial;
      continue;
    }
    const Instance& inst = *s.instance;
    PathCollection pc;
    try {
      pc = verified_paths(inst, o);
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception& e) {
      err << inst.id << ": " << e.what() << '\n';
      code = kPartial;
      continue;
    }
    if (!pc.min_length) {
      err << inst.id << ": no optimal path found\n";
      code = kPartial;
      continue;
    }
    // Decision states in first-seen order, with the union of optimal next actions.
    struct Decision {
      Index depth;
      SimplexState state;
      std::set<Index> actions;
    };
    std::vector<Decision> decisions;
    std::map<BasisSignature, Index> seen;
    for (const PivotPath& p : pc.paths) {
      SimplexState state = inst.initial;
      for (Index d = 0; d < p.length(); ++d) {
        BasisSignature sig = basis_signature(state);
        auto it = seen.find(sig);
        if (it == seen.end()) {
          it = seen.emplace(std::move(sig), decisions.size()).first;
          decisions.push_back({d, state, {}});
        }
        decisions[it->second].actions.insert(p.entering[d]);
        pivot_in_place(state, inst.lp, p.entering[d]);
      }
    }
    for (const Decision& d : decisions) {
      json j;
      j["instance"] = inst.id;
      j["depth"] = d.depth;
      j["basis"] = basis_signature(d.state).columns;
      json dj = json::array();
      for (Eigen::Index k = 0; k < d.state.reduced_costs().size(); ++k)
        dj.push_back(d.state.reduced_costs()[k]);
      j["reduced_costs"] = dj;
      j["optimal_actions"] = std::vector<Index>(d.actions.begin(), d.actions.end());
      lines << j.dump() << '\n';
    }
  }
  Output dst(o, out);
  *dst << lines.str();
  return code;
}

int cmd_gen(const Options& o, std::ostream& out, std::ostream&) {
  if (o.gen.size() > 1) throw UsageError("gen takes at most one --gen");
  Index m;
  Index n;
  if (o.gen.empty()) {
    std::tie(m, n) = gen_random_dims(o.seed);
  } else {
    try {
      std::tie(m, n) = parse_dims(o.gen.front());
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  Output dst(o, out);
  write_instance(*dst, draw_random(m, n, o.seed));
  return kOk;
}

}  // namespace

std::pair<Index, Index> parse_dims(const std::string& dims) {
  const auto x = dims.find_first_of("xX");
  const auto digits = [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
  };
  if (x == std::string::npos || !digits(dims.substr(0, x)) || !digits(dims.substr(x + 1)))
    throw std::invalid_argument("expected MxN, got '" + dims + "'");
  const Index m = std::stoul(dims.substr(0, x));
  const Index n = std::stoul(dims.substr(x + 1));
  if (m == 0 || n == 0) throw std::invalid_argument("dimensions must be positive");
  return {m, n};
}

Instance load_mps(const std::string& path) {
  const RawLP raw = read_mps_file(path);
  ConvertedLP conv = to_standard_form(raw);
  Instance inst;
  inst.id = raw.name.empty() ? std::filesystem::path(path).stem().string() : raw.name;
  inst.rows = raw.rows.size();
  inst.columns = raw.columns.size();
  inst.objective_sign = conv.map.sense;
  inst.lp = std::move(conv.lp);
  inst.initial = phase_one(inst.lp).state;
  return inst;
}

Instance load_generated(const std::string& dims, std::uint64_t seed) {
  const auto [m, n] = parse_dims(dims);
  Instance inst;
  inst.id = "rand-" + std::to_string(m) + "x" + std::to_string(n) + "-s" + std::to_string(seed);
  inst.rows = m;
  inst.columns = n;
  // Generated models maximize c^T x.
  inst.objective_sign = -1.0;
  inst.lp = gen_random(m, n, seed);
  inst.initial = phase_one(inst.lp).state;
  return inst;
}

unsigned worker_threads() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PIVOTREE_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Pivot-rule experiments for the simplex method", "pivotree"};
  app.set_config("--config", "", "key = value file with defaults; command-line flags win");
  app.require_subcommand(1);

  app.add_option("--mps", o.mps, "MPS file (repeatable)");
  app.add_option("--gen", o.gen, "Random instance MxN (repeatable; the k-th uses seed + k)");
  app.add_option("--cache", o.cache, "Cached random instance written by `gen` (repeatable)");
  app.add_option("--seed", o.seed, "RNG seed");
  app.add_option("--rule", o.rules, "Pivot rule: dantzig, bland, steepest, greatest, devex or mcts")
      ->delimiter(',');
  app.add_option("--action", o.action, "MCTS action set: a1 or a2");
  app.add_option("--reward", o.reward, "MCTS reward: r1 or r2");
  app.add_option("--explore-mult", o.explore_mult, "Explorations per decision as a multiple of the column count")
      ->delimiter(',');
  app.add_option("--c-ucb", o.c_ucb, "UCB exploration constant");
  app.add_option("--alpha", o.alpha, "Selection threshold alpha in [0,1], or auto");
  app.add_option("--cap", o.cap, "Max pivots per rollout");
  app.add_option("--runs", o.runs, "Repetitions (MCTS keeps the best)");
  app.add_option("--n-exe", o.n_exe, "MCTS executions for path collection");
  app.add_option("--max-iters", o.max_iters, "Pivot limit per solve");
  app.add_option("--out", o.out, "Output file (default: stdout)");
  app.add_option("--format", o.format, "csv or json");
  app.add_option("--sweep", o.sweep, "ablate: c or alpha");
  app.add_option("--values", o.values, "ablate: swept values")->delimiter(',');
  app.add_option("--fractions", o.fractions, "ablate: exploration multiples of the column count")
      ->delimiter(',');
  app.add_flag("--no-timing", o.no_timing, "Omit wall-clock columns");

  const std::map<std::string, std::function<int(const Options&, std::ostream&, std::ostream&)>> commands = {
      {"solve", cmd_solve},   {"compare", cmd_compare}, {"models", cmd_models}, {"paths", cmd_paths},
      {"ablate", cmd_ablate}, {"label", cmd_label},     {"gen", cmd_gen},
  };
  const std::map<std::string, std::string> help = {
      {"solve", "Solve one instance with one rule"},
      {"compare", "Pivot counts of several rules on several instances"},
      {"models", "Mean pivots and time of the four MCTS models per exploration multiple"},
      {"paths", "Distinct shortest pivot paths found over repeated MCTS runs"},
      {"ablate", "Mean pivots while sweeping C or alpha"},
      {"label", "Optimal entering columns per decision, as JSON lines"},
      {"gen", "Write a seeded random instance in the cache format"},
  };
  for (const auto& [name, _] : commands) app.add_subcommand(name, help.at(name))->fallthrough();

  std::vector<const char*> args;
  for (const auto& a : argv) args.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(args.size()), args.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    return commands.at(name)(o, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kPartial;
  }
}

}  // namespace pivotree::cli
