#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pivotree {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidModel : public Error {
 public:
  using Error::Error;
};

class SingularBasis : public Error {
 public:
  using Error::Error;
};

/// No row limits the step along the entering column.
class Unbounded : public Error {
 public:
  using Error::Error;
};

class Infeasible : public Error {
 public:
  using Error::Error;
};

/// An artificial variable is basic at zero level and no original column can replace it.
class DegenerateArtificialStall : public Error {
 public:
  DegenerateArtificialStall(std::string row, std::size_t position)
      : Error("artificial variable for row '" + row + "' cannot leave the basis"),
        row_(std::move(row)),
        position_(position) {}

  const std::string& row() const { return row_; }
  std::size_t position() const { return position_; }

 private:
  std::string row_;
  std::size_t position_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class UnsupportedFeature : public Error {
 public:
  UnsupportedFeature(std::string section, std::string feature)
      : Error("unsupported " + feature + " in " + section),
        section_(std::move(section)),
        feature_(std::move(feature)) {}

  const std::string& section() const { return section_; }
  const std::string& feature() const { return feature_; }

 private:
  std::string section_;
  std::string feature_;
};

class GraphTooLarge : public Error {
 public:
  using Error::Error;
};

class AlreadyTerminal : public Error {
 public:
  using Error::Error;
};

/// Every child of a decision node is forbidden.
class DeadEnd : public Error {
 public:
  using Error::Error;
};

class ZeroLengthEpisode : public Error {
 public:
  using Error::Error;
};

}  // namespace pivotree
