#!/usr/bin/env python3
"""Compute reference optima for the vendored NETLIB corpus with an external solver.

The MPS reader here is deliberately separate from the C++ parser so the two can
cross-check each other. Only the sections used by the corpus are handled
(ROWS, COLUMNS, RHS, RANGES, BOUNDS with UP/LO/FX).

Usage: reference_objectives.py data/netlib/*.mps
"""
import sys

import numpy as np
from scipy.optimize import linprog


def read_mps(path):
    rows, kinds, obj_row = [], {}, None
    cols, coef, rhs, ranges, lo, up = [], {}, {}, {}, {}, {}
    section = None
    with open(path) as fh:
        for line in fh:
            if not line.strip() or line.startswith("*"):
                continue
            if not line[0].isspace():
                section = line.split()[0]
                continue
            tok = line.split()
            if section == "ROWS":
                kind, name = tok
                if kind == "N" and obj_row is None:
                    obj_row = name
                elif kind != "N":
                    rows.append(name)
                    kinds[name] = kind
            elif section == "COLUMNS":
                col = tok[0]
                if col not in coef:
                    cols.append(col)
                    coef[col] = {}
                for r, v in zip(tok[1::2], tok[2::2]):
                    coef[col][r] = float(v)
            elif section in ("RHS", "RANGES"):
                # The set name is optional; an even token count means it was left blank.
                pairs = tok if len(tok) % 2 == 0 else tok[1:]
                target = rhs if section == "RHS" else ranges
                for r, v in zip(pairs[0::2], pairs[1::2]):
                    target[r] = float(v)
            elif section == "BOUNDS":
                kind, col, val = tok[0], tok[2], float(tok[3])
                if kind == "UP":
                    up[col] = val
                elif kind == "LO":
                    lo[col] = val
                elif kind == "FX":
                    lo[col] = up[col] = val
                else:
                    raise ValueError(f"unsupported bound {kind}")
    idx = {c: j for j, c in enumerate(cols)}
    c = np.zeros(len(cols))
    a_ub, b_ub, a_eq, b_eq = [], [], [], []
    dense = {r: np.zeros(len(cols)) for r in rows}
    for col, entries in coef.items():
        for r, v in entries.items():
            if r == obj_row:
                c[idx[col]] = v
            elif r in dense:
                dense[r][idx[col]] = v
    for r in rows:
        a, b, k = dense[r], rhs.get(r, 0.0), kinds[r]
        if r in ranges:
            rg = ranges[r]
            if k == "L":
                lo_b, hi_b = b - abs(rg), b
            elif k == "G":
                lo_b, hi_b = b, b + abs(rg)
            else:
                lo_b, hi_b = (b, b + rg) if rg > 0 else (b + rg, b)
            a_ub += [a, -a]
            b_ub += [hi_b, -lo_b]
        elif k == "L":
            a_ub.append(a)
            b_ub.append(b)
        elif k == "G":
            a_ub.append(-a)
            b_ub.append(-b)
        else:
            a_eq.append(a)
            b_eq.append(b)
    bounds = [(lo.get(col, 0.0), up.get(col, None)) for col in cols]
    offset = -rhs.get(obj_row, 0.0)
    return c, np.array(a_ub), np.array(b_ub), np.array(a_eq), np.array(b_eq), bounds, offset


def main(paths):
    for path in paths:
        c, a_ub, b_ub, a_eq, b_eq, bounds, offset = read_mps(path)
        res = linprog(c, A_ub=a_ub if len(a_ub) else None, b_ub=b_ub if len(b_ub) else None,
                      A_eq=a_eq if len(a_eq) else None, b_eq=b_eq if len(b_eq) else None,
                      bounds=bounds, method="highs")
        print(f"{path.split('/')[-1]:14s} status={res.status} objective={res.fun + offset:.12g}")


if __name__ == "__main__":
    main(sys.argv[1:])
