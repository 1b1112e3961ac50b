#!/usr/bin/env python3
"""Regenerate core/src/conway_table.cpp from a Conway polynomial database.

Usage: gen_conway_table.py <conway_polys.db> > core/src/conway_table.cpp

The database is the SQLite file distributed with the `galois` Python package
(Frank Luebeck's tables). Only p <= 13 and degree <= 12 are emitted.
"""
import sqlite3
import sys

PRIMES = [2, 3, 5, 7, 11, 13]
MAX_DEGREE = 12


def main() -> None:
    con = sqlite3.connect(sys.argv[1])
    rows = []
    for p in PRIMES:
        for m in range(1, MAX_DEGREE + 1):
            r = con.execute(
                "select nonzero_degrees, nonzero_coeffs from polys "
                "where characteristic=? and degree=?", (p, m)).fetchone()
            if r is None:
                continue
            coeffs = [0] * (m + 1)
            for d, c in zip(r[0].split(","), r[1].split(",")):
                coeffs[int(d)] = int(c)
            rows.append((p, m, coeffs))
    out = sys.stdout
    out.write("// Generated by tools/gen_conway_table.py. Do not edit.\n\n")
    out.write('#include "dieudonne/conway.hpp"\n\n')
    out.write("namespace dieudonne::detail {\n\n")
    out.write("// p, m, coefficients c_0 .. c_m (low degree first, c_m = 1)\n")
    out.write("const std::vector<ConwayEntry>& builtin_conway_table() {\n")
    out.write("  static const std::vector<ConwayEntry> table = {\n")
    for p, m, coeffs in rows:
        out.write("      {%d, %d, {%s}},\n" % (p, m, ", ".join(map(str, coeffs))))
    out.write("  };\n  return table;\n}\n\n}  // namespace dieudonne::detail\n")


if __name__ == "__main__":
    main()
