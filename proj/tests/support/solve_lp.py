#!/usr/bin/env python3
"""Solve a coflowsim LP-format MILP export with scipy's HiGHS backend.

Usage: solve_lp.py model.lp
Prints "objective <value>" on success.
"""
import sys

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp


def is_number(token):
    try:
        float(token)
        return True
    except ValueError:
        return False


def parse_terms(tokens):
    """Tokens of a linear expression -> list of (coef, var)."""
    terms = []
    sign = 1.0
    coef = None
    for tok in tokens:
        if tok == "+":
            sign, coef = 1.0, None
        elif tok == "-":
            sign, coef = -1.0, None
        elif is_number(tok):
            coef = sign * float(tok)
        else:
            terms.append((coef if coef is not None else sign, tok))
            sign, coef = 1.0, None
    return terms


def parse_lp(path):
    objective = []
    constraints = []  # (terms, sense, rhs)
    binaries = set()
    section = None
    obj_tokens = []
    with open(path) as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("\\"):
                continue
            lowered = line.lower()
            if lowered == "minimize":
                section = "objective"
                continue
            if lowered == "subject to":
                objective = parse_terms(obj_tokens)
                section = "constraints"
                continue
            if lowered == "binary":
                section = "binary"
                continue
            if lowered == "end":
                break
            if section == "objective":
                tokens = line.split()
                if tokens and tokens[0].endswith(":"):
                    tokens = tokens[1:]
                obj_tokens.extend(tokens)
            elif section == "constraints":
                tokens = line.split()
                if tokens[0].endswith(":"):
                    tokens = tokens[1:]
                sense_idx = next(
                    i for i, t in enumerate(tokens) if t in (">=", "<=", "=")
                )
                terms = parse_terms(tokens[:sense_idx])
                sense = tokens[sense_idx]
                rhs = float(tokens[sense_idx + 1])
                constraints.append((terms, sense, rhs))
            elif section == "binary":
                binaries.add(line.split()[0])
    return objective, constraints, binaries


def main():
    objective, constraints, binaries = parse_lp(sys.argv[1])

    names = {}
    for coef, var in objective:
        names.setdefault(var, len(names))
    for terms, _, _ in constraints:
        for coef, var in terms:
            names.setdefault(var, len(names))
    for var in sorted(binaries):
        names.setdefault(var, len(names))
    n = len(names)

    c = np.zeros(n)
    for coef, var in objective:
        c[names[var]] += coef

    rows = []
    lbs = []
    ubs = []
    for terms, sense, rhs in constraints:
        row = np.zeros(n)
        for coef, var in terms:
            row[names[var]] += coef
        rows.append(row)
        if sense == ">=":
            lbs.append(rhs)
            ubs.append(np.inf)
        elif sense == "<=":
            lbs.append(-np.inf)
            ubs.append(rhs)
        else:
            lbs.append(rhs)
            ubs.append(rhs)

    integrality = np.zeros(n)
    upper = np.full(n, np.inf)
    for var in binaries:
        integrality[names[var]] = 1
        upper[names[var]] = 1.0

    result = milp(
        c=c,
        constraints=[LinearConstraint(np.array(rows), np.array(lbs), np.array(ubs))],
        integrality=integrality,
        bounds=Bounds(np.zeros(n), upper),
    )
    if result.status != 0:
        print("solver status %d: %s" % (result.status, result.message))
        return 1
    print("objective %.12g" % result.fun)
    return 0


if __name__ == "__main__":
    sys.exit(main())
