#!/usr/bin/env python3
"""Minimal DPLL SAT solver for the test suite.

Reads a DIMACS CNF file (first argument) and prints the competition format:
an `s SATISFIABLE`/`s UNSATISFIABLE` line plus `v` literal lines ending in 0.
Only used as a stand-in external solver; the shipped instances are tiny.
"""

import sys


def parse(path):
    num_vars = 0
    clauses = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("c"):
                continue
            if line.startswith("p"):
                num_vars = int(line.split()[2])
                continue
            lits = [int(t) for t in line.split()]
            assert lits[-1] == 0
            clauses.append(lits[:-1])
    return num_vars, clauses


def unit_propagate(clauses, assignment):
    changed = True
    while changed:
        changed = False
        for clause in clauses:
            unassigned = []
            satisfied = False
            for lit in clause:
                val = assignment.get(abs(lit))
                if val is None:
                    unassigned.append(lit)
                elif (lit > 0) == val:
                    satisfied = True
                    break
            if satisfied:
                continue
            if not unassigned:
                return False
            if len(unassigned) == 1:
                lit = unassigned[0]
                assignment[abs(lit)] = lit > 0
                changed = True
    return True


def pick_branch(clauses, assignment):
    for clause in clauses:
        for lit in clause:
            if abs(lit) not in assignment:
                satisfied = any(
                    (l > 0) == assignment.get(abs(l)) for l in clause if abs(l) in assignment
                )
                if not satisfied:
                    return abs(lit)
    return None


def dpll(clauses, assignment):
    assignment = dict(assignment)
    if not unit_propagate(clauses, assignment):
        return None
    var = pick_branch(clauses, assignment)
    if var is None:
        return assignment
    for value in (True, False):
        assignment[var] = value
        result = dpll(clauses, assignment)
        if result is not None:
            return result
        del assignment[var]
    return None


def main():
    sys.setrecursionlimit(100000)
    num_vars, clauses = parse(sys.argv[1])
    model = dpll(clauses, {})
    if model is None:
        print("s UNSATISFIABLE")
        return 20
    print("s SATISFIABLE")
    lits = [v if model.get(v, False) else -v for v in range(1, num_vars + 1)]
    line = ["v"]
    for lit in lits + [0]:
        line.append(str(lit))
        if len(line) > 20:
            print(" ".join(line))
            line = ["v"]
    if len(line) > 1:
        print(" ".join(line))
    return 10


if __name__ == "__main__":
    sys.exit(main())
