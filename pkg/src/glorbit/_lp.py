"""Tiny exact two-phase simplex method (Bland's rule) over ``Fraction``.

Only used for validating simplicial complexes, where problems have a handful
of variables.
"""

from __future__ import annotations

from fractions import Fraction


def lp_max(c, A, b):
    """Maximize ``c.x`` subject to ``A x = b``, ``x >= 0``.

    Returns the optimal value, or ``None`` when infeasible. Unbounded problems
    raise ``ValueError`` (they never arise for bounded feasible sets).
    """
    m = len(A)
    n = len(c)
    rows = []
    for i in range(m):
        r = [Fraction(x) for x in A[i]]
        bi = Fraction(b[i])
        if bi < 0:
            r = [-x for x in r]
            bi = -bi
        rows.append(r + [bi])
    # phase 1: artificial variables n .. n+m-1
    T = [rows[i][:n] + [Fraction(int(i == j)) for j in range(m)] + [rows[i][n]] for i in range(m)]
    basis = [n + i for i in range(m)]
    phase1 = [Fraction(0)] * n + [Fraction(-1)] * m
    _run(T, basis, phase1)
    if _objective(T, basis, phase1) != 0:
        return None
    # drive remaining artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(T):
        if basis[i] >= n:
            j = next((j for j in range(n) if T[i][j] != 0), None)
            if j is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, i, j)
            basis[i] = j
        i += 1
    T = [row[:n] + [row[-1]] for row in T]
    cost = [Fraction(x) for x in c]
    _run(T, basis, cost)
    return _objective(T, basis, cost)


def _objective(T, basis, cost):
    return sum(cost[basis[i]] * T[i][-1] for i in range(len(T)))


def _pivot(T, r, j):
    p = T[r][j]
    T[r] = [x / p for x in T[r]]
    for i in range(len(T)):
        if i != r and T[i][j] != 0:
            f = T[i][j]
            T[i] = [a - f * bb for a, bb in zip(T[i], T[r])]


def _run(T, basis, cost):
    nvar = len(T[0]) - 1 if T else 0
    while True:
        # reduced costs; Bland: lowest index with positive reduced cost enters
        entering = None
        for j in range(nvar):
            if j in basis:
                continue
            rc = cost[j] - sum(cost[basis[i]] * T[i][j] for i in range(len(T)))
            if rc > 0:
                entering = j
                break
        if entering is None:
            return
        best = None
        for i in range(len(T)):
            a = T[i][entering]
            if a > 0:
                ratio = T[i][-1] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            raise ValueError("unbounded linear program")
        r = best[1]
        _pivot(T, r, entering)
        basis[r] = entering
