"""Independent reference computations (sympy, brute force) used by the tests."""

from __future__ import annotations

import sympy
from sympy.polys.subresultants_qq_zz import sylvester

x, y, T = sympy.symbols("x y T")


def to_sympy_uni(a):
    return sympy.Poly(list(reversed(a)) or [0], x)


def to_sympy_bi(f):
    return sum(sympy.Integer(c) * x**i * y**j for j, col in enumerate(f) for i, c in enumerate(col) if c)


def from_sympy_uni(expr, p):
    poly = sympy.Poly(expr, x, modulus=p)
    coeffs = [int(c) % p for c in reversed(poly.all_coeffs())]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def resultant_mod_p(f, g, p):
    """Determinant of the Sylvester matrix (sympy.resultant gets some signs wrong)."""
    r = sylvester(to_sympy_bi(f), to_sympy_bi(g), y).det()
    return from_sympy_uni(sympy.expand(r), p)


def factor_mod_p(a, p):
    """Monic irreducible factors with multiplicity, as sorted coefficient lists."""
    poly = sympy.Poly(list(reversed(a)), x, modulus=p)
    _, facs = poly.factor_list()
    out = []
    for g, m in facs:
        c = [int(v) % p for v in reversed(g.all_coeffs())]
        inv = pow(c[-1], -1, p)
        out.append(([v * inv % p for v in c], m))
    return sorted(out)


def det_bruteforce(M, mul, add, sub, zero, one):
    """Laplace expansion determinant for small matrices."""
    n = len(M)
    if n == 0:
        return one
    if n == 1:
        return M[0][0]
    acc = zero
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = mul(M[0][j], det_bruteforce(minor, mul, add, sub, zero, one))
        acc = add(acc, term) if j % 2 == 0 else sub(acc, term)
    return acc


def rank_mod_p(rows, p):
    """Rank of an integer matrix over F_p by plain elimination."""
    A = [[v % p for v in r] for r in rows]
    rank = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][c], -1, p)
        for i in range(len(A)):
            if i != rank and A[i][c]:
                t = A[i][c] * inv % p
                A[i] = [(a - t * b) % p for a, b in zip(A[i], A[rank])]
        rank += 1
    return rank
