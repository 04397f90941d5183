"""Integral closure by iterated idealizers of trace radicals.

An order is stored as rows R over F_p[x] and a common denominator den:
w_i = sum_j R[i][j] y^j / den.  Each round computes the trace matrix, the
Q-trace radical J for Q = product of the irreducible phi with phi^2 | D,
and the idealizer of J, until the change of basis is unimodular.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import basis as BS
from . import bipoly as B
from . import polymat as PM
from . import upoly as U
from .errors import InternalInvariantBroken, NonIntegralTrace, RankDeficient
from .ops import COUNTER


@dataclass
class OrderBasis:
    rows: list
    den: list
    disc: list
    history: list = field(default_factory=list)

    def elements(self):
        return [(_trim_row(r), self.den) for r in self.rows]


def _trim_row(r):
    out = [list(c) for c in r]
    while out and not out[-1]:
        out.pop()
    return out


def _row(F, bp, n):
    return [list(bp[j]) if j < len(bp) else [] for j in range(n)]


def power_order(F, f, D):
    n = len(f) - 1
    return OrderBasis(PM.identity(F, n), [F.one], D)


def trace_matrix(F, f, V, traces=None):
    """(tr(w_i w_j)) as polynomials."""
    n = len(f) - 1
    traces = traces or B.power_traces(F, f, 2 * n - 1)
    T = [[traces[i + j] for j in range(n)] for i in range(n)]
    RT = PM.mat_mul(F, V.rows, T)
    M = PM.mat_mul(F, RT, PM.transpose(V.rows))
    den2 = U.mul(F, V.den, V.den)
    out = []
    for row in M:
        new = []
        for e in row:
            q, r = U.divmod_(F, e, den2)
            if r:
                raise NonIntegralTrace("trace of a product of basis elements is not a polynomial")
            new.append(q)
        out.append(new)
    return out


def q_trace_radical(F, M, Q):
    """Coordinates (in V) of a basis of {u in V : Q | tr(u w) for all w in V}."""
    if len(Q) <= 1:
        return PM.identity(F, len(M))
    Mq = [[U.mod(F, e, Q) for e in row] for row in M]
    return PM.kernel_mod_Q(F, Mq, Q)


def _exact_rows(F, M, d):
    out = []
    for row in M:
        new = []
        for e in row:
            q, r = U.divmod_(F, e, d)
            if r:
                raise InternalInvariantBroken("inexact division in the idealizer")
            new.append(q)
        out.append(new)
    return out


def idealizer(F, f, J, V, Q, square=True):
    """Idealizer of J as (rows, den) in power coordinates, before normalization.

    Since Q V ⊂ J, every u with u J ⊂ J lies in V / Q.  Writing u = w / Q with
    w = c V, the condition is w m_i ∈ Q J for each basis element m_i of J,
    i.e. c T_i X ≡ 0 mod Q^2 where T_i is multiplication by m_i in
    V-coordinates and X = Q J^(-1) is a polynomial matrix."""
    n = len(f) - 1
    if len(J) != n:
        raise RankDeficient("radical is not of full rank")
    G = PM.mat_mul(F, J, V.rows)
    adjR, detR = PM.inverse(F, V.rows)
    adjJ, detJ = PM.inverse(F, J)
    X = _exact_rows(F, PM.mat_scale(F, adjJ, Q), detJ)
    N = U.mul(F, Q, Q) if square else Q
    dd = U.mul(F, detR, V.den)
    blocks = []
    for i in range(n):
        P = [_row(F, B.reduce_mod_f(F, B.bp_mul(F, V.rows[j], G[i]), f), n) for j in range(n)]
        Ti = _exact_rows(F, PM.mat_mul(F, P, adjR), dd)
        Ai = PM.mat_mul(F, Ti, X)
        blocks.append([[U.mod(F, e, N) for e in row] for row in Ai])
    A = [sum((blk[j] for blk in blocks), []) for j in range(n)]
    K = PM.kernel_mod_Q(F, A, N)
    if len(K) != n:
        raise RankDeficient("idealizer has deficient rank")
    return PM.mat_mul(F, K, V.rows), U.mul(F, V.den, Q)


def idealizer_fractions(F, f, J, V):
    """Same module via the Hermite form of the stacked multiplication matrices over K(x)."""
    n = len(f) - 1
    if len(J) != n:
        raise RankDeficient("radical is not of full rank")
    G = PM.mat_mul(F, J, V.rows)
    adjG, d = PM.inverse(F, G)
    stacked = []
    for i in range(n):
        Ai = []
        for j in range(n):
            prod = B.reduce_mod_f(F, B.bp_mul(F, G[i], G[j]), f)
            P = _row(F, prod, n)
            Ai.append(PM.mat_mul(F, [P], adjG)[0])
        stacked.extend(PM.transpose(Ai))
    H, _ = PM.row_reduce_fractions(F, stacked, U.mul(F, d, V.den))
    if len(H) != n:
        raise RankDeficient("multiplication matrices have deficient rank")
    adjH, detH = PM.inverse(F, H)
    rows = PM.mat_scale(F, PM.mat_mul(F, PM.transpose(adjH), G), d)
    return rows, detH


def _normalize(F, rows, den, n):
    elems = BS.canonical_elements(F, [(_trim_row(r), den) for r in rows], n)
    D = [F.one]
    for _, dd in elems:
        D = BS._lcm(F, D, dd)
    out = []
    for num, dd in elems:
        mult = U.div_exact(F, D, dd)
        out.append([U.mul(F, num[j], mult) if j < len(num) else [] for j in range(n)])
    return out, D


def _change_det(F, old, new):
    """det C where old = C new; checks that C is polynomial (old ⊂ new)."""
    n = len(old.rows)
    adj, dR = PM.inverse(F, new.rows)
    C = PM.mat_scale(F, PM.mat_mul(F, old.rows, adj), new.den)
    den = U.mul(F, dR, old.den)
    for row in C:
        for e in row:
            if e and U.divmod_(F, e, den)[1]:
                raise InternalInvariantBroken("old order is not contained in the idealizer")
    num = U.mul(F, PM.determinant(F, old.rows), U.power(F, new.den, n))
    dd = U.mul(F, PM.determinant(F, new.rows), U.power(F, old.den, n))
    q, r = U.divmod_(F, num, dd)
    if r:
        raise InternalInvariantBroken("index of the orders is not a polynomial")
    return q


def trager_integral_basis(p, f, modulus="Q2"):
    """modulus='Q' is an unproven cheaper idealizer kept for diagnostics only."""
    F, D, facs = BS.validate_curve(p, f)
    n = len(f) - 1
    V = power_order(F, f, D)
    traces = B.power_traces(F, f, 2 * n - 1)
    guard = (len(D) - 1) // 2 + 1
    rounds = []
    with COUNTER.phase("trager"):
        while True:
            sq = U.square_multiplicity_factors(F, V.disc) if len(V.disc) > 1 else []
            Q = [F.one]
            for phi, _ in sq:
                Q = U.mul(F, Q, phi)
            if len(Q) <= 1:
                break
            if len(rounds) >= guard:
                raise InternalInvariantBroken("Trager iteration did not terminate")
            M = trace_matrix(F, f, V, traces)
            J = q_trace_radical(F, M, Q)
            rows, den = idealizer(F, f, J, V, Q, square=(modulus == "Q2"))
            rows, den = _normalize(F, rows, den, n)
            W = OrderBasis(rows, den, [])
            c = _change_det(F, V, W)
            if len(c) <= 1:
                rounds.append({"disc_before": V.disc, "det": c, "disc_after": V.disc})
                break
            disc, r = U.divmod_(F, V.disc, U.mul(F, c, c))
            if r:
                raise InternalInvariantBroken("discriminant update is not exact")
            rounds.append({"disc_before": V.disc, "det": c, "disc_after": disc})
            W.disc = disc
            W.history = V.history + [c]
            V = W
    basis = BS.IntegralBasis(p, f, BS.canonical_elements(F, V.elements(), n), "trager")
    enlarging = sum(1 for r in rounds if len(r["det"]) > 1)
    basis.report = {"iterations": enlarging, "rounds": len(rounds), "history": rounds}
    return basis
