"""Integral bases by branch-wise normalization.

Per square factor phi, work at x' = x - alpha over the local field L.  For
every singular point (0, c) above x' = 0 the Weierstrass part of g is split
into branches; each branch gets the triangular basis built from its
truncation chain, the branches are glued with Bezout cofactors, the unit
factor f0 is put back, and a Hermite form makes the result triangular.
Contributions of all points are summed, lifted to F_p[x] and glued by CRT.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor

from . import basis as BS
from . import bipoly as B
from . import upoly as U
from .errors import InsufficientPrecision, InternalInvariantBroken
from .field import PrimeField
from .ops import COUNTER
from .puiseux import LocalExpansions, bezout_cofactors, branch_factorization, centers, norm_of_expansion


@dataclass
class ChainLink:
    g: list
    u: int
    sigma: Fraction
    truncations: list


@dataclass
class BranchBasis:
    numerators: list
    exponents: list


def _tval(L, a, b, limit):
    """Index of the first differing t-coefficient of two series."""
    for j in range(limit):
        ca = a[j] if j < len(a) else L.zero
        cb = b[j] if j < len(b) else L.zero
        if ca != cb:
            return j
    raise InsufficientPrecision("series agree to working precision")


def truncation_chain(L, series, e, tprec):
    """Chain (g_j, u_j, sigma_j) of one branch from its e conjugate series in t = x^(1/e)."""
    cur = [tuple(U.trim(L, list(s))) for s in series]
    gammas = [list(s) for s in series]
    chain = []
    while len(cur) > 1:
        t = max(_tval(L, a, b, tprec) for i, a in enumerate(cur) for b in cur[i + 1:])
        truncs = [tuple(U.trim(L, list(s[:t]))) for s in cur]
        distinct = sorted(set(truncs), key=lambda s: [L.sort_key(c) for c in s])
        r = len(distinct)
        if len(cur) % r:
            raise InternalInvariantBroken("truncation classes have unequal sizes")
        g = norm_of_expansion(L, [list(s) for s in distinct], e)
        sig = [Fraction(sum(_tval(L, gam, list(eta), tprec) for eta in distinct), e) for gam in gammas[:2]]
        if len(sig) == 2 and sig[0] != sig[1]:
            raise InternalInvariantBroken("sigma depends on the chosen expansion")
        chain.append(ChainLink(g, len(cur) // r, sig[0], [list(s) for s in distinct]))
        cur = distinct
    return chain


def branch_numerators(L, chain, m):
    """Greedy exponent vectors: p_d = prod g_k^nu_k and e_d = floor(sum nu_k sigma_k)."""
    nums, exps = [[[L.one]]], [0]
    powers = [[[[L.one]]] for _ in chain]
    for d in range(1, m):
        rem = d
        p = [[L.one]]
        tot = Fraction(0)
        for k, link in enumerate(chain):
            r = len(link.g) - 1
            nu = min(link.u, rem // r)
            rem -= nu * r
            while len(powers[k]) <= nu:
                powers[k].append(B.bp_mul(L, powers[k][-1], link.g))
            if nu:
                p = B.bp_mul(L, p, powers[k][nu])
                tot += nu * link.sigma
        if rem:
            raise InternalInvariantBroken("greedy exponents do not reach the degree")
        nums.append(p)
        exps.append(floor(tot))
    return BranchBasis(nums, exps)


def glue_branches(L, branch_bases, cofactors, factors, W, prec):
    """Elements b_i h_i p_j / x^(c_i + e_j), numerators reduced mod W and x^(c_i + e_j)."""
    out = []
    for i, (bb, (_, b, c)) in enumerate(zip(branch_bases, cofactors)):
        h = [[L.one]]
        for j, fj in enumerate(factors):
            if j != i:
                h = B.bp_mul_trunc(L, h, fj, prec)
        bh = B.bp_mul_trunc(L, b, h, prec)
        for p, e in zip(bb.numerators, bb.exponents):
            s = c + e
            if s > prec:
                raise InsufficientPrecision("Bezout data too short for the gluing")
            num = B.bp_mul_trunc(L, bh, p, max(s, 1))
            _, num = B.bp_divmod_y_trunc(L, num, W, max(s, 1))
            out.append((B.bp_truncate_x(L, num, s), s))
    return out


def include_unit_factor(L, glued, f0, n):
    """(1, y, ..., y^(d0-1), f0 q_0, f0 q_1, ...) with f0 truncated at the largest exponent."""
    d0 = len(f0) - 1
    top = max((s for _, s in glued), default=0)
    f0t = B.bp_truncate_x(L, f0, max(top, 1))
    out = [(B.bp_ypow(L, k), 0) for k in range(d0)]
    for num, s in glued:
        out.append((B.bp_truncate_x(L, B.bp_mul(L, f0t, num), s) if s else B.bp_mul(L, f0t, num), s))
    if len(out) != n:
        raise InternalInvariantBroken("local contribution has the wrong size")
    return out


def triangularize(L, elements, n):
    """Hermite form over L[x] of the elements together with the power basis."""
    xpow = lambda s: U.monomial(L, s)
    elems = [(num, xpow(s)) for num, s in elements]
    extra = [[[L.one] if j == d else [] for j in range(n)] for d in range(n)]
    tri = BS.canonical_elements(L, elems, n, extra_rows=extra)
    out = []
    for d, (num, den) in enumerate(tri):
        if len(num) != d + 1 or not U.is_one(L, num[-1]):
            raise InternalInvariantBroken("triangular numerator is not monic")
        out.append((num, len(den) - 1))
    return out


def _local_contribution(loc, xprec, stats):
    L = loc.field
    n = loc.n
    cl = loc.classical_expansions(xprec)
    tprec_of = lambda e: e * xprec
    E = loc.integrality_exponent()
    contributions = []
    for center, members in sorted(centers(L, cl).items(), key=lambda t: L.sort_key(t[0])):
        if len(members) < 2:
            continue
        bf = branch_factorization(loc, center, xprec, expansions=cl)
        chains, bases = [], []
        for e, series in bf.branches:
            ch = truncation_chain(L, series, e, tprec_of(e))
            chains.append(ch)
            bases.append(branch_numerators(L, ch, len(series)))
        # c_i from a cheap pass, then the working precision
        cof = bezout_cofactors(L, bf, 1)
        P = max(c for _, _, c in cof) + max(max(bb.exponents) for bb in bases) + 1
        if P > xprec:
            raise InsufficientPrecision("working precision exceeds the series precision")
        cof = bezout_cofactors(L, bf, P)
        W = [[L.one]]
        for fi in bf.factors:
            W = B.bp_mul_trunc(L, W, fi, xprec)
        glued = glue_branches(L, bases, cof, bf.factors, W, P)
        elems = include_unit_factor(L, glued, bf.f0, n)
        tri = triangularize(L, elems, n)
        unshifted = [(B.shift_y(L, num, L.neg(center)), s) for num, s in tri]
        contributions.extend(unshifted)
        stats["points"] += 1
        stats["chain_lengths"].extend(len(ch) for ch in chains)
        stats["precision"] = max(stats["precision"], P)
    stats["E"] = str(E)
    if not contributions:
        return [(B.bp_ypow(L, d), 0) for d in range(n)]
    return triangularize(L, contributions, n)


def local_basis_bohm(p, f, phi, M_phi):
    """Triangular local basis at phi as (global numerator, exponent) pairs."""
    F = PrimeField(p)
    with COUNTER.phase("puiseux"):
        loc = LocalExpansions(p, f, phi, classical=True, delta=M_phi)
        E = loc.integrality_exponent()
    xprec = 3 * ceil(E) + 4
    while True:
        stats = {"points": 0, "chain_lengths": [], "precision": 0}
        try:
            with COUNTER.phase("bohm"):
                tri = _local_contribution(loc, xprec, stats)
            break
        except InsufficientPrecision:
            xprec *= 2
    L = loc.field
    out = [(BS.lift_local_element(F, L, loc.alpha, phi, num, e), e) for num, e in tri]
    stats["xprec"] = xprec
    return out, stats


def bohm_integral_basis(p, f):
    F, D, facs = BS.validate_curve(p, f)
    locals_, report = {}, {"factors": []}
    for phi, M in facs:
        loc, stats = local_basis_bohm(p, f, phi, M)
        locals_[tuple(phi)] = loc
        report["factors"].append({"phi": list(phi), "M": M, "exponents": [e for _, e in loc], **stats})
    basis = BS.assemble_global(p, f, locals_, "boehm")
    basis.report = report
    return basis
