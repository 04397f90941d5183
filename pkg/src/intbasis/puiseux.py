"""Newton-Puiseux expansions of a plane curve above a root of a discriminant factor.

Given f over F_p and an irreducible factor phi of Disc(f), everything happens
in one flat finite field L that contains a root alpha of phi.  The curve is
shifted to g(x, y) = f(x + alpha, y) and its rational Puiseux expansions above
x = 0 are computed with Duval's variant of the Newton-Puiseux algorithm.  The
field L is enlarged (and the computation restarted) whenever an edge
polynomial does not split in L.  In *classical* mode L is further enlarged so
that every expansion can be rewritten as a series in x^(1/e) (needs the e-th
roots of unity and an e-th root of each gamma).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from . import bipoly as B
from . import upoly as U
from .errors import InsufficientPrecision, InternalInvariantBroken, WildRamification
from .field import finite_field
from .ops import COUNTER


class _NeedExtension(Exception):
    def __init__(self, degree):
        super().__init__(degree)
        self.degree = degree


# ------------------------------------------------------------------ polygons


def _lower_hull(points):
    hull = []
    for pt in points:
        while len(hull) >= 2:
            (j1, i1), (j2, i2) = hull[-2], hull[-1]
            if (j2 - j1) * (pt[1] - i1) - (i2 - i1) * (pt[0] - j1) <= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def _polygon_edges(F, H, upto=None):
    top = len(H) - 1 if upto is None else min(upto, len(H) - 1)
    pts = [(j, U.valuation(F, H[j])) for j in range(top + 1) if H[j]]
    hull = _lower_hull(pts)
    return list(zip(hull, hull[1:]))


def newton_polygon(F, f):
    """Edges of the lower convex hull of {(j, v_x(f_j))} as (slope, length).

    The slope is the x-exponent of y along the edge, so y^2 - x^3 gives
    [(3/2, 2)]."""
    return [(Fraction(a[1] - b[1], b[0] - a[0]), b[0] - a[0]) for a, b in _polygon_edges(F, f)]


def _coef(F, poly, i):
    return poly[i] if 0 <= i < len(poly) else F.zero


def _edge_data(F, H, a, b):
    (ja, ia), (jb, ib) = a, b
    di, dj = ia - ib, jb - ja
    g = gcd(di, dj)
    q, l = di // g, dj // g
    r = l * ia + q * ja
    chi = [_coef(F, H[ja + l * s], ia - q * s) for s in range(g + 1)]
    return q, l, r, U.trim(F, chi)


def _bezout_pair(l, q):
    """u, v >= 0 with u*l - v*q = 1."""
    if q == 0:
        return 1, 0
    if q == 1:
        return 1, l - 1
    u = pow(l, -1, q)
    return u, (u * l - 1) // q


def _substitute(F, H, xi, q, l, r, u, v):
    """H(xi^v T^l, T^q (xi^u + Y)) / T^r."""
    xv = F.pow(xi, v)
    cols = []
    for j, col in enumerate(H):
        out = []
        pw = F.one
        for i, c in enumerate(col):
            if not F.is_zero(c):
                ex = l * i + q * j - r
                if ex < 0:
                    raise InternalInvariantBroken("point below the Newton polygon")
                if len(out) <= ex:
                    out.extend([F.zero] * (ex + 1 - len(out)))
                out[ex] = F.mul(c, pw)
            pw = F.mul(pw, xv)
        cols.append(U.trim(F, out))
    return B.shift_y(F, B.bp_trim(F, cols), F.pow(xi, u))


@dataclass
class _Transform:
    """X = A T^E, Y = P(T) + C T^Q Y_k."""

    A: object
    E: int
    P: list
    C: object
    Q: int

    def compose(self, F, xi, q, l, u, v):
        xv = F.pow(xi, v)
        A2 = F.mul(self.A, F.pow(xv, self.E))
        P2 = []
        pw = F.one
        for idx, c in enumerate(self.P):
            if not F.is_zero(c):
                pos = idx * l
                P2.extend([F.zero] * (pos + 1 - len(P2)))
                P2[pos] = F.mul(c, pw)
            pw = F.mul(pw, xv)
        C2 = F.mul(self.C, F.pow(xv, self.Q))
        pos = l * self.Q + q
        P2.extend([F.zero] * max(0, pos + 1 - len(P2)))
        P2[pos] = F.add(P2[pos], F.mul(C2, F.pow(xi, u)))
        return _Transform(A2, self.E * l, U.trim(F, P2), C2, l * self.Q + q)


def _eval_series(F, H, Y, prec):
    """H(T, Y(T)) mod T^prec for H bivariate in (T, Y)."""
    acc = []
    for col in reversed(H):
        acc = U.add(F, U.mul_trunc(F, acc, Y, prec), U.truncate(F, col, prec))
    return acc


def _newton_series(F, H, prec):
    """The unique Y(T) with Y(0) = 0 and H(T, Y) = 0 mod T^prec (simple root)."""
    if prec <= 0:
        return []
    Hy = B.bp_dy(F, H)
    Y = []
    cur = 1
    while cur < prec:
        cur = min(2 * cur, prec)
        val = _eval_series(F, H, Y, cur)
        der = _eval_series(F, Hy, Y, cur)
        if not der or F.is_zero(der[0]):
            raise InternalInvariantBroken("regular stage without a simple root")
        Y = U.sub(F, Y, U.mul_trunc(F, val, U.series_inverse(F, der, cur), cur))
    return U.truncate(F, Y, prec)


@dataclass
class _Leaf:
    tr: _Transform
    H: list | None
    k: int
    _cache: list = field(default_factory=list)
    _cache_prec: int = 0

    def series(self, F, prec):
        if prec <= self._cache_prec:
            return U.truncate(F, self._cache, prec)
        t = self.tr
        Y = U.truncate(F, t.P, prec)
        if self.H is not None and prec > t.Q:
            Yk = _newton_series(F, self.H, prec - t.Q)
            Y = U.add(F, Y, U.shift(F, U.scale(F, Yk, t.C), t.Q))
        Y = U.truncate(F, Y, prec)
        self._cache, self._cache_prec = Y, prec
        return Y


def _orbits(F, chi, k):
    """Distinct roots of chi grouped into orbits of a -> a^(p^k)."""
    rts = U.roots(F, chi)
    if sum(m for _, m in rts) != len(chi) - 1:
        degs = U.irreducible_factor_degrees(F, U.monic(F, chi))
        raise _NeedExtension(lcm(*degs))
    seen = set()
    out = []
    for xi, m in rts:
        if xi in seen:
            continue
        orbit = [xi]
        z = F.frobenius(xi, k)
        while z != xi:
            orbit.append(z)
            z = F.frobenius(z, k)
        seen.update(orbit)
        out.append((xi, m, len(orbit)))
    return out


def _duval_tree(F, g, k_root):
    p = F.char
    leaves = []

    def node(H, m, tr, k, top):
        while True:
            if not top and m == 1:
                leaves.append(_Leaf(tr, H, k))
                return
            if not H[0]:
                leaves.append(_Leaf(tr, None, k))
                H = H[1:]
                if not top:
                    m -= 1
                continue
            break
        for a, b in _polygon_edges(F, H, None if top else m):
            q, l, r, chi = _edge_data(F, H, a, b)
            if l % p == 0:
                raise WildRamification(f"ramification {l} divisible by {p}")
            u, v = _bezout_pair(l, q)
            for xi, mult, osize in _orbits(F, chi, k):
                H1 = _substitute(F, H, xi, q, l, r, u, v)
                node(H1, mult, tr.compose(F, xi, q, l, u, v), k * osize, False)

    node(g, None, _Transform(F.one, 1, [], F.one, 0), k_root, True)
    return leaves


# ------------------------------------------------------------------ records


@dataclass
class RPE:
    """X(T) = gamma T^e, Y(T) = sum y_coeffs[j] T^j, exact below trunc_order."""

    e: int
    gamma: object
    y_coeffs: list
    trunc_order: int
    residue_degree: int
    reg_index: Fraction | None = None


@dataclass
class ClassicalExpansion:
    """sum coeffs[j] x^(j/e), exact for j < prec."""

    e: int
    coeffs: list
    prec: int
    branch: tuple
    conj: int

    def coeff(self, F, j):
        return self.coeffs[j] if j < len(self.coeffs) else F.zero

    @property
    def center(self):
        return self.coeffs[0] if self.coeffs else None


def eval_at_param(F, b, gamma, e, Y, prec):
    """b(gamma T^e, Y(T)) mod T^prec for b bivariate in (x, y)."""
    if prec <= 0:
        return []
    acc = []
    gp = [F.one]
    for col in reversed(b):
        acc = U.mul_trunc(F, acc, Y, prec)
        if col:
            out = [F.zero] * min(prec, (len(col) - 1) * e + 1)
            for i, c in enumerate(col):
                if i * e >= prec:
                    break
                if not F.is_zero(c):
                    while len(gp) <= i:
                        gp.append(F.mul(gp[-1], gamma))
                    out[i * e] = c if gamma == F.one else F.mul(c, gp[i])
            acc = U.add(F, acc, U.trim(F, out))
    return acc


def pair_valuation(F, a, b):
    """v(a - b) for classical expansions a != b."""
    E = lcm(a.e, b.e)
    sa, sb = E // a.e, E // b.e
    limit = min(a.prec * sa, b.prec * sb)
    for J in range(limit):
        ca = a.coeff(F, J // sa) if J % sa == 0 else F.zero
        cb = b.coeff(F, J // sb) if J % sb == 0 else F.zero
        if ca != cb:
            return Fraction(J, E)
    raise InsufficientPrecision("expansions agree to working precision")


def precision_bound(F, expansions):
    """max_i sum_{j != i} v(eta_i - eta_j); 0 when there is one expansion."""
    best = Fraction(0)
    for i, a in enumerate(expansions):
        s = sum((pair_valuation(F, a, b) for j, b in enumerate(expansions) if j != i), Fraction(0))
        best = max(best, s)
    return best


def regularity_indices(F, expansions):
    out = []
    for i, a in enumerate(expansions):
        r = Fraction(0)
        for j, b in enumerate(expansions):
            if j != i:
                r = max(r, pair_valuation(F, a, b))
        out.append(r)
    return out


def series_eval_bipoly(F, b, r, cutoff):
    """Terms (exponent, coefficient) of b(x, r(x)) with exponent < cutoff."""
    need = int(cutoff * r.e) if (cutoff * r.e).denominator == 1 else int(cutoff * r.e) + 1
    if need > r.prec:
        raise InsufficientPrecision("expansion too short for the requested cutoff")
    s = eval_at_param(F, b, F.one, r.e, r.coeffs, need)
    return [(Fraction(j, r.e), c) for j, c in enumerate(s) if not F.is_zero(c) and Fraction(j, r.e) < cutoff]


# ---------------------------------------------------------- local expansions


def _multiplicative_order_degree(p, L_deg, e):
    """Smallest t with e | p^(L_deg t) - 1."""
    t = 1
    q = pow(p, L_deg, e) if e > 1 else 0
    acc = q
    while e > 1 and acc % e != 1 % e:
        acc = acc * q % e
        t += 1
    return t


class LocalExpansions:
    """All Puiseux data of f above the roots of one irreducible factor phi."""

    def __init__(self, p, f, phi, classical=False, delta=None):
        self.p = p
        self.f = f
        self.phi = list(phi)
        self.k = len(phi) - 1
        self.n = len(f) - 1
        self.classical = classical
        self.delta = delta
        L_deg = self.k
        with COUNTER.phase("puiseux"):
            while True:
                try:
                    self._setup(L_deg)
                    break
                except _NeedExtension as ex:
                    L_deg *= ex.degree

    def _setup(self, L_deg):
        p = self.p
        L = finite_field(p, L_deg)
        phiL = U.trim(L, [L.from_int(c) for c in self.phi])
        rts = U.roots(L, phiL)
        if not rts:
            raise _NeedExtension(self.k)
        alpha = rts[0][0]
        fL = B.bp_map(L, self.f, L.from_int)
        g = B.shift_origin(L, fL, alpha)
        leaves = _duval_tree(L, g, self.k)
        total = sum(lf.tr.E * (lf.k // self.k) for lf in leaves)
        if total != self.n:
            raise InternalInvariantBroken(f"sum e_i f_i = {total} != n = {self.n}")
        roots_c = []
        zetas = {}
        if self.classical:
            for lf in leaves:
                e = lf.tr.E
                t = _multiplicative_order_degree(p, L_deg, e)
                if t > 1:
                    raise _NeedExtension(t)
                if e not in zetas:
                    unity = U.roots(L, U.sub(L, U.monomial(L, e), [L.one]))
                    zetas[e] = next(z for z, _ in unity if _order(L, z, e) == e)
            for lf in leaves:
                per = []
                for s in range(lf.k // self.k):
                    gam = L.frobenius(lf.tr.A, self.k * s)
                    target = U.sub(L, U.monomial(L, lf.tr.E), [L.inv(gam)])
                    rr = U.roots(L, target)
                    if not rr:
                        degs = U.irreducible_factor_degrees(L, target)
                        raise _NeedExtension(lcm(*degs))
                    per.append(rr[0][0])
                roots_c.append(per)
        self.field = L
        self.alpha = alpha
        self.g = g
        self.leaves = leaves
        self._zetas = zetas
        self._roots_c = roots_c

    # ---- rational data

    def rpes(self, xprec):
        L = self.field
        out = []
        for lf in self.leaves:
            prec = lf.tr.E * xprec
            out.append(RPE(lf.tr.E, lf.tr.A, lf.series(L, prec), prec, lf.k // self.k))
        return out

    def kbar_params(self, xprec):
        """(rpe index, e, gamma, Y(T)) for every branch over the algebraic closure."""
        L = self.field
        out = []
        for idx, lf in enumerate(self.leaves):
            e = lf.tr.E
            Y = lf.series(L, e * xprec)
            for s in range(lf.k // self.k):
                j = self.k * s
                out.append((idx, e, L.frobenius(lf.tr.A, j), [L.frobenius(c, j) for c in Y]))
        return out

    def tame_defect(self):
        """sum over RPEs of (e_i - 1) * residue degree."""
        return sum((lf.tr.E - 1) * (lf.k // self.k) for lf in self.leaves)

    def integrality_exponent(self):
        """E(f) = max over branches of v_x(g_y(eta)), via the T-parametrizations."""
        L = self.field
        gy = B.bp_dy(L, self.g)
        bound = self.delta if self.delta is not None else self.n * self.n
        best = Fraction(0)
        for lf in self.leaves:
            e = lf.tr.E
            prec = e * (bound + 1)
            s = eval_at_param(L, gy, lf.tr.A, e, lf.series(L, prec), prec)
            v = U.valuation(L, s)
            if v is None:
                raise InsufficientPrecision("g_y vanishes to working precision")
            best = max(best, Fraction(v, e))
        return best

    # ---- classical data

    def classical_expansions(self, xprec):
        if not self.classical:
            raise ValueError("classical expansions need classical=True")
        L = self.field
        out = []
        for idx, lf in enumerate(self.leaves):
            e = lf.tr.E
            Y = lf.series(L, e * xprec)
            zeta = self._zetas[e]
            for s in range(lf.k // self.k):
                Ys = [L.frobenius(c, self.k * s) for c in Y]
                c0 = self._roots_c[idx][s]
                for kk in range(e):
                    w = L.mul(c0, L.pow(zeta, kk))
                    coeffs = []
                    pw = L.one
                    for yj in Ys:
                        coeffs.append(L.mul(yj, pw))
                        pw = L.mul(pw, w)
                    out.append(ClassicalExpansion(e, U.trim(L, coeffs), e * xprec, (idx, s), kk))
        if len(out) != self.n:
            raise InternalInvariantBroken("wrong number of classical expansions")
        return out


def _order(F, z, e):
    for d in range(1, e + 1):
        if e % d == 0 and F.pow(z, d) == F.one:
            return d
    return None


# ------------------------------------------------------------- public helpers


def rational_puiseux_expansions(p, f, phi, xprec, delta=None):
    """RPEs of f above a root of phi, each exact to x-precision xprec."""
    loc = LocalExpansions(p, f, phi, delta=delta)
    return loc.rpes(xprec)


def singular_parts(p, f, phi, delta=None):
    """RPEs truncated at their regularity index (reg_index set on each)."""
    loc = LocalExpansions(p, f, phi, classical=True, delta=delta)
    L = loc.field
    bound = delta if delta is not None else loc.n * loc.n
    cl = loc.classical_expansions(bound + 1)
    reg = regularity_indices(L, cl)
    out = []
    for idx, lf in enumerate(loc.leaves):
        members = [i for i, c in enumerate(cl) if c.branch[0] == idx]
        r = max(reg[i] for i in members)
        cut = int(r * lf.tr.E) + 1
        Y = lf.series(L, cut)
        out.append(RPE(lf.tr.E, lf.tr.A, Y, cut, lf.k // loc.k, r))
    return out


def _t_to_x(F, poly_t, e):
    """Rewrite a bivariate polynomial in (t, y) with t^e = x; other exponents must vanish."""
    out = []
    for col in poly_t:
        new = []
        for j, c in enumerate(col):
            if F.is_zero(c):
                continue
            if j % e:
                raise InternalInvariantBroken("norm has fractional exponents")
            q = j // e
            new.extend([F.zero] * (q + 1 - len(new)))
            new[q] = c
        out.append(U.trim(F, new))
    return B.bp_trim(F, out)


def norm_of_expansion(F, conjugates, e, xprec=None):
    """prod (y - eta) over the given series in t = x^(1/e), returned in (x, y).

    Pass the distinct conjugates of a truncation to get its norm.  With
    xprec, products are truncated mod x^xprec."""
    prod = [[F.one]]
    tprec = None if xprec is None else e * xprec
    for eta in conjugates:
        lin = [U.neg(F, eta), [F.one]]
        prod = B.bp_mul(F, prod, lin) if tprec is None else B.bp_mul_trunc(F, prod, lin, tprec)
    return _t_to_x(F, prod, e)


def conjugate_series(F, coeffs, e, zeta, upto):
    """The series eta(zeta^k t) for k < e, t-exponents below upto."""
    out = []
    for k in range(e):
        z = F.pow(zeta, k)
        pw = F.one
        s = []
        for j in range(min(upto, len(coeffs))):
            s.append(F.mul(coeffs[j], pw))
            pw = F.mul(pw, z)
        out.append(U.trim(F, s))
    return out


@dataclass
class BranchFactorization:
    """g(x, y + center) = f0 * prod(factors) mod x^precision over the local field."""

    center: object
    f0: list
    factors: list
    precision: int
    branches: list
    cofactors: list | None = None


def centers(F, expansions):
    """Distinct centers (constant terms) with their multiplicity."""
    out = {}
    for c in expansions:
        key = c.coeff(F, 0)
        out.setdefault(key, []).append(c)
    return out


def branch_factorization(loc, center, rho, expansions=None):
    """Weierstrass factors of g at (0, center), each the norm of one branch."""
    L = loc.field
    with COUNTER.phase("puiseux"):
        cl = expansions if expansions is not None else loc.classical_expansions(rho)
        members = [c for c in cl if c.coeff(L, 0) == center]
        groups = {}
        for c in members:
            groups.setdefault(c.branch, []).append(c)
        factors, branches = [], []
        for key in sorted(groups):
            grp = groups[key]
            e = grp[0].e
            shifted = []
            for c in grp:
                co = list(c.coeffs) or [L.zero]
                co[0] = L.sub(co[0], center)
                shifted.append(U.trim(L, U.truncate(L, co, e * rho)))
            factors.append(norm_of_expansion(L, shifted, e, rho))
            branches.append((e, shifted))
        gc = B.bp_truncate_x(L, B.shift_y(L, loc.g, center), rho)
        W = [[L.one]]
        for fi in factors:
            W = B.bp_mul_trunc(L, W, fi, rho)
        f0, rem = B.bp_divmod_y_trunc(L, gc, W, rho)
        if rem:
            raise InternalInvariantBroken("Weierstrass product does not divide the curve")
        return BranchFactorization(center, f0, factors, rho, branches)


def _laurent_inverse(F, a, prec):
    """(v, s) with 1/a = t^(-v) s; s is exact mod t^(prec - v) when a is exact mod t^prec."""
    v = U.valuation(F, a)
    if v is None or v >= prec:
        raise InsufficientPrecision("series vanishes to working precision")
    return v, U.series_inverse(F, a[v:], prec - v)


def bezout_cofactors(F, bf, prec):
    """(a_i, b_i, c_i) with a_i f_i + b_i h_i = x^c_i mod x^prec, h_i = prod_{j != i} f_j.

    b_i = x^c_i (h_i^{-1} mod f_i) is obtained by Lagrange interpolation on the
    roots of f_i, i.e. on the conjugates of one branch expansion; the sum over
    conjugates keeps only t-exponents divisible by e."""
    r = len(bf.factors)
    if r == 1:
        return [([], [[F.one]], 0)]
    W = [[F.one]]
    for fi in bf.factors:
        W = B.bp_mul_trunc(F, W, fi, bf.precision)
    Wy = B.bp_dy(F, W)
    out = []
    for i, fi in enumerate(bf.factors):
        e, series = bf.branches[i]
        eta = series[0]
        tprec = e * bf.precision
        # c_i = sum of valuations of eta_k - eta' over roots eta' of h_i
        vsum = Fraction(0)
        for j, (ej, sj) in enumerate(bf.branches):
            if j == i:
                continue
            a = ClassicalExpansion(e, eta, tprec, (), 0)
            for s in sj:
                vsum += pair_valuation(F, a, ClassicalExpansion(ej, s, ej * bf.precision, (), 0))
        c = e * vsum
        if c.denominator != 1:
            raise InternalInvariantBroken("non-integral resultant valuation")
        c = int(c)
        wval = eval_at_param(F, Wy, F.one, e, eta, tprec)
        v, inv = _laurent_inverse(F, wval, tprec)
        # quotient f_i / (y - eta) by synthetic division in t
        fi_t = [_spread(F, col, e) for col in fi]
        m = len(fi) - 1
        quo = [None] * m
        acc = [F.one]
        quo[m - 1] = acc
        for j in range(m - 1, 0, -1):
            acc = U.add(F, U.truncate(F, fi_t[j], tprec), U.mul_trunc(F, eta, acc, tprec))
            quo[j - 1] = acc
        known = c + -(-(tprec - 2 * v) // e)
        if known < prec:
            raise InsufficientPrecision("series too short for the Bezout cofactor")
        b = []
        for qcol in quo:
            s = U.mul_trunc(F, qcol, inv, tprec - v)
            col = []
            for jj, cc in enumerate(s):
                ex = jj - v
                if F.is_zero(cc) or ex % e:
                    continue
                xe = ex // e + c
                if xe < 0:
                    raise InternalInvariantBroken("negative exponent in Bezout cofactor")
                col.extend([F.zero] * (xe + 1 - len(col)))
                col[xe] = F.mul(cc, F.from_int(e))
            b.append(U.truncate(F, U.trim(F, col), prec))
        b = B.bp_trim(F, b)
        h = [[F.one]]
        for j, fj in enumerate(bf.factors):
            if j != i:
                h = B.bp_mul_trunc(F, h, fj, prec)
        xc = [U.monomial(F, c)]
        bh = B.bp_mul_trunc(F, b, h, prec)
        a_, rem = B.bp_divmod_y_trunc(F, B.bp_sub(F, xc, bh), fi, prec)
        if rem:
            raise InsufficientPrecision("Bezout identity fails at working precision")
        out.append((a_, b, c))
    return out


def _spread(F, col, e):
    """Polynomial in x rewritten in t = x^(1/e)."""
    if e == 1 or not col:
        return list(col)
    out = [F.zero] * ((len(col) - 1) * e + 1)
    for i, c in enumerate(col):
        out[i * e] = c
    return out
