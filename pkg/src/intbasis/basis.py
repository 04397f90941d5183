"""Integral bases: canonical triangular form, local-to-global lifting and CRT."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import bipoly as B
from . import polymat as PM
from . import upoly as U
from .errors import InternalInvariantBroken
from .field import PrimeField


# ------------------------------------------------------------ canonical form


def _lcm(F, a, b):
    return U.div_exact(F, U.mul(F, a, b), U.gcd(F, a, b))


def elements_to_rows(F, elements, n):
    """Common denominator D and coordinate rows (columns y^(n-1) .. y^0)."""
    D = [F.one]
    for _, den in elements:
        D = _lcm(F, D, den)
    rows = []
    for num, den in elements:
        mult = U.div_exact(F, D, den)
        row = [U.mul(F, num[j], mult) if j < len(num) else [] for j in range(n)]
        rows.append(list(reversed(row)))
    return D, rows


def canonical_elements(F, elements, n, extra_rows=()):
    """Hermite-normalized triangular generators of the module spanned by elements.

    Element d of the result has y-degree d; its numerator and denominator are
    coprime as a whole (content stripped) and the denominator is monic."""
    D, rows = elements_to_rows(F, elements, n)
    for r in extra_rows:
        rows.append(list(reversed([U.mul(F, c, D) if c else [] for c in r])))
    H = PM.hnf_rows(F, rows)
    out = []
    for row in H:
        coeffs = list(reversed(row))
        g = D
        for c in coeffs:
            if c:
                g = U.gcd(F, g, c)
        num = B.bp_trim(F, [U.div_exact(F, c, g) if c else [] for c in coeffs])
        den = U.div_exact(F, D, g)
        lc = den[-1]
        if lc != F.one:
            inv = F.inv(lc)
            den = U.scale(F, den, inv)
            num = [U.scale(F, c, inv) for c in num]
        out.append((num, den))
    out.sort(key=lambda t: len(t[0]))
    return out


@dataclass
class IntegralBasis:
    """Triangular basis num_d / den_d of the integral closure over F_p[x]."""

    p: int
    f: list
    elements: list
    algorithm: str = ""
    report: dict = field(default_factory=dict)

    @property
    def field(self):
        return PrimeField(self.p)

    @property
    def n(self):
        return len(self.f) - 1

    def canonical(self):
        F = self.field
        return IntegralBasis(self.p, self.f, canonical_elements(F, self.elements, self.n), self.algorithm, self.report)

    def denominator_factors(self):
        F = self.field
        facs = set()
        for _, den in self.elements:
            if len(den) > 1:
                for g, _ in U.factor(F, den)[1]:
                    facs.add(tuple(g))
        return sorted((list(g) for g in facs), key=lambda g: U.sort_key(F, g))

    def exponent_vectors(self, factors=None):
        F = self.field
        factors = self.denominator_factors() if factors is None else factors
        return [[U.multiplicity(F, den, phi) for phi in factors] for _, den in self.elements]

    def is_triangular_monic(self):
        F = self.field
        return all(len(num) == d + 1 and U.is_one(F, num[-1]) for d, (num, _) in enumerate(self.elements))

    def to_json(self):
        facs = self.denominator_factors()
        exps = self.exponent_vectors(facs)
        basis = []
        for (num, _), ex in zip(self.elements, exps):
            basis.append({"num": [[i, j, c] for i, j, c in B.bp_terms(self.field, num)], "den_exp": ex})
        return {"n": self.n, "denominator_factors": facs, "basis": basis}


def power_basis(p, f, algorithm=""):
    F = PrimeField(p)
    n = len(f) - 1
    return IntegralBasis(p, f, [(B.bp_ypow(F, d), [F.one]) for d in range(n)], algorithm)


def compare_bases(b1, b2):
    """('equal', None) or ('differ', index of the first differing canonical row)."""
    F = b1.field
    c1 = canonical_elements(F, b1.elements, b1.n)
    c2 = canonical_elements(F, b2.elements, b2.n)
    for i, (r1, r2) in enumerate(zip(c1, c2)):
        if r1 != r2:
            return "differ", i
    if len(c1) != len(c2):
        return "differ", min(len(c1), len(c2))
    return "equal", None


# ------------------------------------------------------- local <-> global maps


def express_in_residue_field(L, c, alpha, k):
    """Coordinates of c in F_p(alpha) with respect to 1, alpha, ..., alpha^(k-1)."""
    if isinstance(L, PrimeField):
        return [c]
    co = L.express_in_powers(c, alpha, k)
    if co is None:
        raise InternalInvariantBroken("coefficient outside the residue field of phi")
    return co


def residue_to_poly(F, L, c, alpha, k):
    """Replace alpha by x: the polynomial a(x) over F_p with a(alpha) = c."""
    return U.trim(F, [F.from_int(v) for v in express_in_residue_field(L, c, alpha, k)])


def embed_poly(L, a):
    return U.trim(L, [L.from_int(c) for c in a])


def lift_local_poly(F, L, alpha, phi, c, e):
    """a in F_p[x] with deg a < e deg(phi) and a(alpha + x') = c(x') mod x'^e.

    This inverts the isomorphism F_p[x]/(phi^e) -> F_p(alpha)[x']/(x'^e),
    x -> alpha + x', one x'-adic digit at a time."""
    if e <= 0:
        return []
    k = len(phi) - 1
    c = U.truncate(L, c, e)
    dphi = U.evaluate(L, U.deriv(L, embed_poly(L, phi)), alpha)
    dinv = L.inv(dphi)
    A = []
    phipow = [F.one]
    scale = L.one
    for j in range(e):
        shifted = U.taylor_shift(L, embed_poly(L, A), alpha)
        dj = L.sub(c[j] if j < len(c) else L.zero, shifted[j] if j < len(shifted) else L.zero)
        if not L.is_zero(dj):
            delta = residue_to_poly(F, L, L.mul(dj, scale), alpha, k)
            A = U.add(F, A, U.mul(F, delta, phipow))
        phipow = U.mul(F, phipow, phi)
        scale = L.mul(scale, dinv)
    return U.mod(F, A, U.power(F, phi, e))


def lift_local_element(F, L, alpha, phi, num, e):
    """Global numerator in F_p[x][y] for a local numerator num(x', y) over x'^e."""
    d = len(num) - 1
    out = []
    for j, col in enumerate(num):
        if j == d:
            if not U.is_one(L, col):
                raise InternalInvariantBroken("local numerator is not monic")
            out.append([F.one])
        else:
            out.append(lift_local_poly(F, L, alpha, phi, col, e))
    return B.bp_trim(F, out)


def reduce_numerator(F, num, modulus):
    """Reduce the non-leading y-coefficients of num modulo a polynomial."""
    if len(modulus) <= 1:
        return [[] for _ in num[:-1]] + [num[-1]]
    return [U.mod(F, c, modulus) for c in num[:-1]] + [num[-1]]


def assemble_global(p, f, local_bases, algorithm=""):
    """CRT gluing of local triangular bases.

    local_bases maps tuple(phi) -> list of (numerator over F_p, exponent)
    for d = 0..n-1.  Element d of the output has denominator prod phi^e_d."""
    F = PrimeField(p)
    n = len(f) - 1
    elements = []
    for d in range(n):
        moduli, per_phi = [], []
        den = [F.one]
        for phi_t, loc in local_bases.items():
            num, e = loc[d]
            if e == 0:
                continue
            phi = list(phi_t)
            m = U.power(F, phi, e)
            moduli.append(m)
            per_phi.append(reduce_numerator(F, num, m))
            den = U.mul(F, den, m)
        coeffs = []
        for j in range(d):
            coeffs.append(U.crt_combine(F, [pp[j] if j < len(pp) else [] for pp in per_phi], moduli) if moduli else [])
        coeffs.append([F.one])
        elements.append((B.bp_trim(F, coeffs), den))
    return IntegralBasis(p, f, elements, algorithm)


# ------------------------------------------------------------- curve checks


def validate_curve(p, f):
    """Check the standing hypotheses and return (F, Disc(f), square factors)."""
    from .errors import NotMonic, NotPrime, SquarefreeViolation, TooSmall
    from .field import is_prime

    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    F = PrimeField(p)
    n = len(f) - 1
    if n < 1:
        raise NotMonic("f must have positive degree in y")
    if not B.bp_is_monic(F, f):
        raise NotMonic("f must be monic in y")
    if p <= 2 * n:
        raise TooSmall(f"need p > 2n = {2 * n}")
    D = B.discriminant_y(F, f)
    if not D:
        raise SquarefreeViolation("f is not squarefree (zero discriminant)")
    return F, D, U.square_multiplicity_factors(F, D)
