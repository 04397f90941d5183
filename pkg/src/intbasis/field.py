"""Prime fields F_p and flat extensions F_p[z]/(mu).

Prime field elements are plain ints in ``[0, p)``.  Extension elements are
tuples of ``k`` ints (coefficients of 1, z, ..., z^(k-1)).  Every field object
exposes the same small arithmetic protocol so the polynomial code is generic.
"""

from __future__ import annotations

import random
from functools import lru_cache

from .errors import NotPrime
from .ops import COUNTER

_RNG = random.Random(0)


def set_seed(seed: int) -> None:
    """Reseed the generator used by all Las Vegas routines."""
    global _RNG
    _RNG = random.Random(seed)


def rng() -> random.Random:
    return _RNG


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """The field F_p with elements represented as ints."""

    degree = 1

    def __init__(self, p: int):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        self.p = p
        self.char = p
        self.order = p
        self.zero = 0
        self.one = 1

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def from_int(self, c: int) -> int:
        return c % self.p

    def is_zero(self, a) -> bool:
        return a == 0

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        COUNTER.mul += 1
        return a * b % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        COUNTER.inv += 1
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        return pow(a, e, self.p)

    def random(self):
        return _RNG.randrange(self.p)

    def frobenius(self, a, j: int = 1):
        return a

    def to_ints(self, a) -> list:
        return [a]

    def sort_key(self, a):
        return (a,)

    def elements_in_prime_field(self, a) -> bool:
        return True


# -- helpers on int coefficient lists over F_p (used to build extensions) --


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def _pmod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return a


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _ppowmod(base, e, m, p):
    result = [1]
    base = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        e >>= 1
        if e:
            base = _pmod(_pmul(base, base, p), m, p)
    return result


def _prime_factors(n):
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible_fp(mu, p) -> bool:
    """Rabin's irreducibility test for a monic int polynomial over F_p."""
    k = len(mu) - 1
    if k <= 0:
        return False
    if k == 1:
        return True
    x = [0, 1]
    if _ppowmod(x, p**k, mu, p) != _pmod(x, mu, p):
        return False
    for r in _prime_factors(k):
        h = _ppowmod(x, p ** (k // r), mu, p)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        if len(_pgcd(mu, _trim(diff), p)) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def conway_like_modulus(p: int, k: int) -> tuple:
    """A fixed irreducible monic degree-k polynomial (deterministic in p and k).

    Candidates come from a private generator seeded by (p, k); a random monic
    polynomial is irreducible with probability about 1/k."""
    gen = random.Random(p * 1009 + k)
    while True:
        mu = [gen.randrange(1, p)] + [gen.randrange(p) for _ in range(k - 1)] + [1]
        if is_irreducible_fp(mu, p):
            return tuple(mu)


class GaloisField:
    """F_{p^k} = F_p[z]/(mu) with tuple elements of length k."""

    def __init__(self, p: int, modulus):
        self.p = p
        self.char = p
        self.modulus = tuple(modulus)
        self.degree = k = len(modulus) - 1
        self.order = p**k
        self.zero = (0,) * k
        self.one = (1,) + (0,) * (k - 1)
        self._cost = k * k
        self._prime = PrimeField(p)

    def __repr__(self):
        return f"GF({self.p}^{self.degree})"

    def __eq__(self, other):
        return isinstance(other, GaloisField) and other.modulus == self.modulus and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p, self.modulus))

    def from_int(self, c: int):
        return (c % self.p,) + (0,) * (self.degree - 1)

    def is_zero(self, a) -> bool:
        return not any(a)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def _reduce(self, prod):
        p, k, mu = self.p, self.degree, self.modulus
        for i in range(len(prod) - 1, k - 1, -1):
            c = prod[i]
            if c:
                s = i - k
                for j in range(k):
                    prod[s + j] -= c * mu[j]
        return tuple(c % p for c in prod[:k])

    def mul(self, a, b):
        COUNTER.mul += self._cost
        k = self.degree
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return self._reduce(prod)

    def inv(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero")
        COUNTER.inv += self._cost
        p = self.p
        # extended Euclid on (a, mu) over F_p
        r0, r1 = list(self.modulus), _trim(list(a))
        s0, s1 = [], [1]
        while len(r1) > 1:
            q, r = [], list(r0)
            inv_lead = pow(r1[-1], -1, p)
            q = [0] * (len(r) - len(r1) + 1)
            while len(r) >= len(r1) and r:
                c = r[-1] * inv_lead % p
                shift = len(r) - len(r1)
                q[shift] = c
                for i, rc in enumerate(r1):
                    r[shift + i] = (r[shift + i] - c * rc) % p
                _trim(r)
            qs = _pmul(q, s1, p)
            s_new = [0] * max(len(s0), len(qs))
            for i, c in enumerate(s0):
                s_new[i] += c
            for i, c in enumerate(qs):
                s_new[i] -= c
            s_new = _trim([c % p for c in s_new])
            r0, r1, s0, s1 = r1, r, s1, s_new
        c = pow(r1[0], -1, p)
        out = [x * c % p for x in s1] + [0] * self.degree
        return tuple(out[: self.degree])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def random(self):
        return tuple(_RNG.randrange(self.p) for _ in range(self.degree))

    def frobenius(self, a, j: int = 1):
        """a ** (p ** j)."""
        return self.pow(a, self.p ** (j % self.degree)) if j % self.degree else a

    def to_ints(self, a) -> list:
        return list(a)

    def sort_key(self, a):
        return tuple(reversed(a))

    def generator(self):
        return (0, 1) + (0,) * (self.degree - 2) if self.degree > 1 else self.one

    def express_in_powers(self, c, alpha, d: int):
        """Coordinates (c_0..c_{d-1}) in F_p with c = sum c_i alpha^i, or None."""
        return _express(self, c, alpha, d)


def _express(F, c, alpha, d):
    p = F.p
    powers = [F.one]
    for _ in range(1, d):
        powers.append(F.mul(powers[-1], alpha))
    k = F.degree
    # solve sum_i x_i * powers[i] = c coordinatewise: k equations, d unknowns
    rows = [[powers[i][r] for i in range(d)] + [c[r]] for r in range(k)]
    sol = _solve_mod_p(rows, d, p)
    return sol


def _solve_mod_p(rows, nvars, p):
    rows = [list(r) for r in rows]
    piv_cols = []
    r = 0
    for col in range(nvars):
        pr = next((i for i in range(r, len(rows)) if rows[i][col] % p), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = pow(rows[r][col], -1, p)
        rows[r] = [v * inv % p for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                c = rows[i][col]
                rows[i] = [(v - c * w) % p for v, w in zip(rows[i], rows[r])]
        piv_cols.append(col)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][-1] % p:
            return None
    sol = [0] * nvars
    for i, col in enumerate(piv_cols):
        sol[col] = rows[i][-1]
    return sol


def make_prime_field(p: int) -> PrimeField:
    return PrimeField(p)


@lru_cache(maxsize=None)
def finite_field(p: int, k: int):
    """The canonical model of F_{p^k} used throughout (cached)."""
    if k == 1:
        return PrimeField(p)
    return GaloisField(p, conway_like_modulus(p, k))


def make_extension(base: PrimeField, minimal_poly) -> GaloisField:
    """F_p[z]/(minimal_poly) for a monic irreducible int polynomial."""
    mu = [c % base.p for c in minimal_poly]
    if mu[-1] != 1 or not is_irreducible_fp(mu, base.p):
        raise ValueError("minimal polynomial must be monic irreducible")
    return GaloisField(base.p, mu)
