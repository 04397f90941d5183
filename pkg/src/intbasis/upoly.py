"""Dense univariate polynomials over a field.

Internally a polynomial is a plain list of field elements, lowest degree first,
with no trailing zeros (``[]`` is the zero polynomial).  All functions take the
field as their first argument.  :class:`UniPoly` wraps a list together with its
field for the public API.
"""

from __future__ import annotations

from functools import reduce

from .errors import ContextMismatch, NotCoprime
from .field import rng
from .ops import COUNTER

KARATSUBA_CUTOFF = 32


def trim(F, a):
    while a and F.is_zero(a[-1]):
        a.pop()
    return a


def const(F, c):
    return [] if F.is_zero(c) else [c]


def monomial(F, k, c=None):
    c = F.one if c is None else c
    return [F.zero] * k + [c] if not F.is_zero(c) else []


def from_ints(F, coeffs):
    return trim(F, [F.from_int(c) for c in coeffs])


def deg(a):
    return len(a) - 1


def lead(a):
    return a[-1]


def is_one(F, a):
    return len(a) == 1 and a[0] == F.one


def _fast(F):
    return F.degree == 1


def add(F, a, b):
    if _fast(F):
        p = F.p
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % p
        return trim(F, out) if len(a) == len(b) else out
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = F.add(out[i], c)
    return trim(F, out) if len(a) == len(b) else out


def sub(F, a, b):
    if _fast(F):
        p = F.p
        la, lb = len(a), len(b)
        if la >= lb:
            out = list(a)
            for i, c in enumerate(b):
                out[i] = (out[i] - c) % p
        else:
            out = [(x - y) % p for x, y in zip(a, b)] + [-y % p for y in b[la:]]
        while out and out[-1] == 0:
            out.pop()
        return out
    n = max(len(a), len(b))
    out = []
    z = F.zero
    for i in range(n):
        x = a[i] if i < len(a) else z
        y = b[i] if i < len(b) else z
        out.append(F.sub(x, y))
    return trim(F, out)


def neg(F, a):
    return [F.neg(c) for c in a]


def scale(F, a, c):
    if F.is_zero(c):
        return []
    if c == F.one:
        return list(a)
    return [F.mul(x, c) for x in a]


def shift(F, a, k):
    """Multiply by x**k."""
    return [F.zero] * k + list(a) if a else []


def _school(F, a, b):
    if _fast(F):
        p = F.p
        out = [0] * (len(a) + len(b) - 1)
        cnt = 0
        for i, x in enumerate(a):
            if x:
                cnt += 1
                for j, y in enumerate(b):
                    out[i + j] += x * y
        COUNTER.mul += cnt * len(b)
        return [c % p for c in out]
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if F.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return out


def _karatsuba(F, a, b):
    n = max(len(a), len(b))
    if min(len(a), len(b)) <= KARATSUBA_CUTOFF:
        return _school(F, a, b)
    h = n // 2
    a0, a1 = a[:h], a[h:]
    b0, b1 = b[:h], b[h:]
    z0 = _karatsuba(F, a0, b0) if a0 and b0 else []
    z2 = _karatsuba(F, a1, b1) if a1 and b1 else []
    sa = add(F, a0, a1)
    sb = add(F, b0, b1)
    z1 = _karatsuba(F, sa, sb) if sa and sb else []
    z1 = sub(F, sub(F, z1, z0), z2)
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, c in enumerate(z0):
        out[i] = F.add(out[i], c)
    for i, c in enumerate(z1):
        out[i + h] = F.add(out[i + h], c)
    for i, c in enumerate(z2):
        out[i + 2 * h] = F.add(out[i + 2 * h], c)
    return out


def mul(F, a, b):
    if not a or not b:
        return []
    return trim(F, _karatsuba(F, a, b))


def mul_trunc(F, a, b, n):
    """a*b mod x**n."""
    a, b = a[:n], b[:n]
    if not a or not b:
        return []
    if _fast(F):
        p = F.p
        out = [0] * min(n, len(a) + len(b) - 1)
        cnt = 0
        for i, x in enumerate(a):
            if x:
                m = min(len(b), n - i)
                cnt += m
                for j in range(m):
                    out[i + j] += x * b[j]
        COUNTER.mul += cnt
        return trim(F, [c % p for c in out])
    out = [F.zero] * min(n, len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if F.is_zero(x):
            continue
        for j in range(min(len(b), n - i)):
            out[i + j] = F.add(out[i + j], F.mul(x, b[j]))
    return trim(F, out)


def truncate(F, a, n):
    return trim(F, list(a[:n]))


def divmod_(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], a
    inv = F.inv(b[-1])
    if _fast(F):
        p = F.p
        q = [0] * (len(a) - db)
        cnt = 0
        for i in range(len(a) - 1, db - 1, -1):
            c = a[i] % p
            if not c:
                continue
            c = c * inv % p
            q[i - db] = c
            off = i - db
            for j in range(db + 1):
                a[off + j] -= c * b[j]
            cnt += db + 2
        COUNTER.mul += cnt
        return trim(F, q), trim(F, [c % p for c in a[:db]])
    q = [F.zero] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if F.is_zero(c):
            continue
        c = F.mul(c, inv)
        q[i - db] = c
        for j in range(db + 1):
            a[i - db + j] = F.sub(a[i - db + j], F.mul(c, b[j]))
    return trim(F, q), trim(F, a[:db])


def mod(F, a, b):
    return divmod_(F, a, b)[1]


def div_exact(F, a, b):
    q, r = divmod_(F, a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def divides(F, b, a):
    return not divmod_(F, a, b)[1]


def monic(F, a):
    if not a or a[-1] == F.one:
        return list(a)
    return scale(F, a, F.inv(a[-1]))


def gcd(F, a, b):
    """Monic gcd; gcd(0, 0) = 0."""
    a, b = list(a), list(b)
    while b:
        a, b = b, mod(F, a, b)
    return monic(F, a)


def xgcd(F, a, b):
    """(g, s, t) with s*a + t*b = g monic."""
    r0, r1 = list(a), list(b)
    s0, s1 = [F.one], []
    t0, t1 = [], [F.one]
    while r1:
        q, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, q, s1))
        t0, t1 = t1, sub(F, t0, mul(F, q, t1))
    if not r0:
        return [], [], []
    c = F.inv(r0[-1])
    return scale(F, r0, c), scale(F, s0, c), scale(F, t0, c)


def invmod(F, a, m):
    g, s, _ = xgcd(F, a, m)
    if not is_one(F, g):
        raise NotCoprime("not invertible modulo")
    return mod(F, s, m)


def deriv(F, a):
    return trim(F, [F.mul(F.from_int(i), a[i]) for i in range(1, len(a))])


def evaluate(F, a, x):
    acc = F.zero
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def taylor_shift(F, a, c):
    """a(x + c)."""
    out = []
    for coef in reversed(a):
        # out = out*(x + c) + coef
        nxt = [F.zero] * (len(out) + 1)
        for i, v in enumerate(out):
            nxt[i + 1] = F.add(nxt[i + 1], v)
            nxt[i] = F.add(nxt[i], F.mul(v, c))
        nxt[0] = F.add(nxt[0], coef)
        out = nxt
    return trim(F, out)


def power(F, a, e):
    result = [F.one]
    while e:
        if e & 1:
            result = mul(F, result, a)
        e >>= 1
        if e:
            a = mul(F, a, a)
    return result


def powmod(F, a, e, m):
    result = [F.one]
    a = mod(F, a, m)
    while e:
        if e & 1:
            result = mod(F, mul(F, result, a), m)
        e >>= 1
        if e:
            a = mod(F, mul(F, a, a), m)
    return mod(F, result, m)


def valuation(F, a):
    """x-adic valuation; None for the zero polynomial."""
    for i, c in enumerate(a):
        if not F.is_zero(c):
            return i
    return None


def multiplicity(F, a, phi):
    """Largest k with phi**k | a (a nonzero)."""
    k = 0
    while True:
        q, r = divmod_(F, a, phi)
        if r:
            return k
        a = q
        k += 1


def series_inverse(F, a, n):
    """1/a mod x**n for a(0) != 0 (Newton iteration)."""
    inv0 = F.inv(a[0])
    b = [inv0]
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        ab = mul_trunc(F, a, b, prec)
        two_minus = sub(F, [F.from_int(2)], ab)
        b = mul_trunc(F, b, two_minus, prec)
    return truncate(F, b, n)


def map_coeffs(F, a, fn):
    return trim(F, [fn(c) for c in a])


def sort_key(F, a):
    return (len(a), tuple(F.sort_key(c) for c in reversed(a)))


# ---------------------------------------------------------------- factoring


def _pth_root(F, a):
    p = F.char
    out = []
    for i in range(0, len(a), p):
        c = a[i]
        # c ** (1/p) = c ** (p ** (k-1)) in F_{p^k}
        out.append(F.frobenius(c, F.degree - 1) if F.degree > 1 else c)
    return trim(F, out)


def squarefree_decomposition(F, a):
    """List of (g_i, i) with a = lc * prod g_i**i, g_i squarefree coprime."""
    a = monic(F, a)
    out = []
    if len(a) <= 1:
        return out
    c = gcd(F, a, deriv(F, a))
    w = div_exact(F, a, c)
    i = 1
    while len(w) > 1:
        y = gcd(F, w, c)
        z = div_exact(F, w, y)
        if len(z) > 1:
            out.append((z, i))
        i += 1
        w = y
        c = div_exact(F, c, y)
    if len(c) > 1:
        root = _pth_root(F, c)
        for g, m in squarefree_decomposition(F, root):
            out.append((g, m * F.char))
    out.sort(key=lambda t: t[1])
    return out


def distinct_degree(F, a):
    """a monic squarefree -> list of (product of degree-d irreducibles, d)."""
    out = []
    x = [F.zero, F.one]
    h = x
    d = 0
    f = list(a)
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = powmod(F, h, F.order, f)
        g = gcd(F, f, sub(F, h, x))
        if len(g) > 1:
            out.append((g, d))
            f = div_exact(F, f, g)
            h = mod(F, h, f)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def _random_poly(F, n):
    return trim(F, [F.random() for _ in range(n)])


def equal_degree(F, a, d):
    """Split a (monic, product of degree-d irreducibles) completely."""
    n = len(a) - 1
    if n == d:
        return [a]
    q = F.order
    while True:
        r = _random_poly(F, n)
        if len(r) < 2:
            continue
        if F.char == 2:
            # absolute trace map r + r^2 + ... + r^(2^(k d - 1))
            t = list(r)
            s = mod(F, r, a)
            for _ in range(F.degree * d - 1):
                s = mod(F, mul(F, s, s), a)
                t = add(F, t, s)
            b = mod(F, t, a)
        else:
            b = sub(F, powmod(F, r, (q**d - 1) // 2, a), [F.one])
        g = gcd(F, a, b)
        if 1 < len(g) < len(a):
            return equal_degree(F, g, d) + equal_degree(F, div_exact(F, a, g), d)


def factor(F, a):
    """Complete factorization: (leading coefficient, [(monic irreducible, mult), ...])."""
    if not a:
        raise ValueError("cannot factor zero")
    lc = a[-1]
    out = []
    for g, m in squarefree_decomposition(F, a):
        for block, d in distinct_degree(F, g):
            for h in equal_degree(F, block, d):
                out.append((h, m))
    out.sort(key=lambda t: sort_key(F, t[0]))
    return lc, out


def factor_univariate(a, F=None):
    """Factorization of a :class:`UniPoly` (or a coefficient list with F)."""
    if isinstance(a, UniPoly):
        F, coeffs = a.field, a.coeffs
    else:
        coeffs = a
    _, facs = factor(F, list(coeffs))
    return [(UniPoly(F, g), m) for g, m in facs]


def roots(F, a):
    """Roots of a in F with multiplicities, in canonical order."""
    out = []
    for g, m in squarefree_decomposition(F, a):
        x = [F.zero, F.one]
        lin = gcd(F, g, sub(F, powmod(F, x, F.order, g), x))
        if len(lin) > 1:
            for h in equal_degree(F, lin, 1):
                out.append((F.neg(h[0]), m))
    out.sort(key=lambda t: F.sort_key(t[0]))
    return out


def irreducible_factor_degrees(F, a):
    """Degrees of the irreducible factors of a (with repetition by factor)."""
    degs = []
    for g, _ in squarefree_decomposition(F, a):
        for block, d in distinct_degree(F, g):
            degs.extend([d] * ((len(block) - 1) // d))
    return degs


def is_irreducible(F, a):
    if len(a) < 2:
        return False
    sq = squarefree_decomposition(F, a)
    if len(sq) != 1 or sq[0][1] != 1:
        return False
    dd = distinct_degree(F, monic(F, a))
    return len(dd) == 1 and dd[0][1] == len(a) - 1


def square_multiplicity_factors(F, D):
    """Irreducible phi with phi**2 | D, paired with their multiplicity."""
    if not D:
        raise ValueError("zero discriminant")
    out = []
    for g, m in squarefree_decomposition(F, D):
        if m < 2:
            continue
        for block, d in distinct_degree(F, g):
            for h in equal_degree(F, block, d):
                out.append((h, m))
    out.sort(key=lambda t: sort_key(F, t[0]))
    return out


def crt_combine(F, residues, moduli):
    """Unique r with deg r < sum deg m_i and r = residues[i] mod moduli[i]."""
    if len(residues) != len(moduli):
        raise ValueError("length mismatch")
    total = reduce(lambda u, v: mul(F, u, v), moduli, [F.one])
    result = []
    for r, m in zip(residues, moduli):
        if len(m) <= 1:
            continue
        cof = div_exact(F, total, m)
        g, s, _ = xgcd(F, cof, m)
        if not is_one(F, g):
            raise NotCoprime("moduli are not pairwise coprime")
        term = mul(F, mod(F, mul(F, r, s), m), cof)
        result = add(F, result, term)
    return mod(F, result, total) if len(total) > 1 else []


class UniPoly:
    """A univariate polynomial bound to its field (immutable)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = tuple(trim(field, list(coeffs)))

    @classmethod
    def from_ints(cls, field, coeffs):
        return cls(field, [field.from_int(c) for c in coeffs])

    def _check(self, other):
        if not isinstance(other, UniPoly):
            raise TypeError("expected UniPoly")
        if other.field != self.field:
            raise ContextMismatch(f"{self.field} vs {other.field}")

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __add__(self, other):
        self._check(other)
        return UniPoly(self.field, add(self.field, list(self.coeffs), list(other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return UniPoly(self.field, sub(self.field, list(self.coeffs), list(other.coeffs)))

    def __mul__(self, other):
        self._check(other)
        return UniPoly(self.field, mul(self.field, list(self.coeffs), list(other.coeffs)))

    def __divmod__(self, other):
        self._check(other)
        q, r = divmod_(self.field, list(self.coeffs), list(other.coeffs))
        return UniPoly(self.field, q), UniPoly(self.field, r)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __call__(self, x):
        return evaluate(self.field, self.coeffs, x)

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not self.field.is_zero(c):
                terms.append(f"{c}*x^{i}")
        return "UniPoly(" + (" + ".join(terms) or "0") + ")"

    def monic(self):
        return UniPoly(self.field, monic(self.field, list(self.coeffs)))


def uni_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    a._check(b)
    return UniPoly(a.field, gcd(a.field, list(a.coeffs), list(b.coeffs)))
