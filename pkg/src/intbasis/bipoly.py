"""Polynomials in K[x][y].

A bivariate polynomial is a list indexed by y-degree whose entries are
univariate coefficient lists in x (see :mod:`intbasis.upoly`).  The leading
entry is nonzero; ``[]`` is zero.
"""

from __future__ import annotations

from . import upoly as U


def bp_trim(F, a):
    while a and not a[-1]:
        a.pop()
    return a


def bp_from_terms(F, terms):
    """Build from (i, j, c) triples meaning c * x^i * y^j."""
    cols = {}
    for i, j, c in terms:
        cols.setdefault(j, {})
        cols[j][i] = F.add(cols[j].get(i, F.zero), F.from_int(c) if isinstance(c, int) else c)
    if not cols:
        return []
    out = []
    for j in range(max(cols) + 1):
        d = cols.get(j, {})
        coeffs = [d.get(i, F.zero) for i in range(max(d) + 1)] if d else []
        out.append(U.trim(F, coeffs))
    return bp_trim(F, out)


def bp_terms(F, a):
    """Sparse (i, j, c) list ordered by (j, i)."""
    return [(i, j, c) for j, col in enumerate(a) for i, c in enumerate(col) if not F.is_zero(c)]


def bp_const(F, poly):
    return [list(poly)] if poly else []


def bp_y(F):
    return [[], [F.one]]


def bp_ypow(F, k):
    return [[] for _ in range(k)] + [[F.one]]


def bp_deg_y(a):
    return len(a) - 1


def bp_deg_x(a):
    return max((len(c) - 1 for c in a), default=-1)


def bp_is_monic(F, a):
    return bool(a) and U.is_one(F, a[-1])


def bp_add(F, a, b):
    n = max(len(a), len(b))
    out = [U.add(F, a[j] if j < len(a) else [], b[j] if j < len(b) else []) for j in range(n)]
    return bp_trim(F, out)


def bp_sub(F, a, b):
    n = max(len(a), len(b))
    out = [U.sub(F, a[j] if j < len(a) else [], b[j] if j < len(b) else []) for j in range(n)]
    return bp_trim(F, out)


def bp_neg(F, a):
    return [U.neg(F, c) for c in a]


def bp_scale(F, a, c):
    """Multiply by a scalar c of F."""
    if F.is_zero(c):
        return []
    return [U.scale(F, col, c) for col in a]


def bp_mul_poly(F, a, u):
    """Multiply by a univariate polynomial u(x)."""
    if not u:
        return []
    return bp_trim(F, [U.mul(F, col, u) for col in a])


def bp_mul(F, a, b):
    if not a or not b:
        return []
    out = [[] for _ in range(len(a) + len(b) - 1)]
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            if cb:
                out[i + j] = U.add(F, out[i + j], U.mul(F, ca, cb))
    return bp_trim(F, out)


def bp_mul_trunc(F, a, b, prec):
    """Product with x-coefficients truncated mod x**prec."""
    if not a or not b:
        return []
    out = [[] for _ in range(len(a) + len(b) - 1)]
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            if cb:
                out[i + j] = U.add(F, out[i + j], U.mul_trunc(F, ca, cb, prec))
    return bp_trim(F, out)


def bp_truncate_x(F, a, prec):
    return bp_trim(F, [U.truncate(F, c, prec) for c in a])


def bp_shift_y(F, a, k):
    """Multiply by y**k."""
    return [[] for _ in range(k)] + [list(c) for c in a] if a else []


def bp_divmod_y(F, g, f):
    """Division in y by f monic in y: (q, r) with g = q f + r, deg_y r < deg_y f."""
    n = len(f) - 1
    r = [list(c) for c in g]
    if len(r) - 1 < n:
        return [], bp_trim(F, r)
    q = [[] for _ in range(len(r) - n)]
    for j in range(len(r) - 1, n - 1, -1):
        c = r[j]
        if not c:
            continue
        q[j - n] = c
        for k in range(n + 1):
            if f[k]:
                r[j - n + k] = U.sub(F, r[j - n + k], U.mul(F, c, f[k]))
    return bp_trim(F, q), bp_trim(F, r[:n])


def reduce_mod_f(F, g, f):
    """g mod f for f monic in y."""
    return bp_divmod_y(F, g, f)[1]


def bp_divmod_y_trunc(F, g, f, prec):
    """Division in y by monic f with x-coefficients kept mod x**prec."""
    n = len(f) - 1
    r = [U.truncate(F, c, prec) for c in g]
    if len(r) - 1 < n:
        return [], bp_trim(F, r)
    q = [[] for _ in range(len(r) - n)]
    for j in range(len(r) - 1, n - 1, -1):
        c = r[j]
        if not c:
            continue
        q[j - n] = c
        for k in range(n + 1):
            if f[k]:
                r[j - n + k] = U.sub(F, r[j - n + k], U.mul_trunc(F, c, f[k], prec))
    return bp_trim(F, q), bp_trim(F, r[:n])


def bp_dy(F, a):
    return bp_trim(F, [U.scale(F, a[j], F.from_int(j)) for j in range(1, len(a))])


def bp_map(F_to, a, fn):
    return bp_trim(F_to, [U.trim(F_to, [fn(c) for c in col]) for col in a])


def shift_origin(F, f, alpha):
    """f(x + alpha, y) (coefficients already in the field of alpha)."""
    return bp_trim(F, [U.taylor_shift(F, col, alpha) for col in f])


def unshift_origin(F, f, alpha):
    return shift_origin(F, f, F.neg(alpha))


def shift_y(F, f, c):
    """f(x, y + c)."""
    out = []
    cpoly = U.const(F, c)
    for col in reversed(f):
        # out = out * (y + c) + col
        nxt = [[] for _ in range(len(out) + 1)]
        for j, v in enumerate(out):
            nxt[j + 1] = U.add(F, nxt[j + 1], v)
            nxt[j] = U.add(F, nxt[j], U.mul(F, v, cpoly))
        nxt[0] = U.add(F, nxt[0], col)
        out = nxt
    return bp_trim(F, out)


def bp_eval_x0(F, a):
    """a(0, y) as a univariate polynomial in y."""
    return U.trim(F, [col[0] if col else F.zero for col in a])


def bp_transpose_eval(F, a, xval):
    return U.trim(F, [U.evaluate(F, col, xval) for col in a])


# ----------------------------------------------------------------- resultants


def _prem(F, A, B):
    """Pseudo-remainder of A by B in R[y], R = K[x]: lc(B)^(dA-dB+1) A = Q B + prem."""
    dB = len(B) - 1
    lcB = B[-1]
    R = [list(c) for c in A]
    e = len(A) - dB
    while R and len(R) - 1 >= dB:
        j = len(R) - 1
        c = R[-1]
        R = [U.mul(F, col, lcB) for col in R]
        for k in range(dB + 1):
            if B[k]:
                R[j - dB + k] = U.sub(F, R[j - dB + k], U.mul(F, c, B[k]))
        R = bp_trim(F, R)
        e -= 1
    if R and e > 0:
        m = U.power(F, lcB, e)
        R = [U.mul(F, col, m) for col in R]
    return R


def resultant_y(F, A, B):
    """Res_y(A, B) in K[x] by the subresultant PRS."""
    if not A or not B:
        return []
    dA, dB = len(A) - 1, len(B) - 1
    s = 1
    if dA < dB:
        A, B = B, A
        dA, dB = dB, dA
        if dA % 2 == 1 and dB % 2 == 1:
            s = -s
    if dB == 0:
        res = U.power(F, B[0], dA)
        return U.neg(F, res) if s < 0 else res
    g = [F.one]
    h = [F.one]
    while True:
        dA, dB = len(A) - 1, len(B) - 1
        delta = dA - dB
        if dA % 2 == 1 and dB % 2 == 1:
            s = -s
        R = _prem(F, A, B)
        A = B
        if not R:
            return []
        denom = U.mul(F, g, U.power(F, h, delta))
        B = [U.div_exact(F, col, denom) for col in R]
        g = A[-1]
        if delta > 0:
            h = U.div_exact(F, U.power(F, g, delta), U.power(F, h, delta - 1))
        if len(B) - 1 == 0:
            dA = len(A) - 1
            res = U.div_exact(F, U.power(F, B[0], dA), U.power(F, h, dA - 1))
            return U.neg(F, res) if s < 0 else res


def discriminant_y(F, f):
    """Disc_y(f) = (-1)^(n(n-1)/2) Res_y(f, df/dy) for f monic in y."""
    n = len(f) - 1
    if n == 1:
        return [F.one]
    r = resultant_y(F, f, bp_dy(F, f))
    return U.neg(F, r) if (n * (n - 1) // 2) % 2 else r


# ------------------------------------------------------- function field elements


def mult_matrix(F, num, f):
    """Rows i = coefficients of y^i * num mod f (matrix of multiplication by num)."""
    n = len(f) - 1
    rows = []
    cur = reduce_mod_f(F, num, f)
    for _ in range(n):
        rows.append([cur[j] if j < len(cur) else [] for j in range(n)])
        cur = reduce_mod_f(F, bp_shift_y(F, cur, 1), f)
    return rows


def berkowitz(F, A):
    """Coefficients [1, c_1, ..., c_n] of det(T I - A) for A over K[x] (division free)."""
    n = len(A)
    if n == 0:
        return [[F.one]]
    C = [[F.one], U.neg(F, A[0][0])]
    for r in range(1, n):
        R = A[r][:r]
        S = [A[i][r] for i in range(r)]
        a = A[r][r]
        q = [[F.one], U.neg(F, a)]
        vec = S
        for _ in range(r):
            dot = []
            for ri, vi in zip(R, vec):
                if ri and vi:
                    dot = U.add(F, dot, U.mul(F, ri, vi))
            q.append(U.neg(F, dot))
            # vec <- A_r * vec
            nv = []
            for i in range(r):
                acc = []
                for j in range(r):
                    if A[i][j] and vec[j]:
                        acc = U.add(F, acc, U.mul(F, A[i][j], vec[j]))
                nv.append(acc)
            vec = nv
        newC = []
        for i in range(r + 2):
            acc = []
            for j in range(r + 1):
                if 0 <= i - j < len(q) and C[j] and q[i - j]:
                    acc = U.add(F, acc, U.mul(F, q[i - j], C[j]))
            newC.append(acc)
        C = newC
    return C


def rat_reduce(F, num, den):
    """Normalize num/den: coprime, den monic."""
    if not num:
        return [], [F.one]
    g = U.gcd(F, num, den)
    num = U.div_exact(F, num, g)
    den = U.div_exact(F, den, g)
    c = F.inv(den[-1])
    return U.scale(F, num, c), U.scale(F, den, c)


def charpoly_of_element(F, num, den, f):
    """Monic characteristic polynomial of num/den in K(x)[y]/f.

    Returned as [(n_0, d_0), ..., (n_n, d_n)] with entry k the coefficient of
    T^(n-k) reduced to lowest terms (entry 0 is 1)."""
    A = mult_matrix(F, num, f)
    C = berkowitz(F, A)
    out = []
    for k, c in enumerate(C):
        out.append(rat_reduce(F, c, U.power(F, den, k)))
    return out


def trace_of(F, num, den, f):
    """tr(num/den) as a reduced fraction (numerator, denominator)."""
    A = mult_matrix(F, num, f)
    tr = []
    for i in range(len(A)):
        tr = U.add(F, tr, A[i][i])
    return rat_reduce(F, tr, den)


def power_traces(F, f, count):
    """tr(y^k) for k < count by Newton's identities (f monic)."""
    n = len(f) - 1
    P = [U.const(F, F.from_int(n))]
    for k in range(1, count):
        acc = []
        for i in range(1, min(k, n) + 1):
            if k - i >= 0 and f[n - i]:
                if i == k:
                    acc = U.add(F, acc, U.scale(F, f[n - k], F.from_int(k)))
                else:
                    acc = U.add(F, acc, U.mul(F, f[n - i], P[k - i]))
        P.append(U.neg(F, acc))
    return P


def is_integral_element(F, num, den, f):
    """True iff every charpoly coefficient of num/den lies in K[x]."""
    return all(len(d) == 1 for _, d in charpoly_of_element(F, num, den, f))


class BiPoly:
    """Immutable view of an element of K[x][y] bound to its field."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = tuple(tuple(c) for c in bp_trim(field, [list(c) for c in coeffs]))

    @classmethod
    def from_terms(cls, field, terms):
        return cls(field, bp_from_terms(field, terms))

    def as_lists(self):
        return [list(c) for c in self.coeffs]

    @property
    def n(self):
        return len(self.coeffs) - 1

    @property
    def dx(self):
        return bp_deg_x(self.coeffs)

    @property
    def is_monic(self):
        return bp_is_monic(self.field, self.coeffs)

    def terms(self):
        return bp_terms(self.field, self.coeffs)

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f"BiPoly({self.terms()})"

    # arithmetic (ints are coerced to constants)

    def _lift(self, other):
        if isinstance(other, BiPoly):
            return other.as_lists()
        if isinstance(other, int):
            c = self.field.from_int(other)
            return [[c]] if c else []
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else BiPoly(self.field, bp_add(self.field, self.as_lists(), o))

    __radd__ = __add__

    def __neg__(self):
        return BiPoly(self.field, bp_neg(self.field, self.as_lists()))

    def __sub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else BiPoly(self.field, bp_sub(self.field, self.as_lists(), o))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else BiPoly(self.field, bp_mul(self.field, self.as_lists(), o))

    __rmul__ = __mul__

    def __pow__(self, k):
        out = BiPoly(self.field, [[self.field.one]])
        for _ in range(k):
            out = out * self
        return out


def generators(field):
    """The pair (X, Y) of BiPoly variables over a field."""
    return BiPoly(field, [[field.zero, field.one]]), BiPoly(field, [[], [field.one]])
