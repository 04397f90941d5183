from __future__ import annotations

import sympy
from hypothesis import given, strategies as st

from intbasis import bipoly as B
from intbasis import upoly as U
from intbasis.field import PrimeField

from conftest import curve
from oracles import T, resultant_mod_p, to_sympy_bi, x, y

P = 10007
F = PrimeField(P)

xpolys = st.lists(st.integers(0, P - 1), max_size=3).map(lambda c: U.trim(F, c))


@st.composite
def monic_bivariates(draw, min_n=1, max_n=3):
    n = draw(st.integers(min_n, max_n))
    cols = [draw(xpolys) for _ in range(n)]
    return B.bp_trim(F, cols + [[1]])


@st.composite
def bivariates(draw, max_n=3):
    cols = [draw(xpolys) for _ in range(draw(st.integers(1, max_n + 1)))]
    return B.bp_trim(F, cols)


def test_resultant_examples():
    f = curve(lambda X, Y: Y**2 - X**3)
    # Sylvester matrix [[1, 0, -x^3], [2, 0, 0], [0, 2, 0]] has determinant -4x^3
    assert B.resultant_y(F, f, [[], [2]]) == resultant_mod_p(f, [[], [2]], P)
    assert B.resultant_y(F, f, [[], [2]]) == [0, 0, 0, P - 4]
    lin = curve(lambda X, Y: Y - X**2)
    g = curve(lambda X, Y: Y**3 + X * Y + 1)
    # Res(y - a(x), g) = g(x, a(x))
    assert B.resultant_y(F, lin, g) == U.trim(F, U.add(F, U.add(F, U.power(F, [0, 0, 1], 3), [0, 0, 0, 1]), [1]))
    assert B.resultant_y(F, curve(lambda X, Y: Y - X), curve(lambda X, Y: Y - X)) == []


@given(monic_bivariates(), bivariates())
def test_resultant_matches_sylvester(f, g):
    if not g:
        return
    assert B.resultant_y(F, f, g) == resultant_mod_p(f, g, P)


def test_discriminant_examples():
    assert U.monic(F, B.discriminant_y(F, curve(lambda X, Y: Y**2 - X**3))) == [0, 0, 0, 1]
    assert U.monic(F, B.discriminant_y(F, curve(lambda X, Y: Y**2 - X))) == [0, 1]
    assert B.discriminant_y(F, curve(lambda X, Y: (Y - X) ** 2)) == []


@given(monic_bivariates(min_n=2))
def test_discriminant_matches_sympy(f):
    n = len(f) - 1
    res = resultant_mod_p(f, B.bp_dy(F, f), P)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    assert B.discriminant_y(F, f) == U.scale(F, res, sign % P)


@given(monic_bivariates(min_n=2))
def test_discriminant_zero_iff_common_factor(f):
    D = B.discriminant_y(F, f)
    g = sympy.gcd(sympy.Poly(to_sympy_bi(f), y, x, modulus=P), sympy.Poly(sympy.diff(to_sympy_bi(f), y), y, x, modulus=P))
    assert (not D) == (g.degree(y) > 0)


def test_reduce_mod_f_examples():
    f = curve(lambda X, Y: Y**2 - X**3)
    assert B.reduce_mod_f(F, f, f) == []
    assert B.reduce_mod_f(F, B.bp_ypow(F, 2), f) == [[0, 0, 0, 1]]
    assert B.reduce_mod_f(F, B.bp_ypow(F, 3), f) == [[], [0, 0, 0, 1]]


@given(monic_bivariates(), bivariates(max_n=5))
def test_reduce_mod_f_is_remainder(f, g):
    r = B.reduce_mod_f(F, g, f)
    assert len(r) < len(f)
    q, r2 = B.bp_divmod_y(F, g, f)
    assert r2 == r
    assert B.bp_add(F, B.bp_mul(F, q, f), r) == B.bp_trim(F, g)


def _cp(num, den, f):
    return B.charpoly_of_element(F, num, den, f)


def test_charpoly_examples():
    f = curve(lambda X, Y: Y**2 - X**3)
    one = [1]
    assert _cp(B.bp_y(F), one, f) == [([1], [1]), ([], [1]), ([0, 0, 0, P - 1], [1])]
    assert _cp(B.bp_y(F), [0, 1], f) == [([1], [1]), ([], [1]), ([0, P - 1], [1])]
    # constant c: (T - c)^2
    assert _cp([[5]], one, f) == [([1], [1]), ([P - 10], [1]), ([25], [1])]


def test_trace_examples():
    f = curve(lambda X, Y: Y**2 - X**3)
    assert B.trace_of(F, [[1]], [1], f) == ([2], [1])
    assert B.trace_of(F, B.bp_y(F), [1], f) == ([], [1])
    assert B.trace_of(F, B.bp_ypow(F, 2), [1], f) == ([0, 0, 0, 2], [1])
    assert B.power_traces(F, f, 3) == [[2], [], [0, 0, 0, 2]]


@given(monic_bivariates(min_n=2), bivariates(max_n=2))
def test_charpoly_matches_resultant_oracle(f, b):
    n = len(f) - 1
    got = _cp(b, [1], f)
    expect = sympy.Poly(sympy.resultant(to_sympy_bi(f), T - to_sympy_bi(b), y), T)
    coeffs = expect.all_coeffs()
    assert len(coeffs) == n + 1
    lead = int(coeffs[0])
    for k, c in enumerate(coeffs):
        ref = sympy.Poly(sympy.expand(c * lead), x, modulus=P)
        ref = U.trim(F, [int(v) % P for v in reversed(ref.all_coeffs())])
        assert got[k] == (ref, [1])


@given(monic_bivariates(min_n=2), bivariates(max_n=3))
def test_cayley_hamilton(f, b):
    n = len(f) - 1
    chi = _cp(b, [1], f)
    acc = []
    pw = [[1]]
    for k in range(n, -1, -1):
        acc = B.bp_add(F, acc, B.bp_mul_poly(F, pw, chi[k][0]))
        pw = B.reduce_mod_f(F, B.bp_mul(F, pw, b), f)
    assert B.reduce_mod_f(F, acc, f) == []


@given(monic_bivariates(min_n=2), bivariates(max_n=2), bivariates(max_n=2), st.integers(0, P - 1))
def test_trace_is_linear(f, a, b, lam):
    comb = B.bp_add(F, B.bp_scale(F, a, lam), b)
    ta, tb, tc = (B.trace_of(F, g, [1], f)[0] for g in (a, b, comb))
    assert tc == U.add(F, U.scale(F, ta, lam), tb)


def test_shift_origin_examples():
    f = curve(lambda X, Y: Y**2 - (X - 1) ** 3)
    assert B.shift_origin(F, f, 0) == f
    assert B.shift_origin(F, f, 1) == curve(lambda X, Y: Y**2 - X**3)


@given(monic_bivariates(min_n=2), st.integers(0, P - 1))
def test_shift_roundtrip_and_discriminant(f, a):
    g = B.shift_origin(F, f, a)
    assert B.unshift_origin(F, g, a) == f
    assert B.discriminant_y(F, g) == U.taylor_shift(F, B.discriminant_y(F, f), a)


def test_integrality_oracle_examples():
    cusp = curve(lambda X, Y: Y**2 - X**3)
    assert B.is_integral_element(F, B.bp_y(F), [0, 1], cusp)
    assert not B.is_integral_element(F, B.bp_y(F), [0, 0, 1], cusp)
    assert not B.is_integral_element(F, B.bp_y(F), [0, 1], curve(lambda X, Y: Y**2 - X))
