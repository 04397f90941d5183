from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from intbasis import bipoly as B
from intbasis import upoly as U
from intbasis.basis import (
    IntegralBasis,
    canonical_elements,
    compare_bases,
    lift_local_poly,
    power_basis,
    residue_to_poly,
    validate_curve,
)
from intbasis.errors import NotMonic, NotPrime, SquarefreeViolation, TooSmall
from intbasis.field import PrimeField, finite_field

from conftest import curve

P = 10007
F = PrimeField(P)
PHI = [P - 5, 0, 1]  # x^2 - 5, irreducible mod 10007
L = finite_field(P, 2)
ALPHA = next(r for r, _ in U.roots(L, [L.from_int(-5), L.zero, L.one]))


def _series_of(a, e):
    """a(alpha + x') mod x'^e for a over F_p."""
    sh = U.taylor_shift(L, U.trim(L, [L.from_int(c) for c in a]), ALPHA)
    return U.truncate(L, sh, e)


local_coeff = st.tuples(st.integers(0, P - 1), st.integers(0, P - 1)).map(
    lambda t: L.add(L.from_int(t[0]), L.mul(L.from_int(t[1]), ALPHA)))


@given(st.lists(local_coeff, max_size=4), st.integers(1, 4))
def test_lift_inverts_local_map(c, e):
    c = U.trim(L, c)
    a = lift_local_poly(F, L, ALPHA, PHI, c, e)
    assert len(a) <= 2 * e
    assert _series_of(a, e) == U.truncate(L, c, e)


def test_naive_substitution_is_only_first_order():
    # the constant alpha: replacing alpha by x gives a = x, but x = alpha + x'
    c = [ALPHA]
    naive = residue_to_poly(F, L, ALPHA, ALPHA, 2)
    assert naive == [0, 1]
    assert _series_of(naive, 1) == [ALPHA]
    assert _series_of(naive, 2) != c
    exact = lift_local_poly(F, L, ALPHA, PHI, c, 2)
    assert _series_of(exact, 2) == c


def test_canonical_form_node():
    # module generated by (y + x)/2x and -(y - x)/2x is <1, y/x>
    half = F.inv(2)
    els = [([[0, half], [half]], [0, 1]), ([[0, half], [P - half]], [0, 1])]
    can = canonical_elements(F, els, 2)
    assert can == [([[1]], [1]), ([[], [1]], [0, 1])]
    node = curve(lambda X, Y: Y**2 - X**2)
    b1 = IntegralBasis(P, node, els)
    b2 = IntegralBasis(P, node, [([[1]], [1]), ([[], [1]], [0, 1])])
    assert compare_bases(b1, b2) == ("equal", None)


def test_compare_detects_difference():
    f = curve(lambda X, Y: Y**2 - X**3)
    big = IntegralBasis(P, f, [([[1]], [1]), ([[], [1]], [0, 1])])
    assert compare_bases(power_basis(P, f), big) == ("differ", 1)
    assert compare_bases(big, big) == ("equal", None)


@given(st.lists(st.integers(0, P - 1), min_size=2, max_size=2), st.integers(1, P - 1))
def test_canonical_ignores_generator_choice(a, s):
    f = curve(lambda X, Y: Y**2 - X**3)
    b = [([[1]], [1]), ([[], [1]], [0, 1])]
    # s * b_0 and b_1 + a(x) b_0 = (y + a x)/x generate the same module
    shifted = B.bp_add(F, [[], [1]], [U.mul(F, U.trim(F, list(a)), [0, 1])])
    alt = [([[s]], [1]), (shifted, [0, 1])]
    assert canonical_elements(F, alt, 2) == canonical_elements(F, b, 2)


def test_validate_curve_errors():
    with pytest.raises(NotPrime):
        validate_curve(10, curve(lambda X, Y: Y**2 - X**3, p=7))
    with pytest.raises(NotMonic):
        validate_curve(P, curve(lambda X, Y: 2 * Y**2 - X**3))
    with pytest.raises(SquarefreeViolation):
        validate_curve(P, curve(lambda X, Y: (Y - X) ** 2))
    with pytest.raises(TooSmall):
        validate_curve(5, curve(lambda X, Y: Y**3 - X**2, p=5))
    F_, D, facs = validate_curve(P, curve(lambda X, Y: Y**2 - X**3))
    assert facs == [([0, 1], 3)]


def test_to_json_schema():
    f = curve(lambda X, Y: Y**2 - X**3 * (X - 1) ** 3)
    b = IntegralBasis(P, f, [([[1]], [1]), ([[], [1]], U.mul(F, [0, 1], [P - 1, 1]))])
    js = b.to_json()
    assert js == {"n": 2, "denominator_factors": [[0, 1], [P - 1, 1]],
                  "basis": [{"num": [[0, 0, 1]], "den_exp": [0, 0]}, {"num": [[0, 1, 1]], "den_exp": [1, 1]}]}
