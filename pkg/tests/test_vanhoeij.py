from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from intbasis import bipoly as B
from intbasis import upoly as U
from intbasis.basis import compare_bases, power_basis
from intbasis.corpus import corpus
from intbasis.field import PrimeField
from intbasis.puiseux import LocalExpansions
from intbasis.vanhoeij import (
    _Branches,
    build_system,
    global_basis_vh,
    local_basis_vh,
    local_basis_vh_binary,
    local_basis_vh_jump,
    solve_update,
)
from intbasis.verify import verify_integrality, verify_maximality

from conftest import curve

P = 10007
F = PrimeField(P)
X1 = [0, 1]
CUSP = curve(lambda X, Y: Y**2 - X**3)


def _cusp_branches():
    loc = LocalExpansions(P, CUSP, X1, delta=3)
    return loc.field, _Branches(loc, 4)


def test_build_system_first_pass():
    L, br = _cusp_branches()
    ((_, e, _, Y),) = br.params
    cand = [(Y, e * 4)]
    prev = [[([1], e * 4)]]
    rows, rhs = build_system(L, cand, prev, br)
    # (y + a_0)/x integral forces a_0 = 0
    assert rows == [[1], [0]] and rhs == [0, 0]
    assert solve_update(L, (rows, rhs), 1) == [0]


def test_build_system_second_pass_inconsistent():
    L, br = _cusp_branches()
    ((_, e, gamma, Y),) = br.params
    # y/x along the branch is (Y / gamma T^2); its T^1 term cannot be cancelled by a_0
    s = [L.mul(c, L.inv(gamma)) for c in Y[2:]]
    rows, rhs = build_system(L, [(s, 2 * 4 - 2)], [[([1], 8)]], br)
    assert solve_update(L, (rows, rhs), 1) is None


def test_solve_update_edge_cases():
    assert solve_update(F, ([[0]], [1]), 1) is None
    assert solve_update(F, ([], []), 2) == [0, 0]


def test_local_basis_examples():
    lb = local_basis_vh(P, CUSP, X1, 3)
    assert lb.exponents == [0, 1] and lb.numerators == [[[1]], [[], [1]]]
    lb = local_basis_vh(P, curve(lambda X, Y: Y**3 - X**2), X1, 4)
    assert lb.exponents == [0, 0, 1]
    assert lb.numerators[2] == B.bp_ypow(F, 2)


def test_smooth_curve_is_power_basis():
    f = curve(lambda X, Y: Y**2 - X)
    b = global_basis_vh(P, f)
    assert b.report["factors"] == []
    assert compare_bases(b, power_basis(P, f)) == ("equal", None)


def test_binary_examples():
    lb = local_basis_vh_binary(P, CUSP, X1, 3)
    assert lb.exponents == [0, 1]
    assert lb.systems <= 2
    node = curve(lambda X, Y: Y**2 - X**2 * (X + 1))
    lb = local_basis_vh_binary(P, node, X1, 2)
    assert lb.exponents == [0, 1]


def test_two_cusps_crt():
    f = curve(lambda X, Y: Y**2 - X**3 * (X - 1) ** 3)
    b = global_basis_vh(P, f).canonical()
    assert b.elements[1] == ([[], [1]], U.mul(F, X1, [P - 1, 1]))


def _variants(f):
    out = {}
    for v in ("classical", "binary", "jump"):
        out[v] = global_basis_vh(P, f, variant=v)
    return out


@pytest.mark.parametrize("name", ["cusp", "node", "tacnode", "e6", "y4_x3", "conjugate_cusps", "inert_cusps",
                                  "deep_chain", "tangent_triple", "cubic_irreducible_phi", "y6_irregular"])
def test_variants_agree(name):
    f = corpus()[name]
    bs = _variants(f)
    assert compare_bases(bs["classical"], bs["binary"]) == ("equal", None)
    assert compare_bases(bs["classical"], bs["jump"]) == ("equal", None)
    assert verify_maximality(bs["classical"])["pass"]


def _random_singular_curve(seed):
    """y^n + sum c_j x^v_j y^j with every v_j >= 1: singular at the origin."""
    gen = random.Random(seed)
    X, Y = B.generators(F)
    n = gen.randint(2, 4)
    f = Y**n
    for j in range(n):
        f = f + gen.randrange(1, P) * X ** gen.randint(1, 5) * Y**j
    return f.as_lists()


@given(st.integers(0, 2**32))
def test_vh_properties_random(seed):
    f = _random_singular_curve(seed)
    D = B.discriminant_y(F, f)
    if not D:
        return
    n = len(f) - 1
    for phi, M in U.square_multiplicity_factors(F, D):
        lb = local_basis_vh(P, f, phi, M)
        ex = lb.exponents
        assert ex[0] == 0 and ex == sorted(ex) and ex[-1] <= M
        assert lb.systems <= n + M / 2
        assert local_basis_vh_binary(P, f, phi, M).exponents == ex
        assert local_basis_vh_jump(P, f, phi, M).exponents == ex
        loc = LocalExpansions(P, f, phi, delta=M)
        assert M - 2 * sum(ex) == loc.tame_defect()
    b = global_basis_vh(P, f)
    assert verify_integrality(b)["pass"]
    assert verify_maximality(b)["pass"]


@pytest.mark.parametrize("n,m", [(2, 3), (2, 5), (3, 2), (3, 4), (4, 3), (5, 7), (7, 5)])
def test_quasihomogeneous_exponents(n, m):
    f = curve(lambda X, Y: Y**n - X**m)
    lb = local_basis_vh(P, f, X1, (n - 1) * m)
    assert lb.exponents == [i * m // n for i in range(n)]
