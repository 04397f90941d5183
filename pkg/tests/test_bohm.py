from __future__ import annotations

from fractions import Fraction
from math import ceil, log2

import pytest

from intbasis import bipoly as B
from intbasis import upoly as U
from intbasis.basis import compare_bases
from intbasis.bohm import (
    _tval,
    bohm_integral_basis,
    branch_numerators,
    include_unit_factor,
    local_basis_bohm,
    triangularize,
    truncation_chain,
)
from intbasis.corpus import corpus
from intbasis.field import PrimeField, finite_field
from intbasis.puiseux import LocalExpansions, branch_factorization

from conftest import curve

P = 10007
F = PrimeField(P)
L2 = finite_field(P, 2)
X1 = [0, 1]


def _unity(L, e):
    for z, _ in U.roots(L, U.sub(L, U.monomial(L, e), [L.one])):
        if all(L.pow(z, d) != L.one for d in range(1, e)):
            return z


def _conjugates(L, coeffs, e):
    z = _unity(L, e)
    out = []
    for k in range(e):
        w = L.pow(z, k)
        out.append(U.trim(L, [L.mul(c, L.pow(w, j)) for j, c in enumerate(coeffs)]))
    return out


def test_cusp_chain():
    (link,) = truncation_chain(F, [[0, 0, 0, 1], [0, 0, 0, P - 1]], 2, 8)
    assert link.g == B.bp_y(F) and link.u == 2 and link.sigma == Fraction(3, 2)
    bb = branch_numerators(F, [link], 2)
    assert bb.numerators == [[[1]], B.bp_y(F)] and bb.exponents == [0, 1]


def test_smooth_branch_has_empty_chain():
    assert truncation_chain(F, [[0, 1]], 1, 4) == []
    bb = branch_numerators(F, [], 1)
    assert bb.exponents == [0]


def test_chain_x_plus_x54():
    L = L2
    one = L.one
    series = _conjugates(L, [L.zero] * 4 + [one, one], 4)
    (link,) = truncation_chain(L, series, 4, 24)
    assert link.g == [[L.zero, L.neg(one)], [one]]
    assert link.u == 4 and link.sigma == Fraction(5, 4)


def test_chain_y3_x2():
    L = L2
    series = _conjugates(L, [L.zero, L.zero, L.one], 3)
    chain = truncation_chain(L, series, 3, 12)
    assert [(c.g, c.u, c.sigma) for c in chain] == [(B.bp_y(L), 3, Fraction(2, 3))]
    bb = branch_numerators(L, chain, 3)
    assert bb.exponents == [0, 0, 1]
    assert bb.numerators[2] == B.bp_ypow(L, 2)


def _sigma_all(L, link, series, e, tprec):
    return {Fraction(sum(_tval(L, gam, eta, tprec) for eta in link.truncations), e) for gam in series}


@pytest.mark.parametrize("name", ["deep_chain", "y8_x3", "y6_irregular", "e6", "y4_x3"])
def test_sigma_independent_of_expansion(name):
    f = corpus()[name]
    loc = LocalExpansions(P, f, X1, classical=True)
    L = loc.field
    cl = loc.classical_expansions(40)
    bf = branch_factorization(loc, L.zero, 40, expansions=cl)
    for e, series in bf.branches:
        cur = series
        for link in truncation_chain(L, series, e, 40 * e):
            assert len(_sigma_all(L, link, series, e, 40 * e)) == 1
        assert len(truncation_chain(L, cur, e, 40 * e)) <= ceil(log2(len(cur))) + 1


def test_deep_chain_d_maximality():
    f = corpus()["deep_chain"]
    loc = LocalExpansions(P, f, X1, classical=True)
    L = loc.field
    fL = B.bp_map(L, f, L.from_int)
    cl = loc.classical_expansions(40)
    bf = branch_factorization(loc, L.zero, 40, expansions=cl)
    (branch,) = bf.branches
    assert bf.factors == [fL]
    chain = truncation_chain(L, branch[1], branch[0], 160)
    bb = branch_numerators(L, chain, 4)
    assert bb.exponents == [0, 1, 3, 4]
    for num, e in zip(bb.numerators, bb.exponents):
        assert B.is_integral_element(L, num, U.monomial(L, e), fL)
        assert not B.is_integral_element(L, num, U.monomial(L, e + 1), fL)


def test_include_unit_factor():
    cusp_basis = [([[1]], 0), (B.bp_y(F), 1)]
    f0 = curve(lambda X, Y: Y - 1)
    out = include_unit_factor(F, cusp_basis, f0, 3)
    assert out == [([[1]], 0), (f0, 0), (B.bp_mul(F, f0, B.bp_y(F)), 1)]
    assert include_unit_factor(F, cusp_basis, [[1]], 2) == cusp_basis


def test_triangularize_node_union():
    half = F.inv(2)
    elems = [([[0, half], [half]], 1), ([[0, half], [P - half]], 1)]
    assert triangularize(F, elems, 2) == [([[1]], 0), ([[], [1]], 1)]
    assert triangularize(F, [([[P - 1], [1]], 0), ([[1]], 0)], 2) == [([[1]], 0), ([[], [1]], 0)]


def test_bohm_examples():
    b = bohm_integral_basis(P, curve(lambda X, Y: Y**2 - X**3)).canonical()
    assert b.elements == [([[1]], [1]), ([[], [1]], X1)]
    b = bohm_integral_basis(P, curve(lambda X, Y: Y**4 - X**3)).canonical()
    assert [len(den) - 1 for _, den in b.elements] == [0, 0, 1, 2]
    f = curve(lambda X, Y: Y**2 - X)
    assert bohm_integral_basis(P, f).report["factors"] == []
    node = curve(lambda X, Y: Y**2 - X**2 * (X + 1))
    assert bohm_integral_basis(P, node).canonical().elements[1] == ([[], [1]], X1)


def test_unit_factor_curve():
    f = curve(lambda X, Y: (Y - 1) * (Y**2 - X**3))
    b = bohm_integral_basis(P, f)
    from intbasis.vanhoeij import global_basis_vh

    assert compare_bases(b, global_basis_vh(P, f)) == ("equal", None)


@pytest.mark.parametrize("name", ["lines8", "quartic_pair", "mixed_n8", "y8_x10"])
def test_chain_lengths(name):
    f = corpus()[name]
    F_ = PrimeField(P)
    for phi, M in U.square_multiplicity_factors(F_, B.discriminant_y(F_, f)):
        _, stats = local_basis_bohm(P, f, phi, M)
        assert all(c <= ceil(log2(len(f) - 1)) + 1 for c in stats["chain_lengths"])
