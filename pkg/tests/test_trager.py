from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from intbasis import bipoly as B
from intbasis import polymat as PM
from intbasis import upoly as U
from intbasis.basis import IntegralBasis, canonical_elements, compare_bases
from intbasis.corpus import corpus
from intbasis.field import PrimeField
from intbasis.puiseux import LocalExpansions
from intbasis.trager import (
    OrderBasis,
    _normalize,
    idealizer,
    idealizer_fractions,
    power_order,
    q_trace_radical,
    trace_matrix,
    trager_integral_basis,
)
from intbasis.vanhoeij import global_basis_vh
from intbasis.verify import discriminant_identity

from conftest import curve

P = 10007
F = PrimeField(P)
X1 = [0, 1]
CUSP = curve(lambda X, Y: Y**2 - X**3)


def _order(f):
    return power_order(F, f, B.discriminant_y(F, f))


def test_trace_matrix_examples():
    assert trace_matrix(F, CUSP, _order(CUSP)) == [[[2], []], [[], [0, 0, 0, 2]]]
    f = curve(lambda X, Y: Y**2 - X)
    assert trace_matrix(F, f, _order(f)) == [[[2], []], [[], [0, 2]]]
    f = curve(lambda X, Y: Y - X)
    assert trace_matrix(F, f, _order(f)) == [[[1]]]


def test_q_trace_radical_examples():
    M = trace_matrix(F, CUSP, _order(CUSP))
    assert q_trace_radical(F, M, X1) == [[X1, []], [[], [1]]]
    assert q_trace_radical(F, M, [1]) == PM.identity(F, 2)


def _module(f, rows, den):
    n = len(f) - 1
    return canonical_elements(F, [([list(c) for c in r], den) for r in rows], n)


@pytest.mark.parametrize("f", [CUSP, curve(lambda X, Y: Y**2 - X**2)])
def test_idealizer_of_maximal_ideal(f):
    V = _order(f)
    J = q_trace_radical(F, trace_matrix(F, f, V), X1)
    assert J == [[X1, []], [[], [1]]]
    expect = [([[1]], [1]), ([[], [1]], X1)]
    assert _module(f, *idealizer(F, f, J, V, X1)) == expect
    assert _module(f, *idealizer_fractions(F, f, J, V)) == expect


def test_idealizer_of_whole_order_is_trivial():
    V = _order(CUSP)
    rows, den = idealizer(F, CUSP, PM.identity(F, 2), V, X1)
    assert _module(CUSP, rows, den) == [([[1]], [1]), ([[], [1]], [1])]


def test_trager_examples():
    b = trager_integral_basis(P, CUSP)
    assert b.report["iterations"] == 1
    assert b.canonical().elements == [([[1]], [1]), ([[], [1]], X1)]
    smooth = trager_integral_basis(P, curve(lambda X, Y: Y**2 - X))
    assert smooth.report["iterations"] == 0 and smooth.report["rounds"] == 0
    b = trager_integral_basis(P, curve(lambda X, Y: Y**2 - X**5))
    assert b.report["iterations"] == 2
    # the first enlargement has index x, the second another x
    assert [r["det"] for r in b.report["history"]] == [X1, X1]
    assert b.canonical().elements[1] == ([[], [1]], [0, 0, 1])


def _accounting_ok(b, f):
    D = B.discriminant_y(F, f)
    facs = U.square_multiplicity_factors(F, D)
    hist = b.report["history"]
    cur = D
    for r in hist:
        if r["disc_before"] != cur:
            return False
        if U.mul(F, r["disc_after"], U.mul(F, r["det"], r["det"])) != r["disc_before"]:
            return False
        cur = r["disc_after"]
    if hist and len(hist[-1]["det"]) != 1 and U.square_multiplicity_factors(F, cur):
        return False
    bound = max((M for _, M in facs), default=0) // 2
    if b.report["iterations"] > bound:
        return False
    for phi, M in facs:
        if U.multiplicity(F, cur, phi) != LocalExpansions(P, f, phi, delta=M).tame_defect():
            return False
    return discriminant_identity(b)["pass"]


@pytest.mark.parametrize("name", ["cusp", "tacnode", "two_cusps", "e6", "conjugate_cusps", "deep_chain",
                                  "y6_irregular", "quintic_two_points"])
def test_discriminant_accounting(name):
    f = corpus()[name]
    assert _accounting_ok(trager_integral_basis(P, f), f)


@given(st.integers(0, 2**32))
def test_trager_matches_vanhoeij_random(seed):
    gen = random.Random(seed)
    X, Y = B.generators(F)
    n = gen.randint(2, 3)
    f = Y**n
    for j in range(n):
        f = f + gen.randrange(1, P) * X ** gen.randint(1, 5) * Y**j
    f = f.as_lists()
    if not B.discriminant_y(F, f):
        return
    t = trager_integral_basis(P, f)
    assert compare_bases(t, global_basis_vh(P, f)) == ("equal", None)
    assert _accounting_ok(t, f)


def test_normalize_keeps_module():
    rows = [[X1, []], [[], [1]]]
    out, den = _normalize(F, rows, X1, 2)
    assert _module(CUSP, out, den) == _module(CUSP, rows, X1)
