from __future__ import annotations

from intbasis.basis import IntegralBasis, power_basis
from intbasis.field import PrimeField
from intbasis.verify import discriminant_identity, verify_all, verify_integrality, verify_maximality

from conftest import curve

P = 10007
F = PrimeField(P)
CUSP = curve(lambda X, Y: Y**2 - X**3)
GOOD = [([[1]], [1]), ([[], [1]], [0, 1])]


def test_integrality_examples():
    assert verify_integrality(IntegralBasis(P, CUSP, GOOD))["pass"]
    assert not verify_integrality(IntegralBasis(P, curve(lambda X, Y: Y**2 - X), GOOD))["pass"]
    assert verify_integrality(power_basis(P, curve(lambda X, Y: Y**5 - X**7)))["pass"]


def test_maximality_examples():
    rep = verify_maximality(IntegralBasis(P, CUSP, GOOD))
    assert rep["pass"]
    (fac,) = rep["factors"]
    assert (fac["M"], fac["lhs"], fac["tame"]) == (3, 1, 1)
    rep = verify_maximality(power_basis(P, CUSP))
    assert not rep["pass"] and rep["factors"][0]["lhs"] == 3
    assert verify_maximality(power_basis(P, curve(lambda X, Y: Y**2 - X)))["pass"]


def test_discriminant_identity():
    assert discriminant_identity(IntegralBasis(P, CUSP, GOOD))["pass"]
    assert discriminant_identity(power_basis(P, CUSP))["pass"]


def test_verify_all_levels():
    b = power_basis(P, CUSP)
    assert verify_all(b, "none") == {"pass": True}
    assert verify_all(b, "integrality")["pass"]
    assert not verify_all(b, "full")["pass"]
