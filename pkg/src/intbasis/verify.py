"""Independent checks of an integral basis.

* integrality: the characteristic polynomial of every element has
  coefficients in F_p[x];
* maximality: for each phi with phi^2 | Disc(f), the index exponent
  sum_d e_d(phi) must satisfy v_phi(Disc f) - 2 sum_d e_d = sum (e_i - 1) f_i
  over the rational Puiseux expansions above phi (tame different);
* discriminant identity: det(tr(b_i b_j)) * prod den_d^2 = Disc(f) up to a unit.
"""

from __future__ import annotations

from . import bipoly as B
from . import polymat as PM
from . import upoly as U
from .basis import compare_bases, elements_to_rows
from .puiseux import LocalExpansions

__all__ = ["verify_integrality", "verify_maximality", "discriminant_identity", "compare_bases", "verify_all"]


def verify_integrality(basis):
    F = basis.field
    flags = [B.is_integral_element(F, num, den, basis.f) for num, den in basis.elements]
    return {"pass": all(flags), "elements": flags}


def verify_maximality(basis, factors=None):
    """Tame-different certificate for every square factor of Disc(f)."""
    F = basis.field
    f = basis.f
    D = B.discriminant_y(F, f)
    factors = factors if factors is not None else U.square_multiplicity_factors(F, D)
    per = []
    ok = basis.is_triangular_monic()
    for phi, M in factors:
        exps = [U.multiplicity(F, den, phi) for _, den in basis.elements]
        lhs = M - 2 * sum(exps)
        rhs = LocalExpansions(basis.p, f, phi, delta=M).tame_defect()
        good = lhs == rhs and all(e <= M for e in exps) and exps == sorted(exps)
        per.append({"phi": list(phi), "M": M, "exponents": exps, "lhs": lhs, "tame": rhs, "pass": good})
        ok = ok and good
    return {"pass": ok, "factors": per}


def discriminant_identity(basis):
    """det of the trace form times the squared denominators equals Disc(f) (associates)."""
    F = basis.field
    f = basis.f
    n = basis.n
    D, rows = elements_to_rows(F, basis.elements, n)
    R = [list(reversed(r)) for r in rows]
    traces = B.power_traces(F, f, 2 * n - 1)
    T = [[traces[i + j] for j in range(n)] for i in range(n)]
    G = PM.mat_mul(F, PM.mat_mul(F, R, T), PM.transpose(R))
    D2 = U.mul(F, D, D)
    for row in G:
        for k, e in enumerate(row):
            q, r = U.divmod_(F, e, D2)
            if r:
                return {"pass": False, "reason": "non-polynomial trace"}
            row[k] = q
    det = PM.determinant(F, G)
    dens = [F.one]
    for _, den in basis.elements:
        dens = U.mul(F, dens, den)
    lhs = U.mul(F, det, U.mul(F, dens, dens))
    disc = B.discriminant_y(F, f)
    ok = bool(lhs) and U.monic(F, lhs) == U.monic(F, disc)
    return {"pass": ok}


def verify_all(basis, level="full"):
    if level == "none":
        return {"pass": True}
    out = {"integrality": verify_integrality(basis)}
    if level == "full":
        out["maximality"] = verify_maximality(basis)
        out["discriminant"] = discriminant_identity(basis)
    out["pass"] = all(v["pass"] for v in out.values())
    return out
