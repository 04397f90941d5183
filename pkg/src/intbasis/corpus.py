"""Named test curves and benchmark families over F_p."""

from __future__ import annotations

import random

from . import bipoly as B
from .field import PrimeField

P_DEFAULT = 10007


def random_lines(F, n, seed):
    """Product of n lines y - a - b x; nodes at the pairwise intersections."""
    X, Y = B.generators(F)
    gen = random.Random(seed)
    while True:
        ab = [(gen.randrange(F.p), gen.randrange(1, F.p)) for _ in range(n)]
        xs = set()
        ok = True
        for i in range(n):
            for j in range(i):
                (a1, b1), (a2, b2) = ab[i], ab[j]
                if b1 == b2:
                    ok = False
                    break
                x0 = (a2 - a1) * pow(b1 - b2, -1, F.p) % F.p
                if x0 in xs:
                    ok = False
                xs.add(x0)
        if ok:
            break
    out = X ** 0
    for a, b in ab:
        out = out * (Y - a - b * X)
    return out


def corpus(p=P_DEFAULT):
    """Dict name -> bivariate coefficient lists (monic in y, squarefree)."""
    F = PrimeField(p)
    X, Y = B.generators(F)
    curves = {
        "cusp": Y**2 - X**3,
        "node": Y**2 - X**2 * (X + 1),
        "tacnode": Y**2 - X**4 * (X + 1),
        "two_cusps": Y**2 - X**3 * (X - 1) ** 3,
        "e6": Y**3 - X**4,
        "y4_x3": Y**4 - X**3,
        "conjugate_cusps": Y**2 - (X**2 + 1) ** 3,
        "inert_node": Y**2 - 5 * X**2,
        "inert_cusps": Y**4 - 5 * X**6,
        "deep_chain": (Y**2 - X**3) ** 2 - 4 * X**5 * Y - X**7,
        "tangent_triple": (Y - X**2) * (Y + X**2) * (Y - X**3),
        "quartic_conjugate": Y**4 - (X**2 + 1) ** 3,
        "cubic_irreducible_phi": Y**3 - (X**2 + 2) ** 2 * X,
        "ramified_cubic": Y**3 - X * (X**2 + 3),
        "quintic_two_points": Y**5 - X**2 * (X + 1) ** 5,
        "hyperelliptic_dx10": Y**2 - X**3 * (X - 1) ** 2 * (X + 1) ** 5,
        "y6_irregular": Y**6 - X**5 + X**7 * Y,
        "y7_two_points": Y**7 - X**4 * (X - 1) ** 3,
        "y8_x3": Y**8 - X**3,
        "y8_x10": Y**8 - X**10,
        "quartic_pair": (Y**4 - X**3) * (Y**4 - 2 * X**5) + X**10,
        "mixed_n8": (Y**2 - X**3) * (Y**3 - X**2 * (X + 1)) * (Y**3 - (X - 2) ** 4) + X**10,
        "lines8": random_lines(F, 8, 1),
    }
    return {k: v.as_lists() for k, v in curves.items()}


# ------------------------------------------------------------------ families


def family(name, size, p=P_DEFAULT):
    """One member of a parameterized family; returns (curve, D) with D = max(n, deg_x)."""
    F = PrimeField(p)
    X, Y = B.generators(F)
    if name == "y2-x2k+1":
        f = Y**2 - X ** (2 * size + 1)
    elif name == "y3-x3k+1":
        f = Y**3 - X ** (3 * size + 1)
    elif name == "yD-xD-1":
        f = Y**size - X ** (size - 1)
    elif name == "lines":
        f = random_lines(F, size, size)
    else:
        raise ValueError(f"unknown family {name!r}")
    f = f.as_lists()
    return f, max(len(f) - 1, B.bp_deg_x(f))


FAMILIES = ("y2-x2k+1", "y3-x3k+1", "yD-xD-1", "lines")
