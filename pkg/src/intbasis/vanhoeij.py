"""Local integral bases from linear systems on Puiseux tails, and CRT gluing.

The classical loop keeps every basis element in global form
N_d(x, y) / phi^e_d with N_d over F_p.  Each successful division solves for
constants a_i in F_p(alpha), replaces alpha by x and divides by phi (one
power at a time), so the numerators stay over F_p.  The series of each
b_d along every branch over the algebraic closure are stored and updated
by the same linear combinations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import basis as BS
from . import bipoly as B
from . import polymat as PM
from . import upoly as U
from .errors import InsufficientPrecision, InternalInvariantBroken
from .field import PrimeField
from .ops import COUNTER
from .puiseux import LocalExpansions


@dataclass
class LocalBasisVH:
    phi: list
    M_phi: int
    field: object
    alpha: object
    numerators: list
    exponents: list
    systems: int = 0
    equations: int = 0
    variant: str = "classical"
    extra: dict = field(default_factory=dict)

    def elements(self, F):
        return [(num, U.power(F, self.phi, e)) for num, e in zip(self.numerators, self.exponents)]


# ------------------------------------------------------------------ branches


class _Branches:
    """T-parametrizations x' = gamma T^e, y = Y(T) of all branches above alpha."""

    def __init__(self, loc, xprec):
        L = loc.field
        self.L = L
        self.loc = loc
        self.xprec = xprec
        self.params = loc.kbar_params(xprec)
        phiL = BS.embed_poly(L, loc.phi)
        u = U.taylor_shift(L, phiL, loc.alpha)[1:]
        self.uinv = []
        self.ginv = []
        for _, e, gamma, _ in self.params:
            P = e * xprec
            us = _eval_x(L, u, gamma, e, P)
            self.uinv.append(U.series_inverse(L, us, P))
            self.ginv.append(L.inv(gamma))

    def poly_series(self, b, a):
        """a(alpha + x') along branch b, a over F_p."""
        L = self.L
        _, e, gamma, _ = self.params[b]
        sh = U.taylor_shift(L, BS.embed_poly(L, a), self.loc.alpha)
        return _eval_x(L, sh, gamma, e, e * self.xprec)


def _eval_x(L, a, gamma, e, prec):
    out = [L.zero] * min(prec, (len(a) - 1) * e + 1 if a else 0)
    g = L.one
    for i, c in enumerate(a):
        if i * e >= prec:
            break
        out[i * e] = L.mul(c, g)
        g = L.mul(g, gamma)
    return U.trim(L, out)


def _coef(L, s, j):
    return s[j] if j < len(s) else L.zero


# ------------------------------------------------------------- linear systems


def build_system(L, cand, prev, branches, divisor_power=1):
    """Equations saying (cand + sum a_i prev_i) / x'^divisor_power is integral.

    cand and prev_i are per-branch lists of (series, precision).  One equation
    per coefficient of T^j with j < e_b * divisor_power on branch b."""
    rows, rhs = [], []
    for b, (_, e, _, _) in enumerate(branches.params):
        need = e * divisor_power
        if cand[b][1] < need or any(p[b][1] < need for p in prev):
            raise InsufficientPrecision("series too short to write the equations")
        for j in range(need):
            rows.append([_coef(L, p[b][0], j) for p in prev])
            rhs.append(L.neg(_coef(L, cand[b][0], j)))
    return rows, rhs


def solve_update(L, system, nvars):
    """Unique solution of the system, or None when it is inconsistent."""
    rows, rhs = system
    if not rows:
        # no tail terms at all: the division is unconstrained
        return [L.zero] * nvars
    ok, x, rank = PM.solve_field_system(L, rows, rhs, nvars)
    if not ok:
        return None
    if rank != nvars:
        raise InternalInvariantBroken("solution of the van Hoeij system is not unique")
    return x


# --------------------------------------------------------------- main loop


def _precision(loc):
    return int(loc.integrality_exponent()) + 2


def local_basis_vh(p, f, phi, M_phi, loc=None, xprec=None):
    """Classical loop: divide b_d by phi as long as a linear system is solvable."""
    F = PrimeField(p)
    loc = loc or LocalExpansions(p, f, phi, delta=M_phi)
    xprec = xprec or _precision(loc)
    while True:
        try:
            with COUNTER.phase("vanhoeij"):
                return _local_vh(F, f, phi, M_phi, loc, xprec)
        except InsufficientPrecision:
            xprec *= 2


def _local_vh(F, f, phi, M_phi, loc, xprec):
    L = loc.field
    n = len(f) - 1
    br = _Branches(loc, xprec)
    nb = len(br.params)
    nums = [B.bp_const(F, [F.one])]
    exps = [0]
    sers = [[([L.one], e * xprec) for _, e, _, _ in br.params]]
    systems = equations = 0
    for d in range(1, n):
        num = B.bp_shift_y(F, nums[-1], 1)
        e_d = exps[-1]
        ser = [(U.mul_trunc(L, s, br.params[b][3], pr), pr) for b, (s, pr) in enumerate(sers[-1])]
        while True:
            system = build_system(L, ser, sers, br)
            systems += 1
            equations += len(system[0])
            a = solve_update(L, system, d)
            if a is None:
                break
            polys = [BS.residue_to_poly(F, L, ai, loc.alpha, loc.k) for ai in a]
            for i, ai in enumerate(polys):
                if ai:
                    mult = U.mul(F, ai, U.power(F, phi, e_d - exps[i]))
                    num = B.bp_add(F, num, B.bp_mul_poly(F, nums[i], mult))
            new = []
            for b in range(nb):
                _, e, _, _ = br.params[b]
                s, pr = ser[b]
                for i, ai in enumerate(polys):
                    if ai:
                        si, pi = sers[i][b]
                        pr = min(pr, pi)
                        s = U.add(L, s, U.mul_trunc(L, br.poly_series(b, ai), si, pr))
                s = U.truncate(L, s, pr)
                if any(not L.is_zero(c) for c in s[:e]):
                    raise InternalInvariantBroken("division by phi left a pole")
                s = [L.mul(c, br.ginv[b]) for c in s[e:]]
                pr -= e
                new.append((U.mul_trunc(L, s, br.uinv[b], pr), pr))
            ser = new
            e_d += 1
            if e_d > M_phi:
                raise InternalInvariantBroken("exponent exceeds the multiplicity of phi")
        nums.append(num)
        exps.append(e_d)
        sers.append(ser)
    nums = [BS.reduce_numerator(F, nm, U.power(F, phi, e)) for nm, e in zip(nums, exps)]
    bound = n - 1 + M_phi // 2
    if systems > bound:
        raise InternalInvariantBroken(f"{systems} systems exceed the bound {bound}")
    return LocalBasisVH(list(phi), M_phi, L, loc.alpha, nums, exps, systems, equations)


# ------------------------------------------------------------ probe systems


def _probe(L, br, k, v, ypows):
    """Monic p = y^k + sum_{i<k, t<v} c_it x'^t y^i with p / x'^v integral.

    Returns the local numerator over F_p(alpha) as a bivariate list in
    (x', y), or None.  Unknowns are ordered (i, t)."""
    rows, rhs = [], []
    for b, (_, e, gamma, _) in enumerate(br.params):
        need = e * v
        if need > e * br.xprec:
            raise InsufficientPrecision("probe needs more terms")
        cols = []
        for i in range(k):
            for t in range(v):
                g = L.pow(gamma, t)
                s = ypows[b][i]
                cols.append([L.mul(g, _coef(L, s, j - e * t)) if j >= e * t else L.zero for j in range(need)])
        target = ypows[b][k]
        for j in range(need):
            rows.append([c[j] for c in cols])
            rhs.append(L.neg(_coef(L, target, j)))
    ok, x, _ = PM.solve_field_system(L, rows, rhs, k * v)
    if not ok:
        return None, len(rows)
    num = []
    for i in range(k):
        num.append(U.trim(L, x[i * v:(i + 1) * v]))
    num.append([L.one])
    return num, len(rows)


def _ypowers(L, br, n):
    out = []
    for _, e, _, Y in br.params:
        P = e * br.xprec
        pw = [[L.one]]
        for _ in range(n):
            pw.append(U.mul_trunc(L, pw[-1], Y, P))
        out.append(pw)
    return out


def local_basis_vh_binary(p, f, phi, M_phi, loc=None, xprec=None):
    """Locate the jump indices of the exponent sequence by binary search.

    For every target exponent v the smallest k with e_k >= v is found by
    probing whether a degree-k numerator over phi^v is integral; the
    exponents are non-decreasing, so the probes are monotone in k."""
    F = PrimeField(p)
    loc = loc or LocalExpansions(p, f, phi, delta=M_phi)
    xprec = xprec or _precision(loc)
    while True:
        try:
            with COUNTER.phase("vanhoeij"):
                return _local_vh_binary(F, f, phi, M_phi, loc, xprec)
        except InsufficientPrecision:
            xprec *= 2


def _local_vh_binary(F, f, phi, M_phi, loc, xprec):
    L = loc.field
    n = len(f) - 1
    br = _Branches(loc, xprec)
    ypows = _ypowers(L, br, n)
    cache = {}
    stats = {"systems": 0, "equations": 0}

    def probe(k, v):
        if (k, v) not in cache:
            num, neq = _probe(L, br, k, v, ypows)
            stats["systems"] += 1
            stats["equations"] += neq
            cache[(k, v)] = num
        return cache[(k, v)]

    jumps = {}  # k -> largest v with e_k >= v found at a jump index
    lo = 1
    v = 1
    while n > 1 and 2 * v <= M_phi:
        if probe(n - 1, v) is None:
            break
        a, b = lo, n - 1
        while a < b:
            mid = (a + b) // 2
            if probe(mid, v) is not None:
                b = mid
            else:
                a = mid + 1
        jumps[a] = v
        lo = a
        v += 1
    nums, exps = [B.bp_const(F, [F.one])], [0]
    cur_k, cur_v = 0, 0
    for d in range(1, n):
        if d in jumps:
            cur_k, cur_v = d, jumps[d]
        if cur_v == 0:
            nums.append(B.bp_ypow(F, d))
            exps.append(0)
            continue
        if d == cur_k:
            local = cache[(d, cur_v)]
            nums.append(BS.lift_local_element(F, L, loc.alpha, phi, local, cur_v))
        else:
            nums.append(B.bp_shift_y(F, nums[cur_k], d - cur_k))
        exps.append(cur_v)
    nums = [BS.reduce_numerator(F, nm, U.power(F, phi, e)) for nm, e in zip(nums, exps)]
    return LocalBasisVH(list(phi), M_phi, L, loc.alpha, nums, exps, stats["systems"], stats["equations"], "binary")


def local_basis_vh_jump(p, f, phi, M_phi, step=2, loc=None, xprec=None):
    """Diagnostic: try to raise e_d by `step` at once before single steps.

    Same module as the classical loop; only the system sizes and counts
    differ.  Used by the benchmark harness, never by default."""
    F = PrimeField(p)
    loc = loc or LocalExpansions(p, f, phi, delta=M_phi)
    xprec = xprec or _precision(loc) + step
    while True:
        try:
            return _local_vh_jump(F, f, phi, M_phi, step, loc, xprec)
        except InsufficientPrecision:
            xprec *= 2


def _local_vh_jump(F, f, phi, M_phi, step, loc, xprec):
    L = loc.field
    n = len(f) - 1
    br = _Branches(loc, xprec)
    ypows = _ypowers(L, br, n)
    systems = equations = 0
    nums, exps = [B.bp_const(F, [F.one])], [0]
    for d in range(1, n):
        v = exps[-1]
        best = None
        while True:
            moved = False
            for s in (step, 1) if step > 1 else (1,):
                if v + s > M_phi:
                    continue
                num, neq = _probe(L, br, d, v + s, ypows)
                systems += 1
                equations += neq
                if num is not None:
                    v += s
                    best = num
                    moved = True
                    break
            if not moved:
                break
        if best is None:
            nums.append(B.bp_shift_y(F, nums[-1], 1))
        else:
            nums.append(BS.lift_local_element(F, L, loc.alpha, phi, best, v))
        exps.append(v)
    nums = [BS.reduce_numerator(F, nm, U.power(F, phi, e)) for nm, e in zip(nums, exps)]
    return LocalBasisVH(list(phi), M_phi, L, loc.alpha, nums, exps, systems, equations, "jump")


# ------------------------------------------------------------------- global


def global_basis_vh(p, f, binary_threshold=3, variant=None):
    """Integral basis of F_p[x, y]/(f) over F_p[x].

    variant None picks the binary search when M(phi) <= binary_threshold;
    'classical', 'binary' or 'jump' force one strategy for every factor."""
    F, D, facs = BS.validate_curve(p, f)
    locals_, report = {}, {"factors": []}
    for phi, M in facs:
        mode = variant or ("binary" if M <= binary_threshold else "classical")
        if mode == "binary":
            lb = local_basis_vh_binary(p, f, phi, M)
        elif mode == "jump":
            lb = local_basis_vh_jump(p, f, phi, M)
        else:
            lb = local_basis_vh(p, f, phi, M)
        locals_[tuple(phi)] = list(zip(lb.numerators, lb.exponents))
        report["factors"].append({"phi": list(phi), "M": M, "variant": lb.variant,
                                  "systems": lb.systems, "equations": lb.equations,
                                  "exponents": lb.exponents})
    basis = BS.assemble_global(p, f, locals_, "vanhoeij")
    basis.report = report
    return basis
