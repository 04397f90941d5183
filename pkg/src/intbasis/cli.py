"""Command line interface.

Input is JSON {"p": prime, "f": [[i, j, c], ...]} meaning sum c x^i y^j (a list
of such objects is accepted too).  Output is the canonical basis as JSON.
Exit codes: 0 ok, 2 verification failure, 3 input error, 4 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bipoly as B
from .basis import compare_bases, validate_curve
from .bench import ALGORITHMS, benchmark, compute
from .corpus import FAMILIES
from .errors import InputError, IntBasisError, ParseError
from .field import PrimeField, is_prime
from .verify import verify_all

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_INTERNAL = 0, 2, 3, 4


def parse_curve(obj):
    """Validate one curve object; returns (p, f as bivariate lists)."""
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as ex:
            raise ParseError(f"invalid JSON: {ex}") from ex
    if not isinstance(obj, dict) or "p" not in obj or "f" not in obj:
        raise ParseError('expected an object with keys "p" and "f"')
    p, terms = obj["p"], obj["f"]
    if not isinstance(p, int) or isinstance(p, bool) or p < 2:
        raise ParseError('"p" must be an integer >= 2')
    if not is_prime(p):
        from .errors import NotPrime

        raise NotPrime(f"{p} is not prime")
    if not isinstance(terms, list):
        raise ParseError('"f" must be a list of [i, j, c] triples')
    triples = []
    for t in terms:
        if not (isinstance(t, list) and len(t) == 3 and all(isinstance(v, int) and not isinstance(v, bool) for v in t)):
            raise ParseError(f"bad term {t!r}")
        if t[0] < 0 or t[1] < 0:
            raise ParseError(f"negative exponent in {t!r}")
        triples.append(tuple(t))
    f = B.bp_from_terms(PrimeField(p), triples)
    validate_curve(p, f)
    return p, f


def _strip_times(rep):
    rep = dict(rep)
    rep.pop("wall_time", None)
    rep["phases"] = {k: {kk: vv for kk, vv in v.items() if kk != "time"} for k, v in rep.get("phases", {}).items()}
    return rep


def run(algorithm, p, f, verify="full", binary_threshold=3, seed=0, diagnostics=False):
    """Compute, verify and compare; returns (output dict, exit code)."""
    algs = ALGORITHMS if algorithm == "all" else (algorithm,)
    bases, reports = {}, {}
    for alg in algs:
        basis, rep = compute(alg, p, f, binary_threshold=binary_threshold, seed=seed)
        bases[alg] = basis
        rep["details"] = basis.report
        reports[alg] = rep if diagnostics else _strip_times(rep)
    first = bases[algs[0]]
    canonical = first.canonical()
    out = canonical.to_json()
    code = EXIT_OK
    report = {"algorithm": algorithm, "seed": seed, "ops": reports}
    if len(algs) > 1:
        cmp = {}
        for alg in algs[1:]:
            status, witness = compare_bases(first, bases[alg])
            cmp[f"{algs[0]}/{alg}"] = {"status": status, "witness": witness}
            if status != "equal":
                code = EXIT_VERIFY
        report["comparison"] = cmp
    if verify != "none":
        ver = {alg: verify_all(b, verify) for alg, b in bases.items()}
        report["verification"] = {alg: {"pass": v["pass"]} | {k: v[k]["pass"] for k in v if k != "pass"} for alg, v in ver.items()}
        if not all(v["pass"] for v in ver.values()):
            code = EXIT_VERIFY
    if diagnostics:
        report["diagnostics"] = _diagnostics(p, f, seed)
    out["report"] = report
    return out, code


def _diagnostics(p, f, seed):
    """Larger-jump van Hoeij loop and the mod-Q Trager idealizer, for research only."""
    from . import trager
    from .basis import compare_bases as cmp

    diag = {}
    classical, _ = compute("vanhoeij-classical", p, f, seed=seed)
    jump, _ = compute("vanhoeij-jump", p, f, seed=seed)
    diag["jump"] = {
        "classical_systems": sum(x["systems"] for x in classical.report["factors"]),
        "classical_equations": sum(x["equations"] for x in classical.report["factors"]),
        "jump_systems": sum(x["systems"] for x in jump.report["factors"]),
        "jump_equations": sum(x["equations"] for x in jump.report["factors"]),
        "same_module": cmp(classical, jump)[0] == "equal",
    }
    try:
        exp = trager.trager_integral_basis(p, f, modulus="Q")
        safe = trager.trager_integral_basis(p, f)
        diag["trager_mod_q"] = {"same_module": cmp(exp, safe)[0] == "equal"}
    except IntBasisError as ex:
        diag["trager_mod_q"] = {"error": type(ex).__name__}
    return diag


def build_parser():
    ap = argparse.ArgumentParser(prog="intbasis", description="Integral bases of plane curves over F_p.")
    ap.add_argument("--algorithm", choices=ALGORITHMS + ("all",), default="all")
    ap.add_argument("--input", default="-", help="JSON file ('-' for stdin)")
    ap.add_argument("--output", default="-", help="output file ('-' for stdout)")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--verify", choices=("none", "integrality", "full"), default="full")
    ap.add_argument("--vh-binary-threshold", type=int, default=3)
    ap.add_argument("--diagnostics", action="store_true")
    ap.add_argument("--bench-family", choices=FAMILIES)
    ap.add_argument("--bench-sizes", default="1,2,3,4,5,6")
    return ap


def _emit(obj, path):
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.bench_family:
            sizes = [int(s) for s in args.bench_sizes.split(",") if s.strip()]
            algs = ALGORITHMS if args.algorithm == "all" else (args.algorithm,)
            _emit(benchmark(args.bench_family, sizes, algs, seed=args.seed), args.output)
            return EXIT_OK
        try:
            text = sys.stdin.read() if args.input == "-" else open(args.input).read()
        except OSError as ex:
            raise ParseError(str(ex)) from ex
        try:
            data = json.loads(text)
        except json.JSONDecodeError as ex:
            raise ParseError(f"invalid JSON: {ex}") from ex
        many = isinstance(data, list)
        curves = [parse_curve(c) for c in (data if many else [data])]
        outs, code = [], EXIT_OK
        for p, f in curves:
            out, c = run(args.algorithm, p, f, args.verify, args.vh_binary_threshold, args.seed, args.diagnostics)
            outs.append(out)
            code = max(code, c)
        _emit(outs if many else outs[0], args.output)
        return code
    except InputError as ex:
        _emit({"error": type(ex).__name__, "message": str(ex)}, "-")
        return EXIT_INPUT
    except IntBasisError as ex:
        _emit({"error": type(ex).__name__, "message": str(ex)}, "-")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
