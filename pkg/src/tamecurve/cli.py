"""Command-line front end: ``tamecurve <command> <spec> [flags]``.

Exit codes: 0 on success, 1 on a computation error, 2 on a spec error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Callable

from . import __version__
from .curve import DEFAULT_MAX_DEGREE, DEFAULT_SEARCH_BOUND, Curve, classify_commutative, enumerate_points, has_efficient_tubular_shift
from .errors import SpecParseError, TameCurveError, UnsupportedShape
from .ladder import verify_ladder
from .orbit import SkewPolyAlgebra, function_field_presentation, kronecker_function_field, skew_function_field
from .reps import TwoTwo, defect_rank, simple_regular
from .specfile import COMMANDS, CurveSpec, load_spec
from .symmetry import coxeter_tau_minus, compare_tau_with_shift, ghost_group, preserves_defect, skew_ghost_group

ENV_MAX_DEGREE = "TAMECURVE_MAX_DEGREE"
CENTRE_DEGREES = 4
LADDER_DEPTH = 6
COXETER_DEPTH = 4

_SUPERSCRIPTS = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def pretty(text: str) -> str:
    """Render ``U^2`` as ``U²`` for human-readable output."""
    out, i = [], 0
    while i < len(text):
        if text[i] == "^":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            if j > i + 1:
                out.append(text[i + 1 : j].translate(_SUPERSCRIPTS))
                i = j
                continue
        out.append(text[i])
        i += 1
    return "".join(out)


class Context:
    def __init__(self, spec: CurveSpec, args: argparse.Namespace):
        self.spec = spec
        self.max_degree = _max_degree(spec, args.max_degree)
        self.seed = args.seed if args.seed is not None else spec.options.get("seed", 0)
        self.threads = max(1, args.threads)
        self.search_bound = spec.options.get("search_bound", DEFAULT_SEARCH_BOUND)
        self.dump_matrices = getattr(args, "dump_matrices", None)
        self.curve = Curve(spec.bimodule, self.max_degree)

    @property
    def field(self):
        return self.spec.base_field

    def two_two(self) -> TwoTwo | None:
        """The (2,2)-bimodule, or None for (1,4); simple ones have no implemented orbit algebra."""
        bim = self.spec.bimodule
        if not isinstance(bim, TwoTwo):
            return None
        if bim.simple:
            raise UnsupportedShape("no orbit algebra is implemented for simple (2,2)-bimodules")
        return bim


def _max_degree(spec: CurveSpec, flag: int | None) -> int:
    if flag is not None:
        return flag
    env = os.environ.get(ENV_MAX_DEGREE)
    if env:
        try:
            return int(env)
        except ValueError:
            raise SpecParseError(f"{ENV_MAX_DEGREE}={env!r} is not an integer", field=ENV_MAX_DEGREE) from None
    return spec.options.get("max_degree", DEFAULT_MAX_DEGREE)


# -- commands: each returns (result dict, text lines, ok) ------------------------------


def cmd_classify(ctx: Context):
    d = classify_commutative(ctx.spec.bimodule)
    res = d.to_json()
    lines = [f"{d.verdict}; k(𝕏) = {pretty(d.function_field.presentation)}"]
    if d.orbit_algebra:
        lines.append(f"orbit algebra: {pretty(d.orbit_algebra)}")
    lines.append(f"centre of k(𝕏): {pretty(d.function_field.centre)}")
    return res, lines, True


def cmd_points(ctx: Context):
    shift = has_efficient_tubular_shift(ctx.curve, ctx.search_bound, ctx.seed)
    res = {"max_degree": ctx.max_degree, "efficient_shift": shift.to_json(), "points": [], "note": ""}
    lines = []
    try:
        pts = enumerate_points(ctx.curve, ctx.max_degree, ctx.seed, ctx.threads)
    except TameCurveError as exc:
        if not isinstance(exc, UnsupportedShape) and ctx.field.is_finite:
            raise
        res["note"] = f"no point enumeration: {exc}"
        lines.append(res["note"])
    else:
        res["points"] = [p.to_json(ctx.field) for p in pts]
        rows = [("generator", "deg", "f", "e", "End(S)")]
        rows += [(pretty(p["generator"]), str(p["degree"]), str(p["f"]), str(p["e"]), pretty(p["end"])) for p in res["points"]]
        widths = [max(len(r[i]) for r in rows) for i in range(4)]
        for r in rows:
            lines.append("  ".join(r[i].ljust(widths[i]) for i in range(4)) + "  " + r[4])
    extra = f" via {pretty(shift.witness)}" if shift.witness else ""
    lines.append(f"efficient tubular shift: {shift.verdict}{extra}")
    return res, lines, True


def cmd_algebra(ctx: Context):
    bim = ctx.two_two()
    if bim is not None:
        if bim.degree == 1:
            res = {"kind": "commutative_polynomial", "generators": ["X", "Y"], "relations": [], "centre": "k[X,Y]"}
        else:
            if not ctx.field.is_finite:
                raise UnsupportedShape("skew polynomial rings are implemented over finite fields")
            res = SkewPolyAlgebra.over(ctx.field, bim.degree).to_json()
        res["dims"] = [d + 1 for d in range(CENTRE_DEGREES + 1)]
        res["centre_dims"] = []
        lines = [f"{res['kind']}: relations {', '.join(res['relations']) or 'none'}; centre {pretty(res['centre'])}"]
        return res, lines, True
    pres = ctx.curve.presentation
    res = pres.to_json()
    res["dims"] = [pres.dim_degree(d) for d in range(CENTRE_DEGREES + 1)]
    res["centre_dims"] = [len(pres.centre_basis(d)) for d in range(CENTRE_DEGREES + 1)]
    lines = [f"R = k<{','.join(res['generators'])}>/({', '.join(pretty(r) for r in res['relations'])})"]
    lines.append("dim R_t (t = 0..4): " + " ".join(map(str, res["dims"])))
    lines.append("dim Z(R)_t (t = 0..4): " + " ".join(map(str, res["centre_dims"])))
    return res, lines, True


def cmd_ghosts(ctx: Context):
    bim = ctx.two_two()
    if bim is not None:
        if bim.degree == 1:
            res = {"order": 1, "structure": "trivial", "generators": [], "representatives": ["identity"],
                   "aut_order": 0, "aut0_order": 0, "inner_order": 0, "prime_test_set": [],
                   "curve_aut_order": 0, "curve_aut_structure": "", "note": "commutative orbit algebra"}
            return res, ["ghost group: trivial (commutative orbit algebra)"], True
        if not ctx.field.is_finite:
            raise UnsupportedShape("skew polynomial rings are implemented over finite fields")
        report = skew_ghost_group(SkewPolyAlgebra.over(ctx.field, bim.degree))
    else:
        report = ghost_group(ctx.curve.presentation)
    res = report.to_json()
    res["note"] = ""
    lines = [
        f"ghost group: {report.structure} (order {report.order})",
        f"generators: {', '.join(report.generators) or 'none'}",
        f"|Aut(R)| = {report.aut_order}, |Aut0(R)| = {report.aut0_order}, |Inn(R)| = {report.inner_order}",
        f"Aut(𝕏): {report.curve_aut_structure} (order {report.curve_aut_order})",
    ]
    return res, lines, True


def cmd_ladder_verify(ctx: Context):
    ladder = ctx.curve.ladder
    rows = verify_ladder(ladder, LADDER_DEPTH)
    ok = all(r.ok for r in rows)
    res = {"variant": ladder.variant.describe(), "ok": ok, "rows": [r.to_json() for r in rows]}
    lines = [f"variant: {ladder.variant.kind}"]
    for r in rows:
        rel = "ok" if all(v for k, v in r.relations.items() if "alternative" not in k) else "FAIL"
        lines.append(
            f"n={r.n}: relations {rel}, dim Hom(P_n,P_n+1)={r.hom_dim}, dim End={r.end_dim}, "
            f"dim Hom(S_x,P_n)={r.hom_from_Sx}, exact={'yes' if r.exact else 'no'}"
        )
    lines.append("all checks pass" if ok else "SOME CHECKS FAILED")
    if ctx.dump_matrices is not None:
        res["dump"] = ladder.dump(ctx.dump_matrices)
        lines.append(json.dumps(res["dump"], ensure_ascii=False))
    return res, lines, ok


def cmd_ar_translate(ctx: Context):
    ladder = ctx.curve.ladder
    chain = []
    for n in range(1, COXETER_DEPTH + 1):
        P = ladder.P(n)
        image = coxeter_tau_minus(P)
        chain.append({
            "n": n,
            "dim": list(P.dimension_vector),
            "tau_minus_dim": list(image.dimension_vector),
            "matches_next": image.dimension_vector == ladder.P(n + 1).dimension_vector,
            "defect_preserved": preserves_defect(P),
        })
    Sx = simple_regular(ladder.variant.algebra.x, ladder.variant.bimodule)
    cmp = compare_tau_with_shift(ladder, ctx.seed)
    res = {
        "projectives": chain,
        "simple_regular": {"dim": list(Sx.dimension_vector), "tau_minus_dim": list(coxeter_tau_minus(Sx).dimension_vector),
                           "defect_rank": list(defect_rank(Sx))},
        "comparison": cmp.to_json(),
    }
    lines = [f"tau^- P_{c['n']}: {tuple(c['dim'])} -> {tuple(c['tau_minus_dim'])}" for c in chain]
    lines.append(f"sigma_x^-1 tau^- on Hom(L,L(1)) = {cmp.ghost} (scalar {ctx.field.format(cmp.scalar)})")
    lines.append("Pi(L,tau^-) relations: " + ", ".join(pretty(r) for r in res["comparison"]["relations"]))
    return res, lines, True


def cmd_function_field(ctx: Context):
    bim = ctx.two_two()
    if bim is not None:
        ff = kronecker_function_field() if bim.degree == 1 else skew_function_field(bim.degree)
    else:
        ff = function_field_presentation(ctx.curve.ladder.variant)
    res = ff.to_json()
    lines = [f"k(𝕏) = {pretty(ff.presentation)}", f"centre: {pretty(ff.centre)}, s = {ff.s}"]
    return res, lines, True


HANDLERS: dict[str, Callable] = {
    "classify": cmd_classify,
    "points": cmd_points,
    "algebra": cmd_algebra,
    "ghosts": cmd_ghosts,
    "ladder-verify": cmd_ladder_verify,
    "ar-translate": cmd_ar_translate,
    "function-field": cmd_function_field,
}
assert set(HANDLERS) == set(COMMANDS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tamecurve", description="Noncommutative curves of genus zero from tame bimodules.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("spec", help="path to a curve spec, or the name of a bundled curve")
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.add_argument("--max-degree", type=int, default=None)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--threads", type=int, default=1)
        if name == "ladder-verify":
            p.add_argument("--dump-matrices", type=int, default=None, metavar="N")
    return parser


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        spec = load_spec(args.spec)
        ctx = Context(spec, args)
    except SpecParseError as exc:
        print(f"spec error: {exc}", file=err)
        return 2
    use_json = args.json or spec.options.get("format") == "json"
    try:
        result, lines, ok = HANDLERS[args.command](ctx)
    except SpecParseError as exc:
        print(f"spec error: {exc}", file=err)
        return 2
    except TameCurveError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return 1
    if use_json:
        envelope = {"tamecurve": __version__, "command": args.command, "curve": spec.describe(), "ok": ok, "result": result}
        print(json.dumps(envelope, indent=2, ensure_ascii=False), file=out)
    else:
        for line in lines:
            print(line, file=out)
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
