"""Command line front end.

One subcommand per library operation, JSON in/out (CSV accepted for
matrices).  Every run with identical flags, inputs and seed produces
byte-identical primary output.  Library errors exit with code 1 and a
single-line message ``ERROR:<kind>: ...``; usage errors exit with code 2.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import dequant, isodiametric, polytrope
from .assignment import DEFAULT_CAP, tdet, tvol
from .core import Semiring, TropMatrix, as_rational, tdist, tdiam
from .errors import FormatError, TropicalError
from .matio import (
    dumps_matrix_json,
    format_scalar,
    load_matrix,
    load_plain_matrix,
    matrix_to_csv,
)

_PAPER_SUITE = []  # populated at module end


def _semiring(arg: str | None) -> Semiring | None:
    return None if arg is None else Semiring(arg)


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _matrix_text(A: TropMatrix, fmt: str) -> str:
    return matrix_to_csv(A) if fmt == "csv" else dumps_matrix_json(A) + "\n"


def _jdump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _scalar(value, sr: Semiring = Semiring.MAX) -> str:
    return format_scalar(value, sr)


def _cap(args) -> int:
    if getattr(args, "cap", None):
        return args.cap
    env = os.environ.get("TROPISO_CAP")
    return int(env) if env else DEFAULT_CAP


def _cmd_tdist(args) -> int:
    A = load_matrix(args.matrix, _semiring(args.semiring))
    if A.rows != 2:
        raise FormatError("tdist expects a 2-row matrix (the two vectors)")
    print(_scalar(tdist(A.row(0), A.row(1))))
    return 0


def _cmd_tdiam(args) -> int:
    A = load_matrix(args.matrix, _semiring(args.semiring))
    print(_scalar(tdiam(A)))
    return 0


def _cmd_tdet(args) -> int:
    A = load_matrix(args.matrix, _semiring(args.semiring))
    value, perm = tdet(A)
    if args.format == "json":
        _emit(_jdump({
            "value": _scalar(value, A.semiring),
            "witness": None if perm is None else list(perm.images),
        }), args.output)
    else:
        print(_scalar(value, A.semiring))
    return 0


def _cmd_tvol(args) -> int:
    A = load_matrix(args.matrix, _semiring(args.semiring))
    print(_scalar(tvol(A)))
    return 0


def _cmd_standardize(args) -> int:
    A = load_matrix(args.matrix, _semiring(args.semiring))
    variant = isodiametric.StandardVariant(args.variant or A.semiring.value)
    form = isodiametric.to_standard(A, variant)
    obj = {
        "variant": form.variant.value,
        "matrix": json.loads(dumps_matrix_json(form.matrix)),
        "trail": [
            {"move": kind, "payload": [str(x) for x in payload]}
            for kind, payload in form.trail
        ],
    }
    _emit(_jdump(obj), args.output)
    return 0


def _cmd_iso_check(args) -> int:
    A = load_matrix(args.matrix, _semiring(args.semiring))
    variant = isodiametric.StandardVariant(args.variant or A.semiring.value)
    standardized = False
    if not isodiametric.is_standard(A, variant):
        A = isodiametric.to_standard(A, variant).matrix
        standardized = True
    report = isodiametric.check_conditions(A, variant)

    def cond(c):
        return {"holds": c.holds,
                "violation": None if c.violation is None else list(c.violation)}

    obj = {
        "variant": report.variant.value,
        "standardized_first": standardized,
        "conditions": {
            "i": cond(report.cond_i),
            "ii": cond(report.cond_ii),
            "iii": cond(report.cond_iii),
            "iv": cond(report.cond_iv),
        },
        "strict_iv": report.strict_iv,
        "tdiam": _scalar(report.tdiam),
        "tvol": _scalar(report.tvol),
        "classification": report.classification.value,
    }
    _emit(_jdump(obj), args.output)
    return 0


def _cmd_iso_sample(args) -> int:
    B = isodiametric.sample_isodiametric(args.dim, args.seed,
                                         require_strict=args.strict)
    _emit(_matrix_text(B, args.format), args.output)
    return 0


def _cmd_kleene(args) -> int:
    A = load_matrix(args.matrix, _semiring(args.semiring) or Semiring.MIN)
    star = polytrope.kleene_star(A)
    _emit(_matrix_text(star, args.format), args.output)
    return 0


def _cmd_polytrope(args) -> int:
    A = load_matrix(args.matrix, _semiring(args.semiring) or Semiring.MIN)
    P = polytrope.build_polytrope(A, jobs=args.jobs)
    report = polytrope.polytrope_report(P)
    _emit(_jdump(report), args.report)
    if args.svg:
        _emit(polytrope.render_svg(P), args.svg)
    return 0


def _cmd_render(args) -> int:
    A = load_matrix(args.matrix, _semiring(args.semiring) or Semiring.MIN)
    P = polytrope.build_polytrope(A)
    _emit(polytrope.render_svg(P), args.svg)
    return 0


def _cmd_qvol(args) -> int:
    cap = _cap(args)
    for path in args.matrix:
        A = load_matrix(path, _semiring(args.semiring))
        if args.require_generic:
            value = dequant.qvol(A, method=args.method, cap=cap)
            print(_scalar(value))
            continue
        res = dequant.qvol_plus(A, method=args.method, cap=cap)
        if args.json:
            _emit(_jdump({
                "value": _scalar(res.value),
                "witness_columns": None if res.witness_columns is None
                else list(res.witness_columns),
                "witness_perm": None if res.witness_perm is None
                else list(res.witness_perm.images),
                "method": res.method,
                "sign_generic_bar": res.sign_generic_bar.value,
            }), args.output)
        else:
            print(_scalar(res.value))
    return 0


def _cmd_sign_generic(args) -> int:
    A = load_matrix(args.matrix, _semiring(args.semiring))
    rep = dequant.sign_generic(A, bar=not args.no_bar, cap=_cap(args))
    obj = {
        "verdict": rep.verdict.value,
        "method": rep.method.value,
        "enumerated": rep.enumerated_count,
        "selection": None if rep.selection is None else list(rep.selection),
    }
    _emit(_jdump(obj), args.output)
    return 0


def _cmd_dequant_slope(args) -> int:
    A = load_matrix(args.matrix, _semiring(args.semiring))
    grid = dequant.DEFAULT_T_GRID
    if args.t_grid:
        grid = tuple(as_rational(tok) for tok in args.t_grid.split(","))
    res = dequant.dequant_slope(A, t_grid=grid, cap=_cap(args))
    if args.csv:
        lines = ["t,volume,log_ratio"]
        lines += [f"{t},{format_scalar(v, Semiring.MAX)},{r:.12g}"
                  for t, v, r in res.rows]
        _emit("\n".join(lines) + "\n", args.csv)
    _emit(_jdump({
        "slope": res.slope,
        "log_ratio_at_max_t": res.log_ratio_at_max_t,
        "qvol": _scalar(res.qvol_value),
    }), args.output)
    return 0


def _cmd_bound_check(args) -> int:
    rows = load_plain_matrix(args.matrix)
    rep = dequant.volume_bound_check(rows)
    _emit(_jdump({
        "volume": _scalar(rep.volume),
        "alpha": rep.alpha,
        "qvol_log": rep.qvol_log,
        "bound": rep.bound,
        "holds": rep.holds,
    }), args.output)
    return 0


def _cmd_paper_suite(args) -> int:
    failures = 0
    for name, fn in _PAPER_SUITE:
        try:
            ok, detail = fn()
        except TropicalError as exc:  # a check crashing counts as failure
            ok, detail = False, f"{exc.kind}: {exc.message}"
        status = "PASS" if ok else "FAIL"
        print(f"{status}  {name:40s} {detail}")
        failures += 0 if ok else 1
    print(f"{len(_PAPER_SUITE) - failures}/{len(_PAPER_SUITE)} checks passed")
    return 0 if failures == 0 else 1


def _add_matrix_arg(p, nargs=None):
    if nargs:
        p.add_argument("matrix", nargs=nargs, help="matrix file (.json or .csv)")
    else:
        p.add_argument("matrix", help="matrix file (.json or .csv)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tropiso",
        description="Exact tropical metric geometry toolbox",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, matrix=True, nargs=None):
        p = sub.add_parser(name, help=help_)
        if matrix:
            _add_matrix_arg(p, nargs)
        p.add_argument("--semiring", choices=["min", "max"], default=None)
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--output", "-o", default=None, help="write here instead of stdout")
        p.add_argument("--cap", type=int, default=None,
                       help="enumeration cap (or env TROPISO_CAP)")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--seed", type=int, default=0)
        p.set_defaults(func=fn)
        return p

    add("tdist", _cmd_tdist, "tropical distance between the two rows of a 2xd matrix")
    add("tdiam", _cmd_tdiam, "tropical diameter of a square matrix")
    add("tdet", _cmd_tdet, "tropical determinant and witness permutation")
    add("tvol", _cmd_tvol, "tropical volume (optimal minus second-best assignment)")

    p = add("standardize", _cmd_standardize, "equivalent standard form plus move trail")
    p.add_argument("--variant", choices=["max", "min"], default=None)

    p = add("iso-check", _cmd_iso_check, "evaluate the isodiametric conditions (i)-(iv)")
    p.add_argument("--variant", choices=["max", "min"], default=None)

    p = add("iso-sample", _cmd_iso_sample,
            "sample a random isodiametric min-standard matrix", matrix=False)
    p.add_argument("--dim", "-d", type=int, required=True)
    p.add_argument("--strict", action="store_true",
                   help="require strict triple inequalities")

    add("kleene", _cmd_kleene, "Kleene star (shortest-path closure) of a min-plus matrix")

    p = add("polytrope", _cmd_polytrope, "facets, vertices and profile of the polytrope")
    p.add_argument("--report", default=None, help="write the JSON report here")
    p.add_argument("--svg", default=None, help="write an SVG rendering (3x3 only)")

    p = add("render", _cmd_render, "SVG rendering of a planar polytrope")
    p.add_argument("--svg", default=None, help="output SVG path (default stdout)")

    p = add("qvol", _cmd_qvol, "upper dequantized tropical volume", nargs="+")
    p.add_argument("--method", choices=[dequant.BRUTE_FORCE, dequant.TRANSPORT_LP],
                   default=dequant.BRUTE_FORCE)
    p.add_argument("--require-generic", action="store_true",
                   help="error out unless the bar matrix is sign generic")
    p.add_argument("--json", action="store_true",
                   help="emit the full result object instead of the bare value")

    p = add("sign-generic", _cmd_sign_generic, "sign-genericity scan of the bar matrix")
    p.add_argument("--no-bar", action="store_true",
                   help="scan the matrix itself, without the added zero row")

    p = add("dequant-slope", _cmd_dequant_slope,
            "log-limit slope experiment for the dequantized volume")
    p.add_argument("--t-grid", default=None, help="comma-separated t values")
    p.add_argument("--csv", default=None, help="write (t, volume, ratio) rows here")

    add("bound-check", _cmd_bound_check,
        "volume bound for an ordinary nonnegative matrix")

    p = sub.add_parser("paper-suite", help="run the built-in reference checks")
    p.set_defaults(func=_cmd_paper_suite)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TropicalError as exc:
        sys.stderr.write(f"ERROR:{exc.kind}: {exc.message}\n")
        return 1


# ---------------------------------------------------------------------------
# reference checks (also reachable as `tropiso paper-suite`)

def _unit(d: int, sr: Semiring) -> TropMatrix:
    return TropMatrix.from_rows(
        [[1 if i == j else 0 for j in range(d)] for i in range(d)], sr
    )


def _family(lam) -> TropMatrix:
    lam = as_rational(lam)
    return TropMatrix.from_rows(
        [[0, 1, 1], [1, 0, lam], [1, 2 - lam, 0]], Semiring.MIN
    )


_D4 = TropMatrix.from_rows(
    [[0, 1, 1, 1],
     [1, 0, "5/4", "3/4"],
     [1, "3/4", 0, "5/4"],
     [1, "5/4", "3/4", 0]],
    Semiring.MIN,
)

_LAMBDAS = (0, "1/2", 1, "3/2", 2)


def _chk_unit_diameter():
    bad = [d for d in range(2, 11) if tdiam(_unit(d, Semiring.MAX)) != 2]
    return not bad, f"d=2..10 (violations: {bad})"


def _chk_unit_volume():
    bad = [d for d in range(2, 9) if tvol(_unit(d, Semiring.MAX)) != 2]
    return not bad, f"d=2..8 (violations: {bad})"


def _chk_family_metrics():
    ok = all(tdiam(_family(l)) == 2 and tvol(_family(l)) == 2 for l in _LAMBDAS)
    return ok, "tdiam = tvol = 2 across the family"


def _chk_family_idempotent():
    from .core import trop_mat_mul

    ok = all(trop_mat_mul(_family(l), _family(l)) == _family(l) for l in _LAMBDAS)
    return ok, "B (x) B = B across the family"


def _chk_family_kleene():
    ok = all(polytrope.kleene_star(_family(l)) == _family(l) for l in _LAMBDAS)
    return ok, "Kleene star fixes the family"


def _chk_family_conditions():
    ok = True
    for l in _LAMBDAS:
        rep = isodiametric.check_conditions(_family(l), isodiametric.StandardVariant.MIN)
        ok &= rep.classification is isodiametric.Classification.ISODIAMETRIC
        ok &= isodiametric.converse_check(_family(l), isodiametric.StandardVariant.MIN)
    return ok, "conditions hold and converse check passes"


def _chk_sampler_family_shape():
    ok = True
    for seed in range(5):
        B = isodiametric.sample_isodiametric(3, seed)
        lam = B.entries[1][2]
        ok &= B == _family(lam)
    return ok, "3x3 samples have the one-parameter family shape"


def _chk_free_parameters():
    ok = (isodiametric.free_parameter_count(3) == 1
          and isodiametric.free_parameter_count(5) == 6)
    return ok, "parameter counts 1 (d=3) and 6 (d=5)"


def _chk_d4_facets():
    P = polytrope.build_polytrope(_D4)
    return len(P.irredundant) == 12, f"{len(P.irredundant)} irredundant facets"


def _chk_d4_profile():
    P = polytrope.build_polytrope(_D4)
    got = sorted(P.facet_profile.values())
    want = [4, 4, 4, 5, 5, 5, 5, 5, 5, 6, 6, 6]
    return got == want, f"profile {got}"


def _chk_d4_hexagons():
    P = polytrope.build_polytrope(_D4)
    bound = {(i, j): b for i, j, b in P.hrep}
    hexes = [f for f, n in P.facet_profile.items() if n == 6]

    def fverts(f):
        from .polytrope import _on_facet

        return {pt for pt in P.vertices if _on_facet(pt, f, bound[f])}

    pairs = [(f, g) for a, f in enumerate(hexes) for g in hexes[a + 1:]
             if len(fverts(f) & fverts(g)) >= 2]
    return not pairs, f"3 hexagons, {len(pairs)} adjacent pairs"


def _chk_hexagon_markers():
    P = polytrope.build_polytrope(_family(1))
    svg = polytrope.render_svg(P)
    reds = svg.count('fill="red"')
    whites = svg.count('fill="white"')
    ok = len(P.vertices) == 6 and reds == 3 and whites == 3
    return ok, f"6 vertices, {reds} red + {whites} white markers"


def _chk_degenerate_generators():
    ok = True
    for l in (0, 2):
        P = polytrope.build_polytrope(_family(l))
        mask = polytrope.nonredundant_generator_mask(_family(l))
        cols = {
            (c[1] - c[0], c[2] - c[0])
            for j, c in enumerate(map(_family(l).col, range(3)))
            if mask[j]
        }
        ok &= cols == set(P.vertices)
    return ok, "generator markers coincide with the vertices at the ends"


def _chk_qvol_values():
    A = TropMatrix.from_rows([[0, 0, 0], [0, 0, 0]], Semiring.MAX)
    B = TropMatrix.from_rows([[0, -1, -2], [0, -2, -4]], Semiring.MAX)
    va = dequant.qvol_plus(A, compute_parity=False).value
    vb = dequant.qvol_plus(B, compute_parity=False).value
    return (va, vb) == (0, -1), f"values {va}, {vb}"


_PAPER_SUITE.extend([
    ("unit-matrix-diameter", _chk_unit_diameter),
    ("unit-matrix-volume", _chk_unit_volume),
    ("family-metrics", _chk_family_metrics),
    ("family-idempotent", _chk_family_idempotent),
    ("family-kleene-fixed", _chk_family_kleene),
    ("family-conditions", _chk_family_conditions),
    ("sampler-family-shape", _chk_sampler_family_shape),
    ("free-parameter-count", _chk_free_parameters),
    ("d4-facet-count", _chk_d4_facets),
    ("d4-facet-profile", _chk_d4_profile),
    ("d4-hexagon-adjacency", _chk_d4_hexagons),
    ("hexagon-markers", _chk_hexagon_markers),
    ("degenerate-generators", _chk_degenerate_generators),
    ("qvol-upper-values", _chk_qvol_values),
])


if __name__ == "__main__":
    sys.exit(main())
