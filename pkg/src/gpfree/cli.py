"""Command-line front end: every computation, machine-readable output.

Output is a deterministic envelope {command, params, results, error_bounds,
version} rendered as JSON (sorted keys, floats at 12 significant digits) or as
flat CSV.  Identical invocations produce byte-identical output; domain errors
exit 1 with a diagnostic on stderr, usage errors exit 2.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from decimal import ROUND_HALF_EVEN, Decimal
from fractions import Fraction

from . import __version__
from .errors import GpfreeError
from .euler import ApproxValue, a3_contains
from .fields import make_field, quad_character, smallest_nonunit_norms, split_type
from .greedy import (
    greedy_density_ideals,
    greedy_density_integers,
    histogram,
    histogram_csv,
    rankin_density,
    rational_ratio_density,
    survey,
    survey_csv,
    universal_bounds,
)
from .lattice import (
    GreedyMode,
    count_elements,
    enumerate_elements,
    factor_element,
    greedy_set,
    empirical_density,
)
from .lower_bounds import (
    certify_gp_free,
    chaining_constant,
    density as system_density,
    parse_interval_file,
    preset,
    quoted_density,
    CertStatus,
)
from .upper_bounds import (
    coprime_density,
    exclusion_profile,
    improved_bound,
    riddell_bound,
    smooth_tags,
)


def _round12(x: float) -> float:
    return float(f"{x:.12g}")


def _dec6(x: float) -> str:
    """Round-half-even to 6 decimal places, as printed by the reference tables."""
    return str(Decimal(repr(x)).quantize(Decimal("0.000001"), rounding=ROUND_HALF_EVEN))


def _jsonable(obj):
    if isinstance(obj, float):
        return _round12(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, ApproxValue):
        return {"value": _round12(obj.value), "error_bound": _round12(obj.error_bound)}
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _emit(args, command: str, params: dict, results: dict, error_bounds: dict | None = None):
    envelope = {
        "command": command,
        "params": _jsonable(params),
        "results": _jsonable(results),
        "version": __version__,
    }
    if error_bounds:
        envelope["error_bounds"] = _jsonable(error_bounds)
    if args.format == "json":
        text = json.dumps(envelope, sort_keys=True, indent=2) + "\n"
    else:
        lines = ["key,value"]
        flat = {}

        def flatten(prefix, val):
            if isinstance(val, dict):
                for k in sorted(val):
                    flatten(f"{prefix}.{k}" if prefix else k, val[k])
            elif isinstance(val, list):
                for i, v in enumerate(val):
                    flatten(f"{prefix}[{i}]", v)
            else:
                flat[prefix] = val

        flatten("", envelope)
        for k in sorted(flat):
            lines.append(f"{k},{flat[k]}")
        text = "\n".join(lines) + "\n"
    _write_out(args, text)


def _write_out(args, text: str):
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _approx_payload(v: ApproxValue) -> dict:
    return {
        "value": _round12(v.value),
        "value_6dp": _dec6(v.value),
        "error_bound": _round12(v.error_bound),
    }


# ---------------------------------------------------------------------------
# Subcommand handlers


def _cmd_field_info(args):
    f = make_field(args.d)
    norms = smallest_nonunit_norms(f, 3)
    small = {
        p: split_type(f, p).kind.value for p in (2, 3, 5, 7, 11, 13)
    }
    _emit(
        args,
        "field-info",
        {"d": args.d},
        {
            "d": f.d,
            "discriminant": f.discriminant,
            "is_imaginary": f.is_imaginary,
            "class_number_one": f.class_number_one,
            "smallest_nonunit_norms": norms,
            "splitting_of_small_primes": small,
            "chi_values_1_to_12": [quad_character(f, n) for n in range(1, 13)],
        },
    )


def _cmd_density(args):
    P = args.trunc_prime
    if args.what == "rankin":
        v = rankin_density(P)
        _emit(
            args,
            "density rankin",
            {"trunc_prime": P},
            _approx_payload(v),
            error_bounds={"value": v.error_bound},
        )
        return
    f = make_field(args.d)
    if args.what == "greedy":
        rep = greedy_density_integers(f, P)
    elif args.what == "ideals":
        rep = greedy_density_ideals(f, P)
    else:
        rep = rational_ratio_density(f, P)
    _emit(
        args,
        f"density {args.what}",
        {"d": args.d, "trunc_prime": P},
        {
            "set_kind": rep.set_kind.value,
            "route": rep.route.value,
            **_approx_payload(rep.value),
        },
        error_bounds={"value": rep.value.error_bound},
    )


def _cmd_bounds(args):
    if args.what == "universal":
        lo, hi = universal_bounds(args.trunc_prime)
        _emit(
            args,
            "bounds universal",
            {"trunc_prime": args.trunc_prime},
            {"lower": _approx_payload(lo), "upper": _approx_payload(hi)},
            error_bounds={"lower": lo.error_bound, "upper": hi.error_bound},
        )
        return
    f = make_field(args.d)
    if args.what == "riddell":
        r = riddell_bound(f)
        _emit(
            args,
            "bounds riddell",
            {"d": args.d},
            {"bound": str(r), "decimal": _round12(float(r)), "q": smallest_nonunit_norms(f, 1)[0]},
        )
        return
    if args.what == "smooth":
        n_max = args.nmax
        prof = exclusion_profile(f, n_max)
        imp = improved_bound(f, n_max)
        rid = riddell_bound(f)
        _emit(
            args,
            "bounds smooth",
            {"d": args.d, "nmax": n_max},
            {
                "d": f.d,
                "q": smallest_nonunit_norms(f, 1)[0],
                "n_max": n_max,
                "prime_tag_norms": [t.norm for t in smooth_tags(f)],
                "coprime_density": str(coprime_density(f)),
                "profile": prof.pairs(),
                "improved": str(imp),
                "improved_decimal": _round12(float(imp)),
                "riddell": str(rid),
                "best": str(min(rid, imp)),
            },
        )
        return
    # lower bounds from interval systems
    if args.intervals:
        with open(args.intervals, encoding="utf-8") as fh:
            system = parse_interval_file(fh.read(), f)
        quoted = None
    elif args.preset:
        system = preset(args.d, f)
        quoted = quoted_density(args.d)
    else:
        raise GpfreeError("bounds lower needs --preset or --intervals FILE")
    dens = system_density(system)
    cert = certify_gp_free(f, system)
    chain = chaining_constant(system)
    results = {
        "intervals": [[iv.a, iv.b] for iv in system.intervals],
        "density": str(dens),
        "density_decimal": _round12(float(dens)),
        "density_6dp": _dec6(float(dens)),
        "certificate": cert.status.value,
        "chaining_constant": chain.c,
        "chaining_verified": chain.verified,
    }
    if cert.status is CertStatus.COUNTEREXAMPLE:
        results["counterexample"] = {
            "s": cert.s,
            "witness": str(cert.witness),
            "interval_indices": list(cert.interval_indices),
        }
    if quoted is not None:
        results["quoted_density"] = quoted
        mismatch = abs(float(dens) - quoted) > 1e-5
        results["density_mismatch_vs_quoted"] = mismatch
        if mismatch:
            results["note"] = (
                f"exact interval-length sum {_dec6(float(dens))} differs from the "
                f"quoted bound {quoted} by {float(dens) - quoted:+.1e}"
            )
    _emit(args, "bounds lower", {"d": args.d, "preset": bool(args.preset)}, results)


def _cmd_verify(args):
    f = make_field(args.d)
    B = args.norm_max
    if args.what == "greedy":
        res = greedy_set(f, B, GreedyMode.FIELD_RATIO)
        dens = empirical_density(f, res.included, B)
        _emit(
            args,
            "verify greedy",
            {"d": args.d, "norm_max": B},
            {
                "included": len(res.included),
                "excluded": len(res.excluded),
                "empirical_density": str(dens),
                "empirical_density_decimal": _round12(float(dens)),
            },
        )
        return
    if args.what == "characterization":
        res = greedy_set(f, B, GreedyMode.FIELD_RATIO)
        char = [
            q
            for q in enumerate_elements(f, B)
            if all(a3_contains(e) for _, e in factor_element(f, q).items)
        ]
        match = res.included == char
        _emit(
            args,
            "verify characterization",
            {"d": args.d, "norm_max": B},
            {"greedy_equals_digit_characterization": match, "included": len(res.included)},
        )
        if not match:
            raise GpfreeError("greedy set deviates from the exponent characterization")
        return
    # gauss: counting sanity |count(B) - pi B / area| for d = -1
    rows = []
    ok_all = True
    B0 = 100
    while B0 <= B:
        c = count_elements(f, B0)
        if f.d == -1:
            expected = math.pi * B0
            tol = 8 * math.sqrt(B0)
            ok = abs(c - expected) <= tol
            ok_all &= ok
            rows.append({"B": B0, "count": c, "expected": _round12(expected), "ok": ok})
        else:
            rows.append({"B": B0, "count": c})
        B0 *= 10
    _emit(args, "verify gauss", {"d": args.d, "norm_max": B}, {"samples": rows, "ok": ok_all})
    if not ok_all:
        raise GpfreeError("lattice counts deviate beyond the Gauss-circle tolerance")


def _cmd_survey(args):
    rows = survey(-args.dmax, -1, P=args.trunc_prime, jobs=args.jobs, range_kind=args.range_kind)
    csv_text = survey_csv(rows)
    if args.format == "json":
        payload = {
            "rows": [[r.d, r.discriminant, f"{r.density:.12f}", f"{r.error_bound:.12f}"] for r in rows],
            "count": len(rows),
        }
        _emit(args, "survey", _survey_params(args), payload)
    else:
        _write_out(args, csv_text)
    if args.histogram_out:
        bins = histogram(rows, args.bins)
        with open(args.histogram_out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(histogram_csv(bins))


def _survey_params(args) -> dict:
    return {
        "dmax": args.dmax,
        "trunc_prime": args.trunc_prime,
        "jobs": args.jobs,
        "range_kind": args.range_kind,
        "bins": args.bins,
    }


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="gpfree",
        description="Densities and certified bounds for geometric-progression-free sets "
        "over quadratic number fields",
    )
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p, d_required=True):
        if d_required:
            p.add_argument("--d", type=int, required=True, help="squarefree d of Q(sqrt(d))")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", type=str, default=None, help="write output to a file")

    p = sub.add_parser("field-info", help="discriminant, character, splitting data")
    common(p)
    p.set_defaults(func=_cmd_field_info)

    p = sub.add_parser("density", help="greedy-set densities")
    p.add_argument("what", choices=("rankin", "greedy", "ideals", "rational-ratio"))
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--trunc-prime", type=int, default=10**6)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=_cmd_density_dispatch)

    p = sub.add_parser("bounds", help="upper/lower bounds for the upper density")
    p.add_argument("what", choices=("universal", "riddell", "smooth", "lower"))
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--trunc-prime", type=int, default=10**6)
    p.add_argument("--nmax", type=int, default=500)
    p.add_argument("--preset", action="store_true")
    p.add_argument("--intervals", type=str, default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=_cmd_bounds_dispatch)

    p = sub.add_parser("verify", help="brute-force lattice verifications")
    p.add_argument("what", choices=("greedy", "characterization", "gauss"))
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--norm-max", type=int, default=1000)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("survey", help="ideal-greedy densities over imaginary fields")
    p.add_argument("--dmax", type=int, required=True, help="survey 1 <= |d| <= dmax")
    p.add_argument("--trunc-prime", type=int, default=10**5)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--bins", type=float, default=0.01)
    p.add_argument(
        "--range-kind", choices=("d", "discriminant"), default="d",
        help="bound |d| (default) or |discriminant| by dmax",
    )
    p.add_argument("--histogram-out", type=str, default=None)
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=_cmd_survey)

    return ap


def _cmd_density_dispatch(args):
    if args.what == "rational-ratio" and args.d is None:
        args.d = -1  # the value carries no field dependence
    if args.what != "rankin" and args.d is None:
        raise GpfreeError(f"density {args.what} requires --d")
    _cmd_density(args)


def _cmd_bounds_dispatch(args):
    if args.what != "universal" and args.d is None:
        raise GpfreeError(f"bounds {args.what} requires --d")
    _cmd_bounds(args)


def run(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        args.func(args)
    except GpfreeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(run())
