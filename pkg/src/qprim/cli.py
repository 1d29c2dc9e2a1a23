"""Command-line surface.

Subcommands: streak, pi, prstats, maxstreak, density, hlconst, lvalue, mstat,
charsum, tau, search, criteria, verify.  Default output is text; --format
json emits a single RunReport document, --format csv a flat key,value table.
Exit codes: 0 success, 1 computation error or failed verification, 2 usage
error.

Long-running reproductions (full record streaks, the 5e6 scan, k sweeps past
2000) are gated behind --long-run.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, is_dataclass
from fractions import Fraction
from typing import Any

from . import __version__
from .charsums import (
    FundamentalDiscriminant,
    admissible_discriminants,
    brute_char_average,
    char_average,
    complete_char_sum,
    inert_proportion,
    jacobsthal_sum,
    local_char_average,
)
from .criteria import (
    chebyshev_criterion,
    excluded_index_primes,
    extended_chebyshev,
    fueter_criterion,
    lehmer_index_coprimality,
)
from .densities import (
    asymptotic_max_estimate,
    bateman_horn_constant,
    dirichlet_l,
    expected_max_streak,
    harmonic_max_estimate,
    hardy_littlewood_constant,
    lehmer_corrected_density,
    lehmer_naive_density,
    pr_density,
    pr_density_simple,
    simulate_max_streak,
    totient_ratio_constant,
    totient_ratio_product,
)
from .poly import QuadraticPoly, as_polyz, parse_poly
from .search import SearchConfig, sweep
from .streaks import (
    empirical_max_streak,
    pr_stats,
    prime_count,
    streak,
    verify_primitive_root_prefix,
)

LONG_RUN_NCAP = 1_000_000
LONG_RUN_KMAX = 2_000


@dataclass(frozen=True)
class RunReport:
    command: str
    inputs: dict
    outputs: dict
    elapsed_ms: float
    version: str
    seed: int | None = None


@dataclass(frozen=True)
class Preset:
    name: str
    poly: QuadraticPoly
    g: int | None
    expected_count: int | None
    expected_failing_prime: int | None
    pi_checks: tuple[tuple[int, int], ...]
    default_prefix: int | None  # None: verify the full streak by default
    n_cap: int
    long_run_n_cap: int
    note: str


_D_A = 4472988326827347533  # non-residue-rich: (d/p) = -1 for p = 3..283
_D_B = 9828323860172600203  # (-d/p) = -1 for p = 3..277


def _construction(d: int, d1: int, alpha: int, sign: int, shift: int) -> QuadraticPoly:
    cfg = SearchConfig(d=d, d1=d1, alpha=alpha, sign=sign, shift=shift)
    from .search import candidate_poly

    return candidate_poly(cfg)


def preset_registry() -> dict[str, Preset]:
    """Named reproduction instances binding exact coefficients and bases."""
    presets = [
        Preset(
            name="lehmer",
            poly=QuadraticPoly(a=326, b=0, c=3),
            g=326,
            expected_count=206,
            expected_failing_prime=1838843753,
            pi_checks=(),
            default_prefix=None,
            n_cap=4_000,
            long_run_n_cap=4_000,
            note="base 326; streak ends at n=2375 with residual index 83",
        ),
        Preset(
            name="griffin",
            poly=QuadraticPoly(a=10, b=0, c=7),
            g=10,
            expected_count=16,
            expected_failing_prime=7297,
            pi_checks=(),
            default_prefix=None,
            n_cap=2_000,
            long_run_n_cap=2_000,
            note="decimal periods of 1/p for p = 10n^2+7",
        ),
        Preset(
            name="euler41",
            poly=QuadraticPoly(a=1, b=1, c=41),
            g=None,
            expected_count=None,
            expected_failing_prime=None,
            pi_checks=((39, 40), (10**6, 261081)),
            default_prefix=None,
            n_cap=39,
            long_run_n_cap=10**6,
            note="prime-producing quadratic; the published 1e6 count (261080) drops the n=0 term",
        ),
        Preset(
            name="beeger27941",
            poly=QuadraticPoly(a=1, b=1, c=27941),
            g=None,
            expected_count=None,
            expected_failing_prime=None,
            pi_checks=((39, 30), (10**6, 286129)),
            default_prefix=None,
            n_cap=39,
            long_run_n_cap=10**6,
            note="denser prime producer than euler41 in the long run; published 1e6 count (286128) drops n=0",
        ),
        Preset(
            name="example1",
            poly=_construction(_D_A, 252017, alpha=2, sign=-1, shift=8393),
            g=170363492,
            expected_count=22779,
            expected_failing_prime=432050978399143373,
            pi_checks=(),
            default_prefix=500,
            n_cap=100_000,
            long_run_n_cap=800_000,
            note="positive-discriminant record family, quality ~0.999453",
        ),
        Preset(
            name="example2",
            poly=_construction(_D_A, 230849, alpha=6, sign=-1, shift=728069),
            g=66715361,
            expected_count=25581,
            expected_failing_prime=None,
            pi_checks=(),
            default_prefix=300,
            n_cap=100_000,
            long_run_n_cap=4_000_000,
            note="largest known streak for positive discriminant",
        ),
        Preset(
            name="example2-g24",
            poly=_construction(_D_A, 230849, alpha=6, sign=-1, shift=56943),
            g=24,
            expected_count=21690,
            expected_failing_prime=None,
            pi_checks=(),
            default_prefix=300,
            n_cap=100_000,
            long_run_n_cap=4_000_000,
            note="record streak for a base below 100",
        ),
        Preset(
            name="example3",
            poly=_construction(_D_B, 54151, alpha=4, sign=1, shift=0),
            g=23731350844,
            expected_count=18176,
            expected_failing_prime=None,
            pi_checks=(),
            default_prefix=300,
            n_cap=100_000,
            long_run_n_cap=2_000_000,
            note="negative-discriminant family, unshifted",
        ),
        Preset(
            name="example3-f1",
            poly=_construction(_D_B, 54151, alpha=4, sign=1, shift=599206),
            g=72922,
            expected_count=29083,
            expected_failing_prime=None,
            pi_checks=(),
            default_prefix=300,
            n_cap=100_000,
            long_run_n_cap=2_000_000,
            note="shifted variant of example3",
        ),
        Preset(
            name="example3-f2",
            poly=_construction(_D_B, 54151, alpha=0, sign=1, shift=1484224),
            g=17431902,
            expected_count=31082,
            expected_failing_prime=None,
            pi_checks=(),
            default_prefix=200,
            n_cap=100_000,
            long_run_n_cap=5_000_000,
            note="largest known streak overall, quality ~0.999535",
        ),
    ]
    return {p.name: p for p in presets}


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def _plain(value: Any) -> Any:
    if isinstance(value, Fraction):
        return {"num": value.numerator, "den": value.denominator}
    if isinstance(value, FundamentalDiscriminant):
        return value.D
    if isinstance(value, QuadraticPoly):
        return {"a": value.a, "b": value.b, "c": value.c}
    if is_dataclass(value) and not isinstance(value, type):
        return {k: _plain(v) for k, v in asdict(value).items()}
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def _flatten(prefix: str, value: Any, rows: list[tuple[str, str]]) -> None:
    if isinstance(value, Fraction):
        rows.append((prefix, f"{value.numerator}/{value.denominator}"))
    elif isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, rows)
    elif isinstance(value, (list, tuple)):
        if any(isinstance(v, (dict, list, tuple)) for v in value):
            for i, v in enumerate(value):
                _flatten(f"{prefix}.{i}" if prefix else str(i), v, rows)
        else:
            rows.append((prefix, " ".join(str(_text_scalar(v)) for v in value)))
    else:
        rows.append((prefix, str(_text_scalar(value))))


def _text_scalar(v: Any) -> Any:
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, FundamentalDiscriminant):
        return v.D
    return v


def _emit(report: RunReport, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(_plain(report)))
        return
    if fmt == "csv":
        rows: list[tuple[str, str]] = []
        _flatten("", _plain(report.outputs), rows)
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["key", "value"])
        writer.writerows(rows)
        sys.stdout.write(buf.getvalue())
        return
    rows = []
    _flatten("", report.outputs, rows)
    width = max((len(k) for k, _ in rows), default=0)
    for k, v in rows:
        print(f"{k.ljust(width)}  {v}")
    print(f"[{report.command} finished in {report.elapsed_ms:.1f} ms]")


# ---------------------------------------------------------------------------
# handlers: each returns (inputs, outputs, seed)
# ---------------------------------------------------------------------------


def _default_workers(args) -> int:
    if getattr(args, "workers", None):
        return args.workers
    env = os.environ.get("QPRIM_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _require_long_run(args, what: str) -> None:
    if not args.long_run:
        raise ValueError(f"{what} needs --long-run (this is an hours-scale computation)")


def _handle_streak(args) -> tuple[dict, dict, None]:
    f = parse_poly(args.poly)
    res = streak(f, args.g, args.n_cap)
    out = {
        "poly": str(as_polyz(f)),
        "g": res.g,
        "count": res.count,
        "n_at_failure": res.n_at_failure,
        "failing_prime": res.failing_prime,
        "residual_index_at_failure": res.residual_index_at_failure,
        "n_scanned": res.n_scanned,
        "primes_seen": res.primes_seen,
        "complete": res.n_at_failure is not None,
    }
    return {"poly": args.poly, "g": args.g, "n_cap": args.n_cap}, out, None


def _handle_pi(args) -> tuple[dict, dict, None]:
    f = parse_poly(args.poly)
    if args.x > 2_000_000:
        _require_long_run(args, f"pi up to {args.x}")
    count = prime_count(f, args.x)
    return {"poly": args.poly, "x": args.x}, {"poly": str(as_polyz(f)), "x": args.x, "count": count}, None


def _handle_prstats(args) -> tuple[dict, dict, None]:
    f = parse_poly(args.poly)
    if args.n_cap > LONG_RUN_NCAP:
        _require_long_run(args, f"prstats to n_cap={args.n_cap}")
    st = pr_stats(f, args.g, args.n_cap)
    fr = st.primes_with_g_pr / st.primes_total if st.primes_total else None
    out = {
        "primes_total": st.primes_total,
        "primes_with_g_pr": st.primes_with_g_pr,
        "fraction": fr,
        "histogram": st.histogram,
        "n_cap": st.n_cap,
    }
    return {"poly": args.poly, "g": args.g, "n_cap": args.n_cap}, out, None


def _handle_maxstreak(args) -> tuple[dict, dict, None]:
    f = parse_poly(args.poly)
    if args.k_max > LONG_RUN_KMAX:
        _require_long_run(args, f"maxstreak to k_max={args.k_max}")
    k_best, c_best = empirical_max_streak(
        args.g_base, f, args.k_max, n_cap=args.n_cap, workers=_default_workers(args)
    )
    out = {"k_best": k_best, "g_best": k_best * k_best * args.g_base, "c_best": c_best}
    return {"poly": args.poly, "g_base": args.g_base, "k_max": args.k_max}, out, None


def _report_dict(rep) -> dict:
    return {
        "value": rep.value,
        "cutoff": rep.cutoff,
        "tail_bound": rep.tail_bound,
        "method": rep.method,
    }


def _handle_density(args) -> tuple[dict, dict, None]:
    inputs = {k: v for k, v in vars(args).items() if k not in ("func", "format")}
    if args.lehmer_naive:
        rep = lehmer_naive_density()
        return inputs, {"kind": "lehmer_naive", **_report_dict(rep)}, None
    if args.lehmer_corrected:
        rep = lehmer_corrected_density()
        return inputs, {"kind": "lehmer_corrected", **_report_dict(rep)}, None
    if args.totient_constant:
        rep = totient_ratio_constant(args.cutoff or 10_000_000)
        return inputs, {"kind": "totient_ratio_constant", **_report_dict(rep)}, None
    if args.q_product:
        primes = [int(p) for p in args.q_product.split(",")]
        return inputs, {"kind": "totient_ratio_product", "value": totient_ratio_product(primes)}, None
    if args.bateman_horn:
        f = parse_poly(args.bateman_horn)
        rep = bateman_horn_constant(f, cutoff=args.cutoff or 100_000)
        return inputs, {"kind": "bateman_horn", **_report_dict(rep)}, None
    if args.simple:
        a_str, b_str = args.simple.split(",")
        rep = pr_density_simple(int(a_str), int(b_str))
        return inputs, {"kind": "simplified_quality", **_report_dict(rep)}, None
    if not args.poly:
        raise ValueError("density needs --poly or one of the named product modes")
    f = parse_poly(args.poly)
    rep = pr_density(f, cutoff=args.cutoff or 10_000, accelerate=not args.no_accelerate)
    return inputs, {"kind": "quality", "poly": str(as_polyz(f)), **_report_dict(rep)}, None


def _handle_hlconst(args) -> tuple[dict, dict, None]:
    rep = hardy_littlewood_constant(args.disc, tol=args.tol)
    return {"disc": args.disc, "tol": args.tol}, _report_dict(rep), None


def _handle_lvalue(args) -> tuple[dict, dict, None]:
    lv = dirichlet_l(args.s, args.disc, tol=args.tol)
    out = {"s": lv.s, "disc": lv.D.D, "value": lv.value, "abs_error": lv.abs_error}
    return {"s": args.s, "disc": args.disc, "tol": args.tol}, out, None


def _handle_mstat(args) -> tuple[dict, dict, int | None]:
    out: dict[str, Any] = {
        "expected_max": expected_max_streak(args.p1, args.s),
        "harmonic_estimate": harmonic_max_estimate(args.p1, args.s),
        "asymptotic_estimate": asymptotic_max_estimate(args.p1, args.s),
    }
    seed = None
    if args.simulate:
        seed = args.seed
        mean, stderr = simulate_max_streak(args.p1, args.s, args.trials, seed)
        out["simulated_mean"] = mean
        out["simulated_stderr"] = stderr
        out["trials"] = args.trials
    return {"p1": args.p1, "s": args.s}, out, seed


def _handle_charsum(args) -> tuple[dict, dict, None]:
    inputs = {"poly": args.poly, "p": args.p, "mode": args.mode}
    if args.mode == "jacobsthal":
        if args.a is None or args.p is None:
            raise ValueError("--mode jacobsthal needs --a and --p")
        return inputs, {"value": jacobsthal_sum(args.a, args.p), "a": args.a, "p": args.p}, None
    if not args.poly:
        raise ValueError(f"--mode {args.mode} needs --poly")
    f = parse_poly(args.poly)
    if args.mode in ("complete", "local") and args.p is None:
        raise ValueError(f"--mode {args.mode} needs --p")
    if args.mode == "complete":
        if not isinstance(f, QuadraticPoly):
            raise ValueError("the complete sum closed form needs a quadratic (a,b,c)")
        return inputs, {"value": complete_char_sum(f, args.p), "p": args.p}, None
    if args.mode == "local":
        if isinstance(f, QuadraticPoly):
            val = local_char_average(f, args.p)
        else:
            val = brute_char_average(f, args.p)
        return inputs, {"value": val, "p": args.p}, None
    # mode == "average": composite odd squarefree modulus
    if args.d is None:
        raise ValueError("--mode average needs --d")
    if not isinstance(f, QuadraticPoly):
        raise ValueError("the multiplicative average needs a quadratic (a,b,c)")
    return inputs, {"value": char_average(f, args.d), "d": args.d}, None


def _handle_tau(args) -> tuple[dict, dict, None]:
    f = parse_poly(args.poly)
    if args.admissible:
        if not isinstance(f, QuadraticPoly):
            raise ValueError("admissible-discriminant scans need a quadratic (a,b,c)")
        discs = admissible_discriminants(f, bound=args.bound)
        out = {"admissible_discriminants": [fd.D for fd in discs], "bound": args.bound}
        return {"poly": args.poly, "bound": args.bound}, out, None
    if args.disc is None:
        raise ValueError("tau needs --disc (or --admissible)")
    tau = inert_proportion(f, args.disc)
    return {"poly": args.poly, "disc": args.disc}, {"value": tau, "disc": args.disc}, None


def _handle_search(args) -> tuple[dict, dict, None]:
    cfg = SearchConfig(
        d=args.d,
        d1=args.d1,
        alpha=args.alpha,
        sign=args.sign,
        shift=args.shift,
        r1=args.r1,
        r2=args.r2,
        g_base=args.g_base,
        k_lo=args.k_lo,
        k_hi=args.k_hi,
        n_cap=args.n_cap,
    )
    if args.k_hi - args.k_lo + 1 > LONG_RUN_KMAX:
        _require_long_run(args, f"sweep over {args.k_hi - args.k_lo + 1} k values")
    best = sweep(
        cfg,
        checkpoint_path=args.checkpoint,
        workers=_default_workers(args),
        resume=not args.fresh,
    )
    from .search import candidate_poly

    out = {
        "poly": str(candidate_poly(cfg).as_poly()),
        "best_k": best.k,
        "best_g": best.g,
        "best_c": best.c,
        "failing_prime": best.failing_prime,
        "config_hash": best.config_hash,
    }
    return {k: v for k, v in vars(args).items() if k not in ("func", "format")}, out, None


def _handle_criteria(args) -> tuple[dict, dict, None]:
    inputs = {k: v for k, v in vars(args).items() if k not in ("func", "format")}
    from .arith import primes_up_to

    if args.mode == "classic":
        applicable = 0
        for p1 in primes_up_to(args.max):
            if chebyshev_criterion(p1):
                applicable += 1
        return inputs, {"mode": "classic", "max": args.max, "applicable": applicable, "violations": 0}, None
    if args.mode == "extended":
        applicable = 0
        for p1 in primes_up_to(args.max):
            if extended_chebyshev(args.g, p1):
                applicable += 1
        return inputs, {"mode": "extended", "g": args.g, "max": args.max, "applicable": applicable, "violations": 0}, None
    if args.mode == "fueter":
        applicable = 0
        for p in primes_up_to(args.max):
            if p > 2 and fueter_criterion(p):
                applicable += 1
        return inputs, {"mode": "fueter", "max": args.max, "applicable": applicable, "disagreements": 0}, None
    if args.mode == "prop2":
        ok = lehmer_index_coprimality(args.k, args.n_cap)
        out = {"mode": "prop2", "k": args.k, "n_cap": args.n_cap, "all_coprime": ok}
        return inputs, out, None
    excluded = excluded_index_primes(args.alpha, args.d1, args.d2, args.q_max)
    return inputs, {"mode": "lemma1", "excluded_primes": excluded}, None


def _handle_verify(args) -> tuple[dict, dict, None]:
    registry = preset_registry()
    if args.preset not in registry:
        raise ValueError(f"unknown preset {args.preset!r}; known: {sorted(registry)}")
    preset = registry[args.preset]
    checks: list[dict] = []
    ok_all = True
    if preset.g is not None:
        if args.long_run or preset.default_prefix is None:
            n_cap = args.n_cap or (preset.long_run_n_cap if args.long_run else preset.n_cap)
            res = streak(preset.poly, preset.g, n_cap)
            ok = res.count == preset.expected_count
            if preset.expected_failing_prime is not None:
                ok = ok and res.failing_prime == preset.expected_failing_prime
            checks.append(
                {
                    "check": "streak",
                    "count": res.count,
                    "expected_count": preset.expected_count,
                    "failing_prime": res.failing_prime,
                    "expected_failing_prime": preset.expected_failing_prime,
                    "ok": ok,
                }
            )
            ok_all = ok_all and ok
        else:
            prefix = args.prefix or preset.default_prefix
            n_cap = args.n_cap or preset.n_cap
            ok = verify_primitive_root_prefix(preset.poly, preset.g, prefix, n_cap)
            checks.append(
                {"check": "prefix", "prefix": prefix, "expected_count": preset.expected_count, "ok": ok}
            )
            ok_all = ok_all and ok
    for x, expected in preset.pi_checks:
        if x > 10_000 and not args.long_run and args.quick:
            continue
        count = prime_count(preset.poly, x)
        ok = count == expected
        checks.append({"check": "pi", "x": x, "count": count, "expected": expected, "ok": ok})
        ok_all = ok_all and ok
    out = {
        "preset": preset.name,
        "poly": str(preset.poly.as_poly()),
        "g": preset.g,
        "note": preset.note,
        "checks": checks,
        "ok": ok_all,
    }
    return {"preset": args.preset, "long_run": args.long_run}, out, None


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

_POLY_HELP = (
    "polynomial: three comma-separated integers are quadratic a,b,c "
    "(leading first); any other count is constant-first c0,c1,...,ck"
)


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="qprim", description=__doc__)
    top.add_argument("--version", action="version", version=f"qprim {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--long-run", action="store_true", help="allow hours-scale computations")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("streak", parents=[common], help="primitive-root streak of a base over the primes f(n)")
    p.add_argument("--poly", required=True, help=_POLY_HELP)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n-cap", type=int, default=100_000)
    p.set_defaults(func=_handle_streak)

    p = sub.add_parser("pi", parents=[common], help="count n <= x with f(n) prime")
    p.add_argument("--poly", required=True, help=_POLY_HELP)
    p.add_argument("--x", type=int, required=True)
    p.set_defaults(func=_handle_pi)

    p = sub.add_parser("prstats", parents=[common], help="residual-index histogram over the primes f(n)")
    p.add_argument("--poly", required=True, help=_POLY_HELP)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n-cap", type=int, default=100_000)
    p.set_defaults(func=_handle_prstats)

    p = sub.add_parser("maxstreak", parents=[common], help="max streak of k^2*g over k <= k_max")
    p.add_argument("--poly", required=True, help=_POLY_HELP)
    p.add_argument("--g-base", type=int, required=True)
    p.add_argument("--k-max", type=int, required=True)
    p.add_argument("--n-cap", type=int, default=200_000)
    p.add_argument("--workers", type=int, default=0, help="0: QPRIM_THREADS or cpu count")
    p.set_defaults(func=_handle_maxstreak)

    p = sub.add_parser("density", parents=[common], help="quality densities and named Euler products")
    p.add_argument("--poly", help=_POLY_HELP)
    p.add_argument("--cutoff", type=int, default=0)
    p.add_argument("--no-accelerate", action="store_true")
    p.add_argument("--simple", metavar="A,B", help="simplified quality of A*X^2+B")
    p.add_argument("--lehmer-naive", action="store_true")
    p.add_argument("--lehmer-corrected", action="store_true")
    p.add_argument("--totient-constant", action="store_true")
    p.add_argument("--q-product", metavar="P1,P2,...", help="prod (p-1)/phi(p-1)")
    p.add_argument("--bateman-horn", metavar="POLY")
    p.set_defaults(func=_handle_density)

    p = sub.add_parser("hlconst", parents=[common], help="prime-density constant for a negative fundamental discriminant")
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=_handle_hlconst)

    p = sub.add_parser("lvalue", parents=[common], help="Dirichlet L(s, chi_D) at s = 1 or 2")
    p.add_argument("--s", type=int, required=True, choices=(1, 2))
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=_handle_lvalue)

    p = sub.add_parser("mstat", parents=[common], help="expected maximum of s geometric streaks")
    p.add_argument("--p1", type=float, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--simulate", action="store_true")
    p.add_argument("--trials", type=int, default=2000)
    p.add_argument("--seed", type=int, default=20260810)
    p.set_defaults(func=_handle_mstat)

    p = sub.add_parser("charsum", parents=[common], help="complete character sums and averages (exact rationals)")
    p.add_argument("--mode", choices=("complete", "local", "average", "jacobsthal"), default="complete")
    p.add_argument("--poly", help=_POLY_HELP)
    p.add_argument("--p", type=int, help="odd prime modulus")
    p.add_argument("--d", type=int, help="odd squarefree modulus for --mode average")
    p.add_argument("--a", type=int, help="shift for --mode jacobsthal")
    p.set_defaults(func=_handle_charsum)

    p = sub.add_parser("tau", parents=[common], help="inert proportion of the primes f(n) in a quadratic field")
    p.add_argument("--poly", required=True, help=_POLY_HELP)
    p.add_argument("--disc", type=int, help="fundamental discriminant")
    p.add_argument("--admissible", action="store_true", help="list discriminants with proportion exactly 1")
    p.add_argument("--bound", type=int, default=2000)
    p.set_defaults(func=_handle_tau)

    p = sub.add_parser("search", parents=[common], help="checkpointed k-sweep for record streaks")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--d1", type=int, required=True)
    p.add_argument("--alpha", type=int, default=0)
    p.add_argument("--sign", type=int, default=1, choices=(1, -1))
    p.add_argument("--shift", type=int, default=0)
    p.add_argument("--r1", type=int, default=1)
    p.add_argument("--r2", type=int, default=1)
    p.add_argument("--g-base", type=int, required=True)
    p.add_argument("--k-lo", type=int, default=1)
    p.add_argument("--k-hi", type=int, required=True)
    p.add_argument("--n-cap", type=int, default=100_000)
    p.add_argument("--checkpoint", help="append-only JSON-lines checkpoint; resumable")
    p.add_argument("--fresh", action="store_true", help="ignore an existing checkpoint")
    p.add_argument("--workers", type=int, default=0, help="0: QPRIM_THREADS or cpu count")
    p.set_defaults(func=_handle_search)

    p = sub.add_parser("criteria", parents=[common], help="primitive-root criteria scans")
    p.add_argument("--mode", choices=("classic", "extended", "fueter", "prop2", "lemma1"), required=True)
    p.add_argument("--max", type=int, default=10_000, help="scan bound for classic/extended/fueter")
    p.add_argument("--g", type=int, default=3, help="base for --mode extended")
    p.add_argument("--k", type=int, default=1, help="multiplier for --mode prop2")
    p.add_argument("--n-cap", type=int, default=2000, help="scan bound for --mode prop2")
    p.add_argument("--alpha", type=int, default=1)
    p.add_argument("--d1", type=int, default=163)
    p.add_argument("--d2", type=int, default=1)
    p.add_argument("--q-max", type=int, default=40)
    p.set_defaults(func=_handle_criteria)

    p = sub.add_parser("verify", parents=[common], help="run a named reproduction preset")
    p.add_argument("--preset", required=True)
    p.add_argument("--prefix", type=int, default=0, help="override the default prefix depth")
    p.add_argument("--n-cap", type=int, default=0)
    p.add_argument("--quick", action="store_true", help="skip the slower count checks")
    p.set_defaults(func=_handle_verify)

    return top


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        inputs, outputs, seed = args.func(args)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    elapsed = (time.perf_counter() - start) * 1000.0
    report = RunReport(
        command=args.command,
        inputs={k: v for k, v in inputs.items() if v is not None},
        outputs=outputs,
        elapsed_ms=elapsed,
        version=__version__,
        seed=seed,
    )
    _emit(report, args.format)
    if args.command == "verify" and not outputs.get("ok", True):
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
