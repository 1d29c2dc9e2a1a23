"""Record-search machinery: build candidate quadratics from a non-residue-rich
number d, list the admissible bases, and sweep k over k^2 * g_base with
checkpointing and a deterministic parallel merge.
"""

from __future__ import annotations

import hashlib
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

from .arith import squarefree_decomposition
from .charsums import admissible_discriminants, is_valid_base
from .densities import DensityReport, pr_density
from .poly import QuadraticPoly, is_perfect_square
from .streaks import PrimeValueStream, streak


class CheckpointError(RuntimeError):
    """Checkpoint file unusable; recovery instructions are in the message."""


@dataclass(frozen=True)
class SearchConfig:
    """One sweep instance: the polynomial construction
    2^alpha * d1 * r1 * (X+shift)^2 + sign * 2^alpha * (d/d1) * r2 + 1
    plus the base family k^2 * g_base over k in [k_lo, k_hi].

    d is trusted squarefree (values come from published tables); d1 | d and
    r1*r2 being a perfect square are validated.
    """

    d: int
    d1: int
    alpha: int = 0
    sign: int = 1
    shift: int = 0
    r1: int = 1
    r2: int = 1
    g_base: int = 0
    k_lo: int = 1
    k_hi: int = 1
    n_cap: int = 100_000

    @property
    def d2(self) -> int:
        return self.d // self.d1

    @property
    def k_range(self) -> tuple[int, int]:
        return (self.k_lo, self.k_hi)

    def validate(self) -> None:
        if self.d <= 0 or self.d1 <= 0 or self.d % self.d1 != 0:
            raise ValueError("d1 must be a positive divisor of d")
        if self.alpha < 0 or self.shift < 0:
            raise ValueError("alpha and shift must be >= 0")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.r1 <= 0 or self.r2 <= 0 or not is_perfect_square(self.r1 * self.r2):
            raise ValueError("r1*r2 must be a positive perfect square")
        if self.k_lo < 1 or self.k_hi < self.k_lo:
            raise ValueError("need 1 <= k_lo <= k_hi")
        if self.n_cap < 0:
            raise ValueError("n_cap must be >= 0")


@dataclass(frozen=True)
class SearchRecord:
    config_hash: str
    k: int
    g: int
    c: int
    failing_prime: int | None
    timestamp: float


def config_hash(cfg: SearchConfig) -> str:
    blob = json.dumps(asdict(cfg), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def candidate_poly(cfg: SearchConfig) -> QuadraticPoly:
    """Expand the configured construction to a*X^2 + b*X + c."""
    cfg.validate()
    scale = (1 << cfg.alpha) * cfg.d1 * cfg.r1
    const = cfg.sign * (1 << cfg.alpha) * cfg.d2 * cfg.r2 + 1
    a = scale
    b = 2 * scale * cfg.shift
    c = scale * cfg.shift * cfg.shift + const
    return QuadraticPoly(a=a, b=b, c=c)


def admissible_bases(f: QuadraticPoly, g_bound: int) -> list[int]:
    """All valid bases g with |g| <= g_bound whose quadratic field has inert
    proportion exactly 1 for the primes of f.  If g qualifies so does k^2*g;
    membership only depends on the squarefree part."""
    good = {fd.D for fd in admissible_discriminants(f, bound=4 * g_bound)}
    out = []
    for g in range(-g_bound, g_bound + 1):
        if not is_valid_base(g) or g == 0:
            continue
        _, g1 = squarefree_decomposition(g)
        D = g1 if g1 % 4 == 1 else 4 * g1
        if D in good:
            out.append(g)
    return out


def quality(f: QuadraticPoly, cutoff: int = 10_000, accelerate: bool = True) -> float:
    """The density value used to rank candidate polynomials before sweeping."""
    report: DensityReport = pr_density(f, cutoff=cutoff, accelerate=accelerate)
    return report.value


def _sweep_chunk(args: tuple) -> list[tuple[int, int, int | None]]:
    cfg, k_lo, k_hi = args
    f = candidate_poly(cfg)
    stream = PrimeValueStream(f)
    out = []
    for k in range(k_lo, k_hi + 1):
        g = k * k * cfg.g_base
        if not is_valid_base(g) or g == 0:
            continue
        res = streak(f, g, cfg.n_cap, stream=stream)
        out.append((k, res.count, res.failing_prime))
    return out


def _read_checkpoint(path: str, expected_hash: str) -> tuple[int, SearchRecord | None]:
    """Last completed k and the best record so far from a checkpoint file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except FileNotFoundError:
        return 0, None
    last_k = 0
    best: SearchRecord | None = None
    for idx, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
            k = int(rec["k"])
            best_k = int(rec["best_k"])
            best_c = int(rec["best_c"])
            h = rec["config_hash"]
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise CheckpointError(
                f"{path}:{idx}: unreadable checkpoint line ({exc}); "
                f"recover by truncating the file to the last valid line"
            ) from None
        if h != expected_hash:
            raise CheckpointError(
                f"{path}:{idx}: checkpoint belongs to a different configuration "
                f"({h} != {expected_hash}); use a fresh checkpoint path"
            )
        last_k = k
        if best_c >= 0:
            best = SearchRecord(
                config_hash=h,
                k=best_k,
                g=rec.get("best_g", 0),
                c=best_c,
                failing_prime=rec.get("best_failing_prime"),
                timestamp=rec.get("timestamp", 0.0),
            )
    return last_k, best


def sweep(
    cfg: SearchConfig,
    checkpoint_path: str | None = None,
    workers: int = 1,
    checkpoint_every: int = 16,
    checkpoint_seconds: float = 30.0,
    resume: bool = True,
) -> SearchRecord:
    """Run the k-sweep, maintaining the best record (max streak, ties to the
    smallest k), appending a checkpoint line every `checkpoint_every`
    completed k values or every `checkpoint_seconds`, whichever comes first.
    Results are merged in ascending k regardless of worker count, so any
    worker count produces the identical best record.  With `resume`, an
    existing checkpoint for the same configuration is continued.
    """
    cfg.validate()
    h = config_hash(cfg)
    start_k = cfg.k_lo
    best: SearchRecord | None = None
    if checkpoint_path and resume:
        last_k, best = _read_checkpoint(checkpoint_path, h)
        if last_k >= cfg.k_lo:
            start_k = last_k + 1

    def results_in_order():
        # sequential: one shared prime stream, results interleave with writes;
        # pooled: ascending chunks, consumed lazily in submission order
        if start_k > cfg.k_hi:
            return
        if workers <= 1 or cfg.k_hi - start_k < 8:
            f = candidate_poly(cfg)
            stream = PrimeValueStream(f)
            for k in range(start_k, cfg.k_hi + 1):
                g = k * k * cfg.g_base
                if not is_valid_base(g) or g == 0:
                    continue
                res = streak(f, g, cfg.n_cap, stream=stream)
                yield k, res.count, res.failing_prime
        else:
            chunk = max(1, (cfg.k_hi - start_k + workers) // workers)
            jobs = [
                (cfg, lo, min(lo + chunk - 1, cfg.k_hi))
                for lo in range(start_k, cfg.k_hi + 1, chunk)
            ]
            with ProcessPoolExecutor(max_workers=workers) as pool:
                for part in pool.map(_sweep_chunk, jobs):
                    yield from part

    fh = open(checkpoint_path, "a", encoding="utf-8") if checkpoint_path else None
    since_write = 0
    last_write = time.monotonic()
    last_result: tuple[int, int, int | None] | None = None

    def write_line(k, c):
        nonlocal since_write, last_write
        line = {
            "k": k,
            "c": c,
            "best_k": best.k,
            "best_c": best.c,
            "best_g": best.g,
            "best_failing_prime": best.failing_prime,
            "config_hash": h,
            "timestamp": time.time(),
        }
        fh.write(json.dumps(line) + "\n")
        fh.flush()
        since_write = 0
        last_write = time.monotonic()

    try:
        for k, c, failing in results_in_order():
            if best is None or c > best.c:
                best = SearchRecord(
                    config_hash=h,
                    k=k,
                    g=k * k * cfg.g_base,
                    c=c,
                    failing_prime=failing,
                    timestamp=time.time(),
                )
            last_result = (k, c, failing)
            since_write += 1
            if fh and (
                since_write >= checkpoint_every
                or time.monotonic() - last_write >= checkpoint_seconds
            ):
                write_line(k, c)
        if fh and since_write and last_result is not None:
            write_line(last_result[0], last_result[1])
    finally:
        if fh:
            fh.close()
    if best is None:
        raise ValueError("sweep produced no records (empty k range?)")
    return best
