"""Command-line pipeline: distributions, factoring runs, verification, export.

Subcommands: dist, factor, verify, phase, oracle. Exit codes: 0 success,
1 invalid arguments, 2 verification failure, 3 factoring failure after
max-trials. All sampling is driven by one seeded generator so a given
config is byte-for-byte reproducible.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import oracles, phasespace, quantum, semiclassical, verify
from .numtheory import (
    PeriodResult,
    continued_fraction_candidates,
    convergent_is_close,
    extract_factors,
    mod_exp,
)

MODES = ("quantum", "semi-paper", "semi-strict")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_FACTOR = 3


class CliError(ValueError):
    """Invalid arguments or inputs; maps to exit code 1."""


@dataclass
class RunConfig:
    """Everything one subcommand invocation depends on."""

    command: str
    N: Optional[int] = None
    x: Optional[int] = None
    l: Optional[int] = None
    k: Optional[int] = None
    mode: str = "quantum"
    seed: int = 0
    max_trials: int = 50
    out_path: Optional[str] = None
    format: str = "csv"
    extra: dict = field(default_factory=dict)


def default_register_width(N: int) -> int:
    """Smallest l with 2**l >= N**2, the standard period-finding width."""
    l = 1
    while (1 << l) < N * N:
        l += 1
    return l


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_power_base(n: int) -> Optional[int]:
    """The prime p if n = p**k for some k >= 1, else None."""
    for k in range(1, n.bit_length() + 1):
        r = round(n ** (1.0 / k))
        for cand in (r - 1, r, r + 1):
            if cand > 1 and cand**k == n and _is_prime(cand):
                return cand
    return None


def validate_factor_target(N: int) -> None:
    if N < 4 or N % 2 == 0:
        raise CliError(f"N = {N} must be odd and composite")
    if _is_prime(N):
        raise CliError(f"N = {N} is prime")
    if _prime_power_base(N) is not None:
        raise CliError(f"N = {N} is a prime power")


def pick_coprime_x(N: int, rng: np.random.Generator) -> int:
    """A uniform random x in (1, N); may share a factor (the lucky case)."""
    return int(rng.integers(2, N))


def compute_distribution(
    mode: str, N: int, x: int, l: int, k: Optional[int]
) -> quantum.DistributionTable:
    if mode == "quantum":
        return quantum.quantum_distribution(N, x, l, k=k)
    if mode == "semi-paper":
        params = semiclassical.SemiclassicalParams(mode=semiclassical.PAPER_FORMULA)
    elif mode == "semi-strict":
        params = semiclassical.SemiclassicalParams(mode=semiclassical.STRICT_INTEGRAL)
    else:
        raise CliError(f"unknown mode {mode!r}")
    return semiclassical.semiclassical_distribution(N, x, l, params, k=k)


def factor_pipeline(
    N: int,
    x: int,
    l: int,
    mode: str,
    seed: int,
    max_trials: int,
    dist: Optional[quantum.DistributionTable] = None,
) -> dict:
    """Sample the marginal distribution, recover a period, split N.

    Each trial draws one c_hat, expands c_hat/q in continued fractions,
    keeps convergents passing the closeness test, and tries each candidate
    period and its small multiples against x**L = 1 (mod N) before the
    gcd split. Deterministic given the seed.
    """
    q = 1 << l
    rng = np.random.default_rng(seed)
    g = math.gcd(x, N)
    if g != 1:
        return {
            "N": N, "x": x, "l": l, "q": q, "mode": mode, "seed": seed,
            "trials": 0, "max_trials": max_trials, "measured_c": [],
            "recovered_L": None, "factors": sorted((g, N // g)),
            "succeeded": True, "lucky_gcd": g,
        }
    if dist is None:
        dist = compute_distribution(mode, N, x, l, k=None)
    p = dist.normalized
    measured: list[int] = []
    for trial in range(1, max_trials + 1):
        c_hat = int(rng.choice(q, p=p))
        measured.append(c_hat)
        for d, Lc in continued_fraction_candidates(c_hat, q, N):
            if Lc < 1 or not convergent_is_close(c_hat, q, d, Lc):
                continue
            for mult in range(1, 5):
                Lm = mult * Lc
                if Lm >= N or mod_exp(x, Lm, N) != 1:
                    continue
                split = extract_factors(x, Lm, N)
                if split.factors is not None:
                    result = PeriodResult(
                        candidate_L=Lm, convergent_d=d, accepted=True,
                        factors=split.factors,
                    )
                    return {
                        "N": N, "x": x, "l": l, "q": q, "mode": mode,
                        "seed": seed, "trials": trial,
                        "max_trials": max_trials, "measured_c": measured,
                        "recovered_L": result.candidate_L,
                        "factors": sorted(result.factors),
                        "succeeded": True, "lucky_gcd": None,
                    }
    return {
        "N": N, "x": x, "l": l, "q": q, "mode": mode, "seed": seed,
        "trials": max_trials, "max_trials": max_trials,
        "measured_c": measured, "recovered_L": None, "factors": None,
        "succeeded": False, "lucky_gcd": None,
    }


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _write(text: str, out_path: Optional[str]) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w") as fh:
            fh.write(text)


def dist_csv(dist: quantum.DistributionTable) -> str:
    k_txt = "marginal" if dist.k is None else str(dist.k)
    lines = [
        f"# q={dist.q} N={dist.N} x={dist.x} L={dist.L} k={k_txt} mode={dist.mode}",
        "c_hat,probability,normalized_probability,is_good_c",
    ]
    norm = dist.normalized
    for c in range(dist.q):
        lines.append(
            f"{c},{_fmt(dist.probability[c])},{_fmt(norm[c])},"
            f"{1 if dist.is_good_c[c] else 0}"
        )
    return "\n".join(lines) + "\n"


def dist_json(dist: quantum.DistributionTable) -> str:
    norm = dist.normalized
    doc = {
        "q": dist.q, "N": dist.N, "x": dist.x, "L": dist.L,
        "k": dist.k, "mode": dist.mode,
        "rows": [
            {
                "c_hat": c,
                "probability": float(dist.probability[c]),
                "normalized_probability": float(norm[c]),
                "is_good_c": bool(dist.is_good_c[c]),
            }
            for c in range(dist.q)
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def cmd_dist(cfg: RunConfig) -> int:
    N, x = cfg.N, cfg.x
    rng = np.random.default_rng(cfg.seed)
    if x is None:
        x = pick_coprime_x(N, rng)
        while math.gcd(x, N) != 1:
            x = pick_coprime_x(N, rng)
    l = cfg.l if cfg.l is not None else default_register_width(N)
    if (1 << l) < N:
        raise CliError(f"2**l = {1 << l} must be >= N = {N}")
    if math.gcd(x, N) != 1:
        raise CliError(f"x = {x} shares factor {math.gcd(x, N)} with N = {N}")
    dist = compute_distribution(cfg.mode, N, x, l, cfg.k)
    text = dist_json(dist) if cfg.format == "json" else dist_csv(dist)
    _write(text, cfg.out_path)
    return EXIT_OK


def cmd_factor(cfg: RunConfig) -> int:
    validate_factor_target(cfg.N)
    rng = np.random.default_rng(cfg.seed)
    x = cfg.x
    if x is None:
        x = pick_coprime_x(cfg.N, rng)
    elif not 1 < x < cfg.N:
        raise CliError(f"x must lie in (1, {cfg.N})")
    l = cfg.l if cfg.l is not None else default_register_width(cfg.N)
    if (1 << l) < cfg.N:
        raise CliError(f"2**l = {1 << l} must be >= N = {cfg.N}")
    report = factor_pipeline(cfg.N, x, l, cfg.mode, cfg.seed, cfg.max_trials)
    _write(json.dumps(report, indent=2, sort_keys=True) + "\n", cfg.out_path)
    return EXIT_OK if report["succeeded"] else EXIT_FACTOR


def cmd_verify(suite: str, tol: Optional[float]) -> int:
    try:
        results = verify.run_suite(suite)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    all_pass = True
    for r in results:
        threshold = tol if tol is not None else r.tol
        ok = r.error <= threshold
        all_pass = all_pass and ok
        print(
            f"{'PASS' if ok else 'FAIL'} {r.name}: "
            f"error={r.error:.3e} tol={threshold:.3e}"
        )
    print(f"{'OK' if all_pass else 'FAILED'} suite={suite} checks={len(results)}")
    return EXIT_OK if all_pass else EXIT_VERIFY


def cmd_phase(lambda0: str, dphi: float, steps: int, out_path: Optional[str]) -> int:
    try:
        lam0 = complex(lambda0.replace(" ", ""))
    except ValueError as exc:
        raise CliError(f"cannot parse lambda0 {lambda0!r}") from exc
    if steps < 1:
        raise CliError("steps must be >= 1")
    try:
        traj = phasespace.evolve(lam0, dphi * steps, steps)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    lines = [
        f"# lambda0={_fmt(lam0.real)}{lam0.imag:+.17g}j dphi={_fmt(dphi)} steps={steps}",
        ",".join(phasespace.TRAJECTORY_COLUMNS),
    ]
    for row in phasespace.trajectory_rows(traj):
        lines.append(",".join([str(int(row[0]))] + [_fmt(v) for v in row[1:]]))
    _write("\n".join(lines) + "\n", out_path)
    return EXIT_OK


def cmd_oracle() -> int:
    """First-principles checks with max-abs-error, independent of verify."""
    checks: list[tuple[str, float, float]] = []
    checks.append(("radial-moment-m0", abs(oracles.radial_moment(0) - 1 / 6), 1e-9))
    checks.append(("radial-moment-m1", abs(oracles.radial_moment(1) - 1 / 12), 1e-9))
    checks.append(("radial-moment-m2", abs(oracles.radial_moment(2) - 1 / 6), 1e-9))

    worst = 0.0
    for a in range(4):
        for c in range(4):
            for b in range(4):
                for d in range(4):
                    worst = max(
                        worst,
                        abs(
                            semiclassical.integral_I(a, c, b, d, 2)
                            - oracles.quadrature_integral_I(a, c, b, d, 2)
                        ),
                    )
    checks.append(("integral-grid-l2", worst, 1e-8))

    U2 = quantum.apply_gate_string(2)
    checks.append(
        (
            "trace-quadrature-l2",
            abs(oracles.quadrature_trace(U2, 2) - (1j - 1.0) / 2.0),
            1e-6,
        )
    )

    brute = oracles.brute_semistate(3, 2, 2, mode=semiclassical.STRICT_INTEGRAL)
    fast = semiclassical.semistate(
        3, 2, 2, semiclassical.SemiclassicalParams(mode=semiclassical.STRICT_INTEGRAL)
    )
    checks.append(
        ("semistate-strict-brute-vs-fast-l2", float(np.abs(brute.amp - fast.amp).max()), 1e-10)
    )

    all_pass = True
    for name, err, tol in checks:
        ok = err <= tol
        all_pass = all_pass and ok
        print(f"{'PASS' if ok else 'FAIL'} {name}: error={err:.3e} tol={tol:.3e}")
    print(f"{'OK' if all_pass else 'FAILED'} oracle checks={len(checks)}")
    return EXIT_OK if all_pass else EXIT_VERIFY


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 on bad usage, not argparse's default 2
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="semishor", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_dist = sub.add_parser("dist", help="write a probability distribution table")
    p_dist.add_argument("--N", type=int, required=True)
    p_dist.add_argument("--x", type=int)
    p_dist.add_argument("--l", type=int)
    p_dist.add_argument("--k", type=int, default=1, help="residue class (fixed-k rows)")
    p_dist.add_argument("--marginal", action="store_true", help="sum over residue classes")
    p_dist.add_argument("--mode", choices=MODES, default="quantum")
    p_dist.add_argument("--seed", type=int, default=0)
    p_dist.add_argument("--out")
    p_dist.add_argument("--format", choices=("csv", "json"), default="csv")

    p_fac = sub.add_parser("factor", help="sample measurements and factor N")
    p_fac.add_argument("--N", type=int, required=True)
    p_fac.add_argument("--x", type=int)
    p_fac.add_argument("--l", type=int)
    p_fac.add_argument("--mode", choices=MODES, default="quantum")
    p_fac.add_argument("--seed", type=int, default=0)
    p_fac.add_argument("--max-trials", type=int, default=50)
    p_fac.add_argument("--out")

    p_ver = sub.add_parser("verify", help="run an invariant suite")
    p_ver.add_argument("--suite", choices=verify.SUITES, default="all")
    p_ver.add_argument("--tol", type=float)

    p_ph = sub.add_parser("phase", help="export a precession trajectory")
    p_ph.add_argument("--lambda0", default="1")
    p_ph.add_argument("--dphi", type=float, default=math.pi / 200.0)
    p_ph.add_argument("--steps", type=int, default=400)
    p_ph.add_argument("--out")

    sub.add_parser("oracle", help="run the brute-force ground-truth report")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "dist":
            cfg = RunConfig(
                command="dist", N=args.N, x=args.x, l=args.l,
                k=None if args.marginal else args.k, mode=args.mode,
                seed=args.seed, out_path=args.out, format=args.format,
            )
            if cfg.N is None or cfg.N < 2:
                raise CliError("N must be an integer >= 2")
            return cmd_dist(cfg)
        if args.command == "factor":
            cfg = RunConfig(
                command="factor", N=args.N, x=args.x, l=args.l,
                mode=args.mode, seed=args.seed, max_trials=args.max_trials,
                out_path=args.out,
            )
            if cfg.max_trials < 1:
                raise CliError("max-trials must be >= 1")
            return cmd_factor(cfg)
        if args.command == "verify":
            return cmd_verify(args.suite, args.tol)
        if args.command == "phase":
            return cmd_phase(args.lambda0, args.dphi, args.steps, args.out)
        if args.command == "oracle":
            return cmd_oracle()
        raise CliError(f"unknown command {args.command!r}")
    except CliError as exc:
        print(f"semishor: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"semishor: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
