"""Command-line front end.

Four subcommands:

    bounds  REGION.json       sharp bounds on the integral of any Wigner
                              function over the region
    curves  [--a-min ...]     eigenvalue curves and envelopes of the
                              centered disk family, TSV on stdout
    wigner  STATE --out CSV   Wigner function of a state on a phase grid
    check   CSV REGION.json   test a measured quasiprobability grid
                              against the region's bounds

Exit codes: 0 success (check: within bounds), 1 bound violation,
2 usage or data error.  Report numbers carry 9 significant digits;
grid and curve data files carry full precision so they round-trip.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from .kernels import DEFAULT_POINTS_PER_UNIT, assemble, default_window
from .regions import Annulus, Disk, Ellipse, Region, area, load_region, reduce_ellipse
from .spectra import (
    SpectrumResult,
    annulus_envelope,
    disk_eigenvalue,
    disk_envelope,
    extremal_eigenvalues,
)
from .states import Ensemble, WavefunctionGrid, coherent_state, normalize, oscillator_state, read_state_csv
from .wigner import mixed_wigner, quasiprobability, read_wigner_csv, wigner_transform, write_wigner_csv

__all__ = [
    "CheckReport",
    "cmd_bounds",
    "cmd_check",
    "cmd_curves",
    "cmd_wigner",
    "entrypoint",
    "main",
]

STATE_DX = 0.01


def _fmt(x: float) -> str:
    return "%.9g" % float(x)


@dataclass(frozen=True)
class CheckReport:
    """Verdict of a measured quasiprobability value against the bounds."""

    q_value: float
    lambda_min: float
    lambda_max: float
    area_bound: float
    verdict: str
    margin: float

    def __post_init__(self):
        ok = {
            "within": self.lambda_min - self.margin
            <= self.q_value
            <= self.lambda_max + self.margin,
            "below_min": self.q_value < self.lambda_min - self.margin,
            "above_max": self.q_value > self.lambda_max + self.margin,
        }
        if self.verdict not in ok:
            raise ValueError("verdict must be within, below_min or above_max")
        if not ok[self.verdict]:
            raise ValueError("verdict inconsistent with q_value and margin")


def _exact_route(s: Region, n_max: int | None) -> SpectrumResult | None:
    if isinstance(s, Disk):
        return disk_envelope(s.radius, n_max)
    if isinstance(s, Ellipse):
        radius, _ = reduce_ellipse(s)
        return disk_envelope(radius, n_max)
    if isinstance(s, Annulus):
        return annulus_envelope(s.r_inner, s.r_outer, n_max)
    return None


def _numeric_route(s: Region, window, grid_count) -> SpectrumResult:
    if isinstance(s, Ellipse):
        # the discretized route has no direct ellipse kernel either
        radius, _ = reduce_ellipse(s)
        s = Disk(center=(0.0, 0.0), radius=radius)
    if window is None and grid_count is None:
        return extremal_eigenvalues(assemble(s))
    if window is not None:
        lo, hi = float(window[0]), float(window[1])
        if not lo < hi:
            raise ValueError("window must be LO HI with LO < HI")
    else:
        x0, dx, count = default_window(s)
        lo, hi = x0, x0 + dx * (count - 1)
    n = grid_count if grid_count is not None else int(
        round((hi - lo) * DEFAULT_POINTS_PER_UNIT)
    ) + 1
    if n < 2:
        raise ValueError("grid count must be at least 2")
    return extremal_eigenvalues(assemble(s, lo, (hi - lo) / (n - 1), n))


def cmd_bounds(args) -> int:
    s = load_region(args.region)
    res = None
    if not args.numeric:
        res = _exact_route(s, args.nmax)
    if res is None:
        if args.exact:
            raise ValueError("no exact route for this region shape; drop --exact")
        res = _numeric_route(s, args.window, args.grid_count)
    for note in res.warnings:
        print("warning: %s" % note, file=sys.stderr)
    line = "lambda_min=%s lambda_max=%s method=%s" % (
        _fmt(res.lambda_min),
        _fmt(res.lambda_max),
        res.method,
    )
    if res.method == "nystrom":
        line += " residual=%s" % _fmt(res.residual)
    print(line)
    return 0


def cmd_curves(args) -> int:
    if args.a_min < 0 or not args.a_min < args.a_max or args.steps < 2:
        raise ValueError("need 0 <= a-min < a-max and steps >= 2")
    if args.n_max < 0:
        raise ValueError("n-max must be nonnegative")
    header = ["a"]
    header += ["lambda%d" % n for n in range(args.n_max + 1)]
    header += ["lambda_min", "lambda_max", "n_min"]
    print("\t".join(header))
    grid = np.linspace(args.a_min, args.a_max, args.steps)
    for a in grid:
        env = disk_envelope(float(a))
        row = [a] + [disk_eigenvalue(n, float(a)) for n in range(args.n_max + 1)]
        row += [env.lambda_min, env.lambda_max]
        cells = ["%.17g" % v for v in row] + ["%d" % env.n_min]
        print("\t".join(cells))
    return 0


def _half_width(kind: str, params) -> float:
    if kind == "oscillator":
        return math.sqrt(2.0 * params + 1.0) + 4.5
    return abs(params[0]) + 8.5


def _split_state(spec: str) -> tuple[str, object]:
    kind, _, rest = spec.partition(":")
    if kind == "oscillator":
        try:
            return kind, int(rest)
        except ValueError:
            raise ValueError("bad state spec: oscillator:n needs an integer") from None
    if kind == "coherent":
        parts = rest.split(",")
        if len(parts) != 2:
            raise ValueError("bad state spec: coherent:q0,p0 needs two numbers")
        try:
            return kind, (float(parts[0]), float(parts[1]))
        except ValueError:
            raise ValueError("bad state spec: coherent:q0,p0 needs two numbers") from None
    if kind == "csv":
        if not rest:
            raise ValueError("bad state spec: csv: needs a path")
        return kind, rest
    raise ValueError(
        "bad state spec: %r (want oscillator:n, coherent:q0,p0, csv:path or mix:...)"
        % spec
    )


def _build_state(spec: str, qlo: float, qhi: float):
    """One WavefunctionGrid, or an Ensemble for mix: specs.

    mix syntax is 'mix:W SPEC + W SPEC + ...', e.g.
    'mix:0.5 oscillator:0 + 0.5 oscillator:1'.  Members share a common
    grid sized for the widest of them; CSV members dictate their own
    grid and are normalized on load.
    """
    if spec.startswith("mix:"):
        terms = []
        for chunk in spec[4:].split("+"):
            halves = chunk.strip().split(None, 1)
            if len(halves) != 2:
                raise ValueError("bad state spec: mix terms look like '0.5 oscillator:1'")
            try:
                weight = float(halves[0])
            except ValueError:
                raise ValueError("bad state spec: mix weight %r" % halves[0]) from None
            if halves[1].startswith("mix:"):
                raise ValueError("bad state spec: mix terms cannot nest")
            terms.append((weight, _split_state(halves[1].strip())))
    else:
        terms = [(1.0, _split_state(spec))]

    grid = None
    for _, (kind, params) in terms:
        if kind == "csv":
            ref = read_state_csv(params)
            grid = (ref.x0, ref.dx, len(ref))
            break
    if grid is None:
        half = max(8.0, abs(qlo), abs(qhi))
        for _, (kind, params) in terms:
            half = max(half, _half_width(kind, params))
        count = 2 * int(math.ceil(half / STATE_DX - 1e-9)) + 1
        grid = (-STATE_DX * (count // 2), STATE_DX, count)

    members = []
    for _, (kind, params) in terms:
        if kind == "oscillator":
            members.append(oscillator_state(params, *grid))
        elif kind == "coherent":
            members.append(coherent_state(params[0], params[1], *grid))
        else:
            members.append(normalize(read_state_csv(params)))
    if len(members) == 1:
        return members[0]
    return Ensemble(np.array([w for w, _ in terms]), tuple(members))


def _phase_axis(lo: float, hi: float, step: float, label: str) -> np.ndarray:
    if step <= 0 or not lo < hi:
        raise ValueError("%s grid needs min < max and a positive step" % label)
    n = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(n)


def cmd_wigner(args) -> int:
    qs = _phase_axis(args.q_min, args.q_max, args.dq, "q")
    ps = _phase_axis(args.p_min, args.p_max, args.dp, "p")
    state = _build_state(args.state, args.q_min, args.q_max)
    if isinstance(state, Ensemble):
        w = mixed_wigner(state, qs, ps)
    else:
        w = wigner_transform(state, qs, ps)
    write_wigner_csv(w, args.out)
    return 0


def cmd_check(args) -> int:
    w = read_wigner_csv(args.wigner_csv)
    s = load_region(args.region)
    q_value = quasiprobability(w, s, uncovered_tol=0.0)
    res = _exact_route(s, None)
    if res is None:
        res = _numeric_route(s, None, None)
    for note in res.warnings:
        print("warning: %s" % note, file=sys.stderr)
    margin = 2.0 * w.dq * w.dp + args.margin
    if q_value < res.lambda_min - margin:
        verdict = "below_min"
    elif q_value > res.lambda_max + margin:
        verdict = "above_max"
    else:
        verdict = "within"
    report = CheckReport(
        q_value=q_value,
        lambda_min=res.lambda_min,
        lambda_max=res.lambda_max,
        area_bound=area(s) / math.pi,
        verdict=verdict,
        margin=margin,
    )
    print(
        json.dumps(
            {
                "q_value": float(_fmt(report.q_value)),
                "lambda_min": float(_fmt(report.lambda_min)),
                "lambda_max": float(_fmt(report.lambda_max)),
                "area_bound": float(_fmt(report.area_bound)),
                "verdict": report.verdict,
                "margin": float(_fmt(report.margin)),
            }
        )
    )
    return 0 if verdict == "within" else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="wigner-bounds",
        description="Sharp bounds on Wigner-function integrals over phase-plane regions.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bounds", help="bounds for a region JSON file")
    b.add_argument("region", help="region JSON file")
    b.add_argument("--grid-count", type=int, help="number of grid points for the discretized kernel")
    b.add_argument("--window", type=float, nargs=2, metavar=("LO", "HI"), help="grid window for the discretized kernel")
    b.add_argument("--nmax", type=int, help="eigenvalue scan cutoff on the exact route")
    route = b.add_mutually_exclusive_group()
    route.add_argument("--exact", action="store_true", help="require the closed-form route")
    route.add_argument("--numeric", action="store_true", help="force the discretized route")
    b.set_defaults(func=cmd_bounds)

    c = sub.add_parser("curves", help="disk eigenvalue curves as TSV on stdout")
    c.add_argument("--a-min", type=float, default=0.0)
    c.add_argument("--a-max", type=float, default=3.0)
    c.add_argument("--steps", type=int, default=301)
    c.add_argument("--n-max", type=int, default=3, help="highest individual curve column")
    c.set_defaults(func=cmd_curves)

    w = sub.add_parser("wigner", help="Wigner function of a state as CSV")
    w.add_argument(
        "state",
        help="oscillator:n | coherent:q0,p0 | csv:path | 'mix:0.5 oscillator:0 + 0.5 oscillator:1'",
    )
    w.add_argument("--q-min", type=float, default=-4.0)
    w.add_argument("--q-max", type=float, default=4.0)
    w.add_argument("--dq", type=float, default=0.05)
    w.add_argument("--p-min", type=float, default=-4.0)
    w.add_argument("--p-max", type=float, default=4.0)
    w.add_argument("--dp", type=float, default=0.05)
    w.add_argument("--out", required=True, help="output CSV path")
    w.set_defaults(func=cmd_wigner)

    k = sub.add_parser("check", help="check a Wigner CSV against a region's bounds")
    k.add_argument("wigner_csv", help="grid written by the wigner subcommand or compatible")
    k.add_argument("region", help="region JSON file")
    k.add_argument(
        "--margin",
        type=float,
        default=0.0,
        help="extra noise allowance added to the 2*dq*dp discretization margin",
    )
    k.set_defaults(func=cmd_check)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, RuntimeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())
