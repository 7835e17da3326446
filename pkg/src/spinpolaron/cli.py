"""
Command-line front end.

    spinpolaron dispersion --band spinon --J 1 --S 0.5 --path G,K,M,G --n 100 --out band.csv
    spinpolaron summary --band holon --t 1 --tprime 0 --grid 48
    spinpolaron verify [--S 0.5] [--check su2]
    spinpolaron bz

Exit status: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
Without ``--out`` the result goes to ``$SPINPOLARON_OUTPUT_DIR/<command>.<ext>``
when that variable is set, and to stdout otherwise.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import textwrap
from pathlib import Path

from . import __version__
from .dispersion import HolonParams, SpinonParams, band_summary, sample_band
from .lattice import (
    KPath,
    KVector,
    high_symmetry_points,
    nn_vectors,
    nnn_vectors,
    reciprocal_basis,
)
from .verification import CHECK_NAMES, DEFAULT_SPINS, run_sweep

OUTPUT_DIR_ENV = "SPINPOLARON_OUTPUT_DIR"

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

_ALIASES = {"G": "G", "GAMMA": "G", "Γ": "G", "K": "K", "K2": "K2", "K'": "K2", "M": "M"}


class UsageError(Exception):
    pass


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def parse_path(spec: str) -> list[tuple[str, KVector]]:
    """``G,K,M,G`` style names (G, K, M, K2) or ``kx:ky`` pairs, comma separated."""
    table = high_symmetry_points()
    points = []
    for tok in (t.strip() for t in spec.split(",")):
        if not tok:
            raise UsageError(f"--path: empty waypoint in {spec!r}")
        name = _ALIASES.get(tok.upper(), _ALIASES.get(tok))
        if name is not None:
            points.append((name, table[name]))
            continue
        try:
            kx, ky = (float(v) for v in tok.split(":"))
            points.append((tok, KVector(kx, ky)))
        except ValueError:
            raise UsageError(f"--path: cannot parse waypoint {tok!r} (use G, K, M, K2 or kx:ky)") from None
    if len(points) < 2:
        raise UsageError("--path: need at least 2 waypoints")
    return points


def _finite(args, *names):
    for name in names:
        v = getattr(args, name)
        if v is not None and not math.isfinite(v):
            raise UsageError(f"--{name}: must be finite, got {v}")


def _params(args):
    _finite(args, "J", "S", "t", "tprime", "mu")
    if args.band == "spinon":
        if args.S <= 0:
            raise UsageError(f"--S: must be positive, got {args.S}")
        return SpinonParams(J=args.J, S=args.S)
    return HolonParams(t=args.t, t_prime=args.tprime, mu=args.mu)


def _params_dict(p) -> dict:
    if isinstance(p, SpinonParams):
        return {"J": p.J, "S": p.S, "z": p.z}
    return {"t": p.t, "t_prime": p.t_prime, "mu": p.mu}


def _json_float(x: float) -> str:
    if not math.isfinite(x):
        return json.dumps(x)
    text = fmt(x)
    return text if any(c in text for c in ".en") else text + ".0"


def _encode(obj, depth: int) -> str:
    # json.dumps always uses float.__repr__, so floats are written by hand
    pad, inner = "  " * depth, "  " * (depth + 1)
    if isinstance(obj, float):
        return _json_float(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = (f"{inner}{json.dumps(str(k), ensure_ascii=False)}: {_encode(v, depth + 1)}" for k, v in obj.items())
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        return "[\n" + ",\n".join(inner + _encode(v, depth + 1) for v in obj) + "\n" + pad + "]"
    return json.dumps(obj, ensure_ascii=False)


def _dumps(obj) -> str:
    """Indented JSON with floats at 17 significant digits."""
    return _encode(obj, 0) + "\n"


def _require_json(args):
    if args.format not in (None, "json"):
        raise UsageError(f"--format: {args.command} only writes json, got {args.format!r}")


# -- commands --------------------------------------------------------------


def cmd_dispersion(args) -> tuple[str, str]:
    params = _params(args)
    if args.n is None or args.n < 1:
        raise UsageError(f"--n: samples_per_segment must be a positive integer, got {args.n}")
    path = KPath(tuple(parse_path(args.path)), args.n)
    samples = sample_band(path, params)
    fmt_ = args.format or "csv"
    if fmt_ == "json":
        doc = {
            "band": args.band,
            "params": _params_dict(params),
            "path": [[n, list(k)] for n, k in path.waypoints],
            "samples": [
                {"arclength": s.arclength, "kx": s.k.kx, "ky": s.k.ky, "value": s.value} for s in samples
            ],
        }
        return _dumps(doc), "json"
    lines = [f"# band: {args.band}"]
    lines += [f"# {k}: {fmt(v)}" for k, v in _params_dict(params).items()]
    lines.append("# path: " + ",".join(n for n, _ in path.waypoints))
    lines.append(f"# samples_per_segment: {args.n}")
    lines.append("arclength,kx,ky,value")
    lines += [",".join(fmt(x) for x in (s.arclength, s.k.kx, s.k.ky, s.value)) for s in samples]
    return "\n".join(lines) + "\n", "csv"


def cmd_summary(args) -> tuple[str, str]:
    _require_json(args)
    params = _params(args)
    if args.grid < 8:
        raise UsageError(f"--grid: grid_resolution must be >= 8, got {args.grid}")
    s = band_summary(params, args.grid)
    doc = {
        "band": args.band,
        "params": _params_dict(params),
        "min": s.min_value,
        "max": s.max_value,
        "bandwidth": s.bandwidth,
        "argmin": list(s.argmin_k),
        "argmax": list(s.argmax_k),
        "grid_resolution": args.grid,
    }
    return _dumps(doc), "json"


def cmd_verify(args) -> tuple[str, str, bool]:
    _require_json(args)
    spins = tuple(args.S_list) if args.S_list else DEFAULT_SPINS
    for S in spins:
        if not math.isfinite(S) or S <= 0 or abs(2 * S - round(2 * S)) > 1e-12:
            raise UsageError(f"--S: must be a positive half-integer, got {S}")
    checks = args.check or None
    if checks:
        bad = [c for c in checks if c not in CHECK_NAMES]
        if bad:
            raise UsageError(f"--check: unknown check {bad[0]!r}; choose from {', '.join(CHECK_NAMES)}")
    reports = run_sweep(spins, checks)
    ok = all(r.passed for r in reports)
    return _dumps([r.to_dict() for r in reports]), "json", ok


def cmd_bz(args) -> tuple[str, str]:
    _require_json(args)
    doc = {
        "nn_vectors": [list(v) for v in nn_vectors().vectors],
        "nnn_vectors": [list(v) for v in nnn_vectors().vectors],
        "reciprocal_basis": [list(b) for b in reciprocal_basis()],
        "high_symmetry_points": {n: list(k) for n, k in high_symmetry_points().items()},
    }
    return _dumps(doc), "json"


PLOT_TEMPLATE = '''"""Plot {band} band from {csv}."""
import numpy as np
import matplotlib.pyplot as plt

data = np.loadtxt({csv!r}, delimiter=",", comments="#", skiprows=1)
fig, ax = plt.subplots(figsize=(5, 3.5))
ax.plot(data[:, 0], data[:, 3], lw=1.5)
ax.set_xlabel("arclength along path")
ax.set_ylabel("{band} energy")
ax.set_xlim(data[0, 0], data[-1, 0])
fig.tight_layout()
fig.savefig({png!r}, dpi=150)
'''


# -- plumbing --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output file (default: stdout or $%s)" % OUTPUT_DIR_ENV)
    common.add_argument("--format", choices=("csv", "json"), help="dispersion defaults to csv, others write json")

    model = argparse.ArgumentParser(add_help=False)
    model.add_argument("--band", choices=("spinon", "holon"), default="spinon", help="default: spinon")
    model.add_argument("--J", type=float, default=1.0, help="exchange coupling (spinon)")
    model.add_argument("--S", type=float, default=0.5, help="spin length (spinon)")
    model.add_argument("--t", type=float, default=1.0, help="NN hopping (holon)")
    model.add_argument("--tprime", type=float, default=0.0, help="NNN hopping (holon)")
    model.add_argument("--mu", type=float, default=0.0, help="energy offset (holon)")

    p = argparse.ArgumentParser(
        prog="spinpolaron",
        description=textwrap.dedent(__doc__.split("\n\n")[1]).strip(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("dispersion", parents=[common, model], help="sample a band along a k-path")
    d.add_argument("--path", default="G,K,M,G", help="waypoints: G, K, M, K2 or kx:ky (default: G,K,M,G)")
    d.add_argument("--n", type=int, default=100, help="samples per path segment")
    d.add_argument("--plot-script", help="also write a matplotlib script plotting the CSV")

    s = sub.add_parser("summary", parents=[common, model], help="band extrema and bandwidth")
    s.add_argument("--grid", type=int, default=48, help="grid resolution per reciprocal axis")

    v = sub.add_parser("verify", parents=[common], help="run the operator identity checks")
    v.add_argument("--S", dest="S_list", type=float, action="append", help="restrict the sweep (repeatable)")
    v.add_argument("--check", action="append", help=f"one of: {', '.join(CHECK_NAMES)} (repeatable)")

    sub.add_parser("bz", parents=[common], help="neighbor shells and high-symmetry points")
    return p


def _destination(args, ext: str) -> Path | None:
    if args.out:
        return Path(args.out)
    env = os.environ.get(OUTPUT_DIR_ENV)
    if env:
        return Path(env) / f"{args.command}.{ext}"
    return None


def _write(path: Path, text: str):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    ok = True
    try:
        if args.command == "dispersion":
            text, ext = cmd_dispersion(args)
        elif args.command == "summary":
            text, ext = cmd_summary(args)
        elif args.command == "verify":
            text, ext, ok = cmd_verify(args)
        else:
            text, ext = cmd_bz(args)
        dest = _destination(args, ext)
        if getattr(args, "plot_script", None) and (dest is None or ext != "csv"):
            raise UsageError("--plot-script: needs --out (or the output directory variable) and csv format")
    except UsageError as exc:
        print(f"spinpolaron {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        if dest is None:
            sys.stdout.write(text)
        else:
            _write(dest, text)
        if getattr(args, "plot_script", None):
            png = str(Path(dest).with_suffix(".png"))
            _write(Path(args.plot_script), PLOT_TEMPLATE.format(band=args.band, csv=str(dest), png=png))
    except OSError as exc:
        which = "--plot-script" if dest is not None and Path(exc.filename or "") != dest else "--out"
        print(f"spinpolaron {args.command}: error: {which}: cannot write {exc.filename}: {exc.strerror}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK if ok else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
