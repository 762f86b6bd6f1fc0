"""Command-line driver: ``qbif <command> [flags]``.

Settings come from built-in defaults, then ``QBIF_PRECISION_BITS`` (default
precision only), then a flat ``key = value`` file given by ``--config``,
then command-line flags.  Reports are JSON on stdout unless ``--out`` names
a file; render commands write a PPM to ``--out`` and the JSON to stdout.

Exit status: 0 success, 2 invalid arguments, 3 numeric failure.
"""
from __future__ import annotations

import argparse
import os
import sys

from . import report_io
from .bif_bounds import (BoundsConfig, combine_bounds, discriminant_upper_bound, maximize_rho,
                         mandelbrot_distance, scan_discriminant)
from .errors import (DegreeBoundExceeded, InsufficientData, InvalidArgument, NotFound, NumericFailure,
                     ResourceLimitError)
from .escape_stats import classify_connectedness, estimate_T, tail_fit
from .noise import DiskLaw, StreamSeed, realize_sequence
from .poly_algebra import DEFAULT_PREC
from .render import render_parameter_overlay, render_random_julia

COMMANDS = ("bounds", "scan", "estimate-t", "hist", "classify", "render-julia",
            "render-overlay", "rho-max")
EXIT_OK, EXIT_INVALID, EXIT_NUMERIC = 0, 2, 3
PRECISION_ENV = "QBIF_PRECISION_BITS"

DEFAULTS = {
    "center": "0", "radius": 0.0, "seed": 42, "stream": 0, "samples": 10_000,
    "horizon": 10_000, "precision": DEFAULT_PREC, "z0": "0", "N": 4, "k": 6, "tuple": None,
    "width": 256, "height": 256, "viewport": "-2,2,-2,2", "radii": "", "out": None,
    "csv": None, "full": False, "workers": 1, "max_period": 3, "snap_tol": 1e-9,
}
TYPES = {"radius": float, "seed": int, "stream": int, "samples": int, "horizon": int,
         "precision": int, "N": int, "k": int, "width": int, "height": int,
         "workers": int, "max_period": int, "snap_tol": float}


class UsageError(InvalidArgument):
    pass


def parse_complex(text: str) -> complex:
    """'RE' or 'RE,IM'."""
    parts = [p.strip() for p in str(text).split(",")]
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise UsageError(f"malformed complex literal {text!r}; use RE or RE,IM")


def parse_floats(text, count=None) -> list:
    if text in (None, ""):
        return []
    try:
        vals = [float(p) for p in str(text).split(",")]
    except ValueError:
        raise UsageError(f"malformed number list {text!r}") from None
    if count is not None and len(vals) != count:
        raise UsageError(f"expected {count} numbers, got {text!r}")
    return vals


def parse_ints(text) -> tuple:
    try:
        return tuple(int(p) for p in str(text).split(","))
    except ValueError:
        raise UsageError(f"malformed integer list {text!r}") from None


def read_config_file(path: str) -> dict:
    """Flat ``key = value`` lines; '#' starts a comment; keys mirror flag names."""
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from None
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{n}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in DEFAULTS:
            raise UsageError(f"{path}:{n}: unknown key {key!r}")
        out[key] = value
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qbif", description="Bifurcation-radius bounds and random Julia sets for z^2 + c_n.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--config", help="flat key = value file; flags override it")
    ap.add_argument("--center", help="complex literal RE or RE,IM")
    ap.add_argument("--radius", help="noise radius r")
    ap.add_argument("--seed", help="master seed")
    ap.add_argument("--stream", help="first stream index")
    ap.add_argument("--samples")
    ap.add_argument("--horizon")
    ap.add_argument("--precision", help="working precision in bits")
    ap.add_argument("--z0", help="initial point for estimate-t")
    ap.add_argument("--N")
    ap.add_argument("--k")
    ap.add_argument("--tuple", help="comma-separated exponents p_1,...,p_N (scan: single tuple)")
    ap.add_argument("--width")
    ap.add_argument("--height")
    ap.add_argument("--viewport", help="xmin,xmax,ymin,ymax")
    ap.add_argument("--radii", help="comma-separated circle radii for render-overlay")
    ap.add_argument("--out", help="JSON report path, or image path for render commands")
    ap.add_argument("--csv", help="histogram CSV path for hist")
    ap.add_argument("--full", action="store_const", const="true", help="scan all tuples without symmetry reduction")
    ap.add_argument("--workers")
    ap.add_argument("--max-period", dest="max_period")
    ap.add_argument("--snap-tol", dest="snap_tol")
    return ap


def resolve_config(args: argparse.Namespace, environ=os.environ) -> dict:
    cfg = dict(DEFAULTS)
    if environ.get(PRECISION_ENV):
        cfg["precision"] = environ[PRECISION_ENV]
    if args.config:
        cfg.update(read_config_file(args.config))
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            cfg[key] = value
    for key, kind in TYPES.items():
        try:
            cfg[key] = kind(cfg[key])
        except (TypeError, ValueError):
            raise UsageError(f"invalid value for {key}: {cfg[key]!r}") from None
    cfg["full"] = str(cfg["full"]).lower() in ("1", "true", "yes")
    cfg["center"] = parse_complex(cfg["center"])
    cfg["z0"] = parse_complex(cfg["z0"])
    if cfg["precision"] < 53:
        raise UsageError("precision must be at least 53 bits")
    if cfg["samples"] < 1 or cfg["horizon"] < 1:
        raise UsageError("samples and horizon must be >= 1")
    if cfg["radius"] < 0:
        raise UsageError("radius must be >= 0")
    return cfg


def _echo(cfg: dict) -> dict:
    out = dict(cfg)
    out["center"] = report_io.encode_complex(cfg["center"])
    out["z0"] = report_io.encode_complex(cfg["z0"])
    return out


def _law(cfg):
    return DiskLaw(cfg["center"], cfg["radius"])


def _seed(cfg):
    return StreamSeed(cfg["seed"], cfg["stream"])


def execute(command: str, cfg: dict):
    """Run one command; returns (result, certificates, artifact bytes or None)."""
    prec = cfg["precision"]
    if command == "bounds":
        rep = combine_bounds(cfg["center"], BoundsConfig(max_period=cfg["max_period"],
                                                         snap_tol=cfg["snap_tol"], precision_bits=prec))
        result = rep.to_dict()
        return result, result.pop("certificates"), None
    if command == "scan":
        if cfg["tuple"] is not None:
            tup = parse_ints(cfg["tuple"])
            cert = discriminant_upper_bound(cfg["center"], len(tup), cfg["k"], tup, prec)
            return {"bound": cert.bound, "tuple": list(tup)}, [cert.to_dict()], None
        scan = scan_discriminant(cfg["center"], cfg["N"], cfg["k"], prec,
                                 reduce_symmetry=not cfg["full"], workers=cfg["workers"])
        result = scan.to_dict()
        best = result.pop("best")
        result["minimum"] = None if scan.best is None else scan.best.bound
        result["minimizer_count"] = len(scan.minimizers())
        return result, [] if best is None else [best], None
    if command == "estimate-t":
        est = estimate_T(_law(cfg), cfg["z0"], cfg["samples"], cfg["horizon"], _seed(cfg))
        return est.to_dict(), [], None
    if command == "hist":
        fit = tail_fit(_law(cfg), cfg["samples"], cfg["horizon"], _seed(cfg))
        return fit.to_dict(), [], fit.csv().encode("ascii")
    if command == "classify":
        omega = realize_sequence(_law(cfg), _seed(cfg), cfg["horizon"])
        return classify_connectedness(omega, cfg["horizon"]).to_dict(), [], None
    if command == "rho-max":
        d, r = maximize_rho(prec)
        return {"delta_star": float(d), "r_max": float(r),
                "delta_star_exact": report_io.exact_decimal(d),
                "r_max_exact": report_io.exact_decimal(r)}, [], None
    viewport = parse_floats(cfg["viewport"], 4)
    if command == "render-julia":
        img = render_random_julia(_law(cfg), _seed(cfg), viewport, cfg["width"], cfg["height"],
                                  cfg["horizon"])
        return {"width": img.width, "height": img.height}, [], img.to_ppm()
    if command == "render-overlay":
        radii = parse_floats(cfg["radii"])
        img = render_parameter_overlay(cfg["center"], radii, viewport, cfg["width"], cfg["height"])
        return {"width": img.width, "height": img.height, "radii": radii}, [], img.to_ppm()
    raise UsageError(f"unknown command {command!r}")


def _write(path: str, data: bytes) -> None:
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from None


def run(argv=None, stdout=None, environ=os.environ, timestamp: str | None = None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    try:
        cfg = resolve_config(args, environ)
        result, certs, artifact = execute(args.command, cfg)
        text = report_io.dumps(report_io.make_report(args.command, _echo(cfg), result, certs, timestamp))
        image = args.command.startswith("render-")
        if image:
            if not cfg["out"]:
                raise UsageError("render commands need --out for the PPM image")
            _write(cfg["out"], artifact)
        if args.command == "hist" and cfg["csv"]:
            _write(cfg["csv"], artifact)
        if cfg["out"] and not image:
            _write(cfg["out"], text.encode("utf-8"))
        else:
            stdout.write(text)
    except (InvalidArgument, ResourceLimitError) as exc:
        print(f"qbif: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (NumericFailure, NotFound, InsufficientData, DegreeBoundExceeded, ArithmeticError) as exc:
        print(f"qbif: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
