"""Merging every applicable bound on r_bif(c) into one report."""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, NamedTuple

import mpmath
import numpy as np

from ..errors import InvalidArgument, NotFound, NumericFailure, QbifError
from ..dynamics import superattracting_parameter
from ..noise import DiskLaw
from ..poly_algebra import DEFAULT_PREC
from .cycles import find_attracting_cycle
from .disks import InvariantDiskCertificate, lower_bound_invariant_disks
from .mandelbrot import in_mandelbrot, mandelbrot_distance
from .parabolic import ParabolicRootCertificate, discriminant_upper_bound

PROVENANCES = ("exact-segment", "invariant-disk", "lipschitz", "dist-boundary",
               "parabolic-root", "cardioid-epsilon", "containment")
SOUNDNESS_TOL = 1e-12

# (N, k, tuple) tried at a superattracting centre of each period
DEFAULT_SCHEDULES = {
    1: (1, 1, (0,)),
    2: (4, 6, (1, 2, 5, 4)),
    3: (3, 6, (0, 3, 0)),
}


def lipschitz_transfer(anchor_c, anchor_bounds, c):
    """Move bounds from anchor_c to c using |r_bif(c) - r_bif(c')| <= |c - c'|."""
    lo, hi = anchor_bounds
    if lo > hi + SOUNDNESS_TOL:
        raise InvalidArgument(f"anchor bounds out of order: {lo} > {hi}")
    d = abs(complex(c) - complex(anchor_c))
    return max(0.0, lo - d), hi + d


class Bound(NamedTuple):
    value: float
    provenance: str
    detail: str = ""


@dataclass
class BoundsConfig:
    max_period: int = 3
    snap_tol: float = 1e-9
    anchor_radius: float = 0.05
    precision_bits: int = DEFAULT_PREC
    disk_tol: float = 1e-6
    distance_tol: float = 1e-4
    schedules: dict = field(default_factory=lambda: dict(DEFAULT_SCHEDULES))
    use_discriminant: bool = True


@dataclass
class BifurcationReport:
    center: complex
    lower_bounds: list
    upper_bounds: list
    certificates: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    @property
    def best_lower(self) -> float:
        return max((b.value for b in self.lower_bounds), default=0.0)

    @property
    def best_upper(self) -> float:
        return min((b.value for b in self.upper_bounds), default=math.inf)

    def violations(self, tol: float = SOUNDNESS_TOL) -> list:
        """Pairs (lower, upper) with lower > upper + tol."""
        return [(lo, hi) for lo in self.lower_bounds for hi in self.upper_bounds
                if lo.value > hi.value + tol]

    def to_dict(self) -> dict:
        from ..report_io import encode_complex
        return {"center": encode_complex(self.center),
                "lower_bounds": [b._asdict() for b in self.lower_bounds],
                "upper_bounds": [b._asdict() for b in self.upper_bounds],
                "best_lower": self.best_lower, "best_upper": self.best_upper,
                "certificates": [c.to_dict() for c in self.certificates],
                "failures": list(self.failures)}

    @classmethod
    def from_dict(cls, d: dict) -> "BifurcationReport":
        from ..report_io import decode_complex
        certs = []
        for c in d.get("certificates", []):
            kind = c.get("kind")
            if kind == "parabolic-root":
                certs.append(ParabolicRootCertificate.from_dict(c))
            elif kind == "invariant-disk":
                certs.append(InvariantDiskCertificate.from_dict(c))
        return cls(complex(decode_complex(d["center"])),
                   [Bound(**b) for b in d["lower_bounds"]],
                   [Bound(**b) for b in d["upper_bounds"]],
                   certs, list(d.get("failures", [])))


@functools.lru_cache(maxsize=None)
def _centres(period: int, prec: int) -> tuple:
    return tuple(complex(c) for c in superattracting_parameter(period, primitive=True, prec=prec))


@functools.lru_cache(maxsize=None)
def _anchor_bounds(period: int, centre: complex, prec: int, schedule: tuple, disk_tol: float):
    lo, disk = lower_bound_invariant_disks(centre, period, disk_tol, prec)
    N, k, tup = schedule
    cert = discriminant_upper_bound(_exact_centre(period, centre, prec), N, k, tup, prec)
    return lo, cert.bound, disk, cert


def _exact_centre(period: int, approx: complex, prec: int):
    roots = superattracting_parameter(period, primitive=True, prec=prec)
    return min(roots, key=lambda r: abs(complex(r) - approx))


def _segment_transfer(c: complex):
    """Best 1-Lipschitz transfer from the exact values r_bif(a) = 1/4 - a on [0, 1/4]."""
    a = np.linspace(0.0, 0.25, 2501)
    d = np.abs(c - a)
    lo = 0.25 - a - d
    hi = 0.25 - a + d
    i, j = int(np.argmax(lo)), int(np.argmin(hi))
    return max(0.0, float(lo[i])), float(a[i]), float(hi[j]), float(a[j])


def combine_bounds(c, config: BoundsConfig | None = None) -> BifurcationReport:
    """Collect every applicable lower and upper bound on r_bif(c).

    Failures of individual methods are recorded in ``failures``; a lower
    bound exceeding an upper bound by more than 1e-12 raises NumericFailure
    with the report attached.
    """
    cfg = config or BoundsConfig()
    c = complex(c)
    prec = cfg.precision_bits
    lows, ups, certs, failures = [], [], [], []

    inside = in_mandelbrot(c)
    dist = mandelbrot_distance(c, cfg.distance_tol)
    ups.append(Bound(dist.upper, "dist-boundary", f"ray/curve bracket {dist.source}"))
    if not inside:
        ups.append(Bound(0.0, "dist-boundary", "critical orbit escapes: c is outside M"))

    if c.imag == 0 and 0 <= c.real <= 0.25:
        v = 0.25 - c.real
        lows.append(Bound(v, "exact-segment"))
        ups.append(Bound(v, "exact-segment"))
    if c.imag == 0 and -0.5 <= c.real < 0:
        eps = -c.real
        ups.append(Bound(0.25 + eps - eps * eps, "cardioid-epsilon", f"eps = {eps!r}"))

    lo, a_lo, hi, a_hi = _segment_transfer(c)
    lows.append(Bound(lo, "lipschitz", f"anchor {a_lo!r} on the exact segment"))
    ups.append(Bound(hi, "lipschitz", f"anchor {a_hi!r} on the exact segment"))

    for p in range(1, cfg.max_period + 1):
        try:
            cycle = find_attracting_cycle(c, p, prec)
        except NotFound:
            continue
        try:
            r, cert = lower_bound_invariant_disks(c, p, cfg.disk_tol, prec, cycle=cycle)
        except QbifError as exc:
            failures.append(f"invariant-disk period {p}: {exc}")
            continue
        lows.append(Bound(r, "invariant-disk", f"attracting cycle of period {p}"))
        certs.append(cert)
        break  # a quadratic map has at most one attracting cycle

    for p in range(1, cfg.max_period + 1):
        schedule = cfg.schedules.get(p)
        for centre in _centres(p, prec):
            d = abs(c - centre)
            if d > cfg.anchor_radius:
                continue
            if not cfg.use_discriminant or schedule is None:
                continue
            N, k, tup = schedule
            try:
                if d <= cfg.snap_tol:
                    cert = discriminant_upper_bound(_exact_centre(p, centre, prec), N, k, tup, prec)
                    ups.append(Bound(cert.bound + d, "parabolic-root",
                                     f"N={N} k={k} tuple={list(tup)}, snap displacement {d!r}"))
                    certs.append(cert)
                else:
                    a_lo, a_hi, _, _ = _anchor_bounds(p, centre, prec, tuple(schedule), cfg.disk_tol)
                    t_lo, t_hi = lipschitz_transfer(centre, (a_lo, a_hi), c)
                    where = f"anchor {centre!r} (period {p}) at distance {d!r}"
                    lows.append(Bound(t_lo, "lipschitz", where))
                    ups.append(Bound(t_hi, "lipschitz", where))
            except QbifError as exc:
                failures.append(f"period-{p} centre {centre!r}: {exc}")

    report = BifurcationReport(c, lows, ups, certs, failures)
    if report.violations():
        raise NumericFailure(f"inconsistent bounds at c = {c!r}: {report.violations()}", partial=report)
    return report


@dataclass(frozen=True)
class ContainmentVerdict:
    verdict: str
    reason: str

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "reason": self.reason}


def _lookup(known, center: complex) -> BifurcationReport:
    if callable(known):
        report = known(center)
    elif isinstance(known, Mapping):
        report = known.get(center)
    else:
        report = None
    if report is None:
        raise InvalidArgument(f"no bifurcation report available at {center!r}")
    return report


def containment_transfer(inner: DiskLaw | None, outer: DiskLaw | None, known) -> ContainmentVerdict:
    """Qualitative verdict for a noise law whose support lies between two disks.

    ``outer`` must contain the support and ``inner`` must lie in it.  A
    planar minimal set exists when the outer radius is at most a proven
    lower bound at its centre; almost every random Julia set is totally
    disconnected when the inner radius strictly exceeds a proven upper
    bound.  ``known`` maps a centre to a BifurcationReport (mapping or
    callable).
    """
    if inner is None and outer is None:
        raise InvalidArgument("give at least one of the inner and outer disks")
    if outer is not None:
        rep = _lookup(known, outer.center)
        if outer.radius <= rep.best_lower:
            return ContainmentVerdict("planar-minimal-set-exists",
                                      f"support within radius {outer.radius!r} <= lower bound {rep.best_lower!r}")
    if inner is not None:
        rep = _lookup(known, inner.center)
        if inner.radius > rep.best_upper:
            return ContainmentVerdict("a.s.-totally-disconnected",
                                      f"support contains radius {inner.radius!r} > upper bound {rep.best_upper!r}")
    return ContainmentVerdict("undetermined", "neither disk clears a proven bound")


def square_support_disks(s: float, center=0):
    """Inscribed and circumscribed disks of the square |Re(c - center)|, |Im(c - center)| <= s."""
    if s < 0:
        raise InvalidArgument("half-side must be >= 0")
    return DiskLaw(center, s), DiskLaw(center, s * math.sqrt(2))
