"""Invariant-disk lower bounds on the bifurcation radius.

For a cycle a_0 -> ... -> a_{p-1} of f_{c~} and any c' with |c' - c~| <= e,

    f_{c'}(z) - a_{j+1} = (z - a_j)^2 + 2 a_j (z - a_j) + (c' - c~),

so f_{c'} maps the closed disk of radius d_j about a_j into the disk of
radius d_j^2 + 2|a_j| d_j + e about a_{j+1}.  If that radius never exceeds
the next one around the cycle, the union of disks is forward invariant for
all parameters in B(c, r) with e = |c - c~| + r, and the semigroup has a
planar minimal set inside it.
"""
from __future__ import annotations

from dataclasses import dataclass

import mpmath
import numpy as np
from mpmath import mp

from ..errors import InvalidArgument
from ..poly_algebra import DEFAULT_PREC, ComplexPoly, poly_roots, to_mpc
from .cycles import CycleData, find_attracting_cycle

GRID_POINTS = 2001
GRID_REFINEMENTS = 4


@dataclass(frozen=True)
class InvariantDiskCertificate:
    """Radii d_j with d_j^2 + 2|a_j| d_j + e <= d_{j+1}; ``slack`` holds RHS - LHS."""

    cycle: CycleData
    radii: tuple
    noise_radius: float
    slack: tuple
    center: complex

    @property
    def offset(self) -> float:
        """e = |c - c~| + r."""
        return abs(self.center - complex(self.cycle.parameter)) + self.noise_radius

    def to_dict(self) -> dict:
        from ..report_io import encode_complex
        return {"kind": "invariant-disk", "cycle": self.cycle.to_dict(),
                "center": encode_complex(self.center),
                "radii": list(self.radii), "noise_radius": self.noise_radius,
                "slack": list(self.slack)}

    @classmethod
    def from_dict(cls, d: dict) -> "InvariantDiskCertificate":
        from ..report_io import decode_complex
        return cls(CycleData.from_dict(d["cycle"]), tuple(d["radii"]), d["noise_radius"],
                   tuple(d["slack"]), complex(decode_complex(d["center"])))


@dataclass(frozen=True)
class Infeasible:
    """Inequality ``index`` fails by ``excess`` = LHS - RHS > 0."""

    index: int
    excess: float
    feasible = False


def check_invariant_disks(cycle: CycleData, radii, r: float, center=None):
    """Evaluate every per-index inequality; return the certificate or Infeasible."""
    p = cycle.period
    radii = tuple(float(d) for d in radii)
    if len(radii) != p:
        raise InvalidArgument(f"need {p} radii, got {len(radii)}")
    if any(not d > 0 for d in radii):
        raise InvalidArgument("radii must be positive")
    if r < 0:
        raise InvalidArgument("noise radius must be >= 0")
    center = complex(cycle.parameter) if center is None else complex(center)
    e = abs(center - complex(cycle.parameter)) + r
    mods = [abs(complex(a)) for a in cycle.points]
    slack = []
    for j in range(p):
        d = radii[j]
        lhs = d * d + 2 * mods[j] * d + e
        slack.append(radii[(j + 1) % p] - lhs)
    worst = min(range(p), key=lambda j: slack[j])
    if slack[worst] < 0:
        return Infeasible(worst, -slack[worst])
    return InvariantDiskCertificate(cycle, radii, float(r), tuple(slack), center)


def _propagate(delta0: np.ndarray, mods, e: float) -> list:
    """Tightest radii chain d_{j+1} = d_j^2 + 2|a_j| d_j + e starting from delta0."""
    chain = [delta0]
    d = delta0
    for m in mods:
        d = d * d + 2 * m * d + e
        chain.append(d)
    return chain


def _best_start(mods, e: float, hi: float):
    """Maximise the closing margin d_0 - d_p over d_0 in (0, hi] on a refining grid."""
    lo_edge, hi_edge = hi / GRID_POINTS, hi
    best = None
    for _ in range(GRID_REFINEMENTS):
        grid = np.linspace(lo_edge, hi_edge, GRID_POINTS)
        margin = grid - _propagate(grid, mods, e)[-1]
        i = int(np.argmax(margin))
        if best is None or margin[i] > best[1]:
            best = (float(grid[i]), float(margin[i]))
        step = grid[1] - grid[0]
        lo_edge = max(hi / GRID_POINTS * 1e-6, grid[i] - 2 * step)
        hi_edge = min(hi, grid[i] + 2 * step)
    return best


def lower_bound_invariant_disks(c, period: int, tol: float = 1e-6,
                                prec: int = DEFAULT_PREC, cycle: CycleData | None = None):
    """Largest r (to within ``tol``) admitting invariant disks around the attracting cycle.

    Returns ``(r, certificate)``; the certificate is built at the returned
    r, which is always on the feasible side of the search.
    """
    if tol <= 0:
        raise InvalidArgument("tol must be positive")
    if cycle is None:
        cycle = find_attracting_cycle(c, period, prec=prec)
    center = complex(to_mpc(c))
    p = cycle.period
    mods = [abs(complex(a)) for a in cycle.points]
    shift = abs(center - complex(cycle.parameter))
    hi_delta = (1 - abs(complex(cycle.multiplier)) ** (1 / p)) * 0.5

    def start_for(r):
        d0, margin = _best_start(mods, shift + r, hi_delta)
        return d0 if margin >= 0 else None

    lo, hi = 0.0, 0.25
    d_lo = start_for(lo)
    if d_lo is None:
        raise InvalidArgument("no invariant disks even without noise; cycle too weakly attracting")
    if start_for(hi) is not None:
        lo, d_lo = hi, start_for(hi)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        d = start_for(mid)
        if d is None:
            hi = mid
        else:
            lo, d_lo = mid, d
    chain = _propagate(d_lo, mods, shift + lo)
    cert = check_invariant_disks(cycle, [float(x) for x in chain[:p]], lo, center)
    if not isinstance(cert, InvariantDiskCertificate):
        raise AssertionError("feasible radii failed re-validation")
    return lo, cert


def delta_max(prec: int = DEFAULT_PREC):
    """Positive root of d^3 + 2d - 1, the right end of the domain of rho."""
    with mp.workprec(prec):
        return mpmath.findroot(lambda d: d ** 3 + 2 * d - 1, mpmath.mpf("0.45"))


def rho_of_delta(delta, prec: int = DEFAULT_PREC):
    """rho(d) = -(2d^2 + 3)/2 + sqrt(4d^2 + 4d + 9)/2.

    This is the larger root in r of d^4 + 2(1 + r)d^2 + r^2 + 3r = d, the
    closed-up two-step recursion around the cycle {0, -1}.
    """
    with mp.workprec(prec):
        d = mpmath.mpf(delta)
        top = delta_max(prec)
        if d < 0 or d > top * (1 + mpmath.mpf(2) ** (-(prec // 2))):
            raise InvalidArgument(f"delta must lie in [0, {mpmath.nstr(top, 6)}], got {delta}")
        return -(2 * d * d + 3) / 2 + mpmath.sqrt(4 * d * d + 4 * d + 9) / 2


def maximize_rho(prec: int = DEFAULT_PREC):
    """(delta*, rho(delta*)) with delta* the positive root of 16d^4 + 16d^3 + 32d^2 - 4d - 1."""
    with mp.workprec(prec):
        quartic = ComplexPoly([-1, -4, 32, 16, 16])
        tiny = mpmath.mpf(2) ** (-(prec // 2))
        real_pos = [r.real for r in poly_roots(quartic, prec=prec)
                    if abs(r.imag) <= tiny and r.real > 0]
        if len(real_pos) != 1:
            raise AssertionError("expected exactly one positive root")
        d = real_pos[0]
        return d, rho_of_delta(d, prec)
