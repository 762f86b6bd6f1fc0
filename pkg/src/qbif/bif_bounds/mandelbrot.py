"""Distance from a parameter to the boundary of the Mandelbrot set.

Two sources are combined.  The main cardioid c = l/2 - l^2/4 (|l| = 1) and
the circle |c + 1| = 1/4 are pieces of the boundary in closed form, so the
distance to them is an upper bound, and it is exact when c lies inside the
corresponding component.  Elsewhere the boundary is located by bisection
along rays from c using the escape-time membership test.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from ..errors import InvalidArgument

MEMBER_ITERATIONS = 2000
BAILOUT = 2.0
N_RAYS = 720
MARCH_STEPS = 48
BISECTIONS = 40


def escapes(c: np.ndarray, iterations: int = MEMBER_ITERATIONS) -> np.ndarray:
    """True where the critical orbit of f_c leaves |z| <= 2 within ``iterations`` steps.

    An escape proves c is outside M; a non-escape is the usual finite test.
    """
    c = np.asarray(c, dtype=complex)
    flat = c.ravel()
    out = np.zeros(flat.shape, dtype=bool)
    idx = np.arange(flat.size)
    z = np.zeros(flat.size, dtype=complex)
    cc = flat.copy()
    b2 = BAILOUT * BAILOUT
    for it in range(iterations):
        z = z * z + cc
        gone = (z.real * z.real + z.imag * z.imag) > b2
        if gone.any():
            out[idx[gone]] = True
            keep = ~gone
            idx, z, cc = idx[keep], z[keep], cc[keep]
            if not idx.size:
                break
    return out.reshape(c.shape)


def in_mandelbrot(c, iterations: int = MEMBER_ITERATIONS) -> bool:
    return not bool(escapes(np.array([complex(c)]), iterations)[0])


def in_main_cardioid(c) -> bool:
    """|l| < 1 for l = 1 - sqrt(1 - 4c), the multiplier of the attracting fixed point."""
    return abs(1 - cmath.sqrt(1 - 4 * complex(c))) < 1


def in_period2_disk(c) -> bool:
    return abs(complex(c) + 1) < 0.25


def cardioid_point(theta):
    lam = np.exp(1j * np.asarray(theta))
    return lam / 2 - lam * lam / 4


def distance_to_cardioid(c) -> float:
    c = complex(c)
    theta = np.linspace(0, 2 * np.pi, 4096, endpoint=False)
    d = np.abs(cardioid_point(theta) - c)
    i = int(np.argmin(d))
    step = theta[1] - theta[0]
    res = minimize_scalar(lambda t: abs(complex(cardioid_point(t)) - c),
                          bounds=(theta[i] - step, theta[i] + step), method="bounded",
                          options={"xatol": 1e-14})
    return float(min(d[i], res.fun))


def distance_to_period2_circle(c) -> float:
    return abs(abs(complex(c) + 1) - 0.25)


def _first_switch(c: complex, angles: np.ndarray, t_max: float, inside: bool):
    """For each ray, bracket the first point whose membership differs from c's.

    Returns (t_lo, t_hi) arrays; rays with no switch up to t_max get inf.
    """
    ts = np.linspace(0.0, t_max, MARCH_STEPS + 1)[1:]
    dirs = np.exp(1j * angles)
    pts = c + dirs[:, None] * ts[None, :]
    switched = escapes(pts) if inside else ~escapes(pts)
    has = switched.any(axis=1)
    first = np.where(has, switched.argmax(axis=1), 0)
    t_hi = np.where(has, ts[first], np.inf)
    t_lo = np.where(has, np.where(first > 0, ts[np.maximum(first - 1, 0)], 0.0), np.inf)
    live = np.flatnonzero(has)
    lo, hi = t_lo[live].copy(), t_hi[live].copy()
    for _ in range(BISECTIONS):
        if not live.size or np.all(hi - lo <= 1e-15 * np.maximum(hi, 1e-300)):
            break
        mid = 0.5 * (lo + hi)
        flip = escapes(c + dirs[live] * mid)
        flip = flip if inside else ~flip
        hi = np.where(flip, mid, hi)
        lo = np.where(flip, lo, mid)
    t_lo[live], t_hi[live] = lo, hi
    return t_lo, t_hi


@dataclass(frozen=True)
class DistanceBracket:
    lower: float
    upper: float
    inside: bool
    source: str
    nearest_angle: float | None = None

    def to_dict(self) -> dict:
        return {"lower": self.lower, "upper": self.upper, "inside": self.inside,
                "source": self.source, "nearest_angle": self.nearest_angle}


def _ray_bracket(c: complex, inside: bool, tol: float):
    angles = np.arange(N_RAYS) * (2 * np.pi / N_RAYS)
    t_max = max(4.0, abs(c) + 2.5)
    best_lo, best_hi, best_angle = math.inf, math.inf, None
    # march again over the shrinking range until the nearest crossing stabilises
    for _ in range(8):
        lo, hi = _first_switch(c, angles, t_max, inside)
        i = int(np.argmin(hi))
        if not np.isfinite(hi[i]):
            break
        improved = hi[i] < best_hi * (1 - 1e-9)
        if hi[i] < best_hi:
            best_lo, best_hi, best_angle = float(lo[i]), float(hi[i]), float(angles[i])
        if not improved:
            break
        t_max = best_hi
    if best_angle is None:
        return best_lo, best_hi, None, 2 * np.pi / N_RAYS
    # finer rays around the best one
    spacing = 2 * np.pi / N_RAYS
    for _ in range(3):
        fine = best_angle + np.linspace(-spacing, spacing, 33)
        lo, hi = _first_switch(c, fine, best_hi, inside)
        i = int(np.argmin(hi))
        if hi[i] < best_hi:
            best_lo, best_hi, best_angle = float(lo[i]), float(hi[i]), float(fine[i])
        spacing /= 16
        if best_hi * spacing < tol:
            break
    return best_lo, best_hi, best_angle, spacing


def mandelbrot_distance(c, tol: float = 1e-4) -> DistanceBracket:
    """Bracket dist(c, boundary of M).

    Inside the main cardioid or the period-2 disk the closed-form distance
    is exact and both ends coincide.  Otherwise the upper end is the nearest
    ray crossing (or closed-form curve) and the lower end subtracts the
    angular slack t * spacing between the final rays plus ``tol``; that
    lower end is a heuristic, since thin parts of M can slip between rays.
    """
    if tol <= 0:
        raise InvalidArgument("tol must be positive")
    c = complex(c)
    d_card = distance_to_cardioid(c)
    d_p2 = distance_to_period2_circle(c)
    if in_main_cardioid(c):
        return DistanceBracket(d_card, min(d_card, d_p2), True, "cardioid")
    if in_period2_disk(c):
        return DistanceBracket(d_p2, min(d_card, d_p2), True, "period-2 disk")
    inside = in_mandelbrot(c)
    t_lo, t_hi, angle, spacing = _ray_bracket(c, inside, tol)
    curves = min(d_card, d_p2)
    upper = min(t_hi, curves)
    source = "rays" if t_hi <= curves else "closed-form curve"
    if not math.isfinite(t_lo):
        t_lo = upper
    lower = max(0.0, min(t_lo, upper) * (1 - spacing) - tol)
    return DistanceBracket(lower, upper, inside, source, angle)
