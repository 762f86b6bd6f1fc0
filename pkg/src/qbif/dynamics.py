"""Orbits of non-autonomous quadratic compositions z -> z^2 + c_n."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import mpmath
import numpy as np
from mpmath import mp

from .errors import InvalidArgument
from .noise import DiskLaw, NoiseRealization
from .poly_algebra import DEFAULT_PREC, ComplexPoly, _square, poly_roots

DEFAULT_HORIZON = 10_000
GREEN_CUTOFF = 1e8


def escape_radius(center, radius: float) -> float:
    """Smallest R with |z| >= R  =>  |z^2 + c'| >= 2R for every c' in B(center, radius).

    R solves R^2 - C = 2R with C = |center| + radius.
    """
    if radius < 0:
        raise InvalidArgument(f"radius must be >= 0, got {radius}")
    bound = abs(complex(center)) + radius
    return 1.0 + math.sqrt(1.0 + bound)


def law_escape_radius(law: DiskLaw) -> float:
    return escape_radius(law.center, law.radius)


class Status(str, enum.Enum):
    ESCAPED = "escaped"
    SURVIVED = "survived"


@dataclass(frozen=True)
class OrbitOutcome:
    """Result of following one orbit.

    ``escape_step`` is the first n with |F^n(z)| > R (None when the orbit
    survived ``horizon`` steps).  A survived orbit is a finite-horizon
    observation, not a proof of boundedness.
    """

    status: Status
    escape_step: int | None
    horizon: int
    last_modulus: float

    @property
    def escaped(self) -> bool:
        return self.status is Status.ESCAPED


def _as_params(omega) -> np.ndarray:
    if isinstance(omega, NoiseRealization):
        return omega.params
    return np.asarray(omega, dtype=complex)


def iterate_orbit(z0, omega, R: float, horizon: int) -> OrbitOutcome:
    """Iterate z_n = z_{n-1}^2 + c_n and stop at the first |z_n| > R."""
    if horizon < 1:
        raise InvalidArgument("horizon must be >= 1")
    params = _as_params(omega)
    if len(params) < horizon:
        raise InvalidArgument(f"realization has {len(params)} entries, horizon is {horizon}")
    z = complex(z0)
    for n in range(horizon):
        z = z * z + complex(params[n])
        modulus = abs(z)
        if modulus > R:
            return OrbitOutcome(Status.ESCAPED, n + 1, horizon, modulus)
    return OrbitOutcome(Status.SURVIVED, None, horizon, abs(z))


def green_value(z0, omega, depth: int) -> float:
    """Approximate G(z0) = lim 2^-n log+ |F^n(z0)|.

    Stops early once |z| exceeds 1e8, where log|z_{n+1}| = 2 log|z_n| up to
    a relative error below 1e-16, so the current term already equals the
    limit to double precision.
    """
    if depth < 1:
        raise InvalidArgument("depth must be >= 1")
    params = _as_params(omega)
    if len(params) < depth:
        raise InvalidArgument(f"realization has {len(params)} entries, depth is {depth}")
    z = complex(z0)
    n = 0
    if abs(z) <= GREEN_CUTOFF:
        for n in range(1, depth + 1):
            z = z * z + complex(params[n - 1])
            if abs(z) > GREEN_CUTOFF:
                break
    modulus = abs(z)
    if modulus <= 1.0:
        return 0.0
    return math.ldexp(math.log(modulus), -n)


def critical_orbit_polynomial(period: int, prec: int = DEFAULT_PREC) -> ComplexPoly:
    """f_c^{period}(0) as a polynomial in c (degree 2^(period-1))."""
    with mp.workprec(prec):
        cs = [mpmath.mpc(0), mpmath.mpc(1)]
        for _ in range(period - 1):
            cs = _square(cs)
            cs[1] += 1
        return ComplexPoly(cs)


def superattracting_parameter(period: int, primitive: bool = False,
                              prec: int = DEFAULT_PREC) -> list:
    """Parameters c with f_c^{period}(0) = 0.

    With ``primitive`` set, roots that already solve a lower-period equation
    for a divisor of ``period`` are dropped.  Roots are sorted by real part,
    then imaginary part.
    """
    if not 1 <= period <= 8:
        raise InvalidArgument(f"period must be in [1, 8], got {period}")
    with mp.workprec(prec):
        poly = critical_orbit_polynomial(period, prec)
        roots = poly_roots(poly, prec=prec) if poly.degree > 1 else [mpmath.mpc(0)]
        if primitive and period > 1:
            tol = mpmath.mpf(10) ** (-(prec * math.log10(2) / 4))
            lower = []
            for d in range(1, period):
                if period % d == 0:
                    lower.extend(superattracting_parameter(d, primitive=True, prec=prec))
            roots = [r for r in roots if all(abs(r - s) > tol for s in lower)]
        return sorted(roots, key=lambda r: (float(r.real), float(r.imag)))
