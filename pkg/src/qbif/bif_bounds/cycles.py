"""Attracting cycles of f_c(z) = z^2 + c."""
from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mp

from ..errors import InvalidArgument, NotFound
from ..poly_algebra import DEFAULT_PREC, ComplexPoly, compose_quadratics, poly_roots, to_mpc

CYCLE_TOL = mpmath.mpf("1e-20")


@dataclass(frozen=True)
class CycleData:
    """A periodic cycle a_0 -> a_1 -> ... -> a_{p-1} -> a_0 of f_c.

    ``points[0]`` is the cycle point of smallest modulus, so a
    superattracting cycle starts at the critical point 0.
    """

    parameter: mpmath.mpc
    period: int
    points: tuple
    multiplier: mpmath.mpc

    @property
    def closing_error(self):
        """max_j |f_c(a_j) - a_{j+1}|."""
        p = self.period
        with mp.workprec(max(mp.prec, DEFAULT_PREC)):
            return max(abs(self.points[j] ** 2 + self.parameter - self.points[(j + 1) % p])
                       for j in range(p))

    @property
    def attracting(self) -> bool:
        return abs(self.multiplier) < 1

    def to_dict(self) -> dict:
        from ..report_io import encode_complex
        return {"parameter": encode_complex(self.parameter), "period": self.period,
                "points": [encode_complex(a) for a in self.points],
                "multiplier": encode_complex(self.multiplier)}

    @classmethod
    def from_dict(cls, d: dict) -> "CycleData":
        from ..report_io import decode_complex
        return cls(decode_complex(d["parameter"]), int(d["period"]),
                   tuple(decode_complex(a) for a in d["points"]),
                   decode_complex(d["multiplier"]))


def _orbit(z, c, n):
    out = [z]
    for _ in range(n - 1):
        z = z * z + c
        out.append(z)
    return out


def find_attracting_cycle(c, period: int, prec: int = DEFAULT_PREC) -> CycleData:
    """The attracting cycle of exact period ``period``, if f_c has one.

    Roots of f_c^p(z) - z are grouped into cycles; roots whose orbit closes
    up after fewer than ``period`` steps belong to a lower period and are
    skipped.
    """
    if not 1 <= period <= 8:
        raise InvalidArgument(f"period must be in [1, 8], got {period}")
    with mp.workprec(prec):
        c = to_mpc(c)
        poly = compose_quadratics([c] * period, prec=prec) - ComplexPoly([0, 1])
        roots = poly_roots(poly, prec=prec)
        scale = max(1, max(abs(r) for r in roots))
        # roots are accurate to about half the working digits near multiple roots
        close = mpmath.mpf(2) ** (-(prec // 4)) * scale
        for root in sorted(roots, key=abs):
            orbit = _orbit(root, c, period + 1)
            if any(abs(orbit[q] - root) <= close for q in range(1, period)):
                continue
            multiplier = mpmath.fprod(2 * a for a in orbit[:period])
            if abs(multiplier) >= 1:
                continue
            pts = orbit[:period]
            start = min(range(period), key=lambda j: abs(pts[j]))
            pts = pts[start:] + pts[:start]
            cycle = CycleData(c, period, tuple(pts), multiplier)
            if cycle.closing_error > CYCLE_TOL * scale:
                continue
            return cycle
    raise NotFound(f"f_c has no attracting cycle of period {period} at c = {mpmath.nstr(c, 12)}")
