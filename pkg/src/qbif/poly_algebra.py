"""Extended-precision complex polynomial arithmetic.

Polynomials are dense coefficient tuples ordered from the constant term
upward.  Scalars are :class:`mpmath.mpc` values; every public function takes
a ``prec`` argument (bits) and runs under ``mp.workprec(prec)``.

The Sylvester elimination inside :func:`discriminant` is the hot loop of the
parabolic-root pipeline and runs on :mod:`gmpy2` complex numbers, which are
roughly an order of magnitude faster than mpmath's pure-Python ``mpc``.
Conversions between the two are exact (mantissa/exponent transfer).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import gmpy2
import mpmath
import numpy as np
from mpmath import mp

from .errors import InvalidArgument, NumericFailure, ResourceLimitError

DEFAULT_PREC = 256
MAX_COMPOSE_LENGTH = 16
TRIM_REL = mpmath.mpf("1e-30")
_GMPY_MPC = type(gmpy2.mpc(0))


def to_mpc(x) -> mpmath.mpc:
    """Convert numbers, ``{"re", "im"}`` dicts and strings "RE,IM" to mpc."""
    if isinstance(x, mpmath.mpc):
        return x
    if isinstance(x, dict):
        return mpmath.mpc(mpmath.mpf(x["re"]), mpmath.mpf(x.get("im", 0)))
    if isinstance(x, str):
        parts = x.split(",")
        if len(parts) == 1:
            return mpmath.mpc(mpmath.mpf(parts[0]))
        if len(parts) == 2:
            return mpmath.mpc(mpmath.mpf(parts[0]), mpmath.mpf(parts[1]))
        raise InvalidArgument(f"malformed complex literal {x!r}")
    if isinstance(x, _GMPY_MPC):
        return _from_gmpy(x)
    return mpmath.mpc(x)


# -- mpmath <-> gmpy2 (exact) -------------------------------------------------

def _mpf_to_gmpy(x: mpmath.mpf):
    sign, man, exp, _ = x._mpf_
    return gmpy2.mul_2exp(gmpy2.mpfr(-int(man) if sign else int(man)), int(exp))


def _to_gmpy(z: mpmath.mpc):
    return gmpy2.mpc(_mpf_to_gmpy(z.real), _mpf_to_gmpy(z.imag))


def _gmpy_to_mpf(x) -> mpmath.mpf:
    if x == 0:
        return mpmath.mpf(0)
    man, exp = x.as_mantissa_exp()
    return mpmath.mpf((int(man), int(exp)))


def _from_gmpy(z) -> mpmath.mpc:
    return mpmath.mpc(_gmpy_to_mpf(z.real), _gmpy_to_mpf(z.imag))


@dataclass(frozen=True)
class ComplexPoly:
    """Dense complex polynomial, constant term first.

    Construction strips exact-zero leading coefficients; use :meth:`trim` to
    drop negligible ones relative to the largest coefficient.
    """

    coeffs: tuple

    def __init__(self, coeffs: Iterable):
        cs = [to_mpc(c) for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [mpmath.mpc(0)]
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> mpmath.mpc:
        return self.coeffs[-1]

    def __len__(self):
        return len(self.coeffs)

    def __call__(self, z):
        acc = mpmath.mpc(0)
        for a in reversed(self.coeffs):
            acc = acc * z + a
        return acc

    def eval_with_derivative(self, z):
        p = mpmath.mpc(0)
        dp = mpmath.mpc(0)
        for a in reversed(self.coeffs):
            dp = dp * z + p
            p = p * z + a
        return p, dp

    def derivative(self) -> "ComplexPoly":
        if self.degree == 0:
            return ComplexPoly([0])
        return ComplexPoly([j * a for j, a in enumerate(self.coeffs) if j > 0])

    def scale_at(self, z) -> mpmath.mpf:
        """Sum of |a_j| |z|^j, the natural magnitude scale of p(z)."""
        az = abs(z)
        acc = mpmath.mpf(0)
        for a in reversed(self.coeffs):
            acc = acc * az + abs(a)
        return acc

    def trim(self, rel=TRIM_REL) -> "ComplexPoly":
        big = max(abs(a) for a in self.coeffs)
        cs = list(self.coeffs)
        while len(cs) > 1 and abs(cs[-1]) <= rel * big:
            cs.pop()
        return ComplexPoly(cs)

    def monic(self) -> "ComplexPoly":
        lc = self.leading
        return ComplexPoly([a / lc for a in self.coeffs])

    def _padded(self, other: "ComplexPoly"):
        n = max(len(self), len(other))
        return (list(self.coeffs) + [0] * (n - len(self)),
                list(other.coeffs) + [0] * (n - len(other)))

    def __add__(self, other: "ComplexPoly") -> "ComplexPoly":
        a, b = self._padded(other)
        return ComplexPoly([x + y for x, y in zip(a, b)])

    def __sub__(self, other: "ComplexPoly") -> "ComplexPoly":
        a, b = self._padded(other)
        return ComplexPoly([x - y for x, y in zip(a, b)])

    def to_complex(self) -> np.ndarray:
        return np.array([complex(a) for a in self.coeffs])


def _square(cs: list) -> list:
    n = len(cs)
    out = [mpmath.mpc(0)] * (2 * n - 1)
    for i in range(n):
        ci = cs[i]
        if ci == 0:
            continue
        out[2 * i] += ci * ci
        twice = 2 * ci
        for j in range(i + 1, n):
            out[i + j] += twice * cs[j]
    return out


def compose_quadratics(params: Sequence, prec: int = DEFAULT_PREC,
                       max_length: int = MAX_COMPOSE_LENGTH) -> ComplexPoly:
    """Return f_{c_N} o ... o f_{c_1} with f_c(z) = z^2 + c.

    The first parameter is applied first.  The result is monic of degree
    2^N.  Squaring is schoolbook, so very long sequences are slow long before
    they reach the cap.
    """
    if len(params) == 0:
        raise InvalidArgument("compose_quadratics needs at least one parameter")
    if len(params) > max_length:
        raise ResourceLimitError(
            f"composition of {len(params)} quadratics exceeds degree cap 2^{max_length}")
    with mp.workprec(prec):
        cs = [mpmath.mpc(0), mpmath.mpc(1)]
        for c in params:
            cs = _square(cs)
            cs[0] += to_mpc(c)
        return ComplexPoly(cs)


# -- resultants ---------------------------------------------------------------

def sylvester_matrix(p: ComplexPoly, q: ComplexPoly) -> list:
    """Sylvester matrix of p (degree m) and q (degree n), rows highest power first."""
    m, n = p.degree, q.degree
    size = m + n
    pr = list(reversed(p.coeffs))
    qr = list(reversed(q.coeffs))
    rows = []
    for i in range(n):
        rows.append([0] * i + pr + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + qr + [0] * (size - n - 1 - i))
    return rows


def _det_gmpy(rows: list):
    """Determinant by Gaussian elimination with partial pivoting."""
    a = [list(r) for r in rows]
    n = len(a)
    det = gmpy2.mpc(1)
    for i in range(n):
        piv = max(range(i, n), key=lambda r: abs(a[r][i]))
        if a[piv][i] == 0:
            return gmpy2.mpc(0)
        if piv != i:
            a[i], a[piv] = a[piv], a[i]
            det = -det
        ri = a[i]
        pivot = ri[i]
        det *= pivot
        inv = 1 / pivot
        for r in range(i + 1, n):
            rr = a[r]
            f = rr[i]
            if f == 0:
                continue
            f = f * inv
            for col in range(i + 1, n):
                x = ri[col]
                if x != 0:
                    rr[col] -= f * x
    return det


def resultant(p: ComplexPoly, q: ComplexPoly, prec: int = DEFAULT_PREC) -> mpmath.mpc:
    """Res(p, q) as the Sylvester determinant."""
    with mp.workprec(prec), gmpy2.context(gmpy2.get_context(), precision=prec):
        g = {}

        def conv(x):
            if isinstance(x, int):
                return gmpy2.mpc(x)
            key = id(x)
            if key not in g:
                g[key] = _to_gmpy(x)
            return g[key]

        rows = [[conv(x) for x in row] for row in sylvester_matrix(p, q)]
        return _from_gmpy(_det_gmpy(rows))


def discriminant(p: ComplexPoly, prec: int = DEFAULT_PREC) -> mpmath.mpc:
    """Discriminant (-1)^{n(n-1)/2} Res(p, p') / lc(p).

    Vanishes exactly when p has a repeated root.
    """
    n = p.degree
    if n < 2:
        raise InvalidArgument("discriminant needs degree >= 2")
    with mp.workprec(prec):
        res = resultant(p, p.derivative(), prec=prec)
        sign = -1 if (n * (n - 1) // 2) % 2 else 1
        return sign * res / p.leading


# -- interpolation ------------------------------------------------------------

def circle_points(count: int, radius, prec: int = DEFAULT_PREC) -> list:
    """The ``count``-th roots of unity scaled by ``radius``."""
    with mp.workprec(prec):
        radius = mpmath.mpf(radius)
        return [radius * mpmath.expjpi(mpmath.mpf(2 * m) / count) for m in range(count)]


def interpolate_from_circle(samples: Sequence, degree_bound: int,
                            prec: int = DEFAULT_PREC, trim_rel=None) -> ComplexPoly:
    """Recover a polynomial from its values on a scaled roots-of-unity grid.

    ``samples`` is a sequence of ``(point, value)`` where point m equals
    r_s * exp(2 pi i m / M).  Coefficients come from the inverse DFT followed
    by unscaling by r_s^j.

    Trailing coefficients are trimmed when their contribution on the sample
    circle, |a_j| r_s^j, falls below ``trim_rel`` times the largest such
    contribution.  Sample noise is amplified by r_s^-j in the raw
    coefficients, so raw magnitudes cannot separate signal from noise when
    r_s < 1.  ``trim_rel`` defaults to min(1e-30, 2^(-prec/2)).
    """
    count = len(samples)
    if count < degree_bound + 1:
        raise InvalidArgument(
            f"{count} samples cannot determine a degree-{degree_bound} polynomial")
    with mp.workprec(prec):
        if trim_rel is None:
            trim_rel = min(TRIM_REL, mpmath.mpf(2) ** (-(prec // 2)))
        pts = [to_mpc(s[0]) for s in samples]
        vals = [to_mpc(s[1]) for s in samples]
        radius = abs(pts[0])
        if radius <= 0:
            raise InvalidArgument("sample radius must be positive")
        grid = circle_points(count, radius, prec)
        tol = radius * mpmath.mpf(2) ** (-(prec // 2))
        for m, (pt, ref) in enumerate(zip(pts, grid)):
            if abs(pt - ref) > tol:
                raise InvalidArgument(f"sample {m} is not on the roots-of-unity grid")
        unit = [g / radius for g in grid]
        scaled = []
        for j in range(degree_bound + 1):
            acc = mpmath.mpc(0)
            for m in range(count):
                # conj(unit^j) on the unit circle is unit^{-j}
                acc += vals[m] * unit[(j * m) % count].conjugate()
            scaled.append(acc / count)
        big = max(abs(a) for a in scaled)
        while len(scaled) > 1 and abs(scaled[-1]) <= trim_rel * big:
            scaled.pop()
        coeffs = []
        rpow = mpmath.mpf(1)
        for a in scaled:
            coeffs.append(a / rpow)
            rpow *= radius
        return ComplexPoly(coeffs)


# -- root finding -------------------------------------------------------------

def _initial_circle(coeffs: np.ndarray) -> np.ndarray:
    n = len(coeffs) - 1
    a0 = abs(coeffs[0])
    an = abs(coeffs[-1])
    radius = (a0 / an) ** (1.0 / n) if a0 > 0 else 1.0
    if not np.isfinite(radius) or radius == 0:
        radius = 1.0
    k = np.arange(n)
    return radius * np.exp(1j * (2 * np.pi * k / n + 0.4 / n + 0.1))


def _aberth_double(coeffs: np.ndarray, max_sweeps: int = 500) -> np.ndarray | None:
    """Aberth-Ehrlich in complex128, vectorised; None if it breaks down."""
    n = len(coeffs) - 1
    rev = coeffs[::-1] / coeffs[-1]
    dcoef = (np.arange(n, 0, -1) * rev[:-1])
    z = _initial_circle(coeffs)
    with np.errstate(all="ignore"):
        for _ in range(max_sweeps):
            p = np.polyval(rev, z)
            dp = np.polyval(dcoef, z)
            ratio = p / dp
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            inv = 1.0 / diff
            np.fill_diagonal(inv, 0.0)
            s = inv.sum(axis=1)
            w = ratio / (1.0 - ratio * s)
            w[~np.isfinite(w)] = 0.0
            z = z - w
            if not np.all(np.isfinite(z)):
                return None
            if np.all(np.abs(w) <= 1e-14 * np.maximum(np.abs(z), 1e-300)):
                break
    return z


def poly_roots(p: ComplexPoly, prec: int = DEFAULT_PREC, max_sweeps: int = 200) -> list:
    """All roots of p with multiplicity.

    Aberth-Ehrlich iteration from a perturbed circle: a vectorised
    double-precision pass supplies starting values, then Gauss-Seidel Aberth
    sweeps at ``prec`` bits refine each root until its residual reaches
    working accuracy, followed by Newton polishing of simple roots.  Every
    returned root satisfies |p(z)| <= 10^(-digits/2) * sum |a_j||z|^j.
    """
    n = p.degree
    if n < 1:
        raise InvalidArgument("poly_roots needs degree >= 1")
    with mp.workprec(prec):
        # exact zero roots: a relative residual test cannot certify them
        zeros = 0
        while p.coeffs[zeros] == 0:
            zeros += 1
        if zeros:
            rest = ComplexPoly(p.coeffs[zeros:])
            tail = poly_roots(rest, prec, max_sweeps) if rest.degree >= 1 else []
            return [mpmath.mpc(0)] * zeros + tail
        q = p.monic()
        cs = q.coeffs
        if n == 1:
            return [-cs[0]]
        approx = None
        try:
            cplx = q.to_complex()
            if np.all(np.isfinite(cplx)):
                approx = _aberth_double(cplx)
        except (OverflowError, ValueError):
            approx = None
        if approx is None:
            z = [mpmath.mpc(complex(w)) for w in _initial_circle(np.array([1.0] + [0.0] * (n - 1) + [1.0]))]
        else:
            z = [mpmath.mpc(complex(w)) for w in approx]

        eps = mpmath.mpf(2) ** (-(prec - 8))
        active = [True] * n
        for _ in range(max_sweeps):
            moved = False
            for i in range(n):
                if not active[i]:
                    continue
                zi = z[i]
                pv, dpv = q.eval_with_derivative(zi)
                if abs(pv) <= eps * q.scale_at(zi):
                    active[i] = False
                    continue
                s = mpmath.mpc(0)
                for j in range(n):
                    if j != i:
                        d = zi - z[j]
                        if d != 0:
                            s += 1 / d
                if dpv == 0:
                    w = pv * mpmath.mpf("1e-3")
                else:
                    ratio = pv / dpv
                    denom = 1 - ratio * s
                    w = ratio / denom if denom != 0 else ratio
                z[i] = zi - w
                moved = True
                if abs(w) <= eps * max(abs(z[i]), eps):
                    active[i] = False
            if not moved or not any(active):
                break

        target = mpmath.mpf(10) ** (-(prec * math.log10(2) / 2))
        for i in range(n):
            for _ in range(2):
                pv, dpv = q.eval_with_derivative(z[i])
                if dpv == 0 or abs(dpv) < target * q.scale_at(z[i]):
                    break
                cand = z[i] - pv / dpv
                if abs(q(cand)) < abs(pv):
                    z[i] = cand
                else:
                    break
        bad = [i for i in range(n) if abs(q(z[i])) > target * q.scale_at(z[i])]
        if bad:
            raise NumericFailure(
                f"{len(bad)} of {n} roots did not converge in {max_sweeps} sweeps",
                partial=list(z))
        return list(z)
