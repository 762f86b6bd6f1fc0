"""Upper bounds on the bifurcation radius from parabolic compositions.

For a superattracting centre c~ and a tuple (p_1, ..., p_N) put
c_i = c~ + rho * zeta_k^{p_i}.  When the discriminant Delta(rho) of
P(z; rho) = f_{c_N} o ... o f_{c_1}(z) - z vanishes, the composition has a
multiple fixed point, i.e. a parabolic cycle, and every noise radius
r > |rho| destroys the planar minimal set.  So r_bif(c~) <= |rho_0| for
each such root.

Delta(rho) is recovered by sampling the Sylvester discriminant on a circle
and interpolating; its roots are then checked individually against a
direct evaluation (residual), the fixed points of P (a near-double root)
and the multiplier there (close to 1).  This is residual certification in
extended precision, not interval arithmetic.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import mpmath
from mpmath import mp

from ..errors import DegreeBoundExceeded, InvalidArgument, NotFound, NumericFailure, ResourceLimitError
from ..poly_algebra import (DEFAULT_PREC, ComplexPoly, circle_points, compose_quadratics,
                            discriminant, interpolate_from_circle, poly_roots, to_mpc)

SAMPLE_RADIUS = mpmath.mpf("0.1")
MIN_ROOT = 1e-8
RESIDUAL_REL = 1e-10
GAP_MAX = 1e-6
MULTIPLIER_MAX = 1e-4
SCAN_CAP = 100_000
MAX_DOUBLINGS = 2


def zeta(k: int):
    return mpmath.expjpi(mpmath.mpf(2) / k)


def composition_params(center, k: int, tup, rho) -> list:
    z = zeta(k)
    return [center + rho * z ** p for p in tup]


def fixed_point_poly(center, k: int, tup, rho, prec: int = DEFAULT_PREC) -> ComplexPoly:
    """P(z; rho) = g(z) - z."""
    with mp.workprec(prec):
        g = compose_quadratics(composition_params(to_mpc(center), k, tup, to_mpc(rho)), prec=prec)
        return g - ComplexPoly([0, 1])


def delta_at(center, k: int, tup, rho, prec: int = DEFAULT_PREC):
    """Delta(rho) by a direct Sylvester evaluation."""
    return discriminant(fixed_point_poly(center, k, tup, rho, prec), prec=prec)


def sample_count(N: int) -> int:
    """Smallest power of two exceeding the degree bound 2^(N+1)."""
    return 2 ** math.ceil(math.log2(2 ** (N + 1) + 1))


def interpolated_delta(center, k: int, tup, prec: int = DEFAULT_PREC, count: int | None = None,
                       radius=SAMPLE_RADIUS) -> ComplexPoly:
    """Delta as a polynomial in rho from ``count`` samples on |rho| = radius.

    Raises DegreeBoundExceeded when the trimmed degree exceeds count/2:
    with that much spectral content the samples may be aliased.
    """
    N = len(tup)
    count = sample_count(N) if count is None else count
    with mp.workprec(prec):
        pts = circle_points(count, radius, prec)
        vals = [delta_at(center, k, tup, pt, prec) for pt in pts]
        poly = interpolate_from_circle(list(zip(pts, vals)), count - 1, prec)
    if poly.degree > count // 2:
        raise DegreeBoundExceeded(
            f"Delta has {poly.degree + 1} significant coefficients from {count} samples")
    return poly


@dataclass(frozen=True)
class ParabolicRootCertificate:
    """A validated root rho_0 of Delta; ``bound`` = |rho_0| bounds r_bif(center) from above."""

    center: mpmath.mpc
    N: int
    k: int
    tuple: tuple
    rho0: mpmath.mpc
    bound: float
    residual: float
    local_scale: float
    fixed_point_gap: float
    multiplier_error: float
    precision_bits: int

    @property
    def valid(self) -> bool:
        return (self.residual <= RESIDUAL_REL * self.local_scale
                and self.fixed_point_gap <= GAP_MAX
                and self.multiplier_error <= MULTIPLIER_MAX)

    def to_dict(self) -> dict:
        from ..report_io import encode_complex
        return {"kind": "parabolic-root", "center": encode_complex(self.center),
                "N": self.N, "k": self.k, "tuple": list(self.tuple),
                "rho0": encode_complex(self.rho0), "bound": self.bound,
                "residual": self.residual, "local_scale": self.local_scale,
                "fixed_point_gap": self.fixed_point_gap,
                "multiplier_error": self.multiplier_error,
                "precision_bits": self.precision_bits,
                "method": "residual-certified extended precision"}

    @classmethod
    def from_dict(cls, d: dict) -> "ParabolicRootCertificate":
        from ..report_io import decode_complex
        return cls(center=decode_complex(d["center"]), N=int(d["N"]), k=int(d["k"]),
                   tuple=tuple(d["tuple"]), rho0=decode_complex(d["rho0"]), bound=d["bound"],
                   residual=d["residual"], local_scale=d["local_scale"],
                   fixed_point_gap=d["fixed_point_gap"], multiplier_error=d["multiplier_error"],
                   precision_bits=int(d["precision_bits"]))


def _validate(center, k: int, tup, rho0, prec: int) -> ParabolicRootCertificate:
    with mp.workprec(prec):
        center = to_mpc(center)
        rho0 = to_mpc(rho0)
        residual = abs(delta_at(center, k, tup, rho0, prec))
        probe = mpmath.mpf("1e-3") * abs(rho0)
        local = mpmath.fsum(abs(delta_at(center, k, tup, rho0 + probe * mpmath.expjpi(mpmath.mpf(j) / 4), prec))
                            for j in range(8)) / 8
        P = fixed_point_poly(center, k, tup, rho0, prec)
        roots = poly_roots(P, prec=prec)
        gap, pair = None, None
        for a, b in itertools.combinations(roots, 2):
            d = abs(a - b)
            if gap is None or d < gap:
                gap, pair = d, (a, b)
        mid = (pair[0] + pair[1]) / 2
        g = P + ComplexPoly([0, 1])
        _, dg = g.eval_with_derivative(mid)
        return ParabolicRootCertificate(
            center=center, N=len(tup), k=k, tuple=tuple(tup), rho0=rho0,
            bound=float(abs(rho0)), residual=float(residual), local_scale=float(local),
            fixed_point_gap=float(gap), multiplier_error=float(abs(dg - 1)),
            precision_bits=prec)


def _check_args(N, k, tup):
    if N < 1 or k < 1:
        raise InvalidArgument("N and k must be >= 1")
    if len(tup) != N:
        raise InvalidArgument(f"tuple has {len(tup)} entries, N is {N}")
    if any(not 0 <= p < k for p in tup):
        raise InvalidArgument(f"tuple entries must lie in [0, {k})")


def discriminant_upper_bound(center, N: int, k: int, tup, precision_bits: int = DEFAULT_PREC,
                             count: int | None = None) -> ParabolicRootCertificate:
    """Smallest validated parabolic root |rho_0| >= 1e-8 for the given tuple.

    Candidates are tried in order of modulus; the first one that passes the
    residual, fixed-point-gap and multiplier checks is returned.  If the
    interpolated Delta looks under-sampled the sample count is doubled, at
    most twice.
    """
    tup = tuple(int(p) for p in tup)
    _check_args(N, k, tup)
    prec = int(precision_bits)
    count = sample_count(N) if count is None else count
    for attempt in range(MAX_DOUBLINGS + 1):
        try:
            delta = interpolated_delta(center, k, tup, prec, count)
            break
        except DegreeBoundExceeded:
            if attempt == MAX_DOUBLINGS:
                raise
            count *= 2
    if delta.degree < 1:
        raise NotFound("Delta is constant in rho; no parabolic parameter")
    with mp.workprec(prec):
        candidates = sorted((r for r in poly_roots(delta, prec=prec) if abs(r) >= MIN_ROOT), key=abs)
        rejected = []
        for rho in candidates:
            cert = _validate(center, k, tup, rho, prec)
            if cert.valid:
                return cert
            rejected.append(cert)
    err = NotFound(f"none of {len(candidates)} roots of Delta passed validation")
    err.partial = rejected
    raise err


def replay_certificate(cert: ParabolicRootCertificate, precision_bits: int | None = None):
    """Re-run every check for ``cert.rho0`` from scratch at doubled precision."""
    prec = precision_bits or 2 * cert.precision_bits
    return _validate(cert.center, cert.k, cert.tuple, cert.rho0, prec)


def canonical_tuple(tup, k: int) -> tuple:
    """Least representative under phase shifts p_i -> p_i + s and cyclic rotation."""
    n = len(tup)
    return min(tuple((tup[(i + r) % n] + s) % k for i in range(n))
               for r in range(n) for s in range(k))


def symmetry_classes(N: int, k: int) -> dict:
    """Map each canonical tuple to the raw tuples of its orbit."""
    classes = {}
    for tup in itertools.product(range(k), repeat=N):
        classes.setdefault(canonical_tuple(tup, k), []).append(tup)
    return classes


@dataclass
class ScanResult:
    """Minimum over a tuple scan plus the per-tuple table.

    Table rows are ``(tuple, bound or None, representative)``; with
    symmetry reduction, rows of non-representatives copy the bound of
    their representative.
    """

    best: ParabolicRootCertificate | None
    table: list
    certificates: dict = field(default_factory=dict)
    failures: dict = field(default_factory=dict)

    def minimizers(self, tol: float = 1e-6) -> list:
        if self.best is None:
            return []
        return [row[0] for row in self.table
                if row[1] is not None and row[1] <= self.best.bound + tol]

    def to_dict(self) -> dict:
        return {"best": None if self.best is None else self.best.to_dict(),
                "table": [{"tuple": list(t), "bound": b, "representative": list(rep)}
                          for t, b, rep in self.table],
                "failures": {",".join(map(str, t)): msg for t, msg in self.failures.items()}}


def _scan_one(args):
    center, k, tup, prec = args
    try:
        return tup, discriminant_upper_bound(center, len(tup), k, tup, prec), None
    except (NotFound, NumericFailure, DegreeBoundExceeded) as exc:
        return tup, None, f"{type(exc).__name__}: {exc}"


def scan_discriminant(center, N: int, k: int, precision_bits: int = DEFAULT_PREC,
                      reduce_symmetry: bool = True, workers: int = 1,
                      cap: int = SCAN_CAP) -> ScanResult:
    """Run discriminant_upper_bound over all k^N tuples.

    Phase shifts rotate rho and cyclic rotations conjugate the composition,
    so both preserve |rho_0|; with ``reduce_symmetry`` only one tuple per
    orbit is computed.
    """
    if k ** N > cap:
        raise ResourceLimitError(f"{k}^{N} tuples exceeds the scan cap {cap}")
    if reduce_symmetry:
        classes = symmetry_classes(N, k)
    else:
        classes = {t: [t] for t in itertools.product(range(k), repeat=N)}
    center = to_mpc(center)
    jobs = [(center, k, rep, precision_bits) for rep in classes]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan_one, jobs))
    else:
        results = [_scan_one(j) for j in jobs]
    table, certs, failures = [], {}, {}
    for rep, cert, err in results:
        if cert is not None:
            certs[rep] = cert
        else:
            failures[rep] = err
        for tup in classes[rep]:
            table.append((tup, None if cert is None else cert.bound, rep))
    table.sort(key=lambda row: row[0])
    best = min(certs.values(), key=lambda c: c.bound) if certs else None
    return ScanResult(best, table, certs, failures)
