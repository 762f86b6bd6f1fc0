"""End-to-end acceptance checks, one test per criterion.

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary (see conftest.py) in addition to the usual assertion.
"""
import itertools
import math
import os
import time

import mpmath
import numpy as np
import pytest
from mpmath import mp

from conftest import ACCEPTANCE_LINES
from qbif.bif_bounds import (InvariantDiskCertificate, check_invariant_disks, combine_bounds,
                             containment_transfer, discriminant_upper_bound, find_attracting_cycle,
                             lower_bound_invariant_disks, mandelbrot_distance, maximize_rho,
                             replay_certificate, rho_of_delta, scan_discriminant,
                             square_support_disks, delta_max)
from qbif.bif_bounds.disks import _propagate
from qbif.dynamics import superattracting_parameter
from qbif.escape_stats import escape_times, estimate_T, tail_fit
from qbif.noise import DiskLaw, StreamSeed
from qbif.poly_algebra import ComplexPoly, circle_points, discriminant, interpolate_from_circle, poly_roots


def record(n, title, checks, elapsed, limit):
    """checks: list of (label, ok, detail)."""
    in_time = elapsed < limit
    ok = all(c[1] for c in checks) and in_time
    parts = [f"{label}: {'ok' if good else 'FAILED'} ({detail})" for label, good, detail in checks]
    parts.append(f"runtime {elapsed:.1f}s < {limit:g}s: {'ok' if in_time else 'FAILED'}")
    line = f"criterion {n:>2} {'PASS' if ok else 'FAIL'}  {title}; " + "; ".join(parts)
    ACCEPTANCE_LINES[n] = line
    print(line)
    assert ok, line


def airplane():
    return [c for c in superattracting_parameter(3, primitive=True) if abs(c.imag) < 1e-30][0]


def test_criterion_01_cardioid_centre():
    t = time.perf_counter()
    r, _ = lower_bound_invariant_disks(0, 1, 1e-6)
    cert = discriminant_upper_bound(0, 1, 1, (0,))
    elapsed = time.perf_counter() - t
    record(1, "r_bif(0) = 1/4", [
        ("invariant-disk lower in [0.2499, 0.2501]", 0.2499 <= r <= 0.2501, f"{r:.10f}"),
        ("discriminant upper = 0.25 +- 1e-12", abs(cert.bound - 0.25) <= 1e-12, f"{cert.bound!r}"),
    ], elapsed, 1)


def test_criterion_02_exact_segment():
    t = time.perf_counter()
    checks = []
    for c in (0.05, 0.1, 0.2):
        rep = combine_bounds(c)
        want = 0.25 - c
        ok = abs(rep.best_lower - want) <= 1e-6 and abs(rep.best_upper - want) <= 1e-6
        checks.append((f"c={c}", ok, f"[{rep.best_lower:.9f}, {rep.best_upper:.9f}] vs {want:.9f}"))
    record(2, "exact segment r_bif(c) = 1/4 - c", checks, time.perf_counter() - t, 5)


def test_criterion_03_basilica_lower():
    t = time.perf_counter()
    d, r = maximize_rho()
    lb, _ = lower_bound_invariant_disks(-1, 2, 1e-5)
    elapsed = time.perf_counter() - t
    record(3, "c = -1 lower bound", [
        ("delta* = 0.229 +- 1e-3", abs(d - 0.229) <= 1e-3, mpmath.nstr(d, 10)),
        ("r_max = 0.0386 +- 5e-4", abs(r - 0.0386) <= 5e-4, mpmath.nstr(r, 10)),
        ("binary search within 1e-4 of r_max", abs(lb - float(r)) <= 1e-4, f"{lb:.8f}"),
    ], elapsed, 5)


def test_criterion_04_basilica_upper():
    t = time.perf_counter()
    cert = discriminant_upper_bound(-1, 4, 6, (1, 2, 5, 4), 256)
    elapsed = time.perf_counter() - t
    record(4, "c = -1 upper bound from tuple (1,2,5,4)", [
        ("|rho0| in [0.0395, 0.0402]", 0.0395 <= cert.bound <= 0.0402, f"{cert.bound:.10f}"),
        ("residual <= 1e-10 local scale", cert.residual <= 1e-10 * cert.local_scale,
         f"{cert.residual:.2e} vs scale {cert.local_scale:.2e}"),
        ("fixed-point gap <= 1e-6", cert.fixed_point_gap <= 1e-6, f"{cert.fixed_point_gap:.2e}"),
        ("multiplier error <= 1e-4", cert.multiplier_error <= 1e-4, f"{cert.multiplier_error:.2e}"),
    ], elapsed, 60)


def test_criterion_05_tuple_scan():
    t = time.perf_counter()
    scan = scan_discriminant(-1, 4, 6)
    minimizers = scan.minimizers(1e-6)
    # spot-check tuples that were not computed directly
    reps = set(scan.certificates)
    others = [m for m in minimizers if m not in reps][:3]
    direct = [discriminant_upper_bound(-1, 4, 6, m).bound for m in others]
    elapsed = time.perf_counter() - t
    record(5, "tuple scan over 6^4 candidates (symmetry-reduced)", [
        ("minimum ~ 0.0399", abs(scan.best.bound - 0.0399) <= 1e-4, f"{scan.best.bound:.10f}"),
        ("24 raw tuples attain it within 1e-6", len(minimizers) == 24, f"{len(minimizers)} tuples"),
        ("(1,2,5,4) among them", (1, 2, 5, 4) in minimizers, ""),
        ("non-representatives agree when computed directly",
         all(abs(b - scan.best.bound) <= 1e-6 for b in direct), f"{len(direct)} checked"),
        ("no tuple failed", not scan.failures, f"{len(scan.failures)} failures"),
    ], elapsed, 1800)


@pytest.mark.slow
@pytest.mark.skipif(not os.environ.get("QBIF_FULL_SCAN"), reason="set QBIF_FULL_SCAN=1 for the 1296-tuple scan")
def test_criterion_05_full_scan():
    t = time.perf_counter()
    full = scan_discriminant(-1, 4, 6, reduce_symmetry=False)
    reduced = scan_discriminant(-1, 4, 6)
    elapsed = time.perf_counter() - t
    record(5, "tuple scan over all 6^4 candidates", [
        ("minimum ~ 0.0399", abs(full.best.bound - 0.0399) <= 1e-4, f"{full.best.bound:.10f}"),
        ("24 raw tuples attain it within 1e-6", len(full.minimizers(1e-6)) == 24, ""),
        ("matches the symmetry-reduced scan", set(full.minimizers()) == set(reduced.minimizers()), ""),
        ("no tuple failed", not full.failures, f"{len(full.failures)} failures"),
    ], elapsed, 1800)


def test_criterion_06_airplane():
    t = time.perf_counter()
    c3 = airplane()
    cert = discriminant_upper_bound(c3, 3, 6, (0, 3, 0))
    elapsed = time.perf_counter() - t
    record(6, "airplane upper bound", [
        ("airplane = -1.75487766 +- 1e-6", abs(c3 - mpmath.mpf("-1.75487766")) <= 1e-6, mpmath.nstr(c3.real, 15)),
        ("bound <= 0.0022", cert.bound <= 0.0022, f"{cert.bound:.10f}"),
        ("certificate valid", cert.valid, ""),
    ], elapsed, 30)


def test_criterion_07_distances():
    t = time.perf_counter()
    cases = [(0, 0.25, 1e-3), (-1, 0.25, 1e-3), (-0.25, 0.5, 1e-3), (float(airplane().real), 0.0049, 5e-4)]
    checks = []
    for c, want, tol in cases:
        b = mandelbrot_distance(c)
        ok = abs(b.lower - want) <= tol and abs(b.upper - want) <= tol and b.lower <= b.upper
        checks.append((f"c={c:.8g}", ok, f"[{b.lower:.6f}, {b.upper:.6f}] vs {want} +- {tol:g}"))
    record(7, "distance to the boundary of M", checks, time.perf_counter() - t, 60)


def test_criterion_08_dichotomy():
    t = time.perf_counter()
    a = estimate_T(DiskLaw(0, 0.2), 0, 10_000, 10_000)
    b = estimate_T(DiskLaw(0, 0.5), 0, 10_000, 10_000)
    c = estimate_T(DiskLaw(-1, 0.02), 0, 10_000, 10_000)
    d = estimate_T(DiskLaw(-1, 0.05), 0, 10_000, 10_000)
    elapsed = time.perf_counter() - t
    record(8, "dichotomy T in {0, 1}", [
        ("T(0, 0.2) = 0 exactly", a.point_estimate == 0.0, f"{a.escapes}/{a.n_samples}"),
        ("T(0, 0.5) Wilson lower >= 0.99", b.wilson_interval[0] >= 0.99, f"lower {b.wilson_interval[0]:.5f}"),
        ("T(-1, 0.02) = 0", c.point_estimate == 0.0, f"{c.escapes}/{c.n_samples}"),
        ("T(-1, 0.05) Wilson lower >= 0.95", d.wilson_interval[0] >= 0.95,
         f"{d.escapes}/{d.n_samples} escaped within {d.horizon} steps, lower {d.wilson_interval[0]:.5f}"),
    ], elapsed, 300)


def test_criterion_09_tail():
    t = time.perf_counter()
    fit = tail_fit(DiskLaw(0, 0.5), 100_000, 10_000)
    elapsed = time.perf_counter() - t
    record(9, "typically fast escaping tail", [
        ("gamma_hat > 0", fit.gamma_hat is not None and fit.gamma_hat > 0, f"{fit.gamma_hat}"),
        ("R^2 >= 0.95", fit.r_squared is not None and fit.r_squared >= 0.95, f"{fit.r_squared}"),
        ("window", True, f"{fit.window}, {fit.tail_samples} tail samples"),
    ], elapsed, 600)


def _prop_round_trip():
    rng = np.random.default_rng(0)
    worst = 0
    with mp.workprec(256):
        for deg in (0, 7, 32, 64):
            cs = [mpmath.mpc(*rng.normal(size=2)) for _ in range(deg + 1)]
            p = ComplexPoly(cs)
            pts = circle_points(128, 1)
            got = interpolate_from_circle([(z, p(z)) for z in pts], 127)
            pad = list(got.coeffs) + [0] * (len(cs) - len(got.coeffs))
            worst = max(worst, max(abs(a - b) for a, b in zip(pad, cs)) / max(abs(a) for a in cs))
    return worst <= 1e-30, f"worst relative error {float(worst):.1e}"


def _prop_discriminant_equivalence():
    rng = np.random.default_rng(1)
    agree = 0
    with mp.workprec(256):
        for trial in range(60):
            n = int(rng.integers(2, 7))
            roots = [mpmath.mpc(complex(*rng.uniform(-2, 2, 2))) for _ in range(n)]
            if trial % 2:
                roots[-1] = roots[0]
            cs = [mpmath.mpc(1)]
            for r in roots:
                cs = [mpmath.mpc(0)] + cs
                for i in range(len(cs) - 1):
                    cs[i] -= r * cs[i + 1]
            p = ComplexPoly(cs)
            small = abs(discriminant(p)) <= 1e-20
            found = poly_roots(p)
            gap = min(abs(a - b) for a, b in itertools.combinations(found, 2))
            agree += small == (gap <= 1e-10) == bool(trial % 2)
    return agree == 60, f"{agree}/60 agree"


def _prop_specialization():
    rng = np.random.default_rng(2)
    cy = find_attracting_cycle(-1, 2)
    mods = [abs(complex(a)) for a in cy.points]
    worst = 0.0
    for delta, r in zip(rng.uniform(0, 0.5, 100), rng.uniform(0, 0.1, 100)):
        closed = _propagate(delta, mods, r)[-1]
        ref = delta ** 4 + 2 * (1 + r) * delta ** 2 + r * r + 3 * r
        worst = max(worst, abs(closed - ref) / ref)
    return worst <= 1e-13, f"100 points, worst relative {worst:.1e}"


def _prop_rho_identity():
    worst = mpmath.mpf(0)
    with mp.workprec(256):
        top = delta_max()
        for i in range(1000):
            d = top * i / 999
            rho = rho_of_delta(d)
            worst = max(worst, abs(d ** 4 + 2 * (1 + rho) * d ** 2 + rho ** 2 + 3 * rho - d))
    return worst <= 1e-20, f"1000 points, worst {mpmath.nstr(worst, 3)}"


def _prop_monotone():
    bad = 0
    for center in (0, -1, -0.5 + 0.5j):
        prev = None
        for r in (0.02, 0.05, 0.1, 0.3, 0.5):
            e = escape_times(DiskLaw(center, r), 0, 200, 1000, StreamSeed(11)) > 0
            if prev is not None:
                bad += int(np.count_nonzero(prev & ~e))
            prev = e
    return bad == 0, f"{bad} violations"


def _prop_soundness_and_replay():
    issues, certs = 0, 0
    for c in (0.1, -0.25, -1, -0.99, float(airplane().real), -0.12 + 0.75j, 0.3):
        rep = combine_bounds(c)
        issues += len(rep.violations())
        for cert in rep.certificates:
            certs += 1
            if isinstance(cert, InvariantDiskCertificate):
                again = check_invariant_disks(cert.cycle, cert.radii, cert.noise_radius, cert.center)
                issues += not (isinstance(again, InvariantDiskCertificate) and min(again.slack) >= 0)
            else:
                again = replay_certificate(cert)
                issues += not (again.valid and again.precision_bits == 2 * cert.precision_bits)
    return issues == 0, f"{issues} issues over 7 reports, {certs} certificates replayed"


def test_criterion_10_properties():
    t = time.perf_counter()
    checks = []
    for label, fn in [("interpolation round trip", _prop_round_trip),
                      ("discriminant/root equivalence", _prop_discriminant_equivalence),
                      ("specialization identity", _prop_specialization),
                      ("rho identity", _prop_rho_identity),
                      ("coupled monotonicity", _prop_monotone),
                      ("soundness and certificate replay", _prop_soundness_and_replay)]:
        ok, detail = fn()
        checks.append((label, ok, detail))
    record(10, "property suites", checks, time.perf_counter() - t, 1800)


def test_criterion_11_containment():
    t = time.perf_counter()
    known = {0j: combine_bounds(0)}
    planar, dust = [], []
    for s in np.linspace(0, 0.4, 4001):
        inner, outer = square_support_disks(s)
        v = containment_transfer(inner, outer, known).verdict
        if v == "planar-minimal-set-exists":
            planar.append(s)
        elif v == "a.s.-totally-disconnected":
            dust.append(s)
    lo, hi = max(planar), min(dust)
    elapsed = time.perf_counter() - t
    record(11, "square-support containment thresholds", [
        ("planar verdict up to 1/(4 sqrt 2)", abs(lo - 0.25 / math.sqrt(2)) <= 1e-4, f"last planar s = {lo:.5f}"),
        ("disconnected verdict from 1/4 on", 0.25 - 1e-9 <= hi <= 0.2501, f"first disconnected s = {hi:.5f}"),
        ("switch consistent with s* in [0.17677, 0.25]", 0.17677 - 1e-4 <= lo < hi <= 0.25 + 1e-4, ""),
    ], elapsed, 60)
