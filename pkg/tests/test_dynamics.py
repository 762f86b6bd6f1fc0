import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from qbif.dynamics import (Status, critical_orbit_polynomial, escape_radius, green_value,
                           iterate_orbit, superattracting_parameter)
from qbif.errors import InvalidArgument
from qbif.noise import DiskLaw, StreamSeed, realize_sequence


def test_escape_radius_examples():
    assert escape_radius(0, 0) == 2
    assert escape_radius(-1, 0.04) == pytest.approx(1 + math.sqrt(2.04), abs=1e-12)
    assert escape_radius(-1, 0.04) == pytest.approx(2.42829, abs=1e-5)
    assert escape_radius(0, 0.25) == pytest.approx(2.11803, abs=1e-5)
    with pytest.raises(InvalidArgument):
        escape_radius(0, -1)


def test_escape_radius_mapping_property():
    center, r = -1, 0.04
    R = escape_radius(center, r)
    rng = np.random.default_rng(0)
    z = R * np.exp(2j * np.pi * rng.random(1000))
    c = center + r * np.exp(2j * np.pi * rng.random(1000))
    assert np.all(np.abs(z * z + c) >= 2 * R * (1 - 1e-12))


def const(c, n):
    return np.full(n, c, dtype=complex)


def test_iterate_examples():
    out = iterate_orbit(3, const(0, 10), 2, 10)
    assert out.status is Status.ESCAPED and out.escape_step == 1
    out = iterate_orbit(0, const(-1, 10_000), 2.5, 10_000)
    assert out.status is Status.SURVIVED and out.escape_step is None
    out = iterate_orbit(0, const(1, 10), 1 + math.sqrt(2), 10)
    assert out.escaped and out.escape_step == 3 and out.last_modulus == 5


def test_iterate_errors():
    with pytest.raises(InvalidArgument):
        iterate_orbit(0, const(0, 3), 2, 5)
    with pytest.raises(InvalidArgument):
        iterate_orbit(0, const(0, 3), 2, 0)


@given(st.integers(0, 2 ** 32), st.floats(0.2, 0.8))
def test_escape_absorbs(seed, r):
    law = DiskLaw(0, r)
    R = escape_radius(0, r)
    omega = realize_sequence(law, StreamSeed(seed), 400)
    out = iterate_orbit(0, omega, R, 400)
    if out.escaped:
        z = 0j
        for n, c in enumerate(omega.params[:out.escape_step + 6], 1):
            z = z * z + c
            if n >= out.escape_step:
                assert abs(z) >= 2 ** (n - out.escape_step) * R
        # minimality: nothing earlier exceeded R
        z = 0j
        for c in omega.params[:out.escape_step - 1]:
            z = z * z + c
            assert abs(z) <= R


def test_deterministic():
    omega = realize_sequence(DiskLaw(-1, 0.3), StreamSeed(4), 1000)
    a = iterate_orbit(0.1, omega, 3, 1000)
    b = iterate_orbit(0.1, omega, 3, 1000)
    assert a == b


def test_green_examples():
    assert green_value(0, const(-1, 100), 100) == 0
    assert green_value(4, const(0, 50), 50) == pytest.approx(math.log(4), rel=1e-15)
    assert green_value(0, const(1, 30), 30) > 0


def test_green_escape_coupling():
    omega = realize_sequence(DiskLaw(0, 0.5), StreamSeed(9), 10_000)
    R = escape_radius(0, 0.5)
    out = iterate_orbit(0, omega, R, 10_000)
    g = green_value(0, omega, 10_000)
    if out.escaped:
        assert g > 0
    bounded = realize_sequence(DiskLaw(0, 0.2), StreamSeed(9), 10_000)
    assert not iterate_orbit(0, bounded, escape_radius(0, 0.2), 10_000).escaped
    assert green_value(0, bounded, 10_000) <= 2.0 ** -10_000 * math.log(R) + 1e-300


def test_critical_orbit_polynomial_degree():
    p = critical_orbit_polynomial(3)
    # f_c^3(0) = (c^2 + c)^2 + c
    assert [float(a.real) for a in p.coeffs] == [0, 1, 1, 2, 1]


def test_superattracting_examples():
    assert superattracting_parameter(1) == [0]
    assert [complex(c) for c in superattracting_parameter(2, primitive=True)] == [-1]
    p3 = superattracting_parameter(3, primitive=True)
    assert len(p3) == 3
    real = [c for c in p3 if abs(c.imag) < 1e-30]
    assert len(real) == 1
    assert abs(real[0] - mpmath.mpf("-1.75487766624669276")) <= 1e-15
    assert len(superattracting_parameter(4, primitive=True)) == 6
    with pytest.raises(InvalidArgument):
        superattracting_parameter(9)
    with pytest.raises(InvalidArgument):
        superattracting_parameter(0)
