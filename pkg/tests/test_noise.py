import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import stats

from qbif.errors import InvalidArgument
from qbif.noise import (DiskLaw, NoiseRealization, StreamSeed, realize_sequence, sample_disk,
                        unit_draws)


def test_dirac_law_returns_center_exactly():
    law = DiskLaw(-0.75 + 0.1j, 0)
    for n in (0, 1, 99):
        assert sample_disk(law, StreamSeed(123), n) == -0.75 + 0.1j
    assert np.all(realize_sequence(law, StreamSeed(), 20).params == law.center)


def test_support_sweep():
    w = unit_draws(StreamSeed(1), 0, 1_000_000)
    assert np.all(np.abs(w) <= 1.0)
    law = DiskLaw(-1, 0.04)
    c = law.map_unit(w)
    assert np.all(np.abs(c + 1) <= 0.04 * (1 + 1e-15))


def test_equal_area_sectors_chi_square():
    w = unit_draws(StreamSeed(2), 0, 1_000_000)
    # 8 annuli of equal area times 8 angular sectors
    ring = np.minimum((np.abs(w) ** 2 * 8).astype(int), 7)
    sector = np.minimum(((np.angle(w) + np.pi) / (2 * np.pi) * 8).astype(int), 7)
    counts = np.bincount(ring * 8 + sector, minlength=64)
    assert stats.chisquare(counts).pvalue > 0.001


def test_mean_modulus_two_thirds():
    w = unit_draws(StreamSeed(3), 0, 1_000_000)
    assert abs(np.abs(w).mean() - 2 / 3) <= 0.005


def test_prefix_property():
    law = DiskLaw(0.1, 0.3)
    a = realize_sequence(law, StreamSeed(5), 5)
    b = realize_sequence(law, StreamSeed(5), 10)
    assert np.array_equal(a.params, b.params[:5])


@given(st.integers(0, 2 ** 63), st.integers(0, 500))
def test_sample_matches_realization_entry(master, n):
    law = DiskLaw(0.2 - 0.3j, 0.5)
    seed = StreamSeed(master, 17)
    seq = realize_sequence(law, seed, n + 1)
    assert sample_disk(law, seed, n) == seq.params[n]


def test_distinct_streams_differ():
    firsts = {complex(unit_draws(StreamSeed(42, i), 0, 1)[0]) for i in range(10_000)}
    assert len(firsts) == 10_000


def test_random_access_matches_sequential():
    seed = StreamSeed(8, 3)
    whole = unit_draws(seed, 0, 101)
    for start in (0, 1, 2, 37, 100):
        assert np.array_equal(unit_draws(seed, start, 101 - start), whole[start:])


def test_invalid_inputs():
    with pytest.raises(InvalidArgument):
        DiskLaw(0, -0.1)
    with pytest.raises(InvalidArgument):
        StreamSeed(-1)
    with pytest.raises(InvalidArgument):
        realize_sequence(DiskLaw(0, 1), StreamSeed(), 0)
    with pytest.raises(InvalidArgument):
        NoiseRealization([0, 2], DiskLaw(0, 1))


def test_shifted_realization():
    omega = realize_sequence(DiskLaw(0, 1), StreamSeed(), 10)
    assert np.array_equal(omega.shifted(3).params, omega.params[3:])
