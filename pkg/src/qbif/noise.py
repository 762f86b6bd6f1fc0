"""Uniform disk noise with counter-based, scheduler-independent streams.

A stream is a numpy ``Philox`` generator keyed by ``(master_seed,
stream_index)``.  Draw ``n`` consumes raw outputs ``2n`` and ``2n + 1`` of
that stream, so any draw can be regenerated in isolation by setting the
Philox counter, and extending a realization never changes its prefix.

Draws are kept as points ``w = sqrt(u) exp(2 pi i v)`` of the closed unit
disk; a law B(c, r) maps them to ``c + r w``.  Laws sharing a seed are
therefore coupled: the same ``w`` drives every radius.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgument

_MASK64 = (1 << 64) - 1
_TO_UNIT = 2.0 ** -53


@dataclass(frozen=True)
class DiskLaw:
    """Uniform law on the closed disk B(center, radius); radius 0 is a Dirac mass."""

    center: complex
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if not self.radius >= 0:
            raise InvalidArgument(f"disk radius must be >= 0, got {self.radius}")

    def contains(self, c, slack: float = 1e-12) -> np.ndarray:
        c = np.asarray(c, dtype=complex)
        return np.abs(c - self.center) <= self.radius * (1 + slack) + slack

    def map_unit(self, w: np.ndarray) -> np.ndarray:
        if self.radius == 0:
            return np.full(np.shape(w), self.center, dtype=complex)
        return self.center + self.radius * w


@dataclass(frozen=True)
class StreamSeed:
    master_seed: int = 42
    stream_index: int = 0

    def __post_init__(self):
        for name in ("master_seed", "stream_index"):
            value = getattr(self, name)
            if not 0 <= int(value) <= _MASK64:
                raise InvalidArgument(f"{name} must fit in 64 bits, got {value}")
            object.__setattr__(self, name, int(value))

    @property
    def key(self) -> np.ndarray:
        return np.array([self.master_seed, self.stream_index], dtype=np.uint64)

    def substream(self, offset: int) -> "StreamSeed":
        return StreamSeed(self.master_seed, (self.stream_index + offset) & _MASK64)


@dataclass(frozen=True)
class NoiseRealization:
    """A finite prefix (c_1, ..., c_n) of a parameter sequence.

    When ``law`` is given every entry is checked to lie in its disk.
    """

    params: np.ndarray
    law: DiskLaw | None = field(default=None)

    def __post_init__(self):
        params = np.atleast_1d(np.asarray(self.params, dtype=complex))
        if params.ndim != 1:
            raise InvalidArgument("realization parameters must be one-dimensional")
        if not np.all(np.isfinite(params)):
            raise InvalidArgument("realization parameters must be finite")
        if self.law is not None and not np.all(self.law.contains(params)):
            raise InvalidArgument("realization leaves the support disk of its law")
        params.setflags(write=False)
        object.__setattr__(self, "params", params)

    def __len__(self):
        return len(self.params)

    def shifted(self, k: int) -> "NoiseRealization":
        """The shift sigma^k applied to the sequence."""
        return NoiseRealization(self.params[k:], self.law)

    @property
    def modulus_bound(self) -> float:
        """Upper bound on |c_n| over the whole sequence (law disk if known)."""
        if self.law is not None:
            return abs(self.law.center) + self.law.radius
        return float(np.max(np.abs(self.params))) if len(self.params) else 0.0


def _raw_to_unit_disk(raw: np.ndarray) -> np.ndarray:
    u = (raw[..., 0::2] >> np.uint64(11)).astype(np.float64) * _TO_UNIT
    v = (raw[..., 1::2] >> np.uint64(11)).astype(np.float64) * _TO_UNIT
    return np.sqrt(u) * np.exp(2j * np.pi * v)


def unit_draws(seed: StreamSeed, start: int, count: int) -> np.ndarray:
    """Unit-disk points for draws ``start .. start + count - 1`` of a stream."""
    if start < 0 or count < 0:
        raise InvalidArgument("draw indices must be non-negative")
    bitgen = np.random.Philox(key=seed.key, counter=start // 2)
    offset = 2 * (start % 2)
    raw = bitgen.random_raw(offset + 2 * count)[offset:]
    return _raw_to_unit_disk(raw)


class DrawStream:
    """Sequential reader over one stream; yields consecutive blocks of draws."""

    def __init__(self, seed: StreamSeed):
        self.seed = seed
        self._bitgen = np.random.Philox(key=seed.key)
        self.position = 0

    def next_raw(self, count: int) -> np.ndarray:
        self.position += count
        return self._bitgen.random_raw(2 * count)

    def next_unit(self, count: int) -> np.ndarray:
        return _raw_to_unit_disk(self.next_raw(count))


def sample_disk(law: DiskLaw, seed: StreamSeed, draw_index: int) -> complex:
    """Draw ``draw_index`` of the stream, mapped into B(center, radius)."""
    if law.radius == 0:
        return law.center
    w = unit_draws(seed, draw_index, 1)[0]
    return complex(law.map_unit(w))


def realize_sequence(law: DiskLaw, seed: StreamSeed, length: int) -> NoiseRealization:
    """The first ``length`` parameters c_1, ..., c_length of the stream."""
    if length < 1:
        raise InvalidArgument("realization length must be >= 1")
    params = law.map_unit(unit_draws(seed, 0, length))
    return NoiseRealization(params, law)
