"""Binary PPM images of random Julia sets and parameter-plane overlays."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bif_bounds.mandelbrot import BAILOUT, MEMBER_ITERATIONS
from .dynamics import law_escape_radius
from .errors import InvalidArgument
from .noise import DiskLaw, StreamSeed, realize_sequence

MIN_SIDE = 16
CIRCLE_COLORS = ((255, 64, 64), (64, 200, 255), (255, 220, 0), (120, 255, 120), (255, 120, 255))


@dataclass(frozen=True)
class ImageBuffer:
    """Row-major RGB pixels, shape (height, width, 3), uint8."""

    width: int
    height: int
    pixels: np.ndarray

    def __post_init__(self):
        px = np.ascontiguousarray(self.pixels, dtype=np.uint8)
        if px.shape != (self.height, self.width, 3):
            raise InvalidArgument(f"pixel array shape {px.shape} does not match {self.width}x{self.height}")
        object.__setattr__(self, "pixels", px)

    def to_ppm(self) -> bytes:
        return f"P6\n{self.width} {self.height}\n255\n".encode("ascii") + self.pixels.tobytes()

    def save(self, path) -> None:
        with open(path, "wb") as fh:
            fh.write(self.to_ppm())

    @classmethod
    def from_ppm(cls, data: bytes) -> "ImageBuffer":
        parts = data.split(b"\n", 3)
        if parts[0] != b"P6" or parts[2] != b"255":
            raise InvalidArgument("not a P6 image with maxval 255")
        w, h = map(int, parts[1].split())
        px = np.frombuffer(parts[3], dtype=np.uint8).reshape(h, w, 3)
        return cls(w, h, px)


def _check_view(viewport, width, height):
    xmin, xmax, ymin, ymax = map(float, viewport)
    if not (xmax > xmin and ymax > ymin):
        raise InvalidArgument(f"empty viewport {viewport}")
    if width < MIN_SIDE or height < MIN_SIDE:
        raise InvalidArgument(f"images must be at least {MIN_SIDE} pixels on each side")
    return xmin, xmax, ymin, ymax


def pixel_grid(viewport, width: int, height: int) -> np.ndarray:
    """Complex coordinates of pixel centres; row 0 is the top edge."""
    xmin, xmax, ymin, ymax = map(float, viewport)
    x = xmin + (np.arange(width) + 0.5) * (xmax - xmin) / width
    y = ymax - (np.arange(height) + 0.5) * (ymax - ymin) / height
    return x[None, :] + 1j * y[:, None]


def _shade(steps: np.ndarray, horizon: int) -> np.ndarray:
    """Smooth log colouring of escape steps; -1 (survived) is black."""
    t = np.log1p(np.maximum(steps, 0)) / np.log1p(horizon)
    t = np.clip(1.0 - t, 0.0, 1.0)
    rgb = np.stack([255 * t ** 0.5, 255 * t, 255 * t ** 2.5], axis=-1)
    rgb[steps < 0] = 0
    return np.round(rgb).astype(np.uint8)


def julia_escape_steps(params: np.ndarray, z: np.ndarray, R: float) -> np.ndarray:
    """Escape step of every starting point under the common sequence ``params``; -1 if none."""
    flat = z.ravel().astype(complex)
    steps = np.full(flat.size, -1, dtype=np.int64)
    idx = np.arange(flat.size)
    R2 = R * R
    for n, c in enumerate(params, start=1):
        flat = flat * flat + c
        out = (flat.real * flat.real + flat.imag * flat.imag) > R2
        if out.any():
            steps[idx[out]] = n
            keep = ~out
            idx, flat = idx[keep], flat[keep]
            if not idx.size:
                break
    return steps.reshape(z.shape)


def render_random_julia(law: DiskLaw, seed: StreamSeed, viewport, width: int, height: int,
                        horizon: int) -> ImageBuffer:
    """Filled random Julia set of one sampled sequence; escape time sets the colour."""
    _check_view(viewport, width, height)
    if horizon < 1:
        raise InvalidArgument("horizon must be >= 1")
    omega = realize_sequence(law, seed, horizon)
    steps = julia_escape_steps(omega.params, pixel_grid(viewport, width, height),
                               law_escape_radius(law))
    return ImageBuffer(width, height, _shade(steps, horizon))


def mandelbrot_steps(c: np.ndarray, iterations: int = MEMBER_ITERATIONS) -> np.ndarray:
    flat = c.ravel().astype(complex)
    steps = np.full(flat.size, -1, dtype=np.int64)
    idx = np.arange(flat.size)
    cc = flat.copy()
    z = np.zeros_like(cc)
    b2 = BAILOUT * BAILOUT
    for n in range(1, iterations + 1):
        z = z * z + cc
        out = (z.real * z.real + z.imag * z.imag) > b2
        if out.any():
            steps[idx[out]] = n
            keep = ~out
            idx, z, cc = idx[keep], z[keep], cc[keep]
            if not idx.size:
                break
    return steps.reshape(c.shape)


def render_parameter_overlay(center, radii, viewport, width: int, height: int) -> ImageBuffer:
    """Mandelbrot set by escape time with circles of the given radii about ``center``."""
    xmin, xmax, ymin, ymax = _check_view(viewport, width, height)
    grid = pixel_grid(viewport, width, height)
    px = _shade(mandelbrot_steps(grid), MEMBER_ITERATIONS)
    half = 0.75 * max((xmax - xmin) / width, (ymax - ymin) / height)
    dist = np.abs(grid - complex(center))
    for i, r in enumerate(radii):
        if r < 0:
            raise InvalidArgument("circle radii must be >= 0")
        ring = np.abs(dist - float(r)) <= half
        px[ring] = CIRCLE_COLORS[i % len(CIRCLE_COLORS)]
    return ImageBuffer(width, height, px)
