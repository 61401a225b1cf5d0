"""Image ingestion: decoding, grayscale conversion, resizing and test fixtures.

All images are handled as :class:`GrayImage`, an immutable 2-D grid of 8-bit
intensities.  Conversion uses BT.601 luma weights and bilinear resampling with
half-pixel centres; every rounding step is round-half-up.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from PIL import Image, UnidentifiedImageError

__all__ = [
    "DEFAULT_SIZE",
    "GrayImage",
    "ImageDecodeError",
    "TargetSize",
    "load_grayscale",
    "normalize_intensity",
    "resize",
    "rgb_to_gray",
    "synth_portrait",
    "synth_uniform_levels",
]


class ImageDecodeError(ValueError):
    """Raised when a file exists but cannot be decoded as a raster image."""


@dataclass(frozen=True)
class TargetSize:
    width: int
    height: int

    def __post_init__(self):
        if int(self.width) < 1 or int(self.height) < 1:
            raise ValueError(
                f"target size must be at least 1x1, got {self.width}x{self.height}")

    @classmethod
    def parse(cls, text: str) -> "TargetSize":
        """Parse ``"WxH"`` (e.g. ``"256x256"``)."""
        parts = text.lower().split("x")
        if len(parts) != 2:
            raise ValueError(f"size must look like WxH, got {text!r}")
        try:
            w, h = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"size must look like WxH, got {text!r}") from None
        return cls(w, h)

    @property
    def shape(self) -> tuple[int, int]:
        """Numpy ``(rows, cols)`` shape."""
        return (self.height, self.width)

    def __str__(self):
        return f"{self.width}x{self.height}"


DEFAULT_SIZE = TargetSize(256, 256)


class GrayImage:
    """Immutable grid of 8-bit intensities.

    Parameters
    ----------
    pixels : array_like, shape (height, width)
        Integer intensities in ``[0, 255]``.  The data is copied into a
        read-only ``uint8`` array.
    """

    __slots__ = ("_pixels",)

    def __init__(self, pixels):
        arr = np.asarray(pixels)
        if arr.ndim != 2:
            raise ValueError(f"GrayImage needs a 2-D array, got shape {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"GrayImage cannot be empty, got shape {arr.shape}")
        if arr.dtype != np.uint8:
            if arr.dtype.kind not in "iub":
                raise ValueError(f"GrayImage needs integer pixels, got {arr.dtype}")
            if arr.min() < 0 or arr.max() > 255:
                raise ValueError("pixel values must lie in [0, 255]")
        arr = np.array(arr, dtype=np.uint8, order="C")
        arr.flags.writeable = False
        self._pixels = arr

    @classmethod
    def from_flat(cls, width: int, height: int, pixels: Sequence[int]) -> "GrayImage":
        flat = np.asarray(pixels)
        if flat.size != width * height:
            raise ValueError(
                f"expected {width * height} pixels for {width}x{height}, got {flat.size}")
        return cls(flat.reshape(height, width))

    @property
    def pixels(self) -> np.ndarray:
        """Read-only ``(height, width)`` uint8 view."""
        return self._pixels

    @property
    def width(self) -> int:
        return self._pixels.shape[1]

    @property
    def height(self) -> int:
        return self._pixels.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self._pixels.shape

    @property
    def size(self) -> TargetSize:
        return TargetSize(self.width, self.height)

    def flat(self) -> np.ndarray:
        """Row-major 1-D view of the intensities."""
        return self._pixels.ravel()

    def __array__(self, dtype=None, copy=None):
        return self._pixels if dtype is None else self._pixels.astype(dtype)

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self._pixels, other._pixels)

    __hash__ = None

    def __repr__(self):
        return f"GrayImage({self.width}x{self.height})"


def _round_half_up(x: np.ndarray) -> np.ndarray:
    return np.floor(x + 0.5)


def rgb_to_gray(rgb) -> np.ndarray:
    """BT.601 luma of an ``(..., 3)`` uint8 array, rounded half-up.

    Integer arithmetic keeps the rounding exact: ``(299 R + 587 G + 114 B + 500) // 1000``.
    """
    rgb = np.asarray(rgb, dtype=np.int64)
    y = 299 * rgb[..., 0] + 587 * rgb[..., 1] + 114 * rgb[..., 2]
    return ((y + 500) // 1000).astype(np.uint8)


def _to_uint8(arr: np.ndarray) -> np.ndarray:
    # 16-bit samples keep their high byte
    if arr.dtype == np.uint8:
        return arr
    if arr.dtype == bool:
        return arr.astype(np.uint8) * 255
    if arr.dtype.kind in "iu":
        return (np.clip(arr, 0, 65535).astype(np.uint32) >> 8).astype(np.uint8)
    raise ImageDecodeError(f"unsupported sample type {arr.dtype}")


def _pil_to_gray(img: Image.Image) -> np.ndarray:
    mode = img.mode
    if mode == "L":
        return np.asarray(img, dtype=np.uint8)
    if mode == "1":
        return np.asarray(img.convert("L"), dtype=np.uint8)
    if mode == "LA":
        return np.asarray(img, dtype=np.uint8)[..., 0]
    if mode.startswith("I"):
        # I;16, I;16B, I (16-bit PNGs decode to one of these)
        return _to_uint8(np.asarray(img))
    if mode == "P":
        img = img.convert("RGBA" if "transparency" in img.info else "RGB")
    elif mode not in ("RGB", "RGBA"):
        img = img.convert("RGB")
    arr = np.asarray(img, dtype=np.uint8)
    return rgb_to_gray(arr[..., :3])


def load_grayscale(path: str | os.PathLike, size: TargetSize | None = None) -> GrayImage:
    """Read an image file as 8-bit grayscale, optionally resizing it.

    Alpha is discarded before conversion; colour inputs use BT.601 weights.

    Raises
    ------
    FileNotFoundError, OSError
        The file cannot be opened.
    ImageDecodeError
        The file is not a decodable raster image.
    """
    path = os.fspath(path)
    try:
        with open(path, "rb") as fh:
            with Image.open(fh) as img:
                img.load()
                gray = _pil_to_gray(img)
    except (UnidentifiedImageError, SyntaxError) as exc:
        raise ImageDecodeError(f"cannot decode image {path!r}: {exc}") from exc
    except OSError as exc:
        if isinstance(exc, (FileNotFoundError, PermissionError, IsADirectoryError)):
            raise
        raise ImageDecodeError(f"cannot decode image {path!r}: {exc}") from exc
    out = GrayImage(gray)
    if size is not None:
        out = resize(out, size)
    return out


def _axis_coords(n_in: int, n_out: int):
    # half-pixel centres, clamped at the borders; source position is
    # num / den exactly, with den = 2 * n_out
    den = 2 * n_out
    num = (2 * np.arange(n_out, dtype=np.int64) + 1) * n_in - n_out
    num = np.clip(num, 0, den * (n_in - 1))
    i0 = num // den
    i1 = np.minimum(i0 + 1, n_in - 1)
    return i0, i1, num - i0 * den, den


def resize(img: GrayImage, size: TargetSize) -> GrayImage:
    """Bilinear resize to ``size``; the identity when the size already matches.

    Interpolation weights are exact rationals, so round-half-up ties are
    resolved exactly rather than at the mercy of float error.
    """
    if not isinstance(size, TargetSize):
        size = TargetSize(*size)
    if img.shape == size.shape:
        return img
    src = img.pixels.astype(np.int64)
    r0, r1, fr, dr = _axis_coords(img.height, size.height)
    c0, c1, fc, dc = _axis_coords(img.width, size.width)
    rows = src[r0] * (dr - fr)[:, None] + src[r1] * fr[:, None]
    out = rows[:, c0] * (dc - fc)[None, :] + rows[:, c1] * fc[None, :]
    scale = dr * dc
    out = (2 * out + scale) // (2 * scale)
    return GrayImage(out.astype(np.uint8))


def normalize_intensity(img: GrayImage) -> GrayImage:
    """Min-max stretch to the full ``[0, 255]`` range.

    Constant images are returned unchanged.
    """
    px = img.pixels.astype(np.int64)
    lo, hi = int(px.min()), int(px.max())
    if lo == hi:
        return img
    span = hi - lo
    # round-half-up of (v - lo) * 255 / span, in exact integer arithmetic
    out = (2 * (px - lo) * 255 + span) // (2 * span)
    return GrayImage(out.astype(np.uint8))


def synth_uniform_levels(levels: Iterable[int], size: TargetSize) -> GrayImage:
    """Image whose histogram is exactly uniform over ``levels``.

    Levels fill consecutive row-major runs of ``width*height/len(levels)``
    pixels, i.e. horizontal bands in the order given.
    """
    levels = [int(v) for v in levels]
    if not isinstance(size, TargetSize):
        size = TargetSize(*size)
    k = len(levels)
    if not 1 <= k <= 256:
        raise ValueError(f"need between 1 and 256 levels, got {k}")
    if len(set(levels)) != k:
        raise ValueError("levels must be distinct")
    if any(v < 0 or v > 255 for v in levels):
        raise ValueError("levels must lie in [0, 255]")
    n = size.width * size.height
    if n % k:
        raise ValueError(
            f"{size} has {n} pixels, not divisible by {k} levels")
    flat = np.repeat(np.asarray(levels, dtype=np.uint8), n // k)
    return GrayImage(flat.reshape(size.shape))


def synth_portrait(seed: int, size: TargetSize = TargetSize(64, 64)) -> GrayImage:
    """Deterministic face-like test image: shaded background, head ellipse, features, noise.

    Different seeds give mutually distinct images with broad histograms.
    """
    if not isinstance(size, TargetSize):
        size = TargetSize(*size)
    rng = np.random.default_rng(seed)
    h, w = size.shape
    yy, xx = np.mgrid[0:h, 0:w]
    y = (yy + 0.5) / h
    x = (xx + 0.5) / w

    angle = rng.uniform(0, 2 * np.pi)
    bg = rng.uniform(30, 120) + rng.uniform(40, 100) * (np.cos(angle) * x + np.sin(angle) * y)
    cy, cx = rng.uniform(0.4, 0.6), rng.uniform(0.4, 0.6)
    ry, rx = rng.uniform(0.25, 0.4), rng.uniform(0.18, 0.3)
    head = ((y - cy) / ry) ** 2 + ((x - cx) / rx) ** 2 <= 1.0
    tone = rng.uniform(120, 220)
    img = np.where(head, tone - 40 * ((y - cy) / ry), bg)

    for side in (-1, 1):
        ey, ex = cy - 0.3 * ry, cx + side * 0.4 * rx
        eye = ((y - ey) / 0.04) ** 2 + ((x - ex) / 0.06) ** 2 <= 1.0
        img = np.where(eye, rng.uniform(10, 60), img)
    my = cy + 0.45 * ry
    mouth = (np.abs(y - my) < 0.02) & (np.abs(x - cx) < 0.4 * rx)
    img = np.where(mouth, rng.uniform(60, 100), img)

    img = img + rng.normal(0, rng.uniform(4, 12), size=img.shape)
    return GrayImage(np.clip(_round_half_up(img), 0, 255).astype(np.uint8))
