"""Crop geometry: RoC sampling, bilinear resampling, and the two
standard pre-processing pipelines.

Train-time pre-processing picks a random region of classification (RoC)
whose area fraction of the image is uniform on [sigma2_min, sigma2_max]
and whose log aspect ratio is uniform, then resamples it to a fixed
square crop.  Test-time pre-processing isotropically resizes the image so
its shorter side hits a target, then takes a centered square crop.  Both
resampling steps use bilinear interpolation with half-pixel centers and
edge clamping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .rng import RngState

PLACEMENT_ATTEMPTS = 10


@dataclass(frozen=True)
class ImageDims:
    height: int
    width: int

    def __post_init__(self):
        if self.height < 1 or self.width < 1:
            raise ValueError(f"image dims must be >= 1, got {self.height}x{self.width}")

    @property
    def area(self) -> int:
        return self.height * self.width


@dataclass(frozen=True)
class ImageBuffer:
    """Pixel carrier: (height, width, channels) float array with values in [0, 1]."""

    pixels: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.pixels, dtype=np.float64)
        if p.ndim == 2:
            p = p[:, :, np.newaxis]
        if p.ndim != 3 or p.shape[2] not in (1, 3):
            raise ValueError("pixels must be HxWxC with 1 or 3 channels")
        if p.shape[0] < 1 or p.shape[1] < 1:
            raise ValueError("image must be at least 1x1")
        if not np.all(np.isfinite(p)) or p.min() < 0.0 or p.max() > 1.0:
            raise ValueError("pixel values must be finite and within [0, 1]")
        object.__setattr__(self, "pixels", p)

    @property
    def dims(self) -> ImageDims:
        return ImageDims(self.pixels.shape[0], self.pixels.shape[1])

    @property
    def channels(self) -> int:
        return self.pixels.shape[2]

    @classmethod
    def full(cls, dims: ImageDims, channels: int, value: float) -> ImageBuffer:
        return cls(np.full((dims.height, dims.width, channels), float(value)))


@dataclass(frozen=True)
class AugmentConfig:
    """Train-time RoC sampler parameters.

    ``sigma2_*`` bound the uniformly drawn squared scale (the RoC area as
    a fraction of the image area); ``log_alpha_*`` bound the uniformly
    drawn log aspect ratio.  The default aspect range is degenerate at 1
    so sampled area fractions follow the uniform law exactly.
    """

    sigma2_min: float = 0.0784
    sigma2_max: float = 1.0
    log_alpha_min: float = 0.0
    log_alpha_max: float = 0.0
    k_train: int = 224

    def __post_init__(self):
        if not (math.isfinite(self.sigma2_min) and math.isfinite(self.sigma2_max)):
            raise ValueError("sigma2 bounds must be finite")
        if not 0.0 < self.sigma2_min <= self.sigma2_max <= 1.0:
            raise ValueError(f"need 0 < sigma2_min <= sigma2_max <= 1, got [{self.sigma2_min}, {self.sigma2_max}]")
        if not (math.isfinite(self.log_alpha_min) and math.isfinite(self.log_alpha_max)):
            raise ValueError("log-aspect bounds must be finite")
        if self.log_alpha_min > self.log_alpha_max:
            raise ValueError("need log_alpha_min <= log_alpha_max")
        if self.k_train < 1:
            raise ValueError("k_train must be >= 1")


@dataclass(frozen=True)
class TestPreprocConfig:
    """Test-time resize/crop parameters: shorter-side target and crop side."""

    k_test_image: int = 256
    k_test: int = 224

    def __post_init__(self):
        if not self.k_test_image >= self.k_test >= 1:
            raise ValueError(f"need k_test_image >= k_test >= 1, got ({self.k_test_image}, {self.k_test})")


@dataclass(frozen=True)
class RocRect:
    """A region of classification, in pixel units of the source image."""

    x: int
    y: int
    w: int
    h: int

    def __post_init__(self):
        if self.x < 0 or self.y < 0 or self.w < 1 or self.h < 1:
            raise ValueError(f"invalid rect ({self.x}, {self.y}, {self.w}, {self.h})")

    def validate_within(self, dims: ImageDims) -> None:
        if self.x + self.w > dims.width or self.y + self.h > dims.height:
            raise ValueError(
                f"rect ({self.x}, {self.y}, {self.w}, {self.h}) exceeds {dims.height}x{dims.width} image"
            )

    @property
    def area(self) -> int:
        return self.w * self.h


def _round_half_up(a):
    return np.floor(np.asarray(a, dtype=np.float64) + 0.5).astype(np.int64)


def sample_roc_batch(dims: ImageDims, cfg: AugmentConfig, rng: RngState, count: int):
    """Vectorized RoC sampling; returns (x, y, w, h) int64 arrays of length count.

    Each slot gets up to PLACEMENT_ATTEMPTS fresh (sigma, alpha) draws; if
    none fits inside the image, a centered crop with clamped aspect ratio
    and the largest fitting size is used instead.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    height, width = dims.height, dims.width
    sqrt_area = math.sqrt(dims.area)

    xs = np.empty(count, dtype=np.int64)
    ys = np.empty(count, dtype=np.int64)
    ws = np.empty(count, dtype=np.int64)
    hs = np.empty(count, dtype=np.int64)

    pending = np.arange(count)
    for _ in range(PLACEMENT_ATTEMPTS):
        if pending.size == 0:
            break
        sigma = np.sqrt(rng.uniform(cfg.sigma2_min, cfg.sigma2_max, pending.size))
        sqrt_alpha = np.exp(0.5 * rng.uniform(cfg.log_alpha_min, cfg.log_alpha_max, pending.size))
        h = _round_half_up(sigma * sqrt_alpha * sqrt_area)
        w = _round_half_up(sigma / sqrt_alpha * sqrt_area)
        fits = (h >= 1) & (h <= height) & (w >= 1) & (w <= width)
        hit = pending[fits]
        if hit.size:
            hs[hit] = h[fits]
            ws[hit] = w[fits]
            xs[hit] = rng.integers(0, width - w[fits] + 1)
            ys[hit] = rng.integers(0, height - h[fits] + 1)
        pending = pending[~fits]

    if pending.size:
        x, y, w, h = _fallback_rect(dims, cfg)
        xs[pending], ys[pending], ws[pending], hs[pending] = x, y, w, h

    return xs, ys, ws, hs


def _fallback_rect(dims: ImageDims, cfg: AugmentConfig):
    """Centered crop with aspect ratio clamped into the configured range."""
    height, width = dims.height, dims.width
    alpha_min = math.exp(cfg.log_alpha_min)
    alpha_max = math.exp(cfg.log_alpha_max)
    image_alpha = height / width
    if image_alpha > alpha_max:
        w = width
        h = min(int(_round_half_up(width * alpha_max)), height)
    elif image_alpha < alpha_min:
        h = height
        w = min(int(_round_half_up(height / alpha_min)), width)
    else:
        w, h = width, height
    return (width - w) // 2, (height - h) // 2, w, h


def sample_roc(dims: ImageDims, cfg: AugmentConfig, rng: RngState) -> RocRect:
    """Draw one train-time RoC for an image of the given dimensions."""
    xs, ys, ws, hs = sample_roc_batch(dims, cfg, rng, 1)
    return RocRect(x=int(xs[0]), y=int(ys[0]), w=int(ws[0]), h=int(hs[0]))


def bilinear_resize(pixels: np.ndarray, out_height: int, out_width: int) -> np.ndarray:
    """Resample an (H, W, C) array with half-pixel-center sample points.

    Source coordinates are clamped at the edges; interpolation is the
    two-stage lerp, which is exact on constant inputs and on identity
    resizes.
    """
    if out_height < 1 or out_width < 1:
        raise ValueError("output dims must be >= 1")
    src_h, src_w = pixels.shape[0], pixels.shape[1]

    sy = np.clip((np.arange(out_height) + 0.5) * (src_h / out_height) - 0.5, 0.0, src_h - 1.0)
    sx = np.clip((np.arange(out_width) + 0.5) * (src_w / out_width) - 0.5, 0.0, src_w - 1.0)

    y0 = np.floor(sy).astype(np.int64)
    x0 = np.floor(sx).astype(np.int64)
    y1 = np.minimum(y0 + 1, src_h - 1)
    x1 = np.minimum(x0 + 1, src_w - 1)
    fy = (sy - y0)[:, None, None]
    fx = (sx - x0)[None, :, None]

    top = pixels[np.ix_(y0, x0)]
    top = top + fx * (pixels[np.ix_(y0, x1)] - top)
    bot = pixels[np.ix_(y1, x0)]
    bot = bot + fx * (pixels[np.ix_(y1, x1)] - bot)
    out = top + fy * (bot - top)
    return np.clip(out, 0.0, 1.0)


def extract_resize(image: ImageBuffer, roc: RocRect, out_side: int) -> ImageBuffer:
    """Cut the RoC out of the image and resample it to a square crop."""
    roc.validate_within(image.dims)
    if out_side < 1:
        raise ValueError("out_side must be >= 1")
    region = image.pixels[roc.y : roc.y + roc.h, roc.x : roc.x + roc.w]
    return ImageBuffer(bilinear_resize(region, out_side, out_side))


def center_crop_pipeline(image: ImageBuffer, cfg: TestPreprocConfig) -> ImageBuffer:
    """Isotropic shorter-side resize followed by a centered square crop."""
    height, width = image.dims.height, image.dims.width
    scale = cfg.k_test_image / min(height, width)
    new_h = int(_round_half_up(height * scale))
    new_w = int(_round_half_up(width * scale))
    resized = bilinear_resize(image.pixels, new_h, new_w)
    x0 = (new_w - cfg.k_test) // 2
    y0 = (new_h - cfg.k_test) // 2
    return ImageBuffer(resized[y0 : y0 + cfg.k_test, x0 : x0 + cfg.k_test])


def scaling_factor(dims: ImageDims, roc: RocRect, out_side: int) -> float:
    """Linear scale from source image to crop: out_side / sqrt(roc area)."""
    roc.validate_within(dims)
    if out_side < 1:
        raise ValueError("out_side must be >= 1")
    return out_side / math.sqrt(roc.area)
