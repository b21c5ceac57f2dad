"""Periodic grid, discrete Fourier transform, and Lebesgue quadrature.

Conventions.
    The box is the cube [-L/2, L/2)^d with side L a power of two and N
    grid points per side (N a power of two), spacing h = L/N.  Grid
    points are x_i = -L/2 + i*h in each coordinate, stored in natural
    (ascending) order.
    Frequencies live on the lattice (1/L)*Z^d restricted to the Nyquist
    window [-N/(2L), N/(2L)), also in ascending order.  The transform
    pair follows the convention

        F(xi) = integral f(x) exp(-2*pi*i*<x, xi>) dx,

    approximated by the rectangle rule with weight h^d, so that a pure
    lattice tone exp(2*pi*i*<x, xi0>) maps to L^d at xi0 and 0 elsewhere
    (exactly, by orthogonality of the discrete characters).  The inverse
    carries the weight 1/L^d and inverts the forward map to rounding
    error.
    All L^p quadrature is the rectangle rule on the same grid, including
    quasi-norm exponents 0 < p < 1; p = inf takes the grid maximum.
"""

from __future__ import annotations

import io
import json
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "BoxSpec",
    "SampledFunction",
    "SpectralFunction",
    "EmptyRegionWarning",
    "forward_transform",
    "inverse_transform",
    "lebesgue_norm",
    "save_binary",
    "load_binary",
    "save_csv",
    "load_csv",
]

_BINARY_MAGIC = b"HZFM01\n"


class EmptyRegionWarning(UserWarning):
    """Raised as a warning when a norm region misses every grid point."""


def _is_pow2(x: float) -> bool:
    if x <= 0:
        return False
    m = math.log2(x)
    return abs(m - round(m)) < 1e-12


@dataclass(frozen=True)
class BoxSpec:
    """Geometry of the periodic box: dimension, side length, points per side."""

    dimension: int = 1
    side: float = 512.0
    points: int = 65536

    def __post_init__(self):
        if self.dimension not in (1, 2):
            raise ValueError(f"dimension must be 1 or 2, got {self.dimension}")
        if not _is_pow2(self.side) or self.side < 4:
            raise ValueError(f"side must be a power of two >= 4, got {self.side}")
        if not _is_pow2(self.points) or self.points < 8:
            raise ValueError(f"points must be a power of two >= 8, got {self.points}")

    @property
    def spacing(self) -> float:
        return self.side / self.points

    @property
    def nyquist(self) -> float:
        """Largest representable frequency magnitude, N/(2L)."""
        return self.points / (2.0 * self.side)

    @property
    def freq_spacing(self) -> float:
        return 1.0 / self.side

    @property
    def shape(self) -> tuple:
        return (self.points,) * self.dimension

    @property
    def size(self) -> int:
        return self.points**self.dimension

    @property
    def cell_volume(self) -> float:
        return self.spacing**self.dimension

    def coords1d(self) -> np.ndarray:
        return -self.side / 2.0 + self.spacing * np.arange(self.points)

    def grids(self) -> tuple:
        """Sparse meshgrid of spatial coordinates (one array per axis)."""
        x = self.coords1d()
        if self.dimension == 1:
            return (x,)
        return np.meshgrid(x, x, indexing="ij", sparse=True)

    def radius(self) -> np.ndarray:
        """|x| on the full grid."""
        g = self.grids()
        return np.sqrt(sum(np.broadcast_to(c**2, self.shape) for c in g))

    def freqs1d(self) -> np.ndarray:
        return (np.arange(self.points) - self.points // 2) / self.side

    def freq_grids(self) -> tuple:
        xi = self.freqs1d()
        if self.dimension == 1:
            return (xi,)
        return np.meshgrid(xi, xi, indexing="ij", sparse=True)

    def freq_radius(self) -> np.ndarray:
        g = self.freq_grids()
        return np.sqrt(sum(np.broadcast_to(c**2, self.shape) for c in g))

    def freq_index(self, xi) -> tuple:
        """Lattice index of an exact lattice frequency vector (reject otherwise)."""
        xi = np.atleast_1d(np.asarray(xi, dtype=float))
        idx = xi * self.side + self.points // 2
        j = np.rint(idx).astype(int)
        if not np.allclose(idx, j, atol=1e-9):
            raise ValueError(f"frequency {xi} is not on the lattice (spacing {self.freq_spacing})")
        if np.any(j < 0) or np.any(j >= self.points):
            raise ValueError(f"frequency {xi} outside the Nyquist window (+-{self.nyquist})")
        return tuple(int(v) for v in j)


def _check_same_box(a, b):
    if a.box != b.box:
        raise ValueError("operands live on different boxes")


@dataclass(eq=False)
class SampledFunction:
    """Complex-valued function sampled on the grid of a BoxSpec."""

    box: BoxSpec
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.complex128)
        if v.shape != self.box.shape:
            raise ValueError(f"values shape {v.shape} != box shape {self.box.shape}")
        if not np.all(np.isfinite(v.view(np.float64))):
            raise ValueError("values contain NaN or Inf")
        self.values = v

    @classmethod
    def from_callable(cls, box: BoxSpec, func) -> "SampledFunction":
        vals = np.broadcast_to(func(*box.grids()), box.shape).astype(np.complex128)
        return cls(box, vals.copy())

    @classmethod
    def zeros(cls, box: BoxSpec) -> "SampledFunction":
        return cls(box, np.zeros(box.shape, dtype=np.complex128))

    def copy(self) -> "SampledFunction":
        return SampledFunction(self.box, self.values.copy())

    # Small amount of arithmetic sugar; results stay on the same box.
    def __add__(self, other):
        _check_same_box(self, other)
        return SampledFunction(self.box, self.values + other.values)

    def __sub__(self, other):
        _check_same_box(self, other)
        return SampledFunction(self.box, self.values - other.values)

    def __mul__(self, scalar):
        return SampledFunction(self.box, self.values * scalar)

    __rmul__ = __mul__


@dataclass(eq=False)
class SpectralFunction:
    """Fourier coefficients on the frequency lattice of a BoxSpec."""

    box: BoxSpec
    coefficients: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=np.complex128)
        if c.shape != self.box.shape:
            raise ValueError(f"coefficients shape {c.shape} != box shape {self.box.shape}")
        self.coefficients = c

    @classmethod
    def zeros(cls, box: BoxSpec) -> "SpectralFunction":
        return cls(box, np.zeros(box.shape, dtype=np.complex128))

    def copy(self) -> "SpectralFunction":
        return SpectralFunction(self.box, self.coefficients.copy())


def forward_transform(f: SampledFunction) -> SpectralFunction:
    """Scaled DFT approximating integral f(x) exp(-2 pi i <x,xi>) dx."""
    box = f.box
    spec = np.fft.fftshift(np.fft.fftn(np.fft.ifftshift(f.values)))
    spec *= box.cell_volume
    return SpectralFunction(box, spec)


def inverse_transform(F: SpectralFunction) -> SampledFunction:
    """Inverse of forward_transform (weight 1/L^d on the frequency sum)."""
    box = F.box
    vals = np.fft.fftshift(np.fft.ifftn(np.fft.ifftshift(F.coefficients)))
    vals *= box.size / box.side**box.dimension
    return SampledFunction(box, vals)


def _region_mask(box: BoxSpec, region) -> np.ndarray | None:
    if region is None:
        return None
    if callable(region):
        mask = np.broadcast_to(region(*box.grids()), box.shape)
    else:
        mask = np.broadcast_to(np.asarray(region, dtype=bool), box.shape)
    return mask.astype(bool)


def lebesgue_norm(f: SampledFunction, p: float, region=None) -> float:
    """Rectangle-rule L^p (quasi-)norm over the box or a sub-region.

    p may be any value in (0, inf]; p = inf returns the grid maximum of
    |f| over the region.  An empty region yields 0.0 and emits
    EmptyRegionWarning.
    """
    if not p > 0:
        raise ValueError(f"p must be positive (or inf), got {p}")
    mask = _region_mask(f.box, region)
    absf = np.abs(f.values)
    if mask is not None:
        absf = absf[mask]
        if absf.size == 0:
            warnings.warn("region contains no grid points", EmptyRegionWarning)
            return 0.0
    if math.isinf(p):
        return float(absf.max())
    return float((absf**p).sum() * f.box.cell_volume) ** (1.0 / p)


# ---------------------------------------------------------------------------
# Serialization: binary (bit exact) and CSV (index, re, im).
# ---------------------------------------------------------------------------

def _header_dict(box: BoxSpec) -> dict:
    return {"dimension": box.dimension, "side": box.side, "points": box.points}


def save_binary(f: SampledFunction, path) -> None:
    header = json.dumps(_header_dict(f.box)).encode() + b"\n"
    with open(path, "wb") as fh:
        fh.write(_BINARY_MAGIC)
        fh.write(header)
        fh.write(f.values.astype(np.complex128).tobytes(order="C"))


def load_binary(path) -> SampledFunction:
    with open(path, "rb") as fh:
        magic = fh.read(len(_BINARY_MAGIC))
        if magic != _BINARY_MAGIC:
            raise ValueError(f"{path}: not a herzfm binary file")
        header = json.loads(fh.readline().decode())
        box = BoxSpec(header["dimension"], header["side"], header["points"])
        raw = fh.read()
    vals = np.frombuffer(raw, dtype=np.complex128).reshape(box.shape).copy()
    return SampledFunction(box, vals)


def save_csv(f: SampledFunction, path) -> None:
    box = f.box
    with open(path, "w") as fh:
        fh.write(f"# herzfm dimension={box.dimension} side={box.side:.17g} points={box.points}\n")
        fh.write("index,re,im\n")
        flat = f.values.reshape(-1)
        for i, v in enumerate(flat):
            fh.write(f"{i},{v.real:.17g},{v.imag:.17g}\n")


def load_csv(path) -> SampledFunction:
    with open(path) as fh:
        head = fh.readline().strip()
        if not head.startswith("# herzfm"):
            raise ValueError(f"{path}: missing herzfm CSV header")
        kv = dict(tok.split("=") for tok in head.split()[2:])
        box = BoxSpec(int(kv["dimension"]), float(kv["side"]), int(kv["points"]))
        fh.readline()  # column names
        vals = np.zeros(box.size, dtype=np.complex128)
        for line in fh:
            i, re, im = line.split(",")
            vals[int(i)] = complex(float(re), float(im))
    return SampledFunction(box, vals.reshape(box.shape))
