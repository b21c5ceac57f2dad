"""Dyadic resolution of unity and Littlewood-Paley projections.

The frame holds, for scales k in [k_min, k_max]:

    phi_hat_k(xi) = rho(2^-k |xi|) / sum_j rho(2^-j |xi|),

with rho the octave log-bump from ``profiles``.  Because rho lives on
(1/2, 2) in exact log2 coordinates, phi_hat_k(xi) = phi_hat_0(2^-k xi)
holds exactly and the family sums to 1 wherever the truncated scale
range covers the octave neighbourhood of |xi| (in particular on
2^(k_min+1) <= |xi| <= 2^(k_max-1)).  Band supports are hard-zeroed on
the lattice, so support statements are exact rather than approximate.

The frame also carries the plateau cutoff varphi (1 on [1/2,2], support
[1/4,4]), the low-pass psi (1 for |xi|<=1, support {|xi|<=2}), the
inhomogeneous low-pass Phi0_hat = 1 - sum_{k>=1} phi_hat_k (hard-zeroed
outside {|xi|<=2}), and the frame pair theta = theta_tilde with
theta_hat = sqrt(phi_hat_0), which gives sum_k conj(theta_tilde_hat_k)
* theta_hat_k = sum_k phi_hat_k = 1 on the covered annulus.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grid import BoxSpec, SampledFunction, forward_transform, inverse_transform
from .profiles import cutoff_varphi, log_bump, lowpass_psi

__all__ = ["LPFrame", "build_frame", "project", "project_inhomogeneous"]


def _normalized_band(r: np.ndarray, k: int) -> np.ndarray:
    """phi_hat_k on radii r, with exact hard-zero outside (2^(k-1), 2^(k+1))."""
    t = np.zeros_like(r)
    inside = (r > 2.0 ** (k - 1)) & (r < 2.0 ** (k + 1))
    if not np.any(inside):
        return t
    ri = r[inside]
    num = log_bump(ri * 2.0**-k)
    # Only the two octave neighbours can also be active at these radii.
    den = num + log_bump(ri * 2.0 ** -(k - 1)) + log_bump(ri * 2.0 ** -(k + 1))
    t[inside] = num / den
    return t


@dataclass(eq=False)
class LPFrame:
    """Immutable family of dyadic frequency profiles bound to a box."""

    box: BoxSpec
    k_min: int
    k_max: int

    def __post_init__(self):
        self._freq_r = self.box.freq_radius()
        self._cache = {}

    @property
    def scales(self) -> range:
        return range(self.k_min, self.k_max + 1)

    # -- radial profile evaluators (usable off the lattice as well) --------

    def phi_hat(self, k: int, r) -> np.ndarray:
        return _normalized_band(np.asarray(r, dtype=float), k)

    def varphi(self, r) -> np.ndarray:
        return cutoff_varphi(r)

    def psi(self, r) -> np.ndarray:
        return lowpass_psi(r)

    def theta_hat(self, r) -> np.ndarray:
        return np.sqrt(_normalized_band(np.asarray(r, dtype=float), 0))

    theta_tilde_hat = theta_hat

    # -- lattice multipliers ------------------------------------------------

    def band_multiplier(self, k: int) -> np.ndarray:
        """phi_hat_k on the box frequency lattice."""
        if k < self.k_min or k > self.k_max:
            raise ValueError(f"scale {k} outside frame range [{self.k_min}, {self.k_max}]")
        key = ("band", k)
        if key not in self._cache:
            self._cache[key] = _normalized_band(self._freq_r, k)
        return self._cache[key]

    def lowpass_multiplier(self) -> np.ndarray:
        """Phi0_hat = 1 - sum_{k>=1} phi_hat_k, hard-zeroed outside {|xi|<=2}."""
        key = ("phi0",)
        if key not in self._cache:
            acc = np.ones(self.box.shape)
            for k in range(1, self.k_max + 1):
                acc -= self.band_multiplier(k)
            acc[self._freq_r > 2.0] = 0.0
            np.clip(acc, 0.0, 1.0, out=acc)
            self._cache[key] = acc
        return self._cache[key]

    def theta_multiplier(self, k: int) -> np.ndarray:
        key = ("theta", k)
        if key not in self._cache:
            self._cache[key] = np.sqrt(self.band_multiplier(k))
        return self._cache[key]

    def scaled_varphi_multiplier(self, k: int) -> np.ndarray:
        """varphi(xi / 2^k) on the lattice (support 2^(k-2) <= |xi| <= 2^(k+2))."""
        return cutoff_varphi(self._freq_r * 2.0**-k)

    # -- diagnostics ---------------------------------------------------------

    def covered_annulus(self) -> tuple:
        return (2.0 ** (self.k_min + 1), 2.0 ** (self.k_max - 1))

    def partition_residual(self) -> float:
        """max |sum_k phi_hat_k - 1| over lattice points in the covered annulus."""
        lo, hi = self.covered_annulus()
        mask = (self._freq_r >= lo) & (self._freq_r <= hi)
        if not np.any(mask):
            return 0.0
        acc = np.zeros(self.box.shape)
        for k in self.scales:
            acc += self.band_multiplier(k)
        return float(np.abs(acc[mask] - 1.0).max())

    def frame_residual(self) -> float:
        """max |sum_k conj(theta_tilde_hat_k) theta_hat_k - 1| on the covered annulus."""
        lo, hi = self.covered_annulus()
        mask = (self._freq_r >= lo) & (self._freq_r <= hi)
        if not np.any(mask):
            return 0.0
        acc = np.zeros(self.box.shape)
        for k in self.scales:
            t = self.theta_multiplier(k)
            acc += t * t
        return float(np.abs(acc[mask] - 1.0).max())

    def theta_floor(self) -> float:
        """Measured min of |theta_hat| over 3/4 <= |xi| <= 5/3 (radial samples)."""
        r = np.linspace(0.75, 5.0 / 3.0, 2049)
        return float(self.theta_hat(r).min())

    def export_csv(self, path) -> None:
        """Per-scale profile table on the lattice radii, for plotting."""
        r = np.unique(self._freq_r.reshape(-1))
        with open(path, "w") as fh:
            fh.write("radius," + ",".join(f"phi_hat_{k}" for k in self.scales) + ",varphi,psi\n")
            cols = [self.phi_hat(k, r) for k in self.scales]
            vp, ps = self.varphi(r), self.psi(r)
            for i, rv in enumerate(r):
                row = [f"{rv:.12g}"] + [f"{c[i]:.12g}" for c in cols]
                row += [f"{vp[i]:.12g}", f"{ps[i]:.12g}"]
                fh.write(",".join(row) + "\n")


def build_frame(k_min: int, k_max: int, box: BoxSpec) -> LPFrame:
    """Construct the frame, rejecting scale ranges the box cannot host."""
    if k_min > k_max:
        raise ValueError(f"empty scale range [{k_min}, {k_max}]")
    if 2.0 ** (k_max + 1) > box.nyquist:
        raise ValueError(
            f"2^(k_max+1) = {2.0 ** (k_max + 1):g} exceeds Nyquist {box.nyquist:g}"
        )
    if 2.0 ** (k_min - 1) < box.freq_spacing:
        raise ValueError(
            f"2^(k_min-1) = {2.0 ** (k_min - 1):g} below lowest nonzero frequency "
            f"{box.freq_spacing:g}"
        )
    return LPFrame(box, k_min, k_max)


def default_frame(box: BoxSpec, k_min: int | None = None, k_max: int | None = None) -> LPFrame:
    """Widest feasible frame for the box (optionally clamped)."""
    lo = int(math.ceil(math.log2(box.freq_spacing))) + 1
    hi = int(math.floor(math.log2(box.nyquist))) - 1
    if k_min is not None:
        lo = k_min
    if k_max is not None:
        hi = k_max
    return build_frame(lo, hi, box)


def project_spectrum(F: np.ndarray, k: int, frame: LPFrame) -> np.ndarray:
    return F * frame.band_multiplier(k)


def project(f: SampledFunction, k: int, frame: LPFrame) -> SampledFunction:
    """Pi_k f: frequency localization to the annulus |xi| ~ 2^k (hard support)."""
    if f.box != frame.box:
        raise ValueError("function and frame live on different boxes")
    F = forward_transform(f)
    F.coefficients *= frame.band_multiplier(k)
    return inverse_transform(F)


def project_inhomogeneous(f: SampledFunction, k: int, frame: LPFrame) -> SampledFunction:
    """Lambda_k f: low-pass Phi0 at k = 0, Pi_k for k >= 1."""
    if k < 0:
        raise ValueError(f"inhomogeneous scale must be >= 0, got {k}")
    if k >= 1:
        return project(f, k, frame)
    if f.box != frame.box:
        raise ValueError("function and frame live on different boxes")
    F = forward_transform(f)
    F.coefficients *= frame.lowpass_multiplier()
    return inverse_transform(F)
