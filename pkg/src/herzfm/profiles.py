"""Smooth radial profiles: ramps, cutoffs, plateau bumps, and the bump pair.

All profiles are functions of |xi| (or |x|) and vectorize over numpy
arrays.  The ramp used by the dyadic partition of unity is the standard
flat bump exp(-1/(1-t^2)) read in log2 coordinates, so it is supported
exactly on the octave (1/2, 2) and dilates by exact shifts in log2.

The bump pair (eta, eta_tilde) mirrors the smooth pair used to assemble
modulated-train symbols and test functions:

    eta       >= 0 spatially, eta >= c on {|x| <= r0}, spectrum inside a
              compact window;
    eta_tilde_hat == 1 on the spectrum of eta, compactly supported.

The classical window radii (1/1000 and 1/100) force spatial profiles
wider than any feasible box, so here the radii are parameters with
box-friendly defaults; the structural relations (nonnegativity, plateau
covering the eta spectrum) are preserved and the floor constant c is
measured, not assumed.  eta is sinc^(2M): nonnegative, spectrum the
cardinal B-spline of order 2M (closed form below), spatial decay
|x|^(-2M).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "smooth_step",
    "log_bump",
    "cutoff_varphi",
    "lowpass_psi",
    "plateau_bump",
    "bspline",
    "BumpPair",
]


def smooth_step(s):
    """C-infinity transition: 0 for s <= 0, 1 for s >= 1, monotone between."""
    s = np.asarray(s, dtype=float)
    out = np.zeros_like(s)
    out[s >= 1.0] = 1.0
    mid = (s > 0.0) & (s < 1.0)
    if np.any(mid):
        sm = s[mid]
        a = np.exp(-1.0 / sm)
        b = np.exp(-1.0 / (1.0 - sm))
        out[mid] = a / (a + b)
    return out


def log_bump(t):
    """Flat bump exp(-1/(1-(log2 t)^2)) supported on the octave (1/2, 2)."""
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    pos = t > 0
    u = np.zeros_like(t)
    u[pos] = np.log2(t[pos])
    inside = pos & (np.abs(u) < 1.0)
    if np.any(inside):
        ui = u[inside]
        out[inside] = np.exp(-1.0 / (1.0 - ui * ui))
    return out


def cutoff_varphi(r):
    """Cutoff with varphi = 1 on [1/2, 2] and support [1/4, 4] (radial)."""
    r = np.asarray(r, dtype=float)
    out = np.zeros_like(r)
    pos = r > 0
    if np.any(pos):
        u = np.log2(r[pos])
        out[pos] = smooth_step(u + 2.0) * smooth_step(2.0 - u)
    return out


def lowpass_psi(r):
    """Low-pass with psi = 1 for r <= 1 and support {r <= 2} (radial)."""
    r = np.asarray(r, dtype=float)
    out = np.ones_like(r)
    pos = r > 0
    if np.any(pos):
        u = np.log2(r[pos])
        out[pos] = smooth_step(1.0 - u)
    return out


def plateau_bump(r, plateau: float, support: float):
    """Radial bump equal to 1 for r <= plateau, 0 for r >= support."""
    if not 0 < plateau < support:
        raise ValueError("need 0 < plateau < support")
    r = np.asarray(r, dtype=float)
    return smooth_step((support - r) / (support - plateau))


def bspline(order: int, t):
    """Centered cardinal B-spline B_K(t): K-fold convolution of the unit box.

    Supported on |t| <= K/2, nonnegative, integral 1.  Irwin-Hall
    alternating sum; accurate in float64 for the small orders used here.
    """
    K = int(order)
    t = np.asarray(t, dtype=float)
    x = t + K / 2.0  # shift to [0, K]
    out = np.zeros_like(x)
    fact = math.factorial(K - 1)
    for j in range(K + 1):
        out += (-1.0) ** j * math.comb(K, j) * np.clip(x - j, 0.0, None) ** (K - 1)
    out /= fact
    out[(x <= 0) | (x >= K)] = 0.0
    return np.clip(out, 0.0, None)


@dataclass(frozen=True)
class BumpPair:
    """The (eta, eta_tilde) pair with measured constants.

    eta(x) = prod_i sinc(rate*x_i)^(2*order); its spectrum is the tensor
    B-spline of order 2*order, supported in the cube {|xi_i| <= order*rate}.
    eta_tilde_hat is a radial plateau bump, 1 for |xi| <= plateau and 0
    outside {|xi| <= support}.  Constraint: the eta spectrum must sit
    inside the plateau, sqrt(d)*order*rate <= plateau.
    """

    rate: float = 0.0625
    order: int = 4
    plateau: float = 0.375
    support: float = 0.75
    floor_radius: float = 1.0

    def __post_init__(self):
        if not 0 < self.plateau < self.support:
            raise ValueError("need 0 < plateau < support")
        if self.order < 1 or self.rate <= 0:
            raise ValueError("order >= 1 and rate > 0 required")

    @property
    def eta_bandwidth(self) -> float:
        """Radius of the spectrum of eta per coordinate (order*rate)."""
        return self.order * self.rate

    @property
    def spatial_lobe(self) -> float:
        """Half-width of the central lobe of eta (first zero of sinc)."""
        return 1.0 / self.rate

    @property
    def floor_value(self) -> float:
        """Measured lower bound of eta on {|x| <= floor_radius} (1d profile)."""
        r = min(self.floor_radius, 0.999 / self.rate)
        return float(self._sinc_pow(np.asarray([r]))[0])

    def _sinc_pow(self, x):
        x = np.asarray(x, dtype=float)
        s = np.sinc(self.rate * x)  # numpy sinc = sin(pi t)/(pi t)
        return s ** (2 * self.order)

    def eta(self, *coords):
        """Spatial eta on coordinate (sparse mesh) arrays; >= 0 everywhere."""
        out = 1.0
        for c in coords:
            out = out * self._sinc_pow(c)
        return out

    def eta_hat(self, *coords):
        """Spectrum of eta: tensor B-spline, closed form."""
        K = 2 * self.order
        out = 1.0
        for c in coords:
            out = out * bspline(K, np.asarray(c, dtype=float) / self.rate) / self.rate
        return out

    def eta_hat_radius(self, dimension: int) -> float:
        return math.sqrt(dimension) * self.eta_bandwidth

    def etatilde_hat(self, *coords):
        """Spectrum of eta_tilde: 1 on {|xi| <= plateau}, 0 outside support."""
        r = np.sqrt(sum(np.asarray(c, dtype=float) ** 2 for c in coords))
        return plateau_bump(r, self.plateau, self.support)

    def check_covers(self, dimension: int) -> None:
        if self.eta_hat_radius(dimension) > self.plateau + 1e-12:
            raise ValueError(
                f"eta spectrum radius {self.eta_hat_radius(dimension):.4g} "
                f"exceeds eta_tilde plateau {self.plateau:.4g}"
            )

    @classmethod
    def default_for(cls, dimension: int = 1) -> "BumpPair":
        bp = cls()
        bp.check_covers(dimension)
        return bp
