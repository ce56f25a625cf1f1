"""Band structure of periodic potentials through the one-period discriminant.

For a potential of period P the discriminant is the trace of the transfer
matrix over one period.  Energies with |discriminant| <= 2 form the bands;
the lowest point of the spectrum is the smallest root of discriminant = 2.
Band edges are refined by bisection between scan samples, and a scan is
rejected as too coarse when the discriminant provably crossed the band
strip between two consecutive out-of-band samples (its sign flipped there,
so a band was skipped).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import propagation
from .errors import NotBracketed, ResolutionTooCoarse
from .martin import GapSet

__all__ = [
    "BandSpectrum",
    "discriminant",
    "lowest_periodic_eigenvalue",
    "band_spectrum",
    "to_gap_set",
]


@dataclass(frozen=True, eq=False)
class BandSpectrum:
    """Bands of a periodic operator inside a scan window.

    `bands` are closed intervals (clipped to the window); `lam` and `delta`
    keep the scan samples that produced them.
    """

    period: float
    bands: tuple
    lam: np.ndarray
    delta: np.ndarray


def discriminant(p, period, lam, step=1e-3):
    """Trace of the transfer matrix over [0, period] at real energy lam."""
    if not period > 0:
        raise ValueError("period must be positive")
    t = propagation.transfer_matrix(p, period, float(lam), step)
    return float(math.exp(t.log_scale) * (t.m[0, 0] + t.m[1, 1]).real)


def _bisect(f, lo, hi, f_lo, tol):
    """Root of f between lo (f>0) and hi (f<=0) to absolute tolerance tol."""
    del f_lo
    for _ in range(200):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if f(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def lowest_periodic_eigenvalue(p, period, window, step=1e-3, tol=1e-10, samples=512):
    """Smallest root of discriminant(lam) = 2 in the window.

    Scans `samples` energies, brackets the first downward crossing of the
    level 2, and bisects.  Raises NotBracketed when the scan never sees
    the discriminant drop to 2 (window too small or too coarse).
    """
    lo, hi = float(window[0]), float(window[1])
    if not lo < hi:
        raise ValueError("window must be an increasing pair")
    lams = np.linspace(lo, hi, int(samples))
    f = lambda lam: discriminant(p, period, lam, step) - 2.0
    prev_lam, prev_val = lams[0], f(lams[0])
    if prev_val == 0.0:
        return float(prev_lam)
    if prev_val < 0.0:
        raise NotBracketed("window must start below the bottom of the spectrum")
    for lam in lams[1:]:
        val = f(lam)
        if val <= 0.0:
            return _bisect(f, prev_lam, lam, prev_val, tol)
        prev_lam, prev_val = lam, val
    raise NotBracketed(
        f"discriminant never reached 2 on [{lo}, {hi}] with {samples} samples")


def band_spectrum(p, period, lambda_window, resolution, step=1e-3, edge_tol=1e-10):
    """Bands inside the window from a `resolution`-point discriminant scan.

    Edges between an out-of-band and an in-band sample are refined by
    bisection on |discriminant| = 2.  If two adjacent samples are both out
    of band with opposite discriminant signs, a whole band was skipped and
    ResolutionTooCoarse is raised.
    """
    lo, hi = float(lambda_window[0]), float(lambda_window[1])
    if not (lo < hi and int(resolution) >= 2):
        raise ValueError("need an increasing window and resolution >= 2")
    lams = np.linspace(lo, hi, int(resolution))
    deltas = np.array([discriminant(p, period, lam, step) for lam in lams])
    inside = np.abs(deltas) <= 2.0

    for i in range(len(lams) - 1):
        if not inside[i] and not inside[i + 1] and deltas[i] * deltas[i + 1] < 0:
            raise ResolutionTooCoarse(
                f"band skipped between lambda={lams[i]:g} and {lams[i + 1]:g}")

    def refine(lam_out, lam_in, delta_out):
        s = 1.0 if delta_out > 2.0 else -1.0
        g = lambda lam: s * discriminant(p, period, lam, step) - 2.0
        if lam_out < lam_in:
            return _bisect(g, lam_out, lam_in, None, edge_tol)
        # decreasing bracket: mirror the coordinate
        r = _bisect(lambda t: g(-t), -lam_out, -lam_in, None, edge_tol)
        return -r

    bands = []
    i, n = 0, len(lams)
    while i < n:
        if not inside[i]:
            i += 1
            continue
        j = i
        while j + 1 < n and inside[j + 1]:
            j += 1
        left = lams[i] if i == 0 else refine(lams[i - 1], lams[i], deltas[i - 1])
        right = lams[j] if j == n - 1 else refine(lams[j + 1], lams[j], deltas[j + 1])
        bands.append((float(left), float(right)))
        i = j + 1
    return BandSpectrum(period=float(period), bands=tuple(bands), lam=lams, delta=deltas)


def to_gap_set(bs):
    """Finite-gap set: first band start as the bottom, gaps between bands.

    The scan window's top is dropped; the last band is treated as running
    to infinity, which is the right reading for a window truncating a
    periodic spectrum.
    """
    if not bs.bands:
        raise ValueError("band spectrum has no bands")
    gaps = tuple((bs.bands[i][1], bs.bands[i + 1][0])
                 for i in range(len(bs.bands) - 1))
    return GapSet(b0=bs.bands[0][0], gaps=gaps)
