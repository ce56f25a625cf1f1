"""Propagation of -u'' + V u = z u along the half line.

The state vector is (u', u).  Over a cell where V averages vbar the exact
flow is

    [[cosh(w),        kappa**2 * S],
     [S,              cosh(w)    ]],   w = kappa*h,  S = sinh(w)/kappa,

with kappa**2 = vbar - z.  Matrices are kept as a unit-scale mantissa plus
a separate log scale so that products over 1e6 cells or repeated periods
never overflow: each cell matrix is divided by exp(|Re w|), long products
are folded pairwise (tree order) with per-pass rescaling, and repeated
patterns go through exponentiation by squaring.

Zero counting does not use the matrices at all: the Pruefer angle advances
by exact per-cell crossing counts (at most one sign change on a hyperbolic
cell, a closed-form floor count on an oscillatory cell), so the reported
eigenvalue counts are integers free of step error for step potentials.

The Volterra route builds the iterated-kernel partial sum on a composite
quadrature grid aligned with the potential's discontinuities.  It shares no
code with the transfer route, which is the point: the two must agree to
high accuracy wherever both are defined.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import potentials
from .errors import (
    DegenerateDisk,
    HorizonExceeded,
    InvalidStep,
    QuadratureFailure,
    ZeroSolution,
)

__all__ = [
    "SpectralPoint",
    "spectral_point",
    "ScaledTransferMatrix",
    "SolutionSample",
    "WeylDisk",
    "MeasureCDF",
    "transfer_matrix",
    "dirichlet_solution",
    "log_growth",
    "log_growth_profile",
    "lyapunov_estimate",
    "eigenvalue_count",
    "zero_counting_cdf",
    "weyl_m_estimate",
    "volterra_solution",
    "volterra_terms",
]

_CHUNK = 1 << 16


@dataclass(frozen=True)
class SpectralPoint:
    """Energy z together with the branch k = sqrt(-z), Re k >= 0.

    On the positive real axis the branch is the limit from the upper half
    plane, k = -i*sqrt(lambda), so free solutions read sinh(kx)/k = sin(sqrt(
    lambda) x)/sqrt(lambda) there.
    """

    z: complex
    k: complex


def spectral_point(z):
    z = complex(z)
    if z.imag == 0.0:
        lam = z.real
        if lam > 0.0:
            k = complex(0.0, -math.sqrt(lam))
        else:
            k = complex(math.sqrt(-lam), 0.0)
    else:
        k = cmath.sqrt(-z)
        if k.real < 0.0:
            k = -k
    return SpectralPoint(z, k)


@dataclass(frozen=True, eq=False)
class ScaledTransferMatrix:
    """Transfer matrix e**log_scale * m with the mantissa m at unit norm."""

    m: np.ndarray
    log_scale: float

    def matrix(self):
        """The literal matrix; may overflow for long propagations."""
        return math.exp(self.log_scale) * self.m

    def det_log_defect(self):
        """log det(e**log_scale * m); zero for an exact transfer matrix."""
        d = self.m[0, 0] * self.m[1, 1] - self.m[0, 1] * self.m[1, 0]
        return cmath.log(d) + 2.0 * self.log_scale


@dataclass(frozen=True)
class SolutionSample:
    """Scaled solution data: actual u = u * e**log_scale, same for du."""

    u: complex
    du: complex
    log_scale: float


@dataclass(frozen=True)
class WeylDisk:
    """Truncation estimate of the Weyl m function: a disk center and radius."""

    value: complex
    radius: float


@dataclass(frozen=True, eq=False)
class MeasureCDF:
    """A cumulative distribution sampled on an increasing energy grid."""

    lam: np.ndarray
    cdf: np.ndarray


def _check_step(step):
    if not (isinstance(step, (int, float)) and math.isfinite(step) and step > 0):
        raise InvalidStep(f"step must be a positive finite number, got {step!r}")


# ---------------------------------------------------------------------------
# cell matrices and scaled products

def _cell_matrices(widths, values, z):
    """Per-cell flow matrices scaled by exp(-|Re w|); returns (mats, log_sum)."""
    h = np.asarray(widths, dtype=float)
    kap2 = np.asarray(values, dtype=complex) - z
    kap = np.sqrt(kap2)
    w = kap * h
    rho = np.abs(w.real)
    ep = np.exp(w - rho)
    em = np.exp(-w - rho)
    C = 0.5 * (ep + em)
    Sh = 0.5 * (ep - em)
    small = np.abs(w) < 1e-4
    kap_safe = np.where(small, 1.0, kap)
    w2 = w * w
    # sinh(w)/w = 1 + w^2/6 + w^4/120 + ... guards the kappa -> 0 cancellation
    series = h * (1.0 + w2 / 6.0 * (1.0 + w2 / 20.0)) * np.exp(-rho)
    S = np.where(small, series, Sh / kap_safe)
    B = np.where(small, kap2 * series, Sh * kap_safe)
    mats = np.empty((len(h), 2, 2), dtype=complex)
    mats[:, 0, 0] = C
    mats[:, 0, 1] = B
    mats[:, 1, 0] = S
    mats[:, 1, 1] = C
    return mats, float(np.sum(rho))


def _tree_product(mats):
    """Ordered product mats[-1] @ ... @ mats[0], rescaled every pass."""
    sigma = 0.0
    while mats.shape[0] > 1:
        n_even = mats.shape[0] & ~1
        prod = mats[1:n_even:2] @ mats[0:n_even:2]
        if mats.shape[0] & 1:
            prod = np.concatenate([prod, mats[n_even:]])
        scale = np.max(np.abs(prod), axis=(1, 2))
        prod /= scale[:, None, None]
        sigma += float(np.sum(np.log(scale)))
        mats = prod
    return mats[0], sigma


def _matrix_power(m, log_m, count):
    """(e**log_m * m)**count by squaring, with rescaling throughout."""
    result = np.eye(2, dtype=complex)
    log_r = 0.0
    base, log_b = m, log_m
    n = count
    while True:
        if n & 1:
            result = base @ result
            s = float(np.max(np.abs(result)))
            result = result / s
            log_r += log_b + math.log(s)
        n >>= 1
        if not n:
            return result, log_r
        base = base @ base
        s = float(np.max(np.abs(base)))
        base = base / s
        log_b = 2.0 * log_b + math.log(s)


def _block_transfer(block, z):
    """Scaled transfer matrix of one segment block."""
    if isinstance(block, potentials.RepeatBlock):
        if block.count * len(block.widths) <= 8:
            widths = np.tile(block.widths, block.count)
            values = np.tile(block.values, block.count)
            mats, sigma = _cell_matrices(widths, values, z)
            m, extra = _tree_product(mats)
            return m, sigma + extra
        mats, sigma = _cell_matrices(block.widths, block.values, z)
        m, extra = _tree_product(mats)
        return _matrix_power(m, sigma + extra, block.count)
    sigma_total = 0.0
    m_total = None
    n = len(block.widths)
    for lo in range(0, n, _CHUNK):
        mats, sigma = _cell_matrices(block.widths[lo:lo + _CHUNK],
                                     block.values[lo:lo + _CHUNK], z)
        m, extra = _tree_product(mats)
        sigma_total += sigma + extra
        m_total = m if m_total is None else m @ m_total
    s = float(np.max(np.abs(m_total)))
    return m_total / s, sigma_total + math.log(s)


def _propagate(p, x0, x1, z, step, m=None, sigma=0.0):
    if m is None:
        m = np.eye(2, dtype=complex)
    for block in potentials.segments(p, x0, x1, step):
        bm, bs = _block_transfer(block, z)
        m = bm @ m
        s = float(np.max(np.abs(m)))
        m = m / s
        sigma += bs + math.log(s)
    return m, sigma


def transfer_matrix(p, x, z, step=1e-3):
    """Scaled transfer matrix of [0, x] at spectral parameter z.

    Columns propagate (u', u) initial data; the first column is the
    Dirichlet solution (u(0)=0, u'(0)=1), the second has u(0)=1, u'(0)=0.
    The mantissa is normalized to unit spectral norm.
    """
    _check_step(step)
    x = float(x)
    if x < 0:
        raise ValueError("x must be nonnegative")
    z = complex(z)
    if x == 0.0:
        return ScaledTransferMatrix(np.eye(2, dtype=complex), 0.0)
    m, sigma = _propagate(p, 0.0, x, z, step)
    nrm = float(np.linalg.norm(m, 2))
    return ScaledTransferMatrix(m / nrm, sigma + math.log(nrm))


def dirichlet_solution(p, x, z, step=1e-3):
    """Scaled (u, u') at x for the solution with u(0)=0, u'(0)=1."""
    t = transfer_matrix(p, x, z, step)
    return SolutionSample(u=complex(t.m[1, 0]), du=complex(t.m[0, 0]),
                          log_scale=t.log_scale)


def log_growth(p, x, z, step=1e-3):
    """h(x, z) = log|u(x, z)| / x for the Dirichlet solution."""
    if not x > 0:
        raise ValueError("x must be positive")
    s = dirichlet_solution(p, x, z, step)
    if s.u == 0:
        raise ZeroSolution(f"u({x}, {z}) vanished; log-growth undefined")
    return (s.log_scale + math.log(abs(s.u))) / x


def log_growth_profile(p, x_list, z, step=1e-3):
    """h(x, z) along an increasing list of checkpoints, in one propagation."""
    _check_step(step)
    xs = np.asarray(x_list, dtype=float)
    if not (np.all(xs > 0) and np.all(np.diff(xs) > 0)):
        raise ValueError("checkpoints must be positive and increasing")
    z = complex(z)
    out = np.empty(len(xs))
    m, sigma = np.eye(2, dtype=complex), 0.0
    x_prev = 0.0
    for i, x in enumerate(xs):
        m, sigma = _propagate(p, x_prev, x, z, step, m, sigma)
        u = m[1, 0]
        if u == 0:
            raise ZeroSolution(f"u({x}, {z}) vanished; log-growth undefined")
        out[i] = (sigma + math.log(abs(u))) / x
        x_prev = x
    return out


def lyapunov_estimate(p, x, z, step=1e-3):
    """Finite-x Lyapunov proxy: log of the transfer-matrix norm over x."""
    if not x > 0:
        raise ValueError("x must be positive")
    t = transfer_matrix(p, x, z, step)
    return (t.log_scale + math.log(float(np.linalg.norm(t.m, 2)))) / x


# ---------------------------------------------------------------------------
# Pruefer zero counting

def _prufer_counts(p, x, lams, step):
    """Dirichlet zero counts on (0, x] for each energy, exactly per cell."""
    lams = np.asarray(lams, dtype=float)
    U = np.zeros_like(lams)
    DU = np.ones_like(lams)
    counts = np.zeros(lams.shape, dtype=np.int64)
    half_pi = 0.5 * np.pi

    def advance(h, v):
        nonlocal U, DU, counts
        kap2 = v - lams
        osc = kap2 < 0.0
        # hyperbolic / linear branch, scaled by e^{-w} (positive, count-safe)
        w = np.sqrt(np.where(osc, 0.0, kap2)) * h
        em = np.exp(-2.0 * w)
        Ch = 0.5 * (1.0 + em)
        Sh = 0.5 * (1.0 - em)
        small = w < 1e-4
        w_safe = np.where(small, 1.0, w)
        series = h * (1.0 + w * w / 6.0) * np.exp(-w)
        S = np.where(small, series, Sh * h / w_safe)
        B = np.where(small, kap2 * series, Sh * w_safe / h)
        U2h = Ch * U + S * DU
        DU2h = B * U + Ch * DU
        crossed = ((U > 0.0) & (U2h <= 0.0)) | ((U < 0.0) & (U2h >= 0.0))
        # oscillatory branch: count zeros of sin through the angle advance
        om = np.sqrt(np.where(osc, -kap2, 1.0))
        wh = om * h
        base = np.arctan2(DU, om * U) + half_pi
        n_osc = np.floor((wh - base) / np.pi) - np.floor(-base / np.pi)
        cw, sw = np.cos(wh), np.sin(wh)
        U2o = U * cw + DU * sw / om
        DU2o = -om * U * sw + DU * cw
        counts += np.where(osc, n_osc.astype(np.int64), crossed.astype(np.int64))
        U = np.where(osc, U2o, U2h)
        DU = np.where(osc, DU2o, DU2h)
        nrm = np.maximum(np.abs(U), np.abs(DU))
        U /= nrm
        DU /= nrm

    for block in potentials.segments(p, 0.0, x, step):
        if isinstance(block, potentials.RepeatBlock):
            for _ in range(block.count):
                for h, v in zip(block.widths, block.values):
                    advance(float(h), float(v))
        else:
            for h, v in zip(block.widths, block.values):
                advance(float(h), float(v))
    return counts


def eigenvalue_count(p, x, lam, step=1e-3):
    """Number of Dirichlet eigenvalues below lam of the operator on [0, x].

    Equals the number of zeros of the Dirichlet solution at energy lam in
    (0, x], by Sturm oscillation.
    """
    _check_step(step)
    if not x > 0:
        raise ValueError("x must be positive")
    return int(_prufer_counts(p, x, np.array([float(lam)]), step)[0])


def zero_counting_cdf(p, x, lambda_grid, step=1e-3):
    """Normalized eigenvalue-counting measure: counts(lam)/x on a grid."""
    _check_step(step)
    if not x > 0:
        raise ValueError("x must be positive")
    lams = np.asarray(lambda_grid, dtype=float)
    if not np.all(np.diff(lams) > 0):
        raise ValueError("lambda_grid must be strictly increasing")
    counts = _prufer_counts(p, x, lams, step)
    return MeasureCDF(lam=lams, cdf=counts / x)


# ---------------------------------------------------------------------------
# Weyl disk

def weyl_m_estimate(p, z, x_cut, step=1e-3):
    """Weyl m-function disk from truncation at x_cut, for Im z > 0.

    The center estimate is -v(x)/u(x) (v the Neumann-type solution); the
    radius is 1/(2 Im z * integral_0^x |u|^2), where the integral comes from
    the exact identity Im(conj(u') u)(x) = Im z * integral_0^x |u|^2 rather
    than quadrature.
    """
    z = complex(z)
    if not z.imag > 0:
        raise ValueError("weyl_m_estimate needs Im z > 0")
    t = transfer_matrix(p, x_cut, z, step)
    u, du, v = t.m[1, 0], t.m[0, 0], t.m[1, 1]
    if u == 0:
        raise DegenerateDisk("Dirichlet solution vanished at the cut point")
    value = -v / u
    growth = (np.conj(du) * u).imag
    if not growth > 0:
        raise DegenerateDisk("truncation disk has no positive radius")
    try:
        radius = math.exp(-2.0 * t.log_scale) / (2.0 * growth)
    except OverflowError as exc:
        raise DegenerateDisk("disk radius overflowed") from exc
    return WeylDisk(value=complex(value), radius=float(radius))


# ---------------------------------------------------------------------------
# Volterra series

def _volterra_grid(p, x, h_target):
    """Piecewise-uniform grid on [0, x] aligned with V's discontinuities.

    Returns (nodes, cells) where cells are (i0, i1, h, vals): node index
    span, panel width, and the potential values to use at the cell's own
    nodes (right-continuous inside the cell, so the shared boundary node
    carries a different value for the two cells it belongs to).
    """
    breaks = [b for b in potentials.discontinuities(p, 0.0, x)]
    edges = [0.0, *breaks, x]
    nodes = [0.0]
    cells = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        panels = max(4, math.ceil((hi - lo) / h_target))
        panels += panels & 1
        h = (hi - lo) / panels
        i0 = len(nodes) - 1
        local = lo + np.arange(1, panels + 1) * h
        local[-1] = hi
        nodes.extend(local.tolist())
        pts = np.concatenate([[lo], local])
        pts[-1] = hi - 1e-6 * h  # left limit at the cell's right edge
        vals = np.array([potentials.evaluate(p, t) for t in pts])
        cells.append((i0, len(nodes) - 1, h, vals))
    return np.array(nodes), cells


def _partial_weights(n, h):
    """Row q holds weights integrating the first q of n uniform panels.

    Even q: composite Simpson.  Odd q >= 3: Simpson up to q-3 plus a 3/8
    block.  q == 1: the third-order four-point edge rule
    h*(9 f0 + 19 f1 - 5 f2 + f3)/24 (exact on cubics), which needs n >= 3.
    """
    P = np.zeros((n + 1, n + 1))
    for q in range(2, n + 1, 2):
        c = np.ones(q + 1)
        c[1:q:2] = 4.0
        c[2:q - 1:2] = 2.0
        P[q, :q + 1] = c * (h / 3.0)
    for q in range(3, n + 1, 2):
        P[q, :q - 2] = P[q - 3, :q - 2]
        P[q, q - 3:q + 1] += np.array([1.0, 3.0, 3.0, 1.0]) * (3.0 * h / 8.0)
    P[1, :4] = np.array([9.0, 19.0, -5.0, 1.0]) * (h / 24.0)
    return P


def _volterra_weight_matrix(p, x, h_target):
    nodes, cells = _volterra_grid(p, x, h_target)
    n_nodes = len(nodes)
    W = np.zeros((n_nodes, n_nodes))
    full_rows = np.zeros(n_nodes)  # weights*V accumulated over complete cells
    for i0, i1, h, vals in cells:
        n = i1 - i0
        P = _partial_weights(n, h)
        wf = P[n] * vals
        for q in range(1, n + 1):
            W[i0 + q, :] = full_rows
            W[i0 + q, i0:i1 + 1] += P[q] * vals
        full_rows = full_rows.copy()
        full_rows[i0:i1 + 1] += wf
    return nodes, W


def _kernel_s(diffs, k):
    if abs(k) < 1e-12:
        return diffs.astype(complex)
    return np.sinh(k * diffs) / k


def volterra_terms(p, x, z, n_terms=12, horizon=2.0, h_target=1.0 / 512.0):
    """Values at x of the first n_terms iterated-kernel terms.

    term_0 is the free solution sinh(kx)/k; term_{n+1}(y) integrates
    s(y-t) V(t) term_n(t) over [0, y].  Independent of the transfer-matrix
    route by construction.
    """
    if n_terms < 1:
        raise ValueError("need n_terms >= 1")
    x = float(x)
    if not 0 < x <= horizon:
        if x > horizon:
            raise HorizonExceeded(f"x={x} beyond Volterra horizon {horizon}")
        raise ValueError("x must be positive")
    k = spectral_point(z).k
    nodes, W = _volterra_weight_matrix(p, x, h_target)
    S = _kernel_s(nodes[:, None] - nodes[None, :], k)
    K = W * S
    term = _kernel_s(nodes, k)
    out = [term[-1]]
    for _ in range(n_terms - 1):
        term = K @ term
        if not np.all(np.isfinite(term.view(float))):
            raise QuadratureFailure("Volterra iteration produced non-finite values")
        out.append(term[-1])
    return np.array(out)


def volterra_solution(p, x, z, n_terms=12, horizon=2.0, h_target=1.0 / 512.0):
    """Partial sum of the Volterra series for the Dirichlet solution at x."""
    return complex(np.sum(volterra_terms(p, x, z, n_terms, horizon, h_target)))
