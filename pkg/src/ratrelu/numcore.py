"""Scalars, intervals, evaluation grids, and the two error metrics.

Every certification in the package reports a sup-norm and an L1 (trapezoid)
estimate measured on an explicit grid, so the discretization is always part
of the record.  Grids are uniform and endpoint-inclusive; the default
certification resolution is ``DEFAULT_CERT_N`` points.
"""

from __future__ import annotations

import contextlib
import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .errors import EvaluationError

DEFAULT_CERT_N = 100001

# Mantissa bits for the optional extended-precision backend (mpmath).
DEFAULT_PRECISION_BITS = 128


@dataclass(frozen=True)
class Interval:
    """A nonempty bounded interval [lo, hi] with lo < hi."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError(f"interval endpoints must be finite, got [{self.lo}, {self.hi}]")
        if not self.lo < self.hi:
            raise ValueError(f"interval requires lo < hi, got [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float, tol: float = 0.0) -> bool:
        return self.lo - tol <= x <= self.hi + tol


@dataclass(frozen=True)
class Grid:
    """Uniform endpoint-inclusive sample grid over an interval."""

    interval: Interval
    n: int
    points: np.ndarray

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"grid needs at least 2 points, got n={self.n}")
        if len(self.points) != self.n:
            raise ValueError("points length disagrees with n")

    @classmethod
    def uniform(cls, interval: Interval, n: int = DEFAULT_CERT_N) -> "Grid":
        pts = np.linspace(interval.lo, interval.hi, n)
        return cls(interval=interval, n=n, points=pts)

    @property
    def spacing(self) -> float:
        return self.interval.width / (self.n - 1)


@dataclass(frozen=True)
class ErrorReport:
    """Sup/L1 error measurement with the grid metadata that produced it.

    ``argmax`` is a maximizing grid point; for multidimensional
    certifications it is the first coordinate of the maximizing point and
    ``argmax_point`` holds the full tuple.
    """

    sup_err: float
    l1_err: float
    grid_n: int
    interval: Interval
    argmax: float
    argmax_point: tuple | None = None
    scheme: str = "uniform"

    def __post_init__(self):
        if self.sup_err < 0 or self.l1_err < 0:
            raise ValueError("error norms must be nonnegative")
        if not self.interval.contains(self.argmax, tol=1e-12):
            raise ValueError("argmax outside the measured interval")

    CSV_HEADER = "sup_err,l1_err,grid_n,lo,hi,argmax"

    def to_csv_row(self) -> str:
        return "{:.12g},{:.12g},{},{:.12g},{:.12g},{:.12g}".format(
            self.sup_err, self.l1_err, self.grid_n,
            self.interval.lo, self.interval.hi, self.argmax)


def evaluate_on(f, xs: np.ndarray, name: str = "function") -> np.ndarray:
    """Evaluate ``f`` on an array of points, verifying finiteness.

    ``f`` may be vectorized (preferred) or scalar-only; a non-finite value
    raises with the offending point named.
    """
    try:
        vals = np.asarray(f(xs), dtype=float)
        if vals.shape != np.shape(xs)[:1] and np.shape(xs) != vals.shape:
            raise TypeError
    except (TypeError, ValueError, IndexError):
        vals = np.array([float(f(x)) for x in xs], dtype=float)
    if vals.shape[0] != np.shape(xs)[0]:
        vals = np.broadcast_to(vals, (np.shape(xs)[0],)).astype(float)
    bad = ~np.isfinite(vals)
    if bad.any():
        i = int(np.argmax(bad))
        pt = xs[i]
        raise EvaluationError(f"{name} is non-finite at x={pt!r}")
    return vals


def _trapezoid(values: np.ndarray, spacing: float) -> float:
    # fixed summation order for reproducibility
    return float(np.trapezoid(values, dx=spacing))


def sup_error(f, g, grid: Grid) -> ErrorReport:
    """Max absolute gap between f and g over the grid, plus a trapezoid L1."""
    fv = evaluate_on(f, grid.points, "f")
    gv = evaluate_on(g, grid.points, "g")
    diff = np.abs(fv - gv)
    i = int(np.argmax(diff))
    l1 = _trapezoid(diff, grid.spacing)
    return ErrorReport(sup_err=float(diff[i]), l1_err=l1, grid_n=grid.n,
                       interval=grid.interval, argmax=float(grid.points[i]))


def l1_error(f, g, grid: Grid) -> float:
    """Composite trapezoid estimate of the integral of |f - g|."""
    fv = evaluate_on(f, grid.points, "f")
    gv = evaluate_on(g, grid.points, "g")
    return _trapezoid(np.abs(fv - gv), grid.spacing)


def sample_box(intervals: list[Interval], n: int = DEFAULT_CERT_N,
               seed: int = 0) -> tuple[np.ndarray, str]:
    """Sample a d-dimensional box for certification.

    Tensor grids for d <= 2 (about n points total), scrambled-Halton
    low-discrepancy points for d > 2.  Returns (points of shape (N, d),
    scheme description).
    """
    d = len(intervals)
    if d == 1:
        g = Grid.uniform(intervals[0], n)
        return g.points.reshape(-1, 1), f"uniform:{n}"
    if d == 2:
        per = max(2, int(round(math.sqrt(n))))
        axes = [np.linspace(iv.lo, iv.hi, per) for iv in intervals]
        xx, yy = np.meshgrid(*axes, indexing="ij")
        pts = np.column_stack([xx.ravel(), yy.ravel()])
        return pts, f"tensor:{per}x{per}"
    from scipy.stats import qmc
    m = 100000
    sampler = qmc.Halton(d=d, scramble=True, seed=seed)
    unit = sampler.random(m)
    lo = np.array([iv.lo for iv in intervals])
    hi = np.array([iv.hi for iv in intervals])
    return lo + unit * (hi - lo), f"halton:{m}"


def sup_error_box(f, g, intervals: list[Interval], n: int = DEFAULT_CERT_N,
                  seed: int = 0) -> ErrorReport:
    """Sup-norm gap over a d-dimensional box; L1 is a mean-times-volume estimate."""
    pts, scheme = sample_box(intervals, n, seed)
    fv = evaluate_on(f, pts, "f")
    gv = evaluate_on(g, pts, "g")
    diff = np.abs(fv - gv)
    i = int(np.argmax(diff))
    vol = float(np.prod([iv.width for iv in intervals]))
    l1 = float(diff.mean() * vol)
    hull = Interval(min(iv.lo for iv in intervals), max(iv.hi for iv in intervals))
    return ErrorReport(sup_err=float(diff[i]), l1_err=l1, grid_n=len(pts),
                       interval=hull, argmax=float(pts[i][0]),
                       argmax_point=tuple(float(v) for v in pts[i]), scheme=scheme)


@contextlib.contextmanager
def extended_precision(bits: int = DEFAULT_PRECISION_BITS):
    """Run a block under mpmath with the given mantissa width."""
    if bits < 53:
        raise ValueError("extended precision needs at least 53 bits")
    with mpmath.workprec(bits):
        yield mpmath.mp
