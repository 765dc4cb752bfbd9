"""Dense-limit predictions and scaling-collapse diagnostics.

In the dense regime every endpoint value is close to the ensemble mean
``x`` (``<r>`` for Revan indices, ``<d>`` for degree indices) and there are
about ``n x / 2`` edges, which turns each index into a closed form in ``x``:

==========  ==================  =========================
family      sum / n             ln(product) / n
==========  ==================  =========================
ZAGREB1     x^2                 x/2 * ln(2 x)
ZAGREB2     x^3 / 2             x * ln(x)
FORGOTTEN   x^3                 x * ln(sqrt(2) x)
SOMBOR      x^2 / sqrt(2)       x/2 * ln(sqrt(2) x)
==========  ==================  =========================
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, ParameterError, UsageError
from .indices import Family, Form, IndexKind, KindLike, Variant

__all__ = [
    "DEFAULT_R_MIN",
    "Prediction",
    "ScalingCurve",
    "predict",
    "predict_sum",
    "predict_log_product",
    "collapse_deviation",
    "prediction_deviation",
    "revan_kinds",
]

DEFAULT_R_MIN = 10.0
_HALF_LN2 = 0.5 * math.log(2.0)


def _kind(kind: KindLike) -> IndexKind:
    return IndexKind.from_name(kind) if isinstance(kind, str) else kind


def predict_sum(kind: KindLike, r_mean: float) -> float:
    kind = _kind(kind)
    if kind.form is not Form.SUM:
        raise UsageError(f"{kind.name} is a product index; use predict_log_product")
    if not r_mean >= 0:
        raise ParameterError(f"mean degree must be >= 0, got {r_mean!r}")
    x = float(r_mean)
    fam = kind.family
    if fam is Family.ZAGREB1:
        return x * x
    if fam is Family.ZAGREB2:
        return 0.5 * x**3
    if fam is Family.FORGOTTEN:
        return x**3
    return x * x / math.sqrt(2.0)


def predict_log_product(kind: KindLike, r_mean: float) -> float:
    kind = _kind(kind)
    if kind.form is not Form.PRODUCT:
        raise UsageError(f"{kind.name} is a sum index; use predict_sum")
    if not r_mean > 0:
        raise DomainError(f"logarithmic prediction needs mean degree > 0, got {r_mean!r}")
    x = float(r_mean)
    fam = kind.family
    if fam is Family.ZAGREB1:
        return 0.5 * x * math.log(2.0 * x)
    if fam is Family.ZAGREB2:
        return x * math.log(x)
    # ln(sqrt(2) x) = ln x + ln(2)/2
    ln_s2x = math.log(x) + _HALF_LN2
    if fam is Family.FORGOTTEN:
        return x * ln_s2x
    return 0.5 * x * ln_s2x


@dataclass(frozen=True)
class Prediction:
    kind: IndexKind
    r_mean: float
    value: float


def predict(kind: KindLike, r_mean: float) -> Prediction:
    """Predicted ``<index>/n`` (or ``<ln index>/n``) at mean (Revan) degree ``r_mean``."""
    kind = _kind(kind)
    fn = predict_sum if kind.form is Form.SUM else predict_log_product
    return Prediction(kind, float(r_mean), fn(kind, r_mean))


@dataclass(frozen=True, eq=False)
class ScalingCurve:
    """Normalised ensemble means ``<X>/n`` against the mean (Revan) degree.

    ``x`` must be strictly increasing. ``kind`` and ``label`` are descriptive.
    """

    n: int
    x: np.ndarray
    y: np.ndarray
    kind: IndexKind | None = None
    label: str = ""

    def __post_init__(self):
        x = np.asarray(self.x, dtype=np.float64)
        y = np.asarray(self.y, dtype=np.float64)
        if x.ndim != 1 or x.shape != y.shape:
            raise UsageError("curve abscissa and ordinate must be 1-d arrays of equal length")
        if x.size and not np.all(np.diff(x) > 0):
            raise UsageError("curve abscissa must be strictly increasing")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.x.tolist(), self.y.tolist()))

    @classmethod
    def from_points(cls, n: int, points: Iterable[tuple[float, float]], **kw) -> "ScalingCurve":
        pts = sorted(points)
        x = np.array([p[0] for p in pts], dtype=np.float64)
        y = np.array([p[1] for p in pts], dtype=np.float64)
        return cls(n, x, y, **kw)

    @classmethod
    def from_means(cls, n, axis_means, index_means, **kw) -> "ScalingCurve":
        """Build from raw ensemble means taken at increasing control parameter.

        Points with a non-finite mean are dropped. In the very sparse
        regime ``<r>`` need not grow with the control parameter, so only the
        longest trailing run on which the abscissa strictly increases is
        kept; that run always holds the dense end of the sweep.
        """
        ax = np.asarray(axis_means, dtype=np.float64)
        iy = np.asarray(index_means, dtype=np.float64) / n
        ok = np.isfinite(ax) & np.isfinite(iy)
        ax, iy = ax[ok], iy[ok]
        start = len(ax) - 1
        while start > 0 and ax[start - 1] < ax[start]:
            start -= 1
        return cls(n, ax[max(start, 0):], iy[max(start, 0):], **kw)

    def _first_anchor(self, lo: float) -> int:
        return max(int(np.searchsorted(self.x, lo, side="right")) - 1, 0)

    def anchors(self, lo: float) -> np.ndarray:
        """Ordinates that interpolation on ``[lo, ...]`` can touch."""
        return self.y[self._first_anchor(lo):]

    def resample(self, grid: np.ndarray, log_values: bool) -> np.ndarray:
        k = self._first_anchor(float(grid[0]))
        lx = np.log(self.x[k:])
        lg = np.log(grid)
        if log_values:
            return np.exp(np.interp(lg, lx, np.log(self.y[k:])))
        return np.interp(lg, lx, self.y[k:])


GRID_POINTS = 50


def collapse_deviation(
    curves: Sequence[ScalingCurve], r_min: float = DEFAULT_R_MIN, grid_points: int = GRID_POINTS
) -> float:
    """Largest relative spread ``(max - min) / mean`` between curves on a common grid.

    Curves are resampled on ``grid_points`` log-spaced abscissae covering
    the overlap of all curves above ``r_min``. Interpolation is linear in
    ``ln x``; when every ordinate is positive it is carried out on ``ln y``
    (exact for power laws), otherwise on ``y`` itself. Points below
    ``r_min`` still serve as interpolation anchors.
    """
    if len(curves) < 2:
        raise UsageError("collapse_deviation needs at least two curves")
    for c in curves:
        if c.x.size == 0:
            raise DomainError("empty curve")
    lo = max([r_min] + [float(c.x[0]) for c in curves])
    hi = min(float(c.x[-1]) for c in curves)
    if lo <= 0 or not lo <= hi:
        raise DomainError(f"curves have no common range above r_min = {r_min}")
    grid = np.array([lo]) if lo == hi else np.geomspace(lo, hi, grid_points)
    log_values = all(np.all(c.anchors(lo) > 0) for c in curves)
    samples = np.vstack([c.resample(grid, log_values) for c in curves])
    top, bottom = samples.max(axis=0), samples.min(axis=0)
    centre = np.abs(samples.mean(axis=0))
    spread = top - bottom
    with np.errstate(divide="ignore", invalid="ignore"):
        rel = np.where(spread == 0, 0.0, spread / centre)
    return float(rel.max())


def prediction_deviation(
    curve: ScalingCurve, kind: KindLike | None = None, r_min: float = DEFAULT_R_MIN
) -> float:
    """Max relative error of the curve against its dense-limit prediction for ``x >= r_min``."""
    kind = _kind(kind) if kind is not None else curve.kind
    if kind is None:
        raise UsageError("no index kind given for the prediction")
    mask = curve.x >= r_min
    if not mask.any():
        raise DomainError(f"curve has no points with mean degree >= {r_min}")
    pred = np.array([predict(kind, x).value for x in curve.x[mask]])
    emp = curve.y[mask]
    return float(np.max(np.abs(emp - pred) / np.abs(pred)))


def revan_kinds(form: Form | None = None) -> list[IndexKind]:
    fams = (Family.ZAGREB1, Family.ZAGREB2, Family.FORGOTTEN, Family.SOMBOR)
    forms = (Form.SUM, Form.PRODUCT) if form is None else (form,)
    return [IndexKind(f, Variant.REVAN, fo) for fo in forms for f in fams]
