"""Sum-type and multiplicative edge-functional indices, degree and Revan variants.

Each index applies one of four edge functionals to the endpoint values of
every edge, either the vertex degrees ``d`` or the Revan degrees ``r``:

=========  ===================  ==========  ==========
family     F(x, y)              degree      Revan
=========  ===================  ==========  ==========
ZAGREB1    x + y                M1, Pi1*    R1, R1Pi
ZAGREB2    x * y                M2, Pi2     R2, R2Pi
FORGOTTEN  x^2 + y^2            F, FPi      FR, FRPi
SOMBOR     sqrt(x^2 + y^2)      SO, SOPi    RSO, RSOPi
=========  ===================  ==========  ==========

Products are only ever handled as natural logarithms; a product with a zero
factor is *degenerate* and its log is reported as ``-inf``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import UsageError
from .graph import DegreeProfile, Graph, degree_profile

__all__ = [
    "Family",
    "Variant",
    "Form",
    "IndexKind",
    "IndexReport",
    "SUM_KINDS",
    "PRODUCT_KINDS",
    "ALL_KINDS",
    "SUM_NAMES",
    "PRODUCT_NAMES",
    "INDEX_NAMES",
    "edge_functional_sum",
    "edge_functional_log_product",
    "full_report",
    "compensated_sum",
]


class Family(enum.Enum):
    ZAGREB1 = "ZAGREB1"
    ZAGREB2 = "ZAGREB2"
    FORGOTTEN = "FORGOTTEN"
    SOMBOR = "SOMBOR"


class Variant(enum.Enum):
    DEGREE = "DEGREE"
    REVAN = "REVAN"


class Form(enum.Enum):
    SUM = "SUM"
    PRODUCT = "PRODUCT"


_FAMILIES = (Family.ZAGREB1, Family.ZAGREB2, Family.FORGOTTEN, Family.SOMBOR)

_SUM_LABEL = {
    (Family.ZAGREB1, Variant.DEGREE): "M1",
    (Family.ZAGREB2, Variant.DEGREE): "M2",
    (Family.FORGOTTEN, Variant.DEGREE): "F",
    (Family.SOMBOR, Variant.DEGREE): "SO",
    (Family.ZAGREB1, Variant.REVAN): "R1",
    (Family.ZAGREB2, Variant.REVAN): "R2",
    (Family.FORGOTTEN, Variant.REVAN): "FR",
    (Family.SOMBOR, Variant.REVAN): "RSO",
}
_PRODUCT_LABEL = {
    (Family.ZAGREB1, Variant.DEGREE): "lnPi1",
    (Family.ZAGREB2, Variant.DEGREE): "lnPi2",
    (Family.FORGOTTEN, Variant.DEGREE): "lnFPi",
    (Family.SOMBOR, Variant.DEGREE): "lnSOPi",
    (Family.ZAGREB1, Variant.REVAN): "lnR1Pi",
    (Family.ZAGREB2, Variant.REVAN): "lnR2Pi",
    (Family.FORGOTTEN, Variant.REVAN): "lnFRPi",
    (Family.SOMBOR, Variant.REVAN): "lnRSOPi",
}


@dataclass(frozen=True)
class IndexKind:
    family: Family
    variant: Variant
    form: Form

    @property
    def name(self) -> str:
        table = _SUM_LABEL if self.form is Form.SUM else _PRODUCT_LABEL
        return table[self.family, self.variant]

    @property
    def integer_valued(self) -> bool:
        return self.form is Form.SUM and self.family is not Family.SOMBOR

    def counterpart(self) -> "IndexKind":
        """Same family and form, other variant (``R1`` <-> ``M1``)."""
        other = Variant.DEGREE if self.variant is Variant.REVAN else Variant.REVAN
        return IndexKind(self.family, other, self.form)

    @classmethod
    def from_name(cls, name: str) -> "IndexKind":
        key = name.strip()
        if key in _BY_NAME:
            return _BY_NAME[key]
        # accept the product names without the "ln" prefix as well
        if "ln" + key in _BY_NAME:
            return _BY_NAME["ln" + key]
        raise UsageError(f"unknown index {name!r}; known: {', '.join(INDEX_NAMES)}")

    def __str__(self):
        return self.name


def _kinds(form):
    return tuple(
        IndexKind(fam, var, form) for var in (Variant.DEGREE, Variant.REVAN) for fam in _FAMILIES
    )


SUM_KINDS = _kinds(Form.SUM)
PRODUCT_KINDS = _kinds(Form.PRODUCT)
ALL_KINDS = SUM_KINDS + PRODUCT_KINDS
SUM_NAMES = tuple(k.name for k in SUM_KINDS)
PRODUCT_NAMES = tuple(k.name for k in PRODUCT_KINDS)
INDEX_NAMES = SUM_NAMES + PRODUCT_NAMES
_BY_NAME = {k.name: k for k in ALL_KINDS}
_SUM_POS = {k: i for i, k in enumerate(SUM_KINDS)}
_PRODUCT_POS = {k: i for i, k in enumerate(PRODUCT_KINDS)}

KindLike = Union[IndexKind, str]


@dataclass(frozen=True, eq=False)
class IndexReport:
    """All sixteen indices of one graph.

    ``sums`` and ``log_products`` follow :data:`SUM_NAMES` and
    :data:`PRODUCT_NAMES`; ``degenerate[i]`` is set when product ``i`` has a
    zero factor (its log is then ``-inf``).
    """

    sums: np.ndarray
    log_products: np.ndarray
    degenerate: np.ndarray

    def __getitem__(self, key: KindLike) -> float:
        kind = IndexKind.from_name(key) if isinstance(key, str) else key
        if kind.form is Form.SUM:
            return float(self.sums[_SUM_POS[kind]])
        return float(self.log_products[_PRODUCT_POS[kind]])

    def is_degenerate(self, key: KindLike) -> bool:
        kind = IndexKind.from_name(key) if isinstance(key, str) else key
        if kind.form is Form.SUM:
            return False
        return bool(self.degenerate[_PRODUCT_POS[kind]])

    def as_dict(self) -> dict[str, float]:
        out = dict(zip(SUM_NAMES, map(float, self.sums)))
        out.update(zip(PRODUCT_NAMES, map(float, self.log_products)))
        return out


def _check_profile(g: Graph, profile: DegreeProfile):
    if profile.n != g.n or not np.array_equal(profile.degrees, g.degrees):
        raise UsageError(
            f"degree profile (n={profile.n}) does not belong to this graph (n={g.n})"
        )


def _endpoint_values(g, profile, variant):
    vals = profile.degrees if variant is Variant.DEGREE else profile.revan
    return vals[g.u], vals[g.v]


def edge_functional_sum(g: Graph, profile: DegreeProfile, kind: KindLike) -> float:
    """Sum of the family's edge functional over all edges of ``g``."""
    kind = IndexKind.from_name(kind) if isinstance(kind, str) else kind
    if kind.form is not Form.SUM:
        raise UsageError(f"{kind.name} is a product index; use edge_functional_log_product")
    _check_profile(g, profile)
    x, y = _endpoint_values(g, profile, kind.variant)
    fam = kind.family
    if fam is Family.ZAGREB1:
        return float(int(np.sum(x + y)))
    if fam is Family.ZAGREB2:
        return float(int(np.sum(x * y)))
    q = x * x + y * y
    if fam is Family.FORGOTTEN:
        return float(int(np.sum(q)))
    return math.fsum(np.sqrt(q.astype(np.float64)).tolist())


def edge_functional_log_product(
    g: Graph, profile: DegreeProfile, kind: KindLike
) -> tuple[float, bool]:
    """``(ln prod F, degenerate)``; a zero factor gives ``(-inf, True)``."""
    kind = IndexKind.from_name(kind) if isinstance(kind, str) else kind
    if kind.form is not Form.PRODUCT:
        raise UsageError(f"{kind.name} is a sum index; use edge_functional_sum")
    _check_profile(g, profile)
    x, y = _endpoint_values(g, profile, kind.variant)
    fam = kind.family
    if fam is Family.ZAGREB1:
        f = (x + y).astype(np.float64)
    elif fam is Family.ZAGREB2:
        f = (x * y).astype(np.float64)
    elif fam is Family.FORGOTTEN:
        f = (x * x + y * y).astype(np.float64)
    else:
        f = np.sqrt((x * x + y * y).astype(np.float64))
    if f.size and f.min() == 0.0:
        return -math.inf, True
    return math.fsum(np.log(f).tolist()), False


_BLOCK = 256


def compensated_sum(terms: np.ndarray) -> float:
    """Sum with block-wise pairwise partials combined by an exact ``fsum``.

    Error is bounded by the in-block pairwise error (a few ulp of each block
    sum) independently of the number of terms.
    """
    t = np.asarray(terms, dtype=np.float64).ravel()
    if t.size <= _BLOCK:
        return math.fsum(t.tolist())
    full = t.size - t.size % _BLOCK
    partials = t[:full].reshape(-1, _BLOCK).sum(axis=1).tolist()
    partials.extend(t[full:].tolist())
    return math.fsum(partials)


def _family_terms(x, y, c):
    """Sum and log-product contributions of one variant over distinct endpoint pairs.

    ``x``, ``y`` are int64 endpoint values, ``c`` the edge multiplicity of
    each pair.
    """
    s = x + y
    pr = x * y
    q = x * x + y * y
    qf = q.astype(np.float64)
    sums = [
        float(int(np.dot(c, s))),
        float(int(np.dot(c, pr))),
        float(int(np.dot(c, q))),
        compensated_sum(c * np.sqrt(qf)),
    ]
    logs = []
    degen = []
    for f in (s.astype(np.float64), pr.astype(np.float64), qf, np.sqrt(qf)):
        if f.min() == 0.0:
            logs.append(-math.inf)
            degen.append(True)
        else:
            logs.append(compensated_sum(c * np.log(f)))
            degen.append(False)
    return sums, logs, degen


def full_report(g: Graph, profile: DegreeProfile | None = None) -> IndexReport:
    """All sixteen indices with a single pass over the edge list.

    The edges are histogrammed by their unordered pair of degrees; every
    index is then a weighted sum over distinct pairs, and the Revan pair
    follows from the degree pair by reflection.
    """
    if profile is None:
        profile = degree_profile(g)
    else:
        _check_profile(g, profile)
    if g.m == 0:
        zeros = np.zeros(8)
        return IndexReport(zeros, zeros.copy(), np.zeros(8, dtype=bool))

    low, high = profile.delta_min, profile.delta_max
    width = high - low + 1
    du = profile.degrees[g.u] - low
    dv = profile.degrees[g.v] - low
    a = np.minimum(du, dv)
    b = np.maximum(du, dv)
    hist = np.bincount(a * width + b, minlength=width * width)
    codes = np.flatnonzero(hist)
    c = hist[codes].astype(np.int64)
    a, b = codes // width, codes % width

    d_sums, d_logs, d_deg = _family_terms(a + low, b + low, c)
    # r = Delta + delta - d  ==  high - (d - low)
    r_sums, r_logs, r_deg = _family_terms(high - a, high - b, c)
    return IndexReport(
        sums=np.array(d_sums + r_sums),
        log_products=np.array(d_logs + r_logs),
        degenerate=np.array(d_deg + r_deg, dtype=bool),
    )
