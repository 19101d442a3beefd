"""scikit-learn compatible estimators over the conversion and matching core.

The recommended capture-to-chart pipeline composes directly::

    Pipeline([
        ("lab", ColorConverter(source="srgb", target="lab")),
        ("chip", NearestChipClassifier(method="de2000")),
    ])

``ColorConverter`` transforms arrays of colors between spaces and
``NearestChipClassifier`` is a 1-nearest-neighbor classifier over chart
chips using a perceptual color-difference metric.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from . import chart
from .chart import ChipDatabase, MatchResult
from .colorspace import (
    LabColor,
    lab_to_lch,
    lab_to_xyz,
    lch_to_lab,
    linear_to_srgb,
    linear_to_xyz,
    srgb_to_cmyk,
    srgb_to_linear,
    xyz_to_lab,
    xyz_to_linear,
)
from .difference import DeltaEMethod
from .errors import DomainError
from .illuminants import get_illuminant
from .munsell import parse_munsell

__all__ = ["ColorConverter", "NearestChipClassifier"]

# Conversion hops along the canonical chain; cmyk hangs off srgb as a sink.
_CHAIN = ("srgb", "linear", "xyz", "lab", "lch")


class ColorConverter(TransformerMixin, BaseEstimator):
    """Stateless transformer mapping color arrays between spaces.

    Input is an array of shape (n_samples, n_channels) in the source space:
    ``srgb`` uses 8-bit values in [0, 255], all other spaces their native
    float scales. Conversions to ``srgb`` clamp out-of-gamut colors (use
    :meth:`transform_with_gamut` to observe which rows were clamped).
    ``cmyk`` is a target only.
    """

    def __init__(self, source: str = "srgb", target: str = "lab", illuminant: str = "D65"):
        self.source = source
        self.target = target
        self.illuminant = illuminant

    def _route(self) -> tuple[str, str]:
        source = self.source.lower()
        target = self.target.lower()
        if source not in _CHAIN:
            raise DomainError(f"unsupported source space {self.source!r}; use one of {_CHAIN}")
        if target not in _CHAIN + ("cmyk",):
            raise DomainError(
                f"unsupported target space {self.target!r}; use one of {_CHAIN + ('cmyk',)}"
            )
        return source, target

    def fit(self, X, y=None):
        self._route()
        get_illuminant(self.illuminant)
        X = check_array(X, dtype=float)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X) -> np.ndarray:
        converted, _ = self.transform_with_gamut(X)
        return converted

    def transform_with_gamut(self, X) -> tuple[np.ndarray, np.ndarray]:
        """Convert and also return the per-row gamut-clamp flags.

        The flags are all False unless the conversion passes through the
        encoded sRGB cube (targets ``srgb`` and ``cmyk``).
        """
        source, target = self._route()
        illuminant = get_illuminant(self.illuminant)
        X = check_array(X, dtype=float)
        if X.shape[1] != 3:
            raise DomainError(f"color arrays must have 3 channels, got {X.shape[1]}")

        # internal srgb representation is encoded [0, 1]; 8-bit only at the edges
        values = X / 255.0 if source == "srgb" else X
        clipped = np.zeros(len(X), dtype=bool)
        stop = "srgb" if target == "cmyk" else target
        i, j = _CHAIN.index(source), _CHAIN.index(stop)
        while i < j:  # forward along the chain
            step = _CHAIN[i]
            if step == "srgb":
                values = srgb_to_linear(values)
            elif step == "linear":
                values = linear_to_xyz(values, illuminant)
            elif step == "xyz":
                values = xyz_to_lab(values, illuminant)
            else:
                values = lab_to_lch(values)
            i += 1
        while i > j:  # backward along the chain
            step = _CHAIN[i]
            if step == "lch":
                values = lch_to_lab(values)
            elif step == "lab":
                values = lab_to_xyz(values, illuminant)
            elif step == "xyz":
                values = xyz_to_linear(values, illuminant)
            else:
                values, clipped = linear_to_srgb(values)
            i -= 1
        if target == "cmyk":
            values = srgb_to_cmyk(values)
        elif target == "srgb":
            values = np.floor(np.clip(values, 0.0, 1.0) * 255.0 + 0.5)
        return np.asarray(values, dtype=float), clipped


class NearestChipClassifier(ClassifierMixin, BaseEstimator):
    """Nearest Munsell chip by perceptual color difference.

    ``fit`` takes D65 Lab coordinates ``X`` of shape (n_chips, 3) and their
    Munsell codes ``y``; ``predict`` returns the canonical code string of
    the closest chip for each query. The chip is treated as the reference
    color and the query as the sample, which matters for the asymmetric
    ``de1994`` and ``cmc`` metrics. Exact difference ties break by
    canonical chart order (hue circle, value, chroma).
    """

    def __init__(self, method: str | DeltaEMethod = "de2000", pages=None):
        self.method = method
        self.pages = pages

    def _method(self) -> DeltaEMethod:
        if isinstance(self.method, DeltaEMethod):
            return self.method
        return DeltaEMethod.from_name(self.method)

    def fit(self, X, y):
        method = self._method()
        X, y = check_X_y(X, np.asarray(y, dtype=object), dtype=float)
        if X.shape[1] != 3:
            raise DomainError(f"chip coordinates must be Lab triples, got {X.shape[1]} columns")
        chips = [
            chart.Chip(code=parse_munsell(str(code)), lab=LabColor(*lab))
            for code, lab in zip(y, X)
        ]
        db = ChipDatabase(chips)
        if self.pages is not None:
            db = db.filter_pages(self.pages)
            if len(db) == 0:
                raise DomainError(f"no fitted chips on pages {self.pages!r}")
        self.database_ = db
        self.classes_ = np.array([str(c) for c in db.codes()], dtype=object)
        self.n_features_in_ = 3
        self._method_ = method
        return self

    @classmethod
    def from_database(cls, db: ChipDatabase, **params) -> "NearestChipClassifier":
        """A fitted classifier backed by an existing chip database."""
        est = cls(**params)
        return est.fit(db.lab_matrix(), [str(c) for c in db.codes()])

    def predict(self, X) -> np.ndarray:
        check_is_fitted(self, "database_")
        X = check_array(X, dtype=float)
        values = chart.rank_against(X, self.database_, self._method_)
        best = np.argmin(values, axis=1)  # first minimum = canonical order
        codes = self.classes_
        return codes[best]

    def match(self, X, k: int = 5) -> list[MatchResult]:
        """Full ranked matches (code, difference) for each query row."""
        check_is_fitted(self, "database_")
        X = check_array(X, dtype=float)
        return [
            chart.match(LabColor(*row), self.database_, self._method_, k=k) for row in X
        ]
