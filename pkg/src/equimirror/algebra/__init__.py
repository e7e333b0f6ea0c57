"""Exact rational algebra: polynomials, Laurent polynomials, class functions."""

from .bilaurent import BiLaurent
from .classfun import ClassFun, ClassPoly
from .unipoly import Rational, UniPoly, series_inverse, series_ratio, truncate_tau

__all__ = [
    "BiLaurent",
    "ClassFun",
    "ClassPoly",
    "Rational",
    "UniPoly",
    "series_inverse",
    "series_ratio",
    "truncate_tau",
]
