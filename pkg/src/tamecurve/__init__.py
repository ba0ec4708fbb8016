"""Exact computations with noncommutative curves of genus zero attached to tame bimodules."""

from __future__ import annotations

__version__ = "0.1.0"

from .algebras import QuarticTowerSpec, QuaternionSpec, build_algebra
from .curve import Curve, classify_commutative, enumerate_points, has_efficient_tubular_shift
from .errors import SpecParseError, TameCurveError
from .fields import QQ, field_from_descriptor
from .ladder import Ladder, verify_ladder
from .reps import OneFour, TwoTwo
from .specfile import load_spec, parse_spec

__all__ = [
    "QQ",
    "Curve",
    "Ladder",
    "OneFour",
    "QuarticTowerSpec",
    "QuaternionSpec",
    "SpecParseError",
    "TameCurveError",
    "TwoTwo",
    "__version__",
    "build_algebra",
    "classify_commutative",
    "enumerate_points",
    "field_from_descriptor",
    "has_efficient_tubular_shift",
    "load_spec",
    "parse_spec",
    "verify_ladder",
]
