"""Exact truncated q-series, partition statistics and a catalog of sum-of-tails identities."""

from __future__ import annotations

from .catalog import VerificationReport, build_side, catalog, default_grid, grid_hash, verify, verify_all
from .descriptors import Env, IdentityDescriptor, Side, Slot
from .engine import andrews_freitas_sides, theorem1_engine
from .errors import (
    ArityError,
    BindingError,
    BudgetExceeded,
    NonConvergentSum,
    NotAUnit,
    PoleError,
    QTailsError,
    SubstitutionError,
    WeightSpecError,
)
from .series import Monomial, ParamBinding, TruncatedSeries

__version__ = "0.1.0"

__all__ = [
    "ArityError",
    "BindingError",
    "BudgetExceeded",
    "Env",
    "IdentityDescriptor",
    "Monomial",
    "NonConvergentSum",
    "NotAUnit",
    "ParamBinding",
    "PoleError",
    "QTailsError",
    "Side",
    "Slot",
    "SubstitutionError",
    "TruncatedSeries",
    "VerificationReport",
    "WeightSpecError",
    "andrews_freitas_sides",
    "build_side",
    "catalog",
    "default_grid",
    "grid_hash",
    "theorem1_engine",
    "verify",
    "verify_all",
]
