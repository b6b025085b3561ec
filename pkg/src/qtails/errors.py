"""Exception hierarchy shared by every qtails module."""

from __future__ import annotations


class QTailsError(Exception):
    """Base class for all qtails errors."""


class ArityError(QTailsError, ValueError):
    """More coefficients were supplied than the truncation order allows."""


class NotAUnit(QTailsError, ZeroDivisionError):
    """Attempted to invert a series whose constant term is zero."""


class PoleError(QTailsError, ZeroDivisionError):
    """A parameter value hits a pole of the expression being built."""


class SubstitutionError(QTailsError, ValueError):
    """A substitution q -> r*q^m that would need infinitely many coefficients."""


class NonConvergentSum(QTailsError, ArithmeticError):
    """A formal infinite sum whose terms stopped gaining valuation."""


class BindingError(QTailsError, KeyError):
    """A parameter slot is unbound, bound twice, or bound to the wrong kind."""


class WeightSpecError(QTailsError, ValueError):
    """A partition weight expression outside the supported vocabulary."""


class BudgetExceeded(QTailsError, RuntimeError):
    """Partition enumeration would exceed the configured budget."""
