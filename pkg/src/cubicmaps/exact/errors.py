"""Errors raised by the exact-arithmetic layer."""


class DivByZeroSeries(ZeroDivisionError):
    """Division by a series with no known nonzero coefficient."""


class SqrtDomain(ValueError):
    """sqrt1 applied to a series whose constant term is not 1."""


class ValuationError(ValueError):
    """Composition inner series must have valuation >= 1."""


class ZeroDenominator(ZeroDivisionError):
    """Rational function with an identically zero denominator."""
