"""Exact arithmetic kernel: rationals, Q(sqrt 3), truncated Laurent
series, rational functions and dense polynomials."""

from .rational import (Q, QRoot3, SQRT3, qq, q_str, q_parse, qr3_str,
                       qr3_parse, HAVE_GMPY2)
from .errors import (DivByZeroSeries, SqrtDomain, ValuationError,
                     ZeroDenominator)
from .series import TruncLaurent, series_arith, series_compose
from .npoly import NPolynomial, npoly_shift
from .ratfunc import RatFunc, ratfunc_reduce, S_VAR, ETA_RF, Z_RF, F_ETA

__all__ = [
    "Q", "QRoot3", "SQRT3", "qq", "q_str", "q_parse", "qr3_str",
    "qr3_parse", "HAVE_GMPY2", "DivByZeroSeries", "SqrtDomain",
    "ValuationError", "ZeroDenominator", "TruncLaurent", "series_arith",
    "series_compose", "NPolynomial", "npoly_shift", "RatFunc",
    "ratfunc_reduce", "S_VAR", "ETA_RF", "Z_RF", "F_ETA",
]
