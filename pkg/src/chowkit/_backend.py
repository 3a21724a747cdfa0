"""Coefficient backend.

Rationals are gmpy2 ``mpq`` when gmpy2 is importable, otherwise
:class:`fractions.Fraction`.  Set ``CHOWKIT_NOGMPY=1`` to force the
pure-Python path (results are identical, only slower).
"""

import fractions
import os

BACKEND = "python"
Q = fractions.Fraction

if "CHOWKIT_NOGMPY" not in os.environ:
    try:
        import gmpy2

        Q = gmpy2.mpq
        BACKEND = "gmpy"
    except ImportError:  # pragma: no cover
        pass

ZERO = Q(0)
ONE = Q(1)


def to_q(value):
    """Coerce an int, Fraction, mpq or ``"p/q"`` string to the backend rational."""
    if isinstance(value, str):
        value = fractions.Fraction(value.strip())
    if isinstance(value, fractions.Fraction) and Q is not fractions.Fraction:
        return Q(value.numerator, value.denominator)
    return Q(value)


def as_fraction(value):
    return fractions.Fraction(int(value.numerator), int(value.denominator))


def int_str(value: int) -> str:
    """Decimal string of an int of any size (sidesteps the interpreter's digit limit)."""
    if BACKEND == "gmpy":
        return str(gmpy2.mpz(value))
    import sys

    get = getattr(sys, "get_int_max_str_digits", None)
    if get is None:  # pragma: no cover - interpreters without the limit
        return str(value)
    old = get()
    sys.set_int_max_str_digits(0)
    try:
        return str(value)
    finally:
        sys.set_int_max_str_digits(old)


def int_digits(value: int) -> int:
    """Number of decimal digits of ``|value|`` (1 for zero), without building the string."""
    value = abs(int(value))
    if value < 10:
        return 1
    est = int((value.bit_length() - 1) * 0.30102999566398120)  # floor(log10) or one below
    return est + 2 if value >= 10 ** (est + 1) else est + 1
