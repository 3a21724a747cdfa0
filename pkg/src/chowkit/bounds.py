"""Exact calculators for the effective finiteness bound and its ingredients.

All functions return Python ints.  A value whose decimal length would exceed
``digit_cap`` is returned as a :class:`HugeInt` instead: its exact digit
count and leading digits, obtained from a multiple-precision evaluation of
the same formula chain with guard digits.

The elimination degree function is instantiated as the reduced Groebner
basis bound ``delta(r, d) = ceil(2 * (d^2/2 + d)^(2^r))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

import mpmath

from ._backend import int_digits, int_str
from .chow import phi
from .errors import PreconditionError

DEFAULT_DIGIT_CAP = 10**6
LEADING_DIGITS = 20
_LOG10_2 = math.log10(2)

DELTA_PROVENANCE = "delta(r,d) = ceil(2*(d^2/2 + d)^(2^r)) [reduced Groebner basis degree bound]"


class HugeInt:
    """A positive integer known by its exact decimal length and leading digits."""

    __slots__ = ("digits", "leading", "log10")

    def __init__(self, digits: int, leading: str, log10):
        self.digits = int(digits)
        self.leading = leading
        self.log10 = log10

    def _cmp_key(self):
        return mpmath.mpf(self.log10)

    @staticmethod
    def _log10_of(other):
        if isinstance(other, HugeInt):
            return mpmath.mpf(other.log10)
        if other <= 0:
            return mpmath.mpf("-inf")
        return mpmath.log10(mpmath.mpf(other))

    def __lt__(self, other):
        return self._cmp_key() < self._log10_of(other)

    def __le__(self, other):
        return self._cmp_key() <= self._log10_of(other)

    def __gt__(self, other):
        return self._cmp_key() > self._log10_of(other)

    def __ge__(self, other):
        return self._cmp_key() >= self._log10_of(other)

    def __eq__(self, other):
        if isinstance(other, HugeInt):
            return self.digits == other.digits and self.leading == other.leading
        return False

    def __hash__(self):
        return hash((self.digits, self.leading))

    def __repr__(self):
        return f"HugeInt(digits={self.digits}, leading={self.leading!r})"

    def __str__(self):
        return f"{self.leading}... ({self.digits} digits)"


Number = Union[int, HugeInt]


def digit_count(value: Number) -> int:
    if isinstance(value, HugeInt):
        return value.digits
    return int_digits(value)


def _est_digits_pow(base: int, e: int) -> float:
    """Upper estimate of len(str(base**e))."""
    if base <= 1:
        return 1
    return e * base.bit_length() * _LOG10_2 + 1


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


# ----------------------------------------------------------------------------
# Two evaluation lanes: exact ints while under the cap, mpf once over it.  The
# mpf lane needs enough working precision to pin the digit count; `_huge`
# recomputes at increasing precision until two evaluations agree.

def _validate(**kw):
    for name, v in kw.items():
        if isinstance(v, HugeInt):
            continue
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise PreconditionError(f"{name} must be a positive integer, got {v!r}")


def _mpf(value):
    return value if isinstance(value, mpmath.mpf) else mpmath.mpf(value)


def _delta_lane(r: int, d, cap: int):
    """delta(r, d) in the exact lane when possible, else as mpf."""
    e = 2**r
    if isinstance(d, int):
        base = d * d + 2 * d  # 2*(d^2/2 + d)^(2^r) = (d^2+2d)^(2^r) / 2^(2^r - 1)
        if _est_digits_pow(base, e) - (e - 1) * _LOG10_2 <= cap + 2:
            return _ceil_div(base**e, 2 ** (e - 1))
    x = _mpf(d)
    return 2 * (x * x / 2 + x) ** e


def _mul_lane(a, b, cap: int):
    if isinstance(a, int) and isinstance(b, int):
        if digit_count(a) + digit_count(b) <= cap + 1:
            return a * b
    return _mpf(a) * _mpf(b)


def _pow_lane(a, e: int, cap: int):
    if isinstance(a, int) and _est_digits_pow(a, e) <= cap + 1:
        return a**e
    return _mpf(a) ** e


def _delta_iter_lane(k: int, r: int, d, cap: int):
    for _ in range(k):
        d = _mul_lane(d, _delta_lane(r, d, cap), cap)
    return d


def _finish(value, cap: int):
    """int within cap stays; anything else becomes an mpf for summarizing."""
    if isinstance(value, int) and digit_count(value) <= cap:
        return value
    return _mpf(value)


def _summarize(fn, cap: int) -> Number:
    """Run ``fn(cap)`` and return an int, or a :class:`HugeInt` pinned by precision doubling."""
    with mpmath.workdps(30):
        first = _finish(fn(cap), cap)
    if isinstance(first, int):
        return first
    magnitude = mpmath.log10(first)
    dps = 40 + len(str(int(magnitude))) + LEADING_DIGITS
    previous = None
    for _ in range(6):
        with mpmath.workdps(dps):
            value = _finish(fn(cap), cap)
            if isinstance(value, int):  # pragma: no cover - lane choice is precision independent
                return value
            lg = mpmath.log10(value)
            ipart = int(mpmath.floor(lg))
            frac = lg - ipart
            lead = mpmath.power(10, frac + LEADING_DIGITS - 1)
            leading = str(int(mpmath.floor(lead)))
            current = HugeInt(ipart + 1, leading, lg)
        if previous is not None and previous == current:
            return HugeInt(current.digits, current.leading, mpmath.mpf(lg))
        previous = current
        dps = dps * 2
    raise ArithmeticError("could not stabilize the digit summary")  # pragma: no cover


def _as_lane(v):
    if isinstance(v, HugeInt):
        # mpf at the current precision from the stored high-precision log10
        return mpmath.power(10, mpmath.mpf(v.log10))
    return v


# ----------------------------------------------------------------------------
# elimination degree functions

def delta(r: int, d: Number, digit_cap: int = DEFAULT_DIGIT_CAP) -> Number:
    """``ceil(2*(d^2/2 + d)^(2^r))``."""
    _validate(r=r, d=d)
    return _summarize(lambda cap: _delta_lane(r, _as_lane(d), cap), digit_cap)


def delta_prime(r: int, d: Number, digit_cap: int = DEFAULT_DIGIT_CAP) -> Number:
    """``d * delta(r, d)``."""
    _validate(r=r, d=d)
    return _summarize(lambda cap: _delta_iter_lane(1, r, _as_lane(d), cap), digit_cap)


def delta_iter(k: int, r: int, d: Number, digit_cap: int = DEFAULT_DIGIT_CAP) -> Number:
    """``delta_prime(r, .)`` applied ``k`` times starting from ``d``."""
    _validate(k=k, r=r, d=d)
    return _summarize(lambda cap: _delta_iter_lane(k, r, _as_lane(d), cap), digit_cap)


def Delta(n: int, k: int, r: int, d_prime: int, digit_cap: int = DEFAULT_DIGIT_CAP) -> Number:
    """Degree bound for the Chow-variety equations: ``delta_iter(k, r, max(d', k(n+1)))``."""
    _validate(n=n, k=k, r=r, d_prime=d_prime)
    return delta_iter(k, r, max(d_prime, k * (n + 1)), digit_cap)


def m_bar(N: int, M: int) -> int:
    """Segre ambient dimension ``(N+1)(M+1) - 1``."""
    _validate(N=N, M=M)
    return (N + 1) * (M + 1) - 1


def chow_complexity(n: int, gamma: int, M: int, N: int, d_prime: int, digit_cap: int = DEFAULT_DIGIT_CAP):
    """Returns ``(M_bar, C, D)`` with ``C = phi(n, gamma, M_bar)`` and ``D = 2*Delta(n, gamma, M_bar, d')``."""
    _validate(n=n, gamma=gamma, M=M, N=N, d_prime=d_prime)
    mb = m_bar(N, M)
    C = phi(n, gamma, mb)
    start = max(d_prime, gamma * (n + 1))
    D = _summarize(lambda cap: _mul_lane(2, _delta_iter_lane(gamma, mb, start, cap), cap), digit_cap)
    return mb, C, D


# ----------------------------------------------------------------------------
# geometry-side bounds

@dataclass
class GeometryInputs:
    n: int
    r_n: int
    vol_K: Fraction
    vol_rK: Fraction | None = None
    N: int | None = None
    d_prime: int | None = None
    eps: Fraction | None = None
    intersection_numbers: Sequence[Fraction] | None = None
    vol_H_rK: Fraction | None = None

    def __post_init__(self):
        if self.n < 1 or self.r_n < 1:
            raise PreconditionError("n and r_n must be positive")
        self.vol_K = Fraction(self.vol_K)
        if self.vol_K <= 0:
            raise PreconditionError("vol_K must be positive")
        for name in ("vol_rK", "eps", "vol_H_rK"):
            v = getattr(self, name)
            if v is not None:
                v = Fraction(v)
                if v <= 0:
                    raise PreconditionError(f"{name} must be positive")
                setattr(self, name, v)
        for name in ("N", "d_prime"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise PreconditionError(f"{name} must be positive")
        if self.intersection_numbers is not None:
            nums = [Fraction(v) for v in self.intersection_numbers]
            if len(nums) != self.n + 1:
                raise PreconditionError(f"intersection_numbers needs n+1 = {self.n + 1} entries")
            if any(v <= 0 for v in nums):
                raise PreconditionError("intersection numbers must be positive")
            self.intersection_numbers = nums

    def resolved_vol_rK(self) -> Fraction:
        if self.vol_rK is not None:
            return self.vol_rK
        return Fraction(self.r_n) ** self.n * self.vol_K


def _ceil(q: Fraction) -> int:
    return math.ceil(Fraction(q))


def embedding_bounds(g: GeometryInputs) -> tuple[int, int]:
    """``(d_V, M_V)``: degree and embedding-dimension bounds of the ``r_n``-canonical image."""
    d_V = _ceil(g.resolved_vol_rK())
    return d_V, d_V + g.n - 1


GRAPH_CASES = ("general", "nef", "pluricanonical")


def graph_degree_bound(g: GeometryInputs, case: str = "pluricanonical") -> int:
    if case == "general":
        if g.vol_H_rK is None:
            raise PreconditionError("general case needs vol(H + r_n K) (vol_H_rK)")
        return _ceil(g.vol_H_rK)
    if case == "nef":
        if g.intersection_numbers is None:
            raise PreconditionError("nef case needs intersection_numbers H^(n-j).K^j, j = 0..n")
        total = sum(
            math.comb(g.n, j) * Fraction(g.r_n) ** j * t
            for j, t in enumerate(g.intersection_numbers)
        )
        return _ceil(total)
    if case == "pluricanonical":
        return _ceil(Fraction(2 * g.r_n) ** g.n * g.vol_K)
    raise PreconditionError(f"unknown case {case!r}; expected one of {GRAPH_CASES}")


def map_degree_bounds(g: GeometryInputs, KX_n=None, KY_n=None, vol_KY=None) -> dict[str, int]:
    """Bounds on ``deg(f)`` from whichever target data is supplied.

    ``nef``: ``K_X^n / K_Y^n``; ``big``: ``vol(K_X) / vol(K_Y)``;
    ``eps``: ``vol(K_X) / eps_X``.
    """
    out = {}
    if KY_n is not None:
        KY_n = Fraction(KY_n)
        KX_n = Fraction(KX_n) if KX_n is not None else g.vol_K
        if KY_n <= 0 or KX_n <= 0:
            raise PreconditionError("K^n inputs must be positive")
        out["nef"] = math.floor(KX_n / KY_n)
    if vol_KY is not None:
        vol_KY = Fraction(vol_KY)
        if vol_KY <= 0:
            raise PreconditionError("vol_KY must be positive")
        out["big"] = math.floor(g.vol_K / vol_KY)
    if g.eps is not None:
        out["eps"] = math.floor(g.vol_K / g.eps)
    if not out:
        raise PreconditionError("no target data: give KY_n, vol_KY or eps")
    return out


@dataclass
class BoundReport:
    d_V: int
    M_V: int
    gamma_X: int
    M: int
    M_bar: int
    C: int
    D: Number
    B: Number
    provenance: dict = field(default_factory=dict)

    FIELDS = ("d_V", "M_V", "gamma_X", "M", "M_bar", "C", "D", "B")

    def as_items(self) -> list[tuple[str, str]]:
        items = []
        for name in self.FIELDS:
            v = getattr(self, name)
            if isinstance(v, HugeInt):
                items.append((name, "huge"))
                items.append((f"{name}.digits", str(v.digits)))
                items.append((f"{name}.leading", v.leading))
            else:
                items.append((name, int_str(v)))
                if name in ("D", "B"):
                    items.append((f"{name}.digits", str(digit_count(v))))
        for name in self.FIELDS:
            if name in self.provenance:
                items.append((f"provenance.{name}", self.provenance[name]))
        return items


def total_bound(
    g: GeometryInputs,
    M: int | None = None,
    gamma: int | None = None,
    digit_cap: int = DEFAULT_DIGIT_CAP,
) -> BoundReport:
    """``B = gamma^3 * D(n, gamma, M, d')^C(n, gamma, M)`` with every intermediate."""
    if g.N is None or g.d_prime is None:
        raise PreconditionError("total_bound needs the embedding dimension N and the equation degree d'")
    d_V, M_V = embedding_bounds(g)
    M = M_V if M is None else M
    gamma = graph_degree_bound(g, "pluricanonical") if gamma is None else gamma
    _validate(M=M, gamma=gamma)
    n = g.n
    mb = m_bar(g.N, M)
    C = phi(n, gamma, mb)
    start = max(g.d_prime, gamma * (n + 1))

    def d_lane(cap):
        return _mul_lane(2, _delta_iter_lane(gamma, mb, start, cap), cap)

    def b_lane(cap):
        return _mul_lane(gamma**3, _pow_lane(d_lane(cap), C, cap), cap)

    D = _summarize(d_lane, digit_cap)
    B = _summarize(b_lane, digit_cap)
    provenance = {
        "d_V": "ceil(vol(r_n K)) with vol(r_n K) = r_n^n vol(K) unless given",
        "M_V": "d_V + n - 1",
        "gamma_X": "given" if gamma != graph_degree_bound(g, "pluricanonical") else "(2 r_n)^n vol(K) [H = r_n K]",
        "M": "M_V" if M == M_V else "given",
        "M_bar": "(N+1)(M+1) - 1",
        "C": "phi(n, gamma, M_bar) = binom(gamma + M_bar, M_bar)^(n+1) - 1",
        "D": "2*Delta(n, gamma, M_bar, d') = 2*delta_iter(gamma, M_bar, max(d', gamma(n+1))); " + DELTA_PROVENANCE,
        "B": "gamma^3 * D^C",
    }
    return BoundReport(d_V, M_V, gamma, M, mb, C, D, B, provenance)
