"""Precision-tiered real scalars.

Two tiers share one interface: NATIVE64 is ordinary IEEE binary64, and
DOUBLEWORD represents a value as an unevaluated sum ``hi + lo`` of two
binary64 floats (a double-word, roughly 32 significant decimal digits).
All double-word kernels are built from the classic error-free
transformations: ``two_sum`` (Knuth) and ``two_prod`` (Dekker splitting,
since ``math.fma`` is not available on the supported interpreters).

The hot paths inside the quadrature engines work on raw ``(hi, lo)``
tuples through the module-private ``_dd_*`` functions; the :class:`Real`
wrapper provides the safe, tier-checked public surface on top of them.
"""

from __future__ import annotations

import enum
import functools
import math
from decimal import Decimal, InvalidOperation, localcontext
from fractions import Fraction

from .errors import ConfigError, DomainError, NonFiniteError, TierMismatchError

__all__ = [
    "Tier",
    "Real",
    "two_sum",
    "two_prod",
    "add",
    "sub",
    "mul",
    "div",
    "sqrt",
    "atan",
    "sin",
    "cos",
    "pi",
    "build_info",
]


class Tier(enum.Enum):
    """Precision tier of a :class:`Real` value."""

    NATIVE64 = "native64"
    DOUBLEWORD = "doubleword"

    @property
    def eps(self) -> float:
        """Unit roundoff step of the tier (2^-52 native, 2^-104 double-word)."""
        return 2.0**-52 if self is Tier.NATIVE64 else 2.0**-104

    @property
    def sig_digits(self) -> int:
        """Decimal digits carried when formatting a value of this tier."""
        return 17 if self is Tier.NATIVE64 else 32


# ----------------------------------------------------------------------
# Error-free transformations on raw floats
# ----------------------------------------------------------------------

_SPLITTER = 134217729.0  # 2**27 + 1, Dekker's split constant for binary64


def _two_sum(a: float, b: float) -> tuple[float, float]:
    # Knuth's branch-free 6-op version: s + e == a + b exactly.
    s = a + b
    v = s - a
    e = (a - (s - v)) + (b - v)
    return s, e


def _quick_two_sum(a: float, b: float) -> tuple[float, float]:
    # requires |a| >= |b| (or a == 0)
    s = a + b
    e = b - (s - a)
    return s, e


def _split(a: float) -> tuple[float, float]:
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


def _two_prod(a: float, b: float) -> tuple[float, float]:
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, e


def two_sum(a: float, b: float) -> tuple[float, float]:
    """Error-free sum: returns ``(s, e)`` with ``s + e == a + b`` exactly,
    ``s = fl(a + b)``. Raises :class:`NonFiniteError` on overflow or
    non-finite input."""
    a = float(a)
    b = float(b)
    if not (math.isfinite(a) and math.isfinite(b)):
        raise NonFiniteError("two_sum requires finite inputs")
    s, e = _two_sum(a, b)
    if not math.isfinite(s):
        raise NonFiniteError("two_sum overflowed")
    return s, e


def two_prod(a: float, b: float) -> tuple[float, float]:
    """Error-free product: returns ``(p, e)`` with ``p + e == a * b``
    exactly, ``p = fl(a * b)``. Raises :class:`NonFiniteError` on
    overflow, underflow of the split, or non-finite input."""
    a = float(a)
    b = float(b)
    if not (math.isfinite(a) and math.isfinite(b)):
        raise NonFiniteError("two_prod requires finite inputs")
    p, e = _two_prod(a, b)
    if not (math.isfinite(p) and math.isfinite(e)):
        raise NonFiniteError("two_prod overflowed")
    return p, e


# ----------------------------------------------------------------------
# Double-word core arithmetic on raw (hi, lo) pairs
# ----------------------------------------------------------------------


def _dd_add(ah: float, al: float, bh: float, bl: float) -> tuple[float, float]:
    sh, se = _two_sum(ah, bh)
    th, te = _two_sum(al, bl)
    se += th
    sh, se = _quick_two_sum(sh, se)
    se += te
    return _quick_two_sum(sh, se)


def _dd_sub(ah: float, al: float, bh: float, bl: float) -> tuple[float, float]:
    return _dd_add(ah, al, -bh, -bl)


def _dd_add_d(ah: float, al: float, b: float) -> tuple[float, float]:
    sh, se = _two_sum(ah, b)
    se += al
    return _quick_two_sum(sh, se)


def _dd_mul(ah: float, al: float, bh: float, bl: float) -> tuple[float, float]:
    p, e = _two_prod(ah, bh)
    e += ah * bl + al * bh
    return _quick_two_sum(p, e)


def _dd_mul_d(ah: float, al: float, b: float) -> tuple[float, float]:
    p, e = _two_prod(ah, b)
    e += al * b
    return _quick_two_sum(p, e)


def _dd_sqr(ah: float, al: float) -> tuple[float, float]:
    p, e = _two_prod(ah, ah)
    e += 2.0 * ah * al
    return _quick_two_sum(p, e)


def _dd_div(ah: float, al: float, bh: float, bl: float) -> tuple[float, float]:
    # long division with three partial quotients, ~u^2 relative error
    q1 = ah / bh
    th, tl = _dd_mul_d(bh, bl, q1)
    rh, rl = _dd_sub(ah, al, th, tl)
    q2 = rh / bh
    th, tl = _dd_mul_d(bh, bl, q2)
    rh, rl = _dd_sub(rh, rl, th, tl)
    q3 = rh / bh
    qh, ql = _quick_two_sum(q1, q2)
    return _dd_add_d(qh, ql, q3)


def _dd_div_d(ah: float, al: float, b: float) -> tuple[float, float]:
    q1 = ah / b
    p, e = _two_prod(q1, b)
    q2 = ((ah - p) - e + al) / b
    return _quick_two_sum(q1, q2)


def _dd_scale2(ah: float, al: float, s: float) -> tuple[float, float]:
    # s must be a power of two: the scaling is exact
    return ah * s, al * s


def _dd_sqrt(ah: float, al: float) -> tuple[float, float]:
    # Karp's method: one Newton correction from the native square root
    if ah == 0.0 and al == 0.0:
        return 0.0, 0.0
    if ah < 0.0:
        raise DomainError("sqrt of a negative value")
    r = 1.0 / math.sqrt(ah)
    y = ah * r
    ph, pe = _two_prod(y, y)
    dh, _ = _dd_sub(ah, al, ph, pe)
    c = dh * (0.5 * r)
    return _quick_two_sum(y, c)


# ----------------------------------------------------------------------
# Compiled-in decimal constants (parsed exactly via Fraction)
# ----------------------------------------------------------------------

_PI_STR = "3.14159265358979323846264338327950288419716939937510582097494459230781640628620899862803482534211706798"
_LN2_STR = "0.69314718055994530941723212145817656807550013436025525412068000949339362196969471560586332699641868754"


def _pair_from_decimal_string(s: str) -> tuple[float, float]:
    f = Fraction(Decimal(s))
    hi = float(f)
    lo = float(f - Fraction(hi))
    return hi, lo


def _triple_from_decimal_string(s: str) -> tuple[float, float, float]:
    f = Fraction(Decimal(s))
    a = float(f)
    f -= Fraction(a)
    b = float(f)
    c = float(f - Fraction(b))
    return a, b, c


@functools.lru_cache(maxsize=None)
def _ln2_split() -> tuple[float, float, float]:
    # head rounded to 42 bits so that k * head is exact for |k| < 2^10,
    # tail kept as a double-word remainder
    f = Fraction(Decimal(_LN2_STR))
    head = math.ldexp(round(math.ldexp(float(f), 42)), -42)
    rem = f - Fraction(head)
    b1 = float(rem)
    b2 = float(rem - Fraction(b1))
    return head, b1, b2


@functools.lru_cache(maxsize=None)
def _pi_half_triple() -> tuple[float, float, float]:
    f = Fraction(Decimal(_PI_STR)) / 2
    a = float(f)
    f -= Fraction(a)
    b = float(f)
    c = float(f - Fraction(b))
    return a, b, c


# ----------------------------------------------------------------------
# Double-word elementary functions
# ----------------------------------------------------------------------


def _dd_atan_reduced(xh: float, xl: float) -> tuple[float, float]:
    # Maclaurin series; callers guarantee |x| <= 0.28
    x2h, x2l = _dd_sqr(xh, xl)
    th, tl = xh, xl
    sh, sl = xh, xl
    k = 1
    while True:
        th, tl = _dd_mul(th, tl, x2h, x2l)
        ch, cl = _dd_div_d(th, tl, float(2 * k + 1))
        if k & 1:
            sh, sl = _dd_sub(sh, sl, ch, cl)
        else:
            sh, sl = _dd_add(sh, sl, ch, cl)
        if abs(ch) <= abs(sh) * 9.0e-34 or k > 60:
            return sh, sl
        k += 1


@functools.lru_cache(maxsize=None)
def _pi_pair() -> tuple[float, float]:
    # Machin's formula, evaluated once in double-word arithmetic and
    # cross-checked against the compiled-in digit string.
    a5h, a5l = _dd_atan_reduced(*_dd_div_d(1.0, 0.0, 5.0))
    a239h, a239l = _dd_atan_reduced(*_dd_div_d(1.0, 0.0, 239.0))
    ph, pl = _dd_sub(16.0 * a5h, 16.0 * a5l, 4.0 * a239h, 4.0 * a239l)
    rh, rl = _pair_from_decimal_string(_PI_STR)
    dh, _ = _dd_sub(ph, pl, rh, rl)
    if abs(dh) > 1e-30:
        raise AssertionError("pi self-check failed: series disagrees with digits")
    return ph, pl


def _dd_atan(xh: float, xl: float) -> tuple[float, float]:
    if xh == 0.0 and xl == 0.0:
        return 0.0, 0.0
    neg = xh < 0.0
    if neg:
        xh, xl = -xh, -xl
    inverted = xh > 1.0 or (xh == 1.0 and xl > 0.0)
    if inverted:
        xh, xl = _dd_div(1.0, 0.0, xh, xl)
    halvings = 0
    while xh > 0.28:
        # angle halving: atan(x) = 2 atan(x / (1 + sqrt(1 + x^2)))
        sh, sl = _dd_sqrt(*_dd_add_d(*_dd_sqr(xh, xl), 1.0))
        xh, xl = _dd_div(xh, xl, *_dd_add_d(sh, sl, 1.0))
        halvings += 1
    rh, rl = _dd_atan_reduced(xh, xl)
    s = float(1 << halvings)
    rh, rl = rh * s, rl * s
    if inverted:
        p2h, p2l = _dd_scale2(*_pi_pair(), 0.5)
        rh, rl = _dd_sub(p2h, p2l, rh, rl)
    if neg:
        rh, rl = -rh, -rl
    return rh, rl


def _dd_sin_cos_core(xh: float, xl: float) -> tuple[float, float, float, float]:
    # series on |x| <= pi/4 + eps: scale down by 8, then double thrice
    th, tl = _dd_scale2(xh, xl, 0.125)
    x2h, x2l = _dd_sqr(th, tl)
    # sine series
    sh, sl = th, tl
    ph, pl = th, tl
    k = 1
    while True:
        ph, pl = _dd_mul(ph, pl, x2h, x2l)
        ph, pl = _dd_div_d(ph, pl, float(-(2 * k) * (2 * k + 1)))
        sh, sl = _dd_add(sh, sl, ph, pl)
        if abs(ph) <= 9.0e-34 * abs(sh) + 1e-320 or k > 40:
            break
        k += 1
    # cosine series
    ch, cl = 1.0, 0.0
    qh, ql = 1.0, 0.0
    k = 1
    while True:
        qh, ql = _dd_mul(qh, ql, x2h, x2l)
        qh, ql = _dd_div_d(qh, ql, float(-(2 * k - 1) * (2 * k)))
        ch, cl = _dd_add(ch, cl, qh, ql)
        if abs(qh) <= 9.0e-34 * abs(ch) or k > 40:
            break
        k += 1
    for _ in range(3):
        # sin 2t = 2 sin t cos t ; cos 2t = 1 - 2 sin^2 t
        nsh, nsl = _dd_scale2(*_dd_mul(sh, sl, ch, cl), 2.0)
        nch, ncl = _dd_sub(1.0, 0.0, *_dd_scale2(*_dd_sqr(sh, sl), 2.0))
        sh, sl, ch, cl = nsh, nsl, nch, ncl
    return sh, sl, ch, cl


def _fold_about_pi_half(xh: float, xl: float) -> tuple[float, float]:
    # w = pi/2 - x, carried past double-word precision so that sin/cos
    # stay relatively accurate near the quarter turn
    p2a, p2b, p2c = _pi_half_triple()
    s1h, s1l = _two_sum(p2a, -xh)
    s2h, s2l = _two_sum(p2b, -xl)
    wh, wl = _dd_add(s1h, s1l, s2h, s2l)
    return _dd_add_d(wh, wl, p2c)


def _dd_sin(xh: float, xl: float) -> tuple[float, float]:
    if xh < 0.0:
        rh, rl = _dd_sin(-xh, -xl)
        return -rh, -rl
    if xh > 0.7853981633974483:
        return _dd_cos(*_fold_about_pi_half(xh, xl))
    sh, sl, _, _ = _dd_sin_cos_core(xh, xl)
    return sh, sl


def _dd_cos(xh: float, xl: float) -> tuple[float, float]:
    if xh < 0.0:
        xh, xl = -xh, -xl
    if xh > 0.7853981633974483:
        return _dd_sin(*_fold_about_pi_half(xh, xl))
    _, _, ch, cl = _dd_sin_cos_core(xh, xl)
    return ch, cl


def _dd_exp(xh: float, xl: float) -> tuple[float, float]:
    if xh == 0.0 and xl == 0.0:
        return 1.0, 0.0
    if xh > 709.0 or xh < -709.0:
        raise NonFiniteError("exp argument out of range")
    head, b1, b2 = _ln2_split()
    k = math.floor(xh / 0.6931471805599453 + 0.5)
    kf = float(k)
    sh, se = _two_sum(xh, -kf * head)
    th, tl = _dd_mul_d(b1, b2, kf)
    rh, rl = _dd_sub(sh, se, th, tl)
    rh, rl = _dd_add_d(rh, rl, xl)
    # |r| <= ln2/2; scale to r/16 and square the series result four times
    rh, rl = _dd_scale2(rh, rl, 0.0625)
    sh, sl = _dd_add_d(rh, rl, 1.0)
    ph, pl = rh, rl
    k2 = 2
    while True:
        ph, pl = _dd_mul(ph, pl, rh, rl)
        ph, pl = _dd_div_d(ph, pl, float(k2))
        sh, sl = _dd_add(sh, sl, ph, pl)
        if abs(ph) <= 9.0e-34 * abs(sh) or k2 > 30:
            break
        k2 += 1
    for _ in range(4):
        sh, sl = _dd_sqr(sh, sl)
    return math.ldexp(sh, k), math.ldexp(sl, k)


def _dd_sinh(xh: float, xl: float) -> tuple[float, float]:
    if xh < 0.0:
        rh, rl = _dd_sinh(-xh, -xl)
        return -rh, -rl
    if xh < 0.5:
        # odd Maclaurin series, immune to the cancellation in (e^x - e^-x)/2
        x2h, x2l = _dd_sqr(xh, xl)
        sh, sl = xh, xl
        ph, pl = xh, xl
        k = 1
        while True:
            ph, pl = _dd_mul(ph, pl, x2h, x2l)
            ph, pl = _dd_div_d(ph, pl, float((2 * k) * (2 * k + 1)))
            sh, sl = _dd_add(sh, sl, ph, pl)
            if abs(ph) <= 9.0e-34 * abs(sh) + 1e-320 or k > 30:
                return sh, sl
            k += 1
    eh, el = _dd_exp(xh, xl)
    ih, il = _dd_div(1.0, 0.0, eh, el)
    return _dd_scale2(*_dd_sub(eh, el, ih, il), 0.5)


def _dd_cosh(xh: float, xl: float) -> tuple[float, float]:
    eh, el = _dd_exp(abs(xh), xl if xh >= 0.0 else -xl)
    ih, il = _dd_div(1.0, 0.0, eh, el)
    return _dd_scale2(*_dd_add(eh, el, ih, il), 0.5)


def _dd_tanh(xh: float, xl: float) -> tuple[float, float]:
    if xh < 0.0:
        rh, rl = _dd_tanh(-xh, -xl)
        return -rh, -rl
    if xh < 0.5:
        sh, sl = _dd_sinh(xh, xl)
        ch, cl = _dd_sqrt(*_dd_add_d(*_dd_sqr(sh, sl), 1.0))
        return _dd_div(sh, sl, ch, cl)
    if xh < 22.0:
        eh, el = _dd_exp(*_dd_scale2(xh, xl, 2.0))
        nh, nl = _dd_add_d(eh, el, -1.0)
        dh, dl = _dd_add_d(eh, el, 1.0)
        return _dd_div(nh, nl, dh, dl)
    qh, ql = _dd_exp(*_dd_scale2(-xh, -xl, 2.0))
    th, tl = _dd_div(*_dd_scale2(qh, ql, 2.0), *_dd_add_d(qh, ql, 1.0))
    return _dd_sub(1.0, 0.0, th, tl)


# ----------------------------------------------------------------------
# The public Real wrapper
# ----------------------------------------------------------------------


def _check_finite_pair(hi: float, lo: float, what: str) -> None:
    if not (math.isfinite(hi) and math.isfinite(lo)):
        raise NonFiniteError(f"{what} produced a non-finite value")


class Real:
    """An immutable real number bound to a precision tier.

    NATIVE64 values keep ``lo == 0.0``. DOUBLEWORD values maintain the
    non-overlap invariant ``fl(hi + lo) == hi``. Arithmetic between
    different tiers raises :class:`TierMismatchError`; ints and floats
    are promoted exactly to the tier of the other operand.
    """

    __slots__ = ("hi", "lo", "tier")

    def __init__(self, value: float = 0.0, lo: float = 0.0, tier: Tier = Tier.NATIVE64):
        hi = float(value)
        lo = float(lo)
        if not (math.isfinite(hi) and math.isfinite(lo)):
            raise NonFiniteError("Real components must be finite")
        if tier is Tier.NATIVE64:
            hi = hi + lo
            lo = 0.0
            if not math.isfinite(hi):
                raise NonFiniteError("Real value overflowed")
        else:
            hi, lo = _two_sum(hi, lo)
            if not math.isfinite(hi):
                raise NonFiniteError("Real value overflowed")
        self.hi = hi
        self.lo = lo
        self.tier = tier

    # -- construction helpers ------------------------------------------

    @classmethod
    def _raw(cls, hi: float, lo: float, tier: Tier) -> "Real":
        # trusted fast path: components already normalized
        self = object.__new__(cls)
        self.hi = hi
        self.lo = lo
        self.tier = tier
        return self

    @classmethod
    def from_float(cls, value: float, tier: Tier = Tier.NATIVE64) -> "Real":
        """Exact embedding of a binary64 float (or int) into a tier."""
        return cls(float(value), 0.0, tier)

    @classmethod
    def from_decimal(cls, text: str, tier: Tier = Tier.NATIVE64) -> "Real":
        """Parse a decimal literal with correct rounding at the tier."""
        try:
            d = Decimal(text)
        except InvalidOperation as exc:
            raise ConfigError(f"not a decimal literal: {text!r}") from exc
        if not d.is_finite():
            raise NonFiniteError("decimal literal is not finite")
        if tier is Tier.NATIVE64:
            hi = float(d)
            if not math.isfinite(hi):
                raise NonFiniteError("decimal literal overflows binary64")
            return cls._raw(hi, 0.0, tier)
        f = Fraction(d)
        hi = float(f)
        if not math.isfinite(hi):
            raise NonFiniteError("decimal literal overflows the tier")
        lo = float(f - Fraction(hi))
        hi, lo = _quick_two_sum(hi, lo)
        return cls._raw(hi, lo, tier)

    # -- conversions ----------------------------------------------------

    def to_float(self) -> float:
        return self.hi + self.lo

    __float__ = to_float

    def to_decimal_string(self) -> str:
        """Shortest round-trip repr at NATIVE64; 32 significant digits
        in scientific form at DOUBLEWORD."""
        if self.tier is Tier.NATIVE64:
            return repr(self.hi)
        if self.hi == 0.0 and self.lo == 0.0:
            return "0.0"
        with localcontext() as ctx:
            ctx.prec = 70
            d = Decimal(self.hi) + Decimal(self.lo)
        return format(d, ".31E")

    def __str__(self) -> str:
        return self.to_decimal_string()

    def __repr__(self) -> str:
        return f"Real('{self.to_decimal_string()}', tier={self.tier.name})"

    # -- comparisons ------------------------------------------------------

    def _coerce(self, other) -> "Real | None":
        if isinstance(other, Real):
            if other.tier is not self.tier:
                raise TierMismatchError(
                    f"mixed tiers: {self.tier.name} and {other.tier.name}"
                )
            return other
        if isinstance(other, (int, float)):
            v = float(other)
            if not math.isfinite(v):
                raise NonFiniteError("operand is not finite")
            return Real._raw(v, 0.0, self.tier)
        return None

    def __eq__(self, other) -> bool:
        if isinstance(other, Real):
            return (
                self.tier is other.tier
                and self.hi == other.hi
                and self.lo == other.lo
            )
        if isinstance(other, (int, float)):
            return self.hi == float(other) and self.lo == 0.0
        return NotImplemented

    def __hash__(self):
        return hash((self.hi, self.lo, self.tier))

    def _cmp_key(self, other) -> tuple["Real", "Real"] | None:
        o = self._coerce(other)
        return None if o is None else (self, o)

    def __lt__(self, other):
        pair = self._cmp_key(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a.hi < b.hi or (a.hi == b.hi and a.lo < b.lo)

    def __le__(self, other):
        pair = self._cmp_key(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a.hi < b.hi or (a.hi == b.hi and a.lo <= b.lo)

    def __gt__(self, other):
        result = self.__le__(other)
        return NotImplemented if result is NotImplemented else not result

    def __ge__(self, other):
        result = self.__lt__(other)
        return NotImplemented if result is NotImplemented else not result

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.tier is Tier.NATIVE64:
            r = self.hi + o.hi
            if not math.isfinite(r):
                raise NonFiniteError("addition overflowed")
            return Real._raw(r, 0.0, self.tier)
        rh, rl = _dd_add(self.hi, self.lo, o.hi, o.lo)
        _check_finite_pair(rh, rl, "addition")
        return Real._raw(rh, rl, self.tier)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.tier is Tier.NATIVE64:
            r = self.hi - o.hi
            if not math.isfinite(r):
                raise NonFiniteError("subtraction overflowed")
            return Real._raw(r, 0.0, self.tier)
        rh, rl = _dd_sub(self.hi, self.lo, o.hi, o.lo)
        _check_finite_pair(rh, rl, "subtraction")
        return Real._raw(rh, rl, self.tier)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o.__sub__(self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.tier is Tier.NATIVE64:
            r = self.hi * o.hi
            if not math.isfinite(r):
                raise NonFiniteError("multiplication overflowed")
            return Real._raw(r, 0.0, self.tier)
        rh, rl = _dd_mul(self.hi, self.lo, o.hi, o.lo)
        _check_finite_pair(rh, rl, "multiplication")
        return Real._raw(rh, rl, self.tier)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.hi == 0.0:
            raise ZeroDivisionError("division by zero")
        if self.tier is Tier.NATIVE64:
            r = self.hi / o.hi
            if not math.isfinite(r):
                raise NonFiniteError("division overflowed")
            return Real._raw(r, 0.0, self.tier)
        rh, rl = _dd_div(self.hi, self.lo, o.hi, o.lo)
        _check_finite_pair(rh, rl, "division")
        return Real._raw(rh, rl, self.tier)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o.__truediv__(self)

    def __neg__(self):
        return Real._raw(-self.hi, -self.lo, self.tier)

    def __abs__(self):
        return -self if self.hi < 0.0 else self

    def __bool__(self):
        return self.hi != 0.0


# ----------------------------------------------------------------------
# Module-level operations (the stable scalar API)
# ----------------------------------------------------------------------


def add(x: Real, y: Real) -> Real:
    return x + y


def sub(x: Real, y: Real) -> Real:
    return x - y


def mul(x: Real, y: Real) -> Real:
    return x * y


def div(x: Real, y: Real) -> Real:
    return x / y


def sqrt(x: Real) -> Real:
    """Square root; raises :class:`DomainError` for negative input."""
    if x.hi < 0.0:
        raise DomainError("sqrt of a negative value")
    if x.tier is Tier.NATIVE64:
        return Real._raw(math.sqrt(x.hi), 0.0, x.tier)
    rh, rl = _dd_sqrt(x.hi, x.lo)
    return Real._raw(rh, rl, x.tier)


def atan(x: Real) -> Real:
    if x.tier is Tier.NATIVE64:
        return Real._raw(math.atan(x.hi), 0.0, x.tier)
    rh, rl = _dd_atan(x.hi, x.lo)
    return Real._raw(rh, rl, x.tier)


def sin(x: Real) -> Real:
    if x.tier is Tier.NATIVE64:
        return Real._raw(math.sin(x.hi), 0.0, x.tier)
    rh, rl = _dd_sin(x.hi, x.lo)
    return Real._raw(rh, rl, x.tier)


def cos(x: Real) -> Real:
    if x.tier is Tier.NATIVE64:
        return Real._raw(math.cos(x.hi), 0.0, x.tier)
    rh, rl = _dd_cos(x.hi, x.lo)
    return Real._raw(rh, rl, x.tier)


def exp(x: Real) -> Real:
    if x.tier is Tier.NATIVE64:
        try:
            r = math.exp(x.hi)
        except OverflowError:
            raise NonFiniteError("exp overflowed") from None
        return Real._raw(r, 0.0, x.tier)
    rh, rl = _dd_exp(x.hi, x.lo)
    _check_finite_pair(rh, rl, "exp")
    return Real._raw(rh, rl, x.tier)


def pi(tier: Tier = Tier.NATIVE64) -> Real:
    """The circle constant at the tier. The double-word value comes from
    Machin's arctangent formula and is cross-checked once against a
    compiled-in digit string."""
    if tier is Tier.NATIVE64:
        return Real._raw(math.pi, 0.0, tier)
    ph, pl = _pi_pair()
    return Real._raw(ph, pl, tier)


def build_info() -> str:
    """One line describing the numeric configuration of this build."""
    fma = "fma" if hasattr(math, "fma") else "dekker-split"
    try:
        _pi_pair()
        pi_check = "ok"
    except AssertionError:  # pragma: no cover - would indicate a broken build
        pi_check = "FAILED"
    return (
        f"tiers: native64 (eps=2^-52), doubleword (eps=2^-104); "
        f"two_prod={fma}; pi-self-check={pi_check}"
    )
