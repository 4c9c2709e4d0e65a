"""Integrand registry and closed-form reference values.

Each integrand is addressable by a stable string id and carries two
implementations of the same formula: a plain binary64 lane for the
NATIVE64 tier and a raw ``(hi, lo)`` double-word lane for DOUBLEWORD.
The quadrature engines select a lane by tier; :func:`eval_integrand`
is the safe pointwise entry with domain checking.

The closed-form registry exposes the exact targets of the verification
chain. They are constructed so that the algebraic ties hold bitwise in
tier arithmetic: ``TWO_I2`` is an exact power-of-two scaling of the same
product that yields ``I2``, and ``I`` is literally ``I1 - I2``.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

from .errors import ConfigError, DomainError, TierMismatchError
from .scalar import (
    Real,
    Tier,
    pi,
    _dd_add,
    _dd_add_d,
    _dd_atan,
    _dd_cos,
    _dd_div,
    _dd_mul,
    _dd_scale2,
    _dd_sin,
    _dd_sqr,
    _dd_sqrt,
    _pi_pair,
)

__all__ = [
    "Interval",
    "Integrand",
    "ids",
    "get",
    "domain_of",
    "closed_form",
    "closed_form_of",
    "eval_integrand",
]


@dataclass(frozen=True)
class Interval:
    """A closed interval with endpoints at one precision tier."""

    lower: Real
    upper: Real

    def __post_init__(self):
        if self.lower.tier is not self.upper.tier:
            raise TierMismatchError("interval endpoints of different tiers")
        if not self.lower <= self.upper:
            raise ConfigError("interval endpoints out of order")

    @property
    def tier(self) -> Tier:
        return self.lower.tier

    @property
    def degenerate(self) -> bool:
        return self.lower == self.upper

    @classmethod
    def unit(cls, tier: Tier) -> "Interval":
        return cls(Real.from_float(0.0, tier), Real.from_float(1.0, tier))


@dataclass(frozen=True)
class Integrand:
    """Static description of a registry entry."""

    id: str
    dim: int
    closed_form_name: str | None
    parametric: bool
    description: str


_ENTRIES = (
    Integrand(
        "ahmed_eq1",
        1,
        "I",
        False,
        "arctan(sqrt(2+x^2)) / ((1+x^2) sqrt(2+x^2)) on [0, 1]",
    ),
    Integrand(
        "i1_x",
        1,
        "I1",
        False,
        "(pi/2) / ((1+x^2) sqrt(2+x^2)) on [0, 1]",
    ),
    Integrand(
        "i1_theta",
        1,
        "I1",
        False,
        "(pi/2) cos(t) / sqrt(2 - sin^2 t) on [0, pi/4]",
    ),
    Integrand(
        "i1_phi",
        1,
        "I1",
        False,
        "the constant pi/2 on [0, pi/6]",
    ),
    Integrand(
        "i2_x",
        1,
        "I2",
        False,
        "arctan(1/sqrt(2+x^2)) / ((1+x^2) sqrt(2+x^2)) on [0, 1]",
    ),
    Integrand(
        "i2_kernel_eq4",
        2,
        "I2",
        False,
        "1 / ((1+x^2) (2+x^2+y^2)) on [0, 1]^2",
    ),
    Integrand(
        "product_kernel_eq6a",
        2,
        "TWO_I2",
        False,
        "1 / ((1+x^2) (1+y^2)) on [0, 1]^2",
    ),
    Integrand(
        "shifted_kernel_eq6b",
        2,
        "I2",
        False,
        "1 / ((1+y^2) (2+x^2+y^2)) on [0, 1]^2",
    ),
    Integrand(
        "eq3_kernel",
        1,
        None,
        True,
        "1 / (x^2 + a^2) on [0, 1], parametric in a != 0",
    ),
)

_REGISTRY = {e.id: e for e in _ENTRIES}


def ids() -> tuple[str, ...]:
    """All integrand ids, in registry order."""
    return tuple(e.id for e in _ENTRIES)


def get(integrand_id: str) -> Integrand:
    try:
        return _REGISTRY[integrand_id]
    except KeyError:
        raise ConfigError(f"unknown integrand id: {integrand_id!r}") from None


def domain_of(integrand_id: str, tier: Tier) -> tuple[Interval, ...]:
    """The integration domain, one Interval per axis."""
    entry = get(integrand_id)
    zero = Real.from_float(0.0, tier)
    if entry.id == "i1_theta":
        return (Interval(zero, pi(tier) * Real.from_float(0.25, tier)),)
    if entry.id == "i1_phi":
        sixth = pi(tier) / Real.from_float(6.0, tier)
        return (Interval(zero, sixth),)
    return tuple(Interval.unit(tier) for _ in range(entry.dim))


# ----------------------------------------------------------------------
# Closed-form registry
# ----------------------------------------------------------------------

_CLOSED_FORM_NAMES = ("I", "I1", "I2", "TWO_I2")


@functools.lru_cache(maxsize=None)
def closed_form(name: str, tier: Tier) -> Real:
    """Reference value by name: I = 5 pi^2 / 96, I1 = pi^2 / 12,
    I2 = pi^2 / 32, TWO_I2 = pi^2 / 16, each computed in tier
    arithmetic. ``I == I1 - I2`` and ``TWO_I2 == 2 * I2`` hold exactly."""
    if name not in _CLOSED_FORM_NAMES:
        raise ConfigError(f"unknown closed form: {name!r}")
    p = pi(tier)
    p2 = p * p
    if name == "I1":
        return p2 / Real.from_float(12.0, tier)
    if name == "I2":
        return p2 * Real.from_float(0.03125, tier)
    if name == "TWO_I2":
        return p2 * Real.from_float(0.0625, tier)
    return closed_form("I1", tier) - closed_form("I2", tier)


def closed_form_of(integrand_id: str, tier: Tier) -> Real | None:
    """The registry value this integrand integrates to over its domain,
    or None for parametric entries."""
    entry = get(integrand_id)
    if entry.closed_form_name is None:
        return None
    return closed_form(entry.closed_form_name, tier)


# ----------------------------------------------------------------------
# Evaluation lanes
# ----------------------------------------------------------------------


def _native_ahmed(x: float) -> float:
    x2 = x * x
    s = math.sqrt(2.0 + x2)
    return math.atan(s) / ((1.0 + x2) * s)


def _dd_ahmed(xh: float, xl: float) -> tuple[float, float]:
    x2h, x2l = _dd_sqr(xh, xl)
    sh, sl = _dd_sqrt(*_dd_add_d(x2h, x2l, 2.0))
    ah, al = _dd_atan(sh, sl)
    dh, dl = _dd_mul(*_dd_add_d(x2h, x2l, 1.0), sh, sl)
    return _dd_div(ah, al, dh, dl)


def _native_i1_x(x: float) -> float:
    x2 = x * x
    s = math.sqrt(2.0 + x2)
    return (0.5 * math.pi) / ((1.0 + x2) * s)


def _dd_i1_x(xh: float, xl: float) -> tuple[float, float]:
    x2h, x2l = _dd_sqr(xh, xl)
    sh, sl = _dd_sqrt(*_dd_add_d(x2h, x2l, 2.0))
    dh, dl = _dd_mul(*_dd_add_d(x2h, x2l, 1.0), sh, sl)
    p2h, p2l = _dd_scale2(*_pi_pair(), 0.5)
    return _dd_div(p2h, p2l, dh, dl)


def _native_i1_theta(t: float) -> float:
    s = math.sin(t)
    return 0.5 * math.pi * math.cos(t) / math.sqrt(2.0 - s * s)


def _dd_i1_theta(th: float, tl: float) -> tuple[float, float]:
    sh, sl = _dd_sin(th, tl)
    ch, cl = _dd_cos(th, tl)
    rh, rl = _dd_sqrt(*_dd_add_d(*_dd_scale2(*_dd_sqr(sh, sl), -1.0), 2.0))
    p2h, p2l = _dd_scale2(*_pi_pair(), 0.5)
    nh, nl = _dd_mul(p2h, p2l, ch, cl)
    return _dd_div(nh, nl, rh, rl)


def _native_i1_phi(_t: float) -> float:
    return 0.5 * math.pi


def _dd_i1_phi(_th: float, _tl: float) -> tuple[float, float]:
    return _dd_scale2(*_pi_pair(), 0.5)


def _native_i2_x(x: float) -> float:
    x2 = x * x
    s = math.sqrt(2.0 + x2)
    return math.atan(1.0 / s) / ((1.0 + x2) * s)


def _dd_i2_x(xh: float, xl: float) -> tuple[float, float]:
    x2h, x2l = _dd_sqr(xh, xl)
    sh, sl = _dd_sqrt(*_dd_add_d(x2h, x2l, 2.0))
    ah, al = _dd_atan(*_dd_div(1.0, 0.0, sh, sl))
    dh, dl = _dd_mul(*_dd_add_d(x2h, x2l, 1.0), sh, sl)
    return _dd_div(ah, al, dh, dl)


def _native_eq4(x: float, y: float) -> float:
    x2 = x * x
    return 1.0 / ((1.0 + x2) * (2.0 + x2 + y * y))


def _dd_eq4(xh: float, xl: float, yh: float, yl: float) -> tuple[float, float]:
    x2h, x2l = _dd_sqr(xh, xl)
    th, tl = _dd_add(*_dd_sqr(yh, yl), *_dd_add_d(x2h, x2l, 2.0))
    dh, dl = _dd_mul(*_dd_add_d(x2h, x2l, 1.0), th, tl)
    return _dd_div(1.0, 0.0, dh, dl)


def _native_eq6a(x: float, y: float) -> float:
    return 1.0 / ((1.0 + x * x) * (1.0 + y * y))


def _dd_eq6a(xh: float, xl: float, yh: float, yl: float) -> tuple[float, float]:
    dh, dl = _dd_mul(
        *_dd_add_d(*_dd_sqr(xh, xl), 1.0), *_dd_add_d(*_dd_sqr(yh, yl), 1.0)
    )
    return _dd_div(1.0, 0.0, dh, dl)


def _native_eq6b(x: float, y: float) -> float:
    y2 = y * y
    return 1.0 / ((1.0 + y2) * (2.0 + x * x + y2))


def _dd_eq6b(xh: float, xl: float, yh: float, yl: float) -> tuple[float, float]:
    y2h, y2l = _dd_sqr(yh, yl)
    th, tl = _dd_add(*_dd_sqr(xh, xl), *_dd_add_d(y2h, y2l, 2.0))
    dh, dl = _dd_mul(*_dd_add_d(y2h, y2l, 1.0), th, tl)
    return _dd_div(1.0, 0.0, dh, dl)


_NATIVE_LANES = {
    "ahmed_eq1": _native_ahmed,
    "i1_x": _native_i1_x,
    "i1_theta": _native_i1_theta,
    "i1_phi": _native_i1_phi,
    "i2_x": _native_i2_x,
    "i2_kernel_eq4": _native_eq4,
    "product_kernel_eq6a": _native_eq6a,
    "shifted_kernel_eq6b": _native_eq6b,
}

_DD_LANES = {
    "ahmed_eq1": _dd_ahmed,
    "i1_x": _dd_i1_x,
    "i1_theta": _dd_i1_theta,
    "i1_phi": _dd_i1_phi,
    "i2_x": _dd_i2_x,
    "i2_kernel_eq4": _dd_eq4,
    "product_kernel_eq6a": _dd_eq6a,
    "shifted_kernel_eq6b": _dd_eq6b,
}


@functools.lru_cache(maxsize=None)
def raw_fn(integrand_id: str, tier: Tier, a: Real | None = None):
    """Raw evaluation lane for the engines: floats in, floats out at
    NATIVE64; ``(hi, lo)`` components in and a pair out at DOUBLEWORD."""
    entry = get(integrand_id)
    if entry.parametric:
        if a is None:
            raise ConfigError(f"{integrand_id} requires the parameter a")
        if a.tier is not tier:
            raise TierMismatchError("parameter tier does not match request")
        if a.hi == 0.0:
            raise DomainError("a = 0 is excluded")
        if tier is Tier.NATIVE64:
            a2 = a.hi * a.hi

            def f_native(x: float) -> float:
                return 1.0 / (x * x + a2)

            return f_native
        a2h, a2l = _dd_sqr(a.hi, a.lo)

        def f_dd(xh: float, xl: float) -> tuple[float, float]:
            th, tl = _dd_add(*_dd_sqr(xh, xl), a2h, a2l)
            return _dd_div(1.0, 0.0, th, tl)

        return f_dd
    if a is not None:
        raise ConfigError(f"{integrand_id} takes no parameter")
    lanes = _NATIVE_LANES if tier is Tier.NATIVE64 else _DD_LANES
    return lanes[integrand_id]


def eval_integrand(
    integrand_id: str,
    point: Real | tuple[Real, ...] | list[Real],
    a: Real | None = None,
) -> Real:
    """Evaluate one registry integrand at a point inside its domain.

    The point's tier selects the lane. Raises :class:`DomainError`
    outside the domain and :class:`ConfigError` for arity or parameter
    mistakes."""
    entry = get(integrand_id)
    coords = (point,) if isinstance(point, Real) else tuple(point)
    if len(coords) != entry.dim:
        raise ConfigError(
            f"{integrand_id} expects {entry.dim} coordinate(s), got {len(coords)}"
        )
    tier = coords[0].tier
    for c in coords:
        if not isinstance(c, Real):
            raise ConfigError("coordinates must be Real")
        if c.tier is not tier:
            raise TierMismatchError("mixed coordinate tiers")
    domain = domain_of(integrand_id, tier)
    for c, iv in zip(coords, domain):
        if not (iv.lower <= c and c <= iv.upper):
            raise DomainError(
                f"point outside the domain of {integrand_id}: {c!s}"
            )
    fn = raw_fn(integrand_id, tier, a)
    if tier is Tier.NATIVE64:
        value = fn(*(c.hi for c in coords))
        return Real.from_float(value, tier)
    flat: list[float] = []
    for c in coords:
        flat.append(c.hi)
        flat.append(c.lo)
    rh, rl = fn(*flat)
    return Real._raw(rh, rl, tier)
