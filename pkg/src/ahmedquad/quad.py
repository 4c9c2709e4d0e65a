"""Quadrature engines over precision-tiered scalars.

Three engines share one result contract:

* Gauss-Legendre product rules with memoized node tables. Nodes are
  found by Newton iteration from Chebyshev initial guesses; DOUBLEWORD
  tables polish each converged root with two further Newton steps in
  double-word arithmetic.
* Tanh-sinh (double-exponential) rules with level-halved step sizes
  ``h = 2^-k`` and incremental refinement: level ``k`` reuses every
  point of level ``k - 1``.
* Globally adaptive Simpson with Richardson acceptance ``|S2 - S1| <=
  15 * tol`` and left-first deterministic splitting.

All reported evaluation counts are exact: every call into the integrand
is counted once, including the points spent on error estimation.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass

from .errors import (
    ConfigError,
    ConvergenceError,
    NonFiniteError,
    TierMismatchError,
)
from .integrands import Interval, domain_of, get as get_integrand, raw_fn
from .scalar import (
    Real,
    Tier,
    _dd_add,
    _dd_add_d,
    _dd_cosh,
    _dd_div,
    _dd_div_d,
    _dd_exp,
    _dd_mul,
    _dd_mul_d,
    _dd_scale2,
    _dd_sinh,
    _dd_sqr,
    _dd_sqrt,
    _dd_sub,
    _dd_tanh,
    _pi_pair,
)

__all__ = [
    "Mode",
    "GaussLegendre",
    "TanhSinh",
    "AdaptiveSimpson",
    "EngineConfig",
    "QuadResult",
    "NodeTable",
    "gl_nodes",
    "tanh_sinh_abscissas",
    "integrate_1d",
    "integrate_2d",
]

_MAX_GL_ORDER = 2048
_MAX_TS_LEVEL = 12
_MAX_AS_DEPTH = 60


class Mode(enum.Enum):
    """How a 2D integral is assembled from 1D machinery."""

    TENSOR = "tensor"
    ITERATED = "iterated"


@dataclass(frozen=True)
class GaussLegendre:
    order: int


@dataclass(frozen=True)
class TanhSinh:
    max_level: int
    target_eps: float


@dataclass(frozen=True)
class AdaptiveSimpson:
    tol: float
    max_depth: int = 40


@dataclass(frozen=True)
class EngineConfig:
    """An engine selection plus the tier it runs at. Invalid parameter
    combinations raise :class:`ConfigError` at construction time."""

    method: GaussLegendre | TanhSinh | AdaptiveSimpson
    tier: Tier = Tier.NATIVE64

    def __post_init__(self):
        m = self.method
        if isinstance(m, GaussLegendre):
            if not isinstance(m.order, int) or not 2 <= m.order <= _MAX_GL_ORDER:
                raise ConfigError(
                    f"Gauss-Legendre order must be an int in [2, {_MAX_GL_ORDER}]"
                )
        elif isinstance(m, TanhSinh):
            if not isinstance(m.max_level, int) or not 1 <= m.max_level <= _MAX_TS_LEVEL:
                raise ConfigError(
                    f"tanh-sinh max_level must be an int in [1, {_MAX_TS_LEVEL}]"
                )
            self._check_tol(m.target_eps, "target_eps")
        elif isinstance(m, AdaptiveSimpson):
            if not isinstance(m.max_depth, int) or not 1 <= m.max_depth <= _MAX_AS_DEPTH:
                raise ConfigError(
                    f"adaptive Simpson max_depth must be an int in [1, {_MAX_AS_DEPTH}]"
                )
            self._check_tol(m.tol, "tol")
        else:
            raise ConfigError(f"unknown method: {m!r}")

    def _check_tol(self, tol: float, name: str) -> None:
        if not isinstance(tol, (int, float)) or not math.isfinite(tol) or tol <= 0.0:
            raise ConfigError(f"{name} must be a positive finite number")
        if tol < 10.0 * self.tier.eps:
            raise ConfigError(
                f"{name}={tol:g} is unreachable at tier {self.tier.value} "
                f"(floor is {10.0 * self.tier.eps:g})"
            )


@dataclass(frozen=True)
class QuadResult:
    """Outcome of one integration: the value, a nonnegative error
    estimate, the exact number of integrand evaluations, and whether the
    engine's own stopping criterion was met."""

    value: Real
    error_estimate: Real
    evaluations: int
    converged: bool


@dataclass(frozen=True)
class NodeTable:
    """A Gauss-Legendre rule on [-1, 1]: ascending nodes with matching
    positive weights, symmetric about zero."""

    order: int
    tier: Tier
    nodes: tuple[Real, ...]
    weights: tuple[Real, ...]


# ----------------------------------------------------------------------
# Gauss-Legendre node generation
# ----------------------------------------------------------------------


def _legendre_native(n: int, x: float) -> tuple[float, float]:
    p0, p1 = 1.0, x
    for k in range(1, n):
        p0, p1 = p1, ((2 * k + 1) * x * p1 - k * p0) / (k + 1)
    dp = n * (x * p1 - p0) / (x * x - 1.0) if x != 0.0 else n * -p0 / -1.0
    return p1, dp


def _legendre_dd(n: int, xh: float, xl: float) -> tuple[float, float, float, float]:
    p0h, p0l = 1.0, 0.0
    p1h, p1l = xh, xl
    for k in range(1, n):
        th, tl = _dd_mul(p1h, p1l, xh, xl)
        th, tl = _dd_mul_d(th, tl, float(2 * k + 1))
        sh, sl = _dd_mul_d(p0h, p0l, float(k))
        th, tl = _dd_sub(th, tl, sh, sl)
        th, tl = _dd_div_d(th, tl, float(k + 1))
        p0h, p0l, p1h, p1l = p1h, p1l, th, tl
    numh, numl = _dd_sub(*_dd_mul(p1h, p1l, xh, xl), p0h, p0l)
    numh, numl = _dd_mul_d(numh, numl, float(n))
    denh, denl = _dd_add_d(*_dd_sqr(xh, xl), -1.0)
    dph, dpl = _dd_div(numh, numl, denh, denl)
    return p1h, p1l, dph, dpl


def _gl_positive_roots_native(n: int) -> list[tuple[float, float]]:
    # positive half (descending), each entry (node, weight)
    out = []
    for i in range(n // 2):
        x = math.cos(math.pi * (i + 0.75) / (n + 0.5))
        prev = math.inf
        for _ in range(100):
            p, dp = _legendre_native(n, x)
            dx = p / dp
            x -= dx
            adx = abs(dx)
            if adx <= 1e-15 * abs(x) + 1e-300 or adx >= prev:
                break
            prev = adx
        else:
            raise ConvergenceError(
                f"Gauss-Legendre node {i} of order {n} did not converge"
            )
        p, dp = _legendre_native(n, x)
        w = 2.0 / ((1.0 - x * x) * dp * dp)
        out.append((x, w))
    return out


@functools.lru_cache(maxsize=None)
def _gl_raw_native(n: int) -> tuple[tuple[float, ...], tuple[float, ...]]:
    xs = [0.0] * n
    ws = [0.0] * n
    for i, (x, w) in enumerate(_gl_positive_roots_native(n)):
        xs[n - 1 - i] = x
        ws[n - 1 - i] = w
        xs[i] = -x
        ws[i] = w
    if n % 2 == 1:
        _, dp = _legendre_native(n, 0.0)
        xs[n // 2] = 0.0
        ws[n // 2] = 2.0 / (dp * dp)
    return tuple(xs), tuple(ws)


@functools.lru_cache(maxsize=None)
def _gl_raw_dd(n: int):
    xs: list[tuple[float, float]] = [(0.0, 0.0)] * n
    ws: list[tuple[float, float]] = [(0.0, 0.0)] * n
    for i, (x0, _) in enumerate(_gl_positive_roots_native(n)):
        xh, xl = x0, 0.0
        for _ in range(2):
            ph, pl, dph, dpl = _legendre_dd(n, xh, xl)
            dxh, dxl = _dd_div(ph, pl, dph, dpl)
            xh, xl = _dd_sub(xh, xl, dxh, dxl)
        _, _, dph, dpl = _legendre_dd(n, xh, xl)
        oh, ol = _dd_sub(1.0, 0.0, *_dd_sqr(xh, xl))
        dh, dl = _dd_mul(oh, ol, *_dd_sqr(dph, dpl))
        wh, wl = _dd_div(2.0, 0.0, dh, dl)
        xs[n - 1 - i] = (xh, xl)
        ws[n - 1 - i] = (wh, wl)
        xs[i] = (-xh, -xl)
        ws[i] = (wh, wl)
    if n % 2 == 1:
        _, _, dph, dpl = _legendre_dd(n, 0.0, 0.0)
        wh, wl = _dd_div(2.0, 0.0, *_dd_sqr(dph, dpl))
        xs[n // 2] = (0.0, 0.0)
        ws[n // 2] = (wh, wl)
    return tuple(xs), tuple(ws)


@functools.lru_cache(maxsize=None)
def gl_nodes(order: int, tier: Tier = Tier.NATIVE64) -> NodeTable:
    """The memoized Gauss-Legendre rule of a given order at a tier.
    Repeated calls return the identical table object."""
    if not isinstance(order, int) or not 2 <= order <= _MAX_GL_ORDER:
        raise ConfigError(f"order must be an int in [2, {_MAX_GL_ORDER}]")
    if tier is Tier.NATIVE64:
        xs, ws = _gl_raw_native(order)
        nodes = tuple(Real._raw(x, 0.0, tier) for x in xs)
        weights = tuple(Real._raw(w, 0.0, tier) for w in ws)
    else:
        xsp, wsp = _gl_raw_dd(order)
        nodes = tuple(Real._raw(h, l, tier) for h, l in xsp)
        weights = tuple(Real._raw(h, l, tier) for h, l in wsp)
    return NodeTable(order, tier, nodes, weights)


# ----------------------------------------------------------------------
# Tanh-sinh point generation
# ----------------------------------------------------------------------

# weight cutoffs sit well below each tier's digit budget; the slack
# absorbs the slow per-node weight decay at the finest levels, where
# truncating at ~eps/4 would discard a visible tail
_TS_CUTOFF_NATIVE = 2.0**-60
_TS_CUTOFF_DD = 2.0**-106


def _ts_point_native(t: float, h: float) -> tuple[float, float]:
    u = 0.5 * math.pi * math.sinh(t)
    x = math.tanh(u)
    cu = math.cosh(u)
    w = 0.5 * math.pi * h * math.cosh(t) / (cu * cu)
    return x, w


def _ts_point_dd(
    t: float, hp2h: float, hp2l: float
) -> tuple[tuple[float, float], tuple[float, float], bool]:
    # returns (abscissa pair, weight pair, saturated flag); the flag is
    # set once the pair value reaches 1 exactly
    if t < 0.5:
        sh_t, sl_t = _dd_sinh(t, 0.0)
        ch_t, cl_t = _dd_sqrt(*_dd_add_d(*_dd_sqr(sh_t, sl_t), 1.0))
    else:
        eh, el = _dd_exp(t, 0.0)
        ih, il = _dd_div(1.0, 0.0, eh, el)
        sh_t, sl_t = _dd_scale2(*_dd_sub(eh, el, ih, il), 0.5)
        ch_t, cl_t = _dd_scale2(*_dd_add(eh, el, ih, il), 0.5)
    uh, ul = _dd_mul(*_dd_scale2(*_pi_pair(), 0.5), sh_t, sl_t)
    if uh < 0.5:
        xh, xl = _dd_tanh(uh, ul)
        cuh, cul = _dd_cosh(uh, ul)
    else:
        eh, el = _dd_exp(uh, ul)
        ih, il = _dd_div(1.0, 0.0, eh, el)
        nh, nl = _dd_sub(eh, el, ih, il)
        dh, dl = _dd_add(eh, el, ih, il)
        xh, xl = _dd_div(nh, nl, dh, dl)
        cuh, cul = _dd_scale2(dh, dl, 0.5)
    wh, wl = _dd_mul(hp2h, hp2l, ch_t, cl_t)
    wh, wl = _dd_div(wh, wl, *_dd_sqr(cuh, cul))
    saturated = xh > 1.0 or (xh == 1.0 and xl >= 0.0)
    return (xh, xl), (wh, wl), saturated


def _ts_nonneg_native(level: int, increment: bool):
    # (x, w) for t = j*h with j >= 0; increment mode keeps only the odd
    # j that are new at this level (level 1 keeps everything)
    h = 2.0**-level
    xs: list[float] = []
    ws: list[float] = []
    if increment and level > 1:
        j, step = 1, 2
    else:
        j, step = 0, 1
        xs.append(0.0)
        ws.append(0.5 * math.pi * h)
        j += step
    while True:
        x, w = _ts_point_native(j * h, h)
        if x >= 1.0 or w < _TS_CUTOFF_NATIVE:
            break
        xs.append(x)
        ws.append(w)
        j += step
    return tuple(xs), tuple(ws)


@functools.lru_cache(maxsize=None)
def _ts_inc_native(level: int):
    return _ts_nonneg_native(level, increment=True)


@functools.lru_cache(maxsize=None)
def _ts_full_native(level: int):
    return _ts_nonneg_native(level, increment=False)


def _ts_nonneg_dd(level: int, increment: bool):
    h = 2.0**-level
    hp2h, hp2l = _dd_scale2(*_pi_pair(), 0.5 * h)
    xs: list[tuple[float, float]] = []
    ws: list[tuple[float, float]] = []
    if increment and level > 1:
        j, step = 1, 2
    else:
        j, step = 0, 1
        xs.append((0.0, 0.0))
        ws.append((hp2h, hp2l))
        j += step
    while True:
        xp, wp, saturated = _ts_point_dd(j * h, hp2h, hp2l)
        if saturated or wp[0] < _TS_CUTOFF_DD:
            break
        xs.append(xp)
        ws.append(wp)
        j += step
    return tuple(xs), tuple(ws)


@functools.lru_cache(maxsize=None)
def _ts_inc_dd(level: int):
    return _ts_nonneg_dd(level, increment=True)


@functools.lru_cache(maxsize=None)
def _ts_full_dd(level: int):
    return _ts_nonneg_dd(level, increment=False)


@functools.lru_cache(maxsize=None)
def tanh_sinh_abscissas(
    level: int, tier: Tier = Tier.NATIVE64
) -> tuple[tuple[Real, Real], ...]:
    """The full tanh-sinh rule at step ``h = 2^-level``: ``(abscissa,
    weight)`` pairs in non-decreasing abscissa order, truncated where
    weights fall below the tier floor. Abscissas are strictly inside
    (-1, 1) and symmetric about zero; the center weight is exactly
    ``(pi/2) * h``. At NATIVE64 the finest levels place underlying
    points closer together than one binary64 spacing near the
    endpoints, so adjacent table entries there can round to equal
    abscissas (their weights stay distinct)."""
    if not isinstance(level, int) or not 1 <= level <= _MAX_TS_LEVEL:
        raise ConfigError(f"level must be an int in [1, {_MAX_TS_LEVEL}]")
    out: list[tuple[Real, Real]] = []
    if tier is Tier.NATIVE64:
        xs, ws = _ts_full_native(level)
        for x, w in zip(reversed(xs[1:]), reversed(ws[1:])):
            out.append((Real._raw(-x, 0.0, tier), Real._raw(w, 0.0, tier)))
        for x, w in zip(xs, ws):
            out.append((Real._raw(x, 0.0, tier), Real._raw(w, 0.0, tier)))
    else:
        xsp, wsp = _ts_full_dd(level)
        for (xh, xl), (wh, wl) in zip(reversed(xsp[1:]), reversed(wsp[1:])):
            out.append((Real._raw(-xh, -xl, tier), Real._raw(wh, wl, tier)))
        for (xh, xl), (wh, wl) in zip(xsp, wsp):
            out.append((Real._raw(xh, xl, tier), Real._raw(wh, wl, tier)))
    return tuple(out)


# ----------------------------------------------------------------------
# Non-finite localization (slow path, only after a sum went bad)
# ----------------------------------------------------------------------


def _raise_nonfinite_1d(f, points) -> None:
    for x in points:
        try:
            v = f(x)
        except (OverflowError, ValueError, ZeroDivisionError):
            raise NonFiniteError(
                "integrand failed to evaluate", point=(x,)
            ) from None
        if isinstance(v, tuple):
            v = v[0]
        if not math.isfinite(v):
            raise NonFiniteError(
                f"integrand returned a non-finite value at x={x!r}", point=(x,)
            )
    raise NonFiniteError("integration produced a non-finite sum")


# ----------------------------------------------------------------------
# 1D engine cores, NATIVE64 lane
# ----------------------------------------------------------------------


def _gl_sum_native(f, m: float, hf: float, n: int) -> tuple[float, int]:
    xs, ws = _gl_raw_native(n)
    s = 0.0
    c = 0.0
    for x, w in zip(xs, ws):
        v = w * f(m + hf * x)
        t = s + v
        if abs(s) >= abs(v):
            c += (s - t) + v
        else:
            c += (v - t) + s
        s = t
    total = s + c
    if not math.isfinite(total):
        _raise_nonfinite_1d(f, [m + hf * x for x in xs])
    return total, n


def _run_gl_1d_native(f, m, hf, method: GaussLegendre):
    s_full, e1 = _gl_sum_native(f, m, hf, method.order)
    n2 = max(1, method.order // 2)
    s_half, e2 = _gl_sum_native(f, m, hf, n2)
    value = hf * s_full
    est = abs(value - hf * s_half)
    est = max(est, 4.0 * Tier.NATIVE64.eps * abs(value))
    return value, est, e1 + e2, True


def _run_ts_1d_native(f, m, hf, method: TanhSinh, fixed_level: int | None = None):
    max_level = method.max_level if fixed_level is None else fixed_level
    eps = method.target_eps
    # compensated pair (s, c) persists across levels; the level-halving
    # rescale by 0.5 is exact on both words
    s = 0.0
    c = 0.0
    evals = 0
    value = 0.0
    prev_value = None
    diff = None
    prev_diff = math.inf
    converged = False
    for level in range(1, max_level + 1):
        if level == 1:
            xs, ws = _ts_full_native(1)
        else:
            xs, ws = _ts_inc_native(level)
            s *= 0.5
            c *= 0.5
        for x, w in zip(xs, ws):
            if x == 0.0:
                v = w * f(m)
                evals += 1
            else:
                v = w * (f(m + hf * x) + f(m - hf * x))
                evals += 2
            t = s + v
            if abs(s) >= abs(v):
                c += (s - t) + v
            else:
                c += (v - t) + s
            s = t
        value = hf * (s + c)
        if prev_value is not None:
            diff = abs(value - prev_value)
            if fixed_level is None:
                floor = 16.0 * Tier.NATIVE64.eps * max(1.0, abs(value))
                if diff <= eps or (diff <= floor and prev_diff <= floor):
                    converged = True
                    break
            prev_diff = diff
        prev_value = value
    if not math.isfinite(value):
        pts = [m]
        for lv in range(1, max_level + 1):
            xs, _ = _ts_full_native(lv)
            pts.extend(m + hf * x for x in xs[1:])
            pts.extend(m - hf * x for x in xs[1:])
        _raise_nonfinite_1d(f, pts)
    if fixed_level is not None:
        converged = diff is not None and diff <= eps
    est = abs(value) if diff is None else diff
    est = max(est, 4.0 * Tier.NATIVE64.eps * abs(value))
    return value, est, evals, converged


def _run_as_1d_native(f, a, b, method: AdaptiveSimpson):
    tol = method.tol
    max_depth = method.max_depth
    state = {"evals": 0, "depth_hit": False}

    def ev(x):
        state["evals"] += 1
        v = f(x)
        if not math.isfinite(v):
            raise NonFiniteError(
                f"integrand returned a non-finite value at x={x!r}", point=(x,)
            )
        return v

    def rec(a, fa, m, fm, b, fb, whole, tol, depth):
        lm = 0.5 * (a + m)
        rm = 0.5 * (m + b)
        flm = ev(lm)
        frm = ev(rm)
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        s2 = left + right
        d = s2 - whole
        if abs(d) <= 15.0 * tol or depth >= max_depth:
            if abs(d) > 15.0 * tol:
                state["depth_hit"] = True
            return s2 + d / 15.0, abs(d) / 15.0
        half = 0.5 * tol
        lv, le = rec(a, fa, lm, flm, m, fm, left, half, depth + 1)
        rv, re = rec(m, fm, rm, frm, b, fb, right, half, depth + 1)
        return lv + rv, le + re

    fa = ev(a)
    m = 0.5 * (a + b)
    fm = ev(m)
    fb = ev(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    value, est = rec(a, fa, m, fm, b, fb, whole, tol, 0)
    if not math.isfinite(value):
        raise NonFiniteError("integration produced a non-finite sum")
    est = max(est, 4.0 * Tier.NATIVE64.eps * abs(value))
    return value, est, state["evals"], not state["depth_hit"]


def _run_1d_native(f, a, b, method, fixed_level=None):
    if isinstance(method, AdaptiveSimpson):
        return _run_as_1d_native(f, a, b, method)
    m = 0.5 * (a + b)
    hf = 0.5 * (b - a)
    if isinstance(method, GaussLegendre):
        return _run_gl_1d_native(f, m, hf, method)
    return _run_ts_1d_native(f, m, hf, method, fixed_level)


# ----------------------------------------------------------------------
# 1D engine cores, DOUBLEWORD lane
# ----------------------------------------------------------------------

_CHUNK = 256


class _DDAccumulator:
    """Double-word accumulator with periodic chunk flushing, keeping the
    worst-case accumulated rounding well under the tier plateau."""

    __slots__ = ("ah", "al", "th", "tl", "count")

    def __init__(self):
        self.ah = self.al = self.th = self.tl = 0.0
        self.count = 0

    def add(self, vh: float, vl: float) -> None:
        self.ah, self.al = _dd_add(self.ah, self.al, vh, vl)
        self.count += 1
        if self.count >= _CHUNK:
            self.th, self.tl = _dd_add(self.th, self.tl, self.ah, self.al)
            self.ah = self.al = 0.0
            self.count = 0

    def total(self) -> tuple[float, float]:
        return _dd_add(self.th, self.tl, self.ah, self.al)


def _gl_sum_dd(f, mh, ml, hh, hl, n: int) -> tuple[tuple[float, float], int]:
    xs, ws = _gl_raw_dd(n)
    acc = _DDAccumulator()
    for (xh, xl), (wh, wl) in zip(xs, ws):
        ph, pl = _dd_add(mh, ml, *_dd_mul(hh, hl, xh, xl))
        vh, vl = f(ph, pl)
        acc.add(*_dd_mul(wh, wl, vh, vl))
    th, tl = acc.total()
    if not math.isfinite(th):
        pts = [_dd_add(mh, ml, *_dd_mul(hh, hl, xh, xl)) for xh, xl in xs]
        _raise_nonfinite_1d(lambda p: f(p[0], p[1]), pts)
    return (th, tl), n


def _run_gl_1d_dd(f, mh, ml, hh, hl, method: GaussLegendre):
    (sfh, sfl), e1 = _gl_sum_dd(f, mh, ml, hh, hl, method.order)
    n2 = max(1, method.order // 2)
    (shh, shl), e2 = _gl_sum_dd(f, mh, ml, hh, hl, n2)
    vh, vl = _dd_mul(hh, hl, sfh, sfl)
    wh, wl = _dd_mul(hh, hl, shh, shl)
    est = abs(_dd_sub(vh, vl, wh, wl)[0])
    est = max(est, 4.0 * Tier.DOUBLEWORD.eps * abs(vh))
    return (vh, vl), est, e1 + e2, True


def _run_ts_1d_dd(f, mh, ml, hh, hl, method: TanhSinh, fixed_level: int | None = None):
    max_level = method.max_level if fixed_level is None else fixed_level
    eps = method.target_eps
    sh = sl = 0.0
    evals = 0
    vh = vl = 0.0
    prev: tuple[float, float] | None = None
    diff = None
    prev_diff = math.inf
    converged = False
    for level in range(1, max_level + 1):
        xs, ws = _ts_full_dd(1) if level == 1 else _ts_inc_dd(level)
        acc = _DDAccumulator()
        for (xh, xl), (wh, wl) in zip(xs, ws):
            if xh == 0.0:
                fh, fl = f(mh, ml)
                evals += 1
                acc.add(*_dd_mul(wh, wl, fh, fl))
            else:
                oh, ol = _dd_mul(hh, hl, xh, xl)
                ph, pl = _dd_add(mh, ml, oh, ol)
                qh, ql = _dd_sub(mh, ml, oh, ol)
                f1h, f1l = f(ph, pl)
                f2h, f2l = f(qh, ql)
                evals += 2
                acc.add(*_dd_mul(wh, wl, *_dd_add(f1h, f1l, f2h, f2l)))
        ih, il = acc.total()
        if level == 1:
            sh, sl = ih, il
        else:
            sh, sl = _dd_add(*_dd_scale2(sh, sl, 0.5), ih, il)
        vh, vl = _dd_mul(hh, hl, sh, sl)
        if prev is not None:
            diff = abs(_dd_sub(vh, vl, *prev)[0])
            if fixed_level is None:
                floor = 16.0 * Tier.DOUBLEWORD.eps * max(1.0, abs(vh))
                if diff <= eps or (diff <= floor and prev_diff <= floor):
                    converged = True
                    break
            prev_diff = diff
        prev = (vh, vl)
    if not math.isfinite(vh):
        pts = [(mh, ml)]
        for lv in range(1, max_level + 1):
            xs, _ = _ts_full_dd(lv)
            for xh, xl in xs[1:]:
                oh, ol = _dd_mul(hh, hl, xh, xl)
                pts.append(_dd_add(mh, ml, oh, ol))
                pts.append(_dd_sub(mh, ml, oh, ol))
        _raise_nonfinite_1d(lambda p: f(p[0], p[1]), pts)
    if fixed_level is not None:
        converged = diff is not None and diff <= eps
    est = abs(vh) if diff is None else diff
    est = max(est, 4.0 * Tier.DOUBLEWORD.eps * abs(vh))
    return (vh, vl), est, evals, converged


def _run_as_1d_dd(f, ah, al, bh, bl, method: AdaptiveSimpson):
    tol = method.tol
    max_depth = method.max_depth
    state = {"evals": 0, "depth_hit": False}

    def ev(xh, xl):
        state["evals"] += 1
        vh, vl = f(xh, xl)
        if not math.isfinite(vh):
            raise NonFiniteError(
                f"integrand returned a non-finite value at x={xh!r}",
                point=(xh,),
            )
        return vh, vl

    def simpson(ah, al, bh, bl, fa, fm, fb):
        # (b - a)/6 * (fa + 4 fm + fb)
        th, tl = _dd_add(*fa, *_dd_mul_d(*fm, 4.0))
        th, tl = _dd_add(th, tl, *fb)
        wh, wl = _dd_div_d(*_dd_sub(bh, bl, ah, al), 6.0)
        return _dd_mul(wh, wl, th, tl)

    def rec(ah, al, fa, mh, ml, fm, bh, bl, fb, whole, tol, depth):
        lmh, lml = _dd_scale2(*_dd_add(ah, al, mh, ml), 0.5)
        rmh, rml = _dd_scale2(*_dd_add(mh, ml, bh, bl), 0.5)
        flm = ev(lmh, lml)
        frm = ev(rmh, rml)
        left = simpson(ah, al, mh, ml, fa, flm, fm)
        right = simpson(mh, ml, bh, bl, fm, frm, fb)
        s2 = _dd_add(*left, *right)
        dh, dl = _dd_sub(*s2, *whole)
        if abs(dh) <= 15.0 * tol or depth >= max_depth:
            if abs(dh) > 15.0 * tol:
                state["depth_hit"] = True
            corr = _dd_div_d(dh, dl, 15.0)
            return _dd_add(*s2, *corr), abs(dh) / 15.0
        half = 0.5 * tol
        lv, le = rec(ah, al, fa, lmh, lml, flm, mh, ml, fm, left, half, depth + 1)
        rv, re = rec(mh, ml, fm, rmh, rml, frm, bh, bl, fb, right, half, depth + 1)
        return _dd_add(*lv, *rv), le + re

    fa = ev(ah, al)
    mh, ml = _dd_scale2(*_dd_add(ah, al, bh, bl), 0.5)
    fm = ev(mh, ml)
    fb = ev(bh, bl)
    whole = simpson(ah, al, bh, bl, fa, fm, fb)
    (vh, vl), est = rec(ah, al, fa, mh, ml, fm, bh, bl, fb, whole, tol, 0)
    if not math.isfinite(vh):
        raise NonFiniteError("integration produced a non-finite sum")
    est = max(est, 4.0 * Tier.DOUBLEWORD.eps * abs(vh))
    return (vh, vl), est, state["evals"], not state["depth_hit"]


def _run_1d_dd(f, interval: Interval, method, fixed_level=None):
    a, b = interval.lower, interval.upper
    if isinstance(method, AdaptiveSimpson):
        return _run_as_1d_dd(f, a.hi, a.lo, b.hi, b.lo, method)
    mh, ml = _dd_scale2(*_dd_add(a.hi, a.lo, b.hi, b.lo), 0.5)
    hh, hl = _dd_scale2(*_dd_sub(b.hi, b.lo, a.hi, a.lo), 0.5)
    if isinstance(method, GaussLegendre):
        return _run_gl_1d_dd(f, mh, ml, hh, hl, method)
    return _run_ts_1d_dd(f, mh, ml, hh, hl, method, fixed_level)


# ----------------------------------------------------------------------
# 2D tensor cores
# ----------------------------------------------------------------------


def _signed_axis_native(xs, ws, m, hf):
    # mapped signed expansion: negatives descending from the far end,
    # then center (if present), then positives
    axis = []
    for x, w in zip(xs, ws):
        if x == 0.0:
            axis.append((m, w))
        else:
            axis.append((m + hf * x, w))
            axis.append((m - hf * x, w))
    return axis


def _run_gl_2d_native(f, mx, hx, my, hy, order: int):
    def tensor(n):
        xs, ws = _gl_raw_native(n)
        px = [mx + hx * x for x in xs]
        py = [my + hy * x for x in xs]
        s = 0.0
        cs = 0.0
        for y, wy in zip(py, ws):
            r = 0.0
            cr = 0.0
            for x, wx in zip(px, ws):
                v = wx * f(x, y)
                t = r + v
                if abs(r) >= abs(v):
                    cr += (r - t) + v
                else:
                    cr += (v - t) + r
                r = t
            v = wy * (r + cr)
            t = s + v
            if abs(s) >= abs(v):
                cs += (s - t) + v
            else:
                cs += (v - t) + s
            s = t
        return s + cs, n * n

    s_full, e1 = tensor(order)
    n2 = max(1, order // 2)
    s_half, e2 = tensor(n2)
    value = hx * hy * s_full
    if not math.isfinite(value):
        xs, _ = _gl_raw_native(order)
        pts = [(mx + hx * x, my + hy * y) for y in xs for x in xs]
        _raise_nonfinite_2d(f, pts)
    est = abs(value - hx * hy * s_half)
    est = max(est, 4.0 * Tier.NATIVE64.eps * abs(value))
    return value, est, e1 + e2, True


def _raise_nonfinite_2d(f, pts) -> None:
    for x, y in pts:
        try:
            v = f(x, y)
        except (OverflowError, ValueError, ZeroDivisionError):
            raise NonFiniteError(
                "integrand failed to evaluate", point=(x, y)
            ) from None
        if isinstance(v, tuple):
            v = v[0]
        if not math.isfinite(v):
            raise NonFiniteError(
                f"integrand returned a non-finite value at ({x!r}, {y!r})",
                point=(x, y),
            )
    raise NonFiniteError("integration produced a non-finite sum")


def _run_ts_2d_native(f, mx, hx, my, hy, method: TanhSinh):
    eps = method.target_eps
    px: list[tuple[float, float]] = []
    py: list[tuple[float, float]] = []
    s = 0.0
    cs = 0.0
    evals = 0
    value = 0.0
    prev_value = None
    diff = None
    prev_diff = math.inf
    converged = False

    def add_outer(v):
        nonlocal s, cs
        t = s + v
        if abs(s) >= abs(v):
            cs += (s - t) + v
        else:
            cs += (v - t) + s
        s = t

    def row_sum(y, axis):
        nonlocal evals
        r = 0.0
        cr = 0.0
        for x, wx in axis:
            v = wx * f(x, y)
            t = r + v
            if abs(r) >= abs(v):
                cr += (r - t) + v
            else:
                cr += (v - t) + r
            r = t
        evals += len(axis)
        return r + cr

    for level in range(1, method.max_level + 1):
        if level == 1:
            xs, ws = _ts_full_native(1)
        else:
            xs, ws = _ts_inc_native(level)
            px = [(x, 0.5 * w) for x, w in px]
            py = [(y, 0.5 * w) for y, w in py]
            s *= 0.25
            cs *= 0.25
        nx = _signed_axis_native(xs, ws, mx, hx)
        ny = _signed_axis_native(xs, ws, my, hy)
        for y, wy in py:
            add_outer(wy * row_sum(y, nx))
        both = px + nx
        for y, wy in ny:
            add_outer(wy * row_sum(y, both))
        px = both
        py = py + ny
        value = hx * hy * (s + cs)
        if prev_value is not None:
            diff = abs(value - prev_value)
            floor = 16.0 * Tier.NATIVE64.eps * max(1.0, abs(value))
            if diff <= eps or (diff <= floor and prev_diff <= floor):
                converged = True
                break
            prev_diff = diff
        prev_value = value
    if not math.isfinite(value):
        _raise_nonfinite_2d(f, [(x, y) for y, _ in py for x, _ in px])
    est = abs(value) if diff is None else diff
    est = max(est, 4.0 * Tier.NATIVE64.eps * abs(value))
    return value, est, evals, converged


def _signed_axis_dd(xs, ws, mh, ml, hh, hl):
    axis = []
    for (xh, xl), w in zip(xs, ws):
        if xh == 0.0:
            axis.append(((mh, ml), w))
        else:
            oh, ol = _dd_mul(hh, hl, xh, xl)
            axis.append((_dd_add(mh, ml, oh, ol), w))
            axis.append((_dd_sub(mh, ml, oh, ol), w))
    return axis


def _run_gl_2d_dd(f, mx, hx, my, hy, order: int):
    def tensor(n):
        xs, ws = _gl_raw_dd(n)
        px = [_dd_add(mx[0], mx[1], *_dd_mul(hx[0], hx[1], xh, xl)) for xh, xl in xs]
        py = [_dd_add(my[0], my[1], *_dd_mul(hy[0], hy[1], xh, xl)) for xh, xl in xs]
        outer = _DDAccumulator()
        for (yh, yl), (wyh, wyl) in zip(py, ws):
            row = _DDAccumulator()
            for (xh, xl), (wxh, wxl) in zip(px, ws):
                vh, vl = f(xh, xl, yh, yl)
                row.add(*_dd_mul(wxh, wxl, vh, vl))
            outer.add(*_dd_mul(wyh, wyl, *row.total()))
        return outer.total(), n * n

    (sfh, sfl), e1 = tensor(order)
    n2 = max(1, order // 2)
    (shh, shl), e2 = tensor(n2)
    hxy = _dd_mul(hx[0], hx[1], hy[0], hy[1])
    vh, vl = _dd_mul(*hxy, sfh, sfl)
    uh, ul = _dd_mul(*hxy, shh, shl)
    if not math.isfinite(vh):
        xs, _ = _gl_raw_dd(order)
        px = [_dd_add(mx[0], mx[1], *_dd_mul(hx[0], hx[1], a, b)) for a, b in xs]
        py = [_dd_add(my[0], my[1], *_dd_mul(hy[0], hy[1], a, b)) for a, b in xs]
        _raise_nonfinite_2d(
            lambda p, q: f(p[0], p[1], q[0], q[1]),
            [(p, q) for q in py for p in px],
        )
    est = abs(_dd_sub(vh, vl, uh, ul)[0])
    est = max(est, 4.0 * Tier.DOUBLEWORD.eps * abs(vh))
    return (vh, vl), est, e1 + e2, True


def _run_ts_2d_dd(f, mx, hx, my, hy, method: TanhSinh):
    eps = method.target_eps
    px: list = []
    py: list = []
    sh = sl = 0.0
    evals = 0
    vh = vl = 0.0
    prev = None
    diff = None
    prev_diff = math.inf
    converged = False

    for level in range(1, method.max_level + 1):
        if level == 1:
            xs, ws = _ts_full_dd(1)
        else:
            xs, ws = _ts_inc_dd(level)
            px = [(p, _dd_scale2(w[0], w[1], 0.5)) for p, w in px]
            py = [(p, _dd_scale2(w[0], w[1], 0.5)) for p, w in py]
            sh, sl = _dd_scale2(sh, sl, 0.25)
        nx = _signed_axis_dd(xs, ws, mx[0], mx[1], hx[0], hx[1])
        ny = _signed_axis_dd(xs, ws, my[0], my[1], hy[0], hy[1])
        outer = _DDAccumulator()

        def row_sum(yh, yl, axis):
            nonlocal evals
            row = _DDAccumulator()
            for (pxh, pxl), (wxh, wxl) in axis:
                fh, fl = f(pxh, pxl, yh, yl)
                row.add(*_dd_mul(wxh, wxl, fh, fl))
            evals += len(axis)
            return row.total()

        for (yh, yl), (wyh, wyl) in py:
            outer.add(*_dd_mul(wyh, wyl, *row_sum(yh, yl, nx)))
        both = px + nx
        for (yh, yl), (wyh, wyl) in ny:
            outer.add(*_dd_mul(wyh, wyl, *row_sum(yh, yl, both)))
        px = both
        py = py + ny
        sh, sl = _dd_add(sh, sl, *outer.total())
        vh, vl = _dd_mul(*_dd_mul(hx[0], hx[1], hy[0], hy[1]), sh, sl)
        if prev is not None:
            diff = abs(_dd_sub(vh, vl, *prev)[0])
            floor = 16.0 * Tier.DOUBLEWORD.eps * max(1.0, abs(vh))
            if diff <= eps or (diff <= floor and prev_diff <= floor):
                converged = True
                break
            prev_diff = diff
        prev = (vh, vl)
    if not math.isfinite(vh):
        _raise_nonfinite_2d(
            lambda p, q: f(p[0], p[1], q[0], q[1]),
            [(p, q) for q, _ in py for p, _ in px],
        )
    est = abs(vh) if diff is None else diff
    est = max(est, 4.0 * Tier.DOUBLEWORD.eps * abs(vh))
    return (vh, vl), est, evals, converged


# ----------------------------------------------------------------------
# Public entry points
# ----------------------------------------------------------------------


def _default_config(tier: Tier) -> EngineConfig:
    if tier is Tier.NATIVE64:
        return EngineConfig(TanhSinh(max_level=10, target_eps=1e-13), tier)
    return EngineConfig(TanhSinh(max_level=12, target_eps=1e-26), tier)


def _wrap_callable_1d(f, tier: Tier):
    if tier is Tier.NATIVE64:

        def g(x: float) -> float:
            r = f(Real._raw(x, 0.0, tier))
            return r.hi if isinstance(r, Real) else float(r)

        return g

    def g(xh: float, xl: float):
        r = f(Real._raw(xh, xl, tier))
        if isinstance(r, Real):
            return r.hi, r.lo
        return float(r), 0.0

    return g


def _wrap_callable_2d(f, tier: Tier):
    if tier is Tier.NATIVE64:

        def g(x: float, y: float) -> float:
            r = f(Real._raw(x, 0.0, tier), Real._raw(y, 0.0, tier))
            return r.hi if isinstance(r, Real) else float(r)

        return g

    def g(xh: float, xl: float, yh: float, yl: float):
        r = f(Real._raw(xh, xl, tier), Real._raw(yh, yl, tier))
        if isinstance(r, Real):
            return r.hi, r.lo
        return float(r), 0.0

    return g


def _resolve_1d(f, interval, config, a):
    tier = config.tier
    if isinstance(f, str):
        entry = get_integrand(f)
        if entry.dim != 1:
            raise ConfigError(f"{f} is {entry.dim}D; use integrate_2d")
        fn = raw_fn(f, tier, a)
        if interval is None:
            interval = domain_of(f, tier)[0]
    elif callable(f):
        if a is not None:
            raise ConfigError("parameter a applies only to registry integrands")
        if interval is None:
            raise ConfigError("an explicit interval is required for callables")
        fn = _wrap_callable_1d(f, tier)
    else:
        raise ConfigError("f must be an integrand id or a callable")
    if interval.tier is not tier:
        raise TierMismatchError("interval tier does not match the engine tier")
    return fn, interval


def integrate_1d(
    f,
    interval: Interval | None = None,
    config: EngineConfig | None = None,
    a: Real | None = None,
) -> QuadResult:
    """Integrate a registry integrand (by id) or a callable ``Real ->
    Real`` over an interval. A degenerate interval yields exactly zero
    after a single probing evaluation."""
    config = config if config is not None else _default_config(Tier.NATIVE64)
    fn, interval = _resolve_1d(f, interval, config, a)
    tier = config.tier
    if interval.degenerate:
        if tier is Tier.NATIVE64:
            v = fn(interval.lower.hi)
            if not math.isfinite(v):
                raise NonFiniteError(
                    "integrand is non-finite at the degenerate point",
                    point=(interval.lower.hi,),
                )
        else:
            vh, _ = fn(interval.lower.hi, interval.lower.lo)
            if not math.isfinite(vh):
                raise NonFiniteError(
                    "integrand is non-finite at the degenerate point",
                    point=(interval.lower.hi,),
                )
        zero = Real.from_float(0.0, tier)
        return QuadResult(zero, zero, 1, True)
    if tier is Tier.NATIVE64:
        v, est, evals, conv = _run_1d_native(
            fn, interval.lower.hi, interval.upper.hi, config.method
        )
        return QuadResult(
            Real._raw(v, 0.0, tier),
            Real.from_float(est, tier),
            evals,
            conv,
        )
    (vh, vl), est, evals, conv = _run_1d_dd(fn, interval, config.method)
    return QuadResult(
        Real._raw(vh, vl, tier), Real.from_float(est, tier), evals, conv
    )


def _iterated_2d(fn, region, config):
    tier = config.tier
    method = config.method
    if isinstance(method, TanhSinh):
        inner_method = TanhSinh(method.max_level, max(method.target_eps * 0.1, 10.0 * tier.eps))
    elif isinstance(method, AdaptiveSimpson):
        inner_method = AdaptiveSimpson(max(method.tol * 0.1, 10.0 * tier.eps), method.max_depth)
    else:
        inner_method = method
    ix, iy = region
    stats = {"evals": 0, "conv": True, "inner_est": 0.0}
    if tier is Tier.NATIVE64:
        ax, bx = ix.lower.hi, ix.upper.hi

        def g(y: float) -> float:
            v, est, ev, conv = _run_1d_native(
                lambda x: fn(x, y), ax, bx, inner_method
            )
            stats["evals"] += ev
            stats["conv"] = stats["conv"] and conv
            stats["inner_est"] = max(stats["inner_est"], est)
            return v

        v, outer_est, _, outer_conv = _run_1d_native(
            g, iy.lower.hi, iy.upper.hi, method
        )
        width = iy.upper.hi - iy.lower.hi
        est = outer_est + width * stats["inner_est"]
        est = max(est, 4.0 * tier.eps * abs(v))
        return (
            Real._raw(v, 0.0, tier),
            Real.from_float(est, tier),
            stats["evals"],
            outer_conv and stats["conv"],
        )

    def g(yh: float, yl: float):
        (vh, vl), est, ev, conv = _run_1d_dd(
            lambda xh, xl: fn(xh, xl, yh, yl), ix, inner_method
        )
        stats["evals"] += ev
        stats["conv"] = stats["conv"] and conv
        stats["inner_est"] = max(stats["inner_est"], est)
        return vh, vl

    (vh, vl), outer_est, _, outer_conv = _run_1d_dd(g, iy, method)
    width = _dd_sub(iy.upper.hi, iy.upper.lo, iy.lower.hi, iy.lower.lo)[0]
    est = outer_est + width * stats["inner_est"]
    est = max(est, 4.0 * tier.eps * abs(vh))
    return (
        Real._raw(vh, vl, tier),
        Real.from_float(est, tier),
        stats["evals"],
        outer_conv and stats["conv"],
    )


def integrate_2d(
    f,
    region: tuple[Interval, Interval] | None = None,
    config: EngineConfig | None = None,
    mode: Mode = Mode.TENSOR,
) -> QuadResult:
    """Integrate a 2D registry integrand (by id) or a callable
    ``(Real, Real) -> Real`` over a rectangle. TENSOR forms the product
    rule of a fixed 1D rule (Gauss-Legendre or tanh-sinh); ITERATED
    nests adaptive 1D passes with a tightened inner tolerance."""
    config = config if config is not None else _default_config(Tier.NATIVE64)
    tier = config.tier
    if not isinstance(mode, Mode):
        raise ConfigError("mode must be a Mode")
    if isinstance(f, str):
        entry = get_integrand(f)
        if entry.dim != 2:
            raise ConfigError(f"{f} is {entry.dim}D; use integrate_1d")
        fn = raw_fn(f, tier)
        if region is None:
            region = domain_of(f, tier)
    elif callable(f):
        if region is None:
            raise ConfigError("an explicit region is required for callables")
        fn = _wrap_callable_2d(f, tier)
    else:
        raise ConfigError("f must be an integrand id or a callable")
    ix, iy = region
    if ix.tier is not tier or iy.tier is not tier:
        raise TierMismatchError("region tier does not match the engine tier")
    if ix.degenerate or iy.degenerate:
        if tier is Tier.NATIVE64:
            v = fn(ix.lower.hi, iy.lower.hi)
            ok = math.isfinite(v)
        else:
            vh, _ = fn(ix.lower.hi, ix.lower.lo, iy.lower.hi, iy.lower.lo)
            ok = math.isfinite(vh)
        if not ok:
            raise NonFiniteError(
                "integrand is non-finite at the degenerate point",
                point=(ix.lower.hi, iy.lower.hi),
            )
        zero = Real.from_float(0.0, tier)
        return QuadResult(zero, zero, 1, True)
    if mode is Mode.ITERATED:
        value, est, evals, conv = _iterated_2d(fn, region, config)
        return QuadResult(value, est, evals, conv)
    method = config.method
    if isinstance(method, AdaptiveSimpson):
        raise ConfigError(
            "adaptive Simpson has no fixed product rule; use ITERATED mode"
        )
    if tier is Tier.NATIVE64:
        mx = 0.5 * (ix.lower.hi + ix.upper.hi)
        hx = 0.5 * (ix.upper.hi - ix.lower.hi)
        my = 0.5 * (iy.lower.hi + iy.upper.hi)
        hy = 0.5 * (iy.upper.hi - iy.lower.hi)
        if isinstance(method, GaussLegendre):
            v, est, evals, conv = _run_gl_2d_native(fn, mx, hx, my, hy, method.order)
        else:
            v, est, evals, conv = _run_ts_2d_native(fn, mx, hx, my, hy, method)
        return QuadResult(
            Real._raw(v, 0.0, tier), Real.from_float(est, tier), evals, conv
        )
    mx = _dd_scale2(*_dd_add(ix.lower.hi, ix.lower.lo, ix.upper.hi, ix.upper.lo), 0.5)
    hx = _dd_scale2(*_dd_sub(ix.upper.hi, ix.upper.lo, ix.lower.hi, ix.lower.lo), 0.5)
    my = _dd_scale2(*_dd_add(iy.lower.hi, iy.lower.lo, iy.upper.hi, iy.upper.lo), 0.5)
    hy = _dd_scale2(*_dd_sub(iy.upper.hi, iy.upper.lo, iy.lower.hi, iy.lower.lo), 0.5)
    if isinstance(method, GaussLegendre):
        (vh, vl), est, evals, conv = _run_gl_2d_dd(fn, mx, hx, my, hy, method.order)
    else:
        (vh, vl), est, evals, conv = _run_ts_2d_dd(fn, mx, hx, my, hy, method)
    return QuadResult(
        Real._raw(vh, vl, tier), Real.from_float(est, tier), evals, conv
    )


def _integrate_1d_ts_fixed(
    integrand_id: str, level: int, tier: Tier, target_eps: float
) -> QuadResult:
    """Run tanh-sinh through exactly ``level`` refinement levels with no
    early exit. Used by the benchmark sweeps so that evaluation counts
    grow strictly with the level."""
    if not isinstance(level, int) or not 1 <= level <= _MAX_TS_LEVEL:
        raise ConfigError(f"level must be an int in [1, {_MAX_TS_LEVEL}]")
    method = TanhSinh(max_level=_MAX_TS_LEVEL, target_eps=target_eps)
    fn = raw_fn(integrand_id, tier)
    interval = domain_of(integrand_id, tier)[0]
    if tier is Tier.NATIVE64:
        v, est, evals, conv = _run_1d_native(
            fn, interval.lower.hi, interval.upper.hi, method, fixed_level=level
        )
        return QuadResult(
            Real._raw(v, 0.0, tier), Real.from_float(est, tier), evals, conv
        )
    (vh, vl), est, evals, conv = _run_1d_dd(fn, interval, method, fixed_level=level)
    return QuadResult(
        Real._raw(vh, vl, tier), Real.from_float(est, tier), evals, conv
    )
