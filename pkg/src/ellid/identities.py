"""The identity catalog: every verified summation identity of the package.

Each identity is registered with independent LHS and RHS evaluators (the RHS
is never derived from the LHS), a parameter signature, the verification modes
it supports, and a domain predicate realizing pole rejection.  Identity
families:

  * plain q-identities evaluated over an abstract q-arithmetic provider, so
    one transcription serves both the numeric engine and the exact
    Laurent-polynomial oracle;
  * elliptic-context identities (sums of elliptic numbers and weights),
    evaluated over the specialization contexts of `elliptic`;
  * theta-factorial identities (indefinite summations with q-, q^{-1}- and
    multibasic shifted-factorial slots), evaluated directly over the scaled
    theta machinery;
  * rational identities (the hypergeometric degenerations), evaluated over
    plain complex numbers or Fractions.

Degeneration edges record how each identity specializes into the next one
down the chain (nome to zero, parameters to 0/1/q/infinity, index shifts),
including the normalizing prefactor the specialization picks up; the checker
evaluates the parent in its hand-derived limit form and the child directly,
and asserts both sides agree after normalization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from ._scaled import ONE, ZERO, ScaledComplex, cpow, sc
from .elliptic import (AQCtx, BQCtx, ClassicalCtx, EllipticParams,
                       FullEllipticCtx, QCtx, QInvCtx, make_context)
from .errors import (DegenerateDenominator, DivisionByZeroFactor, DomainRejected,
                     ModeUnsupported, PoleProximity, UnknownEdge, UnknownIdentity)
from .qexact import ExactQ, LaurentPoly, RationalFn
from .theta import DEFAULT_CONFIG, POLE_TOL, ThetaConfig, factorial_scaled, theta_scaled

MODE_NUMERIC = "numeric-elliptic"
MODE_EXACT_Q = "exact-q"
MODE_EXACT_RATIONAL = "exact-rational"


# ---------------------------------------------------------------------------
# numeric q-arithmetic provider (mirrors qexact.ExactQ)
# ---------------------------------------------------------------------------

class NumericQ:
    """q-numbers, q-powers and constants over ScaledComplex values."""

    exact = False

    def __init__(self, q: complex, pole_tol: float = POLE_TOL):
        self.q = complex(q)
        self.pole_tol = pole_tol
        den = ONE - sc(self.q)
        if abs(den) < pole_tol:
            raise DomainRejected("1 - q within pole tolerance of zero")
        self._den = den

    def qn(self, z) -> ScaledComplex:
        return (ONE - cpow(self.q, z)) / self._den

    def qn_den(self, z) -> ScaledComplex:
        num = ONE - cpow(self.q, z)
        if abs(num) < self.pole_tol:
            raise DomainRejected(f"1 - q^({z}) within pole tolerance of zero")
        return num / self._den

    def qpow(self, e) -> ScaledComplex:
        return cpow(self.q, e)

    def const(self, c) -> ScaledComplex:
        return sc(complex(c))

    def zero(self) -> ScaledComplex:
        return ZERO

    def one(self) -> ScaledComplex:
        return ONE


# ---------------------------------------------------------------------------
# plain q-identities (one transcription, numeric and exact)
# ---------------------------------------------------------------------------


# cancellation guard: a draw whose largest summand exceeds the final value by
# more than this factor cannot be verified to 1e-8 in double precision (the
# terms carry ~1e-14 relative error, so 1e5 of cancellation leaves ~1e-9),
# and the domain predicate rejects it; same policy as the 1e-6 pole
# tolerance, applied to cross-term cancellation
COND_LIMIT = 1e5
_COND_LOG2 = math.log2(COND_LIMIT)


class _Sum:
    """Sum accumulator tracking the largest term magnitude (numeric mode)."""

    __slots__ = ("total", "peak", "exact")

    def __init__(self):
        self.total = None
        self.peak = -math.inf
        self.exact = False

    def add(self, term):
        if isinstance(term, (RationalFn, Fraction, int)):
            self.exact = True
            self.total = term if self.total is None else self.total + term
            return
        t = term if isinstance(term, ScaledComplex) else sc(complex(term))
        lg = t.log2_abs()
        if lg > self.peak:
            self.peak = lg
        self.total = t if self.total is None else self.total + t

    def __add__(self, term):
        self.add(term)
        return self

    def value(self, zero):
        if self.total is None:
            return zero
        if not self.exact and self.peak - max(self.total.log2_abs(), 0.0) > _COND_LOG2:
            raise DomainRejected(
                "cross-term cancellation exceeds the verification headroom")
        return self.total


def _guard_diff(t1, t2):
    """t1 - t2 with the same cancellation guard for two-term sides."""
    s = _Sum()
    s.add(t1)
    s.add(-t2)
    return s.value(ZERO)


def _geo_lhs(P, prm, n):
    tot = _Sum()
    for k in range(n):
        tot = tot + P.qpow(k)
    return tot.value(P.zero())


def _geo_rhs(P, prm, n):
    return P.qn(n)


def _qodds_lhs(P, prm, n):
    tot = _Sum()
    for k in range(n):
        tot = tot + P.qn(2 * k + 1) * P.qpow(-k)
    return tot.value(P.zero())


def _qodds_rhs(P, prm, n):
    return P.qn(n) * P.qn(n) * P.qpow(1 - n)


def _sp1_lhs(P, prm, n):
    two = P.qn(2)
    tot = _Sum()
    for k in range(n + 1):
        tot = tot + P.qpow(k - 1) * (two * P.qn(k + 1) - P.one())
    return tot.value(P.zero())


def _sp1_rhs(P, prm, n):
    r = P.qn(n + 1)
    return r * r


def _sp2_lhs(P, prm, n):
    two = P.qn(2)
    tot = _Sum()
    for k in range(n + 1):
        tot = tot + P.qpow(2 * n - 2 * k) * (two * P.qn(k + 1) - P.qpow(k + 1))
    return tot.value(P.zero())


def _sp2_rhs(P, prm, n):
    r = P.qn(n + 1)
    return r * r


def _telc_a1_lhs(P, prm, n):
    two = P.qn(2)
    tot = _Sum()
    for k in range(n + 1):
        kk = P.qn(k + 1)
        tot = tot + P.qpow(2 * n - 2 * k) * (
            two * kk * kk * P.qn(2 * k + 2) - P.qpow(k + 1) * P.qn(2 * k + 1))
    return tot.value(P.zero())


def _telc_a1_rhs(P, prm, n):
    r = P.qn(n + 1)
    return r * r * r * P.qn(n + 3)


def _telc_b1_lhs(P, prm, n):
    two = P.qn(2)
    tot = _Sum()
    for k in range(n + 1):
        tot = tot + (P.qpow(k - 1) / (P.qn_den(k + 1) * P.qn_den(k + 2))) * (
            P.qn(k + 1) * two * two / P.qn_den(k + 3) - P.one())
    return tot.value(P.zero())


def _telc_b1_rhs(P, prm, n):
    r = P.qn(n + 1)
    return r * r / (P.qn_den(n + 2) * P.qn_den(n + 3))


def _telc_aq_lhs(P, prm, n):
    tot = _Sum()
    for k in range(n + 1):
        tot = tot + P.qpow(2 * n - 2 * k) * (
            P.qn(k + 1) * P.qn(k + 2) * P.qn(2 * k + 3)
            - P.qpow(k + 1) * P.qn(2 * k + 2))
    return tot.value(P.zero())


def _telc_aq_rhs(P, prm, n):
    r = P.qn(n + 1)
    return r * r * P.qn(n + 2) * P.qn(n + 4) / P.qn_den(2)


def _telc_bq_lhs(P, prm, n):
    f23 = P.qn(2) * P.qn(3)
    tot = _Sum()
    for k in range(n + 1):
        tot = tot + (P.qpow(k - 1) / (P.qn_den(k + 2) * P.qn_den(k + 3))) * (
            P.qn(k + 1) * f23 / P.qn_den(k + 4) - P.one())
    return tot.value(P.zero())


def _telc_bq_rhs(P, prm, n):
    r = P.qn(n + 1)
    return r * r / (P.qn_den(n + 3) * P.qn_den(n + 4))


def _triangular_lhs(P, prm, n):
    tot = _Sum()
    for k in range(1, n + 1):
        tot = tot + P.qpow(k - 1) * P.qn(k)
    return tot.value(P.zero())


def _triangular_rhs(P, prm, n):
    return P.qn(n) * P.qn(n + 1) / P.qn_den(2)


def _warnaar_triangular_lhs(P, prm, n):
    tot = _Sum()
    for k in range(1, n + 1):
        tot = tot + P.qpow(2 * n - 2 * k) * P.qn(k)
    return tot.value(P.zero())


def _warnaar_cubes_lhs(P, prm, n):
    den2 = P.qn_den(2)
    tot = _Sum()
    for k in range(1, n + 1):
        kk = P.qn(k)
        tot = tot + P.qpow(2 * n - 2 * k) * kk * kk * P.qn(2 * k) / den2
    return tot.value(P.zero())


def _warnaar_cubes_rhs(P, prm, n):
    r = P.qn(n) * P.qn(n + 1) / P.qn_den(2)
    return r * r


def _even_b1_lhs(P, prm, n):
    two = P.qn(2)
    tot = _Sum()
    for k in range(1, n + 1):
        tot = tot + P.qpow(k - 1) * two / (P.qn_den(k + 1) * P.qn_den(k + 2))
    return tot.value(P.zero())


def _even_b1_rhs(P, prm, n):
    return P.qn(n) / P.qn_den(n + 2)


def _even_aqq_lhs(P, prm, n):
    tot = _Sum()
    for k in range(1, n + 1):
        tot = tot + P.qpow(2 * n - 2 * k) * P.qn(k) * P.qn(k + 1) * P.qn(2 * k + 1)
    return tot.value(P.zero())


def _even_aqq_rhs(P, prm, n):
    r = P.qn(n + 1)
    return P.qn(n) * r * r * P.qn(n + 2) / P.qn_den(2)


def _even_bqq_lhs(P, prm, n):
    two = P.qn(2)
    tot = _Sum()
    for k in range(1, n + 1):
        tot = tot + P.qpow(k - 1) * two * two * P.qn(k) / (
            P.qn_den(k + 1) * P.qn_den(k + 2) * P.qn_den(k + 3))
    return tot.value(P.zero())


def _even_bqq_rhs(P, prm, n):
    return P.qn(n) * P.qn(n + 1) / (P.qn_den(n + 2) * P.qn_den(n + 3))


def _m3r_a0_lhs(P, prm, n):
    tot = _Sum()
    for k in range(1, n + 1):
        tot = tot + P.qpow(3 * n - 3 * k) * P.qn(k) * P.qn(k + 1)
    return tot.value(P.zero())


def _m3r_a0_rhs(P, prm, n):
    return P.qn(n) * P.qn(n + 1) * P.qn(n + 2) / P.qn_den(3)


def _m3r_a1_lhs(P, prm, n):
    tot = _Sum()
    for k in range(1, n + 1):
        t = P.qn(k) * P.qn(k + 1)
        tot = tot + P.qpow(3 * n - 3 * k) * t * t * P.qn(2 * k + 1)
    return tot.value(P.zero())


def _m3r_a1_rhs(P, prm, n):
    t = P.qn(n) * P.qn(n + 1) * P.qn(n + 2)
    return t * t / P.qn_den(3)


def _m3r_aq_lhs(P, prm, n):
    tot = _Sum()
    for k in range(1, n + 1):
        k1 = P.qn(k + 1)
        tot = tot + P.qpow(3 * n - 3 * k) * P.qn(k) * k1 * k1 * P.qn(k + 2) * P.qn(2 * k + 2)
    return tot.value(P.zero())


def _m3r_aq_rhs(P, prm, n):
    n1 = P.qn(n + 1)
    n2 = P.qn(n + 2)
    return P.qn(n) * n1 * n1 * n2 * n2 * P.qn(n + 3) / P.qn_den(3)


def _m3r_q2aq_lhs(P, prm, n):
    tot = _Sum()
    for k in range(1, n + 1):
        tot = tot + (P.qpow(6 * n - 6 * k) * P.qn(2 * k) * P.qn(2 * k + 1)
                     * P.qn(2 * k + 2) * P.qn(2 * k + 3) * P.qn(4 * k + 3))
    return tot.value(P.zero())


def _m3r_q2aq_rhs(P, prm, n):
    return (P.qn(2 * n) * P.qn(2 * n + 1) * P.qn(2 * n + 2) * P.qn(2 * n + 3)
            * P.qn(2 * n + 4) * P.qn(2 * n + 5) / P.qn_den(6))


def _m3r_q2a1q_lhs(P, prm, n):
    tot = _Sum()
    for k in range(1, n + 1):
        tot = tot + (P.qpow(6 * n - 6 * k) * P.qn(2 * k - 1) * P.qn(2 * k)
                     * P.qn(2 * k + 1) * P.qn(2 * k + 2) * P.qn(4 * k + 1))
    return tot.value(P.zero())


def _m3r_q2a1q_rhs(P, prm, n):
    # the matching sixth factor is [2n+4]; direct expansion of the base-q^2
    # specialization confirms it (the sum collapses termwise at q = 1)
    return (P.qn(2 * n - 1) * P.qn(2 * n) * P.qn(2 * n + 1) * P.qn(2 * n + 2)
            * P.qn(2 * n + 3) * P.qn(2 * n + 4) / P.qn_den(6))


def _spc4i_lhs(P, prm, n):
    den2 = P.qn_den(2)
    tot = _Sum()
    for k in range(1, n + 1):
        tot = tot + P.qpow(n - k) * P.qn(2 * k) / den2
    return tot.value(P.zero())


def _spc4i_rhs(P, prm, n):
    return P.qn(n) * P.qn(n + 1) / P.qn_den(2)


def _spc4ii_lhs(P, prm, n):
    den2 = P.qn_den(2)
    tot = _Sum()
    for k in range(1, n + 1):
        tot = tot + (P.qpow(n * n - k * k + n - k)
                     * P.qn(2 * k * k) * P.qn(2 * k) / (den2 * den2))
    return tot.value(P.zero())


def _spc4ii_rhs(P, prm, n):
    r = P.qn(n * (n + 1)) / P.qn_den(2)
    return r * r


def _spc2_den(P, prm):
    c, d, g, h = prm["c"], prm["d"], prm["g"], prm["h"]
    return P.qn_den(2 * c * d) * P.qn_den(c * h + d * g)


def _spc2_lhs(P, prm, n):
    c, d, g, h = prm["c"], prm["d"], prm["g"], prm["h"]
    den = _spc2_den(P, prm)
    tot = _Sum()
    for k in range(n + 1):
        e = g * h * k * k + (c * h + d * g + g * h) * k
        tot = tot + (P.qn(2 * (g * k + c) * (h * k + d))
                     * P.qn(2 * g * h * k + c * h + d * g) / den) * P.qpow(-e)
    return tot.value(P.zero())


def _spc2_rhs(P, prm, n):
    c, d, g, h = prm["c"], prm["d"], prm["g"], prm["h"]
    den = _spc2_den(P, prm)
    e = g * h * n * n + (c * h + d * g + g * h) * n
    first = (P.qn((g * n + c) * (h * n + h + d)) * P.qn((g * n + g + c) * (h * n + d))
             / den) * P.qpow(-e)
    second = (P.qn(c * (d - h)) * P.qn((c - g) * d) / den) * P.qpow(c * h + d * g)
    if isinstance(first, RationalFn):
        return first - second
    return _guard_diff(first, second)


# ---------------------------------------------------------------------------
# elliptic-context identities
# ---------------------------------------------------------------------------

def _ctx_den(x: ScaledComplex, ctx) -> ScaledComplex:
    """Guard a context value that the identity divides by."""
    if abs(x) < ctx.pole_tol:
        raise DomainRejected("identity denominator within pole tolerance of zero")
    return x


def _basicg_lhs(ctx, prm, n):
    tot = _Sum()
    for k in range(n):
        tot = tot + ctx.wt(k)
    return tot.value(ZERO)


def _basicg_rhs(ctx, prm, n):
    return ctx.num(n)


def _telc_lhs(ctx, prm, n):
    tot = _Sum()
    for k in range(n + 1):
        tot = tot + ctx.wt(k) * (ctx.num(k + 1) * ctx.num(2, s=k) - 1)
    return tot.value(ZERO)


def _telc_rhs(ctx, prm, n):
    return ctx.wt(1) * ctx.num(n + 1) * ctx.num(n + 1, s=1)


def _tela_lhs(ctx, prm, n):
    m = prm["m"]
    tot = _Sum()
    for k in range(n + 1):
        term = ctx.wt(k) * ctx.num(m + 1, s=k)
        for i in range(1, m + 1):
            term = term * ctx.num(k + i)
        tot = tot + term
    return tot.value(ZERO)


def _tela_rhs(ctx, prm, n):
    m = prm["m"]
    out = ONE
    for i in range(1, m + 2):
        out = out * ctx.num(n + i)
    return out


def _sumeven_lhs(ctx, prm, n):
    tot = _Sum()
    for k in range(1, n + 1):
        tot = tot + ctx.wt(k - 1) * ctx.num(2, s=k - 1) * ctx.num(k)
    return tot.value(ZERO)


def _sumeven_rhs(ctx, prm, n):
    return ctx.num(n) * ctx.num(n + 1)


def _m3rising_lhs(ctx, prm, n):
    tot = _Sum()
    for k in range(1, n + 1):
        tot = tot + (ctx.wt(k - 1) * ctx.num(3, s=k - 1)
                     * ctx.num(k) * ctx.num(k + 1))
    return tot.value(ZERO)


def _m3rising_rhs(ctx, prm, n):
    return ctx.num(n) * ctx.num(n + 1) * ctx.num(n + 2)


def _telb_lhs(ctx, prm, n):
    m = prm["m"]
    tot = _Sum()
    for k in range(1, n + 1):
        den = ONE
        for i in range(0, m + 1):
            den = den * _ctx_den(ctx.num(k + i), ctx)
        tot = tot + ctx.wt(k) * ctx.num(m, s=k) / den
    return tot.value(ZERO)


def _telb_rhs(ctx, prm, n):
    m = prm["m"]
    fact = ONE
    for j in range(1, m + 1):
        fact = fact * _ctx_den(ctx.num(j), ctx)
    tail = ONE
    for i in range(1, m + 1):
        tail = tail * _ctx_den(ctx.num(n + i), ctx)
    return _guard_diff(ONE / fact, ONE / tail)


def _bigid_lhs(ctx, prm, n):
    c, d, g, h = prm["c"], prm["d"], prm["g"], prm["h"]
    den = _ctx_den(ctx.num(2 * c * d) * ctx.num(c * h + d * g, s=(c - g) * d), ctx)
    ratio = ONE
    winv = ONE
    tot = _Sum()
    for k in range(n + 1):
        if k:
            j = k - 1
            zj = (g * j + g + c) * (h * j + d)
            ratio = (ratio * ctx.num(zj, s=(g * j - g + c) * (h * j + d))
                     / _ctx_den(ctx.num(zj, s=(g * j + g + c) * (h * j + 2 * h + d)), ctx))
            winv = winv / _ctx_den(
                ctx.wt(2 * g * h * j + 2 * g * h + c * h + d * g,
                       s=(g * j + c) * (h * j + h + d)), ctx)
        t = (ctx.num(2 * (g * k + c) * (h * k + d))
             * ctx.num(2 * g * h * k + c * h + d * g, s=(g * k - g + c) * (h * k + d)))
        tot = tot + (t / den) * ratio * winv
    return tot.value(ZERO)


def _bigid_rhs(ctx, prm, n):
    c, d, g, h = prm["c"], prm["d"], prm["g"], prm["h"]
    den = _ctx_den(ctx.num(2 * c * d) * ctx.num(c * h + d * g, s=(c - g) * d), ctx)
    first = (ctx.num((g * n + c) * (h * n + h + d))
             * ctx.num((g + c) * d, s=(c - g) * d)) / den
    for j in range(1, n + 1):
        first = (first
                 * ctx.num((g * j + g + c) * (h * j + d), s=(g * j - g + c) * (h * j + d))
                 / _ctx_den(ctx.num((g * j + c) * (h * j - h + d),
                                    s=(g * j + c) * (h * j + h + d)), ctx)
                 / _ctx_den(ctx.wt(2 * g * h * j + c * h + d * g,
                                   s=(g * j - g + c) * (h * j + d)), ctx))
    second = (ctx.num((c - g) * d) * ctx.num(c * (d - h), s=c * (h + d))
              * ctx.wt(c * h + d * g, s=(c - g) * d)) / den
    return _guard_diff(first, second)


# ---------------------------------------------------------------------------
# theta-factorial identities (indefinite summations over running slots)
# ---------------------------------------------------------------------------

class _RawEnv:
    """Evaluation environment for the factorial-slot identities."""

    __slots__ = ("cfg", "pole_tol")

    def __init__(self, cfg: ThetaConfig, pole_tol: float):
        self.cfg = cfg
        self.pole_tol = pole_tol


class _Slot:
    """Running shifted factorial (x; base, p)_k, advanced one index at a time."""

    __slots__ = ("arg", "base", "p", "cfg", "val", "guard", "tol")

    def __init__(self, env: _RawEnv, x, base, p, guard: bool = False):
        self.arg = sc(x)
        self.base = base
        self.p = complex(p)
        self.cfg = env.cfg
        self.val = ONE
        self.guard = guard
        self.tol = env.pole_tol

    def step(self):
        v, mf = theta_scaled(self.arg, self.p, self.cfg)
        if self.guard and mf < self.tol:
            raise PoleProximity("denominator factorial factor within pole tolerance")
        self.val = self.val * v
        self.arg = self.arg * self.base


def _fact(env: _RawEnv, x, base, p, k: int, guard: bool = False) -> ScaledComplex:
    val, mf = factorial_scaled(x, base, p, k, env.cfg,
                               env.pole_tol if guard else None)
    if guard and mf < env.pole_tol:
        raise PoleProximity("denominator factorial factor within pole tolerance")
    return val


def _theta_den(env: _RawEnv, x, p) -> ScaledComplex:
    val, mf = theta_scaled(x, p, env.cfg)
    if mf < env.pole_tol:
        raise PoleProximity("denominator theta within pole tolerance of zero")
    return val


def _indef1_lhs(env, prm, n):
    a, b, q = prm["a"], prm["b"], prm["q"]
    one_minus_a = ONE - sc(a)
    if abs(one_minus_a) < env.pole_tol:
        raise DomainRejected("1 - a within pole tolerance")
    num1 = _Slot(env, a, q, 0)
    num2 = _Slot(env, b, q, 0)
    den1 = _Slot(env, q, q, 0, guard=True)
    den2 = _Slot(env, a * q / b, q, 0, guard=True)
    arg2k = sc(a)
    tot = _Sum()
    for k in range(n + 1):
        pref = (ONE - arg2k) / one_minus_a
        tot = tot + (pref * num1.val * num2.val / (den1.val * den2.val)
                     * cpow(b, n - k))
        num1.step(); num2.step(); den1.step(); den2.step()
        arg2k = arg2k * q * q
    return tot.value(ZERO)


def _indef1_rhs(env, prm, n):
    a, b, q = prm["a"], prm["b"], prm["q"]
    return (_fact(env, a * q, q, 0, n) * _fact(env, b * q, q, 0, n)
            / _fact(env, q, q, 0, n, guard=True)
            / _fact(env, a * q / b, q, 0, n, guard=True))


def _eindef1_lhs(env, prm, n):
    a, b, c, q, p = prm["a"], prm["b"], prm["c"], prm["q"], prm["p"]
    p2 = p * p
    qi = 1.0 / q
    den0 = _theta_den(env, a, p2)
    num1 = _Slot(env, a, q, p2)
    num2 = _Slot(env, b, q, p2)
    num3 = _Slot(env, c * p, q, p2)
    num4 = _Slot(env, b * c * p / a, qi, p2)
    den1 = _Slot(env, q, q, p2, guard=True)
    den2 = _Slot(env, a * q / b, q, p2, guard=True)
    den3 = _Slot(env, b * c * p * q, q, p2, guard=True)
    den4 = _Slot(env, c * p / (a * q), qi, p2, guard=True)
    arg2k = sc(a)
    tot = _Sum()
    for k in range(n + 1):
        top, _ = theta_scaled(arg2k, p2, env.cfg)
        tot = tot + (top / den0
                     * num1.val * num2.val * num3.val * num4.val
                     / (den1.val * den2.val * den3.val * den4.val)
                     * cpow(b, n - k))
        for s in (num1, num2, num3, num4, den1, den2, den3, den4):
            s.step()
        arg2k = arg2k * q * q
    return tot.value(ZERO)


def _eindef1_rhs(env, prm, n):
    a, b, c, q, p = prm["a"], prm["b"], prm["c"], prm["q"], prm["p"]
    p2 = p * p
    qi = 1.0 / q
    return (_fact(env, a * q, q, p2, n) * _fact(env, b * q, q, p2, n)
            * _fact(env, c * p * q, q, p2, n)
            / _fact(env, q, q, p2, n, guard=True)
            / _fact(env, a * q / b, q, p2, n, guard=True)
            / _fact(env, b * c * p * q, q, p2, n, guard=True)
            * _fact(env, b * c * p / (a * q), qi, p2, n)
            / _fact(env, c * p / (a * q), qi, p2, n, guard=True))


def _ftindef_lhs(env, prm, n):
    a, b, c, q, p = prm["a"], prm["b"], prm["c"], prm["q"], prm["p"]
    den0 = _theta_den(env, a, p)
    num1 = _Slot(env, a, q, p)
    num2 = _Slot(env, b, q, p)
    num3 = _Slot(env, c, q, p)
    num4 = _Slot(env, a / (b * c), q, p)
    den1 = _Slot(env, q, q, p, guard=True)
    den2 = _Slot(env, a * q / b, q, p, guard=True)
    den3 = _Slot(env, a * q / c, q, p, guard=True)
    den4 = _Slot(env, b * c * q, q, p, guard=True)
    arg2k = sc(a)
    tot = _Sum()
    for k in range(n + 1):
        top, _ = theta_scaled(arg2k, p, env.cfg)
        tot = tot + (top / den0
                     * num1.val * num2.val * num3.val * num4.val
                     / (den1.val * den2.val * den3.val * den4.val)
                     * cpow(q, k))
        for s in (num1, num2, num3, num4, den1, den2, den3, den4):
            s.step()
        arg2k = arg2k * q * q
    return tot.value(ZERO)


def _ftindef_rhs(env, prm, n):
    a, b, c, q, p = prm["a"], prm["b"], prm["c"], prm["q"], prm["p"]
    return (_fact(env, a * q, q, p, n) * _fact(env, b * q, q, p, n)
            * _fact(env, c * q, q, p, n) * _fact(env, a * q / (b * c), q, p, n)
            / _fact(env, q, q, p, n, guard=True)
            / _fact(env, a * q / b, q, p, n, guard=True)
            / _fact(env, a * q / c, q, p, n, guard=True)
            / _fact(env, b * c * q, q, p, n, guard=True))


def _wce_lhs(env, prm, n):
    c, q, p = prm["c"], prm["q"], prm["p"]
    p2 = p * p
    qi = 1.0 / q
    q2 = q * q
    q3 = q2 * q
    den0 = _theta_den(env, q2, p2)
    numq2 = _Slot(env, q2, q, p2)          # (q^2; q, p^2)_{k-1}, squared below
    numcp = _Slot(env, c * p, q, p2)
    numi = _Slot(env, c * p, qi, p2)
    denq = _Slot(env, q, q, p2, guard=True)  # (q; q, p^2)_{k-1}, squared below
    dencp = _Slot(env, c * p * q3, q, p2, guard=True)
    deni = _Slot(env, c * p / q3, qi, p2, guard=True)
    arg2k = sc(q2)
    tot = _Sum()
    for k in range(1, n + 1):
        top, _ = theta_scaled(arg2k, p2, env.cfg)
        tot = tot + (top / den0
                     * numq2.val * numq2.val * numcp.val * numi.val
                     / (denq.val * denq.val * dencp.val * deni.val)
                     * cpow(q, 2 * (n - k)))
        for s in (numq2, numcp, numi, denq, dencp, deni):
            s.step()
        arg2k = arg2k * q2
    return tot.value(ZERO)


def _wce_rhs(env, prm, n):
    c, q, p = prm["c"], prm["q"], prm["p"]
    p2 = p * p
    qi = 1.0 / q
    q3 = q * q * q
    f_q3 = _fact(env, q3, q, p2, n - 1)
    f_q = _fact(env, q, q, p2, n - 1, guard=True)
    return (f_q3 * f_q3 * _fact(env, c * p * q, q, p2, n - 1)
            / (f_q * f_q) / _fact(env, c * p * q3, q, p2, n - 1, guard=True)
            * _fact(env, c * p / q, qi, p2, n - 1)
            / _fact(env, c * p / q3, qi, p2, n - 1, guard=True))


def _cubicodds_lhs(env, prm, n):
    a, q = prm["a"], prm["q"]
    q3 = q * q * q
    one_minus_q = ONE - sc(q)
    one_minus_aq = ONE - sc(a * q)
    if abs(one_minus_q) < env.pole_tol or abs(one_minus_aq) < env.pole_tol:
        raise DomainRejected("1 - q or 1 - aq within pole tolerance")
    num3 = _Slot(env, a * q, q3, 0)
    den3 = _Slot(env, a * q**5, q3, 0, guard=True)
    argq = sc(q)        # q^{2k+1}
    arga = sc(a * q)    # a q^{2k+1}
    tot = _Sum()
    for k in range(n):
        f = ONE - arga
        tot = tot + (cpow(q, -k) * num3.val / den3.val
                     * (ONE - argq) / one_minus_q
                     * f * f / (one_minus_aq * one_minus_aq))
        num3.step(); den3.step()
        argq = argq * q * q
        arga = arga * q * q
    return tot.value(ZERO)


def _cubicodds_rhs(env, prm, n):
    a, q = prm["a"], prm["q"]
    q3 = q * q * q
    one_minus_q = ONE - sc(q)
    one_minus_aq = ONE - sc(a * q)
    if abs(one_minus_q) < env.pole_tol or abs(one_minus_aq) < env.pole_tol:
        raise DomainRejected("1 - q or 1 - aq within pole tolerance")
    qn_ = (ONE - cpow(q, n)) / one_minus_q
    return (qn_ * qn_ * (ONE - sc(a) * cpow(q, n)) / one_minus_aq
            * _fact(env, a * q**4, q3, 0, n - 1)
            / _fact(env, a * q**5, q3, 0, n - 1, guard=True)
            * cpow(q, 1 - n))


def _m00_lhs(env, prm, n):
    a, b, c, d = prm["a"], prm["b"], prm["c"], prm["d"]
    q, r, s, p = prm["q"], prm["r"], prm["s"], prm["p"]
    w = r * s / q
    if abs(sc(d)) < env.pole_tol:
        raise DomainRejected("d within pole tolerance of zero")
    den0 = (_theta_den(env, a * d, p) * _theta_den(env, b / d, p)
            * _theta_den(env, c / d, p))
    num1 = _Slot(env, a * d * d / (b * c), q, p)
    num2 = _Slot(env, b, r, p)
    num3 = _Slot(env, c, s, p)
    num4 = _Slot(env, a, w, p)
    den1 = _Slot(env, d * q, q, p, guard=True)
    den2 = _Slot(env, a * d * r / c, r, p, guard=True)
    den3 = _Slot(env, a * d * s / b, s, p, guard=True)
    den4 = _Slot(env, b * c * r * s / (d * q), w, p, guard=True)
    x1, x2, x3 = sc(a * d), sc(b / d), sc(c / d)
    m1, m2, m3 = r * s, r / q, s / q
    tot = _Sum()
    for k in range(n + 1):
        t1, _ = theta_scaled(x1, p, env.cfg)
        t2, _ = theta_scaled(x2, p, env.cfg)
        t3, _ = theta_scaled(x3, p, env.cfg)
        tot = tot + (t1 * t2 * t3 / den0
                     * num1.val * num2.val * num3.val * num4.val
                     / (den1.val * den2.val * den3.val * den4.val)
                     * cpow(q, k))
        for sl in (num1, num2, num3, num4, den1, den2, den3, den4):
            sl.step()
        x1 = x1 * m1
        x2 = x2 * m2
        x3 = x3 * m3
    return tot.value(ZERO)


def _m00_rhs(env, prm, n):
    a, b, c, d = prm["a"], prm["b"], prm["c"], prm["d"]
    q, r, s, p = prm["q"], prm["r"], prm["s"], prm["p"]
    w = r * s / q
    if abs(sc(d)) < env.pole_tol:
        raise DomainRejected("d within pole tolerance of zero")
    denc = (_theta_den(env, a * d, p) * _theta_den(env, b / d, p)
            * _theta_den(env, c / d, p) * _theta_den(env, a * d / (b * c), p)) * d
    t_a, _ = theta_scaled(a, p, env.cfg)
    t_b, _ = theta_scaled(b, p, env.cfg)
    t_c, _ = theta_scaled(c, p, env.cfg)
    t_bal, _ = theta_scaled(a * d * d / (b * c), p, env.cfg)
    first = (t_a * t_b * t_c * t_bal / denc
             * _fact(env, a * d * d * q / (b * c), q, p, n)
             * _fact(env, b * r, r, p, n) * _fact(env, c * s, s, p, n)
             * _fact(env, a * w, w, p, n)
             / _fact(env, d * q, q, p, n, guard=True)
             / _fact(env, a * d * r / c, r, p, n, guard=True)
             / _fact(env, a * d * s / b, s, p, n, guard=True)
             / _fact(env, b * c * r * s / (d * q), w, p, n, guard=True))
    t_d, _ = theta_scaled(d, p, env.cfg)
    t_adb, _ = theta_scaled(a * d / b, p, env.cfg)
    t_adc, _ = theta_scaled(a * d / c, p, env.cfg)
    t_bcd, _ = theta_scaled(b * c / d, p, env.cfg)
    second = t_d * t_adb * t_adc * t_bcd / denc
    return _guard_diff(first, second)


# ---------------------------------------------------------------------------
# rational identities (hypergeometric degenerations)
# ---------------------------------------------------------------------------

def _hyper_den_guard(x, exact: bool, pole_tol: float):
    if exact:
        if x == 0:
            raise DomainRejected("vanishing denominator in hypergeometric form")
    elif abs(complex(x)) < pole_tol:
        raise DomainRejected("denominator within pole tolerance of zero")
    return x


def _hyper_lhs(env, prm, n):
    c, d, g, h = prm["c"], prm["d"], prm["g"], prm["h"]
    exact = isinstance(c, Fraction)
    den = _hyper_den_guard(c * d * (c * h + d * g), exact,
                           env.pole_tol if env else POLE_TOL)
    tot = _Sum()
    for k in range(n + 1):
        tot = tot + (g * k + c) * (h * k + d) * (2 * g * h * k + c * h + d * g)
    return tot.value(0) / den


def _hyper_rhs(env, prm, n):
    c, d, g, h = prm["c"], prm["d"], prm["g"], prm["h"]
    exact = isinstance(c, Fraction)
    pol = env.pole_tol if env else POLE_TOL
    den1 = _hyper_den_guard(2 * c * d * (c * h + d * g), exact, pol)
    den2 = _hyper_den_guard(2 * (c * h + d * g), exact, pol)
    first = (g * n + c) * (h * n + h + d) * (g * n + g + c) * (h * n + d) / den1
    second = (d - h) * (c - g) / den2
    if exact:
        return first - second
    return _guard_diff(first, second)


def _sumcubes_lhs(env, prm, n):
    return sum(k**3 for k in range(n + 1))


def _sumcubes_rhs(env, prm, n):
    return (n * (n + 1) // 2) ** 2


# ---------------------------------------------------------------------------
# descriptors and catalog
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IdentityDescriptor:
    """A registry entry: parameter signature, modes, independent evaluators."""

    id: str
    title: str
    source: str
    family: str                       # "q" | "ctx" | "raw" | "rational"
    param_signature: tuple            # ((name, kind), ...) kinds: complex / integer / non-negative-integer
    modes: frozenset
    lhs: Callable
    rhs: Callable
    ctx_tag: Optional[str] = None     # specialization tag for family "ctx"
    min_n: int = 0
    exact_domain: Optional[Callable] = None   # admissibility of integer parameters

    def supports(self, mode: str) -> bool:
        return mode in self.modes


_CPX = "complex"
_NNI = "non-negative-integer"

_NUM = frozenset({MODE_NUMERIC})
_NUM_EXQ = frozenset({MODE_NUMERIC, MODE_EXACT_Q})
_NUM_EXR = frozenset({MODE_NUMERIC, MODE_EXACT_RATIONAL})

_SIG_Q = (("q", _CPX),)
_SIG_FULL = (("a", _CPX), ("b", _CPX), ("q", _CPX), ("p", _CPX))
_SIG_ABQ = (("a", _CPX), ("b", _CPX), ("q", _CPX))
_SIG_AQ = (("a", _CPX), ("q", _CPX))
_SIG_BQ = (("b", _CPX), ("q", _CPX))
_SIG_CDGH = (("c", _CPX), ("d", _CPX), ("g", _CPX), ("h", _CPX))


def _spc2_exact_domain(prm) -> bool:
    c, d, g, h = prm["c"], prm["d"], prm["g"], prm["h"]
    return c * d != 0 and c * h + d * g != 0


def _hyper_exact_domain(prm) -> bool:
    c, d, g, h = prm["c"], prm["d"], prm["g"], prm["h"]
    return c * d != 0 and c * h + d * g != 0


def _build_catalog() -> dict:
    ids = []

    def add(id, title, source, family, sig, modes, lhs, rhs, **kw):
        ids.append(IdentityDescriptor(id, title, source, family, tuple(sig),
                                      modes, lhs, rhs, **kw))

    # --- plain q-identities ------------------------------------------------
    add("geo", "geometric sum = [n]_q", "q-number definition",
        "q", _SIG_Q, _NUM_EXQ, _geo_lhs, _geo_rhs)
    add("qodds", "sum of first n odd numbers, q-analogue", "Schlosser (2004), Eq. (3.9)",
        "q", _SIG_Q, _NUM_EXQ, _qodds_lhs, _qodds_rhs)
    add("sp1", "odd-sum q-analogue from a -> infinity", "odd-number telescoping, first q-case",
        "q", _SIG_Q, _NUM_EXQ, _sp1_lhs, _sp1_rhs)
    add("sp2", "odd-sum q-analogue from a -> 0", "odd-number telescoping, second q-case",
        "q", _SIG_Q, _NUM_EXQ, _sp2_lhs, _sp2_rhs)
    add("tel-c-a1", "odd-sum specialization at a = 1", "odd-number telescoping, a = 1",
        "q", _SIG_Q, _NUM_EXQ, _telc_a1_lhs, _telc_a1_rhs)
    add("tel-c-b1", "odd-sum specialization at b = 1", "odd-number telescoping, b = 1",
        "q", _SIG_Q, _NUM_EXQ, _telc_b1_lhs, _telc_b1_rhs)
    add("tel-c-aq", "odd-sum specialization at a = q", "odd-number telescoping, a = q",
        "q", _SIG_Q, _NUM_EXQ, _telc_aq_lhs, _telc_aq_rhs)
    add("tel-c-bq", "odd-sum specialization at b = q", "odd-number telescoping, b = q",
        "q", _SIG_Q, _NUM_EXQ, _telc_bq_lhs, _telc_bq_rhs)
    add("triangular", "triangular-number q-analogue", "even-sum limit a -> infinity",
        "q", _SIG_Q, _NUM_EXQ, _triangular_lhs, _triangular_rhs)
    add("warnaar-triangular", "Warnaar's triangular-number q-analogue", "Warnaar (2004), Eq. (2)",
        "q", _SIG_Q, _NUM_EXQ, _warnaar_triangular_lhs, _triangular_rhs)
    add("warnaar-cubes", "Warnaar's sum-of-cubes q-analogue", "Warnaar (2004), Eq. (2)",
        "q", _SIG_Q, _NUM_EXQ, _warnaar_cubes_lhs, _warnaar_cubes_rhs)
    add("even-b1", "even-sum specialization at b = 1", "even-sum telescoping, b = 1",
        "q", _SIG_Q, _NUM_EXQ, _even_b1_lhs, _even_b1_rhs)
    add("even-aqq", "even-sum specialization at a = q", "even-sum telescoping, a = q",
        "q", _SIG_Q, _NUM_EXQ, _even_aqq_lhs, _even_aqq_rhs)
    add("even-bqq", "even-sum specialization at b = q", "even-sum telescoping, b = q",
        "q", _SIG_Q, _NUM_EXQ, _even_bqq_lhs, _even_bqq_rhs)
    add("m3rising-aq-a0", "rising-product m=2 case, a -> 0", "three-rising-factorial sum, a -> 0",
        "q", _SIG_Q, _NUM_EXQ, _m3r_a0_lhs, _m3r_a0_rhs)
    add("m3rising-aq-a1", "rising-product m=2 case, a = 1", "three-rising-factorial sum, a = 1",
        "q", _SIG_Q, _NUM_EXQ, _m3r_a1_lhs, _m3r_a1_rhs)
    add("m3rising-aq-aq", "rising-product m=2 case, a = q", "three-rising-factorial sum, a = q",
        "q", _SIG_Q, _NUM_EXQ, _m3r_aq_lhs, _m3r_aq_rhs)
    add("m3rising-q2-aq", "rising-product case, base q^2 and a = q", "base-q^2 pair, first",
        "q", _SIG_Q, _NUM_EXQ, _m3r_q2aq_lhs, _m3r_q2aq_rhs)
    add("m3rising-q2-a1q", "rising-product case, base q^2 and a = 1/q", "base-q^2 pair, second",
        "q", _SIG_Q, _NUM_EXQ, _m3r_q2a1q_lhs, _m3r_q2a1q_rhs)
    add("spc-4i", "q-analogue of the sum of the first n integers", "Gaussian-binomial form",
        "q", _SIG_Q, _NUM_EXQ, _spc4i_lhs, _spc4i_rhs)
    add("spc-4ii", "q-analogue of the sum of the first n cubes", "Cigler (2014), Thm. 1 with q -> q^2",
        "q", _SIG_Q, _NUM_EXQ, _spc4ii_lhs, _spc4ii_rhs)
    add("spc-2", "four-parameter q-degeneration of the main identity", "main identity, q-case",
        "q", _SIG_Q + _SIG_CDGH, _NUM_EXQ, _spc2_lhs, _spc2_rhs,
        exact_domain=_spc2_exact_domain)

    # --- elliptic-context identities ----------------------------------------
    add("basic-g", "geometric sum of elliptic weights", "weight recurrence iterated",
        "ctx", _SIG_FULL, _NUM, _basicg_lhs, _basicg_rhs, ctx_tag="full-elliptic")
    add("tel-c", "elliptic sum of the first n odd numbers", "odd-number telescoping, elliptic",
        "ctx", _SIG_FULL, _NUM, _telc_lhs, _telc_rhs, ctx_tag="full-elliptic")
    add("tel-c-ab", "odd-number sum, a,b;q-case", "odd-number telescoping, p = 0",
        "ctx", _SIG_ABQ, _NUM, _telc_lhs, _telc_rhs, ctx_tag="abq")
    add("tel-c-a", "odd-number sum, a;q-case", "odd-number telescoping, b -> 0",
        "ctx", _SIG_AQ, _NUM, _telc_lhs, _telc_rhs, ctx_tag="aq")
    add("tel-c-b", "odd-number sum, (b;q)-case", "odd-number telescoping, a -> 0",
        "ctx", _SIG_BQ, _NUM, _telc_lhs, _telc_rhs, ctx_tag="bq")
    add("tel-a", "elliptic sum of m-fold rising products", "rising-factorial telescoping",
        "ctx", _SIG_FULL + (("m", _NNI),), _NUM, _tela_lhs, _tela_rhs, ctx_tag="full-elliptic")
    add("sum-even", "elliptic sum of the first n even numbers", "rising-factorial sum at m = 1",
        "ctx", _SIG_FULL, _NUM, _sumeven_lhs, _sumeven_rhs, ctx_tag="full-elliptic")
    add("even-abq", "even-number sum, a,b;q-case", "even-number sum, p = 0",
        "ctx", _SIG_ABQ, _NUM, _sumeven_lhs, _sumeven_rhs, ctx_tag="abq")
    add("even-aq", "even-number sum, a;q-case", "even-number sum, b -> 0",
        "ctx", _SIG_AQ, _NUM, _sumeven_lhs, _sumeven_rhs, ctx_tag="aq")
    add("even-bq", "even-number sum, (b;q)-case", "even-number sum, a -> 0",
        "ctx", _SIG_BQ, _NUM, _sumeven_lhs, _sumeven_rhs, ctx_tag="bq")
    add("m3rising", "elliptic rising-product sum, m = 2", "rising-factorial sum at m = 2",
        "ctx", _SIG_FULL, _NUM, _m3rising_lhs, _m3rising_rhs, ctx_tag="full-elliptic")
    add("m3rising-aq", "rising-product sum m = 2, a;q-case", "rising-factorial m = 2, b -> 0",
        "ctx", _SIG_AQ, _NUM, _m3rising_lhs, _m3rising_rhs, ctx_tag="aq")
    add("tel-b", "elliptic sum of reciprocal rising products", "reciprocal-product telescoping",
        "ctx", _SIG_FULL + (("m", _NNI),), _NUM, _telb_lhs, _telb_rhs, ctx_tag="full-elliptic")
    add("bigid", "the multiparameter elliptic telescoping identity", "main theorem",
        "ctx", _SIG_FULL + _SIG_CDGH, _NUM, _bigid_lhs, _bigid_rhs, ctx_tag="full-elliptic")
    add("spc-1", "main identity, a;q-case", "main theorem, p -> 0 and b -> 0",
        "ctx", _SIG_AQ + _SIG_CDGH, _NUM, _bigid_lhs, _bigid_rhs, ctx_tag="aq")

    # --- theta-factorial identities -----------------------------------------
    add("indef-1", "very-well-poised indefinite q-summation", "Schlosser (2004) indefinite sum",
        "raw", (("a", _CPX), ("b", _CPX), ("q", _CPX)), _NUM, _indef1_lhs, _indef1_rhs)
    add("e-indef-1", "elliptic indefinite summation with balancing parameter", "elliptic indefinite sum",
        "raw", (("a", _CPX), ("b", _CPX), ("c", _CPX), ("q", _CPX), ("p", _CPX)),
        _NUM, _eindef1_lhs, _eindef1_rhs)
    add("ft-indef", "Frenkel-Turaev summation, e -> a q^(n+1) case", "Frenkel-Turaev 10V9 specialization",
        "raw", (("a", _CPX), ("b", _CPX), ("c", _CPX), ("q", _CPX), ("p", _CPX)),
        _NUM, _ftindef_lhs, _ftindef_rhs)
    add("warnaar-cubes-elliptic", "elliptic extension of Warnaar's cube sum", "elliptic indefinite sum at a = b = q^2",
        "raw", (("c", _CPX), ("q", _CPX), ("p", _CPX)), _NUM, _wce_lhs, _wce_rhs,
        min_n=1)
    add("cubic-odds", "cubic basic hypergeometric extension of the odd sum", "cubic-base odd-number sum",
        "raw", (("a", _CPX), ("q", _CPX)), _NUM, _cubicodds_lhs, _cubicodds_rhs)
    add("m00", "Gasper-Schlosser multibasic indefinite summation", "Gasper-Schlosser (2005), Eq. (3.19) at t = q",
        "raw", (("a", _CPX), ("b", _CPX), ("c", _CPX), ("d", _CPX),
                ("q", _CPX), ("r", _CPX), ("s", _CPX), ("p", _CPX)),
        _NUM, _m00_lhs, _m00_rhs)

    # --- rational identities -------------------------------------------------
    add("bigid-hyper", "hypergeometric version of the main identity", "main theorem, classical limit",
        "rational", _SIG_CDGH, _NUM_EXR, _hyper_lhs, _hyper_rhs,
        exact_domain=_hyper_exact_domain)
    add("sum-cubes", "sum of the first n cubes", "classical",
        "rational", (), _NUM_EXR, _sumcubes_lhs, _sumcubes_rhs)

    return {d.id: d for d in ids}


_CATALOG = _build_catalog()


def catalog() -> list[IdentityDescriptor]:
    """All registered identities, in a stable order."""
    return list(_CATALOG.values())


def get_identity(ident) -> IdentityDescriptor:
    if isinstance(ident, IdentityDescriptor):
        return ident
    try:
        return _CATALOG[ident]
    except KeyError:
        raise UnknownIdentity(f"no identity with id {ident!r}") from None


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

@dataclass
class VerificationResult:
    """One verification outcome: both sides, error metrics, pass flag."""

    identity: str
    mode: str
    n: int
    lhs: object
    rhs: object
    abs_err: float
    rel_err: float
    passed: bool
    params: dict
    trial: Optional[int] = None


def _make_env(desc: IdentityDescriptor, params: dict, mode: str,
              cfg: ThetaConfig, pole_tol: float):
    if desc.family == "q":
        return ExactQ() if mode == MODE_EXACT_Q else NumericQ(params["q"], pole_tol)
    if desc.family == "ctx":
        tag = params.get("spec", desc.ctx_tag)  # optional specialization override
        if tag == "full-elliptic":
            ep = EllipticParams(params["a"], params["b"], params["q"], params["p"])
        elif tag == "abq":
            ep = EllipticParams(params["a"], params["b"], params["q"], 0)
        elif tag == "aq":
            ep = EllipticParams(params["a"], 1, params["q"], 0)
        elif tag == "bq":
            ep = EllipticParams(1, params["b"], params["q"], 0)
        else:
            ep = EllipticParams(1, 1, params["q"], 0)
        return make_context(ep, tag, cfg, pole_tol)
    if desc.family == "raw":
        return _RawEnv(cfg, pole_tol)
    return _RawEnv(cfg, pole_tol)   # rational family only reads pole_tol


def _eval_sides(desc: IdentityDescriptor, params: dict, n: int, mode: str,
                cfg: ThetaConfig, pole_tol: float):
    """Raw (lhs, rhs) values; poles surface as DomainRejected."""
    if n < desc.min_n:
        raise DomainRejected(f"{desc.id} needs n >= {desc.min_n}")
    env = _make_env(desc, params, mode, cfg, pole_tol)
    try:
        lhs = desc.lhs(env, params, n)
        rhs = desc.rhs(env, params, n)
    except (PoleProximity, DivisionByZeroFactor, DegenerateDenominator,
            ZeroDivisionError) as exc:
        raise DomainRejected(str(exc)) from exc
    return lhs, rhs


def _metrics_numeric(lv, rv) -> tuple[float, float]:
    lv = lv if isinstance(lv, ScaledComplex) else sc(complex(lv))
    rv = rv if isinstance(rv, ScaledComplex) else sc(complex(rv))
    diff = lv - rv
    mx = lv if lv.log2_abs() >= rv.log2_abs() else rv
    if mx.log2_abs() <= 0:
        rel = abs(diff)
    else:
        rel = abs(diff / mx)
    return abs(diff), rel


def _to_reported(v):
    if isinstance(v, ScaledComplex):
        return v.to_complex()
    if isinstance(v, (int, float, Fraction)):
        return complex(v)
    return v


def default_mode(desc: IdentityDescriptor) -> str:
    return MODE_NUMERIC if MODE_NUMERIC in desc.modes else next(iter(desc.modes))


def evaluate(ident, params: dict, n: int, mode: str = "auto",
             cfg: ThetaConfig = DEFAULT_CONFIG, tol: float = 1e-8,
             pole_tol: float = POLE_TOL, trial: Optional[int] = None) -> VerificationResult:
    """Evaluate both sides of an identity independently and compare.

    Numeric mode passes when rel_err = |lhs - rhs| / max(|lhs|, |rhs|, 1)
    is at most tol; exact modes require exact equality (cross-multiplied
    for RationalFn values).
    """
    desc = get_identity(ident)
    if mode == "auto":
        mode = default_mode(desc)
    if not desc.supports(mode):
        raise ModeUnsupported(f"{desc.id} does not support mode {mode!r}")

    if mode == MODE_NUMERIC:
        lv, rv = _eval_sides(desc, params, n, mode, cfg, pole_tol)
        abs_err, rel_err = _metrics_numeric(lv, rv)
        return VerificationResult(desc.id, mode, n, _to_reported(lv), _to_reported(rv),
                                  abs_err, rel_err, rel_err <= tol, dict(params), trial)

    if mode == MODE_EXACT_Q:
        if desc.exact_domain is not None and not desc.exact_domain(params):
            raise DomainRejected(f"{desc.id}: inadmissible integer parameters")
        lv, rv = _eval_sides(desc, params, n, mode, cfg, pole_tol)
        equal = lv == rv
        err = 0.0 if equal else math.inf
        return VerificationResult(desc.id, mode, n, lv, rv, err, err, equal,
                                  dict(params), trial)

    # exact-rational: evaluate over Fractions
    fparams = {k: (Fraction(v) if not isinstance(v, Fraction) else v)
               for k, v in params.items()}
    if desc.exact_domain is not None and not desc.exact_domain(fparams):
        raise DomainRejected(f"{desc.id}: inadmissible rational parameters")
    lv, rv = _eval_sides(desc, fparams, n, mode, cfg, pole_tol)
    equal = lv == rv
    err = 0.0 if equal else math.inf
    return VerificationResult(desc.id, mode, n, lv, rv, err, err, equal,
                              dict(params), trial)


def eval_exact_pair(ident, n: int, int_params: dict | None = None):
    """(LHS, RHS) of an exact-capable identity as RationalFn values."""
    desc = get_identity(ident)
    params = dict(int_params or {})
    if MODE_EXACT_Q in desc.modes:
        lv, rv = _eval_sides(desc, params, n, MODE_EXACT_Q, DEFAULT_CONFIG, POLE_TOL)
        return lv, rv
    if MODE_EXACT_RATIONAL in desc.modes:
        fparams = {k: Fraction(v) for k, v in params.items()}
        lv, rv = _eval_sides(desc, fparams, n, MODE_EXACT_RATIONAL, DEFAULT_CONFIG, POLE_TOL)
        return (RationalFn(LaurentPoly.monomial(0, Fraction(lv))),
                RationalFn(LaurentPoly.monomial(0, Fraction(rv))))
    raise ModeUnsupported(f"{desc.id} has no exact mode")


# ---------------------------------------------------------------------------
# degeneration edges
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DegenerationEdge:
    """How a parent identity specializes into a child identity.

    parent_sides(params, n, cfg, pole_tol, exact) evaluates the parent in its
    hand-derived limit form at the child's parameters, already multiplied by
    the normalizing prefactor the specialization picks up, so the result is
    directly comparable with the child's own evaluators.
    """

    parent: str
    child: str
    note: str
    parent_sides: Callable
    min_n: int = 0
    exact_ok: bool = False


def _q_of(prm):
    return prm["q"]


def _edge_ctx(shape_lhs, shape_rhs, ctx_maker, scale_fn=None, n_map=None,
              prm_map=None):
    """Parent evaluator for a context identity in a limit context."""

    def sides(prm, n, cfg, pol, exact):
        ctx = ctx_maker(prm, cfg, pol)
        np_ = n if n_map is None else n_map(n)
        pp = prm if prm_map is None else prm_map(prm)
        scale = ONE if scale_fn is None else scale_fn(prm, n, pol)
        return shape_lhs(ctx, pp, np_) * scale, shape_rhs(ctx, pp, np_) * scale

    return sides


def _edge_qid(shape_lhs, shape_rhs, prm_map=None, n_map=None, scale_fn=None):
    """Parent evaluator for a q-provider identity (numeric or exact)."""

    def sides(prm, n, cfg, pol, exact):
        P = ExactQ() if exact else NumericQ(prm["q"], pol)
        np_ = n if n_map is None else n_map(n)
        pp = prm if prm_map is None else prm_map(prm)
        scale = P.one() if scale_fn is None else scale_fn(P, prm, n)
        return shape_lhs(P, pp, np_) * scale, shape_rhs(P, pp, np_) * scale

    return sides


def _edge_raw(shape_lhs, shape_rhs, prm_map, n_map=None, scale_fn=None):
    def sides(prm, n, cfg, pol, exact):
        env = _RawEnv(cfg, pol)
        np_ = n if n_map is None else n_map(n)
        pp = prm_map(prm)
        scale = ONE if scale_fn is None else scale_fn(prm, n, pol)
        return shape_lhs(env, pp, np_) * scale, shape_rhs(env, pp, np_) * scale

    return sides


def _inv_qn(P, m):
    return P.one() / P.qn_den(m)


def _build_edges() -> dict:
    E = []

    def add(parent, child, note, sides, min_n=0, exact_ok=False):
        E.append(DegenerationEdge(parent, child, note, sides, min_n, exact_ok))

    full0 = lambda prm, cfg, pol: FullEllipticCtx(prm["a"], prm["b"], prm["q"], 0,
                                                  cfg=cfg, pole_tol=pol)
    aqctx = lambda prm, cfg, pol: AQCtx(prm["a"], prm["q"], cfg, pol)
    bqctx = lambda prm, cfg, pol: BQCtx(prm["b"], prm["q"], cfg, pol)
    qctx = lambda prm, cfg, pol: QCtx(prm["q"], cfg, pol)
    qinv = lambda prm, cfg, pol: QInvCtx(prm["q"], cfg, pol)
    aq_at = lambda aval: (lambda prm, cfg, pol: AQCtx(aval(prm), prm["q"], cfg, pol))
    bq_at = lambda bval: (lambda prm, cfg, pol: BQCtx(bval(prm), prm["q"], cfg, pol))

    # geometric sum of weights -> plain geometric sum
    add("basic-g", "geo", "weights reduce to q^k",
        _edge_ctx(_basicg_lhs, _basicg_rhs, qctx))

    # odd-number chain
    add("tel-c", "tel-c-ab", "p = 0: theta factors become 1 - x",
        _edge_ctx(_telc_lhs, _telc_rhs, full0))
    add("tel-c-ab", "tel-c-a", "b -> 0 closed form",
        _edge_ctx(_telc_lhs, _telc_rhs, aqctx))
    add("tel-c-ab", "tel-c-b", "a -> 0 closed form",
        _edge_ctx(_telc_lhs, _telc_rhs, bqctx))
    add("tel-c-a", "sp1", "a -> infinity; divide both sides by q",
        _edge_ctx(_telc_lhs, _telc_rhs, qctx,
                  scale_fn=lambda prm, n, pol: ONE / sc(prm["q"])))
    add("tel-c-b", "sp1", "b -> 0; divide both sides by q",
        _edge_ctx(_telc_lhs, _telc_rhs, qctx,
                  scale_fn=lambda prm, n, pol: ONE / sc(prm["q"])))
    add("tel-c-a", "sp2", "a -> 0; multiply both sides by q^(2n+1)",
        _edge_ctx(_telc_lhs, _telc_rhs, qinv,
                  scale_fn=lambda prm, n, pol: cpow(prm["q"], 2 * n + 1)))
    add("tel-c-b", "sp2", "b -> infinity; multiply both sides by q^(2n+1)",
        _edge_ctx(_telc_lhs, _telc_rhs, qinv,
                  scale_fn=lambda prm, n, pol: cpow(prm["q"], 2 * n + 1)))
    add("tel-c-a", "tel-c-a1", "a = 1; multiply both sides by q^(2n+1)",
        _edge_ctx(_telc_lhs, _telc_rhs, aq_at(lambda prm: 1.0),
                  scale_fn=lambda prm, n, pol: cpow(prm["q"], 2 * n + 1)))
    add("tel-c-b", "tel-c-b1", "b = 1; divide both sides by [2] q",
        _edge_ctx(_telc_lhs, _telc_rhs, bq_at(lambda prm: 1.0),
                  scale_fn=lambda prm, n, pol:
                  ONE / (NumericQ(prm["q"], pol).qn_den(2) * sc(prm["q"]))))
    add("tel-c-a", "tel-c-aq", "a = q; multiply both sides by [2] q^(2n+1)",
        _edge_ctx(_telc_lhs, _telc_rhs, aq_at(lambda prm: prm["q"]),
                  scale_fn=lambda prm, n, pol:
                  NumericQ(prm["q"], pol).qn(2) * cpow(prm["q"], 2 * n + 1)))
    add("tel-c-b", "tel-c-bq", "b = q; divide both sides by [2][3] q",
        _edge_ctx(_telc_lhs, _telc_rhs, bq_at(lambda prm: prm["q"]),
                  scale_fn=lambda prm, n, pol:
                  ONE / (NumericQ(prm["q"], pol).qn_den(2)
                         * NumericQ(prm["q"], pol).qn_den(3) * sc(prm["q"]))))

    # even-number chain (rising products, m = 1 and m = 2 reindexed)
    fullctx = lambda prm, cfg, pol: FullEllipticCtx(prm["a"], prm["b"], prm["q"],
                                                    prm["p"], cfg=cfg, pole_tol=pol)
    add("tel-a", "sum-even", "m = 1, index shifted by one",
        _edge_ctx(_tela_lhs, _tela_rhs, fullctx, n_map=lambda n: n - 1,
                  prm_map=lambda prm: {**prm, "m": 1}), min_n=1)
    add("tel-a", "m3rising", "m = 2, index shifted by one",
        _edge_ctx(_tela_lhs, _tela_rhs, fullctx, n_map=lambda n: n - 1,
                  prm_map=lambda prm: {**prm, "m": 2}), min_n=1)
    add("sum-even", "even-abq", "p = 0: theta factors become 1 - x",
        _edge_ctx(_sumeven_lhs, _sumeven_rhs, full0))
    add("even-abq", "even-aq", "b -> 0 closed form",
        _edge_ctx(_sumeven_lhs, _sumeven_rhs, aqctx))
    add("even-abq", "even-bq", "a -> 0 closed form",
        _edge_ctx(_sumeven_lhs, _sumeven_rhs, bqctx))
    add("even-aq", "triangular", "a -> infinity; divide both sides by [2]",
        _edge_ctx(_sumeven_lhs, _sumeven_rhs, qctx,
                  scale_fn=lambda prm, n, pol: _inv_qn(NumericQ(prm["q"], pol), 2)))
    add("even-bq", "triangular", "b -> 0; divide both sides by [2]",
        _edge_ctx(_sumeven_lhs, _sumeven_rhs, qctx,
                  scale_fn=lambda prm, n, pol: _inv_qn(NumericQ(prm["q"], pol), 2)))
    add("even-aq", "warnaar-triangular", "a -> 0; multiply by q^(2n-1)/[2]",
        _edge_ctx(_sumeven_lhs, _sumeven_rhs, qinv,
                  scale_fn=lambda prm, n, pol:
                  cpow(prm["q"], 2 * n - 1) / NumericQ(prm["q"], pol).qn_den(2)))
    add("even-bq", "warnaar-triangular", "b -> infinity; multiply by q^(2n-1)/[2]",
        _edge_ctx(_sumeven_lhs, _sumeven_rhs, qinv,
                  scale_fn=lambda prm, n, pol:
                  cpow(prm["q"], 2 * n - 1) / NumericQ(prm["q"], pol).qn_den(2)))
    add("even-aq", "warnaar-cubes", "a = 1; multiply by q^(2n-1)/[2]^2",
        _edge_ctx(_sumeven_lhs, _sumeven_rhs, aq_at(lambda prm: 1.0),
                  scale_fn=lambda prm, n, pol:
                  cpow(prm["q"], 2 * n - 1)
                  / (lambda P: P.qn_den(2) * P.qn_den(2))(NumericQ(prm["q"], pol))))
    add("even-bq", "even-b1", "b = 1; divide both sides by [2]^2",
        _edge_ctx(_sumeven_lhs, _sumeven_rhs, bq_at(lambda prm: 1.0),
                  scale_fn=lambda prm, n, pol:
                  (lambda P: ONE / (P.qn_den(2) * P.qn_den(2)))(NumericQ(prm["q"], pol))))
    add("even-aq", "even-aqq", "a = q; multiply both sides by [2] q^(2n-1)",
        _edge_ctx(_sumeven_lhs, _sumeven_rhs, aq_at(lambda prm: prm["q"]),
                  scale_fn=lambda prm, n, pol:
                  NumericQ(prm["q"], pol).qn(2) * cpow(prm["q"], 2 * n - 1)))
    add("even-bq", "even-bqq", "b = q; divide both sides by [3]^2",
        _edge_ctx(_sumeven_lhs, _sumeven_rhs, bq_at(lambda prm: prm["q"]),
                  scale_fn=lambda prm, n, pol:
                  (lambda P: ONE / (P.qn_den(3) * P.qn_den(3)))(NumericQ(prm["q"], pol))))

    # m = 2 rising-product chain
    add("m3rising", "m3rising-aq", "p = 0 then b -> 0 closed form",
        _edge_ctx(_m3rising_lhs, _m3rising_rhs, aqctx))
    add("m3rising-aq", "m3rising-aq-a0", "a -> 0; multiply by q^(3n)/[3]",
        _edge_ctx(_m3rising_lhs, _m3rising_rhs, qinv,
                  scale_fn=lambda prm, n, pol:
                  cpow(prm["q"], 3 * n) / NumericQ(prm["q"], pol).qn_den(3)))
    add("m3rising-aq", "m3rising-aq-a1", "a = 1; multiply by q^(3n)/[3]",
        _edge_ctx(_m3rising_lhs, _m3rising_rhs, aq_at(lambda prm: 1.0),
                  scale_fn=lambda prm, n, pol:
                  cpow(prm["q"], 3 * n) / NumericQ(prm["q"], pol).qn_den(3)))
    add("m3rising-aq", "m3rising-aq-aq", "a = q; multiply by [2]^3 q^(3n)/[3]",
        _edge_ctx(_m3rising_lhs, _m3rising_rhs, aq_at(lambda prm: prm["q"]),
                  scale_fn=lambda prm, n, pol:
                  (lambda P: P.qn(2) * P.qn(2) * P.qn(2) / P.qn_den(3))(
                      NumericQ(prm["q"], pol)) * cpow(prm["q"], 3 * n)))
    add("m3rising-aq", "m3rising-q2-aq",
        "q -> q^2 then a = q; multiply by [2]^3 [3]^3 q^(6n)/[6]",
        _edge_ctx(_m3rising_lhs, _m3rising_rhs,
                  lambda prm, cfg, pol: AQCtx(prm["q"], prm["q"] ** 2, cfg, pol),
                  scale_fn=lambda prm, n, pol:
                  (lambda P: (P.qn(2) * P.qn(3)) * (P.qn(2) * P.qn(3))
                   * (P.qn(2) * P.qn(3)) / P.qn_den(6))(NumericQ(prm["q"], pol))
                  * cpow(prm["q"], 6 * n)))
    add("m3rising-aq", "m3rising-q2-a1q",
        "q -> q^2 then a = 1/q; multiply by [2]^3 q^(6n)/[6]",
        _edge_ctx(_m3rising_lhs, _m3rising_rhs,
                  lambda prm, cfg, pol: AQCtx(1.0 / prm["q"], prm["q"] ** 2, cfg, pol),
                  scale_fn=lambda prm, n, pol:
                  (lambda P: P.qn(2) * P.qn(2) * P.qn(2) / P.qn_den(6))(
                      NumericQ(prm["q"], pol)) * cpow(prm["q"], 6 * n)))

    # main identity chain
    add("bigid", "bigid-hyper", "q -> 1 classical limit: [z] -> z, W -> 1",
        _edge_ctx(_bigid_lhs, _bigid_rhs,
                  lambda prm, cfg, pol: ClassicalCtx()))
    add("bigid", "spc-1", "p -> 0 then b -> 0 closed form",
        _edge_ctx(_bigid_lhs, _bigid_rhs, aqctx))
    add("spc-1", "spc-2", "a -> 0: products collapse into explicit q-powers",
        _edge_ctx(_bigid_lhs, _bigid_rhs, qinv))
    add("spc-2", "spc-4i", "c = d = g = 1, h = 0, index shift; scale q^(n-1)",
        _edge_qid(_spc2_lhs, _spc2_rhs,
                  prm_map=lambda prm: {"c": 1, "d": 1, "g": 1, "h": 0},
                  n_map=lambda n: n - 1,
                  scale_fn=lambda P, prm, n: P.qpow(n - 1)),
        min_n=1, exact_ok=True)
    add("spc-2", "spc-4ii", "c = d = g = h = 1, index shift; scale q^(n^2+n-2)",
        _edge_qid(_spc2_lhs, _spc2_rhs,
                  prm_map=lambda prm: {"c": 1, "d": 1, "g": 1, "h": 1},
                  n_map=lambda n: n - 1,
                  scale_fn=lambda P, prm, n: P.qpow(n * n + n - 2)),
        min_n=1, exact_ok=True)

    def _cubes_sides(prm, n, cfg, pol, exact):
        # cleared polynomial form of the hypergeometric identity at
        # c = d = 0, g = h = 1 (multiply by cd(ch+dg)/2 before the limit)
        lhs = sum(Fraction(k) ** 3 for k in range(n + 1))
        rhs = Fraction(n * (n + 1), 2) ** 2
        return lhs, rhs

    add("bigid-hyper", "sum-cubes", "clear cd(ch+dg)/2, then c = d = 0, g = h = 1",
        _cubes_sides)

    # indefinite-summation chain
    add("e-indef-1", "indef-1", "p = 0 makes every theta factor literal",
        _edge_raw(_eindef1_lhs, _eindef1_rhs,
                  prm_map=lambda prm: {"a": prm["a"], "b": prm["b"], "c": 1.0,
                                       "q": prm["q"], "p": 0.0}))
    add("e-indef-1", "warnaar-cubes-elliptic", "a = b = q^2, index shift",
        _edge_raw(_eindef1_lhs, _eindef1_rhs,
                  prm_map=lambda prm: {"a": prm["q"] ** 2, "b": prm["q"] ** 2,
                                       "c": prm["c"], "q": prm["q"], "p": prm["p"]},
                  n_map=lambda n: n - 1), min_n=1)
    add("warnaar-cubes-elliptic", "warnaar-cubes", "p = 0",
        _edge_raw(_wce_lhs, _wce_rhs,
                  prm_map=lambda prm: {"c": 1.0, "q": prm["q"], "p": 0.0}),
        min_n=1)
    add("indef-1", "qodds", "a = b = q, then n -> n - 1; scale q^(1-n)",
        _edge_raw(_indef1_lhs, _indef1_rhs,
                  prm_map=lambda prm: {"a": prm["q"], "b": prm["q"], "q": prm["q"]},
                  n_map=lambda n: n - 1,
                  scale_fn=lambda prm, n, pol: cpow(prm["q"], 1 - n)),
        min_n=1)
    add("cubic-odds", "qodds", "a = 0 empties the cubic-base factorials",
        _edge_raw(_cubicodds_lhs, _cubicodds_rhs,
                  prm_map=lambda prm: {"a": 0.0, "q": prm["q"]}))

    return {(e.parent, e.child): e for e in E}


_EDGES = _build_edges()


def edges() -> list[DegenerationEdge]:
    """All registered degeneration edges."""
    return list(_EDGES.values())


def get_edge(parent_id: str, child_id: str) -> DegenerationEdge:
    try:
        return _EDGES[(parent_id, child_id)]
    except KeyError:
        raise UnknownEdge(f"no degeneration edge {parent_id!r} -> {child_id!r}") from None


def reduce_chain_check(parent_id: str, child_id: str, params: dict, n: int,
                       mode: str = MODE_NUMERIC, cfg: ThetaConfig = DEFAULT_CONFIG,
                       tol: float = 1e-10, pole_tol: float = POLE_TOL,
                       trial: Optional[int] = None) -> VerificationResult:
    """Check a registered degeneration edge at the child's parameters.

    Evaluates the parent in its specialized closed form (with the edge's
    normalization) and the child directly, and asserts that the two LHS
    values and the two RHS values agree.
    """
    edge = get_edge(parent_id, child_id)
    child = get_identity(child_id)
    ident = f"{parent_id}->{child_id}"
    if n < max(edge.min_n, child.min_n):
        raise DomainRejected(f"edge {ident} needs n >= {max(edge.min_n, child.min_n)}")

    exact = mode in (MODE_EXACT_Q, MODE_EXACT_RATIONAL)
    if exact and not edge.exact_ok:
        raise ModeUnsupported(f"edge {ident} supports only numeric checking")

    try:
        p_lhs, p_rhs = edge.parent_sides(params, n, cfg, pole_tol, exact)
    except (PoleProximity, DivisionByZeroFactor, DegenerateDenominator,
            ZeroDivisionError) as exc:
        raise DomainRejected(str(exc)) from exc
    c_lhs, c_rhs = _eval_sides(child, params, n,
                               MODE_EXACT_Q if exact else MODE_NUMERIC, cfg, pole_tol)

    if exact:
        equal = (p_lhs == c_lhs) and (p_rhs == c_rhs)
        err = 0.0 if equal else math.inf
        return VerificationResult(ident, mode, n, p_lhs, c_lhs, err, err, equal,
                                  dict(params), trial)

    abs_l, rel_l = _metrics_numeric(p_lhs, c_lhs)
    abs_r, rel_r = _metrics_numeric(p_rhs, c_rhs)
    rel = max(rel_l, rel_r)
    return VerificationResult(ident, MODE_NUMERIC, n, _to_reported(p_lhs),
                              _to_reported(c_lhs), max(abs_l, abs_r), rel,
                              rel <= tol, dict(params), trial)
