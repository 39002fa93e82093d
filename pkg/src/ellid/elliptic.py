"""Elliptic numbers, elliptic weights, and their specializations.

The elliptic analogue of a complex number z, with parameters a, b, base q and
nome p, is the balanced four-theta quotient

    [z]_{a,b;q,p} = theta(q^z, a q^z, b q^2, a/b; p)
                  / theta(q, a q, b q^(z+1), a q^(z-1) / b; p),

with [0] = 0 and [1] = 1.  The elliptic weight is the five-theta quotient

    W_{a,b;q,p}(k) = theta(a q^(2k+1), b q, b q^2, a q^(-1)/b, a/b; p)
                   / theta(a q, b q^(k+1), b q^(k+2), a q^(k-1)/b, a q^k/b; p) * q^k,

which mediates the addition rule [x+y] = [x] + W(x) [y]_{a q^(2x), b q^x}.

Specializations are implemented as distinct closed forms, never by plugging
tiny or huge parameter values:

    abq : p = 0, all theta factors become 1 - x;
    aq  : p = 0 and b -> 0 (or b -> infinity),
          [z] = (1-q^z)(1-a q^z) / ((1-q)(1-a q)) * q^(1-z),  W(k) = (1-a q^(2k+1))/(1-a q) * q^(-k);
    bq  : p = 0 and a -> 0 (or a -> infinity),
          [z] = (1-q^z)(1-b q^2) / ((1-q)(1-b q^(z+1))),      W(k) = (1-bq)(1-bq^2)/((1-bq^(k+1))(1-bq^(k+2))) * q^k;
    q   : both limits, [z]_q = (1-q^z)/(1-q) and W(k) = q^k.

Parameter shifts a -> a q^(2x), b -> b q^x are tracked symbolically in an
accumulator, so shift(x).shift(y) == shift(x + y) exactly; powers of q are
materialized only at evaluation time through the single principal-branch
power convention of cpow.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from ._scaled import ONE, ScaledComplex, cpow, sc
from .errors import PoleProximity
from .theta import DEFAULT_CONFIG, POLE_TOL, ThetaConfig, theta_scaled

SPECIALIZATION_TAGS = ("full-elliptic", "abq", "aq", "bq", "q")


@dataclass(frozen=True)
class Specialization:
    """Which closed form of the elliptic quantities to use."""

    tag: str

    def __post_init__(self):
        if self.tag not in SPECIALIZATION_TAGS:
            raise ValueError(f"unknown specialization tag {self.tag!r}")


FULL_ELLIPTIC = Specialization("full-elliptic")
ABQ = Specialization("abq")
AQ = Specialization("aq")
BQ = Specialization("bq")
Q = Specialization("q")


@dataclass(frozen=True)
class EllipticParams:
    """The parameter quadruple (a, b, q, p) plus an accumulated shift.

    sigma is the symbolic shift accumulator: the effective parameters are
    a * q**(2 sigma) and b * q**sigma.  Keeping sigma separate makes shift
    composition exact: shift(x).shift(y) == shift(x + y).
    """

    a: complex
    b: complex
    q: complex
    p: complex
    sigma: complex = 0

    def __post_init__(self):
        if not abs(self.p) < 1:
            raise ValueError("|p| < 1 required")
        if self.q == 0:
            raise ValueError("q must be nonzero")
        if self.p != 0 and (self.a == 0 or self.b == 0):
            raise ValueError("a and b must be nonzero when p != 0")

    def shift(self, x) -> "EllipticParams":
        """Parameters with a -> a q^(2x), b -> b q^x."""
        return dataclasses.replace(self, sigma=self.sigma + x)


class FullEllipticCtx:
    """Elliptic numbers/weights as theta quotients (any nome, incl. p = 0).

    An explicit logq may be supplied when the base is itself a power, e.g.
    base q^x with logq = x * Log q; exponents then combine symbolically
    instead of through the principal branch of the materialized base.  The
    caller guarantees q == exp(logq).
    """

    tag = "full-elliptic"

    def __init__(self, a, b, q, p, sigma=0, cfg: ThetaConfig = DEFAULT_CONFIG,
                 pole_tol: float = POLE_TOL, logq: complex | None = None):
        self.a = complex(a)
        self.b = complex(b)
        self.q = complex(q)
        self.p = complex(p)
        self.sigma = sigma
        self.cfg = cfg
        self.pole_tol = pole_tol
        self._logq = logq

    def qpow(self, z) -> ScaledComplex:
        if self._logq is None:
            return cpow(self.q, z)
        z = complex(z)
        w = self._logq
        return ScaledComplex.from_exp(complex(z.real * w.real - z.imag * w.imag,
                                              z.real * w.imag + z.imag * w.real))

    def _tquot(self, nums, dens) -> ScaledComplex:
        top = ONE
        for x in nums:
            val, _ = theta_scaled(x, self.p, self.cfg)
            top = top * val
        bot = ONE
        for x in dens:
            val, mf = theta_scaled(x, self.p, self.cfg)
            if mf < self.pole_tol:
                raise PoleProximity(
                    f"denominator theta factor within {self.pole_tol:g} of zero "
                    f"(min |factor| = {mf:.3g})")
            bot = bot * val
        return top / bot

    def _shifted_ab(self, s):
        qs = self.qpow(self.sigma + s)
        return sc(self.a) * qs * qs, sc(self.b) * qs

    def num_from_power(self, qz: ScaledComplex, s=0) -> ScaledComplex:
        """[z] with q^z supplied explicitly (used by the ellipticity checks)."""
        a_, b_ = self._shifted_ab(s)
        q = self.q
        q2 = q * q
        return self._tquot(
            [qz, a_ * qz, b_ * q2, a_ / b_],
            [sc(q), a_ * q, b_ * qz * q, a_ * qz / (b_ * q)],
        )

    def num(self, z, s=0) -> ScaledComplex:
        return self.num_from_power(self.qpow(z), s)

    def wt(self, k, s=0) -> ScaledComplex:
        a_, b_ = self._shifted_ab(s)
        q = self.q
        q2 = q * q
        qk = self.qpow(k)
        return self._tquot(
            [a_ * qk * qk * q, b_ * q, b_ * q2, a_ / (b_ * q), a_ / b_],
            [a_ * q, b_ * qk * q, b_ * qk * q2, a_ * qk / (b_ * q), a_ * qk / b_],
        ) * qk


class _ClosedFormCtx:
    """Shared plumbing for the p = 0 closed forms."""

    def __init__(self, q, cfg: ThetaConfig = DEFAULT_CONFIG, pole_tol: float = POLE_TOL,
                 sigma=0):
        self.q = complex(q)
        self.sigma = sigma
        self.cfg = cfg
        self.pole_tol = pole_tol

    def _f(self, x) -> ScaledComplex:
        return ONE - x

    def _fd(self, x) -> ScaledComplex:
        out = ONE - x
        if abs(out) < self.pole_tol:
            raise PoleProximity(
                f"denominator factor 1 - x within {self.pole_tol:g} of zero")
        return out

    def qpow(self, e) -> ScaledComplex:
        return cpow(self.q, e)


class ABQCtx(_ClosedFormCtx):
    """a,b;q-numbers and weights (p = 0)."""

    tag = "abq"

    def __init__(self, a, b, q, cfg=DEFAULT_CONFIG, pole_tol=POLE_TOL, sigma=0):
        super().__init__(q, cfg, pole_tol, sigma)
        self.a = complex(a)
        self.b = complex(b)

    def _shifted_ab(self, s):
        qs = self.qpow(self.sigma + s)
        return sc(self.a) * qs * qs, sc(self.b) * qs

    def num(self, z, s=0) -> ScaledComplex:
        a_, b_ = self._shifted_ab(s)
        q = self.q
        qz = self.qpow(z)
        f, fd = self._f, self._fd
        return (f(qz) * f(a_ * qz) * f(b_ * q * q) * f(a_ / b_)) / (
            fd(sc(q)) * fd(a_ * q) * fd(b_ * qz * q) * fd(a_ * qz / (b_ * q)))

    def wt(self, k, s=0) -> ScaledComplex:
        a_, b_ = self._shifted_ab(s)
        q = self.q
        q2 = q * q
        qk = self.qpow(k)
        f, fd = self._f, self._fd
        return (f(a_ * qk * qk * q) * f(b_ * q) * f(b_ * q2) * f(a_ / (b_ * q)) * f(a_ / b_)) / (
            fd(a_ * q) * fd(b_ * qk * q) * fd(b_ * qk * q2)
            * fd(a_ * qk / (b_ * q)) * fd(a_ * qk / b_)) * qk


class AQCtx(_ClosedFormCtx):
    """a;q-numbers and weights (p = 0, b -> 0 or b -> infinity)."""

    tag = "aq"

    def __init__(self, a, q, cfg=DEFAULT_CONFIG, pole_tol=POLE_TOL, sigma=0):
        super().__init__(q, cfg, pole_tol, sigma)
        self.a = complex(a)

    def _shifted_a(self, s):
        qs = self.qpow(self.sigma + s)
        return sc(self.a) * qs * qs

    def num(self, z, s=0) -> ScaledComplex:
        a_ = self._shifted_a(s)
        q = self.q
        qz = self.qpow(z)
        return (self._f(qz) * self._f(a_ * qz)) / (
            self._fd(sc(q)) * self._fd(a_ * q)) * q / qz

    def wt(self, k, s=0) -> ScaledComplex:
        a_ = self._shifted_a(s)
        q = self.q
        qk = self.qpow(k)
        return self._f(a_ * qk * qk * q) / self._fd(a_ * q) / qk


class BQCtx(_ClosedFormCtx):
    """(b;q)-numbers and weights (p = 0, a -> 0 or a -> infinity)."""

    tag = "bq"

    def __init__(self, b, q, cfg=DEFAULT_CONFIG, pole_tol=POLE_TOL, sigma=0):
        super().__init__(q, cfg, pole_tol, sigma)
        self.b = complex(b)

    def _shifted_b(self, s):
        return sc(self.b) * self.qpow(self.sigma + s)

    def num(self, z, s=0) -> ScaledComplex:
        b_ = self._shifted_b(s)
        q = self.q
        qz = self.qpow(z)
        return (self._f(qz) * self._f(b_ * q * q)) / (
            self._fd(sc(q)) * self._fd(b_ * qz * q))

    def wt(self, k, s=0) -> ScaledComplex:
        b_ = self._shifted_b(s)
        q = self.q
        q2 = q * q
        qk = self.qpow(k)
        return (self._f(b_ * q) * self._f(b_ * q2)) / (
            self._fd(b_ * qk * q) * self._fd(b_ * qk * q2)) * qk


class QCtx(_ClosedFormCtx):
    """Plain q-numbers: [z]_q = (1 - q^z)/(1 - q), W(k) = q^k."""

    tag = "q"

    def num(self, z, s=0) -> ScaledComplex:
        return self._f(self.qpow(z)) / self._fd(sc(self.q))

    def wt(self, k, s=0) -> ScaledComplex:
        return self.qpow(k)


class QInvCtx(_ClosedFormCtx):
    """The other one-parameter-free limit: a -> 0 of aq (= b -> inf of bq).

    [z] -> [z]_q q^(1-z) and W(k) -> q^(-k); used by the degeneration edges,
    not a public specialization tag.
    """

    tag = "q-inv"

    def num(self, z, s=0) -> ScaledComplex:
        q = self.q
        qz = self.qpow(z)
        return self._f(qz) / self._fd(sc(q)) * q / qz

    def wt(self, k, s=0) -> ScaledComplex:
        return ONE / self.qpow(k)


class ClassicalCtx:
    """q -> 1 degeneration: [z] = z and W = 1 (for the hypergeometric forms)."""

    tag = "classical"
    pole_tol = POLE_TOL

    def num(self, z, s=0) -> ScaledComplex:
        return sc(z)

    def wt(self, k, s=0) -> ScaledComplex:
        return ONE


def make_context(params: EllipticParams, spec: Specialization = FULL_ELLIPTIC,
                 cfg: ThetaConfig = DEFAULT_CONFIG, pole_tol: float = POLE_TOL):
    """Build the evaluation context matching a specialization tag."""
    tag = spec.tag if isinstance(spec, Specialization) else str(spec)
    if tag == "full-elliptic":
        return FullEllipticCtx(params.a, params.b, params.q, params.p,
                               params.sigma, cfg, pole_tol)
    if tag == "abq":
        return ABQCtx(params.a, params.b, params.q, cfg, pole_tol, params.sigma)
    if tag == "aq":
        return AQCtx(params.a, params.q, cfg, pole_tol, params.sigma)
    if tag == "bq":
        return BQCtx(params.b, params.q, cfg, pole_tol, params.sigma)
    if tag == "q":
        return QCtx(params.q, cfg, pole_tol, params.sigma)
    raise ValueError(f"unknown specialization tag {tag!r}")


def elliptic_number(z, params: EllipticParams, spec: Specialization = FULL_ELLIPTIC,
                    cfg: ThetaConfig = DEFAULT_CONFIG) -> complex:
    """[z] with the given parameters, in the requested specialization."""
    return make_context(params, spec, cfg).num(z).to_complex()


def elliptic_weight(k, params: EllipticParams, spec: Specialization = FULL_ELLIPTIC,
                    cfg: ThetaConfig = DEFAULT_CONFIG) -> complex:
    """W(k) with the given parameters, in the requested specialization."""
    return make_context(params, spec, cfg).wt(k).to_complex()


def elliptic_factorial(m: int, params: EllipticParams,
                       spec: Specialization = FULL_ELLIPTIC,
                       cfg: ThetaConfig = DEFAULT_CONFIG) -> complex:
    """[m]! = [m][m-1]...[1]; empty product 1 for m = 0."""
    if m < 0:
        raise ValueError("elliptic factorial needs m >= 0")
    ctx = make_context(params, spec, cfg)
    out = ONE
    for j in range(1, m + 1):
        out = out * ctx.num(j)
    return out.to_complex()


def _quad_rel_terms(x, y, r, params: EllipticParams,
                    cfg: ThetaConfig = DEFAULT_CONFIG):
    """The three products of the quadratic theta relation, in scaled form.

    term1 - term2 = term3 is the difference equation behind the main
    multiparameter telescoping identity:

        [x] [y]_{s} - [x+r] [y-r]_{s} = [r+x-y] [r]_{a q^(2x), b q^x} W_{s}(y - r),

    with s the shift r + x - y applied to (a, b).
    """
    ctx = make_context(params, FULL_ELLIPTIC, cfg)
    s = r + x - y
    t1 = ctx.num(x) * ctx.num(y, s=s)
    t2 = ctx.num(x + r) * ctx.num(y - r, s=s)
    t3 = ctx.num(s) * ctx.num(r, s=x) * ctx.wt(y - r, s=s)
    return t1, t2, t3


def quad_rel_residual(x, y, r, params: EllipticParams,
                      cfg: ThetaConfig = DEFAULT_CONFIG) -> complex:
    """LHS - RHS of the quadratic relation; zero for valid parameters."""
    t1, t2, t3 = _quad_rel_terms(x, y, r, params, cfg)
    return (t1 - t2 - t3).to_complex()
