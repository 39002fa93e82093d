"""Overflow-safe complex arithmetic: values of the form m * 2**e.

The balanced theta quotients evaluated in this package are O(1), but their
building blocks are not: a power q**((gk+c)(hk+d)) with box-sampled complex
parameters can have magnitude far beyond 1e308, and a single theta value of
such an argument further exceeds the double range.  ScaledComplex keeps a
complex mantissa together with an unbounded integer base-2 exponent so that
arbitrarily long products of such factors remain representable; the final
quotients convert back to ordinary complex.
"""

from __future__ import annotations

import cmath
import math

# ln(2) split hi/lo so that e*LN2_HI is exact for |e| < 2**20 (e integral).
_LN2 = 0.6931471805599453
_LN2_HI = 6.93147180369123816490e-01
_LN2_LO = 1.90821492927058770002e-10

_BAND = 256  # renormalize when the mantissa exponent leaves [-_BAND, _BAND]


def _ldexp_sat(x: float, e: int) -> float:
    """ldexp that saturates to signed infinity instead of raising."""
    try:
        return math.ldexp(x, e)
    except OverflowError:
        return math.copysign(math.inf, x)


class ScaledComplex:
    """A complex number m * 2**e with integer e of unlimited range."""

    __slots__ = ("m", "e")

    def __init__(self, m: complex, e: int = 0):
        m = complex(m)
        if m == 0:
            self.m = 0j
            self.e = 0
            return
        s = max(abs(m.real), abs(m.imag))
        k = math.frexp(s)[1]
        if k > _BAND or k < -_BAND:
            m = complex(math.ldexp(m.real, -k), math.ldexp(m.imag, -k))
            e += k
        self.m = m
        self.e = e

    # ---- construction helpers -------------------------------------------

    @staticmethod
    def from_exp(w: complex) -> "ScaledComplex":
        """exp(w) for w with arbitrarily large real part."""
        e2 = math.floor(w.real / _LN2)
        frac = (w.real - e2 * _LN2_HI) - e2 * _LN2_LO
        return ScaledComplex(cmath.exp(complex(frac, w.imag)), e2)

    def ipow(self, k: int) -> "ScaledComplex":
        """Integer power with exact handling of the base-2 exponent."""
        if k == 0:
            return ONE
        if self.m == 0:
            if k < 0:
                raise ZeroDivisionError("0 ** negative")
            return ZERO
        # tighten mantissa to |max component| in [1, 2) so k*log stays accurate
        s = max(abs(self.m.real), abs(self.m.imag))
        j = math.frexp(s)[1] - 1
        mt = complex(math.ldexp(self.m.real, -j), math.ldexp(self.m.imag, -j))
        w = cmath.log(mt)
        out = ScaledComplex.from_exp(complex(k * w.real, k * w.imag))
        return ScaledComplex(out.m, out.e + k * (self.e + j))

    # ---- arithmetic ------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, ScaledComplex):
            return ScaledComplex(self.m * other.m, self.e + other.e)
        return ScaledComplex(self.m * other, self.e)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, ScaledComplex):
            return ScaledComplex(self.m / other.m, self.e - other.e)
        return ScaledComplex(self.m / other, self.e)

    def __rtruediv__(self, other):
        return ScaledComplex(other / self.m, -self.e)

    def __neg__(self):
        out = ScaledComplex.__new__(ScaledComplex)
        out.m = -self.m
        out.e = self.e
        return out

    def __add__(self, other):
        if not isinstance(other, ScaledComplex):
            other = ScaledComplex(other)
        if other.m == 0:
            return self
        if self.m == 0:
            return other
        d = self.e - other.e
        if d >= 1100:
            return self
        if d <= -1100:
            return other
        if d >= 0:
            return ScaledComplex(
                self.m + complex(math.ldexp(other.m.real, -d), math.ldexp(other.m.imag, -d)),
                self.e,
            )
        return ScaledComplex(
            other.m + complex(math.ldexp(self.m.real, d), math.ldexp(self.m.imag, d)),
            other.e,
        )

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, ScaledComplex):
            other = ScaledComplex(other)
        return self + (-other)

    def __rsub__(self, other):
        return ScaledComplex(other) + (-self)

    # ---- conversions and magnitude --------------------------------------

    def is_zero(self) -> bool:
        return self.m == 0

    def __abs__(self) -> float:
        if self.m == 0:
            return 0.0
        return _ldexp_sat(abs(self.m), self.e)

    def log2_abs(self) -> float:
        """log2 of the magnitude; -inf for zero.  Never overflows."""
        if self.m == 0:
            return -math.inf
        return math.log2(abs(self.m)) + self.e

    def to_complex(self) -> complex:
        """Convert back to complex, saturating to +-inf on overflow."""
        return complex(_ldexp_sat(self.m.real, self.e), _ldexp_sat(self.m.imag, self.e))

    def __complex__(self) -> complex:
        return self.to_complex()

    def __repr__(self):
        return f"ScaledComplex({self.m!r}, {self.e})"


ZERO = ScaledComplex(0j)
ONE = ScaledComplex(1.0 + 0j)


def sc(z) -> ScaledComplex:
    """Coerce a number to ScaledComplex."""
    if isinstance(z, ScaledComplex):
        return z
    return ScaledComplex(complex(z))


def cpow(base: complex, z) -> ScaledComplex:
    """base**z via exp(z * Log base), principal branch.

    This is the single power convention used throughout the package, so
    exponent addition matches symbolic exponent arithmetic up to rounding.
    Small integer exponents are expanded by repeated multiplication, which
    agrees with the principal branch and is exact for exact inputs.
    """
    if isinstance(z, int) and -8 <= z <= 8:
        if z == 0:
            return ONE
        out = ScaledComplex(complex(base))
        for _ in range(abs(z) - 1):
            out = out * base
        return out if z > 0 else ONE / out
    w = cmath.log(base)
    z = complex(z)
    return ScaledComplex.from_exp(complex(z.real * w.real - z.imag * w.imag,
                                          z.real * w.imag + z.imag * w.real))
