"""Coefficient rings for truncated series.

Three interchangeable variants are serializable: exact rationals, Laurent
polynomials in one formal variable over the rationals, and complex doubles
with an absolute comparison tolerance.  The exact variants have decidable
equality; the complex variant compares within its tolerance and is the
only one without exact zero tests.
"""

from __future__ import annotations

from fractions import Fraction

from genusforge._kernels import convolve_full
from genusforge.errors import NonUnitError, RingMismatchError, SchemaError


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and 'p/q' strings to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"bad rational literal {value!r}") from exc
    raise RingMismatchError(f"cannot treat {value!r} as an exact rational")


def fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


_QZERO = Fraction(0)


class LaurentZ:
    """Laurent polynomial in z with exact rational coefficients.

    Stored dense: coeffs[i] multiplies z**(lo+i).  Construction strips
    zero ends; the zero polynomial is lo == 0 with no coefficients.
    """

    __slots__ = ("lo", "coeffs")

    def __init__(self, lo=0, coeffs=()):
        cs = [as_fraction(c) for c in coeffs]
        i, j = 0, len(cs)
        while i < j and not cs[i]:
            i += 1
        while j > i and not cs[j - 1]:
            j -= 1
        if i == j:
            self.lo = 0
            self.coeffs = ()
        else:
            self.lo = lo + i
            self.coeffs = tuple(cs[i:j])

    @classmethod
    def monomial(cls, exponent: int, coeff=1) -> "LaurentZ":
        return cls(exponent, (coeff,))

    @classmethod
    def from_dict(cls, d) -> "LaurentZ":
        if not d:
            return cls()
        lo = min(d)
        hi = max(d)
        cs = [_QZERO] * (hi - lo + 1)
        for e, c in d.items():
            cs[e - lo] = as_fraction(c)
        return cls(lo, cs)

    def items(self):
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.lo + i, c

    @property
    def min_exp(self):
        if not self.coeffs:
            return 0
        return self.lo

    @property
    def max_exp(self):
        if not self.coeffs:
            return 0
        return self.lo + len(self.coeffs) - 1

    def is_monomial(self) -> bool:
        return sum(1 for c in self.coeffs if c) == 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentZ(0, (other,))
        if not isinstance(other, LaurentZ):
            return NotImplemented
        return self.lo == other.lo and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.lo, self.coeffs))

    def __neg__(self):
        return LaurentZ(self.lo, tuple(-c for c in self.coeffs))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentZ(0, (other,))
        if not isinstance(other, LaurentZ):
            return NotImplemented
        if not self:
            return other
        if not other:
            return self
        lo = min(self.lo, other.lo)
        hi = max(self.max_exp, other.max_exp)
        cs = [_QZERO] * (hi - lo + 1)
        for e, c in self.items():
            cs[e - lo] += c
        for e, c in other.items():
            cs[e - lo] += c
        return LaurentZ(lo, cs)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentZ(0, (other,))
        if not isinstance(other, LaurentZ):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = as_fraction(other)
            if not q:
                return LaurentZ()
            return LaurentZ(self.lo, tuple(c * q for c in self.coeffs))
        if not isinstance(other, LaurentZ):
            return NotImplemented
        if not self or not other:
            return LaurentZ()
        cs = convolve_full(list(self.coeffs), list(other.coeffs), _QZERO)
        return LaurentZ(self.lo + other.lo, cs)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        out = LaurentZ.monomial(0)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def subst_pow(self, k: int) -> "LaurentZ":
        """Substitute z -> z**k.  k == 0 collapses to the coefficient sum."""
        if k == 0:
            return LaurentZ(0, (sum(self.coeffs, _QZERO),))
        return LaurentZ.from_dict({k * e: c for e, c in self.items()})

    def __call__(self, z):
        acc = 0
        for e, c in self.items():
            acc += complex(c) * z**e
        return acc

    def constant(self) -> Fraction:
        if not self.coeffs:
            return _QZERO
        if self.lo <= 0 <= self.max_exp:
            return self.coeffs[-self.lo]
        return _QZERO

    def __repr__(self):
        if not self.coeffs:
            return "LaurentZ(0)"
        bits = []
        for e, c in self.items():
            bits.append(f"{c}*z^{e}" if e else f"{c}")
        return "LaurentZ(" + " + ".join(bits) + ")"


class CoefficientRing:
    """Descriptor with construction, equality and serialization hooks."""

    kind = "abstract"
    exact = True
    allows_transcendental = False

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def coerce(self, value):
        raise NotImplementedError

    def is_zero(self, x) -> bool:
        return not x

    def eq(self, x, y) -> bool:
        return x == y

    def inv(self, x):
        raise NotImplementedError

    def div_int(self, x, n: int):
        raise NotImplementedError

    def to_payload(self, x):
        raise NotImplementedError

    def from_payload(self, obj):
        raise NotImplementedError

    def tag(self) -> dict:
        return {"ring": self.kind}

    def __eq__(self, other):
        return type(self) is type(other)

    def __hash__(self):
        return hash(type(self))

    def __repr__(self):
        return f"<ring {self.kind}>"


class RationalRing(CoefficientRing):
    kind = "rational"
    allows_transcendental = True

    def zero(self):
        return _QZERO

    def one(self):
        return Fraction(1)

    def coerce(self, value):
        return as_fraction(value)

    def inv(self, x):
        if not x:
            raise NonUnitError("division by zero rational")
        return 1 / as_fraction(x)

    def div_int(self, x, n):
        return x / n

    def to_payload(self, x):
        return fraction_str(x)

    def from_payload(self, obj):
        if not isinstance(obj, str):
            raise SchemaError("rational coefficients serialize as 'p/q' strings")
        return as_fraction(obj)


class LaurentRing(CoefficientRing):
    kind = "laurent"

    def zero(self):
        return LaurentZ()

    def one(self):
        return LaurentZ.monomial(0)

    def coerce(self, value):
        if isinstance(value, LaurentZ):
            return value
        return LaurentZ(0, (as_fraction(value),))

    def inv(self, x):
        x = self.coerce(x)
        if not x.is_monomial():
            raise NonUnitError("only monomials are units in the Laurent ring")
        e, c = next(x.items())
        return LaurentZ.monomial(-e, 1 / c)

    def div_int(self, x, n):
        return x * Fraction(1, n)

    def to_payload(self, x):
        return {"z_low": x.lo, "coeffs": [fraction_str(c) for c in x.coeffs]}

    def from_payload(self, obj):
        if not isinstance(obj, dict) or "coeffs" not in obj:
            raise SchemaError("laurent coefficients serialize as {z_low, coeffs}")
        return LaurentZ(int(obj.get("z_low", 0)), [as_fraction(c) for c in obj["coeffs"]])


class ComplexRing(CoefficientRing):
    """Complex doubles compared within an absolute tolerance."""

    kind = "complex"
    exact = False

    def __init__(self, tol: float = 1e-9):
        if not (tol > 0):
            raise ValueError("tolerance must be positive")
        self.tol = float(tol)

    def zero(self):
        return 0j

    def one(self):
        return 1 + 0j

    def coerce(self, value):
        if isinstance(value, (complex, float, int, Fraction)):
            return complex(value)
        raise RingMismatchError(f"cannot treat {value!r} as a complex coefficient")

    def is_zero(self, x):
        return abs(x) <= self.tol

    def eq(self, x, y):
        return abs(x - y) <= self.tol

    def inv(self, x):
        if abs(x) <= self.tol:
            raise NonUnitError("inverting a complex value inside the zero tolerance")
        return 1 / x

    def div_int(self, x, n):
        return x / n

    def to_payload(self, x):
        return [x.real, x.imag]

    def from_payload(self, obj):
        if not (isinstance(obj, (list, tuple)) and len(obj) == 2):
            raise SchemaError("complex coefficients serialize as [re, im]")
        return complex(float(obj[0]), float(obj[1]))

    def tag(self):
        return {"ring": self.kind, "tol": self.tol}

    def __eq__(self, other):
        return type(self) is type(other) and self.tol == other.tol

    def __hash__(self):
        return hash((type(self), self.tol))


RATIONAL = RationalRing()
LAURENT = LaurentRing()


def ring_from_tag(tag: dict) -> CoefficientRing:
    kind = tag.get("ring")
    if kind == "rational":
        return RATIONAL
    if kind == "laurent":
        return LAURENT
    if kind == "complex":
        return ComplexRing(tag.get("tol", 1e-9))
    raise SchemaError(f"unknown coefficient ring tag {tag!r}")


def check_same_ring(a: CoefficientRing, b: CoefficientRing):
    if a != b:
        raise RingMismatchError(f"incompatible coefficient rings {a!r} and {b!r}")
