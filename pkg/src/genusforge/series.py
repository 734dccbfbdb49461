"""Truncated formal series on the half-integer exponent grid.

A series stores coefficients at exponents offset + k/2 for 0 <= k < order
and treats everything below the offset as identically zero.  Coefficients
at or past offset + order/2 are unknown: arithmetic never fabricates them,
so a product is only known to the shorter of the two input windows.
"""

from __future__ import annotations

from fractions import Fraction

from genusforge._kernels import convolve_trunc, series_inv
from genusforge.errors import (
    GridError,
    NonUnitError,
    RingMismatchError,
    SchemaError,
    TruncationError,
)
from genusforge.rings import (
    CoefficientRing,
    as_fraction,
    check_same_ring,
    fraction_str,
    ring_from_tag,
)

STEP = Fraction(1, 2)


class QSeries:
    """Truncated series sum_k c[k] q**(offset + k/2) + O(q**(offset + order/2))."""

    __slots__ = ("ring", "offset", "coeffs", "order")

    def __init__(self, ring: CoefficientRing, offset, coeffs, order: int | None = None):
        self.ring = ring
        self.offset = as_fraction(offset)
        cs = [ring.coerce(c) for c in coeffs]
        if order is None:
            order = len(cs)
        if order < 0:
            raise ValueError("order must be non-negative")
        if len(cs) > order:
            raise ValueError("more coefficients than the truncation order admits")
        zero = ring.zero()
        cs.extend(zero for _ in range(order - len(cs)))
        self.coeffs = tuple(cs)
        self.order = order

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, ring, order, offset=0):
        return cls(ring, offset, (), order)

    @classmethod
    def one(cls, ring, order):
        return cls(ring, 0, (ring.one(),), order)

    @classmethod
    def from_terms(cls, ring, terms, order, offset=0):
        """Build from a map of exponents (rationals on the grid) to values."""
        offset = as_fraction(offset)
        cs = {}
        for expo, val in terms.items():
            idx = (as_fraction(expo) - offset) / STEP
            if idx.denominator != 1 or idx < 0:
                raise GridError(f"exponent {expo} is off the grid starting at {offset}")
            if idx >= order:
                raise TruncationError(f"exponent {expo} beyond the truncation window")
            cs[int(idx)] = val
        data = [cs.get(i, ring.zero()) for i in range(order)]
        return cls(ring, offset, data, order)

    # -- structure ------------------------------------------------------

    @property
    def step(self):
        return STEP

    @property
    def end_exponent(self) -> Fraction:
        """First unknown exponent."""
        return self.offset + self.order * STEP

    def exponent(self, k: int) -> Fraction:
        return self.offset + k * STEP

    def terms(self):
        for k, c in enumerate(self.coeffs):
            if not self.ring.is_zero(c):
                yield self.exponent(k), c

    def coefficient(self, expo):
        """Coefficient at an exact exponent; off-grid exponents are zero."""
        expo = as_fraction(expo)
        if expo >= self.end_exponent:
            raise TruncationError(f"coefficient at {expo} is beyond the known window")
        idx = (expo - self.offset) / STEP
        if idx < 0 or idx.denominator != 1:
            return self.ring.zero()
        return self.coeffs[int(idx)]

    def leading_index(self):
        for k, c in enumerate(self.coeffs):
            if not self.ring.is_zero(c):
                return k
        return None

    def is_zero(self) -> bool:
        return self.leading_index() is None

    def __bool__(self):
        return not self.is_zero()

    def normalized(self) -> "QSeries":
        """Move known-zero leading slots into the offset (window end is kept)."""
        k = self.leading_index()
        if k is None:
            return QSeries(self.ring, self.end_exponent, (), 0)
        if k == 0:
            return self
        return QSeries(self.ring, self.exponent(k), self.coeffs[k:], self.order - k)

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        if self.ring != other.ring:
            return False
        a, b = self.normalized(), other.normalized()
        if a.order != b.order or a.offset != b.offset:
            return False
        return all(self.ring.eq(x, y) for x, y in zip(a.coeffs, b.coeffs))

    def __hash__(self):
        raise TypeError("truncated series are not hashable")

    # -- arithmetic -----------------------------------------------------

    def _aligned(self, other):
        check_same_ring(self.ring, other.ring)
        delta = (other.offset - self.offset) / STEP
        if delta.denominator != 1:
            raise GridError(
                f"offsets {self.offset} and {other.offset} do not share a grid"
            )
        return int(delta)

    def __add__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        delta = self._aligned(other)
        offset = min(self.offset, other.offset)
        end = min(self.end_exponent, other.end_exponent)
        order = int((end - offset) / STEP)
        if order < 0:
            order = 0
        zero = self.ring.zero()
        out = [zero] * order
        sh_self = int((self.offset - offset) / STEP)
        sh_other = sh_self + delta
        for k, c in enumerate(self.coeffs):
            if sh_self + k < order:
                out[sh_self + k] = out[sh_self + k] + c
        for k, c in enumerate(other.coeffs):
            if sh_other + k < order:
                out[sh_other + k] = out[sh_other + k] + c
        return QSeries(self.ring, offset, out, order)

    def __neg__(self):
        zero = self.ring.zero()
        return QSeries(self.ring, self.offset, [zero - c for c in self.coeffs], self.order)

    def __sub__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            try:
                scalar = self.ring.coerce(other)
            except (RingMismatchError, SchemaError):
                return NotImplemented
            return QSeries(
                self.ring, self.offset, [c * scalar for c in self.coeffs], self.order
            )
        check_same_ring(self.ring, other.ring)
        order = min(self.order, other.order)
        cs = convolve_trunc(list(self.coeffs), list(other.coeffs), order, self.ring.zero())
        return QSeries(self.ring, self.offset + other.offset, cs, order)

    def __rmul__(self, other):
        return self.__mul__(other)

    def inv(self) -> "QSeries":
        """Multiplicative inverse; the leading coefficient must be a unit."""
        a = self.normalized()
        if a.order == 0:
            raise NonUnitError("cannot invert a series with no known coefficients")
        lead = a.coeffs[0]
        if self.ring.is_zero(lead):
            raise NonUnitError("cannot invert the zero series")
        lead_inv = self.ring.inv(lead)
        cs = series_inv(list(a.coeffs), a.order, lead_inv, self.ring.zero())
        return QSeries(self.ring, -a.offset, cs, a.order)

    def _rebased_integral(self):
        # Shift to offset 0, erroring when the grid cannot reach exponent 0.
        if (self.offset / STEP).denominator != 1:
            raise GridError("offset must sit on the half-integer grid for exp/log")
        shift = int(self.offset / STEP)
        zero = self.ring.zero()
        if shift >= 0:
            return [zero] * shift + list(self.coeffs), self.order + shift
        for k in range(min(-shift, self.order)):
            if not self.ring.is_zero(self.coeffs[k]):
                raise ValueError("series has terms at non-positive exponents")
        return list(self.coeffs[-shift:]), self.order + shift

    def exp(self) -> "QSeries":
        """exp of a series with strictly positive exponents (exact rings only)."""
        if not self.ring.allows_transcendental:
            raise RingMismatchError(f"exp is not defined over the {self.ring.kind} ring")
        a, order = self._rebased_integral()
        if order <= 0:
            return QSeries.one(self.ring, max(order, 0))
        if not self.ring.is_zero(a[0]):
            raise ValueError("exp needs a zero constant term")
        zero = self.ring.zero()
        out = [zero] * order
        out[0] = self.ring.one()
        for k in range(1, order):
            acc = zero
            for j in range(1, k + 1):
                if not self.ring.is_zero(a[j]):
                    acc = acc + (a[j] * j) * out[k - j]
            out[k] = self.ring.div_int(acc, k)
        return QSeries(self.ring, 0, out, order)

    def log(self) -> "QSeries":
        """log of a series with constant term one (exact rings only)."""
        if not self.ring.allows_transcendental:
            raise RingMismatchError(f"log is not defined over the {self.ring.kind} ring")
        a, order = self._rebased_integral()
        if order <= 0:
            raise ValueError("log needs a known constant term")
        if not self.ring.eq(a[0], self.ring.one()):
            raise ValueError("log needs constant term one")
        zero = self.ring.zero()
        out = [zero] * order
        for k in range(1, order):
            acc = zero
            for j in range(1, k):
                if not self.ring.is_zero(out[j]):
                    acc = acc + (out[j] * j) * a[k - j]
            out[k] = a[k] - self.ring.div_int(acc, k)
        return QSeries(self.ring, 0, out, order)

    # -- reshaping ------------------------------------------------------

    def truncated(self, order: int) -> "QSeries":
        if order > self.order:
            raise TruncationError("cannot extend a truncated series")
        return QSeries(self.ring, self.offset, self.coeffs[:order], order)

    def shifted(self, delta) -> "QSeries":
        """Multiply by q**delta."""
        return QSeries(self.ring, self.offset + as_fraction(delta), self.coeffs, self.order)

    def map_coefficients(self, fn, ring: CoefficientRing | None = None) -> "QSeries":
        ring = ring or self.ring
        return QSeries(ring, self.offset, [fn(c) for c in self.coeffs], self.order)

    def alternate_half_signs(self) -> "QSeries":
        """Apply q**(1/2) -> -q**(1/2): negate coefficients at half-integer exponents."""
        out = []
        for k, c in enumerate(self.coeffs):
            e2 = 2 * self.exponent(k)
            if e2.denominator != 1:
                raise GridError("exponents must be half-integral for the sign flip")
            out.append(c if int(e2) % 2 == 0 else self.ring.zero() - c)
        return QSeries(self.ring, self.offset, out, self.order)

    def __repr__(self):
        parts = []
        for expo, c in list(self.terms())[:6]:
            parts.append(f"({c!r})*q^{expo}")
        body = " + ".join(parts) if parts else "0"
        return f"QSeries[{self.ring.kind}]({body} + O(q^{self.end_exponent}))"

    # -- serialization --------------------------------------------------

    def to_json(self) -> dict:
        payload = {
            "offset": fraction_str(self.offset),
            "step": "1/2",
            "order": self.order,
            "coeffs": [self.ring.to_payload(c) for c in self.coeffs],
        }
        payload.update(self.ring.tag())
        return payload

    @classmethod
    def from_json(cls, obj: dict) -> "QSeries":
        try:
            ring = ring_from_tag(obj)
            if obj.get("step", "1/2") != "1/2":
                raise SchemaError("the exponent grid step is fixed at 1/2")
            offset = as_fraction(obj["offset"])
            order = int(obj["order"])
            coeffs = [ring.from_payload(c) for c in obj["coeffs"]]
        except KeyError as exc:
            raise SchemaError(f"series payload is missing {exc}") from exc
        if len(coeffs) != order:
            raise SchemaError("series payload length disagrees with its order")
        return cls(ring, offset, coeffs, order)


def geometric(ring, exponent, value, order) -> QSeries:
    """1/(1 - value*q**exponent) expanded directly on the grid."""
    expo = as_fraction(exponent)
    if expo <= 0:
        raise ValueError("geometric expansion needs a positive exponent")
    idx = expo / STEP
    if idx.denominator != 1:
        raise GridError(f"exponent {exponent} is off the half-integer grid")
    stride = int(idx)
    value = ring.coerce(value)
    zero = ring.zero()
    out = [zero] * order
    acc = ring.one()
    k = 0
    while k < order:
        out[k] = acc
        acc = acc * value
        k += stride
    return QSeries(ring, 0, out, order)
