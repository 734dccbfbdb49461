"""Power operations on virtual bundles and their Chern characters.

A KClass is a formal integer combination of root-pair bundles plus a rank
shift.  Sym/Lambda towers are computed through their character logarithms:
for a line with root a,

    log ch Sym_t = -log(1 - t e^a),   log ch Lambda_t = log(1 + t e^a),

so for a full root-pair bundle E the log series has, at the q-slot i*g of
t = +-q^g, the coefficient +-(1/i) * ch_i(E) where ch_i(E) evaluates every
root at i times its value.  Everything stays exact over GradedPoly
coefficients, and the splitting rule Sym_q(A - B) = Sym_q(A) Lambda_{-q}(B)
is automatic because the log is linear in the class.
"""

from __future__ import annotations

import math
from fractions import Fraction

from genusforge.charclass import BundleRoots, GradedPoly, GradedRing, to_pontryagin
from genusforge.errors import DimensionError
from genusforge.series import STEP, QSeries


class KClass:
    """Virtual bundle: sum of mult * BundleRoots plus an integer shift."""

    __slots__ = ("parts", "shift", "top")

    def __init__(self, parts=(), shift: int = 0, top: int = 0):
        merged = {}
        for bundle, mult in parts:
            if not isinstance(bundle, BundleRoots):
                raise TypeError("KClass parts must be BundleRoots")
            merged[bundle] = merged.get(bundle, 0) + int(mult)
        self.parts = tuple(sorted(
            ((b, m) for b, m in merged.items() if m),
            key=lambda bm: (str(bm[0].name), bm[0].pair_count),
        ))
        self.shift = int(shift)
        self.top = int(top)

    @classmethod
    def bundle(cls, roots: BundleRoots, top: int) -> "KClass":
        return cls(((roots, 1),), 0, top)

    @classmethod
    def constant(cls, shift: int, top: int) -> "KClass":
        return cls((), shift, top)

    @property
    def rank(self) -> int:
        return self.shift + sum(m * b.rank for b, m in self.parts)

    def reduced(self) -> "KClass":
        """Subtract the rank, as in the tower arguments E - rank E."""
        return KClass(self.parts, self.shift - self.rank, self.top)

    def __add__(self, other):
        if not isinstance(other, KClass):
            return NotImplemented
        if other.top != self.top:
            raise DimensionError("mixing truncation degrees")
        return KClass(self.parts + other.parts, self.shift + other.shift, self.top)

    def __neg__(self):
        return KClass(tuple((b, -m) for b, m in self.parts), -self.shift, self.top)

    def __sub__(self, other):
        if not isinstance(other, KClass):
            return NotImplemented
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, KClass):
            return NotImplemented
        return (
            self.parts == other.parts
            and self.shift == other.shift
            and self.top == other.top
        )

    def __hash__(self):
        raise TypeError("KClass is not hashable")

    def caps(self) -> dict:
        return {b.name: b.pair_count for b, m in self.parts}

    def __repr__(self):
        bits = [f"{m}*{b!r}" for b, m in self.parts]
        if self.shift or not bits:
            bits.append(str(self.shift))
        return "KClass(" + " + ".join(bits) + f"; top={self.top})"


def _scaled_power_sum(bundle: BundleRoots, m: int, scale: int, top: int) -> GradedPoly:
    # power sum of the roots scaled by an integer: sum (scale*a_j)^(2m)
    return bundle.power_sum(m, top) * Fraction(scale ** (2 * m))


def ch_scaled(E: KClass, scale: int) -> GradedPoly:
    """ch of E with every root multiplied by the integer scale.

    Per root pair the character is e^(s a) + e^(-s a) = 2 cosh(s a), so the
    degree-4m part is 2 s^(2m) s_m / (2m)!.
    """
    top = E.top
    out = GradedPoly.constant(E.rank, top)
    for bundle, mult in E.parts:
        acc = GradedPoly({}, top)
        for m in range(1, top // 4 + 1):
            term = _scaled_power_sum(bundle, m, scale, top)
            acc = acc + term * Fraction(2, math.factorial(2 * m))
        out = out + acc * mult
    return out


def ch(E: KClass) -> GradedPoly:
    """Chern character of a complexified root-pair class, to E.top."""
    return ch_scaled(E, 1)


def ch_tensor_pair(A: BundleRoots, B: BundleRoots, top: int) -> GradedPoly:
    """ch of the tensor product of two single-pair bundles.

    Characters multiply: (e^a + e^-a)(e^b + e^-b) has root pairs a+b and
    a-b, so the power sums of the product are sums of binomial mixes of
    the factors' power sums.  Only single-pair factors are supported.
    """
    if A.pair_count != 1 or B.pair_count != 1:
        raise DimensionError("tensor characters are implemented for single pairs")
    out = GradedPoly.constant(4, top)
    sa = {m: A.power_sum(m, top) for m in range(1, top // 4 + 1)}
    sb = {m: B.power_sum(m, top) for m in range(1, top // 4 + 1)}
    sa[0] = GradedPoly.constant(1, top)
    sb[0] = GradedPoly.constant(1, top)
    for m in range(1, top // 4 + 1):
        # (a+b)^(2m) + (a-b)^(2m): odd cross terms cancel
        acc = GradedPoly({}, top)
        for k in range(0, m + 1):
            weight = 2 * math.comb(2 * m, 2 * k)
            acc = acc + sa[m - k] * sb[k] * weight
        out = out + acc * Fraction(2, math.factorial(2 * m))
    return out


def _tower_ring(top: int) -> GradedRing:
    return GradedRing(top)


def _grid_slots(exponent: Fraction) -> int:
    idx = exponent / STEP
    if idx.denominator != 1 or idx <= 0:
        raise ValueError(f"tower exponent {exponent} must be a positive grid point")
    return int(idx)


def _log_tower(E: KClass, exponent, order: int, sign: int, exterior: bool) -> QSeries:
    """log ch of Sym_t(E) or Lambda_t(E) at t = sign * q**exponent."""
    ring = _tower_ring(E.top)
    expo = Fraction(exponent)
    stride = _grid_slots(expo)
    zero = ring.zero()
    out = [zero] * order
    i = 1
    while i * stride < order:
        coeff = ch_scaled(E, i) * Fraction(1, i)
        if sign < 0 and i % 2:
            coeff = -coeff
        if exterior and i % 2 == 0:
            coeff = -coeff
        out[i * stride] = coeff
        i += 1
    return QSeries(ring, 0, out, order)


def sym_total(E: KClass, exponent, order: int, sign: int = 1) -> QSeries:
    """ch Sym_t(E) as a q-series over GradedPoly, t = sign*q**exponent."""
    return _log_tower(E, exponent, order, sign, exterior=False).exp()


def lambda_total(E: KClass, exponent, order: int, sign: int = 1) -> QSeries:
    """ch Lambda_t(E) as a q-series over GradedPoly, t = sign*q**exponent."""
    return _log_tower(E, exponent, order, sign, exterior=True).exp()


def witten_element(E: KClass, order: int) -> QSeries:
    """ch of the tensor of Sym_{q^j}(E - rank E) over j >= 1.

    The log of the full tower is the sum of the factor logs; factors whose
    first contribution lies past the truncation order are identically 1.
    """
    red = E.reduced()
    ring = _tower_ring(E.top)
    total = QSeries.zero(ring, order)
    j = 1
    while _grid_slots(Fraction(j)) < order:
        total = total + _log_tower(red, Fraction(j), order, 1, exterior=False)
        j += 1
    return total.exp()


_R_LAMBDA = {
    "R": (Fraction(0), 1),
    "R1": (Fraction(-1, 2), 1),
    "R2": (Fraction(-1, 2), -1),
}


def r_variants(E: KClass, variant: str, order: int) -> QSeries:
    """ch of the twist towers built on E - rank E.

    R  : tensor over m >= 1 of Sym_{q^m} x Lambda_{q^m}
    R1 : Lambda factors at exponent m - 1/2
    R2 : Lambda factors at exponent m - 1/2 with alternating signs
    """
    if variant not in _R_LAMBDA:
        raise ValueError(f"unknown twist variant {variant!r}")
    shift, sign = _R_LAMBDA[variant]
    red = E.reduced()
    ring = _tower_ring(E.top)
    total = QSeries.zero(ring, order)
    m = 1
    while True:
        sym_expo = Fraction(m)
        lam_expo = Fraction(m) + shift
        have_sym = _grid_slots(sym_expo) < order
        have_lam = _grid_slots(lam_expo) < order
        if not have_sym and not have_lam:
            break
        if have_sym:
            total = total + _log_tower(red, sym_expo, order, 1, exterior=False)
        if have_lam:
            total = total + _log_tower(red, lam_expo, order, sign, exterior=True)
        m += 1
    return total.exp()


def series_to_pontryagin(series: QSeries, caps=None) -> QSeries:
    """Rewrite every coefficient's power-sum symbols into Pontryagin classes."""
    return series.map_coefficients(lambda c: to_pontryagin(c, caps=caps))
