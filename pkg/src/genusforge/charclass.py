"""Pontryagin-class calculus for even-rank real bundles.

Bundles enter through formal root pairs +-a_j with p(E) = prod(1 + a_j^2),
so p_i is the i-th elementary symmetric polynomial in the squares a_j^2
and carries cohomological degree 4i.  Multiplicative sequences are built
in the power-sum basis (log of the factor series, one power sum per even
moment) and rewritten in the p_i via the Newton identities.

Roots are normalized so that no 2*pi*i factors appear anywhere: every
density produced here is an exact rational polynomial.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from genusforge._kernels import convolve_trunc, series_inv
from genusforge.errors import (
    DimensionError,
    MissingNumberError,
    SchemaError,
)
from genusforge.rings import CoefficientRing, as_fraction, fraction_str

_Q0 = Fraction(0)
_Q1 = Fraction(1)


# ---------------------------------------------------------------------------
# graded polynomials


def _sym(kind: str, bundle, index: int):
    return (kind, bundle, index)


def _sym_degree(sym) -> int:
    return 4 * sym[2]


def _mono_degree(mono) -> int:
    return sum(_sym_degree(s) * e for s, e in mono)


def _mono_mul(m1, m2):
    d = dict(m1)
    for s, e in m2:
        d[s] = d.get(s, 0) + e
    return tuple(sorted(d.items()))


def _sym_str(sym) -> str:
    kind, bundle, index = sym
    if bundle is None:
        return f"{kind}{index}"
    return f"{kind}{index}({bundle})"


def mono_str(mono) -> str:
    if not mono:
        return "1"
    bits = []
    for s, e in mono:
        bits.append(_sym_str(s) if e == 1 else f"{_sym_str(s)}^{e}")
    return "*".join(bits)


_FACTOR_RE = re.compile(r"^([ps])(\d+)(?:\(([^)]+)\))?(?:\^(\d+))?$")


def parse_monomial(text: str):
    """Parse 'p1', 'p1(F)^2*p2(Fperp)' or '1' into the internal key."""
    text = text.strip()
    if text == "1":
        return ()
    factors = {}
    for chunk in text.split("*"):
        m = _FACTOR_RE.match(chunk.strip())
        if not m:
            raise SchemaError(f"cannot parse monomial factor {chunk!r}")
        kind, index, bundle, power = m.groups()
        index = int(index)
        if index < 1:
            raise SchemaError(f"symbol index must be positive in {chunk!r}")
        sym = _sym(kind, bundle, index)
        factors[sym] = factors.get(sym, 0) + (int(power) if power else 1)
    return tuple(sorted(factors.items()))


class GradedPoly:
    """Polynomial in graded symbols with exact rational coefficients.

    Terms of cohomological degree above top_degree are dropped on every
    operation, which makes the ring nilpotent and exp/log finite.
    """

    __slots__ = ("terms", "top")

    def __init__(self, terms=None, top: int = 0):
        self.top = int(top)
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = as_fraction(coeff)
                if coeff and _mono_degree(mono) <= self.top:
                    clean[mono] = clean.get(mono, _Q0) + coeff
        self.terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def constant(cls, value, top):
        return cls({(): as_fraction(value)}, top)

    @classmethod
    def generator(cls, kind, bundle, index, top, coeff=1):
        return cls({((_sym(kind, bundle, index), 1),): as_fraction(coeff)}, top)

    def degree_part(self, degree: int) -> "GradedPoly":
        return GradedPoly(
            {m: c for m, c in self.terms.items() if _mono_degree(m) == degree}, self.top
        )

    def constant_part(self) -> Fraction:
        return self.terms.get((), _Q0)

    def symbols(self):
        out = set()
        for mono in self.terms:
            for s, _ in mono:
                out.add(s)
        return out

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GradedPoly.constant(other, self.top)
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        raise TypeError("graded polynomials are not hashable")

    def __neg__(self):
        return GradedPoly({m: -c for m, c in self.terms.items()}, self.top)

    def _coerced(self, other):
        if isinstance(other, (int, Fraction)):
            return GradedPoly.constant(other, self.top)
        if isinstance(other, GradedPoly):
            if other.top != self.top:
                raise DimensionError(
                    f"mixing truncation degrees {self.top} and {other.top}"
                )
            return other
        return None

    def __add__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, _Q0) + c
        return GradedPoly(out, self.top)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = as_fraction(other)
            return GradedPoly({m: c * q for m, c in self.terms.items()}, self.top)
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        out = {}
        for m1, c1 in self.terms.items():
            d1 = _mono_degree(m1)
            for m2, c2 in other.terms.items():
                if d1 + _mono_degree(m2) > self.top:
                    continue
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, _Q0) + c1 * c2
        return GradedPoly(out, self.top)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined here")
        out = GradedPoly.constant(1, self.top)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def substitute(self, mapping) -> "GradedPoly":
        """Replace symbols via mapping[sym] -> GradedPoly; others are kept."""
        out = GradedPoly({}, self.top)
        for mono, coeff in self.terms.items():
            piece = GradedPoly.constant(coeff, self.top)
            for s, e in mono:
                rep = mapping.get(s)
                if rep is None:
                    rep = GradedPoly.generator(s[0], s[1], s[2], self.top)
                piece = piece * rep**e
            out = out + piece
        return out

    def to_strings(self) -> dict:
        return {mono_str(m): fraction_str(c) for m, c in sorted(self.terms.items())}

    def __repr__(self):
        if not self.terms:
            return "GradedPoly(0)"
        bits = [f"{c}*{mono_str(m)}" for m, c in sorted(self.terms.items())]
        return "GradedPoly(" + " + ".join(bits) + f"; top={self.top})"


class BundleRoots:
    """Even-rank real bundle presented by formal root pairs +-a_j.

    pair_count is the number of pairs, so the real rank is 2*pair_count.
    name tags the bundle's symbols (p1(F), s2(F), ...); None is the bare
    p1, p2, ... family used for a tangent bundle.
    """

    __slots__ = ("pair_count", "name")

    def __init__(self, pair_count: int, name=None):
        self.pair_count = int(pair_count)
        if self.pair_count < 0:
            raise DimensionError("pair count cannot be negative")
        self.name = name

    @property
    def rank(self) -> int:
        return 2 * self.pair_count

    def pontryagin(self, i: int, top: int) -> GradedPoly:
        """p_i of this bundle; vanishes above the pair count."""
        if i > self.pair_count:
            return GradedPoly({}, top)
        return GradedPoly.generator("p", self.name, i, top)

    def power_sum(self, m: int, top: int) -> GradedPoly:
        return power_sum_in_pontryagin(m, self.name, top, pairs=self.pair_count)

    def __eq__(self, other):
        if not isinstance(other, BundleRoots):
            return NotImplemented
        return self.pair_count == other.pair_count and self.name == other.name

    def __hash__(self):
        return hash((BundleRoots, self.pair_count, self.name))

    def __repr__(self):
        tag = "" if self.name is None else f", {self.name!r}"
        return f"BundleRoots({self.pair_count}{tag})"


class GradedRing(CoefficientRing):
    """Coefficient ring of GradedPoly values for series with class coefficients.

    Not part of the serializable ring set; used internally by the power
    operations and the genus pipeline.
    """

    kind = "graded"
    allows_transcendental = True

    def __init__(self, top: int):
        self.top = int(top)

    def zero(self):
        return GradedPoly({}, self.top)

    def one(self):
        return GradedPoly.constant(1, self.top)

    def coerce(self, value):
        if isinstance(value, GradedPoly):
            if value.top != self.top:
                raise DimensionError(
                    f"polynomial truncated at {value.top} in a degree-{self.top} ring"
                )
            return value
        return GradedPoly.constant(as_fraction(value), self.top)

    def inv(self, x):
        x = self.coerce(x)
        c0 = x.constant_part()
        if not c0:
            raise ValueError("graded polynomial with zero constant term is not a unit")
        # geometric series in the nilpotent part, finite by degree truncation
        nil = x - c0
        out = GradedPoly.constant(1 / c0, self.top)
        if not nil:
            return out
        power = GradedPoly.constant(1, self.top)
        acc = out
        for k in range(1, self.top // 4 + 1):
            power = power * nil
            if not power:
                break
            acc = acc + power * ((-1) ** k * (1 / c0) ** (k + 1))
        return acc

    def div_int(self, x, n):
        return x * Fraction(1, n)

    def __eq__(self, other):
        return type(self) is type(other) and self.top == other.top

    def __hash__(self):
        return hash((type(self), self.top))


# ---------------------------------------------------------------------------
# one-variable exact series (coefficient lists over powers of the root a)


def ser_mul(a, b, n):
    return convolve_trunc(list(a), list(b), n, _Q0)


def ser_inv(a, n):
    if not a or not a[0]:
        raise ValueError("series inversion needs a unit constant term")
    return series_inv(list(a), n, 1 / a[0], _Q0)


def ahat_factor(top_degree: int):
    """Taylor coefficients of (a/2)/sinh(a/2) up to a**(top_degree//2)."""
    n = top_degree // 2 + 1
    # sinh(a/2)/(a/2) = sum a^(2m) / (4^m (2m+1)!)
    den = [_Q0] * n
    for m in range(0, (n + 1) // 2):
        if 2 * m < n:
            den[2 * m] = Fraction(1, 4**m * math.factorial(2 * m + 1))
    return ser_inv(den, n)


def l_factor(top_degree: int):
    """Taylor coefficients of a/tanh(a) up to a**(top_degree//2)."""
    n = top_degree // 2 + 1
    cosh = [_Q0] * n
    sinh_over_a = [_Q0] * n
    for m in range(0, (n + 1) // 2):
        if 2 * m < n:
            cosh[2 * m] = Fraction(1, math.factorial(2 * m))
            sinh_over_a[2 * m] = Fraction(1, math.factorial(2 * m + 1))
    return ser_mul(cosh, ser_inv(sinh_over_a, n), n)


def _even_to_moment_log(factor, top_degree: int):
    """log f as coefficients c_m of a^(2m), m >= 1; f must be even, f(0)=1."""
    n_a = top_degree // 2 + 1
    f = [as_fraction(c) for c in factor]
    if len(f) < n_a:
        raise DimensionError(
            f"factor series known to a^{len(f) - 1} but degree {top_degree} needs a^{n_a - 1}"
        )
    f = f[:n_a]
    if f[0] != 1:
        raise ValueError("factor series must have constant term 1")
    for k in range(1, len(f), 2):
        if f[k]:
            raise ValueError("factor series must be even in the root variable")
    # view as series g(u) with u = a^2, then log g termwise
    g = [f[2 * m] for m in range(0, (len(f) + 1) // 2)]
    n = len(g)
    out = [_Q0] * n
    for k in range(1, n):
        acc = _Q0
        for j in range(1, k):
            acc += j * out[j] * g[k - j]
        out[k] = g[k] - acc / k
    return out  # out[m] multiplies a^(2m)


# ---------------------------------------------------------------------------
# Newton identities


def power_sums(elementary):
    """Power sums s_1..s_k from elementary symmetric values e_1..e_k.

    Entries may be rationals or GradedPoly; the Newton recursion
    s_k = e_1 s_(k-1) - e_2 s_(k-2) + ... + (-1)^(k-1) k e_k needs +,*
    and integer scaling only.
    """
    e = list(elementary)
    s = []
    for k in range(1, len(e) + 1):
        acc = e[k - 1] * ((-1) ** (k - 1) * k)
        for i in range(1, k):
            term = e[i - 1] * s[k - i - 1]
            acc = acc + term * ((-1) ** (i - 1))
        s.append(acc)
    return s


def elementary_from_power_sums(sums):
    """Inverse of power_sums: e_k = (1/k) sum_(i=1..k) (-1)^(i-1) e_(k-i) s_i."""
    s = list(sums)
    e = []
    for k in range(1, len(s) + 1):
        acc = s[k - 1] * ((-1) ** (k - 1))
        for i in range(1, k):
            acc = acc + e[k - i - 1] * s[i - 1] * ((-1) ** (i - 1))
        e.append(acc * Fraction(1, k))
    return e


def power_sum_in_pontryagin(m: int, bundle, top: int, pairs=None) -> GradedPoly:
    """s_m (power sum of squared roots) as a polynomial in p_1..p_m.

    When the bundle has only `pairs` root pairs, e_i = 0 for i > pairs and
    the Newton recursion folds s_m back onto the low p_i.
    """
    e = []
    for i in range(1, m + 1):
        if pairs is not None and i > pairs:
            e.append(GradedPoly({}, top))
        else:
            e.append(GradedPoly.generator("p", bundle, i, top))
    return power_sums(e)[m - 1]


def to_pontryagin(poly: GradedPoly, caps=None) -> GradedPoly:
    """Rewrite every power-sum symbol via the Newton identities.

    caps maps a bundle name to its root-pair count; bundles listed there
    have p_i = 0 imposed above that count.
    """
    mapping = {}
    for s in poly.symbols():
        if s[0] == "s":
            pairs = None if caps is None else caps.get(s[1])
            mapping[s] = power_sum_in_pontryagin(s[2], s[1], poly.top, pairs=pairs)
    if not mapping:
        return poly
    return poly.substitute(mapping)


# ---------------------------------------------------------------------------
# multiplicative sequences


def genus_sequence(factor, top_degree: int, bundle=None, pairs=None) -> GradedPoly:
    """Multiplicative sequence of an even factor series f with f(0) = 1.

    Returns the universal polynomial in p_i(bundle) of degree <= top_degree
    equal to prod_j f(a_j) after symmetric reduction.  Computed as
    exp(sum_m c_m s_m) with c_m the moments of log f, then converted to
    the p_i basis.  A finite pair count truncates the p_i accordingly.
    """
    moments = _even_to_moment_log(factor, top_degree)
    acc = GradedPoly({}, top_degree)
    for m in range(1, len(moments)):
        if moments[m] and 4 * m <= top_degree:
            acc = acc + GradedPoly.generator("s", bundle, m, top_degree, moments[m])
    # exp in the nilpotent graded ring
    out = GradedPoly.constant(1, top_degree)
    power = GradedPoly.constant(1, top_degree)
    for k in range(1, top_degree // 4 + 1):
        power = power * acc
        if not power:
            break
        out = out + power * Fraction(1, math.factorial(k))
    caps = None if pairs is None else {bundle: pairs}
    return to_pontryagin(out, caps=caps)


# ---------------------------------------------------------------------------
# characteristic numbers


class CharNumbers:
    """Top-degree Pontryagin numbers of a closed oriented manifold.

    numbers maps monomial keys of cohomological degree == dim to exact
    rationals.  A pairing that needs a missing monomial is an error, not
    an implicit zero.
    """

    def __init__(self, dim: int, numbers, spin: bool | None = None):
        self.dim = int(dim)
        if self.dim < 0:
            raise DimensionError("negative dimension")
        self.spin = spin
        self.numbers = {}
        for key, val in numbers.items():
            mono = parse_monomial(key) if isinstance(key, str) else key
            deg = _mono_degree(mono)
            if deg != self.dim:
                raise DimensionError(
                    f"monomial {mono_str(mono)} has degree {deg}, expected {self.dim}"
                )
            for s, _ in mono:
                if s[0] != "p":
                    raise SchemaError("characteristic numbers are indexed by p-monomials")
            self.numbers[mono] = as_fraction(val)

    def __getitem__(self, mono) -> Fraction:
        if isinstance(mono, str):
            mono = parse_monomial(mono)
        try:
            return self.numbers[mono]
        except KeyError:
            raise MissingNumberError(
                f"characteristic number {mono_str(mono)} was not supplied"
            ) from None

    def __contains__(self, mono):
        if isinstance(mono, str):
            mono = parse_monomial(mono)
        return mono in self.numbers

    def to_json(self) -> dict:
        out = {
            "dim": self.dim,
            "numbers": {mono_str(m): fraction_str(c) for m, c in sorted(self.numbers.items())},
        }
        if self.spin is not None:
            out["spin"] = self.spin
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "CharNumbers":
        if not isinstance(obj, dict) or "dim" not in obj or "numbers" not in obj:
            raise SchemaError("characteristic numbers need 'dim' and 'numbers'")
        return cls(obj["dim"], obj["numbers"], obj.get("spin"))

    def __repr__(self):
        return f"CharNumbers(dim={self.dim}, {self.to_json()['numbers']})"


def pair_fundamental(density: GradedPoly, numbers: CharNumbers) -> Fraction:
    """Evaluate <density, [M]>: the top-degree part against the numbers."""
    if density.top != numbers.dim:
        raise DimensionError(
            f"density truncated at degree {density.top}, manifold dimension {numbers.dim}"
        )
    acc = _Q0
    for mono, coeff in density.terms.items():
        if _mono_degree(mono) != numbers.dim:
            continue
        acc += coeff * numbers[mono]
    return acc
