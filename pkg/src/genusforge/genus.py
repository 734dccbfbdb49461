"""Index densities and genera for manifolds with a split tangent bundle.

The data is a formal splitting TM = F + Fperp with p and r root pairs and
a table of Pontryagin numbers.  Densities take the shape

    Ahat(F) ch(psi) L(Fperp) ch(phi)

paired against the fundamental class coefficient by coefficient; the
Witten genus and the three twisted genera are specializations with psi
the Witten element of F and phi one of the twist towers of Fperp.
"""

from __future__ import annotations

import warnings
from fractions import Fraction

from genusforge.charclass import (
    BundleRoots,
    CharNumbers,
    GradedPoly,
    GradedRing,
    ahat_factor,
    genus_sequence,
    l_factor,
    pair_fundamental,
)
from genusforge.errors import SchemaError
from genusforge.ktheory import KClass, r_variants, witten_element
from genusforge.rings import RATIONAL
from genusforge.series import QSeries


class IntegralityWarning(UserWarning):
    """An index that should (or cannot be shown to) be an integer."""


def ahat_poly(bundle: BundleRoots, top: int) -> GradedPoly:
    return genus_sequence(ahat_factor(top), top, bundle=bundle.name, pairs=bundle.pair_count)


def l_poly(bundle: BundleRoots, top: int) -> GradedPoly:
    return genus_sequence(l_factor(top), top, bundle=bundle.name, pairs=bundle.pair_count)


class SplitManifoldSpec:
    """Split tangent data: F with p pairs, Fperp with r pairs, numbers."""

    __slots__ = ("dim", "F", "Fperp", "numbers", "F_spin", "M_spin")

    def __init__(self, dim, f_pairs, fperp_pairs, numbers, f_spin=False, m_spin=False):
        self.dim = int(dim)
        p, r = int(f_pairs), int(fperp_pairs)
        if self.dim != 2 * (p + r):
            raise SchemaError(
                f"dimension {self.dim} does not match {p} + {r} root pairs"
            )
        self.F = BundleRoots(p, "F")
        self.Fperp = BundleRoots(r, "Fperp")
        if not isinstance(numbers, CharNumbers):
            numbers = CharNumbers(self.dim, numbers)
        if numbers.dim != self.dim:
            raise SchemaError("characteristic numbers live in the wrong degree")
        for mono in numbers.numbers:
            for (kind, bundle, index), _ in mono:
                if bundle == "F" and index <= p:
                    continue
                if bundle == "Fperp" and index <= r:
                    continue
                tag = f"({bundle})" if bundle else ""
                raise SchemaError(
                    f"number key uses {kind}{index}{tag}, not supported by the splitting"
                )
        self.numbers = numbers
        self.F_spin = bool(f_spin)
        self.M_spin = bool(m_spin)

    @property
    def p(self) -> int:
        return self.F.pair_count

    @property
    def r(self) -> int:
        return self.Fperp.pair_count

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "f_pairs": self.p,
            "fperp_pairs": self.r,
            "numbers": self.numbers.to_json()["numbers"],
            "f_spin": self.F_spin,
            "m_spin": self.M_spin,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SplitManifoldSpec":
        if not isinstance(obj, dict):
            raise SchemaError("split manifold payload must be an object")
        for key in ("dim", "f_pairs", "fperp_pairs", "numbers"):
            if key not in obj:
                raise SchemaError(f"split manifold payload is missing {key!r}")
        return cls(
            obj["dim"],
            obj["f_pairs"],
            obj["fperp_pairs"],
            obj["numbers"],
            obj.get("f_spin", False),
            obj.get("m_spin", False),
        )

    def __repr__(self):
        return (
            f"SplitManifoldSpec(dim={self.dim}, p={self.p}, r={self.r}, "
            f"F_spin={self.F_spin}, M_spin={self.M_spin})"
        )


def _as_density_factor(value, top):
    """Normalize a twist argument: None, GradedPoly, or QSeries of them."""
    if value is None:
        return None
    if isinstance(value, GradedPoly):
        if value.top != top:
            raise SchemaError(f"degree-{value.top} class in a degree-{top} density")
        return value
    if isinstance(value, QSeries):
        if value.ring != GradedRing(top):
            raise SchemaError("density series must have graded coefficients at the right degree")
        return value
    raise SchemaError(f"cannot use {type(value).__name__} as a density factor")


def index_density(spec: SplitManifoldSpec, psi=None, phi=None):
    """Ahat(F) ch(psi) L(Fperp) ch(phi); GradedPoly when both twists are static."""
    top = spec.dim
    base = ahat_poly(spec.F, top) * l_poly(spec.Fperp, top)
    series = None
    for value in (psi, phi):
        value = _as_density_factor(value, top)
        if value is None:
            continue
        if isinstance(value, GradedPoly):
            base = base * value
        else:
            series = value if series is None else series * value
    if series is None:
        return base
    return series.map_coefficients(lambda c: c * base)


def _pair_series(series: QSeries, numbers: CharNumbers) -> QSeries:
    vals = [pair_fundamental(c, numbers) for c in series.coeffs]
    return QSeries(RATIONAL, series.offset, vals, series.order)


def _integrality(values, guaranteed: bool, label: str):
    if not guaranteed:
        warnings.warn(
            f"{label}: integrality is not guaranteed by the spin flags",
            IntegralityWarning,
            stacklevel=3,
        )
        return
    broken = [v for v in values if Fraction(v).denominator != 1]
    if broken:
        warnings.warn(
            f"{label}: expected integers but found {broken[:3]}; "
            "the supplied characteristic numbers are inconsistent with the spin flags",
            IntegralityWarning,
            stacklevel=3,
        )


def subdirac_index(spec: SplitManifoldSpec, psi=None, phi=None):
    """Pair the index density against the fundamental class.

    Returns a rational for static twists, a QSeries of rationals otherwise.
    Integrality is guaranteed by a spin F (the operator exists); with r = 0
    a spin M means the same thing.  Otherwise a warning is attached.
    """
    density = index_density(spec, psi, phi)
    guaranteed = spec.F_spin or (spec.r == 0 and spec.M_spin)
    if isinstance(density, GradedPoly):
        value = pair_fundamental(density, spec.numbers)
        _integrality([value], guaranteed, "subdirac index")
        return value
    out = _pair_series(density, spec.numbers)
    _integrality(list(out.coeffs), guaranteed, "subdirac index")
    return out


def ahat_genus(numbers: CharNumbers) -> Fraction:
    """<Ahat(TM), [M]> for untagged Pontryagin numbers."""
    dim = numbers.dim
    poly = genus_sequence(ahat_factor(dim), dim, bundle=None, pairs=dim // 2)
    return pair_fundamental(poly, numbers)


def l_genus(numbers: CharNumbers) -> Fraction:
    """<L(TM), [M]>, the signature for closed oriented manifolds."""
    dim = numbers.dim
    poly = genus_sequence(l_factor(dim), dim, bundle=None, pairs=dim // 2)
    return pair_fundamental(poly, numbers)


def witten_genus(numbers: CharNumbers, order: int) -> QSeries:
    """<Ahat(TM) ch(Psi_q(TM)), [M]> as a q-series of exact rationals."""
    dim = numbers.dim
    tangent = BundleRoots(dim // 2, None)
    E = KClass.bundle(tangent, dim)
    tower = witten_element(E, order)
    ahat = genus_sequence(ahat_factor(dim), dim, bundle=None, pairs=tangent.pair_count)
    density = tower.map_coefficients(lambda c: c * ahat)
    return _pair_series(density, numbers)


_VARIANTS = ("R", "R1", "R2")


def split_genus(spec: SplitManifoldSpec, variant: str, order: int) -> QSeries:
    """The three twisted genera of the splitting.

    variant R pairs Ahat(F) L(Fperp) ch(Psi_q(F)) ch(R-tower(Fperp));
    variants R1/R2 replace L(Fperp) by Ahat(Fperp), so the base class is
    Ahat(TM), and use the half-grid Lambda towers.
    """
    if variant not in _VARIANTS:
        raise ValueError(f"unknown twist variant {variant!r}")
    top = spec.dim
    psi = witten_element(KClass.bundle(spec.F, top), order)
    twist = r_variants(KClass.bundle(spec.Fperp, top), variant, order)
    if variant == "R":
        base = ahat_poly(spec.F, top) * l_poly(spec.Fperp, top)
    else:
        base = ahat_poly(spec.F, top) * ahat_poly(spec.Fperp, top)
    density = (psi * twist).map_coefficients(lambda c: c * base)
    return _pair_series(density, spec.numbers)
