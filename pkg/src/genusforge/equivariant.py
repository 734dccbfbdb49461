"""Localization of the split genera at the fixed locus of a circle action.

A model lists fixed components.  Each component carries a static block of
F and Fperp root pairs with its own characteristic numbers, plus moving
blocks that rotate with nonzero integer speeds.  The genus functions are
assembled per component as (static split density paired with the numbers)
times one theta quotient per moving block:

    moving F, speed m:      theta'(0) / (2 pi i theta(m t))
    moving Fperp, speed n:  theta'(0) theta_kind(n t) / (2 pi i theta(n t) theta_kind(0))

where theta_kind follows the variant (G: theta1 doubled by the cos(0)
convention, G1: theta2, G2: theta3).  H is the foliated-mode function: the
same assembly with the G static parts and no moving Fperp blocks.

Everything exists twice: an exact q-expansion with Laurent coefficients
in w = e^(pi i t) (an ExactSeries, a series numerator over a q-free
denominator), and a numeric evaluator at a point (t, tau).  The slash
action and lattice shifts give numeric Jacobi-law residual reports.

Moving blocks over a positive-dimensional component would need the
expansion of the theta quotients in the roots of that block; both paths
support such a component only when its numbers all vanish (the cross
terms then pair to zero) and refuse it otherwise.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

from genusforge.charclass import BundleRoots, CharNumbers, pair_fundamental
from genusforge.errors import PoleError, SchemaError
from genusforge.genus import ahat_poly, l_poly
from genusforge.ktheory import KClass, r_variants, witten_element
from genusforge.rings import LAURENT, RATIONAL, LaurentZ, fraction_str, as_fraction
from genusforge.series import QSeries
from genusforge.theta import (
    THETA,
    THETA1,
    THETA2,
    THETA3,
    euler_product,
    theta_eval,
    theta_prime0,
    theta_qseries,
)

POLE_TOL = 1e-8

# moving-Fperp theta kind and static Fperp twist tower per variant; the
# doubled G line absorbs the value 2 of the cos factor of theta1 at 0
_VARIANT_THETA = {"G": THETA1, "G1": THETA2, "G2": THETA3}
_VARIANT_TWIST = {"G": "R", "G1": "R2", "G2": "R1"}
_VARIANT_SUBGROUP = {"H": "sl2z", "G": "gamma0_2", "G1": "gamma_upper0_2", "G2": "gamma_theta"}


# ---------------------------------------------------------------------------
# the modular side: integer 2x2 matrices, congruence subgroups, form metadata


def mat_mul(A, B):
    (a, b), (c, d) = A
    (e, f), (g, h) = B
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def _check_matrix(mat):
    try:
        (a, b), (c, d) = mat
    except (TypeError, ValueError):
        raise SchemaError("a group element is a 2x2 integer matrix") from None
    for x in (a, b, c, d):
        if x != int(x):
            raise SchemaError("matrix entries must be integers")
    if a * d - b * c != 1:
        raise SchemaError("matrix must have determinant 1")
    return (int(a), int(b)), (int(c), int(d))


MAT_S = ((0, -1), (1, 0))
MAT_T = ((1, 1), (0, 1))

GENERATORS = {
    "sl2z": (MAT_S, MAT_T),
    "gamma0_2": (MAT_T, ((1, 0), (2, 1))),
    "gamma_upper0_2": (((1, 2), (0, 1)), ((1, 0), (1, 1))),
    "gamma_theta": (MAT_S, ((1, 2), (0, 1))),
}


def subgroup_member(name, mat) -> bool:
    """Membership in the level-2 congruence subgroups, by residues mod 2."""
    (a, b), (c, d) = _check_matrix(mat)
    if name == "sl2z":
        return True
    if name == "gamma0_2":
        return c % 2 == 0
    if name == "gamma_upper0_2":
        return b % 2 == 0
    if name == "gamma_theta":
        return (a % 2, b % 2, c % 2, d % 2) in ((1, 0, 0, 1), (0, 1, 1, 0))
    raise SchemaError(f"unknown subgroup {name!r}")


class JacobiFormMeta:
    """Weight, index, and invariance group of a genus function.

    The lattice field scales the elliptic shifts: 2 means the function
    transforms under t -> t + 2a tau + 2b for integers a, b.
    """

    __slots__ = ("weight", "index", "subgroup", "lattice")

    def __init__(self, weight, index, subgroup, lattice=2):
        self.weight = int(weight)
        self.index = as_fraction(index)
        if subgroup not in GENERATORS:
            raise SchemaError(f"unknown subgroup {subgroup!r}")
        self.subgroup = subgroup
        self.lattice = int(lattice)

    def to_json(self) -> dict:
        return {
            "weight": self.weight,
            "index": fraction_str(self.index),
            "subgroup": self.subgroup,
            "lattice": self.lattice,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "JacobiFormMeta":
        if not isinstance(obj, dict):
            raise SchemaError("form metadata must be an object")
        for key in ("weight", "index", "subgroup"):
            if key not in obj:
                raise SchemaError(f"form metadata is missing {key!r}")
        return cls(obj["weight"], Fraction(obj["index"]), obj["subgroup"], obj.get("lattice", 2))

    def __repr__(self):
        return (
            f"JacobiFormMeta(weight={self.weight}, index={self.index}, "
            f"subgroup={self.subgroup!r}, lattice={self.lattice})"
        )


# ---------------------------------------------------------------------------
# models


def _moving_list(blocks, speed_key):
    out = []
    for entry in blocks or ():
        if isinstance(entry, dict):
            rank, speed = entry.get("rank", 1), entry.get(speed_key)
        else:
            rank, speed = entry
        if speed is None or int(speed) == 0:
            raise SchemaError("moving blocks need a nonzero integer speed")
        if int(rank) < 1:
            raise SchemaError("moving blocks need a positive pair count")
        out.append((int(rank), int(speed)))
    return tuple(out)


class FixedComponent:
    """One component of the fixed locus."""

    __slots__ = (
        "dim", "orientation", "f0_pairs", "fperp0_pairs",
        "moving_f", "moving_fperp", "numbers",
    )

    def __init__(self, dim, orientation, f0_pairs, fperp0_pairs,
                 moving_f=(), moving_fperp=(), numbers=None):
        self.dim = int(dim)
        if self.dim < 0 or self.dim % 2:
            raise SchemaError("component dimension must be even and nonnegative")
        if orientation not in (1, -1):
            raise SchemaError("orientation must be +1 or -1")
        self.orientation = int(orientation)
        self.f0_pairs = int(f0_pairs)
        self.fperp0_pairs = int(fperp0_pairs)
        if self.f0_pairs < 0 or self.fperp0_pairs < 0:
            raise SchemaError("static pair counts cannot be negative")
        if 2 * (self.f0_pairs + self.fperp0_pairs) != self.dim:
            raise SchemaError(
                f"static pairs {self.f0_pairs}+{self.fperp0_pairs} do not fill dimension {self.dim}"
            )
        self.moving_f = _moving_list(moving_f, "m")
        self.moving_fperp = _moving_list(moving_fperp, "n")
        if not isinstance(numbers, CharNumbers):
            numbers = CharNumbers(self.dim, numbers or {})
        if numbers.dim != self.dim:
            raise SchemaError("component numbers live in the wrong degree")
        for mono in numbers.numbers:
            for (kind, bundle, index), _ in mono:
                cap = {"F": self.f0_pairs, "Fperp": self.fperp0_pairs}.get(bundle, -1)
                if index > cap:
                    tag = f"({bundle})" if bundle else ""
                    raise SchemaError(f"number key {kind}{index}{tag} exceeds the static block")
        self.numbers = numbers

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "orientation": self.orientation,
            "f0_pairs": self.f0_pairs,
            "fperp0_pairs": self.fperp0_pairs,
            "moving_f": [{"rank": k, "m": m} for k, m in self.moving_f],
            "moving_fperp": [{"rank": k, "n": n} for k, n in self.moving_fperp],
            "numbers": self.numbers.to_json()["numbers"],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "FixedComponent":
        if not isinstance(obj, dict):
            raise SchemaError("fixed component payload must be an object")
        for key in ("dim", "orientation"):
            if key not in obj:
                raise SchemaError(f"fixed component payload is missing {key!r}")
        return cls(
            obj["dim"],
            obj["orientation"],
            obj.get("f0_pairs", 0),
            obj.get("fperp0_pairs", 0),
            obj.get("moving_f", ()),
            obj.get("moving_fperp", ()),
            obj.get("numbers", {}),
        )


class EquivariantModel:
    """Fixed-locus data of a circle action in foliated or split mode."""

    __slots__ = ("mode", "p", "r", "l", "components")

    def __init__(self, mode, p, r, l, components):
        if mode not in ("foliated", "split"):
            raise SchemaError(f"unknown mode {mode!r}")
        self.mode = mode
        self.p, self.r, self.l = int(p), int(r), int(l)
        if self.p < 0 or self.r < 0 or self.l < 0:
            raise SchemaError("pair counts cannot be negative")
        comps = []
        for comp in components:
            if not isinstance(comp, FixedComponent):
                comp = FixedComponent.from_json(comp)
            comps.append(comp)
        if not comps:
            raise SchemaError("a model needs at least one fixed component")
        for comp in comps:
            if comp.f0_pairs + sum(k for k, _ in comp.moving_f) != self.p:
                raise SchemaError("F pairs of a component do not sum to p")
            if comp.fperp0_pairs + sum(k for k, _ in comp.moving_fperp) != self.r:
                raise SchemaError("Fperp pairs of a component do not sum to r")
            if self.mode == "foliated" and comp.moving_fperp:
                raise SchemaError("foliated mode keeps every Fperp direction static")
        self.components = tuple(comps)

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "p": self.p,
            "r": self.r,
            "l": self.l,
            "components": [comp.to_json() for comp in self.components],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "EquivariantModel":
        if not isinstance(obj, dict):
            raise SchemaError("model payload must be an object")
        for key in ("mode", "p", "r", "components"):
            if key not in obj:
                raise SchemaError(f"model payload is missing {key!r}")
        return cls(obj["mode"], obj["p"], obj["r"], obj.get("l", 0), obj["components"])

    def speeds(self):
        out = set()
        for comp in self.components:
            out.update(m for _, m in comp.moving_f)
            out.update(n for _, n in comp.moving_fperp)
        return sorted(out)


def anomaly_check(model: EquivariantModel) -> int:
    """The anomaly sum(rank * m^2) over moving F blocks, per component.

    Every component must report the same value; that shared value is
    twice the negated index of the genus functions.
    """
    values = {
        sum(k * m * m for k, m in comp.moving_f) for comp in model.components
    }
    if len(values) != 1:
        raise SchemaError(f"components disagree on the anomaly: {sorted(values)}")
    return values.pop()


def form_meta(model: EquivariantModel, function: str = "H") -> JacobiFormMeta:
    """Expected transformation data: weight p + r - l, index -n/2."""
    if function not in _VARIANT_SUBGROUP:
        raise SchemaError(f"unknown genus function {function!r}")
    n = anomaly_check(model)
    return JacobiFormMeta(
        model.p + model.r - model.l,
        Fraction(-n, 2),
        _VARIANT_SUBGROUP[function],
    )


# ---------------------------------------------------------------------------
# static densities


def _check_root_free(comp: FixedComponent):
    moving = comp.moving_f or comp.moving_fperp
    if comp.dim > 0 and moving and any(comp.numbers.numbers.values()):
        raise SchemaError(
            "moving blocks over a positive-dimensional component need vanishing numbers"
        )


def _static_series(comp: FixedComponent, variant: str, order: int) -> QSeries:
    """The paired static density as a q-series of rationals."""
    top = comp.dim
    front = BundleRoots(comp.f0_pairs, "F")
    back = BundleRoots(comp.fperp0_pairs, "Fperp")
    psi = witten_element(KClass.bundle(front, top), order)
    twist = r_variants(KClass.bundle(back, top), _VARIANT_TWIST[variant], order)
    if variant == "G":
        base = ahat_poly(front, top) * l_poly(back, top)
    else:
        base = ahat_poly(front, top) * ahat_poly(back, top)
    density = (psi * twist).map_coefficients(lambda c: c * base)
    vals = [pair_fundamental(c, comp.numbers) for c in density.coeffs]
    return QSeries(RATIONAL, density.offset, vals, density.order)


# ---------------------------------------------------------------------------
# exact expansions: Laurent coefficients in w = e^(pi i t)


class ExactSeries:
    """A q-series with Laurent numerator over a q-free Laurent denominator.

    Coefficients are Laurent polynomials in w = e^(pi i t); the moving
    blocks contribute denominators (w^m - w^-m) that stay unexpanded.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: QSeries, den: LaurentZ):
        if num.ring != LAURENT:
            raise SchemaError("exact series need Laurent coefficients")
        if LAURENT.is_zero(den):
            raise ZeroDivisionError("denominator of an exact series is zero")
        self.num = num
        self.den = den

    @property
    def order(self):
        return self.num.order

    def __add__(self, other):
        if not isinstance(other, ExactSeries):
            return NotImplemented
        if self.den == other.den:
            return ExactSeries(self.num + other.num, self.den)
        return ExactSeries(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self):
        return ExactSeries(-self.num, self.den)

    def __sub__(self, other):
        out = self + (-other)
        return out

    def __mul__(self, other):
        if isinstance(other, ExactSeries):
            return ExactSeries(self.num * other.num, self.den * other.den)
        return ExactSeries(self.num * other, self.den)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def coefficient(self, expo):
        """Numerator coefficient at a q-exponent; divide by den to read it."""
        return self.num.coefficient(expo)

    def __eq__(self, other):
        if not isinstance(other, ExactSeries):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def eval(self, t, tau) -> complex:
        """Numeric value: truncation error is of the size of the first
        dropped q-power."""
        w = cmath.exp(1j * math.pi * complex(t))
        den = complex(self.den(w))
        acc = 0j
        for expo, coeff in self.num.terms():
            acc += complex(coeff(w)) * _qpow(tau, expo)
        return acc / den

    def __repr__(self):
        return f"ExactSeries(order={self.num.order}, den={self.den!r})"


def _body_at(kind, order: int, zpow: int) -> QSeries:
    """Theta product body with z substituted by z^zpow."""
    body = theta_qseries(kind, order).body
    return body.map_coefficients(lambda c: c.subst_pow(zpow))


def _w_block(m: int, order: int) -> ExactSeries:
    """theta'(0) / (2 pi i theta(m t)) expanded in q, exactly:
    c(q)^2 / ((w^m - w^-m) body_theta(w^2m))."""
    cq = euler_product(order, LAURENT)
    num = (cq * cq) * _body_at(THETA, order, 2 * m).inv()
    den = LaurentZ.from_dict({m: 1, -m: -1})
    return ExactSeries(num, den)


def _v_block(variant: str, n: int, order: int) -> ExactSeries:
    """The moving Fperp quotient for a variant, expanded in q."""
    kind = _VARIANT_THETA[variant]
    cq = euler_product(order, LAURENT)
    num = (cq * cq) * _body_at(kind, order, 2 * n)
    num = num * _body_at(THETA, order, 2 * n).inv()
    num = num * _body_at(kind, order, 0).inv()
    if variant == "G":
        num = num * LaurentZ.from_dict({n: 1, -n: 1})
    den = LaurentZ.from_dict({n: 1, -n: -1})
    return ExactSeries(num, den)


def _component_series(comp: FixedComponent, variant: str, order: int) -> ExactSeries:
    _check_root_free(comp)
    static = _static_series(comp, variant, order)
    num = static.map_coefficients(lambda c: LaurentZ.monomial(0, c), ring=LAURENT)
    if comp.orientation < 0:
        num = -num
    out = ExactSeries(num, LaurentZ.monomial(0))
    for rank, m in comp.moving_f:
        block = _w_block(m, order)
        for _ in range(rank):
            out = out * block
    for rank, n in comp.moving_fperp:
        block = _v_block(variant, n, order)
        for _ in range(rank):
            out = out * block
    return out


def h_series(model: EquivariantModel, order: int) -> ExactSeries:
    """Exact q-expansion of the foliated genus function H."""
    if model.mode != "foliated":
        raise SchemaError("H is the foliated-mode function")
    return _sum_components(model, "G", order)


def g_series(model: EquivariantModel, variant: str, order: int) -> ExactSeries:
    """Exact q-expansion of a split-mode genus function G, G1, or G2."""
    if model.mode != "split":
        raise SchemaError("G functions belong to split mode")
    if variant not in _VARIANT_THETA:
        raise SchemaError(f"unknown variant {variant!r}")
    return _sum_components(model, variant, order)


def _sum_components(model, variant, order):
    total = None
    for comp in model.components:
        term = _component_series(comp, variant, order)
        total = term if total is None else total + term
    return total


# ---------------------------------------------------------------------------
# numeric evaluation


def _qpow(tau, expo) -> complex:
    return cmath.exp(2j * math.pi * complex(tau) * float(expo))


def check_poles(model: EquivariantModel, t):
    """Reject t with any speed s t within POLE_TOL of an integer."""
    tc = complex(t)
    for s in model.speeds():
        x = s * tc
        if abs(x - round(x.real)) < POLE_TOL:
            raise PoleError(f"speed {s} puts {s}*t = {x:.12g} on a pole")


def _static_value(comp, variant, order, tau) -> complex:
    acc = 0j
    for expo, coeff in _static_series(comp, variant, order).terms():
        acc += float(coeff) * _qpow(tau, expo)
    return acc


def _w_eval(m, t, tau, tol) -> complex:
    return theta_prime0(tau, tol) / (2j * math.pi * theta_eval(THETA, m * t, tau, tol))


def _v_eval(variant, n, t, tau, tol) -> complex:
    kind = _VARIANT_THETA[variant]
    val = theta_prime0(tau, tol) * theta_eval(kind, n * t, tau, tol)
    val /= 2j * math.pi * theta_eval(THETA, n * t, tau, tol) * theta_eval(kind, 0.0, tau, tol)
    if variant == "G":
        val *= 2
    return val


def _eval_components(model, variant, t, tau, order, tol):
    check_poles(model, t)
    total = 0j
    for comp in model.components:
        _check_root_free(comp)
        val = comp.orientation * _static_value(comp, variant, order, tau)
        for rank, m in comp.moving_f:
            val *= _w_eval(m, t, tau, tol) ** rank
        for rank, n in comp.moving_fperp:
            val *= _v_eval(variant, n, t, tau, tol) ** rank
        total += val
    return total


def h_eval(model: EquivariantModel, t, tau, order: int = 24, tol: float = 1e-12) -> complex:
    """Numeric H(t, tau) through the theta quotients."""
    if model.mode != "foliated":
        raise SchemaError("H is the foliated-mode function")
    return _eval_components(model, "G", t, tau, order, tol)


def g_eval(model: EquivariantModel, variant: str, t, tau,
           order: int = 24, tol: float = 1e-12) -> complex:
    """Numeric G-variant value through the theta quotients."""
    if model.mode != "split":
        raise SchemaError("G functions belong to split mode")
    if variant not in _VARIANT_THETA:
        raise SchemaError(f"unknown variant {variant!r}")
    return _eval_components(model, variant, t, tau, order, tol)


def evaluator(model: EquivariantModel, function: str = "H", order: int = 24, tol: float = 1e-12):
    """A callable (t, tau) -> complex for H or a G variant."""
    if function == "H":
        return lambda t, tau: h_eval(model, t, tau, order, tol)
    return lambda t, tau: g_eval(model, function, t, tau, order, tol)


# ---------------------------------------------------------------------------
# the direct Lefschetz products: the same values from per-line factors


def _product_terms(absq, grow, tol):
    n, power = 1, absq
    while power * grow > tol and n < 10**4:
        n, power = n + 1, power * absq
    return n


def _w_direct(m, t, tau, tol) -> complex:
    q = cmath.exp(2j * math.pi * complex(tau))
    z = cmath.exp(2j * math.pi * m * complex(t))
    grow = max(abs(z), 1 / abs(z), 1.0)
    out = 1 / (2 * cmath.sinh(1j * math.pi * m * complex(t)))
    for k in range(1, _product_terms(abs(q), grow, tol) + 1):
        qk = q**k
        out *= (1 - qk) ** 2 / ((1 - qk * z) * (1 - qk / z))
    return out


def _v_direct(variant, n, t, tau, tol) -> complex:
    q = cmath.exp(2j * math.pi * complex(tau))
    z = cmath.exp(2j * math.pi * n * complex(t))
    grow = max(abs(z), 1 / abs(z), 1.0)
    terms = _product_terms(abs(q) ** 0.5, grow, tol)
    arg = 1j * math.pi * n * complex(t)
    if variant == "G":
        out = cmath.cosh(arg) / cmath.sinh(arg)
    else:
        out = 1 / (2 * cmath.sinh(arg))
    for k in range(1, terms + 1):
        qk = q**k
        out *= (1 - qk) ** 2 / ((1 - qk * z) * (1 - qk / z))
        if variant == "G":
            out *= (1 + qk * z) * (1 + qk / z) / (1 + qk) ** 2
        else:
            qh = q ** (k - 0.5)
            sign = -1 if variant == "G1" else 1
            out *= (1 + sign * qh * z) * (1 + sign * qh / z) / (1 + sign * qh) ** 2
    return out


def lefschetz_eval(model: EquivariantModel, t, tau, function: str = "H",
                   order: int = 24, tol: float = 1e-12) -> complex:
    """The same genus value from literal per-line infinite products.

    The moving factors are sinh and tanh lines times their q-tower
    products, truncated when the dropped factors are below tol; this is
    the cross-check path for the theta-quotient evaluators.
    """
    if function == "H":
        if model.mode != "foliated":
            raise SchemaError("H is the foliated-mode function")
        variant = "G"
    else:
        if model.mode != "split":
            raise SchemaError("G functions belong to split mode")
        if function not in _VARIANT_THETA:
            raise SchemaError(f"unknown genus function {function!r}")
        variant = function
    check_poles(model, t)
    total = 0j
    for comp in model.components:
        _check_root_free(comp)
        val = comp.orientation * _static_value(comp, variant, order, tau)
        for rank, m in comp.moving_f:
            val *= _w_direct(m, t, tau, tol) ** rank
        for rank, n in comp.moving_fperp:
            val *= _v_direct(variant, n, t, tau, tol) ** rank
        total += val
    return total


# ---------------------------------------------------------------------------
# Jacobi transformation residuals


def slash_value(fn, meta: JacobiFormMeta, mat, t, tau) -> complex:
    """(fn |_{weight, index} mat)(t, tau)."""
    (a, b), (c, d) = _check_matrix(mat)
    denom = c * complex(tau) + d
    value = fn(complex(t) / denom, (a * complex(tau) + b) / denom)
    phase = cmath.exp(-2j * math.pi * complex(meta.index) * c * complex(t) ** 2 / denom)
    return denom ** (-meta.weight) * phase * value


def shift_factor(meta: JacobiFormMeta, lam, t, tau) -> complex:
    """The elliptic automorphy factor for t -> t + lam tau + mu."""
    return cmath.exp(
        -2j * math.pi * complex(meta.index) * (lam * lam * complex(tau) + 2 * lam * complex(t))
    )


def jacobi_residual(fn, meta: JacobiFormMeta, samples, tol: float = 1e-8,
                    matrices=None, shifts=((1, 0), (0, 1))) -> dict:
    """Residual report for the Jacobi transformation laws of fn.

    Matrix rows compare fn against its slash transform (absolute
    residual).  Shift rows move t by meta.lattice * (a tau + b) and
    compare against the elliptic factor; those values scale by the
    factor's exponential, so their residuals are relative.
    """
    samples = list(samples)
    matrices = [_check_matrix(m) for m in (matrices or GENERATORS[meta.subgroup])]
    for mat in matrices:
        if not subgroup_member(meta.subgroup, mat):
            raise SchemaError(f"matrix {mat} lies outside {meta.subgroup}")
    rows = []
    worst = 0.0
    for t, tau in samples:
        base = fn(t, tau)
        for mat in matrices:
            lhs = slash_value(fn, meta, mat, t, tau)
            residual = abs(lhs - base)
            rows.append({
                "law": "matrix", "matrix": [list(mat[0]), list(mat[1])],
                "t": f"{complex(t):.6g}", "tau": f"{complex(tau):.6g}",
                "residual": residual,
            })
            worst = max(worst, residual)
        for a, b in shifts:
            lam, mu = meta.lattice * a, meta.lattice * b
            lhs = fn(complex(t) + lam * complex(tau) + mu, tau)
            rhs = shift_factor(meta, lam, t, tau) * base
            scale = max(1.0, abs(lhs), abs(rhs))
            residual = abs(lhs - rhs) / scale
            rows.append({
                "law": "shift", "shift": [lam, mu],
                "t": f"{complex(t):.6g}", "tau": f"{complex(tau):.6g}",
                "residual": residual,
            })
            worst = max(worst, residual)
    return {
        "meta": meta.to_json(),
        "samples": len(samples),
        "rows": rows,
        "max_residual": worst,
        "tol": tol,
        "pass": worst < tol,
    }
