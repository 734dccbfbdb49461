"""Jacobi theta functions: exact z-Laurent q-series and numeric evaluation.

The four kinds follow the product normalization

    theta  = c(q) q^(1/8) 2 sin(pi v) prod (1 - q^n z)(1 - q^n / z)
    theta1 = c(q) q^(1/8) 2 cos(pi v) prod (1 + q^n z)(1 + q^n / z)
    theta2 = c(q)                     prod (1 - q^(n-1/2) z)(1 - q^(n-1/2) / z)
    theta3 = c(q)                     prod (1 + q^(n-1/2) z)(1 + q^(n-1/2) / z)

with z = e^(2 pi i v) and c(q) = prod (1 - q^n).  The exact representation
keeps c(q), the q^(1/8), and the trig factor symbolic so that quotients of
thetas cancel them algebraically; only the z-product is expanded.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

from genusforge.errors import SchemaError
from genusforge.rings import LAURENT, LaurentZ
from genusforge.series import STEP, QSeries

THETA = "theta"
THETA1 = "theta1"
THETA2 = "theta2"
THETA3 = "theta3"
KINDS = (THETA, THETA1, THETA2, THETA3)

TAU_FLOOR = 0.05
FACTOR_CAP = 10**4

# per kind: sign inside the product factors, True when exponents sit on n - 1/2
_BODY = {
    THETA: (-1, False),
    THETA1: (1, False),
    THETA2: (-1, True),
    THETA3: (1, True),
}

# per kind: (c-power, q-offset, trig tag)
_PREFIX = {
    THETA: (1, Fraction(1, 8), "2sin"),
    THETA1: (1, Fraction(1, 8), "2cos"),
    THETA2: (1, Fraction(0), "1"),
    THETA3: (1, Fraction(0), "1"),
}


class ThetaSeries:
    """Exact theta data: symbolic prefactors plus the expanded z-product."""

    __slots__ = ("kind", "c_power", "q_offset", "trig", "body")

    def __init__(self, kind, c_power, q_offset, trig, body: QSeries):
        self.kind = kind
        self.c_power = int(c_power)
        self.q_offset = Fraction(q_offset)
        self.trig = trig
        self.body = body

    def expanded(self) -> QSeries:
        """body * c(q)**c_power shifted by the q-offset (trig stays symbolic)."""
        out = self.body
        if self.c_power:
            cq = euler_product(self.body.order, ring=LAURENT)
            if self.c_power < 0:
                cq = cq.inv()
            for _ in range(abs(self.c_power)):
                out = out * cq
        return out.shifted(self.q_offset)

    def __repr__(self):
        return (
            f"ThetaSeries({self.kind}, c^{self.c_power}, "
            f"q^{self.q_offset}, trig={self.trig})"
        )


def euler_product(order: int, ring=LAURENT) -> QSeries:
    """c(q) = prod (1 - q^n) truncated to the given slot count."""
    out = QSeries.one(ring, order)
    n = 1
    while n * 2 < order:
        factor = QSeries.from_terms(
            ring, {0: ring.one(), n: ring.coerce(-1)}, order
        )
        out = out * factor
        n += 1
    return out


def theta_qseries(kind, order: int) -> ThetaSeries:
    """Exact truncated product expansion of the z-dependent body."""
    if kind not in _BODY:
        raise SchemaError(f"unknown theta kind {kind!r}")
    sign, half = _BODY[kind]
    body = QSeries.one(LAURENT, order)
    end = order * STEP
    n = 1
    while True:
        expo = Fraction(n) - Fraction(1, 2) if half else Fraction(n)
        if expo >= end:
            break
        for zpow in (1, -1):
            factor = QSeries.from_terms(
                LAURENT,
                {0: LaurentZ.monomial(0), expo: LaurentZ.monomial(zpow, sign)},
                order,
            )
            body = body * factor
        n += 1
    c_power, q_offset, trig = _PREFIX[kind]
    return ThetaSeries(kind, c_power, q_offset, trig, body)


def theta_prime0_series(order: int) -> ThetaSeries:
    """d theta / dv at v = 0: the sin factor contributes 2 pi, each
    product pair evaluates at z = 1 giving (1 - q^n)^2, so the exact form
    is 2 pi q^(1/8) c(q)^3."""
    return ThetaSeries("theta_prime0", 3, Fraction(1, 8), "2pi", QSeries.one(LAURENT, order))


# ---------------------------------------------------------------------------
# numeric evaluation


def _check_tau(tau):
    if complex(tau).imag < TAU_FLOOR:
        raise ValueError(
            f"Im(tau) = {complex(tau).imag} is below the evaluation floor {TAU_FLOOR}"
        )


def _factor_count(absq, grow, tol):
    if absq >= 1.0:
        raise ValueError("the nome must satisfy |q| < 1")
    bound = tol / 10.0
    n = 1
    term = absq * grow
    while term > bound:
        n += 1
        term *= absq
        if n > FACTOR_CAP:
            raise ValueError("tolerance unreachable within the factor cap")
    return n


def euler_eval(q: complex, tol: float = 1e-12) -> complex:
    """Numeric c(q) by direct truncated product."""
    n_max = _factor_count(abs(q), 1.0, tol)
    out = 1.0 + 0.0j
    qn = q
    for _ in range(n_max):
        out *= 1.0 - qn
        qn *= q
    return out


def theta_eval(kind, v, tau, tol: float = 1e-12) -> complex:
    """Numeric theta value from the product formula."""
    if kind not in _BODY:
        raise SchemaError(f"unknown theta kind {kind!r}")
    _check_tau(tau)
    v = complex(v)
    tau = complex(tau)
    q = cmath.exp(2j * cmath.pi * tau)
    z = cmath.exp(2j * cmath.pi * v)
    sign, half = _BODY[kind]
    c_power, q_offset, trig = _PREFIX[kind]
    out = euler_eval(q, tol) ** c_power
    if q_offset:
        out *= cmath.exp(2j * cmath.pi * tau * float(q_offset))
    if trig == "2sin":
        out *= 2.0 * cmath.sin(cmath.pi * v)
    elif trig == "2cos":
        out *= 2.0 * cmath.cos(cmath.pi * v)
    grow = 1.0 + max(abs(z), 1.0 / abs(z))
    n_max = _factor_count(abs(q), grow, tol)
    for n in range(1, n_max + 1):
        e = n - 0.5 if half else float(n)
        qe = cmath.exp(2j * cmath.pi * tau * e)
        out *= (1.0 + sign * qe * z) * (1.0 + sign * qe / z)
    return out


def theta_prime0(tau, tol: float = 1e-12) -> complex:
    """d theta / dv at v = 0: 2 pi q^(1/8) c(q)^3."""
    _check_tau(tau)
    tau = complex(tau)
    q = cmath.exp(2j * cmath.pi * tau)
    return 2.0 * cmath.pi * cmath.exp(2j * cmath.pi * tau / 8.0) * euler_eval(q, tol) ** 3


# ---------------------------------------------------------------------------
# transformation laws

# tau -> tau + 1: partner kind and constant factor
_T_LAW = {
    THETA: (THETA, cmath.exp(1j * cmath.pi / 4)),
    THETA1: (THETA1, cmath.exp(1j * cmath.pi / 4)),
    THETA2: (THETA3, 1.0),
    THETA3: (THETA2, 1.0),
}

# (t, tau) -> (t/tau, -1/tau): partner kind and whether the extra 1/i appears
_S_LAW = {
    THETA: (THETA, True),
    THETA1: (THETA2, False),
    THETA2: (THETA1, False),
    THETA3: (THETA3, False),
}


def _s_factor(t, tau, extra_inv_i):
    # principal branch: tau/i lies in the right half-plane for Im tau > 0
    root = cmath.sqrt(tau / 1j)
    phase = cmath.exp(1j * cmath.pi * t * t / tau)
    out = root * phase
    if extra_inv_i:
        out /= 1j
    return out


def _lattice_factor(a, t, tau, sign):
    return cmath.exp(sign * 1j * cmath.pi * (a * a * tau + 2 * a * t))


def verify_transform(kind, law, samples, tol: float = 1e-9) -> dict:
    """Residual report for a transformation law over sample points.

    law is "S", "T", or ("lattice", a, b) with even integers a, b.  For the
    lattice law both exponent sign conventions are measured and the report
    names the one that holds; nothing is asserted here.  Lattice residuals
    are scaled by the value magnitude: a shift by a*tau multiplies theta by
    a factor of size e^(pi(a^2 Im tau + 2a Im t)), so an absolute residual
    would drown the comparison at machine precision.  S and T residuals
    stay absolute, as their values remain of moderate size on the
    documented sample domain.
    """
    if kind not in _BODY:
        raise SchemaError(f"unknown theta kind {kind!r}")
    rows = []
    if isinstance(law, (tuple, list)):
        name, a, b = law
        if name != "lattice":
            raise SchemaError(f"unknown transformation law {law!r}")
        if a % 2 or b % 2:
            raise SchemaError("lattice shifts need even integers a, b")
        neg_max = 0.0
        pos_max = 0.0
        for t, tau in samples:
            lhs = theta_eval(kind, t + a * tau + b, tau)
            base = theta_eval(kind, t, tau)
            rhs_neg = _lattice_factor(a, t, tau, -1) * base
            rhs_pos = _lattice_factor(a, t, tau, +1) * base
            scale_neg = max(1.0, abs(lhs), abs(rhs_neg))
            scale_pos = max(1.0, abs(lhs), abs(rhs_pos))
            res_neg = abs(lhs - rhs_neg) / scale_neg
            res_pos = abs(lhs - rhs_pos) / scale_pos
            neg_max = max(neg_max, res_neg)
            pos_max = max(pos_max, res_pos)
            rows.append({
                "t": str(t),
                "tau": str(tau),
                "residual_negative": res_neg,
                "residual_positive": res_pos,
            })
        convention = "negative" if neg_max <= pos_max else "positive"
        best = min(neg_max, pos_max)
        return {
            "kind": kind,
            "law": f"lattice({a},{b})",
            "samples": rows,
            "max_residual_negative": neg_max,
            "max_residual_positive": pos_max,
            "sign_convention": convention,
            "max_residual": best,
            "tol": tol,
            "pass": best <= tol,
        }
    if law == "T":
        partner, factor = _T_LAW[kind]
        worst = 0.0
        for t, tau in samples:
            lhs = theta_eval(kind, t, tau + 1)
            rhs = factor * theta_eval(partner, t, tau)
            res = abs(lhs - rhs)
            worst = max(worst, res)
            rows.append({"t": str(t), "tau": str(tau), "residual": res})
    elif law == "S":
        partner, extra = _S_LAW[kind]
        worst = 0.0
        for t, tau in samples:
            tau = complex(tau)
            lhs = theta_eval(kind, t / tau, -1 / tau)
            rhs = _s_factor(t, tau, extra) * theta_eval(partner, t, tau)
            res = abs(lhs - rhs)
            worst = max(worst, res)
            rows.append({"t": str(t), "tau": str(tau), "residual": res})
    else:
        raise SchemaError(f"unknown transformation law {law!r}")
    return {
        "kind": kind,
        "law": law,
        "samples": rows,
        "max_residual": worst,
        "tol": tol,
        "pass": worst <= tol,
    }
