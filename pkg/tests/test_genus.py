"""Index densities, the Witten genus, and the three split twists."""

import contextlib
import random
import warnings
from fractions import Fraction

import pytest

from genusforge.charclass import CharNumbers, GradedPoly, pair_fundamental
from genusforge.errors import MissingNumberError, SchemaError
from genusforge.genus import (
    IntegralityWarning,
    SplitManifoldSpec,
    ahat_poly,
    index_density,
    l_poly,
    split_genus,
    subdirac_index,
    witten_genus,
)
from genusforge.ktheory import KClass, witten_element
from genusforge.rings import RATIONAL
from genusforge.series import QSeries

from oracles import MPoly, naive_witten, qm_clean, qm_mul

Q = Fraction


@contextlib.contextmanager
def no_warn():
    with warnings.catch_warnings():
        warnings.simplefilter("error", IntegralityWarning)
        yield


K3 = SplitManifoldSpec(4, 2, 0, {"p1(F)": "-48/1"}, f_spin=True, m_spin=True)


def test_spec_validation():
    with pytest.raises(SchemaError):
        SplitManifoldSpec(4, 1, 0, {})
    # index above the pair count of its block
    with pytest.raises(SchemaError):
        SplitManifoldSpec(8, 1, 1, {"p2(F)": 1})
    # untagged numbers do not belong to a splitting
    with pytest.raises(SchemaError):
        SplitManifoldSpec(4, 2, 0, {"p1": 1})
    with pytest.raises(SchemaError):
        SplitManifoldSpec(4, 2, 0, CharNumbers(8, {"p2": 1}))


def test_spec_json_round_trip():
    blob = K3.to_json()
    assert blob == {
        "dim": 4,
        "f_pairs": 2,
        "fperp_pairs": 0,
        "numbers": {"p1(F)": "-48/1"},
        "f_spin": True,
        "m_spin": True,
    }
    again = SplitManifoldSpec.from_json(blob)
    assert again.to_json() == blob
    with pytest.raises(SchemaError):
        SplitManifoldSpec.from_json({"dim": 4})
    with pytest.raises(SchemaError):
        SplitManifoldSpec.from_json([4, 2, 0])


def test_density_reduces_to_one_factor():
    spec = SplitManifoldSpec(8, 4, 0, {"p1(F)^2": 0, "p2(F)": 0})
    assert index_density(spec) == ahat_poly(spec.F, 8)
    spec = SplitManifoldSpec(8, 0, 4, {"p1(Fperp)^2": 0, "p2(Fperp)": 0})
    assert index_density(spec) == l_poly(spec.Fperp, 8)


def test_density_k3_strings():
    assert index_density(K3).to_strings() == {"1": "1/1", "p1(F)": "-1/24"}


def test_density_static_twist():
    top = 4
    phi = GradedPoly.constant(2, top) + GradedPoly.generator("p", "Fperp", 1, top)
    spec = SplitManifoldSpec(4, 1, 1, {"p1(F)": 0, "p1(Fperp)": 5})
    got = index_density(spec, phi=phi)
    base = ahat_poly(spec.F, top) * l_poly(spec.Fperp, top)
    assert got == base * phi
    with pytest.raises(SchemaError):
        index_density(spec, phi=GradedPoly.constant(1, 8))
    with pytest.raises(SchemaError):
        index_density(spec, psi=QSeries.one(RATIONAL, 3))
    with pytest.raises(SchemaError):
        index_density(spec, psi="witten")


def test_subdirac_k3_is_two():
    with no_warn():
        assert subdirac_index(K3) == Q(2)


def test_subdirac_low_degree_vanishes():
    # a 2-sphere block: no degree-2 monomials exist, so the pairing is 0
    s2 = SplitManifoldSpec(2, 1, 0, {}, f_spin=False, m_spin=True)
    with no_warn():
        assert subdirac_index(s2) == Q(0)


def test_integrality_warnings():
    cp2ish = SplitManifoldSpec(4, 2, 0, {"p1(F)": 3})
    with pytest.warns(IntegralityWarning, match="not guaranteed"):
        assert subdirac_index(cp2ish) == Q(-1, 8)
    # spin flags promise an integer the numbers cannot deliver
    lying = SplitManifoldSpec(4, 2, 0, {"p1(F)": 3}, f_spin=True)
    with pytest.warns(IntegralityWarning, match="inconsistent"):
        subdirac_index(lying)
    # r = 0 with a spin total space is enough, no warning
    flat = SplitManifoldSpec(4, 2, 0, {"p1(F)": -48}, m_spin=True)
    with no_warn():
        assert subdirac_index(flat) == Q(2)


def test_classical_genera():
    from genusforge.genus import ahat_genus, l_genus

    assert ahat_genus(CharNumbers(4, {"p1": -48})) == Q(2)
    assert l_genus(CharNumbers(4, {"p1": 3})) == Q(1)
    assert ahat_genus(CharNumbers(4, {"p1": 3})) == Q(-1, 8)
    assert ahat_genus(CharNumbers(2, {})) == Q(0)
    assert ahat_genus(CharNumbers(0, {"1": 1})) == Q(1)


def test_witten_point():
    series = witten_genus(CharNumbers(0, {"1": 1}), 9)
    assert [series.coefficient(Q(k, 2)) for k in range(8)] == [1, 0, 0, 0, 0, 0, 0, 0]


def test_witten_k3_leading_terms():
    series = witten_genus(CharNumbers(4, {"p1": -48}), 9)
    assert [series.coefficient(k) for k in range(4)] == [2, -48, -144, -192]


def test_witten_q1_is_p1_number():
    rng = random.Random(2718)
    for _ in range(5):
        n = Q(rng.randint(-60, 60))
        series = witten_genus(CharNumbers(4, {"p1": n}), 5)
        assert series.coefficient(0) == -n / 24
        assert series.coefficient(1) == n


def ahat_mpoly(nvars, top):
    """prod_i (1 - x_i^2/24 + 7 x_i^4/5760) in weight-2 root variables."""
    out = MPoly.const(nvars, 2, top, 1)
    for i in range(nvars):
        f = MPoly.const(nvars, 2, top, 1)
        f = f.add(MPoly.var(nvars, 2, top, i, 2).scale(Q(-1, 24)))
        f = f.add(MPoly.var(nvars, 2, top, i, 4).scale(Q(7, 5760)))
        out = out.mul(f)
    return out


def test_witten_matches_root_level_oracle():
    # dim 4 with two root pairs: the degree-4 part of the density is a
    # multiple of p1 = x0^2 + x1^2, so the genus slot is (that multiple)
    # times the p1 number.  Cross-multiplied entirely at the root level.
    q_end = Q(4)
    density = qm_mul(
        naive_witten(2, 4, [0, 1], q_end),
        {Q(0): ahat_mpoly(2, 4)},
        q_end,
    )
    density = qm_clean(density)
    n = Q(-48)
    series = witten_genus(CharNumbers(4, {"p1": n}), 8)
    for k in range(4):
        poly = density.get(Q(k), MPoly(2, 2, 4, {}))
        assert (1, 1) not in poly.terms
        alpha = poly.terms.get((2, 0), Q(0))
        assert poly.terms.get((0, 2), Q(0)) == alpha
        assert series.coefficient(k) == alpha * n


def test_witten_missing_number_errors():
    with pytest.raises(MissingNumberError):
        witten_genus(CharNumbers(4, {}), 5)


def test_split_r_zero_reduces_to_witten():
    got = split_genus(K3, "R", 9)
    want = witten_genus(CharNumbers(4, {"p1": -48}), 9)
    assert [got.coefficient(Q(k, 2)) for k in range(8)] == [
        want.coefficient(Q(k, 2)) for k in range(8)
    ]


def test_split_leading_coefficients():
    # closed forms for dim 4, one pair each side, from the degree-4 part
    # of the base classes: q^0 of R is <Ahat(F) L(Fperp)> and q^0 of
    # R1/R2 is <Ahat(F) Ahat(Fperp)>; the first half-power picks up the
    # Lambda line, giving +-p1(Fperp).
    for a, b in ((Q(-24), Q(-24)), (Q(24), Q(-72)), (Q(0), Q(12))):
        spec = SplitManifoldSpec(4, 1, 1, {"p1(F)": a, "p1(Fperp)": b})
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", IntegralityWarning)
            r = split_genus(spec, "R", 5)
            r1 = split_genus(spec, "R1", 5)
            r2 = split_genus(spec, "R2", 5)
        assert r.coefficient(0) == -a / 24 + b / 3
        assert r.coefficient(Q(1, 2)) == 0
        assert r1.coefficient(0) == -a / 24 - b / 24
        assert r1.coefficient(Q(1, 2)) == b
        assert r2.coefficient(Q(1, 2)) == -b


def test_split_variant_half_sign_flip():
    spec = SplitManifoldSpec(4, 1, 1, {"p1(F)": -24, "p1(Fperp)": -24}, f_spin=True)
    r1 = split_genus(spec, "R1", 9)
    r2 = split_genus(spec, "R2", 9)
    assert r2 == r1.alternate_half_signs()
    with pytest.raises(ValueError):
        split_genus(spec, "R3", 5)


def test_split_zero_numbers_vanish():
    spec = SplitManifoldSpec(4, 1, 1, {"p1(F)": 0, "p1(Fperp)": 0}, f_spin=True, m_spin=True)
    for variant in ("R", "R1", "R2"):
        assert split_genus(spec, variant, 9).is_zero()


def test_density_series_subdirac_matches_witten():
    psi = witten_element(KClass.bundle(K3.F, 4), 9)
    with no_warn():
        series = subdirac_index(K3, psi=psi)
    want = witten_genus(CharNumbers(4, {"p1": -48}), 9)
    assert series == want


def test_witten_density_factorizes():
    # Ahat ch(Psi_q) of a sum of root blocks is the product of the factor
    # densities, as q-series with graded coefficients
    from genusforge.charclass import BundleRoots

    top = 8
    front = BundleRoots(2, "F")
    back = BundleRoots(2, "Fperp")
    F, P = KClass.bundle(front, top), KClass.bundle(back, top)
    order = 9
    base = ahat_poly(front, top) * ahat_poly(back, top)
    lhs = witten_element(F + P, order).map_coefficients(lambda c: c * base)
    rhs_f = witten_element(F, order).map_coefficients(lambda c: c * ahat_poly(front, top))
    rhs_p = witten_element(P, order).map_coefficients(lambda c: c * ahat_poly(back, top))
    assert lhs == rhs_f * rhs_p


def test_pairing_against_explicit_density():
    # recompute the K3 subdirac index by hand from the density strings
    density = index_density(K3)
    val = pair_fundamental(density, K3.numbers)
    assert val == Q(-1, 24) * Q(-48)
