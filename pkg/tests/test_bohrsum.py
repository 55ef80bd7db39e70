import numpy as np
import pytest

from bohr_lab.bohrsum import (Verdict, bohr_sum, bohr_sum_harmonic, check_inequality, m1_pk_sum,
                              m1_sum, m_pk_sum, m_sum, n_pk_sum, verdict_for)
from bohr_lab.errors import DomainError, SpecMismatch
from bohr_lab.pseries import (HarmonicMapSpec, LacunarySeries, blaschke_coeffs,
                              shifted_blaschke_coeffs)
from bohr_lab.radii import ClassId, ClassSpec, solve_radius


def mono(p, m, k):
    return LacunarySeries(p, m, k, [1.0], 0.0)


def test_bohr_sum_monomial():
    rep = bohr_sum(mono(2, 1, 0), 0.5)
    assert rep.value == 0.5 and rep.tail_bound == 0.0
    assert rep.verdict is Verdict.HOLDS and rep.margin == 0.5


def test_bohr_sum_geometric_tail():
    s = LacunarySeries(1, 0, 0, [1.0, 1.0], 1.0)
    rep = bohr_sum(s, 0.5)
    assert rep.value == 1.5
    assert rep.tail_bound == pytest.approx(0.25 / 0.5)


def test_bohr_sum_rejects_r():
    with pytest.raises(DomainError):
        bohr_sum(mono(1, 0, 0), 1.0)


def test_harmonic_sum_adds_parts():
    h = LacunarySeries(2, 1, 0, [0.5, 0.25], 0.0)
    rep = bohr_sum_harmonic(HarmonicMapSpec(h, h), 0.5)
    assert rep.functional == "BH"
    assert rep.value == pytest.approx(2 * (0.5 * 0.5 + 0.25 * 0.125))


def test_m_sum_monomial_closed_form():
    # z^k: r^k + (1/2 + r/(1-r)) r^k
    r, k = 0.4, 2
    rep = m_sum(mono(1, 0, k), r)
    assert rep.value == pytest.approx(r ** k * (3 - r) / (2 * (1 - r)), rel=1e-15)


def test_m1_sum_monomial_has_no_square_part():
    rep = m1_sum(mono(1, 0, 3), 0.5)
    assert rep.value == 0.125


def test_m_sum_requires_plain_powers():
    with pytest.raises(SpecMismatch):
        m_sum(mono(2, 1, 1), 0.3)


@pytest.mark.parametrize("a", [0.2, 0.5, 0.9])
def test_m1_shifted_blaschke_closed_form(a):
    p, m, k, r = 2, 1, 1, 0.7
    x = r ** p
    rep = m1_pk_sum(shifted_blaschke_coeffs(a, p, m, k, 400), r)
    want = r ** (p * k + m) * (a + (1 - a * a) * x / (1 - x))
    assert abs(rep.value - want) <= 1e-13 + rep.tail_bound


@pytest.mark.parametrize("a", [0.2, 0.5, 1.0])
def test_m_shifted_blaschke_closed_form(a):
    p, m, k, r = 1, 1, 2, 0.55
    x = r ** p
    rep = m_pk_sum(shifted_blaschke_coeffs(a, p, m, k, 400), r)
    want = r ** (p * k + m) * (2 * a * a + a + x * (1 - 2 * a * a)) / ((1 + a) * (1 - x))
    assert abs(rep.value - want) <= 1e-13 + rep.tail_bound


def test_n_pk_sum_uses_lead_of_h():
    g = LacunarySeries(1, 1, 1, [0.5], 0.0)
    r = 0.5
    rep = n_pk_sum(g, r, a_lead=1.0)
    w = 0.5 + r / (1 - r)
    assert rep.value == pytest.approx(0.5 * r ** 2 + w * 0.25 * r ** 2)
    with pytest.raises(DomainError):
        n_pk_sum(g, r, a_lead=1.5)


def test_verdict_rules():
    assert verdict_for(0.5, 0.1, 1.0) is Verdict.HOLDS
    assert verdict_for(1.1, 0.0, 1.0) is Verdict.FAILS
    assert verdict_for(0.95, 0.1, 1.0) is Verdict.INCONCLUSIVE
    # round-off level excess still counts as attained
    assert verdict_for(1.0 + 1e-15, 0.0, 1.0) is Verdict.HOLDS


def test_report_json_keys():
    d = bohr_sum(mono(1, 0, 0), 0.2).to_dict()
    assert list(d) == ["functional", "r", "value", "tail_bound", "bound", "verdict", "margin"]
    assert d["verdict"] == "holds"


def test_check_theta_monomial_at_radius():
    spec = ClassSpec(ClassId.ThetaK27, k=2)
    r = solve_radius(spec).value
    rep = check_inequality(spec, mono(1, 1, 2), r)
    assert rep.functional == "Mpk+Mpk"
    assert rep.verdict is Verdict.HOLDS
    assert abs(rep.margin) < 1e-10
    assert check_inequality(spec, mono(1, 1, 2), 0.99).verdict is Verdict.FAILS


def test_check_rpm_corollary_bound_is_half():
    spec = ClassSpec(ClassId.RpmCor2, p=3, m=2)
    rep = check_inequality(spec, blaschke_coeffs(0.5, 3, 2), 0.3)
    assert rep.bound == 0.5


def test_check_rejects_shape_mismatch():
    spec = ClassSpec(ClassId.Wk24, p=2, m=1, k=1)
    with pytest.raises(SpecMismatch):
        check_inequality(spec, mono(2, 1, 2), 0.3)
    with pytest.raises(SpecMismatch):
        check_inequality(spec, mono(3, 1, 1), 0.3)
    with pytest.raises(SpecMismatch):
        check_inequality(spec, LacunarySeries(2, 1, 1, [1.5]), 0.3)


def test_check_rejects_wrong_fixed_a():
    spec = ClassSpec(ClassId.EtaK24, a=0.5)
    with pytest.raises(SpecMismatch):
        check_inequality(spec, shifted_blaschke_coeffs(0.4, 1, 1, 1), 0.3)


def test_check_harmonic_single_series_needs_d_one():
    h = mono(2, 1, 1)
    rep = check_inequality(ClassSpec(ClassId.Rk25, p=2, m=1, d=1.0), h, 0.3)
    assert rep.functional == "Mpk+Npk"
    with pytest.raises(SpecMismatch):
        check_inequality(ClassSpec(ClassId.Rk25, p=2, m=1, d=0.5), h, 0.3)


def test_check_analytic_class_rejects_pair():
    h = mono(1, 1, 1)
    with pytest.raises(SpecMismatch):
        check_inequality(ClassSpec(ClassId.Wk24), HarmonicMapSpec(h, h), 0.3)


def test_summation_is_order_stable():
    rng = np.random.default_rng(3)
    c = rng.uniform(-1, 1, 300)
    a = bohr_sum(LacunarySeries(1, 0, 0, c), 0.9).value
    b = bohr_sum(LacunarySeries(1, 0, 0, c), 0.9).value
    assert a == b
