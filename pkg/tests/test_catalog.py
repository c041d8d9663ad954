from fractions import Fraction as Q

import pytest

from wmin import catalog
from wmin.catalog import AlgebraId, Vec, lookup, validate
from wmin.errors import IsotropicCoroot, ParameterOutOfRange


def test_parameter_ranges():
    with pytest.raises(ParameterOutOfRange):
        AlgebraId("sl2m", m=2)
    with pytest.raises(ParameterOutOfRange):
        AlgebraId("osp4m", m=5)
    with pytest.raises(ParameterOutOfRange):
        AlgebraId("osp4m", m=2)
    with pytest.raises(ParameterOutOfRange):
        AlgebraId("D21a", a_num=2, a_den=4)
    with pytest.raises(ParameterOutOfRange):
        AlgebraId("D21a", a_num=0, a_den=1)
    # spo(2|4) is D(2,1;1) in disguise
    with pytest.raises(ParameterOutOfRange):
        AlgebraId("spo2m", m=4)


def test_theta_norm_and_examples():
    e = lookup(catalog.psl22())
    assert e.form(e.theta, e.theta) == 2
    assert e.form(e.xi, e.xi) == Q(-1, 2)
    assert e.coroot_pairing(catalog.zero_vec(e.n), e.components[0].theta) == 0
    with pytest.raises(IsotropicCoroot):
        e.coroot_pairing(e.xi, e.simple_roots[0][0])  # odd isotropic root


def test_table_fixtures():
    assert lookup(catalog.psl22()).h_vee == 0
    assert lookup(catalog.spo2m(3)).components[0].chi == -2
    assert lookup(catalog.g3()).epsilon == 2
    assert lookup(catalog.f4()).h_vee == -2
    assert lookup(catalog.sl2m(5)).h_vee == -3
    assert lookup(catalog.osp4m(6)).components[1].hbar_vee == -8
    assert lookup(catalog.d21a(2, 3)).components[0].u == Q(-2 * 3, 5)


def test_validation_all(all_algebras):
    for g in all_algebras:
        rep = validate(lookup(g))
        assert rep.ok, (g.label(), [c for c in rep.checks if not c.passed])


def test_osp4m_chi_exception_flagged():
    rep = validate(lookup(catalog.osp4m(4)))
    [chk] = [c for c in rep.checks if c.name == "chi_1_vs_xi"]
    assert chk.passed and "exception, skipped" in chk.detail


def test_validate_f4_max_pairing():
    rep = validate(lookup(catalog.f4()))
    [chk] = [c for c in rep.checks if c.name == "threshold_identity"]
    assert chk.passed and "3/2" in chk.detail


def test_delta_prime_weyl_closure(all_algebras):
    for g in all_algebras:
        e = lookup(g)
        mult = {}
        for w, m in e.delta_prime:
            mult[w] = mult.get(w, 0) + m
        for w, m in mult.items():
            for a in e.simple_roots_natural:
                assert mult.get(e.weyl_reflect(w, a), 0) == m


def test_restriction_projects_onto_root_span(all_algebras):
    for g in all_algebras:
        e = lookup(g)
        assert e.restrict(e.theta).is_zero()
        # xi restricts to itself up to the (inert) center direction of sl(2|m)
        r = e.restrict(e.xi)
        for a in e.simple_roots_natural:
            assert e.form(r, a) == e.form(e.xi, a)
        if e.center is None:
            assert r == e.xi


def test_iso_simple_roots_restrict_to_minus_xi(all_algebras):
    """Odd isotropic simple roots restrict to -xi on h^nat (for sl(2|m) the
    second one lands on the other irreducible summand of the odd half-space,
    so only membership in -Delta' is asserted there)."""
    for g in all_algebras:
        e = lookup(g)
        iso = [rt for rt, p in e.simple_roots if p == 1 and e.form(rt, rt) == 0]
        assert len(iso) == e.iso_simple_count
        lows = {e.restrict(-1 * w) for w, _ in e.delta_prime}
        for rt in iso:
            assert e.form(rt, e.theta) == 1
            if g.family == "sl2m":
                assert e.restrict(rt) in lows
            else:
                assert e.restrict(rt) == e.restrict(-1 * e.xi)


def test_nu_from_labels_round_trip():
    e = lookup(catalog.g3())
    nu = e.nu_from_labels([1, 2])
    assert nu == Vec([1, 2, 0])
    e5 = lookup(catalog.spo2m(5))
    nu = e5.nu_from_labels([Q(3, 2), Q(1, 2)])
    assert nu == Vec([0, Q(3, 2), Q(1, 2)])


def test_finite_weyl_orbit_of_xi_stays_in_delta_prime(all_algebras):
    for g in all_algebras:
        e = lookup(g)
        support = {w for w, _ in e.delta_prime}
        if g.family == "sl2m":
            continue  # xi carries an inert center component there
        assert e.finite_weyl_orbit(e.xi) <= support


def test_form_rejects_wrong_length():
    e = lookup(catalog.psl22())
    with pytest.raises(ParameterOutOfRange):
        e.form(Vec([1, 0]), e.theta)
