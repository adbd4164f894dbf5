import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nu_spectral.errors import (
    AmbiguousBranch,
    NoAdmissibleBranch,
    NoPerfectSquare,
)
from nu_spectral.polynomials import (
    HALF_LINE,
    REAL_LINE,
    UNIT_INTERVAL,
    Interval,
    Polynomial,
)
from nu_spectral.reduction import (
    EpsAffinePoly,
    FactorizedFunction,
    GheProblem,
    branch_candidates,
    build_p2,
    chi_from_pi,
    corollary_applicable,
    pearson_weight,
    reduce_ghe,
    select_branch,
    solve_k0,
    weight_tilde,
)
from nu_spectral.scalars import SurdSum, as_exact, sqrt_scalar

X = Polynomial.x()


def parabolic_well():
    # u'' + (eps - x^2) u = 0 on the real line
    return GheProblem(
        phi=Polynomial.of(1),
        psi_tilde=Polynomial(),
        phi_tilde=EpsAffinePoly(const=-(X * X), linear=Polynomial.of(1)),
        interval=REAL_LINE,
    )


def exp_radial_well(lam_sq):
    # s u'' + u' + (eps - lam_sq + lam*s - s^2/4)/s u = 0 on (0, inf)
    lam = sqrt_scalar(as_exact(lam_sq))
    const = Polynomial.of(-as_exact(lam_sq), lam, Fraction(-1, 4))
    return GheProblem(
        phi=X,
        psi_tilde=Polynomial.of(1),
        phi_tilde=EpsAffinePoly(const=const, linear=Polynomial.of(1)),
        interval=HALF_LINE,
    )


def tanh_well(v0, t):
    # (1-s^2) u'' - 2s u' + (eps - C (s-t)^2)/(1-s^2) u = 0 on (-1, 1),
    # C = v0 / (1 - t^2); t is the rationalized slope parameter.
    v0 = as_exact(v0)
    t = as_exact(t)
    big_c = v0 / (1 - t * t)
    shifted = X - Polynomial.constant(t)
    return GheProblem(
        phi=Polynomial.of(1, 0, -1),
        psi_tilde=Polynomial.of(0, -2),
        phi_tilde=EpsAffinePoly(const=-big_c * (shifted * shifted), linear=Polynomial.of(1)),
        interval=UNIT_INTERVAL,
    )


def reduction_identity_defect(ghe, br):
    lhs = as_exact(br.lam) * ghe.phi
    rhs = (
        br.pi * br.pi
        + br.pi * (ghe.psi_tilde - ghe.phi.derivative())
        + br.pi.coeff(1) * ghe.phi
        + ghe.phi_tilde.at(br.eps)
    )
    return lhs - rhs


class TestParabolicWell:
    def test_k0_equals_eps(self):
        ghe = parabolic_well()
        assert solve_k0(ghe, Fraction(5)) == [Fraction(5)]

    def test_selected_branch_fields(self):
        res = reduce_ghe(parabolic_well(), Fraction(5))
        br = res.selected
        assert br.pi == Polynomial.of(0, -1)
        assert br.psi == Polynomial.of(0, -2)
        assert br.lam == Fraction(4)
        assert br.chi == FactorizedFunction(exp_poly=Polynomial.of(0, 0, Fraction(-1, 2)))
        assert br.weight == FactorizedFunction(exp_poly=Polynomial.of(0, 0, -1))
        assert br.weight_tilde.is_constant

    def test_rejected_branch_is_increasing(self):
        branches = branch_candidates(parabolic_well(), Fraction(5))
        assert len(branches) == 2
        others = [b for b in branches if b.pi != Polynomial.of(0, -1)]
        assert others[0].pi == X

    def test_lambda_is_exact_fraction(self):
        res = reduce_ghe(parabolic_well(), Fraction(7, 3))
        assert res.selected.lam == Fraction(4, 3)


class TestExpRadialWell:
    def test_k0_pair(self):
        ghe = exp_radial_well(25)
        k0s = solve_k0(ghe, Fraction(19, 4))
        assert k0s == [Fraction(1, 2), Fraction(19, 2)]

    def test_selected_branch_ground_state(self):
        res = reduce_ghe(exp_radial_well(25), Fraction(19, 4))
        br = res.selected
        assert br.k0 == Fraction(1, 2)
        assert br.pi == Polynomial.of(Fraction(9, 2), Fraction(-1, 2))
        assert br.psi == Polynomial.of(10, -1)
        assert br.lam == 0
        assert br.chi == FactorizedFunction(
            power_terms=((X, Fraction(9, 2)),),
            exp_poly=Polynomial.of(0, Fraction(-1, 2)),
        )
        assert br.weight == FactorizedFunction(
            power_terms=((X, Fraction(9)),),
            exp_poly=Polynomial.of(0, -1),
        )
        assert br.weight_tilde.is_constant

    def test_surd_k0_when_gap_not_square(self):
        ghe = exp_radial_well(25)
        k0s = solve_k0(ghe, Fraction(3))
        expected = sqrt_scalar(Fraction(22))
        assert k0s == [5 - expected, 5 + expected]

    def test_all_branches_satisfy_identity(self):
        ghe = exp_radial_well(25)
        for br in branch_candidates(ghe, Fraction(3)):
            assert reduction_identity_defect(ghe, br).is_zero

    def test_ambiguous_when_psi_roots_collide_near_threshold(self):
        # shallow gap: both square-root signs give decreasing psi with a
        # positive zero, so the geometric filter cannot decide alone
        ghe = exp_radial_well(25)
        with pytest.raises(AmbiguousBranch) as exc:
            reduce_ghe(ghe, Fraction(2481, 100))
        assert len(exc.value.branches) == 2

    def test_no_real_reduction_above_threshold(self):
        with pytest.raises(NoPerfectSquare):
            reduce_ghe(exp_radial_well(25), Fraction(26))


class TestTanhWell:
    V0 = Fraction(4)
    T = Fraction(math.tanh(0.5))

    def well(self):
        return tanh_well(self.V0, self.T)

    def edges(self, eps):
        t = self.T
        v_minus = self.V0 * (1 - t) / (1 + t)
        v_plus = self.V0 * (1 + t) / (1 - t)
        km = sqrt_scalar(v_minus - eps)
        kp = sqrt_scalar(v_plus - eps)
        return km, kp

    def test_selected_branch_matches_edge_exponents(self):
        eps = Fraction(1, 4)
        km, kp = self.edges(eps)
        half_diff = (kp - km) / 2
        half_sum = (kp + km) / 2
        res = reduce_ghe(self.well(), eps)
        br = res.selected
        assert br.pi == Polynomial.of(half_diff, -half_sum)
        assert br.psi == Polynomial.of(2 * half_diff, -2 * half_sum - 2)
        assert br.k0 == (eps + self.V0 - kp * km) / 2
        assert br.lam == br.k0 - half_sum

    def test_weight_is_two_sided_power(self):
        eps = Fraction(1, 4)
        km, kp = self.edges(eps)
        br = reduce_ghe(self.well(), eps).selected
        assert br.weight.power_terms == (
            (Polynomial.of(1, 1), kp),
            (Polynomial.of(1, -1), km),
        )
        assert br.weight.exp_poly.is_zero
        assert br.chi.power_terms == (
            (Polynomial.of(1, 1), kp / 2),
            (Polynomial.of(1, -1), km / 2),
        )

    def test_identity_holds_for_every_branch(self):
        ghe = self.well()
        for br in branch_candidates(ghe, Fraction(1, 4)):
            assert reduction_identity_defect(ghe, br).is_zero

    def test_weight_equals_input_weight_times_chi_squared(self):
        br = reduce_ghe(self.well(), Fraction(1, 4)).selected
        rebuilt = br.weight_tilde.times(br.chi.squared())
        for x in (-0.8, -0.2, 0.5, 0.9):
            assert br.weight(x) == pytest.approx(rebuilt(x), rel=1e-12)

    def test_ambiguous_in_shallow_window(self):
        # the lower edge exponent drops below one here and the partner
        # branch passes the decreasing/root-inside filter as well
        with pytest.raises(AmbiguousBranch) as exc:
            reduce_ghe(self.well(), Fraction(1))
        assert len(exc.value.branches) == 2

    def test_select_false_keeps_branches_on_ambiguity(self):
        res = reduce_ghe(self.well(), Fraction(1), select=False)
        assert res.selected is None
        assert len(res.branches) >= 2


class TestK0Degeneracies:
    def test_linear_phi_tilde_never_square(self):
        ghe = GheProblem(
            phi=Polynomial.of(1),
            psi_tilde=Polynomial(),
            phi_tilde=EpsAffinePoly(const=X, linear=Polynomial.of(1)),
            interval=REAL_LINE,
        )
        with pytest.raises(NoPerfectSquare):
            solve_k0(ghe, Fraction(1))

    def test_constant_phi_tilde_degenerate(self):
        ghe = GheProblem(
            phi=Polynomial.of(1),
            psi_tilde=Polynomial(),
            phi_tilde=EpsAffinePoly(const=Polynomial.of(-3), linear=Polynomial.of(1)),
            interval=REAL_LINE,
        )
        with pytest.raises(NoPerfectSquare):
            solve_k0(ghe, Fraction(1))

    def test_build_p2_shape(self):
        base, kcoef = build_p2(parabolic_well(), Fraction(2))
        assert base == X * X - Polynomial.of(2)
        assert kcoef == Polynomial.of(1)


class TestSelection:
    def test_no_admissible_branch_off_interval(self):
        ghe = GheProblem(
            phi=Polynomial.of(1),
            psi_tilde=Polynomial(),
            phi_tilde=EpsAffinePoly(const=-(X * X), linear=Polynomial.of(1)),
            interval=Interval(1, 2),
        )
        with pytest.raises(NoAdmissibleBranch):
            reduce_ghe(ghe, Fraction(3))

    def test_root_outside_interval_not_admissible(self):
        branches = branch_candidates(parabolic_well(), Fraction(5))
        with pytest.raises(NoAdmissibleBranch):
            select_branch(branches, Interval(5, 6))


class TestWeightSolver:
    def test_double_root_weight(self):
        # phi = (x-1)^2, psi = 3x - 1: the weight picks up an essential
        # factor exp(-2/(x-1)) alongside the power of (x-1)
        phi = (X - 1) * (X - 1)
        psi = Polynomial.of(-1, 3)
        w = pearson_weight(phi, psi, Interval(1, math.inf))
        assert w.power_terms == ((X - 1, Fraction(1)),)
        assert w.inv_exp_terms == ((Fraction(1), Fraction(-2)),)
        for x in (1.5, 2.0, 4.0):
            numer = psi - phi.derivative()
            assert w.log_deriv(x) == pytest.approx(
                numer.as_float()(x) / phi.as_float()(x), rel=1e-12
            )

    def test_nonconstant_input_weight(self):
        ghe = GheProblem(
            phi=X,
            psi_tilde=Polynomial.of(2),
            phi_tilde=EpsAffinePoly(const=Polynomial.of(-1), linear=Polynomial.of(1)),
            interval=HALF_LINE,
        )
        wt = weight_tilde(ghe)
        assert wt.power_terms == ((X, Fraction(1)),)
        assert not wt.is_constant

    def test_call_matches_log_deriv_numerically(self):
        pi = Polynomial.of(Fraction(1, 3), Fraction(-1, 2))
        f = chi_from_pi(pi, Polynomial.of(1, 0, -1), UNIT_INTERVAL)
        h = 1e-6
        for x in (-0.4, 0.2, 0.7):
            fd = (math.log(f(x + h)) - math.log(f(x - h))) / (2 * h)
            assert fd == pytest.approx(f.log_deriv(x), rel=1e-7)


class TestCorollary:
    def test_applicable_for_constant_input_weight(self):
        br = reduce_ghe(parabolic_well(), Fraction(5)).selected
        assert corollary_applicable(br, tau_prime_bounded=True)
        assert not corollary_applicable(br, tau_prime_bounded=False)


class TestGheValidation:
    def test_phi_root_inside_interval_rejected(self):
        with pytest.raises(ValueError):
            GheProblem(
                phi=X,
                psi_tilde=Polynomial.of(1),
                phi_tilde=EpsAffinePoly(const=Polynomial.of(-1), linear=Polynomial.of(1)),
                interval=Interval(-1, 1),
            )

    def test_degree_bounds_enforced(self):
        with pytest.raises(ValueError):
            GheProblem(
                phi=X * X * X,
                psi_tilde=Polynomial(),
                phi_tilde=EpsAffinePoly(const=Polynomial.of(1)),
                interval=REAL_LINE,
            )


small_fracs = st.fractions(
    min_value=Fraction(-4), max_value=Fraction(4), max_denominator=8
)

SOLVER_CASES = [
    (Polynomial.of(2), REAL_LINE, (-0.7, 0.3, 1.9)),
    (X, HALF_LINE, (0.5, 1.0, 3.0)),
    (Polynomial.of(1, 0, -1), UNIT_INTERVAL, (-0.6, 0.1, 0.6)),
    ((X - 1) * (X - 1), Interval(1, math.inf), (1.5, 2.0, 4.0)),
]


@settings(max_examples=60, deadline=None)
@given(a=small_fracs, b=small_fracs, case=st.sampled_from(SOLVER_CASES))
def test_log_derivative_solver_property(a, b, case):
    phi, interval, probes = case
    pi = Polynomial.of(a, b)
    f = chi_from_pi(pi, phi, interval)
    pif, phif = pi.as_float(), phi.as_float()
    for x in probes:
        assert f(x) > 0
        assert abs(f.log_deriv(x) - pif(x) / phif(x)) < 1e-9 * max(
            1.0, abs(pif(x) / phif(x))
        )


@settings(max_examples=30, deadline=None)
@given(a=small_fracs, b=small_fracs)
def test_squared_and_times_are_pointwise(a, b):
    pi = Polynomial.of(a, b)
    f = chi_from_pi(pi, X, HALF_LINE)
    g = chi_from_pi(pi, Polynomial.of(3), HALF_LINE)
    for x in (0.5, 2.0):
        assert f.squared()(x) == pytest.approx(f(x) ** 2, rel=1e-12)
        assert f.times(g)(x) == pytest.approx(f(x) * g(x), rel=1e-12)


def test_surd_branch_fields_stay_exact():
    ghe = exp_radial_well(25)
    res = reduce_ghe(ghe, Fraction(3))
    br = res.selected
    gap = sqrt_scalar(Fraction(22))
    assert isinstance(br.k0, SurdSum)
    assert br.k0 == 5 - gap
    assert br.lam == Fraction(9, 2) - gap
    assert br.chi.power_terms == ((X, gap),)
