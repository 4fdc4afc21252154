"""Tests for the initial-distribution families."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad, trapezoid

from patchsurvival.constants import Family
from patchsurvival.dist import (
    InitialProfile,
    beta_function,
    eval_dimensional,
    eval_nondim,
    gamma_residual,
    log_beta,
    profile_max,
    sample_profile,
    solve_gamma,
    unit_shape,
)
from patchsurvival.exceptions import DomainError, UnsupportedRegimeError
from patchsurvival.scaling import ModelExponents, problem_from_q
from patchsurvival.solver import GridSpec


class TestBeta:
    """Test cases for the Beta helpers."""

    def test_known_value(self):
        """Test B(2, 2) = 1/6."""
        assert beta_function(2.0, 2.0) == pytest.approx(1.0 / 6.0, rel=1e-12)

    def test_log_beta_matches_lgamma(self):
        """Test log_beta against log-gamma."""
        expected = math.lgamma(3.5) + math.lgamma(7.0) - math.lgamma(10.5)
        assert log_beta(3.5, 7.0) == pytest.approx(expected, rel=1e-12)

    def test_large_arguments_stay_finite(self):
        """Test that B(501, 501) is representable in log space."""
        assert math.isfinite(log_beta(501.0, 501.0))
        assert log_beta(501.0, 501.0) < -600.0

    def test_rejects_nonpositive(self):
        """Test that non-positive arguments raise DomainError."""
        with pytest.raises(DomainError):
            beta_function(0.0, 1.0)


class TestSolveGamma:
    """Test cases for gamma(alpha)."""

    def test_zero(self):
        """Test gamma(0) = 0 exactly."""
        assert solve_gamma(0.0) == 0.0

    @pytest.mark.parametrize("alpha", [0.5, 1.0, 10.0, 100.0, 500.0])
    def test_residual_vanishes(self, alpha):
        """Test that the solved gamma zeroes the residual."""
        gamma = solve_gamma(alpha)
        assert abs(gamma_residual(gamma, alpha)) < 1e-9

    def test_increasing_in_alpha(self):
        """Test that gamma grows with alpha."""
        gammas = [solve_gamma(a) for a in (0.1, 1.0, 10.0, 100.0)]
        assert gammas == sorted(gammas)

    def test_negative_alpha(self):
        """Test that negative alpha raises DomainError."""
        with pytest.raises(DomainError):
            solve_gamma(-1.0)

    @given(st.floats(min_value=0.0, max_value=500.0))
    @settings(max_examples=50, deadline=None)
    def test_peaks_match(self, alpha):
        """Test that F1 and F2 share their peak density."""
        f1 = profile_max(InitialProfile.create(Family.SYMMETRIC_F1, alpha))
        f2 = profile_max(InitialProfile.create(Family.ASYMMETRIC_F2, alpha))
        assert f2.value == pytest.approx(f1.value, rel=1e-8)


class TestInitialProfile:
    """Test cases for InitialProfile."""

    def test_create_from_tag(self):
        """Test creating a profile from its string tag."""
        profile = InitialProfile.create("f2", 10.0)
        assert profile.family is Family.ASYMMETRIC_F2
        assert profile.gamma == pytest.approx(solve_gamma(10.0))

    def test_homogeneous_ignores_alpha(self):
        """Test that the homogeneous family has alpha 0."""
        profile = InitialProfile.create(Family.HOMOGENEOUS, 5.0)
        assert profile.alpha == 0.0
        assert profile.is_homogeneous

    def test_unknown_family(self):
        """Test that an unknown tag raises DomainError."""
        with pytest.raises(DomainError):
            InitialProfile.create("f3", 1.0)

    def test_negative_alpha(self):
        """Test that negative alpha raises DomainError."""
        with pytest.raises(DomainError):
            InitialProfile.create("f1", -0.5)


class TestUnitShape:
    """Test cases for unit_shape."""

    @pytest.mark.parametrize("family", [Family.SYMMETRIC_F1, Family.ASYMMETRIC_F2])
    @pytest.mark.parametrize("alpha", [0.0, 1.0, 10.0, 100.0, 500.0])
    def test_unit_mass(self, family, alpha):
        """Test that every shape integrates to one."""
        profile = InitialProfile.create(family, alpha)
        peak = profile_max(profile).location
        mass, _ = quad(lambda s: unit_shape(profile, s), -0.5, 0.5, points=[peak], limit=200)
        assert mass == pytest.approx(1.0, rel=1e-6)

    @pytest.mark.parametrize("family", [Family.SYMMETRIC_F1, Family.ASYMMETRIC_F2])
    @pytest.mark.parametrize("alpha", [1.0, 10.0, 100.0, 500.0])
    def test_unit_mass_on_fine_grid(self, family, alpha):
        """Test the trapezoidal mass on 10^4 points, as the solver samples it."""
        s = np.linspace(-0.5, 0.5, 10_000)
        mass = trapezoid(unit_shape(InitialProfile.create(family, alpha), s), s)
        assert mass == pytest.approx(1.0, rel=1e-4)

    @given(
        st.floats(min_value=0.0, max_value=0.5),
        st.floats(min_value=0.0, max_value=500.0),
    )
    @settings(max_examples=200, deadline=None)
    def test_f1_symmetric(self, s, alpha):
        """Test unit_shape(s) = unit_shape(-s) for F1."""
        profile = InitialProfile.create(Family.SYMMETRIC_F1, alpha)
        assert unit_shape(profile, s) == pytest.approx(unit_shape(profile, -s), rel=1e-12)

    def test_f1_peak(self):
        """Test the F1 peak value and location."""
        profile = InitialProfile.create("f1", 1.0)
        peak = profile_max(profile)
        assert peak.value == pytest.approx(1.5)
        assert peak.location == 0.0
        assert unit_shape(profile, 0.0) == pytest.approx(1.5)

    def test_f2_peak_location(self):
        """Test that F2 peaks at s = 1/6."""
        profile = InitialProfile.create("f2", 10.0)
        peak = profile_max(profile)
        assert peak.location == pytest.approx(1.0 / 6.0)
        s = np.linspace(-0.5, 0.5, 3001)
        values = unit_shape(profile, s)
        assert s[np.argmax(values)] == pytest.approx(1.0 / 6.0, abs=1e-3)
        assert values.max() == pytest.approx(peak.value, rel=1e-5)

    def test_vanishes_at_ends(self):
        """Test zero density at the habitat edges for alpha > 0."""
        profile = InitialProfile.create("f1", 2.0)
        assert unit_shape(profile, np.array([-0.5, 0.5])).tolist() == [0.0, 0.0]

    def test_outside_habitat(self):
        """Test that points beyond 1/2 raise DomainError."""
        with pytest.raises(DomainError):
            unit_shape(InitialProfile.create("f1", 1.0), 0.6)

    def test_dimensional_scaling(self):
        """Test that u0 integrates to n0 on [-l/2, l/2]."""
        profile = InitialProfile.create("f2", 3.0)
        mass, _ = quad(lambda x: eval_dimensional(profile, x, 4.0, 7.0), -2.0, 2.0)
        assert mass == pytest.approx(7.0, rel=1e-6)


class TestNondimensionalProfile:
    """Test cases for eval_nondim and sample_profile."""

    def test_mass_for_mu_above_nu(self):
        """Test that rho0 integrates to Q^(1/(mu-nu))."""
        exps = ModelExponents(4.0, 2.0)
        profile = InitialProfile.create("f1", 10.0)
        mass, _ = quad(lambda x: eval_nondim(profile, x, exps, 9.0), -0.5, 0.5)
        assert mass == pytest.approx(3.0, rel=1e-6)

    def test_mass_for_equal_exponents(self):
        """Test that rho0 integrates to one on [-sqrt(Q)/2, sqrt(Q)/2]."""
        exps = ModelExponents(2.0, 2.0)
        profile = InitialProfile.create("f2", 1.0)
        mass, _ = quad(lambda x: eval_nondim(profile, x, exps, 16.0), -2.0, 2.0)
        assert mass == pytest.approx(1.0, rel=1e-6)

    def test_mu_below_nu(self):
        """Test that mu < nu is rejected."""
        with pytest.raises(UnsupportedRegimeError):
            eval_nondim(InitialProfile.create("f1", 1.0), 0.0, ModelExponents(1.0, 2.0), 1.0)

    def test_scaled_peak(self):
        """Test profile_max with exponents and Q."""
        exps = ModelExponents(1.0, 1.0)
        profile = InitialProfile.create("f2", 2.0)
        peak = profile_max(profile, exps, 4.0)
        assert peak.location == pytest.approx(2.0 / 6.0)
        assert eval_nondim(profile, peak.location, exps, 4.0) == pytest.approx(peak.value)

    def test_sample_has_zero_ends(self):
        """Test that sampled profiles satisfy the boundary condition."""
        problem = problem_from_q(ModelExponents(1.0, 1.0), 12.0, InitialProfile.create("f1", 0.0))
        grid = GridSpec(m=10).grid_for(problem.L)
        rho = sample_profile(problem, grid)
        assert rho.shape == (11,)
        assert rho[0] == 0.0 and rho[-1] == 0.0
        assert np.allclose(rho[1:-1], 1.0 / math.sqrt(12.0))

    def test_sample_rejects_wrong_grid(self):
        """Test that a grid of the wrong length raises DomainError."""
        problem = problem_from_q(ModelExponents(1.0, 1.0), 12.0, InitialProfile.create("f1", 0.0))
        with pytest.raises(DomainError):
            sample_profile(problem, GridSpec(m=10).grid_for(1.0))
