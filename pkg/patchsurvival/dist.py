"""
Initial-distribution families for patchsurvival.

Two one-parameter families of initial densities on a habitat are supported:

- F1, symmetric: proportional to (1/4 - s^2)^alpha, peak at the centre.
- F2, asymmetric: proportional to ((1/2 - s)(1/2 + s)^2)^gamma, peak at s = 1/6.

Both are normalised with Beta functions so they integrate to one on the unit
interval s in [-1/2, 1/2]. gamma is tied to alpha so that both families share
the same peak density. alpha = 0 gives the homogeneous distribution.

All Beta arithmetic is done in log space: B(501, 501) is far below the
smallest double.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import TYPE_CHECKING, NamedTuple, Optional, Union

import numpy as np
from scipy.optimize import bisect
from scipy.special import betaln

from patchsurvival.config import get_experiment_config
from patchsurvival.constants import DOMAIN_TOLERANCE, EXPONENT_TOLERANCE, Family
from patchsurvival.exceptions import ConvergenceError, DomainError, UnsupportedRegimeError

if TYPE_CHECKING:
    from patchsurvival.scaling import ModelExponents, NondimProblem
    from patchsurvival.solver import Grid

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

# (1/2 - s)(1/2 + s)^2 peaks at 4/27, attained at s = 1/6
_F2_PEAK_LOCATION = 1.0 / 6.0
_LOG_F1_SCALE = math.log(4.0)
_LOG_F2_SCALE = math.log(27.0 / 4.0)


def log_beta(p: float, q: float) -> float:
    """
    Natural logarithm of the Beta function.

    Args:
        p: First argument, must be positive
        q: Second argument, must be positive

    Returns:
        ln B(p, q)

    Raises:
        DomainError: If either argument is not positive
    """
    if not (p > 0.0 and q > 0.0):
        raise DomainError(f"Beta function needs positive arguments, got ({p}, {q})")
    return float(betaln(p, q))


def beta_function(p: float, q: float) -> float:
    """
    Beta function B(p, q) = Gamma(p) Gamma(q) / Gamma(p + q).

    Evaluated as exp(ln B) so large arguments do not overflow the Gamma
    factors. Very large arguments underflow to 0.0; use log_beta there.

    Args:
        p: First argument, must be positive
        q: Second argument, must be positive

    Returns:
        B(p, q)

    Raises:
        DomainError: If either argument is not positive

    Example:
        >>> round(beta_function(2.0, 2.0), 12)
        0.166666666667
    """
    return math.exp(log_beta(p, q))


def _log_f1_peak_scale(alpha: float) -> float:
    """ln of 4^alpha B(1+alpha, 1+alpha)."""
    return alpha * _LOG_F1_SCALE + float(betaln(1.0 + alpha, 1.0 + alpha))


def _log_f2_peak_scale(gamma: float) -> float:
    """ln of (27/4)^gamma B(1+gamma, 1+2 gamma)."""
    return gamma * _LOG_F2_SCALE + float(betaln(1.0 + gamma, 1.0 + 2.0 * gamma))


def gamma_residual(gamma: float, alpha: float) -> float:
    """
    Log-space residual of the peak-matching equation.

    Both sides are positive, so the residual is ln(right) - ln(left). It is
    positive below the root and negative above it.

    Args:
        gamma: Candidate F2 shape parameter
        alpha: F1 shape parameter

    Returns:
        ln[(27/4)^gamma B(1+gamma, 1+2gamma)] - ln[4^alpha B(1+alpha, 1+alpha)]
    """
    return _log_f2_peak_scale(gamma) - _log_f1_peak_scale(alpha)


@lru_cache(maxsize=512)
def _solve_gamma_cached(alpha: float, tol: float, max_doublings: int) -> float:
    upper = 2.0 * max(alpha, 1.0)
    doublings = 0
    while gamma_residual(upper, alpha) >= 0.0:
        doublings += 1
        if doublings > max_doublings:
            raise ConvergenceError(
                f"gamma bracket for alpha={alpha} not found after {max_doublings} doublings"
            )
        upper *= 2.0
        logger.debug("Expanding gamma bracket for alpha=%s to [0, %s]", alpha, upper)

    root = bisect(gamma_residual, 0.0, upper, args=(alpha,), xtol=tol, maxiter=500)
    logger.debug(
        "gamma(%s) = %.15g (residual %.3g)", alpha, root, gamma_residual(root, alpha)
    )
    return float(root)


def solve_gamma(
    alpha: float, tol: Optional[float] = None, max_doublings: Optional[int] = None
) -> float:
    """
    Solve 4^alpha B(1+alpha, 1+alpha) = (27/4)^gamma B(1+gamma, 1+2gamma) for gamma.

    The bracket [0, 2 max(alpha, 1)] has its upper end doubled until the
    log-space residual changes sign, then the root is bisected.

    Args:
        alpha: F1 shape parameter, nonnegative
        tol: Bisection tolerance on gamma (default: experiment config)
        max_doublings: Cap on bracket doublings (default: experiment config)

    Returns:
        gamma(alpha), with gamma(0) = 0 exactly

    Raises:
        DomainError: If alpha is negative or not finite
        ConvergenceError: If the bracket search exceeds its cap

    Example:
        >>> 0.5 < solve_gamma(1.0) < 0.6
        True
    """
    if not math.isfinite(alpha) or alpha < 0.0:
        raise DomainError(f"shape parameter alpha must be a finite value >= 0, got {alpha}")
    if alpha == 0.0:
        return 0.0

    settings = get_experiment_config().gamma
    return _solve_gamma_cached(
        float(alpha),
        settings.tolerance if tol is None else float(tol),
        settings.max_doublings if max_doublings is None else int(max_doublings),
    )


@dataclass(frozen=True)
class InitialProfile:
    """
    Initial-distribution family with its shape parameter.

    Attributes:
        family: Family selector
        alpha: Shape parameter, 0 for the homogeneous family
        gamma: Matched F2 exponent, solved from alpha; 0 outside F2
    """

    family: Family
    alpha: float = 0.0
    gamma: float = 0.0

    @classmethod
    def create(cls, family: Union[Family, str], alpha: float = 0.0) -> "InitialProfile":
        """
        Build a profile, solving gamma(alpha) for the asymmetric family.

        Args:
            family: Family or its tag ("homogeneous", "f1", "f2")
            alpha: Shape parameter; ignored for the homogeneous family

        Returns:
            InitialProfile instance

        Raises:
            DomainError: If alpha is negative or the family tag is unknown
        """
        try:
            family = Family(family)
        except ValueError:
            raise DomainError(f"unknown initial-distribution family: {family!r}")

        alpha = float(alpha)
        if not math.isfinite(alpha) or alpha < 0.0:
            raise DomainError(f"shape parameter alpha must be a finite value >= 0, got {alpha}")

        if family is Family.HOMOGENEOUS:
            return cls(family=family, alpha=0.0, gamma=0.0)
        if family is Family.ASYMMETRIC_F2:
            return cls(family=family, alpha=alpha, gamma=solve_gamma(alpha))
        return cls(family=family, alpha=alpha, gamma=0.0)

    @property
    def is_homogeneous(self) -> bool:
        return self.family is Family.HOMOGENEOUS or self.alpha == 0.0

    @property
    def label(self) -> str:
        """Short tag used in output, e.g. 'f1' or 'homogeneous'."""
        return self.family.value


class ProfileMax(NamedTuple):
    """Peak density of a profile and where it is attained."""

    value: float
    location: float


def unit_shape(profile: InitialProfile, s: ArrayLike) -> ArrayLike:
    """
    Evaluate the unit-mass shape on the unit interval.

    Args:
        profile: Initial profile
        s: Point or array of points in [-1/2, 1/2]

    Returns:
        Density integrating to one over [-1/2, 1/2]; same shape as s

    Raises:
        DomainError: If any point lies outside [-1/2, 1/2]
    """
    s_arr = np.asarray(s, dtype=float)
    if np.any(np.abs(s_arr) > 0.5 * (1.0 + DOMAIN_TOLERANCE)):
        raise DomainError("evaluation point outside the unit habitat [-1/2, 1/2]")
    s_arr = np.clip(s_arr, -0.5, 0.5)

    if profile.is_homogeneous:
        values = np.ones_like(s_arr)
    else:
        if profile.family is Family.SYMMETRIC_F1:
            base = (0.5 - s_arr) * (0.5 + s_arr)
            exponent = profile.alpha
            log_norm = float(betaln(1.0 + exponent, 1.0 + exponent))
        else:
            base = (0.5 - s_arr) * (0.5 + s_arr) ** 2
            exponent = profile.gamma
            log_norm = float(betaln(1.0 + exponent, 1.0 + 2.0 * exponent))
        with np.errstate(divide="ignore"):
            values = np.exp(exponent * np.log(np.maximum(base, 0.0)) - log_norm)

    if np.ndim(s) == 0:
        return float(values)
    return values


def eval_dimensional(profile: InitialProfile, x: ArrayLike, l: float, n0: float) -> ArrayLike:
    """
    Evaluate the dimensional initial density u0(x) on [-l/2, l/2].

    Args:
        profile: Initial profile
        x: Position or array of positions
        l: Habitat length
        n0: Total initial population

    Returns:
        Density with integral n0 over the habitat

    Raises:
        DomainError: If l or n0 is not positive or x lies outside the habitat

    Example:
        >>> round(eval_dimensional(InitialProfile.create("f1", 1.0), 0.0, 1.0, 1.0), 12)
        1.5
    """
    if not (l > 0.0 and n0 > 0.0):
        raise DomainError(f"habitat length and population must be positive, got l={l}, n0={n0}")
    if np.any(np.abs(np.asarray(x, dtype=float)) > 0.5 * l * (1.0 + DOMAIN_TOLERANCE)):
        raise DomainError(f"position outside the habitat [-{l / 2}, {l / 2}]")
    return (n0 / l) * unit_shape(profile, np.asarray(x, dtype=float) / l)


def _unconditional(exps: "ModelExponents") -> bool:
    return exps.mu < exps.nu - EXPONENT_TOLERANCE


def nondim_mass(exps: "ModelExponents", q: float) -> float:
    """
    Total nondimensional initial population N0.

    Args:
        exps: Model exponents
        q: Survival parameter

    Returns:
        Q^(1/(mu-nu)) when mu != nu, 1 when mu = nu
    """
    if exps.is_equal:
        return 1.0
    return math.exp(math.log(q) / (exps.mu - exps.nu))


def nondim_length(exps: "ModelExponents", q: float) -> float:
    """Domain length L: sqrt(Q) when mu = nu, otherwise 1."""
    return math.sqrt(q) if exps.is_equal else 1.0


def _nondim_density(
    profile: InitialProfile, X: ArrayLike, exps: "ModelExponents", q: float
) -> ArrayLike:
    length = nondim_length(exps, q)
    X_arr = np.asarray(X, dtype=float)
    if np.any(np.abs(X_arr) > 0.5 * length * (1.0 + DOMAIN_TOLERANCE)):
        raise DomainError(f"position outside the domain [-{length / 2}, {length / 2}]")
    values = (nondim_mass(exps, q) / length) * unit_shape(profile, X_arr / length)
    if np.ndim(X) == 0:
        return float(values)
    return values


def eval_nondim(
    profile: InitialProfile, X: ArrayLike, exps: "ModelExponents", q: float
) -> ArrayLike:
    """
    Evaluate the nondimensional initial density rho0(X).

    For mu > nu the domain is [-1/2, 1/2] and rho0 integrates to Q^(1/(mu-nu)).
    For mu = nu the domain is [-L/2, L/2] with L = sqrt(Q) and rho0 integrates
    to one.

    Args:
        profile: Initial profile
        X: Position or array of positions
        exps: Model exponents, mu >= nu
        q: Survival parameter Q > 0

    Returns:
        Nondimensional density

    Raises:
        UnsupportedRegimeError: If mu < nu
        DomainError: If Q is not positive or X lies outside the domain

    Example:
        >>> from patchsurvival.scaling import ModelExponents
        >>> eval_nondim(InitialProfile.create("f1", 0.0), 0.2, ModelExponents(4.0, 2.0), 4.0)
        2.0
    """
    if _unconditional(exps):
        raise UnsupportedRegimeError(
            f"nondimensional profiles are defined for mu >= nu, got mu={exps.mu}, nu={exps.nu}"
        )
    if not q > 0.0:
        raise DomainError(f"survival parameter Q must be positive, got {q}")
    return _nondim_density(profile, X, exps, q)


def profile_max(
    profile: InitialProfile,
    exps: Optional["ModelExponents"] = None,
    q: Optional[float] = None,
) -> ProfileMax:
    """
    Closed-form peak of a profile.

    Without exps and q the peak of the unit-mass shape on [-1/2, 1/2] is
    returned. With both, the peak of the nondimensional density.

    Args:
        profile: Initial profile
        exps: Optional model exponents
        q: Optional survival parameter

    Returns:
        ProfileMax(value, location); F1 peaks at 0, F2 at 1/6 of the domain
    """
    if profile.is_homogeneous:
        value, location = 1.0, 0.0
    elif profile.family is Family.SYMMETRIC_F1:
        value = math.exp(-_log_f1_peak_scale(profile.alpha))
        location = 0.0
    else:
        g = profile.gamma
        value = math.exp(-_log_f2_peak_scale(g))
        location = _F2_PEAK_LOCATION

    if exps is None or q is None:
        return ProfileMax(value, location)

    length = nondim_length(exps, q)
    return ProfileMax(value * nondim_mass(exps, q) / length, location * length)


def sample_profile(problem: "NondimProblem", grid: "Grid") -> np.ndarray:
    """
    Sample rho0 at the grid nodes with exact zero endpoints.

    The unconditional regime mu < nu is sampled with the unit-domain formula
    so it can still be integrated.

    Args:
        problem: Nondimensional problem
        grid: Grid whose length matches the problem domain

    Returns:
        Array of m + 1 nodal densities

    Raises:
        DomainError: If the grid length does not match the problem domain
    """
    if abs(grid.L - problem.L) > DOMAIN_TOLERANCE * max(1.0, problem.L):
        raise DomainError(f"grid length {grid.L} does not match domain length {problem.L}")

    nodes = grid.nodes()
    rho = np.array(_nondim_density(problem.profile, nodes, problem.exps, problem.q), dtype=float)
    rho[0] = 0.0
    rho[-1] = 0.0
    return rho
