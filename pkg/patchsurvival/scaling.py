"""
Nondimensionalization and critical sizes for patchsurvival.

The physical problem u_t = D (u^(nu-1) u_x)_x + a u^mu on [-l/2, l/2] with a
total initial population n0 reduces to a single survival parameter

    Q = (a/D) l^(nu + 2 - mu) n0^(mu - nu).

For mu > nu the nondimensional habitat is [-1/2, 1/2] and the initial mass is
Q^(1/(mu-nu)). For mu = nu the habitat is [-L/2, L/2] with L = sqrt(Q) and the
initial mass is one. Inverting Q = Q_c gives the critical habitat size and
the critical total population.
"""

import logging
import math
from dataclasses import dataclass
from typing import NamedTuple, Tuple

from patchsurvival.constants import DOMAIN_TOLERANCE, EXPONENT_TOLERANCE, Direction
from patchsurvival.dist import InitialProfile, nondim_length, nondim_mass
from patchsurvival.exceptions import DegenerateCaseError, DomainError, UnsupportedRegimeError
from utils.validation_utils import validate_positive_fields

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ModelExponents:
    """
    Growth exponent mu and diffusion exponent nu.

    Attributes:
        mu: Growth exponent, positive
        nu: Diffusion exponent, positive
    """

    mu: float
    nu: float

    def __post_init__(self) -> None:
        valid, message = validate_positive_fields(mu=self.mu, nu=self.nu)
        if not valid:
            raise DomainError(message)

    @property
    def gap(self) -> float:
        """mu - nu."""
        return self.mu - self.nu

    @property
    def is_equal(self) -> bool:
        """True when mu = nu within EXPONENT_TOLERANCE."""
        return abs(self.gap) <= EXPONENT_TOLERANCE

    @property
    def is_conditional(self) -> bool:
        """True when survival depends on the parameters (mu >= nu)."""
        return self.gap >= -EXPONENT_TOLERANCE

    @property
    def is_degenerate(self) -> bool:
        """True when mu = nu + 2 and the habitat size drops out of Q."""
        return abs(self.gap - 2.0) <= EXPONENT_TOLERANCE

    @property
    def length_exponent(self) -> float:
        """Exponent of l in Q: nu + 2 - mu."""
        return self.nu + 2.0 - self.mu

    def require_conditional(self, strict: bool = False) -> None:
        """
        Reject exponents outside conditional persistence.

        Args:
            strict: Also reject mu = nu

        Raises:
            UnsupportedRegimeError: If mu < nu, or mu <= nu when strict
        """
        if not self.is_conditional or (strict and self.is_equal):
            relation = "mu > nu" if strict else "mu >= nu"
            raise UnsupportedRegimeError(
                f"operation requires {relation}, got mu={self.mu}, nu={self.nu}"
            )


@dataclass(frozen=True)
class PhysicalParams:
    """
    Dimensional model parameters.

    Attributes:
        a: Growth coefficient
        D: Diffusion coefficient
        l: Habitat length
        n0: Total initial population
    """

    a: float
    D: float
    l: float
    n0: float

    def __post_init__(self) -> None:
        valid, message = validate_positive_fields(a=self.a, D=self.D, l=self.l, n0=self.n0)
        if not valid:
            raise DomainError(message)


@dataclass(frozen=True)
class NondimProblem:
    """
    Solver-ready nondimensional problem.

    Attributes:
        exps: Model exponents
        L: Domain length, 1 for mu != nu and sqrt(Q) for mu = nu
        q: Survival parameter Q
        profile: Initial-distribution family
    """

    exps: ModelExponents
    L: float
    q: float
    profile: InitialProfile

    def __post_init__(self) -> None:
        if not (self.q > 0.0 and math.isfinite(self.q)):
            raise DomainError(f"survival parameter Q must be positive, got {self.q}")
        expected = nondim_length(self.exps, self.q)
        if abs(self.L - expected) > DOMAIN_TOLERANCE * expected:
            raise DomainError(
                f"domain length {self.L} inconsistent with Q={self.q} (expected {expected})"
            )

    @property
    def domain(self) -> Tuple[float, float]:
        return (-0.5 * self.L, 0.5 * self.L)

    @property
    def initial_mass(self) -> float:
        """Integral of rho0 over the domain."""
        return nondim_mass(self.exps, self.q)


class CriticalHabitat(NamedTuple):
    """Critical habitat size and which side of it survives."""

    size: float
    direction: Direction


class EqualExponentCritical(NamedTuple):
    """Closed-form thresholds for mu = nu."""

    qc: float
    domain_length: float


def compute_q(exps: ModelExponents, phys: PhysicalParams) -> float:
    """
    Survival parameter Q = (a/D) l^(nu+2-mu) n0^(mu-nu).

    Args:
        exps: Model exponents
        phys: Physical parameters

    Returns:
        Q

    Example:
        >>> phys = PhysicalParams(a=3.0, D=1.0, l=2.0, n0=5.0)
        >>> round(compute_q(ModelExponents(2.0, 1.0), phys), 9)
        120.0
    """
    log_q = (
        math.log(phys.a / phys.D)
        + exps.length_exponent * math.log(phys.l)
        + exps.gap * math.log(phys.n0)
    )
    return math.exp(log_q)


def problem_from_q(exps: ModelExponents, q: float, profile: InitialProfile) -> NondimProblem:
    """
    Build the nondimensional problem directly from Q.

    mu < nu is accepted here so the solver can integrate it on the unit domain.

    Args:
        exps: Model exponents
        q: Survival parameter
        profile: Initial profile

    Returns:
        NondimProblem
    """
    if not q > 0.0:
        raise DomainError(f"survival parameter Q must be positive, got {q}")
    return NondimProblem(exps=exps, L=nondim_length(exps, q), q=float(q), profile=profile)


def nondimensionalize(
    exps: ModelExponents, phys: PhysicalParams, profile: InitialProfile
) -> NondimProblem:
    """
    Reduce a physical problem to its nondimensional form.

    Args:
        exps: Model exponents, mu >= nu
        phys: Physical parameters
        profile: Initial profile

    Returns:
        NondimProblem with Q from compute_q

    Raises:
        UnsupportedRegimeError: If mu < nu
    """
    exps.require_conditional()
    q = compute_q(exps, phys)
    problem = problem_from_q(exps, q, profile)
    logger.info("Nondimensionalized: Q=%.10g, L=%.10g", problem.q, problem.L)
    return problem


def equal_exponent_critical(exps: ModelExponents) -> EqualExponentCritical:
    """
    Closed-form critical values for mu = nu.

    Args:
        exps: Model exponents with mu = nu

    Returns:
        EqualExponentCritical(qc=pi^2/mu, domain_length=pi/sqrt(mu))

    Raises:
        UnsupportedRegimeError: If mu != nu
    """
    if not exps.is_equal:
        raise UnsupportedRegimeError(
            f"closed-form threshold needs mu = nu, got mu={exps.mu}, nu={exps.nu}"
        )
    return EqualExponentCritical(
        qc=math.pi**2 / exps.mu, domain_length=math.pi / math.sqrt(exps.mu)
    )


def critical_habitat(
    exps: ModelExponents, qc: float, a: float, D: float, n0: float
) -> CriticalHabitat:
    """
    Habitat length at which Q equals Q_c for a fixed total population.

    For mu < nu + 2 survival requires l >= l_c; for mu > nu + 2 it requires
    l <= l_c. For mu = nu, l_c = sqrt((D/a) Q_c) and n0 plays no role.

    Args:
        exps: Model exponents, mu >= nu and mu != nu + 2
        qc: Critical survival parameter
        a: Growth coefficient
        D: Diffusion coefficient
        n0: Total initial population

    Returns:
        CriticalHabitat(size, direction)

    Raises:
        UnsupportedRegimeError: If mu < nu
        DegenerateCaseError: If mu = nu + 2
        DomainError: If any argument is not positive
    """
    valid, message = validate_positive_fields(qc=qc, a=a, D=D, n0=n0)
    if not valid:
        raise DomainError(message)
    exps.require_conditional()

    if exps.is_equal:
        return CriticalHabitat(math.sqrt(D / a * qc), Direction.MINIMUM_SIZE)
    if exps.is_degenerate:
        raise DegenerateCaseError(
            "mu = nu + 2: the habitat size drops out of Q; use critical_population"
        )

    exponent = exps.length_exponent
    size = math.exp((math.log(D / a * qc) - exps.gap * math.log(n0)) / exponent)
    direction = Direction.MINIMUM_SIZE if exponent > 0.0 else Direction.MAXIMUM_SIZE
    logger.debug("critical habitat l_c=%.10g (%s)", size, direction.value)
    return CriticalHabitat(size, direction)


def critical_population(exps: ModelExponents, qc: float, a: float, D: float, l: float) -> float:
    """
    Minimum total initial population ensuring survival on a habitat of length l.

    For mu = nu + 2 the result is sqrt((D/a) Q_c) for every l.

    Args:
        exps: Model exponents, mu > nu
        qc: Critical survival parameter
        a: Growth coefficient
        D: Diffusion coefficient
        l: Habitat length

    Returns:
        n0_c

    Raises:
        UnsupportedRegimeError: If mu <= nu
        DomainError: If any argument is not positive
    """
    valid, message = validate_positive_fields(qc=qc, a=a, D=D, l=l)
    if not valid:
        raise DomainError(message)
    exps.require_conditional(strict=True)

    return math.exp((math.log(D / a * qc) - exps.length_exponent * math.log(l)) / exps.gap)
