"""Innovation laws driving the bilinear recursion.

Each :class:`InnovationSpec` is an immutable value carrying a family tag and
its parameters. It is the single source of the raw moments
``mu[i] = E(eps**i)`` (``i = 0..8``) used by the analytic modules and of the
random variates used by the simulator.

Sampler realisations (fixed so that streams are reproducible for a given
seed and numpy version, all drawn from a ``numpy.random.Generator`` on
``PCG64``):

==================  =====================================================
family              transform of the generator output
==================  =====================================================
UniformPositive     ``alpha * u``                        (inversion)
Exponential         ``-alpha * log1p(-u)``               (inversion)
Pareto              ``alpha * (1 - u) ** (-1 / nu)``     (inversion)
UniformSymmetric    ``sqrt(3) * (2u - 1)``               (inversion)
StandardNormal      ``Generator.standard_normal``        (ziggurat)
ScaledStudentT      ``sqrt((nu-2)/nu) * Z / sqrt(G / nu)`` with
                    ``Z`` standard normal and ``G = 2 * standard_gamma(nu/2)``
                    (chi-square); all ``Z`` are drawn before all ``G``
==================  =====================================================

``u`` is ``Generator.random`` (uniform on ``[0, 1)``).
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import digamma

from .errors import DomainError

__all__ = [
    "Family",
    "InnovationSpec",
    "MomentVector",
    "CATALOG",
    "from_name",
    "raw_moments",
    "innovation_excess_kurtosis",
    "expected_log_abs",
    "log_moment_exists",
    "make_rng",
    "sample",
]

MAX_ORDER = 8
_EULER_GAMMA = 0.57721566490153286061
_SQRT3 = math.sqrt(3.0)


class Family(enum.Enum):
    UNIFORM_POSITIVE = "UniformPositive"
    EXPONENTIAL = "Exponential"
    PARETO = "Pareto"
    UNIFORM_SYMMETRIC = "UniformSymmetric"
    STANDARD_NORMAL = "StandardNormal"
    SCALED_STUDENT_T = "ScaledStudentT"


_SCALE_FAMILIES = frozenset({Family.UNIFORM_POSITIVE, Family.EXPONENTIAL, Family.PARETO})
_SYMMETRIC_FAMILIES = frozenset(
    {Family.UNIFORM_SYMMETRIC, Family.STANDARD_NORMAL, Family.SCALED_STUDENT_T}
)


@dataclass(frozen=True)
class InnovationSpec:
    """Distribution of the i.i.d. innovations.

    ``alpha`` is the scale of the three non-negative families (upper end of
    the uniform support, exponential mean, Pareto lower bound); ``nu`` is
    the shape of Pareto and Student laws. Both must be given only where
    they apply. Validation is eager: every downstream formula needs a
    finite eighth moment.
    """

    family: Family
    alpha: float | None = None
    nu: float | None = None

    def __post_init__(self):
        fam = self.family
        if not isinstance(fam, Family):
            raise DomainError(f"unknown innovation family {fam!r}")
        if fam in _SCALE_FAMILIES:
            if self.alpha is None or not math.isfinite(self.alpha) or self.alpha <= 0:
                raise DomainError(f"{fam.value}: scale alpha must be a finite positive real, got {self.alpha!r}")
        elif self.alpha is not None:
            raise DomainError(f"{fam.value} has no scale parameter")
        if fam in (Family.PARETO, Family.SCALED_STUDENT_T):
            if self.nu is None or not math.isfinite(self.nu):
                raise DomainError(f"{fam.value}: shape nu must be a finite real")
            if self.nu <= MAX_ORDER:
                raise DomainError(
                    f"{fam.value}: shape nu={self.nu:g} must exceed {MAX_ORDER}; "
                    f"the moment of order {MAX_ORDER} does not exist"
                )
        elif self.nu is not None:
            raise DomainError(f"{fam.value} has no shape parameter")

    # constructors -------------------------------------------------------
    @classmethod
    def uniform_positive(cls, alpha: float = 1.0) -> InnovationSpec:
        return cls(Family.UNIFORM_POSITIVE, alpha=float(alpha))

    @classmethod
    def exponential(cls, alpha: float = 1.0) -> InnovationSpec:
        return cls(Family.EXPONENTIAL, alpha=float(alpha))

    @classmethod
    def pareto(cls, nu: float, alpha: float = 1.0) -> InnovationSpec:
        return cls(Family.PARETO, alpha=float(alpha), nu=float(nu))

    @classmethod
    def uniform_symmetric(cls) -> InnovationSpec:
        return cls(Family.UNIFORM_SYMMETRIC)

    @classmethod
    def standard_normal(cls) -> InnovationSpec:
        return cls(Family.STANDARD_NORMAL)

    @classmethod
    def scaled_student_t(cls, nu: float) -> InnovationSpec:
        return cls(Family.SCALED_STUDENT_T, nu=float(nu))

    # properties ----------------------------------------------------------
    @property
    def is_scale_family(self) -> bool:
        return self.family in _SCALE_FAMILIES

    @property
    def is_symmetric(self) -> bool:
        return self.family in _SYMMETRIC_FAMILIES

    @property
    def is_nonnegative(self) -> bool:
        return self.family in _SCALE_FAMILIES

    @property
    def name(self) -> str:
        """Catalog name of the family (the scale is not part of the name)."""
        fam = self.family
        if fam is Family.UNIFORM_POSITIVE:
            return "uniform0a"
        if fam is Family.EXPONENTIAL:
            return "exp"
        if fam is Family.PARETO:
            return f"pareto{self.nu:g}"
        if fam is Family.UNIFORM_SYMMETRIC:
            return "unif-sym"
        if fam is Family.STANDARD_NORMAL:
            return "normal"
        return f"t{self.nu:g}"

    def with_alpha(self, alpha: float) -> InnovationSpec:
        if not self.is_scale_family:
            raise DomainError(f"{self.family.value} is not a scale family")
        return InnovationSpec(self.family, alpha=float(alpha), nu=self.nu)


CATALOG: dict[str, InnovationSpec] = {
    "uniform0a": InnovationSpec.uniform_positive(1.0),
    "exp": InnovationSpec.exponential(1.0),
    "pareto12": InnovationSpec.pareto(12.0),
    "pareto9": InnovationSpec.pareto(9.0),
    "unif-sym": InnovationSpec.uniform_symmetric(),
    "normal": InnovationSpec.standard_normal(),
    "t30": InnovationSpec.scaled_student_t(30.0),
    "t9": InnovationSpec.scaled_student_t(9.0),
}

_ALIASES = {"uniform": "uniform0a", "exponential": "exp", "unif_sym": "unif-sym", "uniform-sym": "unif-sym"}
_SHAPED = re.compile(r"^(pareto|t)(\d+(?:\.\d+)?)$")


def from_name(name: str, alpha: float | None = None) -> InnovationSpec:
    """Look up a catalog family by name.

    Besides the fixed catalog, ``pareto<nu>`` and ``t<nu>`` are accepted for
    any admissible shape. ``alpha`` overrides the unit scale of scale
    families.
    """
    key = _ALIASES.get(name.strip().lower(), name.strip().lower())
    spec = CATALOG.get(key)
    if spec is None:
        m = _SHAPED.match(key)
        if m is None:
            known = ", ".join(CATALOG)
            raise DomainError(f"unknown family {name!r}; known: {known}, pareto<nu>, t<nu>")
        nu = float(m.group(2))
        spec = InnovationSpec.pareto(nu) if m.group(1) == "pareto" else InnovationSpec.scaled_student_t(nu)
    if alpha is not None:
        spec = spec.with_alpha(alpha)
    return spec


@dataclass(frozen=True)
class MomentVector:
    """Raw moments ``mu[0..8]`` with ``mu[0] == 1``; index by order."""

    mu: tuple[float, ...]

    def __post_init__(self):
        if len(self.mu) != MAX_ORDER + 1:
            raise DomainError(f"expected {MAX_ORDER + 1} moments (orders 0..{MAX_ORDER}), got {len(self.mu)}")
        if self.mu[2] <= 0:
            raise DomainError("mu_2 must be positive")

    def __getitem__(self, i: int) -> float:
        return self.mu[i]

    def __len__(self) -> int:
        return len(self.mu)

    def __iter__(self):
        return iter(self.mu)


def _scaled_student_even_moment(nu: float, m: int) -> float:
    """``E(eps^(2m))`` for ``eps = sqrt((nu-2)/nu) Y``, ``Y ~ t(nu)``, ``2m < nu``.

    Uses ``E(Y^(2m)) = nu^m Gamma(m+1/2) Gamma(nu/2-m) / (sqrt(pi) Gamma(nu/2))``
    with both Gamma ratios unrolled, i.e.
    ``(nu-2)^m prod_{j=1..m} (2j-1) / (nu-2j)``; the product keeps the
    unit variance exact where the log-Gamma route loses ulps.
    """
    out = (nu - 2.0) ** m
    for j in range(1, m + 1):
        out *= (2 * j - 1) / (nu - 2 * j)
    return out


def _double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


@lru_cache(maxsize=256)
def raw_moments(spec: InnovationSpec) -> MomentVector:
    """Closed-form raw moments of orders 0 through 8."""
    fam = spec.family
    mu = [1.0]
    for i in range(1, MAX_ORDER + 1):
        if fam is Family.UNIFORM_POSITIVE:
            v = spec.alpha**i / (i + 1)
        elif fam is Family.EXPONENTIAL:
            v = math.factorial(i) * spec.alpha**i
        elif fam is Family.PARETO:
            v = spec.nu * spec.alpha**i / (spec.nu - i)
        elif i % 2:
            v = 0.0
        elif fam is Family.UNIFORM_SYMMETRIC:
            v = _SQRT3**i / (i + 1)
        elif fam is Family.STANDARD_NORMAL:
            v = float(_double_factorial(i - 1))
        else:
            v = _scaled_student_even_moment(spec.nu, i // 2)
        mu.append(float(v))
    return MomentVector(tuple(mu))


def innovation_excess_kurtosis(spec: InnovationSpec) -> float:
    mu = raw_moments(spec)
    m1 = mu[1]
    var = mu[2] - m1 * m1
    c4 = mu[4] - 4 * mu[3] * m1 + 6 * mu[2] * m1**2 - 3 * m1**4
    return c4 / var**2 - 3.0


def expected_log_abs(spec: InnovationSpec) -> float:
    """``E(ln|eps|)`` in closed form."""
    fam = spec.family
    if fam is Family.UNIFORM_POSITIVE:
        return math.log(spec.alpha) - 1.0
    if fam is Family.EXPONENTIAL:
        return math.log(spec.alpha) - _EULER_GAMMA
    if fam is Family.PARETO:
        return math.log(spec.alpha) + 1.0 / spec.nu
    if fam is Family.UNIFORM_SYMMETRIC:
        return 0.5 * math.log(3.0) - 1.0
    log_abs_normal = -0.5 * (_EULER_GAMMA + math.log(2.0))
    if fam is Family.STANDARD_NORMAL:
        return log_abs_normal
    nu = spec.nu
    # ln|T| = ln|Z| - ln(V/nu)/2 with V ~ chi2(nu)
    e_log_v_over_nu = float(digamma(nu / 2.0)) + math.log(2.0 / nu)
    return 0.5 * math.log((nu - 2.0) / nu) + log_abs_normal - 0.5 * e_log_v_over_nu


def log_moment_exists(spec: InnovationSpec) -> bool:
    """Whether ``E|ln|eps||`` is finite.

    True for every catalog law: bounded supports away from an atom at zero,
    exponential and Pareto tails, and normal/Student densities all
    integrate ``|ln|x||``.
    """
    return math.isfinite(expected_log_abs(spec))


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """PCG64 generator for ``seed`` and an optional stream index path.

    Distinct stream paths give statistically independent generators
    (``SeedSequence`` spawn keys), so parallel users can derive their state
    from ``(seed, index)`` without coordination.
    """
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise DomainError(f"seed must be a 64-bit unsigned integer, got {seed}")
    ss = np.random.SeedSequence(seed, spawn_key=tuple(int(s) for s in stream))
    return np.random.Generator(np.random.PCG64(ss))


def sample(spec: InnovationSpec, rng: np.random.Generator, size: int | None = None):
    """Draw innovations; returns a float when ``size`` is None."""
    fam = spec.family
    n = 1 if size is None else int(size)
    if fam is Family.STANDARD_NORMAL:
        out = rng.standard_normal(n)
    elif fam is Family.SCALED_STUDENT_T:
        nu = spec.nu
        z = rng.standard_normal(n)
        chi2 = 2.0 * rng.standard_gamma(nu / 2.0, n)
        out = math.sqrt((nu - 2.0) / nu) * z / np.sqrt(chi2 / nu)
    else:
        u = rng.random(n)
        if fam is Family.UNIFORM_POSITIVE:
            out = spec.alpha * u
        elif fam is Family.EXPONENTIAL:
            out = -spec.alpha * np.log1p(-u)
        elif fam is Family.PARETO:
            out = spec.alpha * (1.0 - u) ** (-1.0 / spec.nu)
        else:
            out = _SQRT3 * (2.0 * u - 1.0)
    if size is None:
        return float(out[0])
    return out
