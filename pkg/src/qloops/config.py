"""Modulus and tolerance configuration."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass


@dataclass(frozen=True)
class ModulusConfig:
    """The modulus tau of the elliptic curve; q = exp(2*pi*i*tau).

    tau is the primitive: fractional powers of q are always taken as
    ``exp(2*pi*i*tau*r)`` so the branch is fixed once.
    """

    tau: complex = complex(0.3, 1.1)

    def __post_init__(self):
        tau = complex(self.tau)
        if not (math.isfinite(tau.real) and math.isfinite(tau.imag)):
            raise ValueError("tau must be finite")
        if tau.imag <= 0:
            raise ValueError(f"Im(tau) must be positive, got {tau}")
        object.__setattr__(self, "tau", tau)

    @property
    def q(self) -> complex:
        return cmath.exp(2j * math.pi * self.tau)

    def q_power(self, r) -> complex:
        """q**r on the branch fixed by tau; r may be a Fraction."""
        return cmath.exp(2j * math.pi * self.tau * float(r))

    def elliptic_value(self, t_tau, t_one) -> complex:
        return cmath.exp(2j * math.pi * (self.tau * float(t_tau) + float(t_one)))


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical tolerances.

    eps_eig     residual / verification tolerance (relative to max(1, norm))
    eps_cluster relative single-linkage threshold for eigenvalue clustering
    eps_rank    relative singular-value threshold for rank decisions
    eps_res     resonance recognition tolerance (relative)
    d_max       denominator cap for rational recognition
    l_max       bound on |q-exponents| searched
    trunc       default truncation order, in exponent units
    """

    eps_eig: float = 1e-9
    eps_cluster: float = 1e-3
    eps_rank: float = 1e-7
    eps_res: float = 1e-6
    d_max: int = 24
    l_max: int = 64
    trunc: int = 32

    def __post_init__(self):
        for name in ("eps_eig", "eps_cluster", "eps_rank", "eps_res"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        for name in ("d_max", "l_max", "trunc"):
            if int(getattr(self, name)) < 1:
                raise ValueError(f"{name} must be >= 1")


DEFAULT_MODULUS = ModulusConfig()
DEFAULT_TOLERANCE = ToleranceConfig()
