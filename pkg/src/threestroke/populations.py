"""Population vectors, energy spectra and Gibbs states of finite-level systems.

Conventions used throughout the package: populations are probability vectors
listed ground state first, every spectrum starts at zero, and energies are
measured in units of the working-qubit splitting, so the qubit spectrum is
(0, 1) and all "beta" arguments are the dimensionless product of the inverse
temperature with that splitting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "EnergySpectrum",
    "GibbsVector",
    "PopulationVector",
    "QUBIT",
    "average_energy",
    "gibbs_vector",
    "qubit_population",
]

_SUM_TOL = 1e-12
_DRIFT_TOL = 1e-9


@dataclass(frozen=True)
class PopulationVector:
    """Probability vector over energy levels, ground entry first.

    Entries must lie in [0, 1] and sum to one within 1e-12.  Sums drifting
    further (but staying within 1e-9) are renormalized and the instance is
    marked with ``renormalized=True`` so the correction is never silent;
    anything worse is rejected as a caller bug.
    """

    entries: tuple[float, ...]
    renormalized: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        entries = tuple(float(x) for x in self.entries)
        if not entries:
            raise ValueError("population vector needs at least one entry")
        for x in entries:
            if not math.isfinite(x):
                raise ValueError(f"non-finite population entry {x!r}")
            if x < -_SUM_TOL or x > 1.0 + _SUM_TOL:
                raise ValueError(f"population entry {x!r} outside [0, 1]")
        total = math.fsum(entries)
        drift = abs(total - 1.0)
        if drift > _DRIFT_TOL:
            raise ValueError(f"population sum {total!r} too far from 1 to renormalize")
        if drift > _SUM_TOL:
            entries = tuple(x / total for x in entries)
            object.__setattr__(self, "renormalized", True)
        object.__setattr__(self, "entries", entries)

    @property
    def dim(self) -> int:
        return len(self.entries)

    def as_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=float)


@dataclass(frozen=True)
class GibbsVector(PopulationVector):
    """Thermal population vector; entries are strictly positive."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if any(x <= 0.0 for x in self.entries):
            raise ValueError("Gibbs vector entries must be strictly positive")


@dataclass(frozen=True)
class EnergySpectrum:
    """Nondecreasing energy levels with the ground level pinned at zero."""

    levels: tuple[float, ...]

    def __post_init__(self) -> None:
        levels = tuple(float(x) for x in self.levels)
        if not levels:
            raise ValueError("energy spectrum needs at least one level")
        for x in levels:
            if not math.isfinite(x):
                raise ValueError(f"non-finite energy level {x!r}")
        if levels[0] != 0.0:
            raise ValueError(f"ground level must sit at 0, got {levels[0]!r}")
        if any(a > b for a, b in zip(levels, levels[1:])):
            raise ValueError(f"levels must be nondecreasing, got {levels!r}")
        object.__setattr__(self, "levels", levels)

    @property
    def dim(self) -> int:
        return len(self.levels)


QUBIT = EnergySpectrum((0.0, 1.0))


def qubit_population(ground: float) -> PopulationVector:
    """Two-level population vector with the given ground occupation."""
    return PopulationVector((ground, 1.0 - float(ground)))


def gibbs_vector(beta: float, spectrum: EnergySpectrum) -> GibbsVector:
    """Gibbs populations exp(-beta * E_i) / Z over the given spectrum."""
    if not math.isfinite(beta) or beta < 0.0:
        raise ValueError(f"inverse temperature must be finite and >= 0, got {beta!r}")
    weights = [math.exp(-beta * e) for e in spectrum.levels]
    z = math.fsum(weights)
    return GibbsVector(tuple(w / z for w in weights))


def average_energy(p: PopulationVector, spectrum: EnergySpectrum) -> float:
    """Mean energy sum_i p_i E_i."""
    if p.dim != spectrum.dim:
        raise ValueError(f"dimension mismatch: {p.dim} populations, {spectrum.dim} levels")
    return math.fsum(x * e for x, e in zip(p.entries, spectrum.levels))
