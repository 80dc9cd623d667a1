"""Three-stroke cycle of a two-level working body between two heat baths.

One cycle is heat stroke (capped thermal process at the hot temperature),
work stroke (a population permutation, the swap in the optimal protocol) and
cold stroke (capped thermal process at the cold temperature).  All energies
are in units of the qubit splitting.  Sign conventions: q_hot and q_cold are
energy changes of the working body during the respective strokes (positive
when the body absorbs energy), work is the energy released during the unitary
stroke, and the first law reads work = q_hot + q_cold for a closing cycle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .ergotropy import WorkPermutation, apply_permutation
from .populations import QUBIT, PopulationVector, average_energy, qubit_population
from .thermal_qubit import MixingWeight, _lam_value, apply_mixture

__all__ = [
    "CycleReport",
    "EngineParams",
    "LawDiagnostics",
    "OrderViolationError",
    "PerformancePoint",
    "SingularCycleError",
    "UndefinedEfficiencyError",
    "UnsupportedRestrictionError",
    "check_laws",
    "cold_stroke",
    "cyclic_state",
    "eta_at_p",
    "heat_stroke",
    "open_cycle_performance",
    "optimal_performance",
    "positive_work_condition",
    "run_cycle",
    "virtual_temperature",
    "work_at_p",
    "work_stroke",
]

_CLOSURE_TOL = 1e-10
_SINGULAR_TOL = 1e-14


class SingularCycleError(ValueError):
    """The stroke composition has no unique fixed point."""


class OrderViolationError(ValueError):
    """Populations are not ordered the way the requested quantity assumes."""


class UndefinedEfficiencyError(ValueError):
    """Efficiency requested where the heat intake vanishes."""


class UnsupportedRestrictionError(ValueError):
    """Closed form requested outside the restriction it was derived for."""


@dataclass(frozen=True)
class EngineParams:
    """Bath temperatures (as beta times the splitting) and per-stroke mixing caps."""

    beta_h_omega: float
    beta_c_omega: float
    lambda_h_max: float = 1.0
    lambda_c_max: float = 1.0

    def __post_init__(self) -> None:
        for name in ("beta_h_omega", "beta_c_omega"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or value < 0.0:
                raise ValueError(f"{name} must be finite and >= 0, got {value!r}")
            object.__setattr__(self, name, value)
        for name in ("lambda_h_max", "lambda_c_max"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value!r}")
            object.__setattr__(self, name, value)

    @property
    def cold_hotter(self) -> bool:
        """True when the nominal cold bath is not actually colder."""
        return self.beta_c_omega <= self.beta_h_omega

    @property
    def exp_h(self) -> float:
        return math.exp(-self.beta_h_omega)

    @property
    def exp_c(self) -> float:
        return math.exp(-self.beta_c_omega)

    def carnot_efficiency(self) -> float:
        if self.beta_c_omega == 0.0:
            raise UndefinedEfficiencyError("Carnot bound undefined at beta_c_omega = 0")
        return 1.0 - self.beta_h_omega / self.beta_c_omega


@dataclass(frozen=True)
class CycleReport:
    """Bookkeeping for one pass of heat, work and cold strokes."""

    work: float
    q_hot: float
    q_cold: float
    efficiency: float | None
    closes: bool
    populations: tuple[PopulationVector, PopulationVector, PopulationVector]
    cold_hotter: bool


@dataclass(frozen=True)
class PerformancePoint:
    """Optimal closing-cycle figures for a given pair of mixing caps."""

    p_opt: float
    w_max: float
    eta_max: float | None
    operational: bool
    cold_hotter: bool = False


@dataclass(frozen=True)
class LawDiagnostics:
    """Outcome of the bookkeeping checks on a closing cycle."""

    ok: bool
    failures: tuple[str, ...]
    skipped: tuple[str, ...]


def heat_stroke(
    p: PopulationVector, lam: float | MixingWeight, params: EngineParams
) -> tuple[PopulationVector, float]:
    """Couple to the hot bath; returns the new populations and q_hot."""
    value = _lam_value(lam, params.lambda_h_max)
    out = apply_mixture(value, params.beta_h_omega, p)
    return out, average_energy(out, QUBIT) - average_energy(p, QUBIT)


def work_stroke(
    p: PopulationVector, perm: WorkPermutation
) -> tuple[PopulationVector, float]:
    """Permute the populations; returns the new populations and the work released."""
    out = apply_permutation(p, perm)
    return out, average_energy(p, QUBIT) - average_energy(out, QUBIT)


def cold_stroke(
    p: PopulationVector, lam: float | MixingWeight, params: EngineParams
) -> tuple[PopulationVector, float]:
    """Couple to the cold bath; returns the new populations and their energy change.

    The returned heat is the energy change of the working body, so it is
    negative when the body dumps heat into the cold bath.
    """
    value = _lam_value(lam, params.lambda_c_max)
    out = apply_mixture(value, params.beta_c_omega, p)
    return out, average_energy(out, QUBIT) - average_energy(p, QUBIT)


def run_cycle(
    p0: PopulationVector,
    lambda_h: float | MixingWeight,
    lambda_c: float | MixingWeight,
    perm: WorkPermutation,
    params: EngineParams,
) -> CycleReport:
    """Run heat -> work -> cold once from p0.

    When the final populations return to p0 within 1e-10 the cycle closes and
    q_cold is rebased to E(p0) - E(after work); that removes the closure
    residual, so work = q_hot + q_cold holds exactly for closing cycles.
    """
    after_heat, q_hot = heat_stroke(p0, lambda_h, params)
    after_work, work = work_stroke(after_heat, perm)
    after_cold, q_cold = cold_stroke(after_work, lambda_c, params)
    closes = all(
        abs(a - b) <= _CLOSURE_TOL for a, b in zip(after_cold.entries, p0.entries)
    )
    if closes:
        q_cold = average_energy(p0, QUBIT) - average_energy(after_work, QUBIT)
    efficiency = work / q_hot if q_hot != 0.0 else None
    return CycleReport(
        work=work,
        q_hot=q_hot,
        q_cold=q_cold,
        efficiency=efficiency,
        closes=closes,
        populations=(after_heat, after_work, after_cold),
        cold_hotter=params.cold_hotter,
    )


def cyclic_state(
    lambda_h: float | MixingWeight,
    lambda_c: float | MixingWeight,
    params: EngineParams,
) -> PopulationVector:
    """Fixed point of cold(swap(hot(p))) on the ground entry.

    The composition is affine in the ground entry, so the fixed point is
    solved directly instead of through any closed-form display.
    """
    lh = _lam_value(lambda_h, params.lambda_h_max)
    lc = _lam_value(lambda_c, params.lambda_c_max)
    # hot then swap: ground entry z = (1 - lh) + p * (lh * e_h + lh - 1)
    slope_hot = lh * params.exp_h + lh - 1.0
    offset_hot = 1.0 - lh
    # cold: ground entry lc + (1 - lc * (1 + e_c)) * z
    slope_cold = 1.0 - lc * (1.0 + params.exp_c)
    a = slope_cold * slope_hot
    b = lc + slope_cold * offset_hot
    if abs(1.0 - a) < _SINGULAR_TOL:
        raise SingularCycleError(
            f"cycle map is the identity at lambda_h={lh!r}, lambda_c={lc!r}"
        )
    return qubit_population(b / (1.0 - a))


def virtual_temperature(p: PopulationVector, params: EngineParams) -> float:
    """Inverse temperature (times the splitting) whose Gibbs state matches p.

    Only populations at least as ordered as the hot Gibbs state qualify;
    anything less ordered cannot be the output of the heat stroke.
    """
    if p.dim != 2:
        raise ValueError(f"expected a qubit population, got dimension {p.dim}")
    g = p.entries[0]
    if not 0.5 < g <= 1.0:
        raise OrderViolationError(f"ground population {g!r} not in (1/2, 1]")
    ratio = (1.0 - g) / g
    if ratio > params.exp_h + 1e-12:
        raise OrderViolationError(
            f"population ratio {ratio!r} exceeds the hot Boltzmann factor {params.exp_h!r}"
        )
    return math.inf if ratio == 0.0 else -math.log(ratio)


def _check_unit_interval(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value!r}")
    return value


def work_at_p(p: float, lambda_h_max: float, params: EngineParams) -> float:
    """Work per cycle of the closing protocol whose cyclic ground entry is p."""
    p = _check_unit_interval("p", p)
    lh = _check_unit_interval("lambda_h_max", lambda_h_max)
    return 1.0 - 2.0 * lh + 2.0 * p * (lh * params.exp_h + lh - 1.0)


def heat_intake_at_p(p: float, lambda_h_max: float, params: EngineParams) -> float:
    """Heat drawn from the hot bath by the same protocol."""
    p = _check_unit_interval("p", p)
    lh = _check_unit_interval("lambda_h_max", lambda_h_max)
    return lh * (p * (1.0 + params.exp_h) - 1.0)


def eta_at_p(p: float, lambda_h_max: float, params: EngineParams) -> float:
    """Efficiency of the same protocol; undefined when the heat intake is zero."""
    intake = heat_intake_at_p(p, lambda_h_max, params)
    if intake == 0.0:
        raise UndefinedEfficiencyError(
            f"zero heat intake at p={p!r}, lambda_h_max={lambda_h_max!r}"
        )
    return work_at_p(p, lambda_h_max, params) / intake


def optimal_performance(params: EngineParams) -> PerformancePoint:
    """Best work and efficiency over all closing three-stroke protocols.

    The optimal protocol mixes at the caps during both thermal strokes and
    swaps the populations in between; the closed forms are evaluated at that
    corner.  A vanishing heat intake leaves the efficiency undefined and the
    point reports as non-operational.
    """
    lh, lc = params.lambda_h_max, params.lambda_c_max
    eh, ec = params.exp_h, params.exp_c
    ehc = math.exp(-(params.beta_h_omega + params.beta_c_omega))
    den = (
        2.0
        - lc * (1.0 - lh)
        - lh
        - lc * (1.0 - lh) * ec
        - lh * (1.0 - lc) * eh
        + lh * lc * ehc
    )
    if abs(den) < _SINGULAR_TOL:
        raise SingularCycleError(f"degenerate cycle at caps ({lh!r}, {lc!r})")
    p_opt = (1.0 - lh * (1.0 - lc) - lc * (1.0 - lh) * ec) / den
    w_max = 1.0 - 2.0 * lh + 2.0 * (lh * eh - (1.0 - lh)) * p_opt
    eta_den = lh * (eh - (1.0 - lc) - lc * ehc)
    eta_max = None if eta_den == 0.0 else 1.0 - lc * (1.0 - lh * eh - (1.0 - lh) * ec) / eta_den
    return PerformancePoint(
        p_opt=p_opt,
        w_max=w_max,
        eta_max=eta_max,
        operational=w_max > 0.0,
        cold_hotter=params.cold_hotter,
    )


def positive_work_condition(params: EngineParams) -> bool:
    """Strict positive-work test; only valid without restrictions on the strokes."""
    if params.lambda_h_max != 1.0 or params.lambda_c_max != 1.0:
        raise UnsupportedRestrictionError(
            "positive-work condition assumes mixing caps of 1 on both strokes"
        )
    return 2.0 > math.exp(params.beta_h_omega) + math.exp(-params.beta_c_omega)


def open_cycle_performance(params: EngineParams) -> PerformancePoint:
    """Optimum when every cycle starts from a fresh cold-thermal qubit.

    A full cold reset is the mixture whose weight equals the cold Gibbs ground
    population: at that weight the cold stroke maps every input to the cold
    Gibbs state.  The hot stroke stays unrestricted.
    """
    lc = 1.0 / (1.0 + params.exp_c)
    return optimal_performance(
        EngineParams(params.beta_h_omega, params.beta_c_omega, 1.0, lc)
    )


def check_laws(
    report: CycleReport, params: EngineParams, tol: float = 1e-12
) -> LawDiagnostics:
    """Check the first law and, for engines, heat intake and the Carnot bound.

    The heat-intake and Carnot checks compare the hot and cold roles, so they
    are skipped (and reported as skipped) when the cold bath is not colder.
    """
    if not report.closes:
        raise ValueError("law checks need a closing cycle")
    failures: list[str] = []
    skipped: list[str] = []
    gap = abs(report.work - report.q_hot - report.q_cold)
    if gap > tol:
        failures.append(f"first law: |work - q_hot - q_cold| = {gap:.3e} exceeds {tol:.1e}")
    if report.work > 0.0:
        if params.cold_hotter:
            skipped.extend(["heat intake", "carnot bound"])
        elif report.q_hot <= 0.0:
            failures.append(
                f"heat intake: work = {report.work!r} > 0 but q_hot = {report.q_hot!r}"
            )
        else:
            eta = report.work / report.q_hot
            bound = params.carnot_efficiency()
            if not 0.0 < eta <= bound + tol:
                failures.append(f"carnot bound: eta = {eta!r} outside (0, {bound!r}]")
    return LawDiagnostics(ok=not failures, failures=tuple(failures), skipped=tuple(skipped))
