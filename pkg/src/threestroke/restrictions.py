"""Mixing caps induced by restricted bath couplings.

Two concrete restrictions are modeled: a truncated-ladder bath of d+1 equally
spaced levels coupled through an energy-preserving joint unitary, and a
resonant exchange coupling to a full bosonic mode.  Either one caps the
reachable mixing weight of the thermal strokes below 1.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass

from .engine import EngineParams, UndefinedEfficiencyError

__all__ = [
    "JC_BRANCH_POINT",
    "RestrictionModel",
    "engine_params_from",
    "eta_finite_bath",
    "jc_clamped",
    "lambda_max_finite_bath",
    "lambda_max_jc",
    "lambda_max_jc_raw",
]

JC_BRANCH_POINT = math.log(4.0) / 3.0


def _check_beta(beta_omega: float) -> float:
    beta_omega = float(beta_omega)
    if not math.isfinite(beta_omega) or beta_omega < 0.0:
        raise ValueError(f"beta_omega must be finite and >= 0, got {beta_omega!r}")
    return beta_omega


def _check_bath_size(d: int) -> int:
    try:
        d = operator.index(d)
    except TypeError:
        raise ValueError(f"bath size must be an integer, got {d!r}") from None
    if d < 1:
        raise ValueError(f"bath size must be >= 1, got {d}")
    return d


def lambda_max_finite_bath(beta_omega: float, d: int) -> float:
    """Largest mixing weight reachable with a (d+1)-level ladder bath.

    Monotone in both arguments: it rises from d / (d + 1) at infinite
    temperature (also the value used at beta_omega = 0) toward 1 as either
    the bath grows or the temperature drops.
    """
    beta_omega = _check_beta(beta_omega)
    d = _check_bath_size(d)
    if beta_omega == 0.0:
        return d / (d + 1.0)
    return math.expm1(-beta_omega * d) / math.expm1(-beta_omega * (d + 1.0))


def lambda_max_jc_raw(beta_omega: float) -> float:
    """Resonant exchange-coupling cap, evaluated exactly as stated.

    The high-temperature branch below beta_omega = log(4)/3 exceeds 1 on part
    of its range and does not meet the other branch at the crossover; the
    stated expression is kept as is and lambda_max_jc clamps it.
    """
    beta_omega = _check_beta(beta_omega)
    if beta_omega <= JC_BRANCH_POINT:
        e = math.exp(-beta_omega)
        return (8.0 * e - e * e + math.exp(3.0 * beta_omega) + 8.0) / 16.0
    return math.exp(-4.0 * beta_omega) - math.exp(-3.0 * beta_omega) + 1.0


def lambda_max_jc(beta_omega: float) -> float:
    """lambda_max_jc_raw clamped into [0, 1]; jc_clamped reports when it acted."""
    return min(1.0, max(0.0, lambda_max_jc_raw(beta_omega)))


def jc_clamped(beta_omega: float) -> bool:
    """True when the stated exchange-coupling expression left [0, 1]."""
    raw = lambda_max_jc_raw(beta_omega)
    return raw < 0.0 or raw > 1.0


_KINDS = ("unrestricted", "finite_bath", "jaynes_cummings", "explicit")


@dataclass(frozen=True)
class RestrictionModel:
    """How a stroke's mixing cap arises: free, ladder bath, exchange coupling,
    or an explicitly fixed value."""

    kind: str
    d: int | None = None
    lam: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown restriction kind {self.kind!r}")
        if self.kind == "finite_bath":
            object.__setattr__(self, "d", _check_bath_size(self.d))
        elif self.d is not None:
            raise ValueError(f"restriction {self.kind!r} takes no bath size")
        if self.kind == "explicit":
            lam = float(self.lam)
            if not math.isfinite(lam) or not 0.0 <= lam <= 1.0:
                raise ValueError(f"explicit cap {lam!r} outside [0, 1]")
            object.__setattr__(self, "lam", lam)
        elif self.lam is not None:
            raise ValueError(f"restriction {self.kind!r} takes no explicit cap")

    @classmethod
    def unrestricted(cls) -> RestrictionModel:
        return cls("unrestricted")

    @classmethod
    def finite_bath(cls, d: int) -> RestrictionModel:
        return cls("finite_bath", d=d)

    @classmethod
    def jaynes_cummings(cls) -> RestrictionModel:
        return cls("jaynes_cummings")

    @classmethod
    def explicit(cls, lam: float) -> RestrictionModel:
        return cls("explicit", lam=lam)

    @classmethod
    def parse(cls, text: str) -> RestrictionModel:
        """Parse the command-line form: unrestricted | fb:D | jc | lam:X."""
        text = text.strip()
        if text == "unrestricted":
            return cls.unrestricted()
        if text == "jc":
            return cls.jaynes_cummings()
        if text.startswith("fb:"):
            try:
                return cls.finite_bath(int(text[3:]))
            except ValueError:
                raise ValueError(f"bad finite-bath spec {text!r}, expected fb:D") from None
        if text.startswith("lam:"):
            try:
                return cls.explicit(float(text[4:]))
            except ValueError:
                raise ValueError(f"bad explicit-cap spec {text!r}, expected lam:X") from None
        raise ValueError(
            f"bad restriction spec {text!r}, expected unrestricted, fb:D, jc or lam:X"
        )

    @property
    def label(self) -> str:
        if self.kind == "finite_bath":
            return f"fb{self.d}"
        if self.kind == "jaynes_cummings":
            return "jc"
        if self.kind == "explicit":
            return f"lam{self.lam:g}"
        return "unrestricted"

    def lambda_max(self, beta_omega: float) -> float:
        if self.kind == "finite_bath":
            return lambda_max_finite_bath(beta_omega, self.d)
        if self.kind == "jaynes_cummings":
            return lambda_max_jc(beta_omega)
        if self.kind == "explicit":
            _check_beta(beta_omega)
            return self.lam
        _check_beta(beta_omega)
        return 1.0

    def clamped(self, beta_omega: float) -> bool:
        """True when resolving this model at beta_omega required clamping."""
        return self.kind == "jaynes_cummings" and jc_clamped(beta_omega)


def engine_params_from(
    hot: RestrictionModel,
    cold: RestrictionModel,
    beta_h_omega: float,
    beta_c_omega: float,
) -> EngineParams:
    """Engine parameters with the caps resolved at the bath temperatures."""
    return EngineParams(
        beta_h_omega=beta_h_omega,
        beta_c_omega=beta_c_omega,
        lambda_h_max=hot.lambda_max(beta_h_omega),
        lambda_c_max=cold.lambda_max(beta_c_omega),
    )


def eta_finite_bath(beta_h_omega: float, beta_c_omega: float, d: int) -> float:
    """Optimal efficiency with (d+1)-level ladder baths on both strokes."""
    bh = _check_beta(beta_h_omega)
    bc = _check_beta(beta_c_omega)
    d = _check_bath_size(d)
    num = (
        -math.expm1(-d * bc) * -math.expm1(-bh) * -math.expm1(-(bc + d * bh))
    )
    den = (
        -math.expm1(-bc) * (math.exp(-bh) - math.exp(-d * bc)) * -math.expm1(-d * bh)
    )
    if den == 0.0:
        raise UndefinedEfficiencyError(
            f"efficiency undefined at beta_h_omega={bh!r}, beta_c_omega={bc!r}, d={d}"
        )
    return 1.0 - num / den
