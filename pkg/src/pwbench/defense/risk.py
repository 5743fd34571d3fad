"""Risk-adaptive login routing.

Four binary signals are compared against the user's baseline: unusual login
hour, unfamiliar region, unknown device, unknown network. The score is their
weighted sum and picks one of password-only, step-up MFA, or block.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone

UNKNOWN = "unknown"
SCORE_DECIMALS = 12


class RiskAction(str, enum.Enum):
    PASSWORD_ONLY = "PasswordOnly"
    REQUIRE_MFA = "RequireMFA"
    BLOCK = "Block"


@dataclass(frozen=True)
class UserBaseline:
    usual_hours: frozenset[int] = field(default_factory=lambda: frozenset(range(7, 23)))
    regions: frozenset[str] = frozenset()
    devices: frozenset[str] = frozenset()
    networks: frozenset[str] = frozenset()


@dataclass(frozen=True)
class RiskContext:
    login_time: float
    geo: str
    device_fingerprint: str
    network: str
    user_baseline: UserBaseline

    def __post_init__(self) -> None:
        for name in ("geo", "device_fingerprint", "network"):
            if not getattr(self, name):
                raise ValueError(f"{name} must be present; use {UNKNOWN!r} when unknown")


@dataclass(frozen=True)
class RiskWeights:
    time: float = 0.2
    geo: float = 0.3
    device: float = 0.3
    network: float = 0.2

    def __post_init__(self) -> None:
        if min(self.time, self.geo, self.device, self.network) < 0:
            raise ValueError("weights must be non-negative")
        if self.total <= 0:
            raise ValueError("weights must not all be zero")

    @property
    def total(self) -> float:
        return math.fsum((self.time, self.geo, self.device, self.network))

    def normalized(self) -> "RiskWeights":
        t = self.total
        return RiskWeights(self.time / t, self.geo / t, self.device / t, self.network / t)


@dataclass(frozen=True)
class RiskConfig:
    weights: RiskWeights = RiskWeights()
    low: float = 0.3
    high: float = 0.7

    def __post_init__(self) -> None:
        check_thresholds(self.low, self.high)


@dataclass(frozen=True)
class RiskDecision:
    score: float
    action: RiskAction | None
    factors: tuple[tuple[str, float], ...]


def check_thresholds(low: float, high: float) -> None:
    if not 0 <= low < high <= 1:
        raise ValueError(f"thresholds need 0 <= low < high <= 1, got ({low}, {high})")


def _hour(ts: float) -> int:
    return datetime.fromtimestamp(ts, tz=timezone.utc).hour


def signals(context: RiskContext) -> dict[str, int]:
    base = context.user_baseline

    def miss(value: str, known: frozenset[str]) -> int:
        return int(value == UNKNOWN or value not in known)

    return {
        "time": int(_hour(context.login_time) not in base.usual_hours),
        "geo": miss(context.geo, base.regions),
        "device": miss(context.device_fingerprint, base.devices),
        "network": miss(context.network, base.networks),
    }


def risk_score(context: RiskContext, weights: RiskWeights | None = None) -> RiskDecision:
    """Score only; ``action`` is left None for :func:`route_decision`.

    Weights are normalized to sum to 1 and the score is rounded to 12 decimals
    so that rescaled weights land on the same side of a threshold.
    """
    w = (weights or RiskWeights()).normalized()
    s = signals(context)
    factors = (
        ("time", w.time * s["time"]),
        ("geo", w.geo * s["geo"]),
        ("device", w.device * s["device"]),
        ("network", w.network * s["network"]),
    )
    score = round(math.fsum(c for _, c in factors), SCORE_DECIMALS)
    return RiskDecision(min(max(score, 0.0), 1.0), None, factors)


def route_decision(score: float, thresholds: tuple[float, float] = (0.3, 0.7)) -> RiskAction:
    low, high = thresholds
    check_thresholds(low, high)
    if not 0 <= score <= 1:
        raise ValueError(f"score must lie in [0, 1], got {score}")
    if score < low:
        return RiskAction.PASSWORD_ONLY
    if score < high:
        return RiskAction.REQUIRE_MFA
    return RiskAction.BLOCK


def assess(context: RiskContext, config: RiskConfig | None = None) -> RiskDecision:
    config = config or RiskConfig()
    decision = risk_score(context, config.weights)
    return RiskDecision(decision.score, route_decision(decision.score, (config.low, config.high)), decision.factors)
