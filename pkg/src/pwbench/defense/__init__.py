"""Policy scoring, honeywords, lockout, risk routing and simulated MFA."""

from pwbench.defense.auth import AuthOutcome, AuthResponse, Authenticator, authenticate, complete_mfa
from pwbench.defense.events import AuthEvent, EventKind, EventLog
from pwbench.defense.honeychecker import (
    CheckerError,
    CheckerUnavailable,
    CheckResult,
    Honeychecker,
    HoneycheckerClient,
    HoneycheckerServer,
    IndexOutOfRange,
    UnknownUser,
    honeychecker_check,
    seal_index,
)
from pwbench.defense.honeywords import HoneywordError, Strategy, StrategyError, generate_honeywords, make_sweetwords
from pwbench.defense.lockout import LockoutConfig, LockoutState, LockoutTable, record_attempt
from pwbench.defense.mfa import AttemptsExhausted, ChallengeExpired, MfaChallenge, MfaProvider, issue_mfa, verify_mfa
from pwbench.defense.policy import Complexity, PasswordPolicy, StrengthReport, complexity_class, evaluate_policy
from pwbench.defense.risk import (
    RiskAction,
    RiskConfig,
    RiskContext,
    RiskDecision,
    RiskWeights,
    UserBaseline,
    assess,
    risk_score,
    route_decision,
)
from pwbench.defense.store import (
    CredentialRecord,
    CredentialStore,
    DuplicateUser,
    PolicyRejected,
    StoreUnavailable,
    register_user,
)

__all__ = [
    "AttemptsExhausted",
    "AuthEvent",
    "AuthOutcome",
    "AuthResponse",
    "Authenticator",
    "ChallengeExpired",
    "CheckResult",
    "CheckerError",
    "CheckerUnavailable",
    "Complexity",
    "CredentialRecord",
    "CredentialStore",
    "DuplicateUser",
    "EventKind",
    "EventLog",
    "Honeychecker",
    "HoneycheckerClient",
    "HoneycheckerServer",
    "HoneywordError",
    "IndexOutOfRange",
    "LockoutConfig",
    "LockoutState",
    "LockoutTable",
    "MfaChallenge",
    "MfaProvider",
    "PasswordPolicy",
    "PolicyRejected",
    "RiskAction",
    "RiskConfig",
    "RiskContext",
    "RiskDecision",
    "RiskWeights",
    "StoreUnavailable",
    "Strategy",
    "StrategyError",
    "StrengthReport",
    "UnknownUser",
    "UserBaseline",
    "assess",
    "authenticate",
    "complete_mfa",
    "complexity_class",
    "evaluate_policy",
    "generate_honeywords",
    "honeychecker_check",
    "issue_mfa",
    "make_sweetwords",
    "record_attempt",
    "register_user",
    "risk_score",
    "route_decision",
    "seal_index",
    "verify_mfa",
]
