import pytest

from pwbench.defense import AttemptsExhausted, ChallengeExpired, MfaProvider


def test_correct_code():
    p = MfaProvider(ttl=60)
    ch = p.issue("u", 0.0)
    assert len(ch.code) == 6 and ch.code.isdigit() and ch.expires_at > 0.0
    assert p.verify(ch, ch.code, 1.0)


def test_expired():
    p = MfaProvider(ttl=60)
    ch = p.issue("u", 0.0)
    with pytest.raises(ChallengeExpired):
        p.verify(ch, ch.code, 60.0)


def test_exhausted_after_three_wrong():
    p = MfaProvider()
    ch = p.issue("u", 0.0)
    wrong = "000000" if ch.code != "000000" else "111111"
    assert [p.verify(ch, wrong, 1.0) for _ in range(3)] == [False] * 3
    with pytest.raises(AttemptsExhausted):
        p.verify(ch, ch.code, 1.0)


def test_attempt_limit_validation():
    with pytest.raises(ValueError):
        MfaProvider(max_attempts=4)
