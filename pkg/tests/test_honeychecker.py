import os

import pytest
from cryptography.hazmat.primitives.asymmetric.x25519 import X25519PrivateKey

from pwbench.defense import (
    CheckerUnavailable,
    CheckResult,
    EventKind,
    Honeychecker,
    HoneycheckerClient,
    HoneycheckerServer,
    IndexOutOfRange,
    UnknownUser,
    seal_index,
)
from pwbench.defense.honeychecker import BadSeal


def test_real_and_decoy():
    hc = Honeychecker()
    hc.set("alice", seal_index(hc.public_key, "alice", 2, 5))
    assert hc.check("alice", 2) is CheckResult.REAL
    assert len(hc.log) == 0
    assert hc.check("alice", 4) is CheckResult.DECOY
    assert [e.kind for e in hc.log.snapshot()] == [EventKind.HONEYWORD_ALERT]


def test_errors():
    hc = Honeychecker()
    hc.set("alice", seal_index(hc.public_key, "alice", 0, 3))
    with pytest.raises(UnknownUser):
        hc.check("bob", 0)
    with pytest.raises(IndexOutOfRange):
        hc.check("alice", 3)
    with pytest.raises(ValueError):
        seal_index(hc.public_key, "alice", 3, 3)


def test_seal_bound_to_key_and_user():
    hc = Honeychecker()
    other = Honeychecker(X25519PrivateKey.generate())
    with pytest.raises(BadSeal):
        hc.set("alice", seal_index(other.public_key, "alice", 0, 2))
    with pytest.raises(BadSeal):
        hc.set("alice", seal_index(hc.public_key, "mallory", 0, 2))
    with pytest.raises(BadSeal):
        hc.set("alice", b"\x00" * 10)


def test_sealed_blobs_hide_the_index():
    hc = Honeychecker()
    a = seal_index(hc.public_key, "u", 0, 8)
    b = seal_index(hc.public_key, "u", 0, 8)
    assert a != b and len(a) == len(seal_index(hc.public_key, "u", 7, 8))


def test_wire_protocol_lines():
    hc = Honeychecker()
    blob = seal_index(hc.public_key, "carol", 1, 2).hex()
    assert hc.handle_line(f"SET carol {blob}\n") == "OK"
    assert hc.handle_line("CHECK carol 1\n") == "REAL"
    assert hc.handle_line("CHECK carol 0\n") == "DECOY"
    assert hc.handle_line("CHECK dave 0\n") == "ERR unknown-user"
    assert hc.handle_line("CHECK carol 9\n") == "ERR bad-index"
    assert hc.handle_line("CHECK carol -1\n") == "ERR bad-index"
    assert hc.handle_line("SET carol zz\n") == "ERR bad-seal"
    assert hc.handle_line("HELLO\n") == "ERR bad-request"


def test_socket_server_and_client(tmp_path):
    server = HoneycheckerServer(tmp_path / "hc.sock")
    server.start_background()
    try:
        client = HoneycheckerClient(tmp_path / "hc.sock")
        assert client.public_key == server.checker.public_key
        client.set("erin", seal_index(client.public_key, "erin", 3, 4))
        assert client.check("erin", 3) is CheckResult.REAL
        assert client.check("erin", 1) is CheckResult.DECOY
        with pytest.raises(UnknownUser):
            client.check("nobody", 0)
        assert (os.stat(tmp_path / "hc.sock").st_mode & 0o777) == 0o600
    finally:
        server.close()
    with pytest.raises(CheckerUnavailable):
        client.check("erin", 3)
