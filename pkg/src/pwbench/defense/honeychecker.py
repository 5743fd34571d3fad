"""Isolated honeychecker holding only each user's sealed real-sweetword index.

The main system never holds a key that opens the index. It seals
``(index, k)`` to the checker's X25519 public key (ephemeral ECDH, HKDF-SHA256,
AES-GCM with the user id as associated data). The checker keeps the sealed
blobs and opens one only to answer a ``CHECK``.

Wire protocol, one ASCII line each way over a unix socket::

    SET <user> <sealed-hex>   ->  OK | ERR <code>
    CHECK <user> <index>      ->  REAL | DECOY | ERR <code>
"""

from __future__ import annotations

import enum
import hmac
import os
import socket
import socketserver
import struct
import threading
import time
from pathlib import Path

from cryptography.exceptions import InvalidTag
from cryptography.hazmat.primitives import hashes, serialization
from cryptography.hazmat.primitives.asymmetric.x25519 import X25519PrivateKey, X25519PublicKey
from cryptography.hazmat.primitives.ciphers.aead import AESGCM
from cryptography.hazmat.primitives.kdf.hkdf import HKDF

from pwbench.defense.events import EventKind, EventLog

_INDEX = struct.Struct(">HH")
_HKDF_INFO = b"pwbench honeychecker index seal v1"
_PUB_LEN = 32
_NONCE_LEN = 12
MAX_LINE = 4096

ERR_UNKNOWN_USER = "unknown-user"
ERR_BAD_INDEX = "bad-index"
ERR_BAD_SEAL = "bad-seal"
ERR_BAD_REQUEST = "bad-request"


class CheckResult(str, enum.Enum):
    REAL = "Real"
    DECOY = "Decoy"


class CheckerError(Exception):
    code = ERR_BAD_REQUEST


class UnknownUser(CheckerError):
    code = ERR_UNKNOWN_USER


class IndexOutOfRange(CheckerError):
    code = ERR_BAD_INDEX


class BadSeal(CheckerError):
    code = ERR_BAD_SEAL


class CheckerUnavailable(CheckerError):
    code = "unavailable"


def _raw_public(key: X25519PublicKey) -> bytes:
    return key.public_bytes(serialization.Encoding.Raw, serialization.PublicFormat.Raw)


def _aead_key(shared: bytes, eph_pub: bytes, user_id: str) -> AESGCM:
    salt = eph_pub + user_id.encode("utf-8")
    key = HKDF(algorithm=hashes.SHA256(), length=32, salt=salt, info=_HKDF_INFO).derive(shared)
    return AESGCM(key)


def valid_user_id(user_id: str) -> bool:
    return bool(user_id) and user_id.isprintable() and not any(ch.isspace() for ch in user_id)


def seal_index(public_key: bytes, user_id: str, index: int, k: int) -> bytes:
    """Seal ``(index, k)`` so that only the holder of the checker's private key can open it."""
    if not 0 <= index < k <= 0xFFFF:
        raise ValueError(f"index {index} outside [0, {k})")
    eph = X25519PrivateKey.generate()
    eph_pub = _raw_public(eph.public_key())
    shared = eph.exchange(X25519PublicKey.from_public_bytes(public_key))
    nonce = os.urandom(_NONCE_LEN)
    ct = _aead_key(shared, eph_pub, user_id).encrypt(nonce, _INDEX.pack(index, k), user_id.encode("utf-8"))
    return eph_pub + nonce + ct


class Honeychecker:
    """Checker core. Holds the private key, the sealed blobs and its own event log."""

    def __init__(self, private_key: X25519PrivateKey | None = None, log: EventLog | None = None,
                 clock=time.time) -> None:
        self._key = private_key or X25519PrivateKey.generate()
        self.public_key = _raw_public(self._key.public_key())
        self.log = log if log is not None else EventLog()
        self._sealed: dict[str, bytes] = {}
        self._lock = threading.Lock()
        self._clock = clock

    def _open(self, user_id: str, blob: bytes) -> tuple[int, int]:
        if len(blob) < _PUB_LEN + _NONCE_LEN + _INDEX.size + 16:
            raise BadSeal("sealed blob too short")
        eph_pub, nonce, ct = blob[:_PUB_LEN], blob[_PUB_LEN:_PUB_LEN + _NONCE_LEN], blob[_PUB_LEN + _NONCE_LEN:]
        try:
            shared = self._key.exchange(X25519PublicKey.from_public_bytes(eph_pub))
            plain = _aead_key(shared, eph_pub, user_id).decrypt(nonce, ct, user_id.encode("utf-8"))
        except (InvalidTag, ValueError) as exc:
            raise BadSeal("sealed blob does not open under this checker's key") from exc
        index, k = _INDEX.unpack(plain)
        if not 0 <= index < k:
            raise BadSeal("sealed index out of range")
        return index, k

    def set(self, user_id: str, sealed: bytes) -> None:
        if not valid_user_id(user_id):
            raise CheckerError("invalid user id")
        self._open(user_id, sealed)  # reject blobs we could never answer for
        with self._lock:
            self._sealed[user_id] = bytes(sealed)

    def check(self, user_id: str, matched_index: int) -> CheckResult:
        with self._lock:
            blob = self._sealed.get(user_id)
        if blob is None:
            raise UnknownUser(user_id)
        index, k = self._open(user_id, blob)
        if not 0 <= matched_index < k:
            raise IndexOutOfRange(f"{matched_index} outside [0, {k})")
        real = hmac.compare_digest(_INDEX.pack(index, k), _INDEX.pack(matched_index, k))
        if real:
            return CheckResult.REAL
        self.log.emit(EventKind.HONEYWORD_ALERT, user_id, self._clock(), f"decoy index {matched_index} submitted")
        return CheckResult.DECOY

    def sealed_state(self) -> dict[str, bytes]:
        """Stored blobs without the key, for at-rest inspection."""
        with self._lock:
            return dict(self._sealed)

    # -- wire protocol -----------------------------------------------------

    def handle_line(self, line: str) -> str:
        parts = line.strip().split(" ")
        try:
            if len(parts) == 3 and parts[0] == "SET":
                try:
                    blob = bytes.fromhex(parts[2])
                except ValueError:
                    raise BadSeal("sealed blob is not hex") from None
                self.set(parts[1], blob)
                return "OK"
            if len(parts) == 3 and parts[0] == "CHECK":
                if not parts[2].isdigit():
                    raise IndexOutOfRange(parts[2])
                return "REAL" if self.check(parts[1], int(parts[2])) is CheckResult.REAL else "DECOY"
            raise CheckerError("unrecognized request")
        except CheckerError as exc:
            return f"ERR {exc.code}"


class _Handler(socketserver.StreamRequestHandler):
    def handle(self) -> None:
        checker: Honeychecker = self.server.checker  # type: ignore[attr-defined]
        while True:
            raw = self.rfile.readline(MAX_LINE + 1)
            if not raw:
                return
            if len(raw) > MAX_LINE or not raw.endswith(b"\n"):
                self.wfile.write(f"ERR {ERR_BAD_REQUEST}\n".encode())
                return
            try:
                line = raw.decode("ascii")
            except UnicodeDecodeError:
                reply = f"ERR {ERR_BAD_REQUEST}"
            else:
                reply = checker.handle_line(line)
            self.wfile.write((reply + "\n").encode("ascii"))
            self.wfile.flush()


class HoneycheckerServer(socketserver.ThreadingMixIn, socketserver.UnixStreamServer):
    """Unix-socket front end. Writes the public key next to the socket as ``<socket>.pub`` (hex)."""

    daemon_threads = True

    def __init__(self, socket_path: "str | os.PathLike", checker: Honeychecker | None = None) -> None:
        self.socket_path = Path(socket_path)
        if self.socket_path.exists():
            self.socket_path.unlink()
        self.checker = checker or Honeychecker()
        super().__init__(str(self.socket_path), _Handler)
        os.chmod(self.socket_path, 0o600)
        self.pubkey_path = self.socket_path.with_name(self.socket_path.name + ".pub")
        self.pubkey_path.write_text(self.checker.public_key.hex() + "\n", encoding="ascii")

    def start_background(self) -> threading.Thread:
        t = threading.Thread(target=self.serve_forever, name="honeychecker", daemon=True)
        t.start()
        return t

    def close(self) -> None:
        self.shutdown()
        self.server_close()
        for p in (self.socket_path, self.pubkey_path):
            try:
                p.unlink()
            except FileNotFoundError:
                pass


class HoneycheckerClient:
    """Main-system side of the protocol. Any transport failure raises :class:`CheckerUnavailable`."""

    def __init__(self, socket_path: "str | os.PathLike", public_key: bytes | None = None,
                 timeout: float = 5.0) -> None:
        self.socket_path = Path(socket_path)
        self.timeout = timeout
        self._public_key = public_key

    @property
    def public_key(self) -> bytes:
        if self._public_key is None:
            pub = self.socket_path.with_name(self.socket_path.name + ".pub")
            try:
                self._public_key = bytes.fromhex(pub.read_text(encoding="ascii").strip())
            except (OSError, ValueError) as exc:
                raise CheckerUnavailable(f"cannot read checker public key: {exc}") from exc
        return self._public_key

    def _request(self, line: str) -> str:
        try:
            with socket.socket(socket.AF_UNIX, socket.SOCK_STREAM) as sock:
                sock.settimeout(self.timeout)
                sock.connect(str(self.socket_path))
                sock.sendall((line + "\n").encode("ascii"))
                with sock.makefile("rb") as fh:
                    reply = fh.readline(MAX_LINE)
        except OSError as exc:
            raise CheckerUnavailable(str(exc)) from exc
        if not reply.endswith(b"\n"):
            raise CheckerUnavailable("connection closed mid-reply")
        return reply.decode("ascii").strip()

    @staticmethod
    def _raise(reply: str) -> None:
        code = reply[4:] if reply.startswith("ERR ") else ERR_BAD_REQUEST
        for cls in (UnknownUser, IndexOutOfRange, BadSeal):
            if cls.code == code:
                raise cls(reply)
        raise CheckerError(reply)

    def set(self, user_id: str, sealed: bytes) -> None:
        reply = self._request(f"SET {user_id} {sealed.hex()}")
        if reply != "OK":
            self._raise(reply)

    def check(self, user_id: str, matched_index: int) -> CheckResult:
        reply = self._request(f"CHECK {user_id} {matched_index}")
        if reply == "REAL":
            return CheckResult.REAL
        if reply == "DECOY":
            return CheckResult.DECOY
        self._raise(reply)
        raise AssertionError("unreachable")


def honeychecker_check(checker, user_id: str, matched_index: int) -> CheckResult:
    return checker.check(user_id, matched_index)
