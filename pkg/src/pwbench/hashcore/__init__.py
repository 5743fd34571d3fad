"""From-scratch MD5, SHA-256, Blowfish/bcrypt and an iterated KDF."""

from pwbench.hashcore._backend import BACKEND
from pwbench.hashcore.bcrypt import (
    BcryptError,
    BcryptRecord,
    BlowfishState,
    InvalidCost,
    InvalidSalt,
    MalformedRecord,
    bcrypt_check,
    bcrypt_hash,
    bcrypt_verify,
    eks_blowfish_setup,
    format_bcrypt,
    gensalt,
    parse_bcrypt,
)
from pwbench.hashcore.digest import Algorithm, Digest, hash_message, md5, pad_message, sha256, to_bytes
from pwbench.hashcore.kdf import KdfSpec, kdf_iterate

__all__ = [
    "BACKEND",
    "Algorithm",
    "BcryptError",
    "BcryptRecord",
    "BlowfishState",
    "Digest",
    "InvalidCost",
    "InvalidSalt",
    "KdfSpec",
    "MalformedRecord",
    "bcrypt_check",
    "bcrypt_hash",
    "bcrypt_verify",
    "eks_blowfish_setup",
    "format_bcrypt",
    "gensalt",
    "hash_message",
    "kdf_iterate",
    "md5",
    "pad_message",
    "parse_bcrypt",
    "sha256",
    "to_bytes",
]
