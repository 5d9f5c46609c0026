"""Niederreiter cryptosystem over quasi-cyclic (m-1)/m codes, with security analysis."""

from .code import ParityCheck, QcParams, build_parity_check, expand_h, verify_conditions
from .exceptions import BudgetExceeded, KeyFormatError, ParameterError, SyndromeCollision
from .field import FieldSpec, smallest_irreducible
from .niederreiter import (PrivateKey, PublicKey, decode_plaintext, decrypt, encode_plaintext,
                           encrypt, keygen, plaintext_space)

__all__ = [
    "BudgetExceeded", "FieldSpec", "KeyFormatError", "ParameterError", "ParityCheck",
    "PrivateKey", "PublicKey", "QcParams", "SyndromeCollision", "build_parity_check",
    "decode_plaintext", "decrypt", "encode_plaintext", "encrypt", "expand_h", "keygen",
    "plaintext_space", "smallest_irreducible", "verify_conditions",
]

__version__ = "0.1.0"
