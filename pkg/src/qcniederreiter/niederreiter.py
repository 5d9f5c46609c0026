"""
The Niederreiter cryptosystem over quasi-cyclic (m-1)/m codes.

Keys::

    private  (A0, H, B0)        A0 invertible p x p, B0 a permutation of n
    public   H' = A0 H B0

A plaintext is an error vector ``x`` of weight exactly ``t`` over GF(2^l); the
ciphertext is its syndrome ``H' x``. Decryption unscrambles with ``A0^-1``,
decodes against the secret ``H`` and undoes ``B0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .code import ParityCheck, QcParams, build_parity_check, expand_h
from .decoder import (DEFAULT_TABLE_BUDGET, IsdConfig, SyndromeTable, isd_decode,
                      table_size)
from .exceptions import BudgetExceeded, ParameterError, SyndromeCollision
from .field import DTYPE, FieldSpec
from .matrix import (apply_perm_cols, identity, identity_perm, mat_inverse, mat_mul,
                     random_invertible, random_perm)

Decoder = Union[SyndromeTable, IsdConfig]


@dataclass(frozen=True, eq=False)
class PublicKey:
    params: QcParams
    spec: FieldSpec
    hpub: np.ndarray

    @property
    def shape(self):
        return self.hpub.shape

    def __eq__(self, other):
        return (isinstance(other, PublicKey) and self.params == other.params
                and self.spec == other.spec and np.array_equal(self.hpub, other.hpub))

    __hash__ = None


@dataclass(frozen=True, eq=False)
class PrivateKey:
    params: QcParams
    spec: FieldSpec
    a0: np.ndarray
    a0inv: np.ndarray
    h: ParityCheck
    b0: np.ndarray
    decoder: Decoder

    def public_key(self) -> PublicKey:
        return PublicKey(self.params, self.spec, scramble(self.spec, self.a0, expand_h(self.h), self.b0))

    def __eq__(self, other):
        return (isinstance(other, PrivateKey) and self.params == other.params
                and self.spec == other.spec and self.h == other.h
                and np.array_equal(self.a0, other.a0) and np.array_equal(self.b0, other.b0))

    __hash__ = None


def scramble(spec, a0, hmat, b0):
    return apply_perm_cols(mat_mul(spec, a0, hmat), b0)


def _rng(seed_or_rng):
    if isinstance(seed_or_rng, np.random.Generator):
        return seed_or_rng
    return np.random.default_rng(seed_or_rng)


def keygen(params: QcParams, rng=0, *, decoder: str = "auto", scrambler: str = "field",
           scramble_keys: bool = True, table_budget: int = DEFAULT_TABLE_BUDGET,
           isd: IsdConfig | None = None, max_retries: int = 64):
    """Generate ``(PublicKey, PrivateKey)``; deterministic for a given seed.

    ``decoder`` is ``"table"``, ``"isd"`` or ``"auto"`` (table when it fits the
    budget). A table decoder certifies that H corrects ``t`` errors; H is
    redrawn on failure. ``scrambler="binary"`` draws A0 over GF(2) instead of
    GF(2^l). ``scramble_keys=False`` sets A0 = I and B0 = id (test hook).
    """
    params.validate()
    if decoder not in ("auto", "table", "isd"):
        raise ParameterError(f"unknown decoder mode {decoder!r}")
    if scrambler not in ("field", "binary"):
        raise ParameterError(f"unknown scrambler field {scrambler!r}")
    rng = _rng(rng)
    spec = FieldSpec(params.l)
    if decoder == "auto":
        fits = table_size(params.n, params.t, spec.order) <= table_budget
        decoder = "table" if fits else "isd"

    for _ in range(max_retries + 1):
        h = build_parity_check(params, rng, spec=spec)
        if decoder == "table":
            try:
                dec = SyndromeTable(expand_h(h), spec, params.t, table_budget)
            except SyndromeCollision:
                continue
        else:
            dec = isd or IsdConfig(seed=int(rng.integers(2**31)))
        break
    else:
        raise BudgetExceeded(f"no {params.t}-error-correcting H found in {max_retries} retries")

    if scramble_keys:
        a0, a0inv = random_invertible(params.p, spec, rng, binary=scrambler == "binary")
        b0 = random_perm(params.n, rng)
    else:
        a0 = a0inv = identity(params.p)
        b0 = identity_perm(params.n)
    sk = PrivateKey(params, spec, a0, a0inv, h, b0, dec)
    return sk.public_key(), sk


def private_key_from_parts(params: QcParams, spec: FieldSpec, a0, h: ParityCheck, b0, *,
                           decoder: str = "auto", table_budget: int = DEFAULT_TABLE_BUDGET,
                           isd: IsdConfig | None = None) -> PrivateKey:
    """Rebuild a private key (and its decoder) from stored components."""
    a0 = np.asarray(a0, dtype=DTYPE)
    a0inv = mat_inverse(spec, a0)
    if a0inv is None:
        raise ParameterError("stored scrambler A0 is singular")
    if decoder == "auto":
        decoder = "table" if table_size(params.n, params.t, spec.order) <= table_budget else "isd"
    dec = SyndromeTable(expand_h(h), spec, params.t, table_budget) if decoder == "table" else (isd or IsdConfig())
    return PrivateKey(params, spec, a0, a0inv, h, np.asarray(b0, dtype=DTYPE), dec)


# -- plaintext encoding -----------------------------------------------------

def plaintext_space(params: QcParams) -> int:
    """Number of weight-``t`` vectors in GF(2^l)^n."""
    return math.comb(params.n, params.t) * (params.q - 1) ** params.t


def _colex_unrank(r: int, t: int):
    support = []
    for i in range(t, 0, -1):
        c = i - 1
        while math.comb(c + 1, i) <= r:
            c += 1
        support.append(c)
        r -= math.comb(c, i)
    return support[::-1]


def _colex_rank(support) -> int:
    return sum(math.comb(s, i + 1) for i, s in enumerate(sorted(support)))


def encode_plaintext(index: int, params: QcParams) -> np.ndarray:
    """The ``index``-th weight-``t`` vector.

    Supports are ordered colexicographically; within a support, the nonzero
    values are base-(q-1) digits of the low part of the index (digit ``d`` at
    the ``i``-th smallest position means element ``d + 1``).
    """
    if not 0 <= index < plaintext_space(params):
        raise ParameterError(f"plaintext index {index} out of range [0, {plaintext_space(params)})")
    base = params.q - 1
    sup_rank, val_rank = divmod(index, base ** params.t)
    x = np.zeros(params.n, dtype=DTYPE)
    for pos in _colex_unrank(sup_rank, params.t):
        val_rank, d = divmod(val_rank, base)
        x[pos] = d + 1
    return x


def decode_plaintext(x, params: QcParams) -> int:
    x = np.asarray(x)
    support = np.flatnonzero(x)
    if len(support) != params.t:
        raise ParameterError(f"plaintext weight {len(support)} != t={params.t}")
    base = params.q - 1
    val_rank = 0
    for pos in support[::-1]:
        val_rank = val_rank * base + int(x[pos]) - 1
    return _colex_rank(support.tolist()) * base ** params.t + val_rank


# -- encryption ---------------------------------------------------------------

def encrypt(pk: PublicKey, x, *, check_weight: bool = True) -> np.ndarray:
    x = np.asarray(x, dtype=DTYPE)
    if x.shape != (pk.params.n,):
        raise ParameterError(f"plaintext must have length {pk.params.n}, got shape {x.shape}")
    if not pk.spec.contains(x):
        raise ParameterError("plaintext entries are not field elements")
    if check_weight and np.count_nonzero(x) != pk.params.t:
        raise ParameterError(f"plaintext weight {np.count_nonzero(x)} != t={pk.params.t}")
    return mat_mul(pk.spec, pk.hpub, x)


def decrypt(sk: PrivateKey, y):
    """Recover the plaintext, or ``None`` when decoding fails."""
    y = np.asarray(y, dtype=DTYPE)
    if y.shape != (sk.params.p,):
        raise ParameterError(f"ciphertext must have length {sk.params.p}, got shape {y.shape}")
    y1 = mat_mul(sk.spec, sk.a0inv, y)
    if isinstance(sk.decoder, SyndromeTable):
        e = sk.decoder.decode(y1)
    else:
        e = isd_decode(sk.h, y1, sk.params.t, sk.decoder).error
    if e is None:
        return None
    # H' x = A0 H (x permuted back): e[j] = x[b0[j]]
    x = np.zeros_like(e)
    x[sk.b0] = e
    return x
