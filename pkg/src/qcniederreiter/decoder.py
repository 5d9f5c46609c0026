"""
Syndrome decoders for the secret code.

Two decoders are provided:

* :class:`SyndromeTable` -- exhaustive map from every syndrome of weight <= t
  to its error. Building it certifies that the code corrects ``t`` errors
  (a collision raises :class:`SyndromeCollision`).
* :func:`isd_decode` -- randomized information-set decoding with Lee-Brickell
  depth ``j``: guess ``p`` columns, invert ``H`` on them, and allow up to
  ``j`` error positions outside the guessed set.

Both return ``None`` on failure. Every returned vector ``e`` satisfies
``H e = y`` and ``weight(e) <= t``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .code import ParityCheck, expand_h
from .exceptions import BudgetExceeded, ParameterError, SyndromeCollision
from .field import DTYPE, FieldSpec
from .matrix import mat_inverse, mat_mul

DEFAULT_TABLE_BUDGET = 1 << 22


def table_size(n: int, t: int, q: int) -> int:
    return sum(math.comb(n, i) * (q - 1) ** i for i in range(t + 1))


def _key(s: np.ndarray) -> bytes:
    return np.ascontiguousarray(s, dtype=DTYPE).tobytes()


class SyndromeTable:
    """Complete syndrome -> error map for errors of weight at most ``t``."""

    def __init__(self, hmat: np.ndarray, spec: FieldSpec, t: int, budget: int = DEFAULT_TABLE_BUDGET):
        hmat = np.asarray(hmat, dtype=DTYPE)
        rows, n = hmat.shape
        size = table_size(n, t, spec.order)
        if size > budget:
            raise BudgetExceeded(f"syndrome table needs {size} entries, budget is {budget}")
        self.hmat = hmat
        self.spec = spec
        self.t = t
        self.n = n
        # entry = (support, values)
        self.lookup: dict[bytes, tuple[tuple[int, ...], tuple[int, ...]]] = {_key(np.zeros(rows)): ((), ())}
        nonzero = np.arange(1, spec.order, dtype=DTYPE)
        # scaled[j, v-1] = v * column j
        scaled = spec.mul(nonzero[None, :, None], hmat.T[:, None, :])
        for w in range(1, t + 1):
            for support in itertools.combinations(range(n), w):
                for values in itertools.product(range(1, spec.order), repeat=w):
                    s = np.zeros(rows, dtype=DTYPE)
                    for j, v in zip(support, values):
                        s ^= scaled[j, v - 1]
                    key = _key(s)
                    if key in self.lookup:
                        raise SyndromeCollision(
                            f"errors {self.lookup[key]} and {(support, values)} share a syndrome")
                    self.lookup[key] = (support, values)

    def __len__(self):
        return len(self.lookup)

    def decode(self, y):
        hit = self.lookup.get(_key(np.asarray(y)))
        if hit is None:
            return None
        e = np.zeros(self.n, dtype=DTYPE)
        support, values = hit
        e[list(support)] = values
        return e

    def items(self):
        """Yield ``(syndrome, error)`` pairs."""
        for key, _ in self.lookup.items():
            y = np.frombuffer(key, dtype=DTYPE)
            yield y, self.decode(y)


def build_syndrome_table(h: ParityCheck, t: int, budget: int = DEFAULT_TABLE_BUDGET) -> SyndromeTable:
    return SyndromeTable(expand_h(h), h.spec, t, budget)


def table_decode(tbl: SyndromeTable, y):
    return tbl.decode(y)


@dataclass(frozen=True)
class IsdConfig:
    max_iterations: int = 10_000
    depth: int = 2
    seed: int = 0

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ParameterError("max_iterations must be >= 1")
        if not 0 <= self.depth <= 2:
            raise ParameterError("Lee-Brickell depth must be 0, 1 or 2")


@dataclass
class IsdResult:
    error: np.ndarray | None
    iterations: int

    @property
    def ok(self) -> bool:
        return self.error is not None


def _outside_candidates(spec, hmat, outside, i):
    """All weight-``i`` patterns on ``outside`` with their syndromes, stacked."""
    q = spec.order
    supports, values, synd = [], [], []
    for sup in itertools.combinations(outside, i):
        cols = hmat[:, list(sup)]
        for vals in itertools.product(range(1, q), repeat=i):
            s = np.zeros(hmat.shape[0], dtype=DTYPE)
            for c, v in zip(cols.T, vals):
                s ^= spec.mul(c, v)
            supports.append(sup)
            values.append(vals)
            synd.append(s)
    return supports, values, np.array(synd, dtype=DTYPE).reshape(len(synd), hmat.shape[0])


def isd_decode_matrix(hmat, spec: FieldSpec, y, t: int, cfg: IsdConfig = IsdConfig(),
                      rng: np.random.Generator | None = None) -> IsdResult:
    """ISD on an explicit parity-check matrix (used for both H and the public key)."""
    hmat = np.asarray(hmat, dtype=DTYPE)
    y = np.asarray(y, dtype=DTYPE)
    r, n = hmat.shape
    rng = rng if rng is not None else np.random.default_rng(cfg.seed)
    if not y.any():
        return IsdResult(np.zeros(n, dtype=DTYPE), 1)
    for it in range(1, cfg.max_iterations + 1):
        chosen = np.sort(rng.choice(n, size=r, replace=False))
        inv = mat_inverse(spec, hmat[:, chosen])
        if inv is None:
            continue
        outside = np.setdiff1d(np.arange(n), chosen)
        for i in range(min(cfg.depth, t) + 1):
            if i == 0:
                supports, values, synd = [()], [()], np.zeros((1, r), dtype=DTYPE)
            else:
                supports, values, synd = _outside_candidates(spec, hmat, outside, i)
            # inside-part of each candidate: inv @ (y - outside syndrome)
            inside = mat_mul(spec, inv, (synd ^ y[None, :]).T).T
            ok = np.flatnonzero((inside != 0).sum(axis=1) + i <= t)
            for idx in ok:
                e = np.zeros(n, dtype=DTYPE)
                e[chosen] = inside[idx]
                e[list(supports[idx])] = values[idx]
                if np.array_equal(mat_mul(spec, hmat, e), y):
                    return IsdResult(e, it)
    return IsdResult(None, cfg.max_iterations)


def isd_decode(h: ParityCheck, y, t: int, cfg: IsdConfig = IsdConfig(),
               rng: np.random.Generator | None = None) -> IsdResult:
    return isd_decode_matrix(expand_h(h), h.spec, y, t, cfg, rng)
