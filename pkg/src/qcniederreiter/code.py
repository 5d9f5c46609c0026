"""
Quasi-cyclic parity-check matrices H = [I | C_1 | ... | C_{m-1}].

:func:`build_parity_check` realizes the marked-pair construction: two distinct
field elements ``a`` (non-binary) and ``b`` each occur exactly once in the
first row of ``C_1`` while ``b`` is banned from every other block, so no other
block can contain both. That pins the row offset between ``a`` and ``b`` in
every column of ``C_1`` and leaves the row action of the code only the cyclic
shifts, which is what keeps it from being 2-transitive.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .exceptions import BudgetExceeded, ParameterError
from .field import DTYPE, FieldSpec
from .matrix import circulant_expand, identity


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class QcParams:
    """Code parameters; ``n = m*p`` columns, dimension ``k = (m-1)*p``.

    ``poly_exponent`` is the ``c`` in the bound ``m <= p**c``.
    """

    l: int
    p: int
    m: int
    t: int
    poly_exponent: int = 2

    @property
    def n(self) -> int:
        return self.m * self.p

    @property
    def k(self) -> int:
        return (self.m - 1) * self.p

    @property
    def q(self) -> int:
        return 1 << self.l

    def validate(self) -> "QcParams":
        if not is_prime(self.p):
            raise ParameterError(f"block size p={self.p} is not prime")
        if self.m < 2:
            raise ParameterError(f"block count m={self.m} must be at least 2")
        if self.m > self.p ** self.poly_exponent:
            raise ParameterError(f"m={self.m} exceeds the bound p**{self.poly_exponent}")
        if not 1 <= self.l <= 16:
            raise ParameterError(f"field degree l={self.l} out of range [1, 16]")
        if self.l < 2:
            raise ParameterError("l=1 leaves no element outside {0, 1}; need l >= 2")
        if not 1 <= self.t <= self.n:
            raise ParameterError(f"error weight t={self.t} must be in [1, n={self.n}]")
        return self


@dataclass(frozen=True, eq=False)
class ParityCheck:
    """H stored as the first rows of its m-1 circulant blocks.

    ``blocks`` has shape ``(m-1, p)``; ``marked_pair`` is ``(a, b)``.
    """

    params: QcParams
    spec: FieldSpec
    blocks: np.ndarray
    marked_pair: tuple[int, int]

    def __post_init__(self):
        b = np.array(self.blocks, dtype=DTYPE, ndmin=2)
        b.setflags(write=False)
        object.__setattr__(self, "blocks", b)
        object.__setattr__(self, "marked_pair", tuple(int(x) for x in self.marked_pair))

    def __eq__(self, other):
        return (
            isinstance(other, ParityCheck)
            and self.params == other.params
            and self.spec == other.spec
            and self.marked_pair == other.marked_pair
            and np.array_equal(self.blocks, other.blocks)
        )

    __hash__ = None

    def c_matrix(self) -> np.ndarray:
        """The ``p x (m-1)p`` concatenation ``[C_1 | ... | C_{m-1}]``."""
        return np.concatenate([circulant_expand(row) for row in self.blocks], axis=1)


def expand_h(h: ParityCheck) -> np.ndarray:
    return np.concatenate([identity(h.params.p), h.c_matrix()], axis=1)


def _sample_block(rng, alphabet, p, forced_nonbinary):
    row = rng.choice(alphabet, size=p)
    if not (row > 1).any():
        row[rng.integers(p)] = rng.choice(forced_nonbinary)
    return row


def build_parity_check(params: QcParams, rng: np.random.Generator, max_retries: int = 64,
                       spec: FieldSpec | None = None) -> ParityCheck:
    """Random H satisfying conditions I-V through the marked-pair construction."""
    params.validate()
    spec = spec or FieldSpec(params.l)
    p, q = params.p, spec.order
    elems = np.arange(q, dtype=DTYPE)
    for _ in range(max_retries + 1):
        a = int(rng.integers(2, q))
        b = int(rng.choice(elems[(elems != 0) & (elems != a)]))
        alphabet = elems[elems != b]
        nonbinary = alphabet[alphabet > 1]

        first = rng.choice(alphabet[alphabet != a], size=p)
        ia, ib = rng.choice(p, size=2, replace=False)
        first[ia], first[ib] = a, b
        rows = [first]
        for _ in range(params.m - 2):
            rows.append(_sample_block(rng, alphabet, p, nonbinary))
        h = ParityCheck(params, spec, np.array(rows, dtype=DTYPE), (a, b))
        if columns_distinct(h.c_matrix()):
            return h
    raise BudgetExceeded(f"no H with distinct columns after {max_retries} retries")


def columns_distinct(c: np.ndarray) -> bool:
    return np.unique(c, axis=1).shape[1] == c.shape[1] if c.size else True


@dataclass
class ConditionReport:
    """Per-condition outcome; ``iv`` is certified through the marked-pair rule."""

    i: bool
    ii: bool
    iii: bool
    iv: bool
    v: bool
    notes: list[str] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.i and self.ii and self.iii and self.iv and self.v

    def lines(self):
        names = [("I", self.i, "p prime, m polynomially bounded"),
                 ("II", self.ii, "H is p x mp over GF(2^l)"),
                 ("III", self.iii, "systematic circulant form, non-binary entry per block"),
                 ("IV'", self.iv, "marked pair placement (implies T_H not 2-transitive)"),
                 ("V", self.v, "columns of C pairwise distinct")]
        out = [f"condition {n:4s} {'PASS' if okay else 'FAIL'}  {desc}" for n, okay, desc in names]
        out += [f"  note: {s}" for s in self.notes]
        out.append(f"overall {'PASS' if self.ok else 'FAIL'}")
        return out


def verify_conditions(h: ParityCheck) -> ConditionReport:
    pr, spec = h.params, h.spec
    notes = []
    cond_i = is_prime(pr.p) and pr.m >= 2 and pr.m <= pr.p ** pr.poly_exponent
    if not cond_i:
        notes.append("I: p not prime or m outside [2, p**c]")

    blocks = h.blocks
    cond_ii = (blocks.shape == (pr.m - 1, pr.p) and spec.l == pr.l and spec.contains(blocks))
    if not cond_ii:
        notes.append(f"II: block array shape {blocks.shape} or entries invalid")

    # each column of a circulant holds every entry of its first row
    cond_iii = bool(cond_ii and all((row > 1).any() for row in blocks))
    if cond_ii and not cond_iii:
        notes.append("III: some block has only entries in {0, 1}")

    a, b = h.marked_pair
    cond_iv = cond_ii and a != b and (a > 1 or b > 1)
    if cond_iv:
        first = blocks[0]
        cond_iv = int((first == a).sum()) == 1 and int((first == b).sum()) == 1
        others = [i for i, row in enumerate(blocks[1:], 2) if (row == a).any() and (row == b).any()]
        if others:
            cond_iv = False
            notes.append(f"IV': blocks {others} contain both marked elements")
    if not cond_iv:
        notes.append("IV': marked pair missing, repeated or binary")

    cond_v = bool(cond_ii and columns_distinct(h.c_matrix()))
    if cond_ii and not cond_v:
        notes.append("V: C has repeated columns")
    return ConditionReport(cond_i, bool(cond_ii), cond_iii, bool(cond_iv), cond_v, notes)
