"""
Security analysis: Lee-Brickell work factor, information rate, the quantum
parameter rule, and brute-force permutation-group oracles for small codes.

Conventions for the group oracles. A row permutation ``sigma`` of C and a
column permutation ``tau`` form a *matching pair* when moving row ``i`` to
``sigma[i]`` and column ``j`` to ``tau[j]`` gives back C. The set of all
such ``sigma`` is T_H. Permutations are image arrays (see :mod:`.matrix`).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .code import ParityCheck, expand_h, is_prime
from .exceptions import BudgetExceeded, ParameterError
from .field import DTYPE
from .matrix import apply_perm_cols, apply_perm_rows, mat_inverse, mat_mul

LOG2E = math.log2(math.e)


def _comb(n: int, k: int) -> int:
    return math.comb(n, k) if 0 <= k <= n else 0


# -- classical work factor --------------------------------------------------

def lb_q(n: int, k: int, e: int, i: int) -> Fraction:
    """Probability that a random ``k``-subset of ``n`` positions holds exactly ``i`` of ``e`` errors."""
    if not (0 <= k <= n and 0 <= e <= n and i >= 0):
        raise ParameterError(f"invalid arguments n={n}, k={k}, e={e}, i={i}")
    return Fraction(_comb(e, i) * _comb(n - e, k - i), math.comb(n, k))


def work_factor(p: int, m: int, t: int) -> Fraction:
    """Lee-Brickell minimal work factor W_2 (alpha = beta = 1), exact."""
    n, k = m * p, (m - 1) * p
    if not (1 <= t <= n and m >= 2):
        raise ParameterError(f"invalid work-factor input p={p}, m={m}, t={t}")
    q = sum(lb_q(n, k, t, i) for i in range(3))
    if q == 0:
        raise ParameterError(f"t={t} > p+2: no information set holds at most 2 errors")
    t2 = 1 / q
    n2 = 1 + k + math.comb(k, 2)
    return t2 * ((m - 1) ** 3 * p ** 3 + (m - 1) * p * n2)


def log2_fraction(x: Fraction) -> float:
    # math.log2 accepts arbitrarily large ints
    return math.log2(x.numerator) - math.log2(x.denominator)


def work_factor_log2(p: int, m: int, t: int) -> float:
    return log2_fraction(work_factor(p, m, t))


def min_m_classical(p: int, t: int, sec_bits: float, cap: int = 10_000) -> int:
    """Smallest m >= 2 whose work factor reaches ``sec_bits``."""
    if not is_prime(p):
        raise ParameterError(f"p={p} is not prime")
    for m in range(max(2, -(-t // p)), cap + 1):
        if work_factor_log2(p, m, t) >= sec_bits:
            return m
    raise BudgetExceeded(f"no m <= {cap} reaches {sec_bits} bits at p={p}, t={t}")


# -- quantum parameter rule ---------------------------------------------------

def quantum_rule_holds(p: int, m: int, a: float = 0.25) -> bool:
    """``p <= a * m * (log2 m + log2 p)``."""
    return p <= a * m * (math.log2(m) + math.log2(p))


def min_m_quantum(p: int, a: float = 0.25) -> int:
    if p < 2:
        raise ParameterError("p must be at least 2")
    m = 1
    while not quantum_rule_holds(p, m, a):
        m += 1
    return m


# -- information rate ---------------------------------------------------------

def log2_comb(n: int, k: int) -> float:
    return (math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)) / math.log(2)


def info_rate(p: int, m: int, t: int, l: int) -> float:
    """log #plaintexts / log #ciphertexts for weight-t plaintexts over GF(2^l)."""
    n = m * p
    if not 0 <= t <= n:
        raise ParameterError(f"t={t} must lie in [0, n={n}]")
    log_s = log2_comb(n, t) + t * math.log2((1 << l) - 1)
    return log_s / (l * p)


def public_key_size(p: int, m: int, l: int) -> dict:
    return {"rows": p, "cols": m * p, "bits": p * m * p * l}


# -- quantum bookkeeping ----------------------------------------------------

@dataclass
class QsecReport:
    p: int
    m: int
    m_q: int
    premise_ok: bool
    aut_size: int
    h0_size: int
    k_size: int
    dk_bound_log2: float
    delta: float
    a: float

    def lines(self):
        return [
            f"p={self.p} m={self.m}",
            f"m_Q={self.m_q}",
            f"rule p <= m(log2 m + log2 p)/4: {quantum_rule_holds(self.p, self.m)}",
            f"premise p^2 <= a*mp*log2(mp) (a={self.a}): {self.premise_ok}",
            f"|Aut(H)|={self.aut_size} |Fix(H)|=1 |H0|={self.h0_size} |K|=2|H0|^2={self.k_size}",
            f"log2 D_K bound = log2|K|^2 - delta*(p-1)*log2(e) = {self.dk_bound_log2:.3f} (delta={self.delta})",
        ]


def qsec_report(p: int, m: int, aut_size: int | None = None, delta: float = 1.0,
                a: float = 0.249) -> QsecReport:
    """Indistinguishability bookkeeping; ``aut_size`` defaults to the bound p(p-1)."""
    if delta <= 0:
        raise ParameterError("delta must be positive")
    if not 0 < a < 0.25:
        raise ParameterError("a must satisfy 0 < a < 1/4")
    aut = p * (p - 1) if aut_size is None else aut_size
    h0 = aut  # |Fix(H)| = 1
    k = 2 * h0 * h0
    dk = 2 * math.log2(k) - delta * (p - 1) * LOG2E
    premise = p * p <= a * m * p * math.log2(m * p)
    return QsecReport(p, m, min_m_quantum(p), premise, aut, h0, k, dk, delta, a)


# -- permutation groups -------------------------------------------------------

def moved_points(perm) -> int:
    perm = np.asarray(perm)
    return int((perm != np.arange(len(perm))).sum())


def minimal_degree(perms) -> int | None:
    """Fewest points moved by a non-identity element; ``None`` for the trivial group."""
    degs = [moved_points(g) for g in perms if moved_points(g)]
    return min(degs) if degs else None


def is_two_transitive(perms, degree: int | None = None) -> bool:
    """Whether the group generated by ``perms`` has one orbit on ordered pairs of distinct points."""
    perms = [np.asarray(g) for g in perms]
    if degree is None:
        degree = len(perms[0])
    if degree < 2:
        return False
    start = (0, 1)
    seen = {start}
    stack = [start]
    while stack:
        x, y = stack.pop()
        for g in perms:
            img = (int(g[x]), int(g[y]))
            if img not in seen:
                seen.add(img)
                stack.append(img)
    return len(seen) == degree * (degree - 1)


def cyclic_shift(p: int) -> np.ndarray:
    """The p-cycle xi -> xi + 1."""
    return (np.arange(p, dtype=DTYPE) + 1) % p


def matching_pairs(c, cap: int = math.factorial(7)):
    """All ``(sigma, tau)`` with rows moved by sigma and columns by tau restoring ``c``.

    Columns of ``c`` must be distinct, so each sigma has at most one tau.
    """
    c = np.asarray(c, dtype=DTYPE)
    p, ncols = c.shape
    if math.factorial(p) > cap:
        raise BudgetExceeded(f"{p}! row permutations exceed cap {cap}")
    index = {c[:, j].tobytes(): j for j in range(ncols)}
    if len(index) != ncols:
        raise ParameterError("columns of C are not distinct")
    pairs = []
    for sigma in itertools.permutations(range(p)):
        sigma = np.array(sigma, dtype=DTYPE)
        moved = apply_perm_rows(c, sigma)
        tau = np.empty(ncols, dtype=DTYPE)
        for j in range(ncols):
            dest = index.get(moved[:, j].tobytes())
            if dest is None:
                break
            tau[j] = dest
        else:
            pairs.append((sigma, tau))
    return pairs


@dataclass
class AutReport:
    aut_size: int
    t_set_size: int
    minimal_degree: int | None
    t_set_minimal_degree: int | None
    two_transitive: bool
    block_diagonal_all: bool
    mu_in_t_set: bool
    mu_partner_is_block_inverse: bool
    aut: list = field(default_factory=list, repr=False)
    t_set: list = field(default_factory=list, repr=False)

    def lines(self, p: int | None = None):
        out = [f"|Aut(H)| = {self.aut_size}", f"|T_H| = {self.t_set_size}"]
        if p is not None:
            bound = p * (p - 1)
            out.append(f"|Aut(H)| <= p(p-1) = {bound}: {'PASS' if self.aut_size <= bound else 'FAIL'}")
            md = self.t_set_minimal_degree
            out.append(f"minimal degree of T_H = {md} (>= p-1 = {p - 1}: "
                       f"{'PASS' if md is None or md >= p - 1 else 'FAIL'})")
        out += [
            f"minimal degree of Aut(H) = {self.minimal_degree}",
            f"cyclic shift mu in T_H: {self.mu_in_t_set} (partner blockwise inverse: {self.mu_partner_is_block_inverse})",
            f"T_H {'is' if self.two_transitive else 'not'} 2-transitive",
            f"every Aut(H) element block-diagonal: {self.block_diagonal_all}",
        ]
        return out


def _block_diagonal(perm, p: int) -> bool:
    return bool(np.all((np.asarray(perm)[:p] < p)))


def brute_aut(h: ParityCheck, cap: int = math.factorial(7)) -> AutReport:
    """Aut(H) rebuilt from T_H via matching pairs, for toy block sizes."""
    p = h.params.p
    pairs = matching_pairs(h.c_matrix(), cap)
    t_set = [s for s, _ in pairs]
    aut = [np.concatenate([s, tau + p]) for s, tau in pairs]
    mu = cyclic_shift(p)
    partner = next((tau for s, tau in pairs if np.array_equal(s, mu)), None)
    # as matrices, moving rows by mu is left-multiplication by mu^-1, so the
    # partner must be mu repeated on every p x p block of columns
    j = np.arange((h.params.m - 1) * p)
    block_shift = (j // p) * p + (j + 1) % p
    return AutReport(
        aut_size=len(aut),
        t_set_size=len(t_set),
        minimal_degree=minimal_degree(aut),
        t_set_minimal_degree=minimal_degree(t_set),
        two_transitive=is_two_transitive(t_set, p),
        block_diagonal_all=all(_block_diagonal(g, p) for g in aut),
        mu_in_t_set=partner is not None,
        mu_partner_is_block_inverse=partner is not None and np.array_equal(partner, block_shift),
        aut=aut,
        t_set=t_set,
    )


def is_automorphism(h_mat, spec, perm, scrambler: str = "binary") -> bool:
    """Whether some invertible A (over GF(2) or GF(2^l)) gives ``A (H P) = H``.

    H must be systematic, so A is forced to be the inverse of the first
    ``p`` columns of ``H P``.
    """
    p = h_mat.shape[0]
    moved = apply_perm_cols(h_mat, perm)
    a = mat_inverse(spec, moved[:, :p])
    if a is None:
        return False
    if scrambler == "binary" and (a > 1).any():
        return False
    return bool(np.array_equal(mat_mul(spec, a, moved), h_mat))


@dataclass
class AutCrosscheck:
    members: list
    block_diagonal_all: bool
    matches_brute: bool

    @property
    def ok(self) -> bool:
        return self.block_diagonal_all and self.matches_brute

    def __bool__(self):
        return self.ok


def full_aut_crosscheck(h: ParityCheck, cap: int = 720, scrambler: str = "binary") -> AutCrosscheck:
    """Enumerate all of S_n and compare Aut(H) with the matching-pair reconstruction.

    ``scrambler="binary"`` takes A over GF(2), the group in which Aut is
    block-diagonal; ``"field"`` allows A over GF(2^l), where small fields can
    produce extra automorphisms that mix the identity and C blocks.
    """
    if scrambler not in ("binary", "field"):
        raise ParameterError(f"unknown scrambler field {scrambler!r}")
    n, p = h.params.n, h.params.p
    if math.factorial(n) > cap:
        raise BudgetExceeded(f"{n}! permutations exceed cap {cap}")
    hm = expand_h(h)
    members = [np.array(g, dtype=DTYPE) for g in itertools.permutations(range(n))
               if is_automorphism(hm, h.spec, np.array(g), scrambler)]
    brute = {g.tobytes() for g in brute_aut(h).aut}
    return AutCrosscheck(
        members=members,
        block_diagonal_all=all(_block_diagonal(g, p) for g in members),
        matches_brute={g.tobytes() for g in members} == brute,
    )


# -- reference parameter grid ------------------------------------------------

# (security bits, p, t, reference m_C, reference rate)
TABLE1_GRID = [
    (80, 101, 15, 17, 0.60), (80, 101, 20, 9, 0.77), (80, 211, 35, 4, 0.71), (80, 211, 40, 3, 0.80),
    (100, 101, 15, 40, 0.61), (100, 101, 20, 17, 0.77), (100, 211, 35, 5, 0.71), (100, 211, 40, 5, 0.80),
    (120, 101, 15, 95, 0.67), (120, 101, 20, 32, 0.77), (120, 211, 35, 8, 0.71), (120, 211, 40, 6, 0.80),
    # t=20 fits neither m_C=55 nor rate 0.80 here; t=40 fits both
    (256, 211, 35, 98, 0.75), (256, 211, 40, 55, 0.80),
]

STERN_MARKER = "not reproducible: source formula unavailable"


def table1(l: int = 3):
    rows = []
    for sec, p, t, ref_mc, ref_rate in TABLE1_GRID:
        mc = min_m_classical(p, t, sec)
        mq = min_m_quantum(p)
        m = max(mc, mq)
        rows.append({
            "security": sec, "p": p, "t": t, "m_C": mc, "m_Q": mq, "m": m,
            "stern_probability": STERN_MARKER, "rows": p, "cols": m * p,
            "rate": info_rate(p, m, t, l), "ref_m_C": ref_mc, "ref_rate": ref_rate,
        })
    return rows
