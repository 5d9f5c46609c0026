"""
Arithmetic in GF(2^l), elements in polynomial basis.

An element is a plain ``int`` in ``[0, 2^l)`` whose bits are the coefficients
of a polynomial over GF(2) reduced modulo the field's defining polynomial.
Vectors and matrices are ``numpy`` integer arrays of such values; every
arithmetic method on :class:`FieldSpec` accepts scalars or arrays.
"""

from __future__ import annotations

import numpy as np

from .exceptions import ParameterError

MAX_DEGREE = 16

DTYPE = np.int64


def poly_degree(a: int) -> int:
    return a.bit_length() - 1


def poly_mod(a: int, m: int) -> int:
    """Remainder of ``a`` divided by ``m`` over GF(2)."""
    dm = poly_degree(m)
    while a and poly_degree(a) >= dm:
        a ^= m << (poly_degree(a) - dm)
    return a


def clmul(a: int, b: int) -> int:
    """Carry-less product of two GF(2) polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def is_irreducible(poly: int) -> bool:
    """Trial division by every polynomial of degree 1..deg/2."""
    d = poly_degree(poly)
    if d < 1:
        return False
    for div in range(2, 1 << (d // 2 + 1)):
        if poly_mod(poly, div) == 0:
            return False
    return True


def smallest_irreducible(l: int) -> int:
    """Smallest (as an integer) irreducible polynomial of degree ``l`` over GF(2).

    >>> bin(smallest_irreducible(3))
    '0b1011'
    """
    if not 1 <= l <= MAX_DEGREE:
        raise ParameterError(f"extension degree must be in [1, {MAX_DEGREE}], got {l}")
    for cand in range(1 << l, 1 << (l + 1)):
        if is_irreducible(cand):
            return cand
    raise AssertionError("unreachable: irreducibles exist in every degree")


class FieldSpec:
    """The field GF(2^l) with a fixed modulus.

    Multiplication is table driven (log/antilog with respect to the smallest
    primitive element). Instances are immutable and safe to share.
    """

    __slots__ = ("l", "modulus", "order", "generator", "_exp", "_log", "_inv")

    def __init__(self, l: int, modulus: int | None = None):
        if not 1 <= l <= MAX_DEGREE:
            raise ParameterError(f"extension degree must be in [1, {MAX_DEGREE}], got {l}")
        if modulus is None:
            modulus = smallest_irreducible(l)
        if poly_degree(modulus) != l or not is_irreducible(modulus):
            raise ParameterError(f"modulus {modulus:#x} is not an irreducible polynomial of degree {l}")
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "order", 1 << l)
        self._build_tables()

    def __setattr__(self, name, value):
        raise AttributeError("FieldSpec is immutable")

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.l, self.modulus) == (other.l, other.modulus)

    def __hash__(self):
        return hash((self.l, self.modulus))

    def __repr__(self):
        return f"FieldSpec(l={self.l}, modulus={self.modulus:#x})"

    def _build_tables(self):
        q1 = self.order - 1
        gen = None
        for g in range(1, self.order):
            x, k = g, 1
            while x != 1:
                x = poly_mod(clmul(x, g), self.modulus)
                k += 1
            if k == q1:
                gen = g
                break
        # log[0] points into a zero-filled tail so products with 0 need no branch
        exp = np.zeros(4 * q1 + 1, dtype=DTYPE)
        log = np.zeros(self.order, dtype=DTYPE)
        x = 1
        for i in range(q1):
            exp[i] = x
            log[x] = i
            x = poly_mod(clmul(x, gen), self.modulus)
        exp[q1:2 * q1] = exp[:q1]
        log[0] = 2 * q1
        inv = np.zeros(self.order, dtype=DTYPE)
        inv[1:] = exp[(q1 - log[1:]) % q1]
        for name, arr in (("_exp", exp), ("_log", log), ("_inv", inv)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "generator", gen)

    # -- element checks -----------------------------------------------------

    def contains(self, a) -> bool:
        a = np.asarray(a)
        return bool(np.all((a >= 0) & (a < self.order)))

    def is_binary(self, a):
        """True where ``a`` lies in the prime subfield {0, 1}."""
        return np.asarray(a) <= 1

    def elements(self):
        return range(self.order)

    # -- arithmetic ----------------------------------------------------------

    @staticmethod
    def add(a, b):
        return np.bitwise_xor(a, b)

    sub = add

    def mul(self, a, b):
        r = self._exp[self._log[a] + self._log[b]]
        return int(r) if np.ndim(r) == 0 else r

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("zero has no inverse in GF(2^l)")
        r = self._inv[a]
        return int(r) if np.ndim(r) == 0 else r

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 1 if e == 0 else 0
        q1 = self.order - 1
        return int(self._exp[(int(self._log[a]) * e) % q1])

    def mult_order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        x, k = a, 1
        while x != 1:
            x = self.mul(x, a)
            k += 1
        return k

    # -- serialization -----------------------------------------------------

    @property
    def hex_width(self) -> int:
        return (self.l + 3) // 4

    def to_hex(self, a: int) -> str:
        return format(int(a), f"0{self.hex_width}x")

    def from_hex(self, s: str) -> int:
        if len(s) != self.hex_width:
            raise ValueError(f"expected {self.hex_width} hex digits, got {s!r}")
        v = int(s, 16)
        if v >= self.order:
            raise ValueError(f"{s!r} is not an element of GF(2^{self.l})")
        return v


# scalar conveniences mirroring the method names

def fe_add(a: int, b: int) -> int:
    return a ^ b


def fe_mul(a: int, b: int, spec: FieldSpec) -> int:
    return spec.mul(a, b)


def fe_inv(a: int, spec: FieldSpec) -> int:
    return spec.inv(a)
