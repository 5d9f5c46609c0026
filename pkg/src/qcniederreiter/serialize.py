"""
Text key and message formats.

Every file starts with the magic line ``QCNR1``. Field elements are written
as fixed-width lowercase hex (``ceil(l/4)`` digits), space separated, one
matrix row per line. Permutations are decimal image lists. Example public
key::

    QCNR1
    PUBLIC
    field 2 7
    params 5 3 1 2
    hpub 5 15
    1 0 3 ...

A private key stores ``A0``, ``B0``, the first rows of the circulant blocks
and the marked pair; ``H`` and ``A0^-1`` are rebuilt on load.
"""

from __future__ import annotations

import numpy as np

from .code import ParityCheck, QcParams
from .decoder import IsdConfig, SyndromeTable
from .exceptions import KeyFormatError
from .field import DTYPE, FieldSpec
from .niederreiter import PrivateKey, PublicKey, private_key_from_parts

MAGIC = "QCNR1"


def _hex_row(spec: FieldSpec, row) -> str:
    w = spec.hex_width
    return " ".join(format(int(v), f"0{w}x") for v in row)


def _hex_matrix(spec, name, mat):
    mat = np.asarray(mat)
    lines = [f"{name} {mat.shape[0]} {mat.shape[1]}"]
    lines += [_hex_row(spec, row) for row in mat]
    return lines


def _header(role, params: QcParams, spec: FieldSpec):
    return [MAGIC, role, f"field {spec.l} {spec.modulus:x}",
            f"params {params.p} {params.m} {params.t} {params.poly_exponent}"]


def emit_public(pk: PublicKey) -> str:
    lines = _header("PUBLIC", pk.params, pk.spec) + _hex_matrix(pk.spec, "hpub", pk.hpub)
    return "\n".join(lines) + "\n"


def emit_private(sk: PrivateKey) -> str:
    lines = _header("PRIVATE", sk.params, sk.spec)
    a, b = sk.h.marked_pair
    lines.append(f"pair {sk.spec.to_hex(a)} {sk.spec.to_hex(b)}")
    lines += _hex_matrix(sk.spec, "a0", sk.a0)
    lines.append(f"b0 {len(sk.b0)}")
    lines.append(" ".join(str(int(v)) for v in sk.b0))
    lines += _hex_matrix(sk.spec, "blocks", sk.h.blocks)
    if isinstance(sk.decoder, SyndromeTable):
        lines.append("decoder table")
    else:
        d = sk.decoder
        lines.append(f"decoder isd {d.max_iterations} {d.depth} {d.seed}")
    return "\n".join(lines) + "\n"


class _Reader:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.pos = 0

    def next(self) -> str:
        if self.pos >= len(self.lines):
            raise KeyFormatError("unexpected end of file")
        line = self.lines[self.pos]
        self.pos += 1
        return line

    def tagged(self, tag: str, nargs: int | None = None):
        parts = self.next().split()
        if not parts or parts[0] != tag:
            raise KeyFormatError(f"expected '{tag}' line at line {self.pos}")
        if nargs is not None and len(parts) - 1 != nargs:
            raise KeyFormatError(f"'{tag}' line needs {nargs} fields")
        return parts[1:]

    def ints(self, tag, nargs):
        try:
            return [int(x) for x in self.tagged(tag, nargs)]
        except ValueError as exc:
            raise KeyFormatError(f"bad integer in '{tag}' line") from exc

    def hex_matrix(self, spec, tag, shape=None):
        rows, cols = self.ints(tag, 2)
        if shape is not None and (rows, cols) != shape:
            raise KeyFormatError(f"{tag} has shape {(rows, cols)}, expected {shape}")
        return np.array([parse_elements(spec, self.next(), cols) for _ in range(rows)],
                        dtype=DTYPE).reshape(rows, cols)


def parse_elements(spec: FieldSpec, line: str, count: int | None = None) -> list[int]:
    toks = line.split()
    if count is not None and len(toks) != count:
        raise KeyFormatError(f"expected {count} elements, got {len(toks)}")
    try:
        return [spec.from_hex(tok) for tok in toks]
    except ValueError as exc:
        raise KeyFormatError(str(exc)) from exc


def _read_header(r: _Reader, role: str):
    if r.next() != MAGIC:
        raise KeyFormatError("missing QCNR1 magic")
    got = r.next()
    if got != role:
        raise KeyFormatError(f"expected a {role} key, found {got!r}")
    l_str, mod_str = r.tagged("field", 2)
    try:
        spec = FieldSpec(int(l_str), int(mod_str, 16))
    except ValueError as exc:
        raise KeyFormatError(f"bad field line: {exc}") from exc
    p, m, t, c = r.ints("params", 4)
    return spec, QcParams(spec.l, p, m, t, c)


def parse_public(text: str) -> PublicKey:
    r = _Reader(text)
    spec, params = _read_header(r, "PUBLIC")
    hpub = r.hex_matrix(spec, "hpub", (params.p, params.n))
    return PublicKey(params, spec, hpub)


def parse_private(text: str, table_budget: int | None = None) -> PrivateKey:
    r = _Reader(text)
    spec, params = _read_header(r, "PRIVATE")
    pair = parse_elements(spec, " ".join(r.tagged("pair", 2)), 2)
    a0 = r.hex_matrix(spec, "a0", (params.p, params.p))
    (n,) = r.ints("b0", 1)
    try:
        b0 = np.array([int(v) for v in r.next().split()], dtype=DTYPE)
    except ValueError as exc:
        raise KeyFormatError("bad permutation entry") from exc
    if n != params.n or len(b0) != n or not np.array_equal(np.sort(b0), np.arange(n)):
        raise KeyFormatError("b0 is not a permutation of the code length")
    blocks = r.hex_matrix(spec, "blocks", (params.m - 1, params.p))
    h = ParityCheck(params, spec, blocks, tuple(pair))
    dec = r.tagged("decoder")
    kwargs = {} if table_budget is None else {"table_budget": table_budget}
    if dec == ["table"]:
        return private_key_from_parts(params, spec, a0, h, b0, decoder="table", **kwargs)
    if len(dec) == 4 and dec[0] == "isd":
        cfg = IsdConfig(int(dec[1]), int(dec[2]), int(dec[3]))
        return private_key_from_parts(params, spec, a0, h, b0, decoder="isd", isd=cfg)
    raise KeyFormatError(f"unknown decoder line {dec!r}")


def emit_vector(spec: FieldSpec, v) -> str:
    return _hex_row(spec, v) + "\n"


def parse_vector(spec: FieldSpec, text: str, length: int) -> np.ndarray:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) != 1:
        raise KeyFormatError("vector file must hold exactly one line")
    return np.array(parse_elements(spec, lines[0], length), dtype=DTYPE)
