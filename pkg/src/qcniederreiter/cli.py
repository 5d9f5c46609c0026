"""
Command-line interface: ``qcnr keygen|encrypt|decrypt|analyze|verify|oracle``.

Exit codes: 0 success, 2 parameter error, 3 decode failure, 4 cap or budget
exceeded, 5 I/O or file-format error. ``--seed`` falls back to the
``QCNR_SEED`` environment variable, then to 0.
"""

from __future__ import annotations

import argparse
import dataclasses
import math
import os
import sys

import numpy as np

from . import analysis
from .code import QcParams, build_parity_check, verify_conditions
from .decoder import IsdConfig
from .exceptions import BudgetExceeded, KeyFormatError, ParameterError, SyndromeCollision
from .niederreiter import (decode_plaintext, decrypt, encode_plaintext, encrypt, keygen,
                           plaintext_space)
from .serialize import (emit_private, emit_public, emit_vector, parse_private, parse_public,
                        parse_vector)

EXIT_OK, EXIT_PARAM, EXIT_DECODE, EXIT_BUDGET, EXIT_IO = 0, 2, 3, 4, 5


class DecodeFailure(Exception):
    pass


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("QCNR_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise ParameterError(f"QCNR_SEED={env!r} is not an integer")


def _read(path):
    with open(path) as fh:
        return fh.read()


def _write(path, text):
    with open(path, "w") as fh:
        fh.write(text)


def _emit(records: dict):
    for k, v in records.items():
        print(f"{k}={v}")


# -- subcommands --------------------------------------------------------------

def cmd_keygen(args):
    params = QcParams(args.l, args.p, args.m, args.t)
    pk, sk = keygen(params, _seed(args), decoder=args.decoder, scrambler=args.scrambler)
    _write(args.out + ".pub", emit_public(pk))
    _write(args.out + ".priv", emit_private(sk))
    size = analysis.public_key_size(args.p, args.m, args.l)
    print(f"public key: rows={size['rows']} cols={size['cols']} bits={size['bits']}")
    print(f"wrote {args.out}.pub {args.out}.priv")


def cmd_encrypt(args):
    pk = parse_public(_read(args.pub))
    if args.plaintext:
        x = parse_vector(pk.spec, _read(args.plaintext), pk.params.n)
    else:
        index = args.index
        if index is None:
            rng = np.random.default_rng(_seed(args))
            index = int(rng.integers(plaintext_space(pk.params)))
        x = encode_plaintext(index, pk.params)
        print(f"index={index}")
    y = encrypt(pk, x)
    _write(args.out, emit_vector(pk.spec, y))


def cmd_decrypt(args):
    sk = parse_private(_read(args.priv))
    if args.max_iter is not None and isinstance(sk.decoder, IsdConfig):
        sk = dataclasses.replace(sk, decoder=IsdConfig(args.max_iter, sk.decoder.depth, sk.decoder.seed))
    y = parse_vector(sk.spec, _read(args.cipher), sk.params.p)
    x = decrypt(sk, y)
    if x is None:
        raise DecodeFailure("no error vector of weight <= t has this syndrome")
    _write(args.out, emit_vector(sk.spec, x))
    if np.count_nonzero(x) == sk.params.t:
        print(f"index={decode_plaintext(x, sk.params)}")
    else:
        print(f"weight={np.count_nonzero(x)} (below t, no plaintext index)")


def cmd_analyze(args):
    what = args.what
    if what == "workfactor":
        w = analysis.work_factor(args.p, args.m, args.t)
        _emit({"p": args.p, "m": args.m, "t": args.t, "W": f"{float(w):.6g}",
               "log2_W": f"{analysis.log2_fraction(w):.6f}"})
    elif what == "rate":
        _emit({"rate": f"{analysis.info_rate(args.p, args.m, args.t, args.l):.4f}"})
    elif what == "mq":
        _emit({"m_Q": analysis.min_m_quantum(args.p)})
    elif what == "mc":
        _emit({"m_C": analysis.min_m_classical(args.p, args.t, args.bits)})
    elif what == "qsec":
        rep = analysis.qsec_report(args.p, args.m, args.aut_size, args.delta, args.a)
        _emit({"m_Q": rep.m_q, "premise_ok": rep.premise_ok, "aut_size": rep.aut_size,
               "h0_size": rep.h0_size, "k_size": rep.k_size,
               "dk_bound_log2": f"{rep.dk_bound_log2:.6f}", "delta": rep.delta, "a": rep.a})
    elif what == "table1":
        print(f"{'bits':>4} {'p':>4} {'t':>3} {'m_C':>4} {'m_Q':>4} {'m':>4} {'rows':>5} {'cols':>6} "
              f"{'rate':>5}  {'ref m_C/rate':<15} stern probability")
        for r in analysis.table1(args.l):
            ref = f"{r['ref_m_C']}/{r['ref_rate']:.2f}"
            print(f"{r['security']:>4} {r['p']:>4} {r['t']:>3} {r['m_C']:>4} {r['m_Q']:>4} {r['m']:>4} "
                  f"{r['rows']:>5} {r['cols']:>6} {r['rate']:>5.2f}  {ref:<15} {r['stern_probability']}")


def _load_code(args):
    if args.key:
        return parse_private(_read(args.key)).h
    params = QcParams(args.l, args.p, args.m, args.t)
    return build_parity_check(params, np.random.default_rng(_seed(args)))


def cmd_verify(args):
    h = _load_code(args)
    rep = verify_conditions(h)
    for line in rep.lines():
        print(line)
    return EXIT_OK if rep.ok else EXIT_PARAM


def cmd_oracle(args):
    h = _load_code(args)
    p, n = h.params.p, h.params.n
    cap = args.cap
    if math.factorial(p) > cap:
        raise BudgetExceeded(f"refusing: T_H search needs {p}! = {math.factorial(p)} > cap {cap}")
    rep = analysis.brute_aut(h, cap)
    if args.which == "tset":
        print(f"|T_H| = {rep.t_set_size}")
        for s in rep.t_set:
            print(" ".join(str(int(v)) for v in s))
    elif args.which == "2trans":
        print("2-transitive" if rep.two_transitive else "not 2-transitive")
    else:
        for line in rep.lines(p):
            print(line)
        if math.factorial(n) <= cap:
            full = analysis.full_aut_crosscheck(h, cap)
            print(f"full S_{n} sweep: |Aut(H)| = {len(full.members)}, "
                  f"block-diagonal: {full.block_diagonal_all}, matches T_H reconstruction: {full.matches_brute}")
        else:
            print(f"full S_{n} sweep skipped: {n}! exceeds cap {cap}")


# -- parser -------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(prog="qcnr", description="Quasi-cyclic Niederreiter cryptosystem toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    def code_flags(sp, required=True):
        sp.add_argument("--p", type=int, required=required)
        sp.add_argument("--m", type=int, required=required)
        sp.add_argument("--l", type=int, default=2)
        sp.add_argument("--t", type=int, default=1)
        sp.add_argument("--seed", type=int)

    sp = sub.add_parser("keygen", help="generate a key pair")
    code_flags(sp)
    sp.add_argument("--out", required=True, help="output prefix; writes PREFIX.pub and PREFIX.priv")
    sp.add_argument("--decoder", choices=["auto", "table", "isd"], default="auto")
    sp.add_argument("--scrambler", choices=["field", "binary"], default="field")
    sp.set_defaults(func=cmd_keygen)

    sp = sub.add_parser("encrypt", help="encrypt a plaintext index or hex plaintext")
    sp.add_argument("--pub", required=True)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--index", type=int)
    g.add_argument("--plaintext", help="file with n hex elements")
    sp.add_argument("--seed", type=int, help="random index when neither --index nor --plaintext is given")
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_encrypt)

    sp = sub.add_parser("decrypt", help="decrypt a ciphertext file")
    sp.add_argument("--priv", required=True)
    sp.add_argument("--cipher", "--in", dest="cipher", required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--max-iter", type=int, help="ISD iteration budget")
    sp.set_defaults(func=cmd_decrypt)

    sp = sub.add_parser("analyze", help="security and rate analysis")
    sp.add_argument("what", choices=["workfactor", "rate", "mq", "mc", "qsec", "table1"])
    sp.add_argument("--p", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--t", type=int)
    sp.add_argument("--l", type=int, default=3)
    sp.add_argument("--bits", type=float, default=80)
    sp.add_argument("--delta", type=float, default=1.0)
    sp.add_argument("--a", type=float, default=0.249)
    sp.add_argument("--aut-size", type=int)
    sp.set_defaults(func=cmd_analyze)

    for name, fn, hlp in (("verify", cmd_verify, "check conditions I-V"),
                          ("oracle", cmd_oracle, "brute-force group oracles (toy sizes)")):
        sp = sub.add_parser(name, help=hlp)
        if name == "oracle":
            sp.add_argument("which", choices=["aut", "tset", "2trans"])
            sp.add_argument("--cap", type=int, default=math.factorial(7),
                            help="largest permutation count to enumerate")
        sp.add_argument("--key", help="private key file")
        code_flags(sp, required=False)
        sp.set_defaults(func=fn)
    return ap


_NEEDS = {"workfactor": ("p", "m", "t"), "rate": ("p", "m", "t"), "mq": ("p",),
          "mc": ("p", "t"), "qsec": ("p", "m"), "table1": ()}


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    missing = []
    if args.command == "analyze":
        missing = [f"--{k}" for k in _NEEDS[args.what] if getattr(args, k) is None]
    elif args.command in ("verify", "oracle") and not args.key:
        missing = [f"--{k}" for k in ("p", "m") if getattr(args, k) is None]
    if missing:
        ap.error(f"{args.command} needs {' '.join(missing)}")
    try:
        rc = args.func(args)
    except ParameterError as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except DecodeFailure as exc:
        print(f"decryption failed: {exc}", file=sys.stderr)
        return EXIT_DECODE
    except (BudgetExceeded, SyndromeCollision) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (OSError, KeyFormatError) as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return rc or EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
