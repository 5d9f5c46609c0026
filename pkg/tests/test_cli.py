import numpy as np
import pytest

from qcniederreiter.cli import main


def run(capsys, *argv):
    rc = main([str(a) for a in argv])
    out = capsys.readouterr()
    return rc, out.out, out.err


def records(text):
    return dict(line.split("=", 1) for line in text.splitlines() if "=" in line)


@pytest.fixture
def keypair(tmp_path, capsys):
    prefix = tmp_path / "k"
    rc, out, _ = run(capsys, "keygen", "--p", 5, "--m", 3, "--l", 2, "--t", 1, "--seed", 7, "--out", prefix)
    assert rc == 0
    assert "public key: rows=5 cols=15 bits=150" in out
    return prefix


def test_round_trip(tmp_path, capsys, keypair):
    ct, pt = tmp_path / "c.txt", tmp_path / "x.txt"
    rc, out, _ = run(capsys, "encrypt", "--pub", f"{keypair}.pub", "--index", 17, "--out", ct)
    assert rc == 0 and records(out)["index"] == "17"
    rc, out, _ = run(capsys, "decrypt", "--priv", f"{keypair}.priv", "--in", ct, "--out", pt)
    assert rc == 0 and records(out)["index"] == "17"
    assert len(pt.read_text().split()) == 15


def test_plaintext_file(tmp_path, capsys, keypair):
    x = tmp_path / "x.txt"
    x.write_text(" ".join(["0"] * 14 + ["3"]) + "\n")
    ct, back = tmp_path / "c", tmp_path / "y"
    assert run(capsys, "encrypt", "--pub", f"{keypair}.pub", "--plaintext", x, "--out", ct)[0] == 0
    assert run(capsys, "decrypt", "--priv", f"{keypair}.priv", "--cipher", ct, "--out", back)[0] == 0
    assert back.read_text() == x.read_text()


def test_keygen_deterministic(tmp_path, capsys):
    for name in ("a", "b"):
        run(capsys, "keygen", "--p", 5, "--m", 3, "--seed", 4, "--out", tmp_path / name)
    for ext in (".pub", ".priv"):
        assert (tmp_path / f"a{ext}").read_bytes() == (tmp_path / f"b{ext}").read_bytes()


def test_env_seed(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("QCNR_SEED", "4")
    run(capsys, "keygen", "--p", 5, "--m", 3, "--out", tmp_path / "env")
    run(capsys, "keygen", "--p", 5, "--m", 3, "--seed", 4, "--out", tmp_path / "arg")
    assert (tmp_path / "env.pub").read_text() == (tmp_path / "arg.pub").read_text()


def test_decode_failure_exit(tmp_path, capsys, keypair):
    # an out-of-table syndrome: weight-2 error at t=1 usually misses
    ct = tmp_path / "c"
    codes = set()
    for v in ("1 1 1 1 1", "2 3 1 0 2", "3 3 2 2 1", "1 2 3 1 2"):
        ct.write_text(v + "\n")
        codes.add(run(capsys, "decrypt", "--priv", f"{keypair}.priv", "--in", ct, "--out", tmp_path / "o")[0])
    assert codes <= {0, 3} and 3 in codes


def test_param_error_exit(tmp_path, capsys):
    rc, _, err = run(capsys, "keygen", "--p", 6, "--m", 3, "--out", tmp_path / "k")
    assert rc == 2 and "not prime" in err


def test_missing_file_exit(tmp_path, capsys):
    rc, _, _ = run(capsys, "encrypt", "--pub", tmp_path / "none.pub", "--index", 0, "--out", tmp_path / "c")
    assert rc == 5


def test_corrupt_key_exit(tmp_path, capsys):
    bad = tmp_path / "bad.pub"
    bad.write_text("hello\n")
    assert run(capsys, "encrypt", "--pub", bad, "--index", 0, "--out", tmp_path / "c")[0] == 5


def test_analyze_outputs(capsys):
    rc, out, _ = run(capsys, "analyze", "mq", "--p", 101)
    assert rc == 0 and records(out) == {"m_Q": "35"}
    rc, out, _ = run(capsys, "analyze", "workfactor", "--p", 3, "--m", 2, "--t", 1)
    assert records(out)["W"] == "48"
    rc, out, _ = run(capsys, "analyze", "rate", "--p", 211, "--m", 62, "--t", 40)
    assert abs(float(records(out)["rate"]) - 0.80) <= 0.03
    rc, out, _ = run(capsys, "analyze", "mc", "--p", 101, "--t", 15)
    assert 16 <= int(records(out)["m_C"]) <= 18
    rc, out, _ = run(capsys, "analyze", "qsec", "--p", 101, "--m", 35)
    assert records(out)["premise_ok"] == "True"
    rc, out, _ = run(capsys, "analyze", "table1")
    assert rc == 0 and len(out.splitlines()) == 15


def test_analyze_missing_flag(capsys):
    with pytest.raises(SystemExit):
        main(["analyze", "workfactor", "--p", "3"])


def test_verify_and_oracle(capsys, keypair):
    rc, out, _ = run(capsys, "verify", "--p", 7, "--m", 3, "--l", 3, "--seed", 1)
    assert rc == 0 and out.splitlines()[-1] == "overall PASS"
    rc, out, _ = run(capsys, "verify", "--key", f"{keypair}.priv")
    assert rc == 0
    rc, out, _ = run(capsys, "oracle", "aut", "--p", 3, "--m", 2, "--seed", 2)
    assert rc == 0 and "full S_6 sweep" in out and "block-diagonal: True" in out
    rc, out, _ = run(capsys, "oracle", "2trans", "--p", 5, "--m", 2)
    assert out.strip() == "not 2-transitive"
    rc, out, _ = run(capsys, "oracle", "tset", "--p", 5, "--m", 3)
    assert out.splitlines()[0] == "|T_H| = 5"


def test_oracle_refuses_large_p(capsys):
    rc, _, err = run(capsys, "oracle", "aut", "--p", 11, "--m", 2)
    assert rc == 4 and "refusing" in err
