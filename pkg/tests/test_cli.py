import io
import os
import sys
from contextlib import redirect_stdout

import pytest

from torsionlab import cli
from torsionlab.diagrams import fixture_dir


def run_cli(*argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli.main(list(argv))
    return code, buf.getvalue()


def fixture_path(name):
    return os.path.join(fixture_dir(), f"{name}.pd")


@pytest.fixture
def lambda_complex(tmp_path):
    p = tmp_path / "lam.chain"
    p.write_text("field: rational\ndims: 1 1\nboundary 1:\n3/2\n")
    return str(p)


def test_chain_torsion_reports_inverse(lambda_complex):
    code, out = run_cli("chain-torsion", lambda_complex)
    assert code == 0
    assert "torsion: 2/3" in out
    assert "sign_N: 0" in out
    assert "status: PASS" in out


def test_chain_torsion_invalid_complex(tmp_path):
    p = tmp_path / "bad.chain"
    p.write_text("field: rational\ndims: 1 1 1\n"
                 "boundary 1:\n1\nboundary 2:\n1\n")
    code, out = run_cli("chain-torsion", str(p))
    assert code == 2


def test_chain_torsion_zero_complex(tmp_path):
    p = tmp_path / "zero.chain"
    p.write_text("field: rational\ndims: 0\n")
    code, out = run_cli("chain-torsion", str(p))
    assert code == 0
    assert "torsion: 1" in out


def test_knot_verify_trefoil():
    code, out = run_cli("knot", "verify", fixture_path("trefoil_lh"))
    assert code == 0
    assert "conway_from_torsion: z^2 + 1" in out
    assert "check pipelines_equal: PASS" in out
    assert "status: PASS" in out


def test_knot_abs_torsion_value():
    code, out = run_cli("--quiet", "knot", "abs-torsion", "--at", "2",
                        fixture_path("trefoil_lh"))
    assert code == 0
    assert out.strip() == "3/2"


def test_knot_abs_torsion_at_one_is_input_error():
    code, out = run_cli("knot", "abs-torsion", "--at", "1",
                        fixture_path("trefoil_lh"))
    assert code == 2
    assert "NonAcyclicBundle" in out
    assert "Alexander" in out


def test_knot_alexander():
    code, out = run_cli("knot", "alexander", fixture_path("figure8"))
    assert code == 0
    assert "alexander: 1-3t+t^2" in out
    assert "value_at_1: -1" in out


def test_knot_conway_skein():
    code, out = run_cli("knot", "conway-skein", fixture_path("k5_2"))
    assert code == 0
    assert "conway: 2z^2 + 1" in out
    assert "skein_failures: 0" in out


def test_deterministic_reports():
    _, out1 = run_cli("knot", "verify", fixture_path("figure8"))
    _, out2 = run_cli("knot", "verify", fixture_path("figure8"))
    strip = lambda s: "\n".join(l for l in s.splitlines()
                                if not l.startswith("elapsed_ms"))
    assert strip(out1) == strip(out2)


def test_missing_file_is_input_error(tmp_path):
    code, _ = run_cli("knot", "conway", str(tmp_path / "nope.pd"))
    assert code == 2


def test_selftest_negative_control():
    code, out = run_cli("selftest", "--corrupt-sign-table")
    assert code == 1
    assert "check AC4 sign-function oracle: FAIL" in out
    # the corruption hook must not leak into later runs
    from torsionlab import chain
    assert chain._SIGN_CORRUPTION == 0
