"""Acceptance gate: one test per criterion, each printing its verdict."""

import time

import pytest

from torsionlab import acceptance


def _check(result):
    print()
    print(result.line() + f"   [{result.elapsed_ms:.0f} ms]")
    assert result.passed, result.witness


def test_ac1_pipeline_equality():
    _check(acceptance.criterion_1_pipeline_equality())


def test_ac2_symbolic_identity():
    _check(acceptance.criterion_2_symbolic_identity())


def test_ac3_skein_inline():
    _check(acceptance.criterion_3_skein_inline())


def test_ac4_sign_oracle():
    _check(acceptance.criterion_4_sign_oracle())


def test_ac5_phi_well_defined():
    _check(acceptance.criterion_5_phi_well_defined())


def test_ac6_torsor_action():
    _check(acceptance.criterion_6_torsor_action())


def test_ac7_bar_symmetry_realness():
    _check(acceptance.criterion_7_bar_symmetry_realness())


def test_ac8_pr_product():
    _check(acceptance.criterion_8_pr_product())


def test_ac9_phase_law():
    _check(acceptance.criterion_9_phase_law())


def test_ac10_error_contracts():
    _check(acceptance.criterion_10_error_contracts())


def test_acceptance_suite_runtime():
    start = time.perf_counter()
    results = acceptance.run_all()
    elapsed = time.perf_counter() - start
    assert all(r.passed for r in results)
    assert elapsed < 60.0, f"acceptance suite took {elapsed:.1f}s"
