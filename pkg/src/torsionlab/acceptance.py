"""Named acceptance checks runnable from pytest or the command line.

Each criterion returns a :class:`CheckResult`; a failed check carries a
witness string with enough input and intermediate data to reproduce it.
The checks are deterministic (fixed seeds, fixed elimination order).
"""

from __future__ import annotations

import cmath
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List

from . import chain, cw, knots
from .chain import (ChainComplex, DetLineCoord, GradedDims, compute_homology,
                    duality_sign, fusion_sign, randomize_homology_gauge,
                    sign_N_dims, torsion_phi)
from .cw import (EulerStructure, FlatBundle, HomOrientation, absolute_torsion,
                 canonical_euler, phase, pr_product, torsion_euler)
from .diagrams import FIXTURE_NAMES, load_fixture
from .errors import NonAcyclicBundle
from .knots import (alexander_poly, build_surgery_complex, canonical_normalize,
                    conway_from_torsion, conway_symbolic, surgery_torsion)
from .linalg import COMPLEX, Matrix, RATIONAL
from .scalars import RatFunc
from .skein import ConwayPoly, SkeinStats, conway_skein

KNOT_FIXTURES = FIXTURE_NAMES


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    witness: str = ""
    elapsed_ms: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = f"{self.name}: {status}"
        if self.detail:
            out += f" ({self.detail})"
        if not self.passed and self.witness:
            out += f"\n  witness: {self.witness}"
        return out


def _run(name: str, fn: Callable[[], str]) -> CheckResult:
    start = time.perf_counter()
    try:
        detail = fn()
        return CheckResult(name, True, detail,
                           elapsed_ms=1000 * (time.perf_counter() - start))
    except Exception as exc:  # noqa: BLE001 - witness capture is the point
        return CheckResult(name, False, type(exc).__name__, witness=str(exc),
                           elapsed_ms=1000 * (time.perf_counter() - start))


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------

def criterion_1_pipeline_equality() -> CheckResult:
    """Both Conway pipelines agree exactly on every fixture."""

    def body() -> str:
        for name in KNOT_FIXTURES:
            d = load_fixture(name)
            via_torsion = conway_from_torsion(d)
            via_skein, _ = conway_skein(d)
            if via_torsion != via_skein:
                raise AssertionError(
                    f"{name}: torsion route {via_torsion} != skein {via_skein}")
        unknot = conway_from_torsion(load_fixture("unknot"))
        if unknot != ConwayPoly.one():
            raise AssertionError(f"unknot gave {unknot}")
        return f"{len(KNOT_FIXTURES)} fixtures, exact integer equality"

    return _run("AC1 pipeline equality", body)


def criterion_2_symbolic_identity() -> CheckResult:
    """Torsion-side value minus the skein polynomial at z = u - 1/u is the
    zero rational function, per fixture."""

    def body() -> str:
        u = RatFunc.t()
        zu = u - RatFunc.one() / u
        for name in KNOT_FIXTURES:
            d = load_fixture(name)
            lhs = conway_symbolic(d)
            nabla, _ = conway_skein(d)
            rhs = RatFunc.zero()
            for j, c in enumerate(nabla.coeffs):
                if c:
                    rhs = rhs + RatFunc.const(c) * zu ** j
            if not (lhs - rhs).is_zero():
                raise AssertionError(f"{name}: difference {lhs - rhs}")
        return "exact rational-function identity on all fixtures"

    return _run("AC2 symbolic torsion identity", body)


def criterion_3_skein_inline() -> CheckResult:
    """Skein relation asserted at every resolution node, zero failures."""

    def body() -> str:
        total = SkeinStats()
        for name in KNOT_FIXTURES:
            _, st = conway_skein(load_fixture(name))
            total.nodes += st.nodes
            total.assertions += st.assertions
            total.failures += st.failures
        if total.assertions <= 0:
            raise AssertionError("no skein assertions were exercised")
        if total.failures:
            raise AssertionError(f"{total.failures} skein failures")
        return f"{total.assertions} assertions, 0 failures"

    return _run("AC3 skein relation inline", body)


def _brute_alpha(dims, q):
    return sum(dims[: q + 1]) % 2


def criterion_4_sign_oracle() -> CheckResult:
    """Parity residues match literal re-evaluation, exhaustively."""

    def body() -> str:
        def all_dims(m):
            if m < 0:
                yield ()
                return
            for rest in all_dims(m - 1):
                for d in range(3):
                    yield rest + (d,)

        checked = 0
        for m in range(0, 6):
            spaces = list(all_dims(m))
            for dims_c in spaces:
                for dims_h in spaces:
                    want = sum(_brute_alpha(dims_c, q) * _brute_alpha(dims_h, q)
                               for q in range(m + 1)) % 2
                    got = sign_N_dims(list(dims_c), list(dims_h))
                    if got != want:
                        raise AssertionError(
                            f"N({dims_c},{dims_h}) = {got}, expected {want}")
                    checked += 1
            for dims_v in spaces:
                for dims_w in spaces:
                    want = sum(_brute_alpha(dims_v, q - 1) * _brute_alpha(dims_w, q)
                               for q in range(1, m + 1)) % 2
                    got = fusion_sign(GradedDims(dims_v), GradedDims(dims_w))
                    if got != want:
                        raise AssertionError(
                            f"M({dims_v},{dims_w}) = {got}, expected {want}")
                    checked += 1
            if m % 2 == 1:
                for dims_v in spaces:
                    want = (sum(_brute_alpha(dims_v, q - 1) * _brute_alpha(dims_v, q)
                                for q in range(1, m + 1))
                            + sum(_brute_alpha(dims_v, 2 * q)
                                  for q in range((m - 1) // 2 + 1))) % 2
                    got = duality_sign(GradedDims(dims_v))
                    if got != want:
                        raise AssertionError(
                            f"s({dims_v}) = {got}, expected {want}")
                    checked += 1
        return f"{checked} exhaustive comparisons"

    return _run("AC4 sign-function oracle", body)


def random_chain_complex(rng: random.Random, max_top: int = 4,
                         max_dim: int = 4) -> ChainComplex:
    """Random complex: first boundary free, later ones through kernels so
    consecutive boundaries compose to zero."""
    from .linalg import kernel_image_bases
    m = rng.randint(0, max_top)
    dims = [rng.randint(0, max_dim) for _ in range(m + 1)]
    mats: List[Matrix] = []
    for q in range(1, m + 1):
        rows, cols = dims[q - 1], dims[q]
        if q == 1 or mats[-1].cols == 0:
            B = Matrix([[Fraction(rng.randint(-2, 2)) for _ in range(cols)]
                        for _ in range(rows)], RATIONAL, rows, cols)
        else:
            K, _, _ = kernel_image_bases(mats[-1])
            R = Matrix([[Fraction(rng.randint(-2, 2)) for _ in range(cols)]
                        for _ in range(K.cols)], RATIONAL, K.cols, cols)
            B = K @ R if K.cols else Matrix.zeros(rows, cols, RATIONAL)
        mats.append(B)
    return ChainComplex(dims, mats, RATIONAL)


def criterion_5_phi_well_defined() -> CheckResult:
    """Torsion coordinate invariant under randomized choices, linear in c."""

    def body() -> str:
        rng = random.Random(20260810)
        complexes = 0
        while complexes < 100:
            C = random_chain_complex(rng)
            H = compute_homology(C)
            base = torsion_phi(C, DetLineCoord(Fraction(1), "cells"), H)
            for _ in range(3):
                Hg = randomize_homology_gauge(C, H, rng)
                alt = torsion_phi(C, DetLineCoord(Fraction(1), "cells"), Hg)
                if alt.value != base.value:
                    raise AssertionError(
                        f"gauge dependence: dims {C.dims}, {base.value} vs "
                        f"{alt.value}")
            g = Fraction(rng.randint(1, 9), rng.randint(1, 5))
            scaled = torsion_phi(C, DetLineCoord(g, "cells"), H)
            if scaled.value != g * base.value:
                raise AssertionError(f"linearity failure: dims {C.dims}")
            complexes += 1
        return f"{complexes} random complexes, exact invariance"

    return _run("AC5 torsion well-definedness", body)


def criterion_6_torsor_action() -> CheckResult:
    """Shifting an Euler structure scales the torsion by the determinant of
    the monodromy, exactly."""

    def body() -> str:
        F = FlatBundle.symbolic_line()
        for name in ("unknot", "trefoil_lh", "figure8"):
            X = build_surgery_complex(load_fixture(name))
            base = torsion_euler(X, EulerStructure(0), F, HomOrientation(1))
            for h in (-2, -1, 1, 2):
                shifted = torsion_euler(X, EulerStructure(h), F,
                                        HomOrientation(1))
                if shifted.value != F.det_f(h) * base.value:
                    raise AssertionError(f"{name}: action law fails at h={h}")
        return "h in {-2,-1,1,2} on three surgery complexes, exact"

    return _run("AC6 Euler torsor action", body)


def _unit_circle_samples(d, count: int):
    alex = alexander_poly(d)
    samples = []
    k = 1
    while len(samples) < count:
        theta = 2 * math.pi * k / (count + 1 + 7)
        a = cmath.exp(1j * theta)
        if abs(a - 1) > 1e-6 and abs(alex.evaluate(a)) > 1e-6:
            samples.append(a)
        k += 1
    return samples


def criterion_7_bar_symmetry_realness() -> CheckResult:
    """Canonical torsion symmetric under t -> 1/t; absolute torsion real on
    the unit circle within 1e-9."""

    def body() -> str:
        for name in KNOT_FIXTURES:
            d = load_fixture(name)
            can = canonical_normalize(surgery_torsion(d))
            if can.value.bar() != can.value:
                raise AssertionError(f"{name}: canonical value not symmetric")
        checked = 0
        for name in ("trefoil_lh", "figure8"):
            d = load_fixture(name)
            X = build_surgery_complex(d)
            for a in _unit_circle_samples(d, 20):
                Fa = FlatBundle.line(a, COMPLEX)
                at = absolute_torsion(X, Fa, HomOrientation(1))
                if at.realness is None or at.realness > 1e-9:
                    raise AssertionError(
                        f"{name}: Im T = {at.realness} at a = {a}")
                checked += 1
        return f"exact symmetry on all fixtures; {checked} unit-circle samples"

    return _run("AC7 bar-symmetry and realness", body)


def criterion_8_pr_product() -> CheckResult:
    """Self scalar product is 1 at the canonical structure and the squared
    monodromy determinant after a generator shift, exactly."""

    def body() -> str:
        F = FlatBundle.symbolic_line()
        t = RatFunc.t()
        for name in ("trefoil_lh", "figure8"):
            X = build_surgery_complex(load_fixture(name))
            xi = canonical_euler(X)
            tau = torsion_euler(X, xi, F, HomOrientation(1))
            pr = pr_product(tau, tau, X, F)
            if pr != RatFunc.one():
                raise AssertionError(f"{name}: <tau,tau> = {pr} at canonical")
            tau_s = torsion_euler(X, xi.shifted(1), F, HomOrientation(1))
            pr_s = pr_product(tau_s, tau_s, X, F)
            if pr_s != t * t:
                raise AssertionError(f"{name}: shifted product {pr_s} != t^2")
        return "canonical product 1 and shifted product t^2, exact"

    return _run("AC8 duality scalar product", body)


def criterion_9_phase_law() -> CheckResult:
    """Measured phase of a shifted torsion is half the argument of the
    squared-shift monodromy determinant, within 1e-9."""

    def body() -> str:
        d = load_fixture("trefoil_lh")
        X = build_surgery_complex(d)
        xi = canonical_euler(X)
        checked = 0
        for a in _unit_circle_samples(d, 10):
            for h in (1, -1):
                Fa = FlatBundle.line(a, COMPLEX)
                tau = torsion_euler(X, EulerStructure(xi.offset + h), Fa,
                                    HomOrientation(1))
                measured = phase(tau)
                want = (0.5 * cmath.phase(a ** (2 * h))) % math.pi
                diff = abs(measured - want) % math.pi
                diff = min(diff, math.pi - diff)
                if diff > 1e-9:
                    raise AssertionError(
                        f"phase {measured} vs {want} at a={a}, h={h}")
                checked += 1
        return f"{checked} samples within 1e-9"

    return _run("AC9 phase law", body)


def criterion_10_error_contracts() -> CheckResult:
    """Unit monodromy and Alexander roots raise the acyclicity error."""

    def body() -> str:
        cases = 0
        d61 = load_fixture("k6_1")
        for a in (Fraction(1), 1.0 + 0j, Fraction(2), Fraction(1, 2)):
            try:
                knots.absolute_torsion_at(d61, a)
            except NonAcyclicBundle:
                cases += 1
            else:
                raise AssertionError(f"no error at a = {a}")
        tre = load_fixture("trefoil_lh")
        root = cmath.exp(1j * math.pi / 3)  # Alexander root of the trefoil
        try:
            knots.absolute_torsion_at(tre, root)
        except NonAcyclicBundle:
            cases += 1
        else:
            raise AssertionError("no error at a trefoil Alexander root")
        return f"{cases} rejections with the declared error type"

    return _run("AC10 error contracts", body)


ALL_CRITERIA = (
    criterion_1_pipeline_equality,
    criterion_2_symbolic_identity,
    criterion_3_skein_inline,
    criterion_4_sign_oracle,
    criterion_5_phi_well_defined,
    criterion_6_torsor_action,
    criterion_7_bar_symmetry_realness,
    criterion_8_pr_product,
    criterion_9_phase_law,
    criterion_10_error_contracts,
)


def run_all() -> List[CheckResult]:
    return [fn() for fn in ALL_CRITERIA]
