"""Torsion of Euler structures on twisted CW data.

A twisted CW complex stores cell counts and boundary matrices over the
integral group ring of the free abelianized first homology, restricted here
to rank one: entries are integer Laurent polynomials in the generator t.
Flat bundles assign an invertible monodromy matrix to the generator;
twisting substitutes monodromy for group-ring monomials and hands the
result to the chain-level torsion.

Euler structures form a torsor over the coefficient group and are stored as
integer offsets against the base structure implicit in the cell lifts.  The
characteristic class of the base structure is read off the symmetry defect
of the torsion under t -> 1/t, canonical structures make that defect vanish,
and the absolute torsion is the torsion at a canonical structure together
with a fixed homology orientation.  For sign conventions the offset of the
canonical structure is half the symmetry exponent; only canonical outputs
and offsets measured from them are convention-free, and only those are
asserted downstream.

The absolute torsion additionally carries the surgery normalization factor
``det(-(I - M)(I - M^(-1)))`` of the monodromy M, which converts the raw
torsion of a zero-surgery complex into the Conway-polynomial value; the raw
canonical torsion stays available as ``unnormalized``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from .chain import (ChainComplex, DetLineCoord, compute_homology,
                    complex_to_text, torsion_phi)
from .errors import (ComplexInvalid, Conditions31Violated, MetadataMismatch,
                     NonCommutingMonodromy, NonUnitaryMonodromy, ParityError,
                     ZeroDenominatorTorsion, ZeroElement, ZeroTorsion)
from .linalg import (COMPLEX, Domain, LAURENT, Matrix, RATFUNC, RATIONAL,
                     det, solve)
from .scalars import LaurentPoly, RatFunc, parse_laurent

UNITARY_TOL = 1e-9


class TwistedCWComplex:
    """Cell counts plus boundary matrices over the group ring of Z."""

    def __init__(self, cells: Sequence[int], boundaries: Sequence[Matrix],
                 oriented: bool = True, betti: Sequence[int] | None = None,
                 conditions31: bool = True, check: bool = True):
        self.cells = tuple(int(c) for c in cells)
        self.boundaries = list(boundaries)
        self.oriented = bool(oriented)
        self.betti = tuple(int(b) for b in betti) if betti is not None else None
        self.conditions31 = bool(conditions31)
        m = self.top
        if m % 2 == 0:
            raise ComplexInvalid(f"top degree {m} must be odd")
        if sum((-1) ** q * c for q, c in enumerate(self.cells)) != 0:
            raise ComplexInvalid("Euler characteristic is nonzero")
        if len(self.boundaries) != m:
            raise ComplexInvalid("boundary count mismatch")
        for q, b in enumerate(self.boundaries, start=1):
            if (b.rows, b.cols) != (self.cells[q - 1], self.cells[q]):
                raise ComplexInvalid(f"boundary {q} shape mismatch")
            for row in b.data:
                for entry in row:
                    if not entry.is_integral():
                        raise ComplexInvalid(
                            "group-ring entries must have integer coefficients")
        if check:
            for q in range(2, m + 1):
                if not (self.boundaries[q - 2] @ self.boundaries[q - 1]).is_zero():
                    raise ComplexInvalid(f"d{q-1} d{q} != 0 over the group ring")
            if self.betti is not None:
                actual = untwisted_betti(self)
                if tuple(actual) != self.betti:
                    raise MetadataMismatch(
                        f"declared Betti numbers {self.betti} != computed {tuple(actual)}")

    @property
    def top(self) -> int:
        return len(self.cells) - 1

    def semi_characteristic(self) -> int:
        """Sum of even-degree Betti numbers through degree m-1."""
        if self.betti is None:
            raise MetadataMismatch("no Betti numbers declared")
        return sum(self.betti[2 * i] for i in range((self.top - 1) // 2 + 1))


class FlatBundle:
    """Flat bundle data: commuting invertible monodromy per generator."""

    def __init__(self, rank: int, monodromy: Sequence[Matrix], domain: Domain):
        self.rank = int(rank)
        self.monodromy = list(monodromy)
        self.domain = domain
        if self.rank < 1:
            raise ValueError("bundle rank must be positive")
        for M in self.monodromy:
            if (M.rows, M.cols) != (self.rank, self.rank):
                raise ValueError("monodromy shape mismatch")
            if domain.is_zero(det(M)):
                raise ValueError("monodromy must be invertible")
        for i, A in enumerate(self.monodromy):
            for B in self.monodromy[i + 1:]:
                if (A @ B).data != (B @ A).data:
                    raise NonCommutingMonodromy(
                        "monodromy matrices must commute")

    @classmethod
    def line(cls, a, domain: Domain) -> "FlatBundle":
        return cls(1, [Matrix([[a]], domain)], domain)

    @classmethod
    def symbolic_line(cls) -> "FlatBundle":
        """Line bundle with monodromy the group generator itself."""
        return cls.line(RatFunc.t(), RATFUNC)

    @classmethod
    def trivial(cls, rank: int, domain: Domain) -> "FlatBundle":
        return cls(rank, [Matrix.identity(rank, domain)], domain)

    def generator_matrix(self) -> Matrix:
        return self.monodromy[0]

    def det_monodromy(self):
        return det(self.generator_matrix())

    def det_f(self, h: int):
        """Determinant of the monodromy along h times the generator."""
        d = self.det_monodromy()
        if h >= 0:
            out = self.domain.one
            for _ in range(h):
                out = out * d
            return out
        return self.domain.one / self.det_f(-h)

    def dual(self) -> "FlatBundle":
        """Dual bundle: inverse-transpose monodromy."""
        inv = _matrix_inverse(self.generator_matrix())
        return FlatBundle(self.rank, [inv.transpose()], self.domain)

    def direct_sum(self, other: "FlatBundle") -> "FlatBundle":
        if self.domain is not other.domain:
            raise ValueError("direct sum needs a common coefficient field")
        n = self.rank + other.rank
        M = Matrix.zeros(n, n, self.domain)
        A, B = self.generator_matrix(), other.generator_matrix()
        for i in range(self.rank):
            for j in range(self.rank):
                M.data[i][j] = A.data[i][j]
        for i in range(other.rank):
            for j in range(other.rank):
                M.data[self.rank + i][self.rank + j] = B.data[i][j]
        return FlatBundle(n, [M], self.domain)

    def is_unitary(self, tol: float = UNITARY_TOL) -> bool:
        if self.domain is not COMPLEX:
            return False
        M = self.generator_matrix()
        MH = Matrix([[M.data[j][i].conjugate() for j in range(M.rows)]
                     for i in range(M.cols)], COMPLEX)
        P = M @ MH
        for i in range(self.rank):
            for j in range(self.rank):
                target = 1.0 if i == j else 0.0
                if abs(P.data[i][j] - target) > tol:
                    return False
        return True


def _matrix_inverse(M: Matrix) -> Matrix:
    n = M.rows
    cols = []
    for j in range(n):
        e = [M.domain.zero] * n
        e[j] = M.domain.one
        cols.append(solve(M, e))
    return Matrix.from_columns(cols, n, M.domain)


@dataclass(frozen=True)
class EulerStructure:
    """Offset against the base structure implicit in the cell lifts."""

    offset: int = 0

    def shifted(self, h: int) -> "EulerStructure":
        return EulerStructure(self.offset + h)


@dataclass(frozen=True)
class HomOrientation:
    """Orientation sign of the reference homology frame."""

    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("orientation sign must be +1 or -1")


@dataclass(frozen=True)
class CharClass:
    """Coefficient-group element detected from the torsion symmetry defect."""

    offset: int
    sign: int


@dataclass(frozen=True)
class AbsoluteTorsion:
    """Torsion at a canonical Euler structure.

    value carries the surgery normalization that makes the zero-surgery
    family evaluate to Conway-polynomial values; unnormalized is the plain
    torsion at the canonical structure.
    """

    value: DetLineCoord
    unnormalized: DetLineCoord
    canonical_offset: int
    realness: Optional[float] = None


# ---------------------------------------------------------------------------
# twisting
# ---------------------------------------------------------------------------

def twist(X: TwistedCWComplex, F: FlatBundle) -> ChainComplex:
    """Chain complex of X with coefficients in F.

    Boundary entries are group-ring elements; every monomial t**e is
    replaced by the e-th power of the monodromy matrix, producing boundary
    matrices of size rank * cells.
    """
    d = F.domain
    M = F.generator_matrix()
    Minv = _matrix_inverse(M) if any(
        e < 0 for b in X.boundaries for row in b.data
        for entry in row for e in entry.coeffs) else None
    power_cache = {0: Matrix.identity(F.rank, d), 1: M}

    def mono_power(e: int) -> Matrix:
        if e in power_cache:
            return power_cache[e]
        if e > 0:
            power_cache[e] = mono_power(e - 1) @ M
        else:
            power_cache[e] = mono_power(e + 1) @ Minv
        return power_cache[e]

    r = F.rank
    out = []
    for q in range(1, X.top + 1):
        B = X.boundaries[q - 1]
        T = Matrix.zeros(r * B.rows, r * B.cols, d)
        for i in range(B.rows):
            for j in range(B.cols):
                entry = B.data[i][j]
                if entry.is_zero():
                    continue
                block = Matrix.zeros(r, r, d)
                for e, c in entry.coeffs.items():
                    block = block + mono_power(e).scale(d.from_int(c.numerator))
                for a in range(r):
                    for b in range(r):
                        T.data[r * i + a][r * j + b] = block.data[a][b]
        out.append(T)
    dims = [r * c for c in X.cells]
    return ChainComplex(dims, out, d, check=(d is not COMPLEX))


def untwisted_betti(X: TwistedCWComplex) -> List[int]:
    """Rational Betti numbers from the trivially twisted complex."""
    cc = twist(X, FlatBundle.trivial(1, RATIONAL))
    H = compute_homology(cc)
    return H.ranks


# ---------------------------------------------------------------------------
# torsion of Euler structures
# ---------------------------------------------------------------------------

def torsion_euler(X: TwistedCWComplex, xi: EulerStructure, F: FlatBundle,
                  eta: HomOrientation | None = None) -> DetLineCoord:
    """Torsion of the Euler structure xi with coefficients in F.

    Computes the chain-level torsion on the cell frame, then applies the
    torsor correction det_F(offset); for odd-rank bundles the orientation
    sign of eta is required and multiplies the result.
    """
    if F.rank % 2 == 1:
        if eta is None:
            raise ValueError("odd-rank bundle needs a homology orientation")
    cc = twist(X, F)
    H = compute_homology(cc)
    base = torsion_phi(cc, DetLineCoord(F.domain.one, "cells"), H)
    value = base.value * F.det_f(xi.offset)
    if F.rank % 2 == 1 and eta is not None and eta.sign < 0:
        value = -value
    return DetLineCoord(value, base.frame)


def _require_acyclic_symbolic(X: TwistedCWComplex) -> RatFunc:
    """Raw base-structure torsion over the symbolic field; acyclic only."""
    cc = twist(X, FlatBundle.symbolic_line())
    H = compute_homology(cc)
    if any(H.ranks):
        raise ZeroTorsion(
            "twisted homology is nontrivial over the rational-function field")
    return torsion_phi(cc, DetLineCoord(RatFunc.one(), "cells"), H).value


def char_class_base(X: TwistedCWComplex) -> CharClass:
    """Characteristic class of the base Euler structure.

    The symbolic torsion tau satisfies bar(tau) = sign * t**e * tau; the
    class is -e times the generator (so the canonical structure sits at
    offset e/2 and its torsion is symmetric under t -> 1/t).
    """
    tau = _require_acyclic_symbolic(X)
    ratio = tau.bar() / tau
    mono = ratio.monomial_form()
    if mono is None:
        raise ZeroTorsion("torsion symmetry ratio is not a monomial")
    coeff, e = mono
    if coeff not in (1, -1):
        raise ZeroTorsion("torsion symmetry ratio is not a unit monomial")
    if e % 2 != 0:
        raise ParityError(f"characteristic class exponent {e} is odd")
    return CharClass(offset=-e, sign=1 if coeff == 1 else -1)


def canonical_euler(X: TwistedCWComplex) -> EulerStructure:
    """Euler structure with vanishing characteristic class.

    Unique here because the coefficient group is free; the offset is minus
    half the characteristic exponent of the base structure.
    """
    c = char_class_base(X)
    return EulerStructure(offset=-c.offset // 2)


def conway_normalization(F: FlatBundle):
    """Normalization factor det(-(I - M)(I - M^(-1))) of the monodromy."""
    M = F.generator_matrix()
    d = F.domain
    eye = Matrix.identity(F.rank, d)
    A = eye + M.scale(d.from_int(-1))
    B = eye + _matrix_inverse(M).scale(d.from_int(-1))
    return det((A @ B).scale(d.from_int(-1)))


def absolute_torsion(X: TwistedCWComplex, F: FlatBundle,
                     eta: HomOrientation | None = None) -> AbsoluteTorsion:
    """Torsion at the canonical Euler structure, Conway-normalized.

    Requires the declared orientability/Stiefel-Whitney conditions and, for
    odd rank, a homology orientation.  The unnormalized field equals
    torsion_euler at the canonical structure; value multiplies it by the
    surgery normalization factor of the monodromy.
    """
    if not X.conditions31:
        raise Conditions31Violated(
            "complex is not declared to satisfy the orientability conditions")
    if F.rank % 2 == 1 and eta is None:
        raise ValueError("odd-rank bundle needs a homology orientation")
    xi = canonical_euler(X)
    raw = torsion_euler(X, xi, F, eta or HomOrientation(+1))
    norm = conway_normalization(F)
    value = raw.value * norm
    realness = None
    if F.domain is COMPLEX:
        realness = abs(value.imag)
    return AbsoluteTorsion(
        value=DetLineCoord(value, "canonical"),
        unnormalized=DetLineCoord(raw.value, raw.frame),
        canonical_offset=xi.offset,
        realness=realness)


# ---------------------------------------------------------------------------
# scalar product, involution, phase
# ---------------------------------------------------------------------------

def pr_product(u: DetLineCoord, v: DetLineCoord, X: TwistedCWComplex,
               F: FlatBundle):
    """Duality scalar product of two torsion-line elements.

    Implemented for acyclic F (the supported three-dimensional family):
    the duality and fusion signs vanish on the zero graded space, so
    the product reduces to u * v divided by the torsion of F + F*, which
    needs no Euler structure or orientation since the dual determinants
    cancel."""
    cc = twist(X, F)
    H = compute_homology(cc)
    if any(H.ranks):
        raise ValueError("scalar product implemented for acyclic bundles only")
    pair = F.direct_sum(F.dual())
    denom = torsion_euler(X, EulerStructure(0), pair, None)
    if F.domain.is_zero(denom.value):
        raise ZeroDenominatorTorsion("torsion of F + F* vanishes")
    return u.value * v.value / denom.value


def pr_sign_residue(X: TwistedCWComplex, F: FlatBundle) -> int:
    """Parity residue entering the self-product of a torsion.

    Zero when the bundle rank is even or the dimension is 3 mod 4; equal to
    the semi-characteristic mod 2 when the rank is odd and the dimension is
    1 mod 4 (that branch has no three-dimensional test instance and is
    untested)."""
    if F.rank % 2 == 0 or X.top % 4 == 3:
        return 0
    return X.semi_characteristic() % 2


def involution_bar_det(tau: DetLineCoord, X: TwistedCWComplex,
                       F: FlatBundle) -> DetLineCoord:
    """Canonical anti-linear involution on the torsion line.

    Requires unitary monodromy.  In the acyclic case the determinant line
    is canonically the scalar field and the involution is complex
    conjugation."""
    if F.domain is not COMPLEX or not F.is_unitary():
        raise NonUnitaryMonodromy("involution needs unitary monodromy")
    cc = twist(X, F)
    H = compute_homology(cc)
    if any(H.ranks):
        raise ValueError("involution implemented for acyclic bundles only")
    return DetLineCoord(tau.value.conjugate(), tau.frame)


def phase(tau: DetLineCoord, X: TwistedCWComplex | None = None,
          F: FlatBundle | None = None) -> float:
    """Phase of a nonzero torsion value, as an angle in [0, pi)."""
    v = complex(tau.value)
    if abs(v) <= 0:
        raise ZeroElement("phase of the zero element")
    return math.atan2(v.imag, v.real) % math.pi


# ---------------------------------------------------------------------------
# text serialization
# ---------------------------------------------------------------------------

def cw_to_text(X: TwistedCWComplex) -> str:
    lines = [f"m: {X.top}",
             "cells: " + " ".join(str(c) for c in X.cells),
             f"orientation: {'+' if X.oriented else '-'}"]
    if X.betti is not None:
        lines.append("betti: " + " ".join(str(b) for b in X.betti))
    lines.append(f"conditions31: {'true' if X.conditions31 else 'false'}")
    for q in range(1, X.top + 1):
        lines.append(f"boundary {q}:")
        for row in X.boundaries[q - 1].data:
            lines.append(" ".join(str(x) for x in row) if row else "-")
    return "\n".join(lines) + "\n"


def parse_cw(text: str) -> TwistedCWComplex:
    m = None
    cells = None
    oriented = True
    betti = None
    conditions31 = True
    blocks: List[List[List[LaurentPoly]]] = []
    current: List[List[LaurentPoly]] | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("m:"):
            m = int(line.split(":", 1)[1])
        elif line.startswith("cells:"):
            cells = [int(x) for x in line.split(":", 1)[1].split()]
        elif line.startswith("orientation:"):
            oriented = line.split(":", 1)[1].strip() == "+"
        elif line.startswith("betti:"):
            betti = [int(x) for x in line.split(":", 1)[1].split()]
        elif line.startswith("conditions31:"):
            conditions31 = line.split(":", 1)[1].strip() == "true"
        elif line.startswith("boundary"):
            current = []
            blocks.append(current)
        else:
            if current is None:
                raise ComplexInvalid(f"line {lineno}: entries before headers")
            if line == "-":
                current.append([])
            else:
                try:
                    current.append([parse_laurent(tok) for tok in line.split()])
                except Exception as exc:
                    raise ComplexInvalid(f"line {lineno}: {exc}") from exc
    if cells is None or m is None or m != len(cells) - 1:
        raise ComplexInvalid("missing or inconsistent headers")
    boundaries = []
    for q, rows in enumerate(blocks, start=1):
        nrows, ncols = cells[q - 1], cells[q]
        if nrows == 0:
            rows = []
        if len(rows) != nrows or any(len(r) != ncols for r in rows):
            raise ComplexInvalid(f"boundary {q}: shape mismatch")
        boundaries.append(Matrix(rows, LAURENT, nrows, ncols))
    return TwistedCWComplex(cells, boundaries, oriented=oriented,
                            betti=betti, conditions31=conditions31)
