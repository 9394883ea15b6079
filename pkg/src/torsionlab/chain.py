"""Determinant-line calculus on finite chain complexes.

A chain complex is stored as graded dimensions plus boundary matrices
d[q]: C_q -> C_{q-1}.  Elements of determinant lines are never represented
as exterior products; a :class:`DetLineCoord` is the scalar coordinate of a
line element against a declared reference frame (ordered bases per degree),
so every identity becomes a scalar equation that exact arithmetic can
assert.

The torsion isomorphism from det C to det H_*(C) is computed as a product
of base-change determinants: in each degree the square matrix expressing
(boundary images of chosen lifts | homology representatives | lifts) in the
reference basis is assembled, its determinant enters with alternating
exponent, and the parity correction N(C) supplies the overall sign.
Dimension-zero degrees contribute a factor 1; the empty complex has torsion
coordinate 1.

Odd-degree factors of a determinant line are dual lines; coordinates are
taken against the dual frame of the declared basis, so coordinates of
fused or dualized elements are plain products of scalars with a parity
sign.  Fusion concatenates the first factor's basis before the second's.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence, Tuple

from .errors import (ComplexInvalid, DegeneratePairing, DegreeMismatch,
                     EvenTopDegree, SingularAssembly, ZeroInput)
from .linalg import (DOMAINS, Domain, Matrix, RATIONAL, det, extend_to_basis,
                     kernel_image_bases, rank)
from .scalars import LaurentPoly, RatFunc, parse_laurent, parse_ratfunc

# Test hook: when nonzero, flips every parity residue computed below.  Used
# only as a negative control for the self-test harness.
_SIGN_CORRUPTION = 0


def set_sign_corruption(bit: int) -> None:
    global _SIGN_CORRUPTION
    _SIGN_CORRUPTION = bit & 1


def _twist(bit: int) -> int:
    return (bit ^ _SIGN_CORRUPTION) & 1


@dataclass(frozen=True)
class GradedDims:
    """Dimensions of a graded vector space, degrees 0..m."""

    dims: Tuple[int, ...]

    def __post_init__(self):
        if not self.dims:
            raise ValueError("graded dimensions need at least degree 0")
        if any(d < 0 for d in self.dims):
            raise ValueError("negative dimension")

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def alpha(self, q: int) -> int:
        """Partial dimension sum mod 2 through degree q."""
        return sum(self.dims[: q + 1]) % 2


@dataclass(frozen=True)
class DetLineCoord:
    """Scalar coordinate of a determinant-line element in a named frame."""

    value: object
    frame: str


class ChainComplex:
    """Finite chain complex over one coefficient field."""

    def __init__(self, dims: Sequence[int], boundaries: Sequence[Matrix],
                 domain: Domain, check: bool = True):
        self.dims = tuple(int(d) for d in dims)
        self.boundaries = list(boundaries)
        self.domain = domain
        m = len(self.dims) - 1
        if len(self.boundaries) != m:
            raise ComplexInvalid(
                f"expected {m} boundary maps, got {len(self.boundaries)}")
        for q, b in enumerate(self.boundaries, start=1):
            if (b.rows, b.cols) != (self.dims[q - 1], self.dims[q]):
                raise ComplexInvalid(
                    f"boundary {q} has shape {b.rows}x{b.cols}, expected "
                    f"{self.dims[q-1]}x{self.dims[q]}")
        if check:
            for q in range(2, m + 1):
                if not (self.boundary(q - 1) @ self.boundary(q)).is_zero():
                    raise ComplexInvalid(f"d{q-1} d{q} != 0")

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def graded(self) -> GradedDims:
        return GradedDims(self.dims)

    def boundary(self, q: int) -> Matrix:
        """d_q for q in 1..m; zero maps outside that range."""
        if 1 <= q <= self.top:
            return self.boundaries[q - 1]
        if q == 0:
            return Matrix.zeros(0, self.dims[0], self.domain)
        return Matrix.zeros(self.dims[self.top] if q == self.top + 1 else 0,
                            0, self.domain)


@dataclass
class HomologyData:
    """Per degree: homology rank, representative cycles, and image lifts.

    reps[q] has the representative cycles as columns (a frame for H_q);
    lifts[q] holds columns of C_q whose boundaries form a basis of the
    image of d_q.
    """

    ranks: List[int]
    reps: List[Matrix]
    lifts: List[Matrix]
    frame: str = "leftmost"


def compute_homology(C: ChainComplex, rng: random.Random | None = None,
                     frame: str | None = None) -> HomologyData:
    """Homology ranks with explicit cycle representatives.

    Deterministic leftmost-pivot elimination by default; passing an rng
    randomizes every basis choice (used to check choice-independence).
    """
    m = C.top
    d = C.domain
    kernels: List[Matrix] = []
    lifts: List[Matrix] = []
    ranks_d: List[int] = []
    for q in range(m + 1):
        if q == 0:
            kernels.append(Matrix.identity(C.dims[0], d))
            lifts.append(Matrix.zeros(C.dims[0], 0, d))
            ranks_d.append(0)
        else:
            K, L, r = kernel_image_bases(C.boundary(q), rng)
            kernels.append(K)
            lifts.append(L)
            ranks_d.append(r)

    ranks: List[int] = []
    reps: List[Matrix] = []
    for q in range(m + 1):
        if q < m:
            image_basis = C.boundary(q + 1) @ lifts[q + 1]
        else:
            image_basis = Matrix.zeros(C.dims[q], 0, d)
        idx = extend_to_basis(image_basis, kernels[q], rng)
        rep = Matrix.from_columns([kernels[q].column(j) for j in idx],
                                  C.dims[q], d)
        reps.append(rep)
        ranks.append(rep.cols)
        expected = C.dims[q] - ranks_d[q] - (ranks_d[q + 1] if q < m else 0)
        if rep.cols != expected:
            raise SingularAssembly(
                f"homology extraction failed in degree {q}")
    return HomologyData(ranks, reps, lifts,
                        frame=frame or ("random" if rng else "leftmost"))


def randomize_homology_gauge(C: ChainComplex, H: HomologyData,
                             rng: random.Random) -> HomologyData:
    """Alternative valid lifts and representatives of the same classes.

    Lifts may be recombined by any invertible matrix and shifted by kernel
    vectors; representatives may only move by boundaries so the homology
    frame is untouched.
    """
    m = C.top
    d = C.domain
    new_lifts: List[Matrix] = []
    new_reps: List[Matrix] = []
    for q in range(m + 1):
        L = H.lifts[q]
        if L.cols:
            U = _random_unimodular(L.cols, rng, d)
            K, _, _ = kernel_image_bases(C.boundary(q))
            W = Matrix([[d.from_int(rng.randint(-2, 2))
                         for _ in range(L.cols)] for _ in range(K.cols)], d,
                        K.cols, L.cols)
            L = (L @ U) + (K @ W) if K.cols else L @ U
        new_lifts.append(L)
    for q in range(m + 1):
        R = H.reps[q]
        if R.cols and q < m:
            B = C.boundary(q + 1) @ H.lifts[q + 1]
            if B.cols:
                S = Matrix([[d.from_int(rng.randint(-2, 2))
                             for _ in range(R.cols)] for _ in range(B.cols)],
                           d, B.cols, R.cols)
                R = R + (B @ S)
        new_reps.append(R)
    return HomologyData(list(H.ranks), new_reps, new_lifts,
                        frame=H.frame)


def _random_unimodular(n: int, rng: random.Random, domain: Domain) -> Matrix:
    upper = Matrix.identity(n, domain)
    lower = Matrix.identity(n, domain)
    for i in range(n):
        for j in range(i + 1, n):
            upper.data[i][j] = domain.from_int(rng.randint(-2, 2))
            lower.data[j][i] = domain.from_int(rng.randint(-2, 2))
        if rng.random() < 0.5:
            upper.data[i][i] = domain.from_int(-1)
    return lower @ upper


# ---------------------------------------------------------------------------
# parity residues
# ---------------------------------------------------------------------------

def alpha_beta(C: ChainComplex, H: HomologyData):
    """Partial-sum parities of chain and homology dimensions."""
    V = C.graded()
    W = GradedDims(tuple(H.ranks))
    alphas = [V.alpha(q) for q in range(C.top + 1)]
    betas = [W.alpha(q) for q in range(C.top + 1)]
    return alphas, betas


def sign_N(C: ChainComplex, H: HomologyData) -> int:
    """Parity pairing the chain and homology dimension filtrations."""
    alphas, betas = alpha_beta(C, H)
    return _twist(sum(a * b for a, b in zip(alphas, betas)) % 2)


def sign_N_dims(chain_dims: Sequence[int], hom_dims: Sequence[int]) -> int:
    """Same residue computed directly from dimension sequences."""
    V = GradedDims(tuple(chain_dims))
    W = GradedDims(tuple(hom_dims))
    m = V.top
    if W.top != m:
        raise DegreeMismatch("dimension sequences of different length")
    return _twist(sum(V.alpha(q) * W.alpha(q) for q in range(m + 1)) % 2)


def fusion_sign(V: GradedDims, W: GradedDims) -> int:
    """Parity correction of the fusion isomorphism det V (x) det W."""
    if V.top != W.top:
        raise DegreeMismatch(
            f"top degrees differ: {V.top} vs {W.top}")
    m = V.top
    return _twist(sum(V.alpha(q - 1) * W.alpha(q) for q in range(1, m + 1)) % 2)


def duality_sign(V: GradedDims) -> int:
    """Parity of the duality operator on det V, top degree odd."""
    m = V.top
    if m % 2 == 0:
        raise EvenTopDegree(f"top degree {m} is even")
    s = sum(V.alpha(q - 1) * V.alpha(q) for q in range(1, m + 1))
    s += sum(V.alpha(2 * q) for q in range((m - 1) // 2 + 1))
    return _twist(s % 2)


# ---------------------------------------------------------------------------
# torsion of a chain complex
# ---------------------------------------------------------------------------

def torsion_phi(C: ChainComplex, c: DetLineCoord,
                H: HomologyData) -> DetLineCoord:
    """Coordinate of the torsion image of c in the homology frame of H.

    c is a coordinate against the standard cell frame of det C.  For each
    degree the square matrix with columns (d of next-degree lifts,
    representatives, lifts) is assembled in the standard basis; its
    determinant enters the product with exponent -1 in even degrees and +1
    in odd ones; the overall parity sign multiplies the result.
    """
    d = C.domain
    if d.is_zero(c.value):
        raise ZeroInput("torsion of the zero line element")
    m = C.top
    value = c.value
    for q in range(m + 1):
        n_q = C.dims[q]
        blocks = []
        if q < m:
            img = C.boundary(q + 1) @ H.lifts[q + 1]
            blocks.extend(img.columns())
        blocks.extend(H.reps[q].columns())
        blocks.extend(H.lifts[q].columns())
        if len(blocks) != n_q:
            raise SingularAssembly(
                f"degree {q}: assembled {len(blocks)} columns for dimension {n_q}")
        if n_q == 0:
            continue
        S = Matrix.from_columns(blocks, n_q, d)
        det_q = det(S)
        if d.is_zero(det_q):
            raise SingularAssembly(f"degree {q}: assembled matrix is singular")
        if q % 2 == 0:
            value = value / det_q
        else:
            value = value * det_q
    if sign_N(C, H):
        value = value * d.from_int(-1)
    return DetLineCoord(value, f"homology({H.frame})")


def fuse(v: DetLineCoord, w: DetLineCoord, V: GradedDims,
         W: GradedDims) -> DetLineCoord:
    """Coordinate of the fused element in the concatenated frame."""
    sign = fusion_sign(V, W)
    value = v.value * w.value
    if sign:
        value = -value
    return DetLineCoord(value, f"{v.frame}(+){w.frame}")


def dualize(v: DetLineCoord, V: GradedDims,
            pairings: Sequence[Matrix]) -> DetLineCoord:
    """Coordinate of the dual of v against a pairing-dual frame.

    pairings[q] is the matrix of the nondegenerate pairing between the
    declared frame of the target space in degree q and the frame of V in
    degree m - q; with identity pairings the result is v times the duality
    parity sign.
    """
    m = V.top
    if m % 2 == 0:
        raise EvenTopDegree(f"top degree {m} is even")
    if len(pairings) != m + 1:
        raise ValueError("one pairing block per degree is required")
    value = v.value
    for q in range(m + 1):
        P = pairings[q]
        if (P.rows, P.cols) != (V.dims[m - q], V.dims[m - q]):
            raise DegeneratePairing(
                f"degree {q}: pairing block must be square of size "
                f"{V.dims[m - q]}")
        if P.rows == 0:
            continue
        dP = det(P)
        if P.domain.is_zero(dP):
            raise DegeneratePairing(f"degree {q}: singular pairing block")
        if q % 2 == 0:
            value = value / dP
        else:
            value = value * dP
    if duality_sign(V):
        value = -value
    return DetLineCoord(value, f"dual({v.frame})")


# ---------------------------------------------------------------------------
# text serialization
# ---------------------------------------------------------------------------

_FIELD_PARSERS = {
    "rational": lambda s: Fraction(s),
    "ratfunc": parse_ratfunc,
    "laurent": parse_laurent,
}

_FIELD_NAMES = {"rational": RATIONAL, "ratfunc": DOMAINS["ratfunc"],
                "laurent": DOMAINS["laurent"]}


def complex_to_text(C: ChainComplex) -> str:
    """Canonical text form: dimension list then one boundary block per map."""
    name = C.domain.name
    lines = [f"field: {name}",
             "dims: " + " ".join(str(d) for d in C.dims)]
    for q in range(1, C.top + 1):
        lines.append(f"boundary {q}:")
        B = C.boundary(q)
        for row in B.data:
            lines.append(" ".join(str(x) for x in row) if row else "-")
    return "\n".join(lines) + "\n"


def parse_complex(text: str) -> ChainComplex:
    """Inverse of :func:`complex_to_text`; round trips are bit-exact."""
    field_name = None
    dims = None
    blocks: List[List[List]] = []
    current: List[List] | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("field:"):
            field_name = line.split(":", 1)[1].strip()
        elif line.startswith("dims:"):
            dims = [int(x) for x in line.split(":", 1)[1].split()]
        elif line.startswith("boundary"):
            current = []
            blocks.append(current)
        else:
            if current is None or field_name is None:
                raise ComplexInvalid(f"line {lineno}: entries before headers")
            parse = _FIELD_PARSERS[field_name]
            if line == "-":
                current.append([])
            else:
                try:
                    current.append([parse(tok) for tok in line.split()])
                except Exception as exc:
                    raise ComplexInvalid(f"line {lineno}: {exc}") from exc
    if field_name not in _FIELD_NAMES or dims is None:
        raise ComplexInvalid("missing field or dims header")
    domain = _FIELD_NAMES[field_name]
    m = len(dims) - 1
    if len(blocks) != m:
        raise ComplexInvalid(f"expected {m} boundary blocks, got {len(blocks)}")
    boundaries = []
    for q, rows in enumerate(blocks, start=1):
        nrows, ncols = dims[q - 1], dims[q]
        if nrows == 0:
            rows = []
        if len(rows) != nrows or any(len(r) != ncols for r in rows):
            raise ComplexInvalid(f"boundary {q}: shape mismatch")
        boundaries.append(Matrix(rows, domain, nrows, ncols))
    return ChainComplex(dims, boundaries, domain)
