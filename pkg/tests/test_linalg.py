import random
from fractions import Fraction

import pytest

from torsionlab.errors import NonSquareMatrix, SingularAssembly
from torsionlab.linalg import (Matrix, RATIONAL, RATFUNC, det_exact,
                               kernel_image_bases, rank, solve)
from torsionlab.scalars import RatFunc, parse_laurent


def rmat(rng, rows, cols, lo=-3, hi=3):
    return Matrix([[Fraction(rng.randint(lo, hi)) for _ in range(cols)]
                   for _ in range(rows)], RATIONAL, rows, cols)


def cofactor_det(M):
    n = M.rows
    if n == 0:
        return Fraction(1)
    if n == 1:
        return M.data[0][0]
    acc = Fraction(0)
    for j in range(n):
        minor = Matrix([[M.data[i][k] for k in range(n) if k != j]
                        for i in range(1, n)], RATIONAL)
        acc += (-1) ** j * M.data[0][j] * cofactor_det(minor)
    return acc


def test_zero_matrix_kernel():
    K, L, r = kernel_image_bases(Matrix.zeros(3, 3, RATIONAL))
    assert r == 0
    assert K == Matrix.identity(3, RATIONAL)
    assert L.cols == 0


def test_identity_kernel():
    I = Matrix.identity(4, RATIONAL)
    K, L, r = kernel_image_bases(I)
    assert r == 4 and K.cols == 0 and L == I


def test_rank_one_example():
    M = Matrix([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]],
               RATIONAL)
    K, L, r = kernel_image_bases(M)
    assert r == 1
    assert K.column(0) == [Fraction(-2), Fraction(1)]
    assert (M @ K).is_zero()


def test_det_examples():
    assert det_exact(Matrix.identity(5, RATIONAL)) == 1
    swap = Matrix([[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]],
                  RATIONAL)
    assert det_exact(swap) == -1


def test_det_against_cofactor_oracle():
    rng = random.Random(11)
    for _ in range(5):
        A = rmat(rng, 5, 5, -4, 4)
        assert det_exact(A) == cofactor_det(A)


def test_det_multiplicative():
    rng = random.Random(12)
    for _ in range(20):
        A, B = rmat(rng, 4, 4), rmat(rng, 4, 4)
        assert det_exact(A @ B) == det_exact(A) * det_exact(B)


def test_nonsquare_det():
    with pytest.raises(NonSquareMatrix):
        det_exact(Matrix.zeros(2, 3, RATIONAL))


def test_kernel_image_properties():
    rng = random.Random(13)
    for _ in range(40):
        A = rmat(rng, rng.randint(0, 5), rng.randint(0, 5))
        K, L, r = kernel_image_bases(A)
        assert (A @ K).is_zero()
        assert r + K.cols == A.cols
        assert rank(A @ L) == r


def test_randomized_mode_valid():
    rng = random.Random(14)
    for _ in range(20):
        A = rmat(rng, 4, 5)
        K, L, r = kernel_image_bases(A, rng)
        assert (A @ K).is_zero()
        assert r + K.cols == A.cols
        assert rank(A @ L) == r


def test_deterministic():
    rng = random.Random(15)
    A = rmat(rng, 4, 6)
    assert kernel_image_bases(A)[0] == kernel_image_bases(A)[0]


def test_solve_and_singular():
    A = Matrix([[Fraction(2), Fraction(1)], [Fraction(1), Fraction(3)]],
               RATIONAL)
    x = solve(A, [Fraction(5), Fraction(10)])
    assert x == [Fraction(1), Fraction(3)]
    sing = Matrix([[Fraction(1), Fraction(1)], [Fraction(1), Fraction(1)]],
                  RATIONAL)
    with pytest.raises(SingularAssembly):
        solve(sing, [Fraction(0), Fraction(1)])


def test_ratfunc_domain():
    t = RatFunc.t()
    M = Matrix([[t - RatFunc.one(), RatFunc.one()],
                [RatFunc.zero(), t]], RATFUNC)
    assert det_exact(M) == (t - RatFunc.one()) * t
