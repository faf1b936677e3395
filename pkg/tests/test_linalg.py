from __future__ import annotations

import random
from fractions import Fraction

import pytest

from frobius.field import ComplexFloats, Cyclotomic, FieldError, PrimeField, Rationals, zeta
from frobius.linalg import (
    Matrix,
    ShapeError,
    basis_vector,
    mat_compose,
    mat_dagger,
    mat_tensor,
    parse_dump,
    rank,
    scalar_multiple_of,
)

Q = Rationals()


def _rand(rng, F, r, c):
    return Matrix.from_rows(F, [[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(c)] for _ in range(r)])


def _naive_product(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]


def test_compose_against_naive():
    rng = random.Random(1)
    for _ in range(30):
        A, B = _rand(rng, Q, 3, 4), _rand(rng, Q, 4, 2)
        assert [list(r) for r in (A @ B).data] == _naive_product(A.data, B.data)


def test_shape_errors():
    A = Matrix.zeros(Q, 2, 3)
    with pytest.raises(ShapeError):
        mat_compose(A, A)
    with pytest.raises(ShapeError):
        scalar_multiple_of(A, Matrix.zeros(Q, 3, 2))
    with pytest.raises(ShapeError):
        Matrix.from_rows(Q, [[1, 2], [3]])


def test_kronecker_layout():
    A = Matrix.from_rows(Q, [[1, 2], [3, 4]])
    B = Matrix.from_rows(Q, [[0, 5], [6, 7]])
    K = mat_tensor(A, B)
    for i in range(4):
        for j in range(4):
            assert K.data[i][j] == A.data[i // 2][j // 2] * B.data[i % 2][j % 2]


def test_tensor_interchange_law():
    rng = random.Random(2)
    for _ in range(10):
        A, B = _rand(rng, Q, 2, 3), _rand(rng, Q, 3, 2)
        C, D = _rand(rng, Q, 2, 2), _rand(rng, Q, 2, 1)
        assert mat_tensor(A, C) @ mat_tensor(B, D) == mat_tensor(A @ B, C @ D)


def test_dagger_conjugates():
    F = Cyclotomic(4)
    i = zeta(4, F)
    A = Matrix.from_rows(F, [[i, 1], [0, i * i]])
    Ad = mat_dagger(A)
    assert Ad.data[0][0] == (-i).value
    assert Ad.data[1][0] == F.one()
    assert mat_dagger(Ad) == A
    B = Matrix.from_rows(F, [[1, i], [i, 0]])
    assert (A @ B).dagger() == B.dagger() @ A.dagger()


def test_rank_examples():
    assert rank(Matrix.from_rows(Q, [[1, 2], [2, 4]])) == 1
    assert rank(Matrix.identity(Q, 3)) == 3
    assert rank(Matrix.zeros(Q, 2, 2)) == 0
    # singular mod 5 only
    M = Matrix.from_rows(PrimeField(5), [[1, 2], [3, 1]])
    assert rank(M) == 1
    assert rank(Matrix.from_rows(Q, [[1, 2], [3, 1]])) == 2
    with pytest.raises(FieldError):
        rank(Matrix.identity(ComplexFloats(), 2))


def test_scalar_multiple():
    A = Matrix.from_rows(Q, [[1, 0], [2, 3]])
    assert scalar_multiple_of(A.scale(Fraction(5, 2)), A) == Fraction(5, 2)
    assert scalar_multiple_of(Matrix.identity(Q, 2), A) is None
    Z = Matrix.zeros(Q, 2, 2)
    assert scalar_multiple_of(Z, Z) == 1
    assert scalar_multiple_of(Z, A) == 0
    assert scalar_multiple_of(A, Z) is None


@pytest.mark.parametrize("F", [Q, Cyclotomic(8), PrimeField(7)])
def test_dump_round_trip(F):
    rows = [[1, 0, Fraction(1, 2) if F != PrimeField(7) else 4], [3, -1, 2]]
    M = Matrix.from_rows(F, rows)
    if isinstance(F, Cyclotomic):
        M = M.scale(zeta(8, F) + F(1))
    assert parse_dump(M.dump(), F) == M


def test_basis_and_permutation():
    e = [basis_vector(Q, 3, i) for i in range(3)]
    P = Matrix.permutation(Q, [2, 0, 1])
    assert P @ e[0] == e[2] and P @ e[1] == e[0]
    assert P.transpose() @ P == Matrix.identity(Q, 3)


def test_small_identities():
    M = Matrix.from_rows(Q, [[1, 2], [3, 4]])
    assert Matrix.identity(Q, 2) @ M == M
    assert mat_tensor(Matrix.identity(Q, 2), Matrix.identity(Q, 3)) == Matrix.identity(Q, 6)
    assert mat_tensor(basis_vector(Q, 2, 0), basis_vector(Q, 2, 1)) == basis_vector(Q, 4, 1)
    c = Matrix.scalar(Q, Fraction(3))
    assert mat_tensor(c, M) == M.scale(3)
    empty = Matrix.zeros(Q, 1, 0) @ Matrix.zeros(Q, 0, 1)
    assert empty.shape == (1, 1) and empty.is_zero()


def test_shift_composition():
    shift = Matrix.permutation(Q, [1, 2, 0])
    assert shift @ shift == Matrix.permutation(Q, [2, 0, 1])
    assert shift @ shift @ shift == Matrix.identity(Q, 3)


def test_one_by_one_dagger():
    F = Cyclotomic(4)
    z = zeta(4, F)
    assert mat_dagger(Matrix.scalar(F, z.value)) == Matrix.scalar(F, (-z).value)
    R = Matrix.from_rows(Q, [[1, 2, 3], [4, 5, 6]])
    assert mat_dagger(R) == R.transpose()


def test_character_table_ranks():
    from frobius.abelian import AbelianGroup, characters

    Z4 = AbelianGroup.parse("Z4")
    for F, expected in [(Cyclotomic(4), 4), (Q, 2)]:
        table = [[chi.value(g) for g in Z4.elements()] for chi in characters(Z4, F)]
        assert rank(Matrix(F, len(table), 4, tuple(map(tuple, table)))) == expected
