"""Exact matrix operations: rank, solve, products, prefix stacks, null vectors."""

import itertools
import random

import pytest

from udm.errors import DimensionMismatch, Inconsistent, RankDeficient
from udm.gf import Field
from udm.linalg import (
    Matrix,
    anti_identity,
    identity,
    kron,
    left_null_vector,
    matmul,
    matvec,
    rank,
    solve,
    stack_prefixes,
)

F2 = Field(2)
F3 = Field(3)
F5 = Field(5)

# The standard (4, 3, 3) family, frozen; reused as stacking input below.
A2_GF3 = Matrix.from_rows(F3, [[1, 1, 1], [0, 1, 2], [0, 0, 1]])
A3_GF3 = Matrix.from_rows(F3, [[1, 2, 1], [0, 1, 1], [0, 0, 1]])


# -- independent oracles --------------------------------------------------------


def det_oracle(field, rows):
    """Determinant by Laplace expansion along the first row."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    acc = 0
    sign = 1
    for j in range(n):
        if rows[0][j]:
            minor = [[r[c] for c in range(n) if c != j] for r in rows[1:]]
            term = field.mul(rows[0][j], det_oracle(field, minor))
            acc = field.add(acc, term if sign > 0 else field.neg(term))
        sign = -sign
    return acc


def rank_oracle(field, rows):
    """Largest r with a nonvanishing r x r minor, by full enumeration."""
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    for r in range(min(nrows, ncols), 0, -1):
        for rsel in itertools.combinations(range(nrows), r):
            for csel in itertools.combinations(range(ncols), r):
                minor = [[rows[i][j] for j in csel] for i in rsel]
                if det_oracle(field, minor) != 0:
                    return r
    return 0


def random_matrix(rng, field, rows, cols):
    return Matrix(field, rows, cols, [rng.randrange(field.q) for _ in range(rows * cols)])


# -- identity and reversal ---------------------------------------------------------


def test_identity_and_anti_identity():
    assert identity(F2, 2).to_lists() == [[1, 0], [0, 1]]
    assert anti_identity(F3, 3).to_lists() == [[0, 0, 1], [0, 1, 0], [1, 0, 0]]
    assert identity(F3, 0).rows == 0


def test_anti_identity_is_an_involution():
    for n in range(9):
        j = anti_identity(F3, n)
        assert matmul(j, j) == identity(F3, n)


# -- products -----------------------------------------------------------------------


def test_identity_multiplication():
    rng = random.Random(1)
    a = random_matrix(rng, F3, 3, 4)
    assert matmul(identity(F3, 3), a) == a


def test_matvec_known_column():
    assert matvec(A2_GF3, (1, 0, 0)) == (1, 0, 0)


def test_product_associativity_with_vectors():
    rng = random.Random(2)
    for _ in range(30):
        a = random_matrix(rng, F5, 3, 3)
        b = random_matrix(rng, F5, 3, 3)
        v = tuple(rng.randrange(5) for _ in range(3))
        assert matvec(matmul(a, b), v) == matvec(a, matvec(b, v))


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        matmul(identity(F3, 2), identity(F3, 3))
    with pytest.raises(DimensionMismatch):
        matvec(identity(F3, 2), (1, 0, 0))
    with pytest.raises(DimensionMismatch):
        Matrix(F3, 2, 2, [0, 1, 2])
    with pytest.raises(DimensionMismatch):
        Matrix(F3, 1, 2, [0, 5])


# -- rank ------------------------------------------------------------------------------


def test_rank_of_stacked_identity_reversal():
    # First 3 rows of I_5 over the first 2 rows of J_5.
    rows = [
        [1, 0, 0, 0, 0],
        [0, 1, 0, 0, 0],
        [0, 0, 1, 0, 0],
        [0, 0, 0, 0, 1],
        [0, 0, 0, 1, 0],
    ]
    for field in (F2, F3):
        assert rank(Matrix.from_rows(field, rows)) == 5


def test_rank_identity():
    for n in range(6):
        assert rank(identity(F3, n)) == n


def test_rank_duplicated_row_drops():
    rng = random.Random(3)
    for _ in range(25):
        rows = [[rng.randrange(3) for _ in range(3)] for _ in range(2)]
        rows.append(list(rows[0]))
        m = Matrix.from_rows(F3, rows)
        assert rank(m) < 3
        assert rank(m) == rank_oracle(F3, rows)


def test_rank_matches_minor_oracle_exhaustive_gf2():
    for nrows, ncols in [(1, 1), (2, 2), (2, 3), (3, 3)]:
        for bits in itertools.product(range(2), repeat=nrows * ncols):
            rows = [list(bits[i * ncols : (i + 1) * ncols]) for i in range(nrows)]
            assert rank(Matrix.from_rows(F2, rows)) == rank_oracle(F2, rows)


def test_rank_matches_minor_oracle_exhaustive_gf3_2x2():
    for vals in itertools.product(range(3), repeat=4):
        rows = [list(vals[:2]), list(vals[2:])]
        assert rank(Matrix.from_rows(F3, rows)) == rank_oracle(F3, rows)


def test_rank_matches_minor_oracle_sampled():
    rng = random.Random(4)
    for field in (F2, F3, F5):
        for _ in range(60):
            nrows = rng.randrange(1, 5)
            ncols = rng.randrange(1, 5)
            m = random_matrix(rng, field, nrows, ncols)
            assert rank(m) == rank_oracle(field, m.to_lists())


def test_rank_of_empty_matrix():
    assert rank(Matrix(F3, 0, 3, [])) == 0


# -- solve ------------------------------------------------------------------------------


def test_solve_identity():
    assert solve(identity(F3, 3), (2, 0, 1)) == (2, 0, 1)


def test_solve_round_trip_random():
    rng = random.Random(5)
    for field in (F2, F3, F5):
        done = 0
        while done < 20:
            a = random_matrix(rng, field, 3, 3)
            if rank(a) < 3:
                continue
            u = tuple(rng.randrange(field.q) for _ in range(3))
            assert solve(a, matvec(a, u)) == u
            done += 1


def test_solve_overdetermined_consistent_and_not():
    a = Matrix.from_rows(F3, [[1, 0], [0, 1], [1, 1]])
    u = (2, 1)
    y = list(matvec(a, u))
    assert solve(a, y) == u
    y[2] = F3.add(y[2], 1)
    with pytest.raises(Inconsistent):
        solve(a, y)


def test_solve_rank_deficient():
    a = Matrix.from_rows(F3, [[1, 0], [2, 0], [1, 0]])  # zero column
    with pytest.raises(RankDeficient):
        solve(a, (1, 2, 1))
    with pytest.raises(RankDeficient):
        solve(Matrix.from_rows(F3, [[1, 2]]), (1,))  # wide: rank < cols


def test_solve_rhs_length_checked():
    with pytest.raises(DimensionMismatch):
        solve(identity(F3, 2), (1, 2, 0))


# -- kron --------------------------------------------------------------------------------


def test_kron_identities():
    assert kron(identity(F2, 2), identity(F2, 2)) == identity(F2, 4)


def test_kron_mixed_product():
    rng = random.Random(6)
    for _ in range(20):
        a = random_matrix(rng, F3, 2, 3)
        c = random_matrix(rng, F3, 3, 2)
        b = random_matrix(rng, F3, 2, 2)
        d = random_matrix(rng, F3, 2, 3)
        assert kron(matmul(a, c), matmul(b, d)) == matmul(kron(a, b), kron(c, d))


def test_kron_rank_is_multiplicative():
    rng = random.Random(7)
    for _ in range(30):
        a = random_matrix(rng, F2, rng.randrange(1, 4), rng.randrange(1, 4))
        b = random_matrix(rng, F2, rng.randrange(1, 4), rng.randrange(1, 4))
        assert rank(kron(a, b)) == rank(a) * rank(b)


# -- stack_prefixes ------------------------------------------------------------------------


def test_stack_prefixes_known_checks():
    mats = [identity(F3, 3), anti_identity(F3, 3), A2_GF3, A3_GF3]
    assert stack_prefixes(mats, (0, 0, 1, 2)).to_lists() == [
        [1, 1, 1],
        [1, 2, 1],
        [0, 1, 1],
    ]
    assert stack_prefixes(mats, (0, 0, 3, 0)) == A2_GF3
    assert stack_prefixes(mats, (1, 1, 0, 1)).to_lists() == [
        [1, 0, 0],
        [0, 0, 1],
        [1, 2, 1],
    ]


def test_stack_prefixes_edges():
    mats = [identity(F3, 3), anti_identity(F3, 3)]
    assert stack_prefixes(mats, (3, 0)) == identity(F3, 3)
    empty = stack_prefixes(mats, (0, 0))
    assert empty.rows == 0 and empty.cols == 3
    with pytest.raises(DimensionMismatch):
        stack_prefixes(mats, (4, 0))
    with pytest.raises(DimensionMismatch):
        stack_prefixes(mats, (1,))


# -- left null vectors ------------------------------------------------------------------------


def test_left_null_vector_simple():
    b = Matrix.from_rows(F3, [[1, 0], [0, 1], [1, 1]])
    v = left_null_vector(b)
    assert v == (2, 2, 1)  # a scalar multiple of (1, 1, -1)
    for j in range(2):
        acc = 0
        for i in range(3):
            acc = F3.add(acc, F3.mul(v[i], b.at(i, j)))
        assert acc == 0


def test_left_null_vector_zero_last_row():
    b = Matrix.from_rows(F3, [[1, 2], [0, 1], [0, 0]])
    assert left_null_vector(b) == (0, 0, 1)


def test_left_null_vector_orthogonal_and_nonzero():
    rng = random.Random(8)
    for field in (F2, F3, F5):
        for _ in range(40):
            n = rng.randrange(1, 4)
            b = Matrix(field, n + 1, n, [rng.randrange(field.q) for _ in range((n + 1) * n)])
            v = left_null_vector(b)
            assert any(v)
            for j in range(n):
                acc = 0
                for i in range(n + 1):
                    acc = field.add(acc, field.mul(v[i], b.at(i, j)))
                assert acc == 0


def test_left_null_space_is_one_dimensional_for_full_rank():
    # For rank-n input every annihilating vector is a scalar multiple of the
    # returned one; exhaustive over all vectors of the small field.
    rng = random.Random(9)
    for field in (F2, F3):
        found = 0
        while found < 10:
            n = 2
            b = Matrix(field, n + 1, n, [rng.randrange(field.q) for _ in range((n + 1) * n)])
            if rank(b) < n:
                continue
            found += 1
            v = left_null_vector(b)
            multiples = {tuple(field.mul(c, x) for x in v) for c in range(field.q)}
            for cand in itertools.product(range(field.q), repeat=n + 1):
                ok = True
                for j in range(n):
                    acc = 0
                    for i in range(n + 1):
                        acc = field.add(acc, field.mul(cand[i], b.at(i, j)))
                    if acc != 0:
                        ok = False
                        break
                if ok:
                    assert cand in multiples


def test_left_null_vector_requires_tall_shape():
    with pytest.raises(DimensionMismatch):
        left_null_vector(identity(F3, 3))
