"""Families of universally decodable matrices: construction, verification,
structure-preserving transforms, and the exhaustive existence search.

An (L, n, q) family is universally decodable when, for every tuple
(k_0, ..., k_{L-1}) of per-channel prefix lengths with sum at least n,
stacking the first k_l rows of each matrix yields full rank n. Checking the
tuples with sum exactly n suffices; there are C(n+L-1, L-1) of them.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace

from . import hasse
from .errors import (
    BadNormalization,
    BudgetExceeded,
    DegenerateNullVector,
    NotLowerTriangular,
    Singular,
    TooManyChannels,
    ZeroDiagonal,
)
from .gf import Field
from .linalg import (
    Matrix,
    anti_identity,
    identity,
    kron,
    left_null_vector,
    matmul,
    rank,
    stack_prefixes,
)


@dataclass(frozen=True)
class UdmFamily:
    """An ordered list of L square matrices of size n x n over one field.

    alpha records the primitive element used by the standard construction;
    it is None for hand-built families and for transforms that leave the
    constructed entry pattern behind.
    """

    field: Field
    L: int
    n: int
    matrices: tuple[Matrix, ...]
    alpha: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "matrices", tuple(self.matrices))
        if self.L < 1 or self.n < 1:
            raise ValueError("L and n must be positive")
        if len(self.matrices) != self.L:
            raise ValueError(f"expected {self.L} matrices, got {len(self.matrices)}")
        for m in self.matrices:
            if m.rows != self.n or m.cols != self.n:
                raise ValueError(f"matrix of shape {m.rows}x{m.cols} in an n={self.n} family")
            if m.field != self.field:
                raise ValueError("matrix over a different field than the family")


@dataclass(frozen=True)
class Witness:
    ks: tuple[int, ...]
    stacked: Matrix
    rank: int


@dataclass(frozen=True)
class VerifyReport:
    passed: bool
    tuples_checked: int
    witness: Witness | None


@dataclass(frozen=True)
class SearchReport:
    exists: bool
    family: UdmFamily | None
    total_candidates: int
    candidates_verified: int
    note: str | None = None


def construct(field: Field, L: int, n: int) -> UdmFamily:
    """The explicit (L, n, q) family: identity, row reversal, then for each
    remaining index l a binomial matrix with entry (i, t) equal to
    C(t, i) * alpha**(l * (t - i)), alpha the canonical primitive element.

    Requires L <= q + 1 when n >= 2; n = 1 is unconstrained (every family of
    1x1 ones is universally decodable) and accepts any L.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if L < 1:
        raise ValueError("L must be positive")
    if n >= 2 and L > field.q + 1:
        raise TooManyChannels(
            f"no (L={L}, n={n}, q={field.q}) family exists: L exceeds q + 1"
        )
    alpha = field.primitive_element()
    mats = [identity(field, n)]
    if L >= 2:
        mats.append(anti_identity(field, n))
    for l in range(L - 2):
        entries = []
        for i in range(n):
            for t in range(n):
                c = field.binom(t, i)
                entries.append(field.mul(c, field.pow(alpha, l * (t - i))) if c else 0)
        mats.append(Matrix(field, n, n, entries))
    return UdmFamily(field, L, n, tuple(mats), alpha=alpha)


def construct_entry_oracle(field: Field, L: int, n: int, l: int, i: int, t: int) -> int:
    """Entry (i, t) of the l-th constructed matrix, derived through the
    polynomial route instead of the direct binomial formula.

    For l != 1 it evaluates the i-th Hasse derivative of X^t at the l-th
    evaluation point (0 for l = 0, alpha**(l-2) afterwards). For l = 1 it
    evaluates the homogeneous monomial at the point at infinity.
    """
    if not 0 <= l < L:
        raise ValueError(f"matrix index {l} out of range [0, {L})")
    if not (0 <= i < n and 0 <= t < n):
        raise ValueError("entry indices out of range")
    if l == 1:
        return hasse.hasse_monomial_bivariate(field, t, n, i, (1, 0))
    beta = 0 if l == 0 else field.pow(field.primitive_element(), l - 2)
    mono = hasse.Polynomial.monomial(field, t)
    return hasse.evaluate(hasse.hasse_derivative(mono, i), beta)


def count_exact_tuples(L: int, n: int) -> int:
    return math.comb(n + L - 1, L - 1)


def enumerate_exact_tuples(L: int, n: int):
    """All (k_0, ..., k_{L-1}) with sum n and 0 <= k_l <= n, ascending
    lexicographic with k_0 varying slowest."""
    if L < 1:
        raise ValueError("L must be positive")
    if n < 0:
        raise ValueError("n must be non-negative")

    def gen(slots, total):
        if slots == 1:
            yield (total,)
            return
        for k in range(total + 1):
            for rest in gen(slots - 1, total - k):
                yield (k,) + rest

    yield from gen(L, n)


def enumerate_superset_tuples(L: int, n: int):
    """All tuples in [0, n]^L with sum at least n, ascending lexicographic."""
    for ks in itertools.product(range(n + 1), repeat=L):
        if sum(ks) >= n:
            yield ks


def verify(family: UdmFamily, superset: bool = False) -> VerifyReport:
    """Check the full-rank condition for every admissible erasure tuple.

    By default only tuples with sum exactly n are checked, which is
    sufficient. With superset=True every tuple with sum >= n is checked
    directly. The first failing tuple, in enumeration order, becomes the
    witness.
    """
    n = family.n
    source = (
        enumerate_superset_tuples(family.L, n)
        if superset
        else enumerate_exact_tuples(family.L, n)
    )
    checked = 0
    for ks in source:
        checked += 1
        stacked = stack_prefixes(family.matrices, ks)
        r = rank(stacked)
        if r < n:
            return VerifyReport(False, checked, Witness(ks, stacked, r))
    return VerifyReport(True, checked, None)


def _is_lower_triangular(c: Matrix) -> bool:
    return all(c.at(i, j) == 0 for i in range(c.rows) for j in range(i + 1, c.cols))


def left_transform(family: UdmFamily, l: int, c: Matrix) -> UdmFamily:
    """Replace the l-th matrix by c @ A_l for a lower triangular c with
    nonzero diagonal; this never breaks universal decodability."""
    if not 0 <= l < family.L:
        raise ValueError(f"matrix index {l} out of range [0, {family.L})")
    if c.rows != family.n or c.cols != family.n:
        raise ValueError(f"transform must be {family.n}x{family.n}")
    if not _is_lower_triangular(c):
        raise NotLowerTriangular("transform matrix has an entry above the diagonal")
    if any(c.at(i, i) == 0 for i in range(c.rows)):
        raise ZeroDiagonal("transform matrix has a zero diagonal entry")
    mats = list(family.matrices)
    mats[l] = matmul(c, mats[l])
    return replace(family, matrices=tuple(mats), alpha=None)


def right_multiply(family: UdmFamily, b: Matrix) -> UdmFamily:
    """Replace every matrix A_l by A_l @ b for an invertible b."""
    if b.rows != family.n or b.cols != family.n:
        raise ValueError(f"multiplier must be {family.n}x{family.n}")
    if rank(b) < family.n:
        raise Singular("right multiplier is not invertible")
    mats = tuple(matmul(m, b) for m in family.matrices)
    return replace(family, matrices=mats, alpha=None)


def tensor_power(family: UdmFamily, m: int) -> UdmFamily:
    """The family of m-fold Kronecker powers, an (L, n**m, q) candidate.

    The output is not guaranteed universally decodable in general; callers
    verify it. For the standard construction over a prime field with n = p
    the result coincides entrywise with the directly constructed
    (L, p**m, p) family.
    """
    if m < 1:
        raise ValueError("tensor power must be positive")
    mats = []
    for a in family.matrices:
        acc = a
        for _ in range(m - 1):
            acc = kron(acc, a)
        mats.append(acc)
    return UdmFamily(family.field, family.L, family.n**m, tuple(mats), alpha=family.alpha)


def reverse_pairs(family: UdmFamily) -> UdmFamily:
    """Rework each pair (A_{2j}, A_{2j+1}) so the second matrix is the first
    with its rows reversed, preserving universal decodability.

    Row i of the even matrix is replaced by the null-space combination of the
    stack of its rows 0..i over rows 0..n-1-i of the odd matrix; the matching
    row of the odd matrix takes the negated complementary combination. Both
    replacements are triangular row updates with a nonzero coefficient on the
    replaced row, which never break the rank condition. A null vector with a
    vanishing boundary coefficient can only arise for input that was not
    universally decodable.
    """
    field = family.field
    n = family.n
    neg, mul, add = field.neg, field.mul, field.add
    mats = [m.to_lists() for m in family.matrices]

    def combo(coeffs, rows):
        out = [0] * n
        for c, row in zip(coeffs, rows):
            if c:
                for j in range(n):
                    if row[j]:
                        out[j] = add(out[j], mul(c, row[j]))
        return out

    for base in range(0, family.L - 1, 2):
        a0, a1 = mats[base], mats[base + 1]
        for i in range(n):
            b0 = a0[: i + 1]
            b1 = a1[: n - i]
            stacked = Matrix.from_rows(field, b0 + b1)
            b = left_null_vector(stacked)
            if b[i] == 0 or b[n] == 0:
                raise DegenerateNullVector(
                    f"null vector has a zero boundary coefficient at step {i}; "
                    "the input family is not universally decodable"
                )
            c0, c1 = b[: i + 1], b[i + 1 :]
            a0[i] = combo(c0, b0)
            a1[n - i - 1] = [neg(v) for v in combo(c1, b1)]
    return replace(
        family,
        matrices=tuple(Matrix.from_rows(field, m) for m in mats),
        alpha=None,
    )


def reduce(family: UdmFamily) -> UdmFamily:
    """Shrink an (L, n, q) family normalized to A_0 = I, A_1 = J into an
    (L, n-1, q) one: the second matrix loses its first column and last row,
    every other matrix its last column and last row."""
    field = family.field
    n = family.n
    if n < 2:
        raise ValueError("cannot reduce below n = 1")
    if family.L < 2 or family.matrices[0] != identity(field, n):
        raise BadNormalization("first matrix must be the identity")
    if family.matrices[1] != anti_identity(field, n):
        raise BadNormalization("second matrix must be the row reversal")
    mats = []
    for l, m in enumerate(family.matrices):
        drop_col = 0 if l == 1 else n - 1
        entries = [
            m.at(i, j) for i in range(n - 1) for j in range(n) if j != drop_col
        ]
        mats.append(Matrix(field, n - 1, n - 1, entries))
    return replace(family, n=n - 1, matrices=tuple(mats))


def permute(family: UdmFamily, perm) -> UdmFamily:
    """Reorder the matrices; position l receives matrix perm[l]."""
    perm = tuple(perm)
    if sorted(perm) != list(range(family.L)):
        raise ValueError(f"not a permutation of 0..{family.L - 1}: {perm}")
    return replace(
        family, matrices=tuple(family.matrices[p] for p in perm), alpha=None
    )


def prefix(family: UdmFamily, L: int) -> UdmFamily:
    """The family of the first L matrices."""
    if not 1 <= L <= family.L:
        raise ValueError(f"prefix length {L} out of range [1, {family.L}]")
    return replace(family, L=L, matrices=family.matrices[:L])


def delta_matrix(field: Field, n: int, t: int) -> Matrix:
    """Unit upper bidiagonal factor: +1 on the diagonal, -1 at (t'-1, t')
    for t < t' <= n-1. The product A_2 * delta_0 * ... * delta_{n-1} is the
    identity, which inverts the binomial matrix column by column."""
    if not 0 <= t < n:
        raise ValueError(f"index {t} out of range [0, {n})")
    neg1 = field.nat_map(-1)
    entries = [0] * (n * n)
    for d in range(n):
        entries[d * n + d] = 1
    for tp in range(t + 1, n):
        entries[(tp - 1) * n + tp] = neg1
    return Matrix(field, n, n, entries)


def pascal_inverse_check(family: UdmFamily) -> bool:
    """Whether A_2 times the full chain of delta factors is the identity."""
    if family.L < 3:
        raise ValueError("family has no third matrix")
    field, n = family.field, family.n
    acc = family.matrices[2]
    for t in range(n):
        acc = matmul(acc, delta_matrix(field, n, t))
    return acc == identity(field, n)


def lucas_entry(field: Field, L: int, n: int, l: int, i: int, t: int) -> int:
    """Entry (i, t) of the (l+2)-nd constructed matrix computed digit by
    digit in radix p: the product over digits h of
    C(t_h, i_h) * alpha**(l * (t_h - i_h) * p**h)."""
    if not 0 <= l < L - 2:
        raise ValueError(f"twist index {l} out of range [0, {L - 2})")
    if not (0 <= i < n and 0 <= t < n):
        raise ValueError("entry indices out of range")
    p = field.p
    m = 0
    while p**m < n:
        m += 1
    alpha = field.primitive_element()
    acc = 1
    ii, tt = i, t
    for h in range(m):
        ii, i_h = divmod(ii, p)
        tt, t_h = divmod(tt, p)
        c = field.binom(t_h, i_h)
        if c == 0:
            return 0
        acc = field.mul(acc, c)
        acc = field.mul(acc, field.pow(alpha, l * (t_h - i_h) * p**h))
    return acc


def refute_bound(field: Field, n: int, L: int, budget: int = 10_000_000) -> SearchReport:
    """Exhaustively search for an (L, n, q) family with A_0 = I and A_1 = J.

    Candidate matrices for the remaining slots are pruned by two necessary
    conditions before verification: every first-row entry nonzero, and the
    ratios of the last two first-row entries pairwise distinct across slots.
    Raises BudgetExceeded when the raw space q**(n*n*(L-2)) is above budget.
    """
    q = field.q
    slots = max(L - 2, 0)
    total = q ** (n * n * slots)
    if n == 1:
        fam = UdmFamily(field, L, 1, tuple(identity(field, 1) for _ in range(L)))
        return SearchReport(
            True,
            fam,
            total,
            0,
            note="n = 1 is unconstrained: the all-ones family works for any L",
        )
    if total > budget:
        raise BudgetExceeded(f"{total} raw candidates exceed the budget of {budget}")
    base = (identity(field, n), anti_identity(field, n))[:L]
    if slots == 0:
        fam = UdmFamily(field, L, n, base)
        if verify(fam).passed:
            return SearchReport(True, fam, total, 1)
        return SearchReport(False, None, total, 1)
    candidates = []
    for combo in itertools.product(range(q), repeat=n * n):
        if all(combo[j] != 0 for j in range(n)):
            m = Matrix(field, n, n, combo)
            ratio = field.mul(m.at(0, n - 2), field.inv(m.at(0, n - 1)))
            candidates.append((m, ratio))
    verified = 0
    for picks in itertools.product(candidates, repeat=slots):
        ratios = [r for _, r in picks]
        if len(set(ratios)) != slots:
            continue
        fam = UdmFamily(field, L, n, base + tuple(m for m, _ in picks))
        verified += 1
        if verify(fam).passed:
            return SearchReport(True, fam, total, verified)
    return SearchReport(False, None, total, verified)
