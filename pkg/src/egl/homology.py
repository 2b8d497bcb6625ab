"""Exact integer linear algebra for homology-level decisions.

Smith normal form over Z with unimodular transforms, finitely generated
abelian groups presented by relation vectors, integer homomorphisms with
kernel computation, and the two obstruction-theoretic decision
procedures: existence of a Hausdorff integration for a smooth divisor
(a mod-2 functional factoring through the pushforward image) and
existence of a coorientation double cover (membership in a mod-2 column
space).  Everything here is exact; no floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence

from .errors import DimensionMismatch, MalformedPresentation

__all__ = [
    "smith_normal_form",
    "integer_determinant",
    "integer_kernel_basis",
    "lattice_member",
    "HomologyPresentation",
    "IntHom",
    "kernel_generators",
    "hausdorff_smooth_decision",
    "double_cover_exists",
]


def _as_int_matrix(M) -> List[List[int]]:
    rows = [[int(x) for x in row] for row in M]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise MalformedPresentation("ragged integer matrix")
    return rows


def _identity(n: int) -> List[List[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _matmul(A, B):
    n, k, m = len(A), len(B), len(B[0]) if B else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for l in range(k):
            a = Ai[l]
            if a:
                Bl = B[l]
                oi = out[i]
                for j in range(m):
                    oi[j] += a * Bl[j]
    return out


def smith_normal_form(M):
    """Smith normal form ``U * M * V = S`` over Z.

    U and V are unimodular (det +-1) and S is diagonal with nonnegative
    entries satisfying the divisibility chain d1 | d2 | ...  Arbitrary
    precision integers throughout.  Returns nested lists (U, S, V).
    """
    S = _as_int_matrix(M)
    m = len(S)
    n = len(S[0]) if m else 0
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        S[dst] = [a + c * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        for row in S:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    def negate_row(i):
        S[i] = [-a for a in S[i]]
        U[i] = [-a for a in U[i]]

    t = 0
    while t < min(m, n):
        # locate a pivot of minimal absolute value in the trailing block
        pivot = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                a = S[i][j]
                if a != 0 and (best is None or abs(a) < best):
                    best = abs(a)
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        if i != t:
            swap_rows(t, i)
        if j != t:
            swap_cols(t, j)

        dirty = False
        for i in range(t + 1, m):
            if S[i][t]:
                q = S[i][t] // S[t][t]
                add_row(i, t, -q)
                if S[i][t]:
                    dirty = True
        for j in range(t + 1, n):
            if S[t][j]:
                q = S[t][j] // S[t][t]
                add_col(j, t, -q)
                if S[t][j]:
                    dirty = True
        if dirty:
            continue  # smaller remainder appeared; pick a new pivot

        # enforce divisibility of the remaining block by the pivot
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if S[i][j] % S[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(t, offender, 1)
            continue
        if S[t][t] < 0:
            negate_row(t)
        t += 1

    return U, S, V


def integer_determinant(M) -> int:
    """Exact determinant over Z (fraction-free Bareiss elimination).

    Unimodularity of SNF transforms cannot be checked in floating point;
    their entries overflow doubles quickly.
    """
    M = _as_int_matrix(M)
    n = len(M)
    if n == 0:
        return 1
    if any(len(r) != n for r in M):
        raise MalformedPresentation("determinant of a non-square matrix")
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[-1][-1]


def integer_kernel_basis(M) -> List[List[int]]:
    """Basis of the integer kernel lattice {x : M x = 0}."""
    M = _as_int_matrix(M)
    m = len(M)
    n = len(M[0]) if m else 0
    if n == 0:
        return []
    if m == 0:
        return _identity(n)
    _, S, V = smith_normal_form(M)
    rank = sum(1 for i in range(min(m, n)) if S[i][i] != 0)
    # kernel is spanned by the columns of V beyond the rank
    return [[V[i][j] for i in range(n)] for j in range(rank, n)]


def lattice_member(columns: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    """Whether v lies in the Z-span of the given column vectors."""
    v = [int(x) for x in v]
    if not columns:
        return all(x == 0 for x in v)
    R = [[int(col[i]) for col in columns] for i in range(len(v))]
    if any(len(col) != len(v) for col in columns):
        raise DimensionMismatch("lattice_member: column length mismatch")
    U, S, _ = smith_normal_form(R)
    w = [sum(U[i][j] * v[j] for j in range(len(v))) for i in range(len(v))]
    r = len(columns)
    for i in range(len(v)):
        d = S[i][i] if i < min(len(v), r) else 0
        if d == 0:
            if w[i] != 0:
                return False
        elif w[i] % d != 0:
            return False
    return True


@dataclass(frozen=True)
class HomologyPresentation:
    """Finitely generated abelian group: generators and relation vectors.

    Each relation is a vector of generator coefficients declared to be
    zero in the group.
    """

    ngens: int
    relations: tuple = ()
    names: tuple = ()

    def __post_init__(self):
        for r in self.relations:
            if len(r) != self.ngens:
                raise MalformedPresentation("relation length != generator count")
        if self.names and len(self.names) != self.ngens:
            raise MalformedPresentation("name count != generator count")

    @property
    def relation_columns(self):
        return [list(map(int, r)) for r in self.relations]

    def invariant_factors(self) -> List[int]:
        """Nontrivial diagonal entries of the SNF of the relation matrix."""
        if not self.relations:
            return []
        R = [[int(rel[i]) for rel in self.relations] for i in range(self.ngens)]
        _, S, _ = smith_normal_form(R)
        out = []
        for i in range(min(len(S), len(S[0]) if S else 0)):
            if S[i][i] not in (0, 1):
                out.append(S[i][i])
        return out


@dataclass(frozen=True)
class IntHom:
    """Homomorphism of presented abelian groups, as an integer matrix.

    ``matrix`` has one row per codomain generator and one column per
    domain generator.  Construction checks that domain relations land in
    the codomain relation lattice.
    """

    matrix: tuple
    domain: HomologyPresentation
    codomain: HomologyPresentation

    def __post_init__(self):
        M = _as_int_matrix(self.matrix)
        if len(M) != self.codomain.ngens or (M and len(M[0]) != self.domain.ngens):
            raise MalformedPresentation("hom matrix shape does not match presentations")
        if self.codomain.ngens and self.domain.ngens:
            cols = self.codomain.relation_columns
            for rel in self.domain.relations:
                img = [sum(M[i][j] * int(rel[j]) for j in range(self.domain.ngens))
                       for i in range(self.codomain.ngens)]
                if not lattice_member(cols, img):
                    raise MalformedPresentation(
                        "hom does not map a domain relation into the codomain lattice")

    def apply(self, v: Sequence[int]) -> List[int]:
        M = _as_int_matrix(self.matrix)
        return [sum(M[i][j] * int(v[j]) for j in range(self.domain.ngens))
                for i in range(self.codomain.ngens)]


def kernel_generators(f: IntHom) -> List[List[int]]:
    """Generators of ker(f) as a subgroup of the domain group.

    Computed from the integer nullspace of the block matrix
    ``[matrix | -codomain relations]`` projected to domain coordinates;
    generators already zero in the domain (members of the domain
    relation lattice) are dropped.
    """
    M = _as_int_matrix(f.matrix)
    nd = f.domain.ngens
    rel_cols = f.codomain.relation_columns
    block = [[M[i][j] for j in range(nd)] + [-col[i] for col in rel_cols]
             for i in range(f.codomain.ngens)]
    basis = integer_kernel_basis(block) if block else _identity(nd)
    dom_rels = [list(map(int, r)) for r in f.domain.relations]
    out = []
    for vec in basis:
        x = vec[:nd]
        if not any(x):
            continue
        if dom_rels and lattice_member(dom_rels, x):
            continue  # already zero in the domain group
        out.append(x)
    return out


def hausdorff_smooth_decision(i_star: IntHom, eta: Sequence[int]) -> bool:
    """Hausdorff integrability of a smooth divisor.

    ``eta`` is the mod-2 coorientation functional on the divisor's first
    homology; the decision is whether it factors through the image of
    ``i_star``, equivalently whether it vanishes on every kernel
    generator.  Exact arithmetic.
    """
    eta = [int(x) % 2 for x in eta]
    if len(eta) != i_star.domain.ngens:
        raise MalformedPresentation("eta length != domain generator count")
    for rel in i_star.domain.relations:
        if sum(e * int(r) for e, r in zip(eta, rel)) % 2 != 0:
            raise MalformedPresentation("eta is not well-defined on the domain group")
    for gen in kernel_generators(i_star):
        if sum(e * g for e, g in zip(eta, gen)) % 2 != 0:
            return False
    return True


def smooth_decision_witness(i_star: IntHom, eta: Sequence[int]):
    """The first kernel generator on which eta is odd, or None."""
    eta = [int(x) % 2 for x in eta]
    for gen in kernel_generators(i_star):
        if sum(e * g for e, g in zip(eta, gen)) % 2 != 0:
            return gen
    return None


def double_cover_exists(i_pullback, eta_class: Sequence[int]) -> bool:
    """Whether the coorientation class is hit by the mod-2 restriction map.

    ``i_pullback`` maps mod-2 classes of the ambient space to the
    divisor; the cover exists iff ``eta_class`` lies in its column
    space over GF(2).  Gaussian elimination, exact.
    """
    A = [[int(x) % 2 for x in row] for row in i_pullback]
    b = [int(x) % 2 for x in eta_class]
    if A and len(A) != len(b):
        raise DimensionMismatch("double_cover_exists: row count != class length")
    if not A:
        return not any(b)
    ncols = len(A[0])
    aug = [row[:] + [bb] for row, bb in zip(A, b)]
    row = 0
    for col in range(ncols):
        piv = next((r for r in range(row, len(aug)) if aug[r][col]), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        for r in range(len(aug)):
            if r != row and aug[r][col]:
                aug[r] = [(x + y) % 2 for x, y in zip(aug[r], aug[row])]
        row += 1
    # inconsistent iff a zero row has rhs 1
    for r in aug:
        if not any(r[:-1]) and r[-1]:
            return False
    return True
