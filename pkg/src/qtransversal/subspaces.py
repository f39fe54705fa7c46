"""The lattice of subspaces of GF(q)^n.

A Subspace is identified with the reduced row-echelon form (RREF) of
any of its bases: pivot entries are 1, pivot columns strictly increase,
and every other entry in a pivot column vanishes.  Two subspaces are
equal exactly when these matrices are identical, which makes Subspace a
hashable key for rank tables and certificate maps.  Vectors and matrix
entries are field element codes (see fields.py), so everything stays in
exact integer arithmetic.

Enumeration order is fixed everywhere: ascending dimension, then
lexicographic on the flattened RREF entries.  Scale guards are explicit
module constants and can be overridden per call.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    DimensionMismatch,
    InfeasibleScale,
    OutOfRange,
    SpecMismatch,
)
from .fields import FieldSpec

#: Largest q^n the vector-level enumerators will walk.
VECTOR_CAP = 2**20
#: Largest single-dimension block of subspaces materialized at once.
SUBSPACE_BLOCK_CAP = 10**6
#: Largest number of vector bases enumerate_bases will walk.
BASIS_CAP = 10**6
#: Largest lattice materialized with full meet/join tables.
LATTICE_CAP = 4096


@dataclass(frozen=True)
class VectorSpaceSpec:
    """The ambient space V = GF(q)^dim."""

    field: FieldSpec
    dim: int

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 1:
            raise OutOfRange(f"ambient dimension must be a positive integer, got {self.dim!r}")

    @property
    def num_vectors(self) -> int:
        return self.field.order**self.dim

    def to_jsonable(self) -> dict:
        out = {"q": self.field.order, "dim": self.dim}
        out.update(self.field.to_jsonable())
        return out

    def __repr__(self):
        q = self.field.order
        return f"VectorSpaceSpec(GF({q})^{self.dim})"


def rref(field: FieldSpec, rows, ncols: int) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    """Reduced row-echelon form over the field.

    Returns (rows, pivot_columns) with zero rows dropped.
    """
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(mat)):
            if mat[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        if mat[r][c] != 1:
            inv = field.inv_code(mat[r][c])
            mat[r] = [field.mul_codes(inv, v) for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [
                    field.sub_codes(a, field.mul_codes(f, b))
                    for a, b in zip(mat[i], mat[r])
                ]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return tuple(tuple(row) for row in mat[:r]), tuple(pivots)


def matrix_rank(field: FieldSpec, rows, ncols: int) -> int:
    return len(rref(field, rows, ncols)[0])


@dataclass(frozen=True)
class Subspace:
    """A subspace of V, stored as the RREF of one (hence any) basis.

    The bottom element has zero rows; the ambient space has dim rows.
    """

    spec: VectorSpaceSpec
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = self.spec.dim
        q = self.spec.field.order
        last_pivot = -1
        pivots = []
        for row in self.rows:
            if len(row) != n:
                raise DimensionMismatch(f"row of length {len(row)} in GF({q})^{n}")
            if any(not 0 <= v < q for v in row):
                raise OutOfRange("row entries must be field element codes")
            pivot = next((j for j, v in enumerate(row) if v), None)
            if pivot is None:
                raise ValueError("zero rows are not part of a canonical basis")
            if pivot <= last_pivot or row[pivot] != 1:
                raise ValueError("rows are not in reduced row-echelon form")
            last_pivot = pivot
            pivots.append(pivot)
        pivot_set = set(pivots)
        for i, row in enumerate(self.rows):
            for j in pivot_set:
                if j != pivots[i] and row[j]:
                    raise ValueError("rows are not in reduced row-echelon form")

    @property
    def dim(self) -> int:
        return len(self.rows)

    def to_rows(self) -> list[str]:
        f = self.spec.field
        return ["".join(f.format_code(v) for v in row) for row in self.rows]

    def __repr__(self):
        return f"Subspace({self.to_rows()!r})"


def bottom(spec: VectorSpaceSpec) -> Subspace:
    return Subspace(spec, ())


def top(spec: VectorSpaceSpec) -> Subspace:
    n = spec.dim
    return Subspace(spec, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))


def canonicalize(spec: VectorSpaceSpec, vectors) -> Subspace:
    """Subspace spanned by the given vectors (tuples of field codes)."""
    vectors = [tuple(v) for v in vectors]
    for v in vectors:
        if len(v) != spec.dim:
            raise DimensionMismatch(
                f"vector of length {len(v)} in ambient dimension {spec.dim}"
            )
        if any(not isinstance(c, int) or not 0 <= c < spec.field.order for c in v):
            raise OutOfRange("vector entries must be field element codes")
    rows, _ = rref(spec.field, vectors, spec.dim)
    return Subspace(spec, rows)


def _require_same_spec(a: Subspace, b: Subspace) -> None:
    if a.spec != b.spec:
        raise SpecMismatch("subspaces live in different ambient spaces")


def join(a: Subspace, b: Subspace) -> Subspace:
    """Smallest subspace containing both, i.e. the span of their union."""
    _require_same_spec(a, b)
    rows, _ = rref(a.spec.field, a.rows + b.rows, a.spec.dim)
    return Subspace(a.spec, rows)


def meet(a: Subspace, b: Subspace) -> Subspace:
    """Intersection, computed by the Zassenhaus null-space construction."""
    _require_same_spec(a, b)
    spec = a.spec
    n = spec.dim
    zero = (0,) * n
    stacked = [row + row for row in a.rows] + [row + zero for row in b.rows]
    reduced, _ = rref(spec.field, stacked, 2 * n)
    inter = [row[n:] for row in reduced if not any(row[:n])]
    return canonicalize(spec, inter)


def contains_vector(s: Subspace, vector) -> bool:
    """Membership test by elimination against the canonical basis."""
    field = s.spec.field
    v = list(vector)
    if len(v) != s.spec.dim:
        raise DimensionMismatch("vector length does not match ambient dimension")
    for row in s.rows:
        pivot = next(j for j, x in enumerate(row) if x)
        c = v[pivot]
        if c:
            v = [field.sub_codes(x, field.mul_codes(c, y)) for x, y in zip(v, row)]
    return not any(v)


def leq(a: Subspace, b: Subspace) -> bool:
    """True iff a is a subspace of b."""
    _require_same_spec(a, b)
    return all(contains_vector(b, row) for row in a.rows)


def subspace_vectors(s: Subspace) -> tuple[tuple[int, ...], ...]:
    """Every vector of the subspace, sorted; q^dim of them."""
    field = s.spec.field
    n = s.spec.dim
    vecs = []
    for coeffs in itertools.product(range(field.order), repeat=s.dim):
        v = [0] * n
        for c, row in zip(coeffs, s.rows):
            if c:
                v = [field.add_codes(x, field.mul_codes(c, y)) for x, y in zip(v, row)]
        vecs.append(tuple(v))
    vecs.sort()
    return tuple(vecs)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of GF(q)^n, exactly."""
    if q < 2:
        raise OutOfRange(f"q must be at least 2, got {q}")
    if n < 0 or k < 0 or k > n:
        raise OutOfRange(f"need 0 <= k <= n, got n={n}, k={k}")
    result = 1
    for i in range(k):
        # Each partial product is itself a Gaussian binomial, so the
        # stepwise integer division is exact.
        result = result * (q ** (n - i) - 1) // (q ** (i + 1) - 1)
    return result


def _rref_block(field: FieldSpec, n: int, k: int):
    """All k x n RREF matrices over the field, one per k-dim subspace."""
    q = field.order
    if k == 0:
        yield ()
        return
    for pivots in itertools.combinations(range(n), k):
        free_pos = [
            (i, j)
            for i in range(k)
            for j in range(n)
            if j > pivots[i] and j not in pivots
        ]
        for vals in itertools.product(range(q), repeat=len(free_pos)):
            mat = [[0] * n for _ in range(k)]
            for i, pc in enumerate(pivots):
                mat[i][pc] = 1
            for (i, j), v in zip(free_pos, vals):
                mat[i][j] = v
            yield tuple(tuple(row) for row in mat)


def enumerate_subspaces(
    spec: VectorSpaceSpec,
    of: Subspace | None = None,
    dim: int | None = None,
    *,
    vector_cap: int = VECTOR_CAP,
    block_cap: int = SUBSPACE_BLOCK_CAP,
):
    """Stream the subspaces of V (or of a given subspace), each exactly once.

    Order is deterministic: ascending dimension, then lexicographic
    RREF.  Counts per dimension equal the Gaussian binomial.
    """
    if spec.num_vectors > vector_cap:
        raise InfeasibleScale(
            f"q^n = {spec.num_vectors} exceeds the vector cap {vector_cap}"
        )
    if of is not None and of.spec != spec:
        raise SpecMismatch("subspace filter lives in a different ambient space")
    limit = spec.dim if of is None else of.dim
    if dim is None:
        dims = range(limit + 1)
    else:
        if dim < 0 or dim > spec.dim:
            raise OutOfRange(f"dimension filter {dim} outside [0, {spec.dim}]")
        if dim > limit:
            return
        dims = (dim,)
    q = spec.field.order
    for k in dims:
        count = gaussian_binomial(limit, k, q)
        if count > block_cap:
            raise InfeasibleScale(
                f"{count} subspaces of dimension {k} exceed the block cap {block_cap}"
            )
        if of is None:
            block = sorted(_rref_block(spec.field, spec.dim, k))
            for rows in block:
                yield Subspace(spec, rows)
        else:
            field = spec.field
            mapped = []
            for inner in _rref_block(field, limit, k):
                vectors = []
                for coeffs in inner:
                    v = [0] * spec.dim
                    for c, row in zip(coeffs, of.rows):
                        if c:
                            v = [
                                field.add_codes(x, field.mul_codes(c, y))
                                for x, y in zip(v, row)
                            ]
                    vectors.append(tuple(v))
                mapped.append(canonicalize(spec, vectors).rows)
            mapped.sort()
            for rows in mapped:
                yield Subspace(spec, rows)


def count_bases(t: Subspace) -> int:
    """Number of unordered vector bases of a subspace, exactly."""
    q = t.spec.field.order
    r = t.dim
    ordered = 1
    for i in range(r):
        ordered *= q**r - q**i
    return ordered // math.factorial(r)


def enumerate_bases(t: Subspace, *, basis_cap: int = BASIS_CAP):
    """Stream every unordered vector basis of t, deterministically.

    A basis is a sorted tuple of t.dim linearly independent vectors.
    """
    r = t.dim
    if r == 0:
        yield ()
        return
    q = t.spec.field.order
    candidates = math.comb(q**r - 1, r)
    if candidates > basis_cap:
        raise InfeasibleScale(
            f"{candidates} candidate vector sets exceed the basis cap {basis_cap}"
        )
    field = t.spec.field
    nonzero = [v for v in subspace_vectors(t) if any(v)]
    for combo in itertools.combinations(nonzero, r):
        if matrix_rank(field, combo, t.spec.dim) == r:
            yield combo


@dataclass(frozen=True)
class SubspaceFamily:
    """An ordered tuple (X_1, ..., X_n) of subspaces of one space."""

    spec: VectorSpaceSpec
    members: tuple[Subspace, ...]

    def __post_init__(self):
        for m in self.members:
            if m.spec != self.spec:
                raise SpecMismatch("family members live in different ambient spaces")

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i):
        return self.members[i]

    def to_rows(self) -> list[list[str]]:
        return [m.to_rows() for m in self.members]


# -- serialization helpers ------------------------------------------------


def vector_to_string(spec: VectorSpaceSpec, vector) -> str:
    f = spec.field
    return "".join(f.format_code(v) for v in vector)


def vector_from_string(spec: VectorSpaceSpec, text: str) -> tuple[int, ...]:
    e = spec.field.e
    if len(text) != spec.dim * e:
        raise DimensionMismatch(
            f"row {text!r} must have {spec.dim * e} digits for this space"
        )
    return tuple(
        spec.field.parse_code(text[i * e : (i + 1) * e]) for i in range(spec.dim)
    )


def subspace_from_rows(spec: VectorSpaceSpec, rows) -> Subspace:
    return canonicalize(spec, [vector_from_string(spec, r) for r in rows])


def family_from_rows(spec: VectorSpaceSpec, member_rows) -> SubspaceFamily:
    return SubspaceFamily(
        spec, tuple(subspace_from_rows(spec, rows) for rows in member_rows)
    )


# -- the materialized lattice ---------------------------------------------


class Lattice:
    """Fully materialized subspace lattice with order and meet/join tables.

    Subspaces are indexed in enumeration order, so index 0 is the bottom
    element and the last index is the ambient space.  All tables are
    precomputed; every query afterwards is a lookup.
    """

    def __init__(self, spec: VectorSpaceSpec, *, max_size: int = LATTICE_CAP):
        q = spec.field.order
        total = sum(gaussian_binomial(spec.dim, k, q) for k in range(spec.dim + 1))
        if total > max_size:
            raise InfeasibleScale(
                f"lattice with {total} subspaces exceeds the cap {max_size}"
            )
        self.spec = spec
        self.subspaces: tuple[Subspace, ...] = tuple(enumerate_subspaces(spec))
        self.index: dict[Subspace, int] = {s: i for i, s in enumerate(self.subspaces)}
        self.dims: tuple[int, ...] = tuple(s.dim for s in self.subspaces)
        self.bottom_index = 0
        self.top_index = len(self.subspaces) - 1
        self.atoms: tuple[int, ...] = tuple(
            i for i, d in enumerate(self.dims) if d == 1
        )
        self.by_dim: dict[int, tuple[int, ...]] = {
            k: tuple(i for i, d in enumerate(self.dims) if d == k)
            for k in range(spec.dim + 1)
        }
        vecsets = [frozenset(subspace_vectors(s)) for s in self.subspaces]
        self._vecsets = vecsets
        by_vecset = {vs: i for i, vs in enumerate(vecsets)}
        size = len(self.subspaces)
        below_sets = [set() for _ in range(size)]
        for i in range(size):
            for j in range(size):
                if vecsets[j] <= vecsets[i]:
                    below_sets[i].add(j)
        self._below_sets = tuple(frozenset(s) for s in below_sets)
        self.below: tuple[tuple[int, ...], ...] = tuple(
            tuple(sorted(s)) for s in below_sets
        )
        meet_table = [[0] * size for _ in range(size)]
        join_table = [[0] * size for _ in range(size)]
        field = spec.field
        for i in range(size):
            meet_table[i][i] = i
            join_table[i][i] = i
            for j in range(i + 1, size):
                m = by_vecset[vecsets[i] & vecsets[j]]
                meet_table[i][j] = meet_table[j][i] = m
                rows, _ = rref(
                    field, self.subspaces[i].rows + self.subspaces[j].rows, spec.dim
                )
                jn = self.index[Subspace(spec, rows)]
                join_table[i][j] = join_table[j][i] = jn
        self.meet_table = meet_table
        self.join_table = join_table

    def __len__(self):
        return len(self.subspaces)

    def idx(self, s: Subspace) -> int:
        i = self.index.get(s)
        if i is None:
            raise SpecMismatch("subspace does not belong to this lattice")
        return i

    def leq_idx(self, i: int, j: int) -> bool:
        return i in self._below_sets[j]

    def meet_idx(self, i: int, j: int) -> int:
        return self.meet_table[i][j]

    def join_idx(self, i: int, j: int) -> int:
        return self.join_table[i][j]

    def vecset(self, i: int) -> frozenset:
        return self._vecsets[i]


@lru_cache(maxsize=None)
def get_lattice(spec: VectorSpaceSpec) -> Lattice:
    return Lattice(spec)
