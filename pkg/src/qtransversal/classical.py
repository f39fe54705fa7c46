"""Set-based transversal theory: Hall, Rado, avoidance forms, co-nullity.

Families are ordered tuples of subsets of a labeled ground set.  The
decision procedures all return witnesses (a transversal, or a violating
index set J, 1-based) so their verdicts can be re-checked without
trusting the implementation.  Internally subsets travel as bitmasks over
the ground tuple; the public surface speaks labels and frozensets.

This module is both a standalone implementation of the classical
theorems and the inner engine for the q-analog: the definitional
q-transversal oracle reduces each vector basis to an avoiding-transversal
check here, and the representability construction leans on Rado.
"""

from __future__ import annotations

import itertools
from collections import namedtuple
from dataclasses import dataclass
from functools import cached_property

from .errors import GroundMismatch, InfeasibleScale, InvalidRankTable, OutOfRange
from .fields import FieldSpec
from .subspaces import matrix_rank

HallVerdict = namedtuple("HallVerdict", "ok witness_J")


@dataclass(frozen=True)
class SetFamily:
    """An indexed family (A_1, ..., A_n) of subsets of a ground set."""

    ground: tuple[str, ...]
    members: tuple[frozenset, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "members", tuple(frozenset(m) for m in self.members)
        )
        if len(set(self.ground)) != len(self.ground):
            raise GroundMismatch("ground labels must be distinct")
        gset = set(self.ground)
        for m in self.members:
            if not m <= gset:
                raise GroundMismatch(f"member {sorted(m)} is not a subset of the ground")

    def __len__(self):
        return len(self.members)

    def masks(self) -> list[int]:
        pos = {x: i for i, x in enumerate(self.ground)}
        return [sum(1 << pos[x] for x in m) for m in self.members]

    def to_jsonable(self) -> dict:
        return {
            "ground": list(self.ground),
            "members": [sorted(m) for m in self.members],
        }


def _mask_to_indices(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _union_masks(members: list[int], j_mask: int) -> int:
    u = 0
    i = 0
    while j_mask:
        if j_mask & 1:
            u |= members[i]
        j_mask >>= 1
        i += 1
    return u


def _intersect_masks(members: list[int], j_mask: int, full: int) -> int:
    # X(empty) = S by convention.
    u = full
    i = 0
    while j_mask:
        if j_mask & 1:
            u &= members[i]
        j_mask >>= 1
        i += 1
    return u


def hall_check(fam: SetFamily) -> HallVerdict:
    """Hall condition: |A[J]| >= |J| for every J; witness on failure."""
    members = fam.masks()
    n = len(members)
    for j_mask in range(1 << n):
        if _union_masks(members, j_mask).bit_count() < j_mask.bit_count():
            return HallVerdict(False, _mask_to_indices(j_mask))
    return HallVerdict(True, None)


def _augment(adj: list[int], owner: list[int], u: int, seen: int) -> tuple[bool, int, list[int]]:
    # Depth-first augmenting path over element bits; returns updated seen.
    for v in range(len(owner)):
        bit = 1 << v
        if adj[u] & bit and not seen & bit:
            seen |= bit
            if owner[v] < 0:
                owner[v] = u
                return True, seen, owner
            ok, seen, owner = _augment(adj, owner, owner[v], seen)
            if ok:
                owner[v] = u
                return True, seen, owner
    return False, seen, owner


def maximum_matching(adj: list[int], n_right: int) -> list[int]:
    """Left-to-right matching by augmenting paths.

    adj[u] is a bitmask of right vertices reachable from left vertex u.
    Returns match[u] = right index or -1, deterministically.
    """
    owner = [-1] * n_right
    for u in range(len(adj)):
        _, _, owner = _augment(adj, owner, u, 0)
    match = [-1] * len(adj)
    for v, u in enumerate(owner):
        if u >= 0:
            match[u] = v
    return match


def find_transversal(fam: SetFamily) -> dict[int, str] | None:
    """A system of distinct representatives, or None.

    Keys are 1-based member indices; presence coincides with hall_check.
    """
    members = fam.masks()
    match = maximum_matching(members, len(fam.ground))
    if any(v < 0 for v in match):
        return None
    return {i + 1: fam.ground[v] for i, v in enumerate(match)}


class ClassicalMatroid:
    """A matroid on a labeled ground set, given by a rank oracle."""

    def __init__(self, ground: tuple[str, ...], rank_fn, provenance: str, *, spot_check: bool = True):
        self.ground = tuple(ground)
        self._rank_fn = rank_fn
        self.provenance = provenance
        if spot_check and len(self.ground) <= 6:
            self._verify_axioms()

    @classmethod
    def free(cls, ground) -> "ClassicalMatroid":
        ground = tuple(ground)
        return cls(ground, lambda s: len(s), "free")

    @classmethod
    def linear(cls, ground, field: FieldSpec, columns) -> "ClassicalMatroid":
        """Column matroid: rank of a subset is the field rank of its columns."""
        ground = tuple(ground)
        cols = {}
        width = None
        for label, col in zip(ground, columns):
            col = tuple(col)
            if width is None:
                width = len(col)
            elif len(col) != width:
                raise OutOfRange("all columns must have the same length")
            cols[label] = col
        if len(cols) != len(ground):
            raise GroundMismatch("one column per ground element is required")

        def rank_fn(subset):
            rows = [cols[x] for x in sorted(subset)]
            return matrix_rank(field, rows, width) if rows else 0

        m = cls(ground, rank_fn, f"linear over GF({field.order})")
        m.columns = cols
        m.field = field
        return m

    def rank(self, subset) -> int:
        subset = frozenset(subset)
        if not subset <= set(self.ground):
            raise GroundMismatch("subset contains labels outside the ground")
        return self._rank_fn(subset)

    def _verify_axioms(self):
        subsets = [
            frozenset(c)
            for k in range(len(self.ground) + 1)
            for c in itertools.combinations(self.ground, k)
        ]
        r = {s: self._rank_fn(s) for s in subsets}
        for s in subsets:
            if not 0 <= r[s] <= len(s):
                raise InvalidRankTable(f"rank not bounded by cardinality at {sorted(s)}")
        for a in subsets:
            for b in subsets:
                if a <= b and r[a] > r[b]:
                    raise InvalidRankTable("rank is not monotone")
                if r[a | b] + r[a & b] > r[a] + r[b]:
                    raise InvalidRankTable("rank is not submodular")

    @cached_property
    def bases(self) -> tuple[frozenset, ...]:
        """All bases, by brute force over subsets."""
        n = len(self.ground)
        if n > 20:
            raise InfeasibleScale(f"basis enumeration over 2^{n} subsets")
        full_rank = self.rank(self.ground)
        out = []
        for combo in itertools.combinations(self.ground, full_rank):
            s = frozenset(combo)
            if self._rank_fn(s) == full_rank:
                out.append(s)
        return tuple(out)


def rado_check(matroid: ClassicalMatroid, fam: SetFamily) -> HallVerdict:
    """Rado condition: rho(A[J]) >= |J| for every J; witness on failure."""
    if fam.ground != matroid.ground:
        raise GroundMismatch("family and matroid must share one ground tuple")
    members = fam.masks()
    n = len(members)
    labels = fam.ground
    for j_mask in range(1 << n):
        u = _union_masks(members, j_mask)
        subset = frozenset(labels[i] for i in range(len(labels)) if u >> i & 1)
        if matroid.rank(subset) < j_mask.bit_count():
            return HallVerdict(False, _mask_to_indices(j_mask))
    return HallVerdict(True, None)


def avoiding_transversal_check(t, fam: SetFamily) -> bool:
    """Fast test for T being a partial avoiding transversal of (X_1..X_n).

    Condition: |T meet X(J)| + |J| <= n for every J, with X(empty) = S.
    """
    t = frozenset(t)
    if not t <= set(fam.ground):
        raise GroundMismatch("T contains labels outside the ground")
    pos = {x: i for i, x in enumerate(fam.ground)}
    t_mask = sum(1 << pos[x] for x in t)
    members = fam.masks()
    full = (1 << len(fam.ground)) - 1
    n = len(members)
    for j_mask in range(1 << n):
        xj = _intersect_masks(members, j_mask, full)
        if (t_mask & xj).bit_count() + j_mask.bit_count() > n:
            return False
    return True


def avoiding_transversal_by_injections(t, fam: SetFamily) -> bool:
    """Brute-force oracle: is there an injection i -> x_i with x_i not in X_i
    covering exactly the elements of T?  Exponential, desk scale only."""
    t = sorted(frozenset(t))
    n = len(fam.members)
    if len(t) > n:
        return False
    for assignment in itertools.permutations(range(n), len(t)):
        if all(x not in fam.members[i] for x, i in zip(t, assignment)):
            return True
    return False


def is_partial_transversal(t, fam: SetFamily) -> bool:
    """Is T a partial transversal of (A_1..A_n)?  Matching saturating T."""
    t = sorted(frozenset(t))
    if not set(t) <= set(fam.ground):
        raise GroundMismatch("T contains labels outside the ground")
    adj = [
        sum(1 << i for i, m in enumerate(fam.members) if x in m) for x in t
    ]
    match = maximum_matching(adj, len(fam.members))
    return all(v >= 0 for v in match)


def co_nullity(matroid: ClassicalMatroid, x) -> int:
    """nu*(X) = min over bases B of |X meet B|."""
    x = frozenset(x)
    if not x <= set(matroid.ground):
        raise GroundMismatch("subset contains labels outside the ground")
    return min(len(x & b) for b in matroid.bases)


def avoid_rado_check(matroid: ClassicalMatroid, fam: SetFamily) -> HallVerdict:
    """Avoidance Rado: nu*(X(J)) + |J| <= nu*(S) for every J."""
    if fam.ground != matroid.ground:
        raise GroundMismatch("family and matroid must share one ground tuple")
    members = fam.masks()
    labels = fam.ground
    full = (1 << len(labels)) - 1
    n = len(members)
    nu_star_s = co_nullity(matroid, labels)
    for j_mask in range(1 << n):
        xj = _intersect_masks(members, j_mask, full)
        subset = frozenset(labels[i] for i in range(len(labels)) if xj >> i & 1)
        if co_nullity(matroid, subset) + j_mask.bit_count() > nu_star_s:
            return HallVerdict(False, _mask_to_indices(j_mask))
    return HallVerdict(True, None)
