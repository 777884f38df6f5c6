"""Small free resolutions over the integral group ring, built greedily.

The normalized bar resolution is convenient but enormous; for computing
induced maps on cohomology it is far cheaper to build *some* free
resolution of Z over Z[G] with small ranks.  This module constructs one
degree by degree: realize everything as integer matrices through the
left regular representation, take an exact kernel lattice, and greedily
pick kernel vectors whose G-orbits span that lattice over Z.  The
chosen vectors become the free generators of the next module, so
exactness holds by construction and is re-asserted numerically.

An automorphism of the group induces a semilinear chain self-map of the
resolution lifting the identity of Z.  The lift is found degree by
degree by exact integer solves (solvability is precisely exactness of
the resolution), and the induced map on H^n(G; Z) is read off by
expressing the images of the cohomology representatives in terms of the
representatives again.  Chain-homotopy uniqueness makes the answer
independent of every greedy and solve choice above, which the tests
exercise by comparing against an independently computed action.

Element-of-Z[G] values are stored as plain integer coefficient vectors
indexed by the group enumeration; a Z[G]-matrix is a nested tuple of
those.  All integer matrix work is delegated to ``vcgring.intlinalg``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from vcgring.errors import CapacityError, ValidationError
from vcgring.groups import GroupSpec, group_order, validate
from vcgring.intlinalg import (
    FinAb,
    IntMatrix,
    column_span_basis,
    kernel_basis,
    solve_exact,
    subquotient,
)
from vcgring.oracle.bar import _group_data

__all__ = [
    "SmallResolution",
    "ResolutionCohomology",
    "resolution_cohomology",
    "resolution_action",
]

_ORDER_CAP = 24
_LENGTH_CAP = 8

RingElement = tuple[int, ...]  # coefficient per enumerated group element
RingMatrix = tuple[tuple[RingElement, ...], ...]  # rows of ring elements


def _identity_element(order: int) -> RingElement:
    return (1,) + (0,) * (order - 1)


class SmallResolution:
    """A free Z[G]-resolution of Z with greedily chosen generators.

    ``ranks[k]`` is the free rank of the degree-k module, ``diffs[k]``
    (k >= 1) the Z[G]-matrix of d_k into degree k-1, and
    ``realized[k]`` its integer realization on the basis
    (generator, group element) ordered generator-major.
    """

    def __init__(self, spec: GroupSpec, length: int):
        validate(spec)
        order = group_order(spec)
        if order > _ORDER_CAP:
            raise CapacityError(
                f"small resolutions are built only up to order {_ORDER_CAP} "
                f"(got {order})"
            )
        if length > _LENGTH_CAP:
            raise CapacityError(
                f"resolution length {length} exceeds the cap {_LENGTH_CAP}"
            )
        self.spec = spec
        self.order = order
        _, _, self.mult = _group_data(spec)
        self.ranks: list[int] = [1]
        self.diffs: list[Optional[RingMatrix]] = [None]
        self.realized: list[IntMatrix] = [
            IntMatrix([[1] * order])  # the augmentation, realized
        ]
        for _ in range(length):
            self._extend()

    # -- plumbing ----------------------------------------------------------

    def _translate(self, vector: Sequence[int], g: int) -> list[int]:
        """g . vector on a rank-r realized module, block by block."""
        m = self.order
        out = [0] * len(vector)
        gh = self.mult[g]
        for base in range(0, len(vector), m):
            for h in range(m):
                val = vector[base + h]
                if val:
                    out[base + gh[h]] = val
        return out

    def _realize_columns(self, columns: Sequence[Sequence[int]]) -> IntMatrix:
        """Realization of the Z[G]-map sending generator j to columns[j]."""
        full = []
        for col in columns:
            for g in range(self.order):
                full.append(self._translate(col, g))
        return IntMatrix.from_columns(full, nrows=len(columns[0]))

    def _ring_columns(self, columns: Sequence[Sequence[int]]) -> RingMatrix:
        """Reshape realized generator images into a Z[G]-matrix (rows)."""
        m = self.order
        nrows = len(columns[0]) // m
        rows = []
        for i in range(nrows):
            row = []
            for col in columns:
                row.append(tuple(col[i * m : (i + 1) * m]))
            rows.append(tuple(row))
        return tuple(rows)

    # -- construction ------------------------------------------------------

    def _prune(self, chosen: list[list[int]]) -> list[list[int]]:
        """Drop generators whose orbit the remaining orbits already span.

        The forward greedy pass admits early kernel basis vectors that
        later, larger orbits swallow; one reverse sweep keeps the ranks
        near those of a minimal resolution.
        """
        keep = list(chosen)
        for idx in range(len(keep) - 1, -1, -1):
            if len(keep) == 1:
                break
            rest: list[list[int]] = []
            for t, v in enumerate(keep):
                if t != idx:
                    for g in range(self.order):
                        rest.append(self._translate(v, g))
            span = column_span_basis(
                IntMatrix.from_columns(rest, nrows=len(keep[idx]))
            )
            try:
                solve_exact(span, IntMatrix([[x] for x in keep[idx]]))
            except ValueError:
                continue
            del keep[idx]
        return keep

    def _extend(self) -> None:
        below = self.realized[-1]
        kernel = kernel_basis(below)
        if kernel.ncols == 0:
            self.ranks.append(0)
            self.diffs.append(tuple())
            self.realized.append(IntMatrix.zeros(below.ncols, 0))
            return
        chosen: list[list[int]] = []
        pool: list[list[int]] = []
        span: Optional[IntMatrix] = None
        for j in range(kernel.ncols):
            v = list(kernel.column(j))
            if span is not None:
                try:
                    solve_exact(span, IntMatrix([[x] for x in v]))
                    continue
                except ValueError:
                    pass
            chosen.append(v)
            for g in range(self.order):
                pool.append(self._translate(v, g))
            span = column_span_basis(
                IntMatrix.from_columns(pool, nrows=len(v))
            )
        chosen = self._prune(chosen)
        realized = self._realize_columns(chosen)
        # the greedy loop certified im = kernel lattice; re-check the
        # complex property on the realizations
        if not (below @ realized).is_zero:
            raise RuntimeError("resolution differentials fail d.d = 0")
        self.ranks.append(len(chosen))
        self.diffs.append(self._ring_columns(chosen))
        self.realized.append(realized)

    # -- cochain complexes -------------------------------------------------

    def augmentation_transpose(self, k: int) -> IntMatrix:
        """delta^{k-1}: Hom(F_{k-1}, Z) -> Hom(F_k, Z) for trivial Z.

        Entry (j, i) is the coefficient sum of the (i, j) entry of d_k.
        """
        if k < 1 or k >= len(self.ranks):
            raise ValueError(f"differential d_{k} not built")
        ring = self.diffs[k]
        rows = []
        for j in range(self.ranks[k]):
            rows.append([sum(ring[i][j]) for i in range(self.ranks[k - 1])])
        return IntMatrix(rows, ncols=self.ranks[k - 1])


@lru_cache(maxsize=32)
def _resolution(spec: GroupSpec, length: int) -> SmallResolution:
    return SmallResolution(spec, length)


@dataclass(frozen=True)
class ResolutionCohomology:
    """H^n(G; Z) with representatives on the small resolution's cochains."""

    spec: GroupSpec
    degree: int
    group: FinAb
    representatives: tuple[tuple[int, ...], ...]
    rank: int


def resolution_cohomology(spec: GroupSpec, n: int) -> ResolutionCohomology:
    """H^n(G; Z) from a greedily built small free resolution."""
    if n < 0:
        raise ValidationError("degree must be >= 0")
    res = _resolution(spec, n + 1)
    d_out = res.augmentation_transpose(n + 1)
    d_in = (
        res.augmentation_transpose(n)
        if n >= 1
        else IntMatrix.zeros(res.ranks[0], 0)
    )
    sq = subquotient(d_out, d_in)
    return ResolutionCohomology(spec, n, sq.group, sq.representatives, res.ranks[n])


def _validate_permutation(res: SmallResolution, perm: Sequence[int]) -> list[int]:
    m = res.order
    p = [int(x) for x in perm]
    if sorted(p) != list(range(m)) or p[0] != 0:
        raise ValidationError("not a permutation fixing the identity")
    for g in range(m):
        for h in range(m):
            if p[res.mult[g][h]] != res.mult[p[g]][p[h]]:
                raise ValidationError(
                    f"permutation is not multiplicative at pair ({g}, {h})"
                )
    return p


def _semilinear_realization(
    res: SmallResolution, columns: Sequence[Sequence[int]], perm: Sequence[int]
) -> IntMatrix:
    """Realize the semilinear map sending gen_j to columns[j].

    Semilinearity sends h.gen_j to theta(h).columns[j], so the (j, h)
    column is the theta(h)-translate of the base column.
    """
    full = []
    for col in columns:
        for g in range(res.order):
            full.append(res._translate(col, perm[g]))
    return IntMatrix.from_columns(full, nrows=len(columns[0]))


def resolution_action(
    spec: GroupSpec, perm: Sequence[int], n: int
) -> tuple[IntMatrix, FinAb]:
    """Matrix of the map an automorphism induces on H^n(G; Z).

    ``perm`` permutes the enumerated elements and must be a group
    automorphism.  The matrix acts on the representative basis of
    ``resolution_cohomology(spec, n)`` (columns = images of the
    generators, entries canonical mod the invariant orders).
    """
    if n < 0:
        raise ValidationError("degree must be >= 0")
    res = _resolution(spec, n + 1)
    p = _validate_permutation(res, perm)
    m = res.order
    # degree 0: gen -> gen realizes the identity lift of Z
    base_cols: list[list[int]] = [list(_identity_element(m))]
    lift_real = _semilinear_realization(res, base_cols, p)
    for k in range(1, n + 1):
        # commutation on generators: d_k(X_k gen_j) = X_{k-1}(d_k gen_j);
        # the semilinear realization of X_{k-1} supplies the twist itself
        real_dk = res.realized[k]
        rhs_cols = []
        for j in range(res.ranks[k]):
            col = [real_dk[i, j * m] for i in range(real_dk.nrows)]
            rhs_cols.append(list(lift_real.apply(col)))
        if not rhs_cols:
            base_cols = []
            lift_real = IntMatrix.zeros(0, 0)
            continue
        sol = solve_exact(
            res.realized[k],
            IntMatrix.from_columns(rhs_cols, nrows=res.realized[k].nrows),
        )
        base_cols = [
            [sol[i, j] for i in range(sol.nrows)] for j in range(res.ranks[k])
        ]
        lift_real = _semilinear_realization(res, base_cols, p)
    # induced map on degree-n cochains: phi -> phi . lift
    ring = res._ring_columns(base_cols) if base_cols else tuple()
    rows = []
    for j in range(res.ranks[n]):
        rows.append([sum(ring[i][j]) for i in range(res.ranks[n])])
    t_free = IntMatrix(rows, ncols=res.ranks[n])
    coh = resolution_cohomology(spec, n)
    d_out = res.augmentation_transpose(n + 1)
    d_in = (
        res.augmentation_transpose(n)
        if n >= 1
        else IntMatrix.zeros(res.ranks[0], 0)
    )
    reps = coh.representatives
    k = len(reps)
    if k == 0:
        return IntMatrix.zeros(0, 0), coh.group
    basis = IntMatrix.from_columns(
        [list(r) for r in reps], nrows=res.ranks[n]
    ).hstack(d_in)
    orders = (0,) * coh.group.free_rank + coh.group.torsion
    columns = []
    for r in reps:
        image = t_free.apply(r)
        if any(d_out.apply(image)):
            raise RuntimeError("induced map sent a cocycle off the kernel")
        coords = solve_exact(basis, IntMatrix([[x] for x in image]))
        col = []
        for t in range(k):
            c = coords[t, 0]
            col.append(c % orders[t] if orders[t] else c)
        columns.append(col)
    return IntMatrix.from_columns(columns, nrows=k), coh.group
