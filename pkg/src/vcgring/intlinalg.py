"""Exact linear algebra over the integers.

Smith normal forms with recorded change-of-basis matrices, kernels,
cokernels, and subquotients of integer matrices, plus a canonical value
type for finitely generated abelian groups.  Everything runs on Python's
arbitrary-precision integers: no floats, no fixed-width arithmetic, no
rounding anywhere.

These routines are the ground truth that both the closed-form evaluator
and the resolution-based verifier lean on, so they favour exactness and
auditability over asymptotic cleverness.  The matrices they see directly
are at most a few hundred on a side; the large sparse boundary operators
of the verifier are reduced by special-purpose code before anything here
is invoked.
"""

from __future__ import annotations

import operator
from bisect import bisect_left, insort
from dataclasses import dataclass
from math import gcd, prod
from typing import Iterable, Sequence

from .errors import NotAChainComplexError

__all__ = [
    "IntMatrix",
    "FinAb",
    "SnfResult",
    "SubquotientResult",
    "smith_normal_form",
    "kernel_basis",
    "column_span_basis",
    "cokernel_invariants",
    "solve_exact",
    "subquotient",
    "endomorphism_ker_coker",
]


class IntMatrix:
    """An immutable integer matrix.

    Rows are stored densely (tuples of ints); a sparse ``entries`` view is
    derived on demand.  Equality is entrywise.
    """

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, rows: Iterable[Iterable[int]], *, ncols: int | None = None):
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if data:
            widths = {len(r) for r in data}
            if len(widths) != 1:
                raise ValueError("rows have inconsistent lengths")
            width = widths.pop()
            if ncols is not None and ncols != width:
                raise ValueError("ncols does not match row length")
        else:
            width = 0 if ncols is None else int(ncols)
        self.nrows = len(data)
        self.ncols = width
        self._rows = data

    # -- constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols=ncols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def from_entries(
        cls, nrows: int, ncols: int, entries: dict[tuple[int, int], int]
    ) -> "IntMatrix":
        rows = [[0] * ncols for _ in range(nrows)]
        for (i, j), v in entries.items():
            rows[i][j] = int(v)
        return cls(rows, ncols=ncols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], *, nrows: int | None = None) -> "IntMatrix":
        cols = [tuple(c) for c in columns]
        if cols:
            return cls(zip(*cols))
        return cls.zeros(0 if nrows is None else nrows, 0)

    @classmethod
    def from_diagonal(cls, values: Sequence[int], nrows: int | None = None, ncols: int | None = None) -> "IntMatrix":
        n = len(values)
        nr = n if nrows is None else nrows
        nc = n if ncols is None else ncols
        rows = [[0] * nc for _ in range(nr)]
        for t, v in enumerate(values):
            rows[t][t] = int(v)
        return cls(rows, ncols=nc)

    # -- views -------------------------------------------------------------

    def to_rows(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    @property
    def entries(self) -> dict[tuple[int, int], int]:
        return {
            (i, j): v
            for i, row in enumerate(self._rows)
            for j, v in enumerate(row)
            if v
        }

    def row(self, i: int) -> tuple[int, ...]:
        return self._rows[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self._rows)

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        return self._rows[i][j]

    @property
    def is_zero(self) -> bool:
        return all(not any(r) for r in self._rows)

    # -- arithmetic --------------------------------------------------------

    def transpose(self) -> "IntMatrix":
        return IntMatrix(zip(*self._rows), ncols=self.nrows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError(
                f"shape mismatch: ({self.nrows}×{self.ncols}) @ ({other.nrows}×{other.ncols})"
            )
        bcols = list(zip(*other._rows)) if other._rows else []
        if not bcols:
            return IntMatrix.zeros(self.nrows, other.ncols)
        out = [
            [sum(map(operator.mul, arow, bcol)) for bcol in bcols]
            for arow in self._rows
        ]
        return IntMatrix(out, ncols=other.ncols)

    def apply(self, vector: Sequence[int]) -> tuple[int, ...]:
        if len(vector) != self.ncols:
            raise ValueError("vector length does not match column count")
        return tuple(sum(map(operator.mul, row, vector)) for row in self._rows)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([[-x for x in r] for r in self._rows], ncols=self.ncols)

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.nrows != other.nrows:
            raise ValueError("row counts differ")
        return IntMatrix(
            [a + b for a, b in zip(self._rows, other._rows)],
            ncols=self.ncols + other.ncols,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return (
            self.nrows == other.nrows
            and self.ncols == other.ncols
            and self._rows == other._rows
        )

    def __hash__(self) -> int:
        return hash((self.nrows, self.ncols, self._rows))

    def __repr__(self) -> str:
        if self.nrows * self.ncols <= 36:
            body = ", ".join(str(list(r)) for r in self._rows)
            return f"IntMatrix([{body}])"
        return f"IntMatrix(<{self.nrows}×{self.ncols}>)"


def _merge_invariant_chain(orders: Iterable[int]) -> tuple[int, ...]:
    """Invariant-factor chain of ⊕ Z_{d} over the given cyclic orders ≥ 2.

    Uses only gcd/lcm refinement (no factoring), so arbitrarily large
    orders are fine.
    """
    vals = sorted(int(d) for d in orders)
    changed = True
    while changed:
        changed = False
        for i in range(len(vals)):
            for j in range(i + 1, len(vals)):
                a, b = vals[i], vals[j]
                if b % a:
                    g = gcd(a, b)
                    vals[i], vals[j] = g, a * b // g
                    changed = True
        if changed:
            vals.sort()
    return tuple(v for v in vals if v != 1)


@dataclass(frozen=True)
class FinAb:
    """A finitely generated abelian group in canonical form.

    ``free_rank`` copies of Z plus cyclic factors whose orders form the
    invariant-factor chain (each ≥ 2, each dividing the next).  Two values
    compare equal iff the groups are isomorphic.
    """

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        object.__setattr__(self, "torsion", tuple(int(t) for t in self.torsion))
        prev = 1
        for t in self.torsion:
            if t < 2:
                raise ValueError(f"torsion order {t} < 2; normalize first")
            if t % prev:
                raise ValueError(f"torsion orders {prev}, {t} violate the divisibility chain")
            prev = t

    @classmethod
    def trivial(cls) -> "FinAb":
        return cls(0, ())

    @classmethod
    def free(cls, rank: int) -> "FinAb":
        return cls(rank, ())

    @classmethod
    def from_orders(cls, orders: Iterable[int], free_rank: int = 0) -> "FinAb":
        """Canonicalize a direct sum of cyclic groups of the given orders.

        An order of 0 denotes a copy of Z; orders of 1 are dropped.
        """
        tors: list[int] = []
        free = free_rank
        for d in orders:
            d = int(d)
            if d < 0:
                d = -d
            if d == 0:
                free += 1
            elif d > 1:
                tors.append(d)
        return cls(free, _merge_invariant_chain(tors))

    def direct_sum(self, other: "FinAb") -> "FinAb":
        return FinAb.from_orders(
            self.torsion + other.torsion, self.free_rank + other.free_rank
        )

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def order(self) -> int | None:
        """Number of elements, or None when the group is infinite."""
        if self.free_rank:
            return None
        return prod(self.torsion)

    def exponent(self) -> int | None:
        """Smallest n ≥ 1 with n·x = 0 for all x, or None when infinite."""
        if self.free_rank:
            return None
        return self.torsion[-1] if self.torsion else 1

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z_{t}" for t in self.torsion)
        return " ⊕ ".join(parts) if parts else "0"


@dataclass(frozen=True)
class SnfResult:
    """Smith normal form ``U @ A @ V == D`` with U, V unimodular.

    The diagonal of D is nonnegative and forms a divisibility chain; zero
    entries come last.
    """

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        n = min(self.D.nrows, self.D.ncols)
        return tuple(self.D[t, t] for t in range(n))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


@dataclass(frozen=True)
class SubquotientResult:
    """ker/im subquotient together with one integer representative per
    generator (free generators first, then torsion generators in chain
    order)."""

    group: FinAb
    representatives: tuple[tuple[int, ...], ...]


# ---------------------------------------------------------------------------
# Smith reduction core.
#
# Naive corner-at-a-time elimination suffers catastrophic coefficient swell
# (entries square at every pivot; tens of thousands of bits by 26×26).  We
# instead alternate Hermite-style staircase passes: each pass feeds rows one
# at a time into an already-reduced staircase, so quotients stay small and
# entries remain near the size of the invariant factors.  Row operations are
# mirrored into U (and optionally the columns of U^{-1}, kept transposed);
# column passes run the same routine on the transpose, mirrored into the
# columns of V (kept transposed as `vt`).  A final local 2×2 gcd/lcm pass
# enforces the divisibility chain.
# ---------------------------------------------------------------------------


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s·a + t·b = g = gcd(a, b) ≥ 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _swap_rows(m, w, wit, i, k):
    m[i], m[k] = m[k], m[i]
    if w is not None:
        w[i], w[k] = w[k], w[i]
    if wit is not None:
        wit[i], wit[k] = wit[k], wit[i]


def _negate_row(m, w, wit, k):
    m[k] = [-x for x in m[k]]
    if w is not None:
        w[k] = [-x for x in w[k]]
    if wit is not None:
        wit[k] = [-x for x in wit[k]]


def _row_sub(m, w, wit, i, k, q):
    """row_i -= q · row_k."""
    rk = m[k]
    m[i] = [x - q * y for x, y in zip(m[i], rk)]
    if w is not None:
        wk = w[k]
        w[i] = [x - q * y for x, y in zip(w[i], wk)]
    if wit is not None:
        ri = wit[i]
        wit[k] = [x + q * y for x, y in zip(wit[k], ri)]


def _row_combine(m, w, wit, r, i, s, t, p2, q2):
    """(row_r, row_i) ← (s·row_r + t·row_i, p2·row_r + q2·row_i); s·q2 − t·p2 = 1."""
    mr, mi = m[r], m[i]
    m[r] = [s * x + t * y for x, y in zip(mr, mi)]
    m[i] = [p2 * x + q2 * y for x, y in zip(mr, mi)]
    if w is not None:
        wr, wi = w[r], w[i]
        w[r] = [s * x + t * y for x, y in zip(wr, wi)]
        w[i] = [p2 * x + q2 * y for x, y in zip(wr, wi)]
    if wit is not None:
        tr, ti = wit[r], wit[i]
        wit[r] = [q2 * x - p2 * y for x, y in zip(tr, ti)]
        wit[i] = [s * y - t * x for x, y in zip(tr, ti)]


def _hermite_pass(m, nr, nc, w, wit):
    """In-place reduction to reduced row echelon (Hermite) form.

    Rows are inserted one at a time into a staircase kept sorted by pivot
    column.  All work happens at the incoming row's *leading* column —
    exact subtraction when the pivot divides it, otherwise a unimodular
    pivot-steal that leaves an exact zero — so prefixes stay exactly zero
    and entry growth stays near the size of the pivots.  On return, rows
    0..T-1 carry the pivots in strictly increasing columns with entries
    above each pivot reduced modulo it; rows T.. are zero.  Returns the
    pivot column list.
    """
    pivcols: list[int] = []  # sorted; pivot t sits in row t
    for src in range(nr):
        while True:
            row = m[src]
            lead = -1
            for j, x in enumerate(row):
                if x:
                    lead = j
                    break
            if lead < 0:
                break
            pos = bisect_left(pivcols, lead)
            if pos == len(pivcols) or pivcols[pos] != lead:
                # New pivot: bubble the row up into its sorted slot.
                if m[src][lead] < 0:
                    _negate_row(m, w, wit, src)
                count = len(pivcols)
                if src != count:
                    _swap_rows(m, w, wit, count, src)
                for i in range(count, pos, -1):
                    _swap_rows(m, w, wit, i, i - 1)
                insort(pivcols, lead)
                break
            p = m[pos][lead]
            a = row[lead]
            q, r = divmod(a, p)
            if r == 0:
                _row_sub(m, w, wit, src, pos, q)
            else:
                g, s, tt = _xgcd(p, a)
                _row_combine(m, w, wit, pos, src, s, tt, -(a // g), p // g)
            # Either way the lead moved strictly right; go round again.
        # Keep the settled block canonical after every insertion: entries
        # above each pivot stay reduced modulo it.  Without this, pivot
        # tails feed unreduced values into later journeys and intermediate
        # entries blow up to megabit sizes.
        _reduce_above(m, w, wit, pivcols)
    return pivcols


def _reduce_above(m, w, wit, pivcols):
    for tp, pc in enumerate(pivcols):
        p = m[tp][pc]
        for t in range(tp):
            q = m[t][pc] // p
            if q:
                _row_sub(m, w, wit, t, tp, q)


def _is_diagonalish(m) -> bool:
    """True when every row and every column has at most one nonzero entry."""
    seen = set()
    for row in m:
        lead = -1
        for j, x in enumerate(row):
            if x:
                if lead >= 0:
                    return False
                lead = j
        if lead >= 0:
            if lead in seen:
                return False
            seen.add(lead)
    return True


def _col_swap(m, vt, j, k):
    for row in m:
        row[j], row[k] = row[k], row[j]
    if vt is not None:
        vt[j], vt[k] = vt[k], vt[j]


def _col_combine(m, vt, p, q, s, t, p2, q2):
    """(col_p, col_q) ← (s·col_p + t·col_q, p2·col_p + q2·col_q)."""
    for row in m:
        x, y = row[p], row[q]
        row[p] = s * x + t * y
        row[q] = p2 * x + q2 * y
    if vt is not None:
        vp, vq = vt[p], vt[q]
        vt[p] = [s * x + t * y for x, y in zip(vp, vq)]
        vt[q] = [p2 * x + q2 * y for x, y in zip(vp, vq)]


def _snf_core(m, nr, nc, want_u=False, want_v=False, want_uinv=False):
    """Reduce ``m`` (list of row lists, mutated) to Smith form.

    Returns ``(diag, u, vt, uinv_t)`` where ``diag`` lists the nonzero
    invariant factors in chain order, ``u`` is U as rows, ``vt`` holds the
    columns of V as rows, and ``uinv_t`` holds the columns of U^{-1} as
    rows.  Transform slots are None unless requested.
    """
    u = [[int(i == j) for j in range(nr)] for i in range(nr)] if want_u else None
    uit = [[int(i == j) for j in range(nr)] for i in range(nr)] if want_uinv else None
    vt = [[int(i == j) for j in range(nc)] for i in range(nc)] if want_v else None

    guard = 0
    while True:
        _hermite_pass(m, nr, nc, u, uit)
        if _is_diagonalish(m):
            break
        mt = [list(col) for col in zip(*m)] if nr and nc else [[] for _ in range(nc)]
        _hermite_pass(mt, nc, nr, vt, None)
        for i, col in enumerate(zip(*mt) if nc and nr else []):
            m[i] = list(col)
        if _is_diagonalish(m):
            break
        guard += 1
        if guard > 500:  # corner gcds decrease monotonically, so unreachable
            raise RuntimeError("Smith reduction did not converge")

    # Gather the scattered single nonzeros onto the main diagonal.
    limit = nr if nr < nc else nc
    diag: list[int] = []
    for k in range(limit):
        found = None
        for i in range(k, nr):
            row = m[i]
            for j in range(k, nc):
                if row[j]:
                    if found is None or j < found[1]:
                        found = (i, j)
                    break
        if found is None:
            break
        fi, fj = found
        if fi != k:
            _swap_rows(m, u, uit, k, fi)
        if fj != k:
            _col_swap(m, vt, k, fj)
        if m[k][k] < 0:
            _negate_row(m, u, uit, k)
        diag.append(m[k][k])

    # Enforce the divisibility chain with local 2×2 gcd/lcm blocks.
    changed = len(diag) > 1
    while changed:
        changed = False
        for k in range(len(diag) - 1):
            a, b = m[k][k], m[k + 1][k + 1]
            if b == 0 or (a and b % a == 0):
                continue
            if a == 0:  # move the zero past the nonzero
                _swap_rows(m, u, uit, k, k + 1)
                _col_swap(m, vt, k, k + 1)
            else:
                g, s, t = _xgcd(a, b)
                bg = b // g
                # diag(a,b) → diag(g, lcm): fold, column-combine, clear.
                _row_sub(m, u, uit, k, k + 1, -1)
                _col_combine(m, vt, k, k + 1, s, t, -bg, a // g)
                _row_sub(m, u, uit, k + 1, k, t * bg)
            diag[k], diag[k + 1] = m[k][k], m[k + 1][k + 1]
            changed = True
    while diag and diag[-1] == 0:
        diag.pop()
    return diag, u, vt, uit


def _as_row_lists(a: IntMatrix) -> list[list[int]]:
    return [list(r) for r in a._rows]  # noqa: SLF001 (module-internal)


def smith_normal_form(a: IntMatrix) -> SnfResult:
    """Smith normal form with transforms: returns U, D, V with U·A·V = D."""
    m = _as_row_lists(a)
    diag, u, vt, _ = _snf_core(m, a.nrows, a.ncols, want_u=True, want_v=True)
    d = IntMatrix.from_diagonal(diag, nrows=a.nrows, ncols=a.ncols)
    urows = u if u is not None else []
    vrows = vt if vt is not None else []
    return SnfResult(
        U=IntMatrix(urows, ncols=a.nrows),
        D=d,
        V=IntMatrix(zip(*vrows), ncols=a.ncols) if vrows else IntMatrix.zeros(0, 0),
    )


def invariant_factors(a: IntMatrix) -> tuple[int, ...]:
    """Nonzero diagonal of the Smith form (no transforms computed)."""
    m = _as_row_lists(a)
    diag, _, _, _ = _snf_core(m, a.nrows, a.ncols)
    return tuple(diag)


def cokernel_invariants(a: IntMatrix) -> FinAb:
    """Z^nrows modulo the span of the columns of ``a``, in canonical form."""
    diag = invariant_factors(a)
    torsion = tuple(d for d in diag if d > 1)
    return FinAb(a.nrows - len(diag), torsion)


def kernel_basis(a: IntMatrix) -> IntMatrix:
    """Columns form a basis of {x : a·x = 0}; the basis is saturated
    (any integer solution is an integer combination of it)."""
    m = _as_row_lists(a)
    diag, _, vt, _ = _snf_core(m, a.nrows, a.ncols, want_v=True)
    rank = len(diag)
    cols = [vt[t] for t in range(rank, a.ncols)]
    if not cols:
        return IntMatrix.zeros(a.ncols, 0)
    return IntMatrix(zip(*cols), ncols=len(cols))


def column_span_basis(a: IntMatrix) -> IntMatrix:
    """Columns form a basis of the lattice spanned by the columns of ``a``."""
    m = _as_row_lists(a)
    diag, _, _, uit = _snf_core(m, a.nrows, a.ncols, want_uinv=True)
    cols = [[d * x for x in uit[t]] for t, d in enumerate(diag)]
    if not cols:
        return IntMatrix.zeros(a.nrows, 0)
    return IntMatrix(zip(*cols), ncols=len(cols))


def solve_exact(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """Solve a·X = b over the integers; raises ValueError when no integer
    solution exists."""
    if a.nrows != b.nrows:
        raise ValueError("row counts differ between system and right-hand side")
    m = _as_row_lists(a)
    diag, u, vt, _ = _snf_core(m, a.nrows, a.ncols, want_u=True, want_v=True)
    rank = len(diag)
    ub = IntMatrix(u, ncols=a.nrows) @ b
    zrows: list[list[int]] = []
    for t in range(a.ncols):
        if t < rank:
            d = diag[t]
            row = []
            for x in ub.row(t):
                q, r = divmod(x, d)
                if r:
                    raise ValueError("no integer solution")
                row.append(q)
            zrows.append(row)
        else:
            zrows.append([0] * b.ncols)
    for t in range(rank, a.nrows):
        if any(ub.row(t)):
            raise ValueError("no integer solution")
    v = IntMatrix(zip(*vt), ncols=a.ncols) if vt else IntMatrix.zeros(0, 0)
    return v @ IntMatrix(zrows, ncols=b.ncols)


def subquotient(d_out: IntMatrix, d_in: IntMatrix) -> SubquotientResult:
    """ker(d_out)/im(d_in) for consecutive maps Z^l ←(d_out)— Z^n ←(d_in)— Z^m.

    Raises NotAChainComplexError (naming the first offending entry) unless
    d_out @ d_in = 0.  Representatives are vectors in Z^n, one per
    generator of the quotient, free generators first.
    """
    if d_out.ncols != d_in.nrows:
        raise ValueError(
            f"middle dimensions differ: d_out has {d_out.ncols} columns, "
            f"d_in has {d_in.nrows} rows"
        )
    composite = d_out @ d_in
    for i in range(composite.nrows):
        row = composite.row(i)
        for j, x in enumerate(row):
            if x:
                raise NotAChainComplexError(
                    f"d_out @ d_in is nonzero at entry ({i}, {j}): value {x}"
                )
    kern = kernel_basis(d_out)
    k = kern.ncols
    if k == 0:
        return SubquotientResult(FinAb.trivial(), ())
    coords = solve_exact(kern, d_in)  # saturation guarantees solvability
    m = _as_row_lists(coords)
    diag, _, _, uit = _snf_core(m, k, coords.ncols, want_uinv=True)
    rank = len(diag)
    torsion = tuple(d for d in diag if d > 1)
    group = FinAb(k - rank, torsion)
    gen_indices = list(range(rank, k)) + [t for t in range(rank) if diag[t] > 1]
    reps = tuple(kern.apply(uit[t]) for t in gen_indices)
    return SubquotientResult(group, reps)


def endomorphism_ker_coker(
    n: IntMatrix, orders: Sequence[int]
) -> tuple[FinAb, FinAb]:
    """Kernel and cokernel of the endomorphism x ↦ n·x of ⊕_i Z_{orders[i]}.

    An order of 0 denotes a copy of Z.  Raises ValueError when the matrix
    does not descend to the quotient moduli.
    """
    k = len(orders)
    if n.nrows != k or n.ncols != k:
        raise ValueError("matrix shape does not match the coefficient orders")
    orders = [int(d) for d in orders]
    for i in range(k):
        di = orders[i]
        for j in range(k):
            v = n[i, j] * orders[j]
            if (di and v % di) or (not di and v):
                raise ValueError(
                    f"map does not respect the coefficient orders at entry ({i}, {j})"
                )
    dmat = IntMatrix.from_diagonal(orders)
    coker = cokernel_invariants(n.hstack(dmat))
    # Kernel: the lattice L = {x : n·x ∈ D·Z^k} modulo D·Z^k.
    paired = kernel_basis(n.hstack(-dmat))
    proj = IntMatrix(paired._rows[:k], ncols=paired.ncols)  # noqa: SLF001
    lb = column_span_basis(proj)
    if lb.ncols == 0:
        return FinAb.trivial(), coker
    rel_cols = [dmat.column(i) for i in range(k) if orders[i]]
    if rel_cols:
        rels = solve_exact(lb, IntMatrix.from_columns(rel_cols))
        ker = cokernel_invariants(rels)
    else:
        ker = FinAb.free(lb.ncols)
    return ker, coker
