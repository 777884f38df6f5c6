"""Cohomology of small finite groups from the normalized bar resolution.

Degree-n cochains are integer-valued functions on n-tuples of
*non-identity* group elements (the normalized complex); a tuple is
encoded as a mixed-radix integer with the first component least
significant, so the coboundary faces become arithmetic on digit strings
and the whole matrix can be emitted by vectorized numpy passes.  The
matrices are produced in transposed orientation (rows indexed by the
smaller side) because the sparse elimination behind
:func:`vcgring.oracle.sparse.padic_divisor_valuations` prefers it; the
elementary divisors are orientation-independent.

For integer coefficients the group in degree n >= 1 is read off the
divisors of the single matrix d^{n-1}: the free rank is zero (the
transfer annihilates positive-degree cohomology by the group order) and
ker d^n is a direct summand of the cochain module, so the torsion of
coker d^{n-1} is exactly H^n.  Every divisor run is certified against a
rank over a prime not dividing the group order.  For prime-modulus
coefficients the group is a vector space and two ranks suffice.

Representatives are a dense computation and only run below a size gate;
above it the group is still exact but ``representatives`` is None.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Mapping, Optional

import numpy as np

from vcgring.errors import CapacityError, ValidationError
from vcgring.groups import (
    Element,
    GroupSpec,
    enumerate_elements,
    generator_elements,
    group_order,
    multiplier,
    validate,
)
from vcgring.intlinalg import (
    FinAb,
    IntMatrix,
    cokernel_invariants,
    smith_normal_form,
    solve_exact,
    subquotient,
)
from vcgring.oracle.sparse import CscMatrix, modp_rank, padic_divisor_valuations

__all__ = [
    "BarCohomology",
    "TwistedCoefficients",
    "bar_cohomology",
    "bar_coboundary_csc",
    "bar_coboundary_columns",
    "bar_coboundary_matrix",
    "cochain_from_vector",
    "tuple_index",
]

ORDER_CAP = 24
_DEGREE_CAP_SMALL = 6  # group order <= 12
_DEGREE_CAP = 4
_BUILD_BYTES_GATE = 1_500_000_000
_REP_COST_GATE = 6_000_000

Cochain = dict[tuple[Element, ...], int]


@dataclass(frozen=True)
class TwistedCoefficients:
    """The module Z (``modulus`` 0) or Z_modulus with a unit action.

    ``units`` assigns a multiplier to each named group generator; the
    action extends along normal forms and is checked to be a
    homomorphism into the invertible residues on every element pair.
    Generators left out act trivially.
    """

    modulus: int
    units: tuple[tuple[str, int], ...]

    def __init__(self, modulus: int, units: Mapping[str, int] | None = None):
        if modulus < 0:
            raise ValidationError(f"modulus must be >= 0 (got {modulus})")
        object.__setattr__(self, "modulus", int(modulus))
        pairs = tuple(sorted((units or {}).items()))
        object.__setattr__(self, "units", tuple((k, int(v)) for k, v in pairs))

    @property
    def is_trivial(self) -> bool:
        return all(v == 1 for _, v in self.units)

    def describe(self) -> str:
        base = "Z" if self.modulus == 0 else f"Z_{self.modulus}"
        if self.is_trivial:
            return base
        action = ", ".join(f"{k}->{v}" for k, v in self.units)
        return f"{base} twisted ({action})"


@dataclass(frozen=True)
class BarCohomology:
    """One computed cohomology group with optional explicit cocycles."""

    spec: GroupSpec
    degree: int
    coefficients: TwistedCoefficients
    group: FinAb
    representatives: Optional[tuple[Cochain, ...]]


@lru_cache(maxsize=64)
def _group_data(spec: GroupSpec):
    """(elements, m, multiplication table) with the identity at index 0."""
    els = enumerate_elements(spec)
    order = len(els)
    idx = {g: k for k, g in enumerate(els)}
    mul = multiplier(spec)
    table = np.zeros((order, order), dtype=np.int64)
    for x, gx in enumerate(els):
        for y, gy in enumerate(els):
            table[x, y] = idx[mul(gx, gy)]
    table.setflags(write=False)
    return tuple(els), order - 1, table


def _multiplier_table(spec: GroupSpec, coeffs: TwistedCoefficients) -> np.ndarray:
    """Per-element multipliers, validated as a unit-valued homomorphism."""
    els, _, table = _group_data(spec)
    units = dict(coeffs.units)
    names = generator_elements(spec)
    unknown = set(units) - set(names)
    if unknown:
        raise ValidationError(
            f"multipliers given for unknown generators {sorted(unknown)}; "
            f"this kernel has {sorted(names)}"
        )
    a = coeffs.modulus
    mu = np.ones(len(els), dtype=np.int64)
    gen_names = list(names)
    for k, g in enumerate(els):
        v = 1
        for name, exp in zip(gen_names, g):
            u = units.get(name, 1)
            v *= u**exp
            if a:
                v %= a
        mu[k] = v
    if a:
        bad = [int(m) for m in mu if gcd(int(m), a) != 1]
    else:
        bad = [int(m) for m in mu if m not in (1, -1)]
    if bad:
        raise ValidationError(
            f"multiplier {bad[0]} is not a unit of the coefficient module"
        )
    prod = mu[:, None] * mu[None, :]
    composed = mu[table]
    if a:
        ok = (prod - composed) % a == 0
    else:
        ok = prod == composed
    if not ok.all():
        i, j = np.argwhere(~ok)[0]
        raise ValidationError(
            f"multipliers are not a homomorphism: witness pair "
            f"({els[int(i)]}, {els[int(j)]})"
        )
    return mu


def tuple_index(spec: GroupSpec, entries: tuple[Element, ...]) -> int:
    """Mixed-radix index of a tuple of non-identity elements."""
    els, m, _ = _group_data(spec)
    idx = {g: k for k, g in enumerate(els)}
    out = 0
    for pos, g in enumerate(reversed(entries)):
        k = idx[g]
        if k == 0:
            raise ValueError("normalized basis tuples exclude the identity")
        out = out * m + (k - 1)
    return out


def cochain_from_vector(spec: GroupSpec, n: int, vector) -> Cochain:
    """Decode a length-m^n coefficient vector into an explicit cochain."""
    els, m, _ = _group_data(spec)
    out: Cochain = {}
    for sigma, v in enumerate(vector):
        v = int(v)
        if not v:
            continue
        digits = []
        s = sigma
        for _ in range(n):
            digits.append(els[s % m + 1])
            s //= m
        out[tuple(digits)] = v
    return out


def _coboundary_coo(spec: GroupSpec, mu: np.ndarray, n: int, modulus: int):
    """Merged COO triple (rows, cols, vals) of d^n: C^n -> C^{n+1}.

    Row indices run over (n+1)-tuples, columns over n-tuples.  The
    first face carries the coefficient action of the dropped element.
    """
    _, m, table = _group_data(spec)
    est = (m ** (n + 1)) * (n + 3) * 24
    if est > _BUILD_BYTES_GATE:
        raise CapacityError(
            f"coboundary d^{n} needs ~{est / 1e9:.1f} GB of build workspace "
            f"(gate {_BUILD_BYTES_GATE / 1e9:.1f} GB)"
        )
    big = m ** (n + 1)
    sig = np.arange(big, dtype=np.int64)
    rows_l, cols_l, vals_l = [], [], []
    # face 0: drop the first entry; its multiplier acts on the value
    rows_l.append(sig)
    cols_l.append(sig // m)
    vals_l.append(mu[sig % m + 1])
    # faces 1..n: merge adjacent entries, dropping degenerate results
    for i in range(1, n + 1):
        lo = sig % (m ** (i - 1))
        d0 = (sig // (m ** (i - 1))) % m
        d1 = (sig // (m**i)) % m
        hi = sig // (m ** (i + 1))
        g = table[d0 + 1, d1 + 1]
        keep = g != 0
        newcol = (hi[keep] * m + (g[keep] - 1)) * (m ** (i - 1)) + lo[keep]
        rows_l.append(sig[keep])
        cols_l.append(newcol)
        vals_l.append(np.full(int(keep.sum()), (-1) ** i, dtype=np.int64))
    # final face: drop the last entry
    rows_l.append(sig)
    cols_l.append(sig % (m**n))
    vals_l.append(np.full(big, (-1) ** (n + 1), dtype=np.int64))
    rr = np.concatenate(rows_l)
    cc = np.concatenate(cols_l)
    vv = np.concatenate(vals_l)
    dom = m**n
    key = rr * dom + cc
    if len(key) == 0:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty, empty
    order = np.argsort(key, kind="stable")
    key, vv = key[order], vv[order]
    starts = np.concatenate(([0], np.flatnonzero(np.diff(key)) + 1))
    acc = np.add.reduceat(vv, starts)
    uk = key[starts]
    if modulus:
        acc %= modulus
    nz = acc != 0
    uk, acc = uk[nz], acc[nz]
    return uk // dom, uk % dom, acc


def bar_coboundary_csc(
    spec: GroupSpec, coeffs: TwistedCoefficients, n: int
) -> CscMatrix:
    """Transposed d^n as CSC: rows = n-tuples, columns = (n+1)-tuples.

    The COO merge above sorts by (row, col) of the original orientation,
    which is (col, row) of the transposed one, i.e. already CSC order.
    """
    _, m, _ = _group_data(spec)
    mu = _multiplier_table(spec, coeffs)
    rr, cc, vv = _coboundary_coo(spec, mu, n, coeffs.modulus)
    ncols = m ** (n + 1)
    counts = np.bincount(rr, minlength=ncols)
    indptr = np.zeros(ncols + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return CscMatrix(indptr, cc, vv, nrows=m**n, ncols=ncols)


def bar_coboundary_columns(
    spec: GroupSpec, coeffs: TwistedCoefficients, n: int
) -> list[dict[int, int]]:
    """d^n in original orientation as one {row: value} dict per column."""
    _, m, _ = _group_data(spec)
    mu = _multiplier_table(spec, coeffs)
    rr, cc, vv = _coboundary_coo(spec, mu, n, coeffs.modulus)
    columns: list[dict[int, int]] = [dict() for _ in range(m**n)]
    for r, c, v in zip(rr.tolist(), cc.tolist(), vv.tolist()):
        columns[c][r] = v
    return columns


def bar_coboundary_matrix(
    spec: GroupSpec, coeffs: TwistedCoefficients, n: int
) -> IntMatrix:
    """d^n as a dense IntMatrix (original orientation; small degrees only)."""
    _, m, _ = _group_data(spec)
    mu = _multiplier_table(spec, coeffs)
    rr, cc, vv = _coboundary_coo(spec, mu, n, coeffs.modulus)
    entries = {
        (int(r), int(c)): int(v)
        for r, c, v in zip(rr.tolist(), cc.tolist(), vv.tolist())
    }
    return IntMatrix.from_entries(m ** (n + 1), m**n, entries)


def _degree_cap(order: int) -> int:
    return _DEGREE_CAP_SMALL if order <= 12 else _DEGREE_CAP


def _check_caps(spec: GroupSpec, n: int) -> int:
    order = group_order(spec)
    if order > ORDER_CAP:
        raise CapacityError(
            f"group order {order} exceeds the resolution cap {ORDER_CAP}; "
            f"degree {n} would need {(order - 1) ** (n + 1)} basis tuples"
        )
    cap = _degree_cap(order)
    if n < 0:
        raise ValidationError("degree must be >= 0")
    if n > cap:
        raise CapacityError(
            f"degree {n} exceeds the cap {cap} for order {order} "
            f"(~{(order - 1) ** (n + 1):.2e} basis tuples in degree {n + 1})"
        )
    return order


def _certificate_prime(order: int) -> int:
    """Smallest prime not dividing the order."""
    q = 2
    while True:
        if all(q % d for d in range(2, q)) and order % q:
            return q
        q += 1


def _integral_torsion(spec: GroupSpec, coeffs: TwistedCoefficients, n: int) -> FinAb:
    """H^n with Z coefficients (n >= 1) from the divisors of d^{n-1}.

    Every divisor of the coboundary divides the group order (transfer),
    so the matrix rank equals its rank over any prime q coprime to the
    order; that rank is recomputed independently and must match the
    divisor count of every p-adic pass.
    """
    order = group_order(spec)
    csc = bar_coboundary_csc(spec, coeffs, n - 1)
    q = _certificate_prime(order)
    rank = modp_rank(csc, q)
    torsion: list[int] = []
    for p in _prime_factors(order):
        vp = 0
        o = order
        while o % p == 0:
            o //= p
            vp += 1
        vals = padic_divisor_valuations(csc, p, vp + 2)
        if vals and max(vals) > vp:
            raise RuntimeError(
                f"divisor valuation {max(vals)} exceeds v_{p}({order}) = {vp}; "
                f"the transfer bound rules this out, so the elimination is wrong"
            )
        if len(vals) != rank:
            raise RuntimeError(
                f"rank certificate failed at degree {n}: the {p}-adic pass "
                f"found {len(vals)} divisors but the rank over F_{q} is {rank}"
            )
        torsion.extend(p**v for v in vals if v >= 1)
    return FinAb.from_orders(torsion)


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _rep_cost(m: int, n: int) -> int:
    return (m ** (n + 1)) * (m**n) ** 2


def _integral_reps(
    spec: GroupSpec, coeffs: TwistedCoefficients, n: int, expect: FinAb
) -> Optional[tuple[Cochain, ...]]:
    _, m, _ = _group_data(spec)
    if _rep_cost(m, n) > _REP_COST_GATE:
        return None
    d_out = bar_coboundary_matrix(spec, coeffs, n)
    d_in = bar_coboundary_matrix(spec, coeffs, n - 1)
    result = subquotient(d_out, d_in)
    if result.group != expect:
        raise RuntimeError(
            f"dense subquotient {result.group} disagrees with the divisor "
            f"route {expect} at degree {n}"
        )
    return tuple(cochain_from_vector(spec, n, rep) for rep in result.representatives)


def _modp_dimension(spec: GroupSpec, coeffs: TwistedCoefficients, n: int) -> int:
    _, m, _ = _group_data(spec)
    p = coeffs.modulus
    rank_out = modp_rank(bar_coboundary_csc(spec, coeffs, n), p)
    rank_in = 0
    if n > 0:
        rank_in = modp_rank(bar_coboundary_csc(spec, coeffs, n - 1), p)
    return m**n - rank_out - rank_in


def _modp_reps(
    spec: GroupSpec, coeffs: TwistedCoefficients, n: int, dim: int
) -> Optional[tuple[Cochain, ...]]:
    """Kernel-modulo-image representatives over F_p by dense elimination."""
    _, m, _ = _group_data(spec)
    if (m ** (n + 1)) * (m**n) > _REP_COST_GATE // 2 or dim == 0:
        return None if dim else ()
    p = coeffs.modulus

    def dense(k: int) -> np.ndarray:
        mu = _multiplier_table(spec, coeffs)
        rr, cc, vv = _coboundary_coo(spec, mu, k, p)
        out = np.zeros((m ** (k + 1), m**k), dtype=np.int64)
        out[rr, cc] = vv % p
        return out

    def rref(a: np.ndarray) -> tuple[np.ndarray, list[int]]:
        a = a % p
        pivots: list[int] = []
        r = 0
        for c in range(a.shape[1]):
            rows = np.nonzero(a[r:, c])[0]
            if rows.size == 0:
                continue
            a[[r, r + rows[0]]] = a[[r + rows[0], r]]
            a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
            other = np.nonzero(a[:, c])[0]
            other = other[other != r]
            a[other] = (a[other] - np.outer(a[other, c], a[r])) % p
            pivots.append(c)
            r += 1
            if r == a.shape[0]:
                break
        return a, pivots

    echl, piv = rref(dense(n))
    free_cols = [c for c in range(m**n) if c not in set(piv)]
    # kernel basis: back-substitute each free column of d^n
    kernel = []
    for c in free_cols:
        v = np.zeros(m**n, dtype=np.int64)
        v[c] = 1
        for r, pc in enumerate(piv):
            v[pc] = (-echl[r, c]) % p
        kernel.append(v)
    image = dense(n - 1).T if n > 0 else np.zeros((0, m**n), dtype=np.int64)
    stack, _ = rref(image)
    stack = stack[np.any(stack, axis=1)]

    def reduce_vec(v: np.ndarray) -> np.ndarray:
        v = v % p
        for row in stack:
            lead = int(np.argmax(row != 0))
            if v[lead]:
                v = (v - v[lead] * row) % p
        return v

    reps: list[Cochain] = []
    taken: list[np.ndarray] = []
    for v in kernel:
        w = reduce_vec(v)
        for t in taken:
            lead = int(np.argmax(t != 0))
            if w[lead]:
                w = (w - w[lead] * pow(int(t[lead]), -1, p) * t) % p
        if w.any():
            taken.append(w)
            reps.append(cochain_from_vector(spec, n, w))
        if len(reps) == dim:
            break
    if len(reps) != dim:
        raise RuntimeError(
            f"found {len(reps)} independent cocycles but the rank count "
            f"demands {dim} at degree {n}"
        )
    return tuple(reps)


def _prime_power_dense(
    spec: GroupSpec, coeffs: TwistedCoefficients, n: int, p: int, k: int
) -> FinAb:
    """ker/im over Z_{p^k} at tiny sizes via Smith data of both maps."""
    _, m, _ = _group_data(spec)
    if _rep_cost(m, n) > _REP_COST_GATE:
        raise CapacityError(
            f"coefficient modulus {p}**{k} needs a dense kernel over "
            f"Z_{p**k}; degree {n} of this group is over the dense gate"
        )
    pk = p**k
    d_out = bar_coboundary_matrix(spec, coeffs, n)
    d_in = (
        bar_coboundary_matrix(spec, coeffs, n - 1)
        if n > 0
        else IntMatrix.zeros(m**n, 0)
    )
    snf = smith_normal_form(d_out)
    diag = list(snf.diagonal)
    nc = d_out.ncols
    scale = [pk // gcd(d, pk) if d else 1 for d in diag]
    scale += [1] * (nc - len(scale))
    lam = snf.V @ IntMatrix.from_diagonal(scale, nrows=nc, ncols=nc)
    rel = d_in.hstack(IntMatrix.from_diagonal([pk] * nc, nrows=nc, ncols=nc))
    coords = solve_exact(lam, rel)
    return cokernel_invariants(coords)


def _trivial_group_cohomology(coeffs: TwistedCoefficients, n: int) -> FinAb:
    if n > 0:
        return FinAb.trivial()
    if coeffs.modulus == 0:
        return FinAb.free(1)
    return FinAb.from_orders([coeffs.modulus])


def bar_cohomology(
    spec: GroupSpec, coeffs: TwistedCoefficients | None, n: int
) -> BarCohomology:
    """H^n(group; coeffs) with certified exact structure.

    ``coeffs`` None means untwisted integer coefficients.  Degree caps:
    6 when the group order is at most 12, otherwise 4 up to order 24.
    """
    validate(spec)
    if coeffs is None:
        coeffs = TwistedCoefficients(0)
    order = _check_caps(spec, n)
    if order == 1:
        group = _trivial_group_cohomology(coeffs, n)
        reps: Optional[tuple[Cochain, ...]]
        reps = ({(): 1},) if n == 0 and not group.is_trivial else ()
        return BarCohomology(spec, n, coeffs, group, reps)
    mu = _multiplier_table(spec, coeffs)
    a = coeffs.modulus
    if a == 0:
        if n == 0:
            if (mu == 1).all():
                return BarCohomology(spec, 0, coeffs, FinAb.free(1), ({(): 1},))
            return BarCohomology(spec, 0, coeffs, FinAb.trivial(), ())
        group = _integral_torsion(spec, coeffs, n)
        reps = _integral_reps(spec, coeffs, n, group)
        return BarCohomology(spec, n, coeffs, group, reps)
    if a == 1:
        return BarCohomology(spec, n, coeffs, FinAb.trivial(), ())
    factors = {p: 0 for p in _prime_factors(a)}
    for p in factors:
        while a % p == 0:
            a //= p
            factors[p] += 1
    group = FinAb.trivial()
    reps = None
    single_prime = list(factors.items())
    if len(single_prime) == 1 and single_prime[0][1] == 1:
        p = single_prime[0][0]
        if n == 0:
            dim = 1 if all((v - 1) % p == 0 for v in mu.tolist()) else 0
            group = FinAb.from_orders([p] * dim)
            reps = ({(): 1},) if dim else ()
            return BarCohomology(spec, 0, coeffs, group, reps)
        dim = _modp_dimension(spec, coeffs, n)
        group = FinAb.from_orders([p] * dim)
        reps = _modp_reps(spec, coeffs, n, dim)
        return BarCohomology(spec, n, coeffs, group, reps)
    for p, k in factors.items():
        part = TwistedCoefficients(
            p**k, {name: v % (p**k) for name, v in coeffs.units}
        )
        if k == 1:
            piece = bar_cohomology(spec, part, n).group
        else:
            piece = _prime_power_dense(spec, part, n, p, k)
        group = group.direct_sum(piece)
    return BarCohomology(spec, n, coeffs, group, None)
