"""Block assembly of H^*(F; Z), automorphism actions, and H^*(F ⋊ Z; Z).

Every kernel in the library is built from pieces of pairwise coprime
order: the odd cyclic part Z_a, the odd cyclic part Z_b, and a 2-group
Q_{2^i}.  For 1 → Z_a → F → K → 1 with |K| prime to a, the higher rows
of the associated spectral sequence vanish (|K| is invertible on
a-torsion), so for n > 0

    H^n(F) = H^n(K) ⊕ (H^n(Z_a))^K,

with no extension ambiguity because the two blocks live at coprime
torsion.  Likewise H^n(Z_b × Q) = H^n(Z_b) ⊕ H^n(Q) for n > 0.  The
cyclic blocks come from the periodic formulas, the quaternion block is
re-derived from a small free resolution, and the K-invariants of
H^n(Z_a) are cut out by the chain-lifted action scalars.

An automorphism of F preserves every primary component, so its induced
map on H^n(F) is block diagonal in the decomposition above: a scalar on
each cyclic block and the resolution-derived matrix on the quaternion
block.  The cohomology of the mapping torus F ⋊_θ Z then falls out of
the two-term exact sequence

    0 → coker(θ* − 1 on H^{n-1}F) → H^n(F ⋊ Z) → ker(θ* − 1 on H^n F) → 0,

in which one side always vanishes here since H^odd(F) = 0.
"""

from __future__ import annotations

from math import gcd
from typing import Union

from ..errors import ValidationError
from ..groups import (
    Cyclic,
    GroupSpec,
    Metacyclic,
    Quaternion,
    QuaternionMap,
    Twist,
    ZaZbQ,
    ZbTimesQ,
    quaternion_map_permutation,
    theta_permutation,
    validate,
)
from ..intlinalg import FinAb, IntMatrix, endomorphism_ker_coker
from .periodic import cyclic_action_scalar, periodic_cohomology
from .resolution import resolution_action, resolution_cohomology

__all__ = [
    "assembled_cohomology",
    "induced_action",
    "fz_cohomology",
    "KernelAction",
]

KernelAction = Union[Twist, QuaternionMap]


def _a_invariant_order(a: int, units: list[int], n: int) -> int:
    """Order of the subgroup of H^n(Z_a; Z) fixed by t ↦ t^u for all u."""
    g = a
    for u in units:
        sigma = cyclic_action_scalar(a, u % a, n)
        g = gcd(g, sigma - 1)
    return g


def _acting_units(spec: GroupSpec) -> list[int]:
    """Units through which the complement conjugates the Z_a part."""
    if isinstance(spec, Metacyclic):
        return [spec.r]
    if isinstance(spec, ZaZbQ):
        return [spec.r, spec.r_x, spec.r_y]
    return []


def _even_block_orders(spec: GroupSpec, n: int) -> tuple[tuple[int, ...], ...]:
    """Cyclic block orders of H^n(F; Z) for even n ≥ 2, grouped as
    (a-part, b-part, quaternion part); trivial blocks come out empty."""
    a_part: tuple[int, ...] = ()
    b_part: tuple[int, ...] = ()
    q_part: tuple[int, ...] = ()
    if isinstance(spec, Cyclic):
        if spec.m > 1:
            a_part = (spec.m,)
    if isinstance(spec, (Metacyclic, ZaZbQ)):
        g = _a_invariant_order(spec.a, _acting_units(spec), n)
        if g > 1:
            a_part = (g,)
    if isinstance(spec, (Metacyclic, ZbTimesQ, ZaZbQ)) and spec.b > 1:
        b_part = (spec.b,)
    if isinstance(spec, (Quaternion, ZbTimesQ, ZaZbQ)):
        group = resolution_cohomology(Quaternion(spec.i), n).group
        if group.free_rank:
            raise RuntimeError(
                f"free rank {group.free_rank} in H^{n} of a finite 2-group"
            )
        q_part = group.torsion
    return a_part, b_part, q_part


def assembled_cohomology(spec: GroupSpec, n: int) -> FinAb:
    """H^n(F; Z) assembled from coprime blocks.

    Independent of the normalized-cochain engine: cyclic blocks use the
    periodic complex, the quaternion block a greedily built free
    resolution, and the semidirect gluing only coprimality.
    """
    validate(spec)
    if n < 0:
        raise ValidationError("degree must be ≥ 0")
    if isinstance(spec, Cyclic):
        return periodic_cohomology(spec.m, None, n)
    if isinstance(spec, Quaternion):
        return resolution_cohomology(spec, n).group
    if n == 0:
        return FinAb.free(1)
    if n % 2 == 1:
        return FinAb.trivial()
    a_part, b_part, q_part = _even_block_orders(spec, n)
    return FinAb.from_orders(a_part + b_part + q_part)


def _quaternion_action(
    i: int, qm: QuaternionMap, n: int
) -> tuple[IntMatrix, tuple[int, ...]]:
    """Matrix of the induced map on H^n(Q_{2^i}; Z), even n ≥ 2."""
    if n == 2:
        from ..closedform import q8_h2_action

        matrix, _ = q8_h2_action(i, qm)
        return matrix, (2, 2)
    _, perm = quaternion_map_permutation(i, qm)
    matrix, group = resolution_action(Quaternion(i), perm, n)
    if group.free_rank:
        raise RuntimeError(f"free rank in H^{n} of a finite 2-group")
    return matrix, group.torsion


def induced_action(
    spec: GroupSpec, action: KernelAction, n: int
) -> tuple[IntMatrix, tuple[int, ...]]:
    """Matrix of the map an automorphism of F induces on H^n(F; Z).

    Returns (matrix, orders): ``orders`` are the cyclic orders of the
    basis coordinates (0 marks a free line) and the matrix columns hold
    the images of those basis classes, entries reduced mod the orders.
    """
    if n < 0:
        raise ValidationError("degree must be ≥ 0")
    if isinstance(spec, Quaternion):
        if not isinstance(action, QuaternionMap):
            raise ValidationError(
                "a quaternion kernel takes a QuaternionMap action"
            )
        quaternion_map_permutation(spec.i, action)  # validates
    elif isinstance(spec, (Cyclic, Metacyclic, ZaZbQ)):
        if not isinstance(action, Twist):
            raise ValidationError(f"{type(spec).__name__} kernels take a Twist")
        theta_permutation(spec, action)  # validates
    else:
        raise ValidationError(
            f"no automorphism data is defined for {type(spec).__name__}"
        )
    if n == 0:
        return IntMatrix([[1]]), (0,)
    if n % 2 == 1:
        return IntMatrix.zeros(0, 0), ()

    scalars: list[int] = []
    orders: list[int] = []
    if isinstance(spec, Cyclic):
        if spec.m > 1:
            orders.append(spec.m)
            scalars.append(cyclic_action_scalar(spec.m, action.c_a % spec.m, n))
    if isinstance(spec, (Metacyclic, ZaZbQ)):
        g = _a_invariant_order(spec.a, _acting_units(spec), n)
        if g > 1:
            orders.append(g)
            scalars.append(cyclic_action_scalar(spec.a, action.c_a % spec.a, n) % g)
    if isinstance(spec, (Metacyclic, ZaZbQ)) and spec.b > 1:
        orders.append(spec.b)
        scalars.append(cyclic_action_scalar(spec.b, action.c_b % spec.b, n))

    q_block: IntMatrix | None = None
    if isinstance(spec, (Quaternion, ZaZbQ)):
        if isinstance(spec, Quaternion):
            qm = action
        else:
            qm = theta_permutation(spec, action).on_q
        q_block, q_orders = _quaternion_action(spec.i, qm, n)
        orders.extend(q_orders)

    k = len(orders)
    rows = [[0] * k for _ in range(k)]
    for t, s in enumerate(scalars):
        rows[t][t] = s % orders[t]
    if q_block is not None:
        base = len(scalars)
        for i in range(q_block.nrows):
            for j in range(q_block.ncols):
                rows[base + i][base + j] = q_block[i, j]
    return IntMatrix(rows, ncols=k), tuple(orders)


def _wang_piece(
    spec: GroupSpec, action: KernelAction, n: int
) -> tuple[FinAb, FinAb]:
    """(ker, coker) of θ* − 1 acting on H^n(F; Z)."""
    matrix, orders = induced_action(spec, action, n)
    if not orders:
        return FinAb.trivial(), FinAb.trivial()
    k = len(orders)
    shifted = IntMatrix(
        [[matrix[i, j] - (1 if i == j else 0) for j in range(k)] for i in range(k)],
        ncols=k,
    )
    return endomorphism_ker_coker(shifted, orders)


def fz_cohomology(spec: GroupSpec, action: KernelAction, n: int) -> FinAb:
    """H^n(F ⋊_θ Z; Z), assembled degreewise from the action on H^*(F).

    The extension over Z yields, for each n, the two-term exact sequence
    quoted in the module docstring; since H^odd(F) = 0 one of the two
    ends always vanishes, so the middle group is determined.
    """
    if n < 0:
        raise ValidationError("degree must be ≥ 0")
    if n == 0:
        induced_action(spec, action, 0)  # validates
        return FinAb.free(1)
    ker_top, _ = _wang_piece(spec, action, n)
    _, coker_below = _wang_piece(spec, action, n - 1)
    if not ker_top.is_trivial and not coker_below.is_trivial:
        raise RuntimeError(
            f"both ends of the degree-{n} sequence are nontrivial; "
            "the extension is not determined"
        )
    return coker_below.direct_sum(ker_top)
