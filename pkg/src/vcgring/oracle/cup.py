"""Cup products on normalized cochains, and a representative-value replay
of the metacyclic-family product rules.

Two independent instruments live here:

* The front/back-face product on normalized cochains of a finite group
  (``aw_cup``), together with a coboundary evaluator and a per-prime
  classifier that decides membership in the coboundary span and the
  exact order of a cocycle's class.  These work at the cochain level and
  know nothing about closed formulas.

* ``paper_cup_oracle``: for the metacyclic kernel extended by Z, every
  product of ring generators is pinned down by coordinate values of the
  restricted classes inside the ambient cyclic groups.  The invariant and
  coinvariant generators are derived by explicit two-step kernel/cokernel
  arithmetic on chain-lifted action scalars, the products are multiplied
  out in those coordinates, and the coefficient on the target generator
  is recovered by exact division.  Mixed a/b products are killed by
  coprime orders, and the absence of cross terms is re-verified by
  computing the twisted middle cohomology that would host them.  Products
  of two odd-degree classes vanish because both factors restrict from the
  degree-1 edge of an index-Z subquotient, and squares of that edge live
  in a cohomological dimension the base Z does not have.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd
from typing import Mapping

from ..closedform import CohClass
from ..errors import CapacityError, ValidationError
from ..groups import GroupSpec, Metacyclic, Twist, group_order, validate
from .bar import (
    Cochain,
    TwistedCoefficients,
    bar_coboundary_columns,
    tuple_index,
)
from .periodic import cyclic_action_scalar, periodic_cohomology

__all__ = [
    "aw_cup",
    "cochain_vector",
    "coboundary_apply",
    "is_cocycle",
    "CocycleClassifier",
    "paper_cup_oracle",
]

Vector = Mapping[int, int]

_CLASSIFIER_AMBIENT_CAP = 50_000


def _normalized(vec: Vector) -> dict[int, int]:
    return {k: int(v) for k, v in vec.items() if int(v)}


def cochain_vector(spec: GroupSpec, cochain: Cochain) -> dict[int, int]:
    """Sparse index form of an explicit {tuple: value} cochain."""
    return _normalized(
        {tuple_index(spec, key): value for key, value in cochain.items()}
    )


def aw_cup(
    spec: GroupSpec, f: Vector, p_deg: int, g: Vector, q_deg: int
) -> dict[int, int]:
    """Front/back-face product of normalized cochains (integer values).

    The basis index packs tuple entries with the first component least
    significant, so the front p entries of a (p+q)-tuple are ``index mod
    m^p`` and the back q entries are the quotient: the product cochain is
    supported exactly on the pairwise combinations.
    """
    validate(spec)
    if p_deg < 0 or q_deg < 0:
        raise ValidationError("cochain degrees must be ≥ 0")
    m = group_order(spec) - 1
    shift = m**p_deg
    out: dict[int, int] = {}
    for lo, fv in f.items():
        if not 0 <= lo < shift:
            raise ValidationError(f"index {lo} out of range for degree {p_deg}")
        for hi, gv in g.items():
            if not 0 <= hi < m**q_deg:
                raise ValidationError(
                    f"index {hi} out of range for degree {q_deg}"
                )
            v = fv * gv
            if v:
                out[lo + hi * shift] = v
    return _normalized(out)


def coboundary_apply(spec: GroupSpec, n: int, vec: Vector) -> dict[int, int]:
    """The degree-(n+1) coboundary of an integer n-cochain."""
    columns = bar_coboundary_columns(spec, TwistedCoefficients(0), n)
    out: dict[int, int] = {}
    for c, value in vec.items():
        if not value:
            continue
        for r, dv in columns[c].items():
            out[r] = out.get(r, 0) + value * dv
    return _normalized(out)


def is_cocycle(spec: GroupSpec, n: int, vec: Vector) -> bool:
    return not coboundary_apply(spec, n, vec)


def _prime_factors(order: int) -> list[tuple[int, int]]:
    out = []
    rest = order
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            out.append((p, e))
        p += 1
    if rest > 1:
        out.append((rest, 1))
    return out


class CocycleClassifier:
    """Decides coboundary membership and class orders in one bar degree.

    For each prime p dividing the group order, the image of the previous
    coboundary is reduced into a residue basis mod p^(v_p + 2).  A cocycle
    z reduces to zero there iff the p-part of its class is killed: any
    witness z = image + p^e·w forces w to be a cocycle (cochains are
    torsion-free), and p^e annihilates the p-part of every class because
    the exponent divides the group order.  The p-order of a class is the
    least power whose multiple reduces to zero, and the full order is the
    product over primes.
    """

    def __init__(self, spec: GroupSpec, n: int):
        validate(spec)
        if n < 1:
            raise ValidationError("classification needs degree ≥ 1")
        order = group_order(spec)
        m = order - 1
        if m**n > _CLASSIFIER_AMBIENT_CAP:
            raise CapacityError(
                f"degree-{n} ambient {m**n} exceeds the classifier cap "
                f"{_CLASSIFIER_AMBIENT_CAP}"
            )
        self.spec = spec
        self.degree = n
        self._bases = []
        image = bar_coboundary_columns(spec, TwistedCoefficients(0), n - 1)
        from .sparse import ResidueBasis

        for p, vp in _prime_factors(order):
            basis = ResidueBasis(p, vp + 2)
            for column in image:
                basis.insert(column)
            self._bases.append((p, vp, basis))

    def class_order(self, vec: Vector) -> int:
        """Order of the class of a degree-n cocycle (1 = coboundary)."""
        z = _normalized(vec)
        if not is_cocycle(self.spec, self.degree, z):
            raise ValidationError("vector is not a cocycle")
        total = 1
        for p, vp, basis in self._bases:
            for t in range(vp + 1):
                scaled = {r: v * p**t for r, v in z.items()}
                if not basis.reduce(scaled):
                    total *= p**t
                    break
            else:
                raise RuntimeError(
                    f"class order at p={p} exceeds the group's p-part"
                )
        return total

    def is_coboundary(self, vec: Vector) -> bool:
        return self.class_order(vec) == 1


# ---------------------------------------------------------------------------
# Metacyclic-family product replay
# ---------------------------------------------------------------------------


_F1_SYMBOL = re.compile(r"(phi|psi)_([ab])(?:\^(\d+))?$")


@dataclass(frozen=True)
class _Generator:
    kind: str  # "phi" | "psi" | "eta" | "1"
    side: str  # "a" | "b" | ""
    index: int
    degree: int


def _parse_generator(symbol: str) -> _Generator:
    if symbol == "1":
        return _Generator("1", "", 0, 0)
    if symbol == "eta":
        return _Generator("eta", "", 0, 1)
    m = _F1_SYMBOL.fullmatch(symbol)
    if m is None:
        raise ValidationError(f"unknown metacyclic-family symbol {symbol!r}")
    j = int(m.group(3)) if m.group(3) else 1
    if j < 1:
        raise ValidationError(f"exponent must be ≥ 1 in {symbol!r}")
    degree = 2 * j + (1 if m.group(1) == "psi" else 0)
    return _Generator(m.group(1), m.group(2), j, degree)


def _symbol(kind: str, side: str, j: int) -> str:
    return f"{kind}_{side}" + (f"^{j}" if j != 1 else "")


@dataclass(frozen=True)
class _Ladder:
    """Derived coordinate data for one even degree 2t on one side."""

    invariant_order: int  # order of the twist-invariant subgroup
    even_value: int  # coordinate of the invariant generator
    odd_value: int  # coordinate of the coinvariant generator


def _a_ladder(spec: Metacyclic, twist: Twist, t: int) -> _Ladder:
    """Two-step kernel data on the Z_a side in degree 2t.

    Step 1: the complement Z_b acts on H^{2t}(Z_a) ≅ Z_a through the
    chain-lifted scalar of t ↦ t^r, leaving the subgroup generated by
    a/gcd(a, σ_r − 1).  Step 2: the twist acts on that subgroup through
    the scalar of t ↦ t^{c_a}; its kernel and cokernel there are both
    cyclic of order gcd(·, σ_{c_a} − 1), generated by the values below.
    """
    a = spec.a
    if a == 1:
        return _Ladder(1, 0, 0)
    sigma_r = cyclic_action_scalar(a, spec.r % a, 2 * t)
    delta = gcd(a, sigma_r - 1)
    sigma_ca = cyclic_action_scalar(a, twist.c_a % a, 2 * t)
    inv = gcd(delta, sigma_ca - 1)
    return _Ladder(inv, (a // inv) % a, (a // delta) % a)


def _b_ladder(spec: Metacyclic, twist: Twist, t: int) -> _Ladder:
    b = spec.b
    if b == 1:
        return _Ladder(1, 0, 0)
    sigma_cb = cyclic_action_scalar(b, twist.c_b % b, 2 * t)
    inv = gcd(b, sigma_cb - 1)
    return _Ladder(inv, (b // inv) % b, 1)


def _verify_no_cross_terms(
    spec: Metacyclic, p_deg: int, q_deg: int
) -> None:
    """Check H^{p}(Z_b; H^{q}(Z_a)) = 0 at the bidegree that would host a
    mixed product, using the twisted periodic complex."""
    if spec.b == 1 or spec.a == 1:
        return
    sigma = cyclic_action_scalar(spec.a, spec.r % spec.a, q_deg)
    coeffs = TwistedCoefficients(spec.a, {"a": sigma})
    group = periodic_cohomology(spec.b, coeffs, p_deg)
    if not group.is_trivial:
        raise RuntimeError(
            f"twisted middle group H^{p_deg}(Z_b; H^{q_deg}(Z_a)) = {group} "
            "is nonzero; the mixed product is not forced to vanish"
        )


def _exact_coefficient(value: int, target: int, modulus: int, order: int) -> int:
    """λ with λ·target ≡ value (mod modulus), reduced mod order."""
    if order <= 1:
        return 0
    v = value % modulus
    lam, rem = divmod(v, target)
    if rem:
        raise RuntimeError(
            f"replay: value {v} is not a multiple of the target generator "
            f"{target} mod {modulus}"
        )
    return lam % order


def paper_cup_oracle(
    spec: Metacyclic, twist: Twist, lhs: str, rhs: str
) -> CohClass:
    """Product of two metacyclic-family ring generators, replayed through
    restriction coordinates instead of the closed product table."""
    if not isinstance(spec, Metacyclic):
        raise ValidationError("the replay covers the metacyclic kernel family")
    validate(spec, twist)
    gl, gr = _parse_generator(lhs), _parse_generator(rhs)
    degree = gl.degree + gr.degree
    if gl.kind == "1":
        return CohClass.of(degree, {rhs: 1})
    if gr.kind == "1":
        return CohClass.of(degree, {lhs: 1})
    # order the pair: even factor (phi) first when there is one
    if gl.degree % 2:
        gl, gr = gr, gl
    if gl.degree % 2 == 1:
        # two odd factors: both come from the degree-1 edge over Z, and
        # H^2(Z; -) = 0, so the product has nowhere to live
        return CohClass.zero(degree)
    if gr.kind == "eta":
        if gl.side == "a":
            lad_i = _a_ladder(spec, twist, gl.index)
            lam = _exact_coefficient(
                lad_i.even_value, lad_i.odd_value, spec.a, lad_i.invariant_order
            ) if spec.a > 1 else 0
            return CohClass.of(degree, {_symbol("psi", "a", gl.index): lam})
        lad_i = _b_ladder(spec, twist, gl.index)
        lam = _exact_coefficient(
            lad_i.even_value, lad_i.odd_value, spec.b, lad_i.invariant_order
        ) if spec.b > 1 else 0
        return CohClass.of(degree, {_symbol("psi", "b", gl.index): lam})
    if gl.side != gr.side:
        # coprime orders kill the product; re-derive that the spectral
        # bidegree which could carry a mixed term is actually zero
        even_l = 2 * gl.index
        even_r = 2 * gr.index
        if gl.side == "a":
            _verify_no_cross_terms(spec, even_r, even_l)
        else:
            _verify_no_cross_terms(spec, even_l, even_r)
        o1 = _f1_generator_order(spec, twist, gl)
        o2 = _f1_generator_order(spec, twist, gr)
        if gcd(o1, o2) != 1:
            raise RuntimeError(
                f"mixed-side orders {o1}, {o2} are not coprime"
            )
        return CohClass.zero(degree)
    side = gl.side
    i, j = gl.index, gr.index
    ladder = _a_ladder if side == "a" else _b_ladder
    modulus = spec.a if side == "a" else spec.b
    if modulus == 1:
        return CohClass.zero(degree)
    lad_i = ladder(spec, twist, i)
    lad_j = ladder(spec, twist, j)
    lad_t = ladder(spec, twist, i + j)
    if gr.kind == "phi":
        value = lad_i.even_value * lad_j.even_value
        target, out_kind = lad_t.even_value, "phi"
    else:
        value = lad_i.even_value * lad_j.odd_value
        target, out_kind = lad_t.odd_value, "psi"
    if lad_t.invariant_order <= 1 or target == 0:
        return CohClass.zero(degree)
    lam = _exact_coefficient(value, target, modulus, lad_t.invariant_order)
    return CohClass.of(degree, {_symbol(out_kind, side, i + j): lam})


def _f1_generator_order(spec: Metacyclic, twist: Twist, g: _Generator) -> int:
    lad = (_a_ladder if g.side == "a" else _b_ladder)(spec, twist, g.index)
    return lad.invariant_order
