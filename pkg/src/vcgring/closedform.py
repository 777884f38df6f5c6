"""Gcd-formula evaluation of cohomology for the two semidirect families.

For a finite group F with periodic integral cohomology, each cohomology
group of F ⋊ Z is the invariants (even degree) or coinvariants (odd
degree) of the generator action on H^*(F; Z), and both reduce to explicit
gcd expressions in the twist parameters.  This module evaluates those
expressions directly: cohomology groups with their named cyclic summands,
generator-level cup products, and the cup-product periodicity class.

Everything here is plain integer arithmetic.  The resolution-based engine
in ``vcgring.oracle`` re-derives the same answers independently; the two
paths are compared by the verification harness and the test suite.

Generator symbol conventions (used in ``CohClass`` terms and CLI output):

* ``1`` — the unit in degree 0; ``eta`` — the free degree-1 class.
* Family 1 (metacyclic kernel): ``phi_a^j`` / ``phi_b^j`` in degree 2j and
  ``psi_a^j`` / ``psi_b^j`` in degree 2j+1, of additive orders A_j and B_j.
* Quaternionic kernels: monomials in ``alpha_2^j`` (the order-ε_j class in
  degree 2j), ``beta_2`` (order b), ``gamma_2`` / ``gamma_2'`` (order 2)
  and ``delta_4`` (order 2^i), written with factors space-separated, e.g.
  ``gamma_2 delta_4^2``.  A ``t_`` prefix marks the odd-degree companion
  of an even-degree class of F ⋊ Z.

The exponent suffix ``^j`` is omitted when j = 1.  The b-side order ladder
is B_j = gcd(c_b^j − 1, b) with the index running uniformly with the
degree, mirroring A_j = gcd(c_a^j − 1, ε_j).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Union

from .errors import RingElementError, ValidationError
from .groups import (
    Cyclic,
    GroupSpec,
    Metacyclic,
    Quaternion,
    QuaternionMap,
    Twist,
    ZaZbQ,
    ZbTimesQ,
    quaternion_map_permutation,
    validate,
)
from .intlinalg import FinAb, IntMatrix


def _gcd_pow(base: int, exp: int, modulus: int) -> int:
    """gcd(base**exp − 1, modulus), without forming the full power."""
    if modulus == 1:
        return 1
    return math.gcd(pow(base, exp, modulus) - 1, modulus)


def _mult_order(unit: int, modulus: int) -> int:
    if modulus == 1:
        return 1
    u = unit % modulus
    if math.gcd(u, modulus) != 1:
        raise ValidationError(f"{unit} is not a unit modulo {modulus}")
    order, acc = 1, u
    while acc != 1:
        acc = acc * u % modulus
        order += 1
    return order


@dataclass(frozen=True)
class DerivedInvariants:
    """The gcd ladders and multiplicative orders attached to a spec + twist.

    ``delta``/``eps`` depend only on the kernel, ``A``/``B``/``C`` also on
    the twist.  All ladders are periodic in j with period dividing ``p``.
    ``q`` is the quaternion factor's order (None for family 1).
    """

    a: int
    b: int
    r: int
    c_a: int
    c_b: int
    d: int
    d_ca: int
    d_cb: int
    p: int
    q: Optional[int] = None
    k: Optional[int] = None
    r_x: Optional[int] = None
    r_y: Optional[int] = None
    d_k: Optional[int] = None

    def delta(self, j: int) -> int:
        return _gcd_pow(self.r, j, self.a)

    def eps(self, j: int) -> int:
        if self.r_x is None:
            return self.delta(j)
        assert self.r_y is not None
        g = math.gcd(self.delta(j), _gcd_pow(self.r_x, j, self.a))
        return math.gcd(g, _gcd_pow(self.r_y, j, self.a))

    def A(self, j: int) -> int:
        return _gcd_pow(self.c_a, j, self.eps(j))

    def B(self, j: int) -> int:
        return _gcd_pow(self.c_b, j, self.b)

    def C(self, j: int) -> int:
        if self.q is None or self.k is None:
            raise ValidationError("C_j needs a quaternion factor in the kernel")
        return _gcd_pow(self.k, j, self.q)


def invariants(
    spec: Union[Metacyclic, ZaZbQ], twist: Optional[Twist] = None
) -> DerivedInvariants:
    """Validate spec (+ twist, when given) and tabulate the derived data."""
    validate(spec, twist)
    tw = twist if twist is not None else Twist()
    if isinstance(spec, Metacyclic):
        d = _mult_order(spec.r, spec.a)
        d_ca = _mult_order(tw.c_a, spec.a)
        d_cb = _mult_order(tw.c_b, spec.b)
        return DerivedInvariants(
            a=spec.a,
            b=spec.b,
            r=spec.r,
            c_a=tw.c_a,
            c_b=tw.c_b,
            d=d,
            d_ca=d_ca,
            d_cb=d_cb,
            p=math.lcm(d, d_ca, d_cb),
        )
    if isinstance(spec, ZaZbQ):
        q = 1 << spec.i
        d = _mult_order(spec.r, spec.a)
        d_ca = _mult_order(tw.c_a, spec.a)
        d_cb = _mult_order(tw.c_b, spec.b)
        d_k = _mult_order(tw.k, q)
        return DerivedInvariants(
            a=spec.a,
            b=spec.b,
            r=spec.r,
            c_a=tw.c_a,
            c_b=tw.c_b,
            d=d,
            d_ca=d_ca,
            d_cb=d_cb,
            p=math.lcm(d, d_ca, d_cb, d_k),
            q=q,
            k=tw.k,
            r_x=spec.r_x,
            r_y=spec.r_y,
            d_k=d_k,
        )
    raise ValidationError(
        f"derived invariants are defined for the semidirect kernels, not {spec!r}"
    )


# --------------------------------------------------------------------------
# Cohomology classes and generator symbols


def _pow_name(base: str, j: int) -> str:
    return base if j == 1 else f"{base}^{j}"


@dataclass(frozen=True)
class CohClass:
    """An integer combination of same-degree generator symbols."""

    degree: int
    terms: tuple[tuple[str, int], ...]

    @staticmethod
    def of(degree: int, terms: Union[Mapping[str, int], Iterable[tuple[str, int]]]) -> "CohClass":
        items = terms.items() if isinstance(terms, Mapping) else terms
        merged: dict[str, int] = {}
        for symbol, coeff in items:
            merged[symbol] = merged.get(symbol, 0) + coeff
        kept = tuple(sorted((s, c) for s, c in merged.items() if c != 0))
        return CohClass(degree, kept)

    @staticmethod
    def zero(degree: int) -> "CohClass":
        return CohClass(degree, ())

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, symbol: str) -> int:
        return dict(self.terms).get(symbol, 0)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for symbol, coeff in self.terms:
            if symbol == "1":
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(symbol)
            else:
                parts.append(f"{coeff}*{symbol}")
        return " + ".join(parts)


_F1_RE = re.compile(r"(phi|psi)_([ab])(?:\^(\d+))?")


def _parse_family1(symbol: str) -> tuple[str, int, int]:
    """Return (kind, index, degree) for a metacyclic-family symbol."""
    if symbol == "1":
        return ("1", 0, 0)
    if symbol == "eta":
        return ("eta", 0, 1)
    m = _F1_RE.fullmatch(symbol)
    if m is None:
        raise RingElementError(f"unknown generator symbol {symbol!r} for this family")
    j = int(m.group(3)) if m.group(3) else 1
    if j < 1:
        raise RingElementError(f"exponent must be ≥ 1 in {symbol!r}")
    kind = f"{m.group(1)}_{m.group(2)}"
    degree = 2 * j + (1 if m.group(1) == "psi" else 0)
    return (kind, j, degree)


@dataclass(frozen=True)
class _QMono:
    """Normal-form monomial for the quaternionic (and cyclic) finite rings.

    ``alpha`` is the index j of the degree-2j a-sector generator (0 when
    absent), ``beta`` the exponent of the degree-2 b-sector generator,
    ``gamma``/``gammap`` are 0/1 flags, ``delta`` the degree-4 exponent.
    """

    alpha: int = 0
    beta: int = 0
    gamma: int = 0
    gammap: int = 0
    delta: int = 0

    @property
    def degree(self) -> int:
        return 2 * (self.alpha + self.beta + self.gamma + self.gammap) + 4 * self.delta

    def name(self) -> str:
        parts = []
        if self.alpha:
            parts.append(_pow_name("alpha_2", self.alpha))
        if self.beta:
            parts.append(_pow_name("beta_2", self.beta))
        if self.gamma:
            parts.append("gamma_2")
        if self.gammap:
            parts.append("gamma_2'")
        if self.delta:
            parts.append(_pow_name("delta_4", self.delta))
        return " ".join(parts) if parts else "1"


_QFACTOR_RE = re.compile(r"(alpha_2|beta_2|gamma_2'|gamma_2|delta_4)(?:\^(\d+))?")

_ALLOWED_FACTORS = {
    Cyclic: {"alpha_2"},
    Quaternion: {"gamma_2", "gamma_2'", "delta_4"},
    ZbTimesQ: {"beta_2", "gamma_2", "gamma_2'", "delta_4"},
    ZaZbQ: {"alpha_2", "beta_2", "gamma_2", "gamma_2'", "delta_4"},
}


def _parse_qmono(spec: GroupSpec, symbol: str) -> _QMono:
    if symbol == "1":
        return _QMono()
    allowed = _ALLOWED_FACTORS[type(spec)]
    seen: dict[str, int] = {}
    for factor in symbol.split():
        m = _QFACTOR_RE.fullmatch(factor)
        if m is None or m.group(1) not in allowed:
            raise RingElementError(
                f"unknown generator symbol {symbol!r} for this family"
            )
        exp = int(m.group(2)) if m.group(2) else 1
        if exp < 1:
            raise RingElementError(f"exponent must be ≥ 1 in {symbol!r}")
        if m.group(1) in seen:
            raise RingElementError(f"{symbol!r} repeats a factor")
        seen[m.group(1)] = exp
    mono = _QMono(
        alpha=seen.get("alpha_2", 0),
        beta=seen.get("beta_2", 0),
        gamma=seen.get("gamma_2", 0),
        gammap=seen.get("gamma_2'", 0),
        delta=seen.get("delta_4", 0),
    )
    if mono.gamma > 1 or mono.gammap > 1:
        raise RingElementError(f"{symbol!r} is not a basis monomial")
    sectors = bool(mono.alpha) + bool(mono.beta) + bool(
        mono.gamma or mono.gammap or mono.delta
    )
    if sectors > 1 or (mono.gamma and mono.gammap):
        raise RingElementError(f"{symbol!r} is not a basis monomial")
    return mono


def _qmono_order(spec: GroupSpec, inv: Optional[DerivedInvariants], mono: _QMono) -> int:
    """Additive order of a basis monomial; 0 means infinite (the unit)."""
    if isinstance(spec, Cyclic):
        return spec.m if mono.alpha else 0
    if mono.alpha:
        assert inv is not None
        return inv.eps(mono.alpha)
    if mono.beta:
        return spec.b  # type: ignore[union-attr]
    if mono.gamma or mono.gammap:
        return 2
    if mono.delta:
        return 1 << spec.i  # type: ignore[union-attr]
    return 0


def _qmono_mul(
    spec: GroupSpec, inv: Optional[DerivedInvariants], u: _QMono, v: _QMono
) -> tuple[int, _QMono]:
    """Product of two basis monomials as (coefficient, basis monomial)."""
    if u == _QMono():
        return 1, v
    if v == _QMono():
        return 1, u
    if isinstance(spec, Cyclic):
        return 1, _QMono(alpha=u.alpha + v.alpha)
    if u.alpha or v.alpha:
        if u.alpha and v.alpha:
            assert inv is not None
            i, j = u.alpha, v.alpha
            num = inv.a * inv.eps(i + j)
            den = inv.eps(i) * inv.eps(j)
            coeff, rem = divmod(num, den)
            if rem:
                raise RuntimeError(
                    f"a-sector product coefficient {num}/{den} is not an integer"
                )
            return coeff, _QMono(alpha=i + j)
        return 0, _QMono()  # a-sector generators annihilate the other sectors
    if u.beta or v.beta:
        if u.beta and v.beta:
            return 1, _QMono(beta=u.beta + v.beta)
        return 0, _QMono()  # b-sector annihilates the quaternion sector
    i = spec.i  # type: ignore[union-attr]
    g, gp, dl = u.gamma + v.gamma, u.gammap + v.gammap, u.delta + v.delta
    coeff = 1
    if g >= 2:
        return 0, _QMono()
    if gp >= 2:
        if i == 3:
            return 0, _QMono()
        coeff *= 1 << (i - 1)
        gp -= 2
        dl += 1
    if g == 1 and gp == 1:
        coeff *= 4 if i == 3 else 1 << (i - 1)
        g = gp = 0
        dl += 1
    return coeff, _QMono(gamma=g, gammap=gp, delta=dl)


# --------------------------------------------------------------------------
# Cohomology groups and summand tables


def _drop_units(summands: Iterable[tuple[str, int]]) -> tuple[tuple[str, int], ...]:
    return tuple((name, order) for name, order in summands if order != 1)


def _q_even_summands(spec, inv, n: int) -> list[tuple[str, int]]:
    """Named summands of H^n of a finite quaternionic kernel, n > 0 even."""
    out: list[tuple[str, int]] = []
    half = n // 2
    if isinstance(spec, ZaZbQ):
        out.append((_pow_name("alpha_2", half), inv.eps(half)))
    if isinstance(spec, (ZbTimesQ, ZaZbQ)):
        out.append((_pow_name("beta_2", half), spec.b))
    if n % 4 == 0:
        out.append((_pow_name("delta_4", n // 4), 1 << spec.i))
    else:
        tail = f" {_pow_name('delta_4', n // 4)}" if n >= 6 else ""
        out.append((f"gamma_2{tail}", 2))
        out.append((f"gamma_2'{tail}", 2))
    return out


def finite_summands(spec: GroupSpec, n: int) -> tuple[tuple[str, int], ...]:
    """Named cyclic summands of H^n(F; Z) for a finite kernel F."""
    validate(spec)
    if n < 0:
        raise ValidationError("degree must be ≥ 0")
    if n == 0:
        return (("1", 0),)
    if n % 2 == 1:
        return ()
    j = n // 2
    if isinstance(spec, Cyclic):
        return _drop_units([(_pow_name("alpha_2", j), spec.m)])
    if isinstance(spec, Metacyclic):
        inv = invariants(spec)
        return _drop_units(
            [(_pow_name("phi_a", j), inv.delta(j)), (_pow_name("phi_b", j), spec.b)]
        )
    inv = invariants(spec) if isinstance(spec, ZaZbQ) else None
    return _drop_units(_q_even_summands(spec, inv, n))


def finite_cohomology(spec: GroupSpec, n: int) -> FinAb:
    """H^n(F; Z) for a finite kernel F, in invariant-factor form."""
    summands = finite_summands(spec, n)
    if n == 0:
        return FinAb.free(1)
    return FinAb.from_orders(order for _, order in summands)


def q8_h2_action(
    i: int, action: Union[Twist, QuaternionMap]
) -> tuple[IntMatrix, bool]:
    """Induced map on the two degree-2 torsion classes of the quaternion group.

    Returns the 2×2 matrix over Z_2 (columns hold the images of the two
    generators, computed by pushing the automorphism to the abelianization)
    together with a triviality flag.
    """
    n = 1 << (i - 1)
    if isinstance(action, Twist):
        qm = QuaternionMap(action.k % n, 0, action.l % n, 1)
    else:
        qm = action
    quaternion_map_permutation(i, qm)  # rejects non-automorphisms
    matrix = IntMatrix([[qm.s_x % 2, qm.s_y % 2], [qm.t_x % 2, qm.t_y % 2]])
    return matrix, matrix == IntMatrix.identity(2)


def _vz_summands_all(
    spec: Union[Metacyclic, ZaZbQ], twist: Optional[Twist], n: int
) -> list[tuple[str, int]]:
    inv = invariants(spec, twist)
    twist = twist if twist is not None else Twist()
    if n == 0:
        return [("1", 0)]
    if n == 1:
        return [("eta", 0)]
    if isinstance(spec, Metacyclic):
        j, odd = divmod(n, 2)
        base = "psi" if odd else "phi"
        return [
            (_pow_name(f"{base}_a", j), inv.A(j)),
            (_pow_name(f"{base}_b", j), inv.B(j)),
        ]
    j, s = divmod(n, 4)
    prefix = "t_" if s % 2 == 1 else ""
    if s in (0, 1):
        return [
            (prefix + _pow_name("alpha_2", 2 * j), inv.A(2 * j)),
            (prefix + _pow_name("beta_2", 2 * j), inv.B(2 * j)),
            (prefix + _pow_name("delta_4", j), inv.C(2 * j)),
        ]
    _, trivial = q8_h2_action(spec.i, twist)
    tail = f" {_pow_name('delta_4', j)}" if j > 0 else ""
    out = [
        (prefix + _pow_name("alpha_2", 2 * j + 1), inv.A(2 * j + 1)),
        (prefix + _pow_name("beta_2", 2 * j + 1), inv.B(2 * j + 1)),
    ]
    if trivial:
        out.append((f"{prefix}gamma_2{tail}", 2))
        out.append((f"{prefix}gamma_2'{tail}", 2))
    elif s == 2:
        out.append((f"gamma_2{tail}", 2))  # the invariant degree-2 line
    else:
        out.append((f"t_gamma_2'{tail}", 2))  # the coinvariant quotient line
    return out


def vz_summands(
    spec: Union[Metacyclic, ZaZbQ], twist: Twist, n: int
) -> tuple[tuple[str, int], ...]:
    """Named cyclic summands of H^n(F ⋊ Z; Z); order 0 marks a free line."""
    if n < 0:
        raise ValidationError("degree must be ≥ 0")
    return _drop_units(_vz_summands_all(spec, twist, n))


def vz_cohomology(spec: Union[Metacyclic, ZaZbQ], twist: Twist, n: int) -> FinAb:
    """H^n(F ⋊ Z; Z) in invariant-factor form."""
    if n < 0:
        raise ValidationError("degree must be ≥ 0")
    if n <= 1:
        _ = invariants(spec, twist)
        return FinAb.free(1)
    return FinAb.from_orders(
        order for _, order in _vz_summands_all(spec, twist, n)
    )


# --------------------------------------------------------------------------
# Cup products


def _family1_pair(
    inv: DerivedInvariants, lhs: tuple[str, int], rhs: tuple[str, int]
) -> tuple[int, str, int]:
    """Product of two family-1 generators: (coefficient, kind, index).

    Products with at most one odd factor are symmetric, and all products
    of two odd-degree generators vanish, so the commutation sign never
    shows up; pairs are normalized to put the even factor first.
    """
    a, b = inv.a, inv.b

    def ga(t: int) -> int:
        return math.gcd(inv.delta(t), _gcd_pow(inv.c_a, t, inv.delta(t)))

    def gb(t: int) -> int:
        return inv.B(t)

    order = {"1": 0, "phi_a": 1, "phi_b": 2, "psi_a": 3, "psi_b": 4, "eta": 5}
    (k1, i), (k2, j) = sorted((lhs, rhs), key=lambda kv: order[kv[0]])
    if k1 == "1":
        return (1, k2, j)
    if k1 == "eta" or k1.startswith("psi"):
        return (0, "1", 0)  # every product of two odd generators vanishes
    if k2 == "eta":
        if k1 == "phi_a":
            return (inv.delta(i) // ga(i), "psi_a", i)
        return (b // gb(i), "psi_b", i)
    if k1 == "phi_a" and k2 == "phi_a":
        num, den = a * ga(i + j), ga(i) * ga(j)
    elif k1 == "phi_b" and k2 == "phi_b":
        num, den = b * gb(i + j), gb(i) * gb(j)
    elif k1 == "phi_a" and k2 == "psi_a":
        num, den = a * inv.delta(i + j), inv.delta(j) * ga(i)
    elif k1 == "phi_b" and k2 == "psi_b":
        num, den = b, gb(i)
    else:
        return (0, "1", 0)  # mixed a/b products vanish
    coeff, rem = divmod(num, den)
    if rem:
        raise RuntimeError(f"cup coefficient {num}/{den} is not an integer")
    kind = k1 if k2.startswith("phi") else k2
    return (coeff, kind, i + j)


def _f1_order(inv: DerivedInvariants, kind: str, j: int) -> int:
    if kind in ("1", "eta"):
        return 0
    return inv.A(j) if kind.endswith("a") else inv.B(j)


def _f1_symbol(kind: str, j: int) -> str:
    return kind if kind in ("1", "eta") else _pow_name(kind, j)


def _reduce(coeff: int, order: int) -> int:
    return coeff if order == 0 else coeff % order


def cup(
    spec: GroupSpec, twist: Optional[Twist], u: CohClass, v: CohClass
) -> CohClass:
    """Bilinear cup product of two classes written in generator symbols.

    For a metacyclic kernel with a twist this is the ring of the full
    semidirect-by-Z group.  For the quaternionic kernels the product data
    covers the finite kernel's ring (its even part); the odd-degree
    companion classes only enter additively and are rejected here.
    """
    degree = u.degree + v.degree
    out: dict[str, int] = {}
    if isinstance(spec, Metacyclic):
        inv = invariants(spec, twist)

        def checked(cls: CohClass) -> list[tuple[tuple[str, int], int]]:
            parsed = []
            for symbol, coeff in cls.terms:
                kind, j, deg = _parse_family1(symbol)
                if deg != cls.degree:
                    raise RingElementError(
                        f"symbol {symbol!r} of degree {deg} in a class of "
                        f"degree {cls.degree}"
                    )
                parsed.append(((kind, j), coeff))
            return parsed

        for (k1, i1), c1 in checked(u):
            for (k2, i2), c2 in checked(v):
                coeff, kind, j = _family1_pair(inv, (k1, i1), (k2, i2))
                coeff *= c1 * c2
                if coeff == 0:
                    continue
                symbol = _f1_symbol(kind, j)
                total = out.get(symbol, 0) + coeff
                out[symbol] = _reduce(total, _f1_order(inv, kind, j))
        return CohClass.of(degree, out)
    if isinstance(spec, (Cyclic, Quaternion, ZbTimesQ, ZaZbQ)):
        validate(spec)
        inv = invariants(spec) if isinstance(spec, ZaZbQ) else None
        for cls in (u, v):
            for symbol, _ in cls.terms:
                mono = _parse_qmono(spec, symbol)
                if mono.degree != cls.degree:
                    raise RingElementError(
                        f"symbol {symbol!r} of degree {mono.degree} in a class "
                        f"of degree {cls.degree}"
                    )
        for s1, c1 in u.terms:
            for s2, c2 in v.terms:
                coeff, mono = _qmono_mul(
                    spec, inv, _parse_qmono(spec, s1), _parse_qmono(spec, s2)
                )
                coeff *= c1 * c2
                if coeff == 0:
                    continue
                symbol = mono.name()
                total = out.get(symbol, 0) + coeff
                out[symbol] = _reduce(total, _qmono_order(spec, inv, mono))
        return CohClass.of(degree, out)
    raise ValidationError(f"no ring tables for {spec!r}")


def periodicity(
    spec: Union[Metacyclic, ZaZbQ], twist: Optional[Twist] = None
) -> tuple[int, CohClass]:
    """Cohomological period of F ⋊ Z and the class that implements it."""
    inv = invariants(spec, twist)
    p = inv.p
    if isinstance(spec, Metacyclic):
        return 2 * p, CohClass.of(
            2 * p, {_pow_name("phi_a", p): 1, _pow_name("phi_b", p): 1}
        )
    if p % 2 == 0:
        return 2 * p, CohClass.of(
            2 * p,
            {
                _pow_name("alpha_2", p): 1,
                _pow_name("beta_2", p): 1,
                _pow_name("delta_4", p // 2): 1,
            },
        )
    return 4 * p, CohClass.of(
        4 * p,
        {
            _pow_name("alpha_2", 2 * p): 1,
            _pow_name("beta_2", 2 * p): 1,
            _pow_name("delta_4", p): 1,
        },
    )


# --------------------------------------------------------------------------
# Ring presentations


@dataclass(frozen=True)
class RingPresentation:
    """Generators with degrees/orders, plus pairwise product rules."""

    generators: tuple[tuple[str, int, int], ...]
    relations: tuple[tuple[str, str, CohClass], ...]


def _generator_table(
    spec: GroupSpec, twist: Optional[Twist], bound: int
) -> list[tuple[str, int, int]]:
    gens: list[tuple[str, int, int]] = []
    if isinstance(spec, Metacyclic):
        inv = invariants(spec, twist)
        gens.append(("eta", 1, 0))
        for j in range(1, bound // 2 + 1):
            gens.append((_pow_name("phi_a", j), 2 * j, inv.A(j)))
            gens.append((_pow_name("phi_b", j), 2 * j, inv.B(j)))
            if 2 * j + 1 <= bound:
                gens.append((_pow_name("psi_a", j), 2 * j + 1, inv.A(j)))
                gens.append((_pow_name("psi_b", j), 2 * j + 1, inv.B(j)))
        return gens
    if isinstance(spec, Cyclic):
        return [("alpha_2", 2, spec.m)]
    if isinstance(spec, ZaZbQ):
        inv = invariants(spec)
        for j in range(1, bound // 2 + 1):
            gens.append((_pow_name("alpha_2", j), 2 * j, inv.eps(j)))
    if isinstance(spec, (ZbTimesQ, ZaZbQ)):
        gens.append(("beta_2", 2, spec.b))
    gens.append(("gamma_2", 2, 2))
    gens.append(("gamma_2'", 2, 2))
    gens.append(("delta_4", 4, 1 << spec.i))  # type: ignore[union-attr]
    return gens


def ring_presentation(
    spec: GroupSpec, twist: Optional[Twist] = None, max_degree: Optional[int] = None
) -> RingPresentation:
    """Generator/relation listing of the ring tables through a degree bound.

    The default bound shows one full period.  For quaternionic kernels the
    listing is the finite kernel's ring (see ``cup``).
    """
    validate(spec, twist)
    if max_degree is None:
        if isinstance(spec, (Metacyclic, ZaZbQ)):
            period, _ = periodicity(spec, twist)
            max_degree = 2 * period + 2
        else:
            max_degree = 8 if isinstance(spec, (Quaternion, ZbTimesQ)) else 4
    gens = _generator_table(spec, twist, max_degree)
    ring_twist = twist if isinstance(spec, Metacyclic) else None
    relations = []
    for idx, (s1, d1, _) in enumerate(gens):
        for s2, d2, _ in gens[idx:]:
            if d1 + d2 > max_degree:
                continue
            product = cup(
                spec, ring_twist, CohClass.of(d1, {s1: 1}), CohClass.of(d2, {s2: 1})
            )
            relations.append((s1, s2, product))
    return RingPresentation(tuple(gens), tuple(relations))
