"""Cohomology of cyclic groups from the 2-periodic free resolution.

Over the group ring of a cyclic group of order m the trivial module has
the standard resolution alternating multiplication by (t - 1) and by
the norm element N = 1 + t + ... + t^{m-1}.  Applying Hom(-, M) for a
module M on which t acts by a unit u turns every differential into
multiplication by an integer scalar: u - 1 out of even degrees, and
norm(u) = 1 + u + ... + u^{m-1} out of odd degrees.  Cohomology is then
one gcd computation per degree.

The module also derives, rather than assumes, how a group endomorphism
t |-> t^c acts on cohomology: it lifts the endomorphism to a chain map
of the resolution degree by degree, solving each commutation equation
exactly over the group ring (represented as integer circulant systems),
and reads the induced scalar off the augmentation.  Any two lifts
differ by a chain homotopy, so the extracted scalar is well defined on
cohomology even though the intermediate solutions are not unique.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd

from vcgring.errors import ValidationError
from vcgring.intlinalg import FinAb, IntMatrix, solve_exact
from vcgring.oracle.bar import TwistedCoefficients

__all__ = [
    "cyclic_action_scalar",
    "periodic_cohomology",
    "periodic_coboundary_scalars",
]


def _unit_of(m: int, coeffs: TwistedCoefficients) -> int:
    units = dict(coeffs.units)
    unknown = set(units) - {"a"}
    if unknown:
        raise ValidationError(
            f"a cyclic group has the single generator 'a'; got multipliers "
            f"for {sorted(unknown)}"
        )
    u = units.get("a", 1)
    a = coeffs.modulus
    if a:
        u %= a
        if gcd(u, a) != 1:
            raise ValidationError(f"multiplier {u} is not a unit mod {a}")
        if pow(u, m, a) != 1:
            raise ValidationError(
                f"multiplier {u} has order not dividing {m} mod {a}"
            )
    else:
        if u not in (1, -1):
            raise ValidationError(f"multiplier {u} is not a unit of Z")
        if u == -1 and m % 2:
            raise ValidationError(
                f"sign action needs even order (got order {m})"
            )
    return u


def periodic_coboundary_scalars(
    m: int, coeffs: TwistedCoefficients, n: int
) -> tuple[int, int]:
    """(scalar of d^{n-1}, scalar of d^n) on the one-generator cochains.

    d out of an even degree multiplies by u - 1, out of an odd degree by
    norm(u); the convention puts d^{-1} = 0.
    """
    u = _unit_of(m, coeffs)
    a = coeffs.modulus
    diff = u - 1
    norm = sum(pow(u, j, a) if a else u**j for j in range(m))
    if a:
        diff %= a
        norm %= a
    s_out = diff if n % 2 == 0 else norm
    s_in = 0 if n == 0 else (diff if n % 2 == 1 else norm)
    return s_in, s_out


def _scalar_cohomology(s_in: int, s_out: int, modulus: int) -> FinAb:
    """ker(s_out)/im(s_in) for scalars acting on Z (modulus 0) or Z_modulus."""
    if modulus == 0:
        if s_out != 0:
            return FinAb.trivial()
        if s_in == 0:
            return FinAb.free(1)
        return FinAb.from_orders([abs(s_in)])
    g_out = gcd(modulus, s_out)  # kernel is cyclic of this order
    g_in = gcd(modulus, s_in)  # image has index g_in
    if (s_out * s_in) % modulus:
        raise ValidationError(
            f"scalars {s_out}*{s_in} do not compose to zero mod {modulus}"
        )
    return FinAb.from_orders([g_out * g_in // modulus])


def periodic_cohomology(m: int, coeffs: TwistedCoefficients | None, n: int) -> FinAb:
    """H^n(Z_m; coeffs) from the 2-periodic resolution."""
    if m < 2:
        raise ValidationError(f"periodic route needs order >= 2 (got {m})")
    if n < 0:
        raise ValidationError("degree must be >= 0")
    if coeffs is None:
        coeffs = TwistedCoefficients(0)
    if coeffs.modulus == 1:
        return FinAb.trivial()
    s_in, s_out = periodic_coboundary_scalars(m, coeffs, n)
    return _scalar_cohomology(s_in, s_out, coeffs.modulus)


# ---------------------------------------------------------------------------
# Chain-level lift of t |-> t^c.


def _circulant(vec: list[int], m: int) -> IntMatrix:
    """Matrix of left multiplication by sum(vec[j] t^j) on the group ring."""
    rows = [[vec[(i - j) % m] for j in range(m)] for i in range(m)]
    return IntMatrix(rows)


def _convolve(x: list[int], y: list[int], m: int) -> list[int]:
    out = [0] * m
    for i, xi in enumerate(x):
        if xi:
            for j, yj in enumerate(y):
                if yj:
                    out[(i + j) % m] += xi * yj
    return out


def _substitute(vec: list[int], c: int, m: int) -> list[int]:
    """Apply t |-> t^c to a group-ring element."""
    out = [0] * m
    for j, v in enumerate(vec):
        out[(j * c) % m] += v
    return out


@lru_cache(maxsize=4096)
def cyclic_action_scalar(m: int, c: int, n: int) -> int:
    """Scalar by which t |-> t^c acts on H^n(Z_m; Z), derived by chain lift.

    Builds lift components F_0 = 1, then solves
    d_k * F_k = F_{k-1} * (d_k with t replaced by t^c) exactly in the
    group ring for k = 1..n, and returns the augmentation of F_n reduced
    mod m.  For even n this is the induced map on H^n = Z_m; odd-degree
    groups vanish, so there the value is only a lift artifact.
    """
    if m < 2:
        raise ValidationError(f"cyclic order must be >= 2 (got {m})")
    if n < 0:
        raise ValidationError("degree must be >= 0")
    c %= m
    if gcd(c, m) != 1:
        raise ValidationError(
            f"substitution exponent {c} is not invertible mod {m}"
        )
    diff = [0] * m
    diff[0] = -1
    diff[1] = 1  # t - 1
    norm = [1] * m
    lift = [0] * m
    lift[0] = 1  # F_0 = 1
    for k in range(1, n + 1):
        d_k = diff if k % 2 == 1 else norm
        rhs = _convolve(lift, _substitute(d_k, c, m), m)
        sol = solve_exact(
            _circulant(d_k, m), IntMatrix([[v] for v in rhs])
        )
        lift = [sol[j, 0] for j in range(m)]
        # exactness of the solve is the commutation identity itself
        if _convolve(d_k, lift, m) != rhs:
            raise RuntimeError(f"chain lift failed to commute at degree {k}")
    return sum(lift) % m
