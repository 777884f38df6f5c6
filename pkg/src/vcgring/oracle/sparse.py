"""Sparse elimination over Z_{p^e} for large coboundary matrices.

The dense Smith machinery in :mod:`vcgring.intlinalg` tops out around a
few hundred rows.  Bar-resolution coboundaries reach ~10^5 rows, but they
are extremely sparse and collapse almost entirely under unit-pivot Schur
complements.  Two facts make a per-prime modular treatment sufficient and
exact:

* for a free cochain complex, H^n is (free part) + (torsion part of the
  Smith form of d^{n-1}) -- the interaction between ker d^n and im d^{n-1}
  never enters, because ker d^n is a direct summand;
* every elementary divisor of a coboundary matrix of a finite group G
  is supported on the primes dividing |G| (positive-degree cohomology is
  annihilated by |G| via the transfer), so valuations over Z_{p^e} for
  p | |G|, with e exceeding v_p(|G|), recover the divisors exactly.

The staged collapse (compiled in :mod:`vcgring.oracle._kernels`)
eliminates every pivot that is a unit mod p, then divides the stalled
remainder by p and repeats; the stage at which a pivot falls is its
elementary-divisor valuation.  A rank computation over a prime q coprime
to |G| certifies that no divisor escaped past the modulus (a column
dying without a pivot would silently drop one).
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

import numpy as np

from vcgring.oracle._kernels import staged_unit_collapse

__all__ = [
    "CscMatrix",
    "ResidueBasis",
    "modp_rank",
    "padic_divisor_valuations",
]


class CscMatrix(NamedTuple):
    """Compressed sparse columns with explicit dimensions.

    ``indices``/``data`` hold the row indices and values of column ``c``
    in the slice ``indptr[c]:indptr[c+1]``; rows may repeat within a
    column only if the producer says so (the kernels here require them
    merged, which the coboundary builder guarantees).
    """

    indptr: np.ndarray
    indices: np.ndarray
    data: np.ndarray
    nrows: int
    ncols: int


def _as_csc(matrix: "CscMatrix | Sequence[dict[int, int]]") -> CscMatrix:
    if isinstance(matrix, CscMatrix):
        return matrix
    columns = matrix
    indptr = np.zeros(len(columns) + 1, np.int64)
    total = sum(len(col) for col in columns)
    indices = np.empty(total, np.int64)
    data = np.empty(total, np.int64)
    k = 0
    nrows = 0
    for ci, col in enumerate(columns):
        for r, v in col.items():
            indices[k] = r
            data[k] = v
            k += 1
            if r >= nrows:
                nrows = r + 1
        indptr[ci + 1] = k
    return CscMatrix(indptr, indices, data, nrows, len(columns))


def padic_divisor_valuations(
    matrix: "CscMatrix | Sequence[dict[int, int]]", p: int, e: int
) -> list[int]:
    """Valuations of the elementary divisors of the matrix over Z_{p^e}.

    Returns one entry per divisor found, each strictly less than ``e``.
    Divisors of valuation >= e are invisible at this modulus; callers must
    certify completeness against an independent rank (see module docstring).
    """
    csc = _as_csc(matrix)
    if csc.nrows == 0 or csc.ncols == 0:
        return []
    counts = staged_unit_collapse(
        csc.indptr, csc.indices, csc.data, csc.nrows, p, e
    )
    vals: list[int] = []
    for stage, found in enumerate(counts):
        vals.extend([stage] * int(found))
    return vals


def modp_rank(matrix: "CscMatrix | Sequence[dict[int, int]]", q: int) -> int:
    """Rank of the matrix over the prime field F_q."""
    csc = _as_csc(matrix)
    if csc.nrows == 0 or csc.ncols == 0:
        return 0
    counts = staged_unit_collapse(
        csc.indptr, csc.indices, csc.data, csc.nrows, q, 1
    )
    return int(counts[0])


class ResidueBasis:
    """Howell-style column basis mod p^e with canonical coset residues.

    Inserting the columns of a matrix builds a triangular generating set
    for its image in (Z_{p^e})^rows, closed under leading-term
    annihilation, so :meth:`reduce` returns a canonical representative of
    each coset.  Intended for the modest row dimensions of class
    identification (a few thousand), not the bulk torsion computations.
    """

    def __init__(self, p: int, e: int) -> None:
        self.p = p
        self.e = e
        self.pe = p**e
        self.pivots: dict[int, tuple[int, dict[int, int]]] = {}

    def insert(self, column: dict[int, int]) -> None:
        p, pe = self.p, self.pe
        stack = [{r: v % pe for r, v in column.items() if v % pe}]
        while stack:
            col = stack.pop()
            while col:
                lead = min(col)
                a = col[lead]
                va = 0
                while a % p == 0:
                    a //= p
                    va += 1
                if lead not in self.pivots:
                    inv = pow(a, -1, pe)
                    norm = {}
                    for r, v in col.items():
                        nv = (v * inv) % pe
                        if nv:
                            norm[r] = nv
                    self.pivots[lead] = (va, norm)
                    if va:
                        shift = pe // (p**va)
                        comp = {}
                        for r, v in norm.items():
                            nv = (v * shift) % pe
                            if nv:
                                comp[r] = nv
                        if comp:
                            stack.append(comp)
                    break
                vp, pcol = self.pivots[lead]
                if va < vp:
                    inv = pow(a, -1, pe)
                    norm = {}
                    for r, v in col.items():
                        nv = (v * inv) % pe
                        if nv:
                            norm[r] = nv
                    self.pivots[lead] = (va, norm)
                    if va:
                        shift = pe // (p**va)
                        comp = {}
                        for r, v in norm.items():
                            nv = (v * shift) % pe
                            if nv:
                                comp[r] = nv
                        if comp:
                            stack.append(comp)
                    col = pcol
                    continue
                f = (col[lead] // (p**vp)) % pe
                for r, x in pcol.items():
                    nv = (col.get(r, 0) - f * x) % pe
                    if nv:
                        col[r] = nv
                    elif r in col:
                        del col[r]

    def reduce(self, vector: dict[int, int]) -> dict[int, int]:
        """Canonical residue of ``vector`` modulo the inserted column span."""
        p, pe = self.p, self.pe
        out = {r: v % pe for r, v in vector.items() if v % pe}
        for lead in sorted(set(out) | set(self.pivots)):
            if lead not in out or lead not in self.pivots:
                continue
            vp, pcol = self.pivots[lead]
            f = out[lead] // (p**vp)
            if not f:
                continue
            for r, x in pcol.items():
                nv = (out.get(r, 0) - f * x) % pe
                if nv:
                    out[r] = nv
                elif r in out:
                    del out[r]
        return out
