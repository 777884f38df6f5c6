"""Compiled staged unit-pivot collapse for sparse integer matrices.

This is the inner loop behind :mod:`vcgring.oracle.sparse`.  The matrix
lives in a growable column arena (row indices + values per column); row
incidence lists are append-only and tolerate stale or duplicate entries,
because the pivot loop re-verifies membership by scanning the column
before using it (they are compacted whenever they outgrow the true
entry count).  Pivot order is smallest-column-first via an array of
bucket lists, with the lowest-degree unit entry inside the chosen
column; both choices only affect speed, never the result.

Values are kept reduced into [0, p^e) and stored as int32 alongside
int32 indices -- the arenas reach hundreds of MB on the largest
coboundaries and this process pays dearly for every freshly touched
page, so width matters.  All arithmetic runs in int64 registers.

After a stage stalls (no unit entries left anywhere), every remaining
value is divisible by p; the stage division then shifts the p-adic
expansion down one digit, so a pivot eliminated during stage k certifies
an elementary divisor of valuation exactly k.  Divisors of valuation
>= e stay invisible at this modulus, which callers must rule out
separately.
"""

from __future__ import annotations

import numpy as np
from numba import njit

__all__ = ["staged_unit_collapse"]


@njit(cache=True)
def _modinv(a, m):
    t = np.int64(0)
    newt = np.int64(1)
    r = np.int64(m)
    newr = np.int64(a) % np.int64(m)
    while newr != 0:
        q = r // newr
        t, newt = newt, t - q * newt
        r, newr = newr, r - q * newr
    if t < 0:
        t += m
    return t


@njit(cache=True)
def staged_unit_collapse(indptr, indices, data, nrows, p, e, verbose=0):  # noqa: C901
    """Pivot counts per stage for the staged collapse of a CSC matrix mod p^e."""
    pe = np.int64(p) ** np.int64(e)
    ncols = indptr.size - 1
    counts = np.zeros(e, np.int64)
    total_pivots = np.int64(0)

    # --- column arena -------------------------------------------------
    nnz = data.size
    arena_cap = np.int64(2 * nnz + 8 * ncols + 64)
    col_rows = np.empty(arena_cap, np.int32)
    col_vals = np.empty(arena_cap, np.int32)
    col_off = np.zeros(ncols, np.int64)
    col_len = np.zeros(ncols, np.int64)
    col_cap = np.zeros(ncols, np.int64)
    arena_end = np.int64(0)
    for c in range(ncols):
        lo = indptr[c]
        hi = indptr[c + 1]
        cap = (hi - lo) + ((hi - lo) >> 1) + 4
        col_off[c] = arena_end
        col_cap[c] = cap
        k = arena_end
        for t in range(lo, hi):
            v = np.int64(data[t]) % pe
            if v < 0:
                v += pe
            if v != 0:
                col_rows[k] = indices[t]
                col_vals[k] = v
                k += 1
        col_len[c] = k - arena_end
        arena_end += cap

    # --- row incidence lists (append-only, stale entries allowed) -----
    rowdeg = np.zeros(nrows, np.int64)
    for c in range(ncols):
        off = col_off[c]
        for t in range(col_len[c]):
            rowdeg[col_rows[off + t]] += 1
    row_cap = np.empty(nrows, np.int64)
    row_off = np.empty(nrows, np.int64)
    row_arena_cap = np.int64(64)
    for r in range(nrows):
        row_cap[r] = rowdeg[r] + (rowdeg[r] >> 1) + 4
        row_off[r] = row_arena_cap
        row_arena_cap += row_cap[r]
    row_cols = np.empty(row_arena_cap + 64, np.int32)
    row_len = np.zeros(nrows, np.int64)
    for c in range(ncols):
        off = col_off[c]
        for t in range(col_len[c]):
            r = col_rows[off + t]
            row_cols[row_off[r] + row_len[r]] = c
            row_len[r] += 1

    # --- bucket lists over column sizes -------------------------------
    bucket_head = np.full(nrows + 2, np.int64(-1), np.int64)
    nxt = np.full(ncols, np.int64(-1), np.int64)
    # state: 0 dead/unbucketed, 1 bucketed, 2 stalled
    state = np.zeros(ncols, np.int8)
    for c in range(ncols):
        ln = col_len[c]
        if ln > 0:
            nxt[c] = bucket_head[ln]
            bucket_head[ln] = c
            state[c] = 1

    # --- scratch for stamped merges ------------------------------------
    acc = np.zeros(nrows, np.int64)
    stamp = np.zeros(nrows, np.int32)
    merged = np.zeros(nrows, np.int32)
    ctr = np.int32(0)
    d0_rows = np.empty(16, np.int32)
    d0_vals = np.empty(16, np.int32)
    rsup = np.empty(16, np.int32)
    true_nnz = np.int64(nnz)
    listed = np.int64(nnz)

    for stage in range(e):
        cursor = np.int64(1)
        while True:
            while cursor <= nrows and bucket_head[cursor] == -1:
                cursor += 1
            if cursor > nrows:
                break
            c0 = bucket_head[cursor]
            bucket_head[cursor] = nxt[c0]
            ln0 = col_len[c0]
            if ln0 == 0:
                state[c0] = 0
                continue
            if ln0 != cursor:
                nxt[c0] = bucket_head[ln0]
                bucket_head[ln0] = c0
                if ln0 < cursor:
                    cursor = ln0
                continue
            # pick the unit entry of minimal (approximate) row degree
            off0 = col_off[c0]
            r0 = np.int64(-1)
            v0 = np.int64(0)
            bestdeg = np.int64(0)
            for t in range(ln0):
                v = np.int64(col_vals[off0 + t])
                if v % p != 0:
                    r = col_rows[off0 + t]
                    if r0 < 0 or row_len[r] < bestdeg:
                        r0 = r
                        v0 = v
                        bestdeg = row_len[r]
            if r0 < 0:
                state[c0] = 2
                continue
            counts[stage] += 1
            total_pivots += 1
            if verbose and total_pivots % verbose == 0:
                print(total_pivots, true_nnz, listed, cursor)
            inv = _modinv(v0, pe)
            # snapshot the pivot column and the pivot row's incidence list
            if d0_rows.size < ln0:
                d0_rows = np.empty(ln0 * 2, np.int32)
                d0_vals = np.empty(ln0 * 2, np.int32)
            nd0 = np.int64(0)
            for t in range(ln0):
                r = col_rows[off0 + t]
                if r != r0:
                    d0_rows[nd0] = r
                    d0_vals[nd0] = col_vals[off0 + t]
                    nd0 += 1
            rl = row_len[r0]
            if rsup.size < rl:
                rsup = np.empty(rl * 2, np.int32)
            ro = row_off[r0]
            for t in range(rl):
                rsup[t] = row_cols[ro + t]
            row_len[r0] = 0
            listed -= rl
            # retire the pivot column
            col_len[c0] = 0
            state[c0] = 0
            true_nnz -= nd0 + 1
            # Schur update on every column that still contains r0
            for ci in range(rl):
                c = rsup[ci]
                if c == c0 or col_len[c] == 0:
                    continue
                off = col_off[c]
                cl = col_len[c]
                w = np.int64(0)
                found = False
                for t in range(cl):
                    if col_rows[off + t] == r0:
                        w = np.int64(col_vals[off + t])
                        found = True
                        break
                if not found:
                    continue  # stale incidence entry
                f = (pe - (w * inv) % pe) % pe
                # ensure capacity for the worst-case merged size
                need = cl + nd0
                if col_cap[c] < need:
                    newcap = need + (need >> 1) + 4
                    if arena_end + newcap > col_rows.size:
                        growto = col_rows.size * 2
                        while growto < arena_end + newcap:
                            growto *= 2
                        nr = np.empty(growto, np.int32)
                        nv = np.empty(growto, np.int32)
                        nr[:arena_end] = col_rows[:arena_end]
                        nv[:arena_end] = col_vals[:arena_end]
                        col_rows = nr
                        col_vals = nv
                    noff = arena_end
                    for t in range(cl):
                        col_rows[noff + t] = col_rows[off + t]
                        col_vals[noff + t] = col_vals[off + t]
                    col_off[c] = noff
                    col_cap[c] = newcap
                    arena_end += newcap
                    off = noff
                if ctr >= 2147483640:
                    for t in range(nrows):
                        stamp[t] = 0
                        merged[t] = 0
                    ctr = np.int32(0)
                ctr += 1
                if f != 0:
                    for t in range(nd0):
                        r = d0_rows[t]
                        acc[r] = (f * np.int64(d0_vals[t])) % pe
                        stamp[r] = ctr
                # merge existing entries
                wk = off
                for t in range(cl):
                    r = col_rows[off + t]
                    if r == r0:
                        true_nnz -= 1
                        continue
                    v = np.int64(col_vals[off + t])
                    if stamp[r] == ctr:
                        merged[r] = ctr
                        v = (v + acc[r]) % pe
                        if v == 0:
                            true_nnz -= 1
                            continue
                    col_rows[wk] = r
                    col_vals[wk] = v
                    wk += 1
                # append fill-in rows
                for t in range(nd0):
                    r = d0_rows[t]
                    if stamp[r] == ctr and merged[r] != ctr:
                        v = acc[r]
                        if v != 0:
                            col_rows[wk] = r
                            col_vals[wk] = v
                            wk += 1
                            # append to row incidence (may grow the row arena)
                            if row_len[r] >= row_cap[r]:
                                newcap = row_cap[r] * 2 + 4
                                if row_arena_cap + newcap > row_cols.size:
                                    growto = row_cols.size * 2
                                    while growto < row_arena_cap + newcap:
                                        growto *= 2
                                    nr = np.empty(growto, np.int32)
                                    nr[:row_arena_cap] = row_cols[:row_arena_cap]
                                    row_cols = nr
                                noff = row_arena_cap
                                for u in range(row_len[r]):
                                    row_cols[noff + u] = row_cols[row_off[r] + u]
                                row_off[r] = noff
                                row_cap[r] = newcap
                                row_arena_cap += newcap
                            row_cols[row_off[r] + row_len[r]] = c
                            row_len[r] += 1
                            true_nnz += 1
                            listed += 1
                col_len[c] = wk - off
                if state[c] == 2 or col_len[c] == 0:
                    # stalled columns rejoin the buckets once touched
                    if col_len[c] > 0:
                        nxt[c] = bucket_head[col_len[c]]
                        bucket_head[col_len[c]] = c
                        state[c] = 1
                    else:
                        state[c] = 0
            if listed > 2 * true_nnz + 1024:
                # compact the row incidence lists: drop stale/duplicate
                # entries by rebuilding from the (exact) column data
                for r in range(nrows):
                    rowdeg[r] = 0
                for c in range(ncols):
                    off = col_off[c]
                    for t in range(col_len[c]):
                        rowdeg[col_rows[off + t]] += 1
                row_arena_cap = np.int64(64)
                for r in range(nrows):
                    row_cap[r] = rowdeg[r] + (rowdeg[r] >> 1) + 4
                    row_off[r] = row_arena_cap
                    row_arena_cap += row_cap[r]
                    row_len[r] = 0
                if row_cols.size < row_arena_cap + 64:
                    row_cols = np.empty(row_arena_cap + 64, np.int32)
                for c in range(ncols):
                    off = col_off[c]
                    for t in range(col_len[c]):
                        r = col_rows[off + t]
                        row_cols[row_off[r] + row_len[r]] = c
                        row_len[r] += 1
                listed = true_nnz
            cursor = np.int64(1)
        # stage stalled: everything live is divisible by p
        if stage + 1 == e:
            break
        any_live = False
        for c in range(ncols):
            if col_len[c] > 0:
                any_live = True
                off = col_off[c]
                for t in range(col_len[c]):
                    col_vals[off + t] = np.int64(col_vals[off + t]) // p
                if state[c] != 1:
                    nxt[c] = bucket_head[col_len[c]]
                    bucket_head[col_len[c]] = c
                    state[c] = 1
        if not any_live:
            break
    return counts
