"""numba kernels for the hot loops: run counting and the pruned tree search.

Words live in int8 arrays indexed from 1 (slot 0 unused) so the arithmetic
below reads like the position formulas it implements.
"""

from __future__ import annotations

import numpy as np
from numba import njit

# status codes returned by dfs()
DONE = 0
BUDGET = 1
MAX_LEN = 2
GROW_OPEN = 3
GROW_CLOSED = 4
GROW_LEN = 5

# slots of the int64 register file shared between dfs() and Python
R_N = 0  # length of the word to evaluate next
R_NODES = 1
R_BEST = 2
R_WIT = 3  # witnesses stored
R_TIES = 4  # words seen with |w| == best
R_TASKS = 5
R_TRACE = 6  # words written to the trace ring


@njit(cache=True)
def count_runs_array(a, n):
    """Number of runs in ``a[0:n]`` (0-based), scanning maximal p-periodic stretches."""
    total = 0
    for p in range(1, n // 2 + 1):
        j = 0
        while j < n - p:
            if a[j] != a[j + p]:
                j += 1
                continue
            st = j
            while j < n - p and a[j] == a[j + p]:
                j += 1
            if j - st < p:
                continue
            e = j - 1 + p
            least = True
            for q in range(1, p):
                if p % q != 0:
                    continue
                ok = True
                for t in range(st, e - q + 1):
                    if a[t] != a[t + q]:
                        ok = False
                        break
                if ok:
                    least = False
                    break
            if least:
                total += 1
    return total


@njit(cache=True)
def run_counts_all(n):
    """Run counts of every length-``n`` word starting with 0, indexed by bit mask."""
    size = 1 << (n - 1)
    counts = np.empty(size, dtype=np.int16)
    a = np.zeros(n, dtype=np.int8)
    for mask in range(size):
        for t in range(n):
            a[t] = (mask >> (n - 1 - t)) & 1
        counts[mask] = count_runs_array(a, n)
    return counts


@njit(cache=True)
def compute_state(n, w, blk, o_i, o_d, o_st, o_off, o_cnt, c_pos, c_off, c_cnt):
    """Derive the snapshot of prefix length ``n`` from the one of length ``n - 1``.

    Open positions (those whose periodic extension reaches the end of the
    prefix) are carried forward; each either keeps its period, closes, or
    grows its Lyndon root to the new end.  Positions that close are
    classified once and, if lost, inserted into the sorted closed-lost list.
    """
    if n == 1:
        blk[1] = 1
        o_off[1] = 0
        o_cnt[1] = 0
        c_off[1] = 0
        c_cnt[1] = 0
        return
    x = w[n]
    src = o_off[n - 1]
    dst = src + o_cnt[n - 1]
    o_off[n] = dst
    csrc = c_off[n - 1]
    ccnt = c_cnt[n - 1]
    cdst = csrc + ccnt
    c_off[n] = cdst
    for t in range(ccnt):
        c_pos[cdst + t] = c_pos[csrc + t]
    m = 0
    for t in range(o_cnt[n - 1]):
        i = o_i[src + t]
        d = o_d[src + t]
        st = o_st[src + t]
        if x == w[n - d]:
            o_i[dst + m] = i
            o_d[dst + m] = d
            o_st[dst + m] = st
            m += 1
        elif x == 1 - w[i - 1]:
            # broken by the smaller letter: parameters are final, E = n - 1
            e = n - 1
            run = e - st + 1 >= 2 * d
            if (run and i + 2 * d - 1 <= e) or (not run and st > 1):
                k = ccnt
                while k > 0 and c_pos[cdst + k - 1] > i:
                    c_pos[cdst + k] = c_pos[cdst + k - 1]
                    k -= 1
                c_pos[cdst + k] = i
                ccnt += 1
        else:
            # broken by the greater letter: the root grows to the new end
            d = n - i + 1
            j = i
            while j > 1 and w[j - 1] == w[j - 1 + d]:
                j -= 1
            o_i[dst + m] = i
            o_d[dst + m] = d
            o_st[dst + m] = j
            m += 1
    if x == w[n - 1]:
        blk[n] = blk[n - 1]
    else:
        blk[n] = n
    o_i[dst + m] = n
    o_d[dst + m] = 1
    o_st[dst + m] = blk[n]
    m += 1
    o_cnt[n] = m
    c_cnt[n] = ccnt


@njit(cache=True)
def open_lost(n, w, o_i, o_d, o_st, o_off, o_cnt, first0, first1, out):
    """Write the lost open positions of prefix length ``n`` to ``out``; return count."""
    base = o_off[n]
    cnt = o_cnt[n]
    for t in range(cnt):
        d = o_d[base + t]
        st = o_st[base + t]
        if d >= 2 and n - st + 1 >= 2 * d:
            i = o_i[base + t]
            if w[i] == 0:
                if first0[st] == 0:
                    first0[st] = i
            elif first1[st] == 0:
                first1[st] = i
    k = 0
    for t in range(cnt):
        i = o_i[base + t]
        d = o_d[base + t]
        st = o_st[base + t]
        if n - st + 1 < 2 * d or st >= i or i + 2 * d - 1 > n:
            continue
        if d == 1:
            out[k] = i
            k += 1
        else:
            f = 0 if first0[st] >= first1[st] else 1
            if w[i] == f:
                out[k] = i
                k += 1
    for t in range(cnt):
        st = o_st[base + t]
        first0[st] = 0
        first1[st] = 0
    return k


@njit(cache=True)
def lost_of_state(n, w, o_i, o_d, o_st, o_off, o_cnt, c_pos, c_off, c_cnt, first0, first1, tmp):
    """Sorted lost positions of prefix length ``n`` as a fresh array."""
    k = open_lost(n, w, o_i, o_d, o_st, o_off, o_cnt, first0, first1, tmp)
    cb = c_off[n]
    cc = c_cnt[n]
    out = np.empty(k + cc, dtype=np.int32)
    a = 0
    b = 0
    for t in range(k + cc):
        if b >= k or (a < cc and c_pos[cb + a] < tmp[b]):
            out[t] = c_pos[cb + a]
            a += 1
        else:
            out[t] = tmp[b]
            b += 1
    return out


@njit(cache=True)
def pd_holds(n, num, den, w, o_i, o_d, o_st, o_off, o_cnt, c_pos, c_off, c_cnt, first0, first1, tmp):
    """P_d on the prefix of length ``n``: den * (p_j - 1) >= num * j for every j."""
    k = open_lost(n, w, o_i, o_d, o_st, o_off, o_cnt, first0, first1, tmp)
    cb = c_off[n]
    cc = c_cnt[n]
    a = 0
    b = 0
    for j in range(1, k + cc + 1):
        if b >= k or (a < cc and c_pos[cb + a] < tmp[b]):
            p = c_pos[cb + a]
            a += 1
        else:
            p = tmp[b]
            b += 1
        if den * (p - 1) < num * j:
            return False
    return True


@njit(cache=True)
def dfs(reg, floor, budget, max_len, split, num, den, w, blk,
        o_i, o_d, o_st, o_off, o_cnt, c_pos, c_off, c_cnt,
        first0, first1, tmp, wit, tasks, ring, ring_len):
    """Depth-first lexicographic walk of the pruned prefix tree below ``w[1..floor]``.

    Words of length ``split`` (if positive) are evaluated but not extended;
    when they satisfy P_d they are copied to ``tasks`` while room remains.
    A nonempty ``ring`` keeps copies of the most recently evaluated words.

    Resumable: every exit leaves ``reg[R_N]`` pointing at the next word to
    evaluate, with snapshots valid for all shorter prefixes.
    """
    n = reg[R_N]
    used = 0
    cap_open = o_i.shape[0]
    cap_closed = c_pos.shape[0]
    cap_len = w.shape[0] - 2
    while True:
        if used >= budget:
            reg[R_N] = n
            return BUDGET
        if n > cap_len:
            reg[R_N] = n
            return GROW_LEN
        prev_open = o_cnt[n - 1]
        if o_off[n - 1] + 2 * prev_open + 1 > cap_open:
            reg[R_N] = n
            return GROW_OPEN
        if c_off[n - 1] + 2 * c_cnt[n - 1] + prev_open > cap_closed:
            reg[R_N] = n
            return GROW_CLOSED
        compute_state(n, w, blk, o_i, o_d, o_st, o_off, o_cnt, c_pos, c_off, c_cnt)
        used += 1
        reg[R_NODES] += 1
        if ring.shape[0] > 0 and n <= ring.shape[1]:
            slot = reg[R_TRACE] % ring.shape[0]
            for t in range(n):
                ring[slot, t] = w[t + 1]
            ring_len[slot] = n
            reg[R_TRACE] += 1
        ok = pd_holds(n, num, den, w, o_i, o_d, o_st, o_off, o_cnt,
                      c_pos, c_off, c_cnt, first0, first1, tmp)
        if ok:
            if n > reg[R_BEST]:
                reg[R_BEST] = n
                reg[R_WIT] = 0
                reg[R_TIES] = 0
            if n == reg[R_BEST]:
                reg[R_TIES] += 1
                slot = reg[R_WIT]
                if slot < wit.shape[0] and n <= wit.shape[1]:
                    for t in range(n):
                        wit[slot, t] = w[t + 1]
                    for t in range(n, wit.shape[1]):
                        wit[slot, t] = -1
                    reg[R_WIT] = slot + 1
            if split > 0 and n == split:
                slot = reg[R_TASKS]
                if slot < tasks.shape[0]:
                    for t in range(n):
                        tasks[slot, t] = w[t + 1]
                    reg[R_TASKS] = slot + 1
                ok = False
            elif n >= max_len:
                reg[R_N] = n + 1
                w[n + 1] = 0
                return MAX_LEN
            else:
                n += 1
                w[n] = 0
        if not ok:
            while n > floor and w[n] == 1:
                n -= 1
            if n == floor:
                reg[R_N] = n
                return DONE
            w[n] = 1
