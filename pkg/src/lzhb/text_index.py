"""Text indexing: longest previous factors, leftmost occurrences, masked
online prefix queries, incremental minimum periods, windowed search.

Two index families live here.  ``OfflineIndex`` answers longest-previous-
factor and leftmost-occurrence queries over a fixed text via a suffix
array, an LCP array and two range-minimum trees.  ``OnlineIndex`` is an
append-only suffix tree (Ukkonen) whose positions can be individually
masked; masked positions are stored as unique out-of-alphabet sentinels
so they can never take part in a match.

Each fast structure has a definitional naive counterpart
(``naive_lpf``, ``naive_lmocc``, ``naive_prefix_query``,
``naive_min_period``) used as an oracle in the tests.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np
from numba import njit

# ---------------------------------------------------------------------------
# Naive reference oracles.  Deliberately written from the definitions with
# no shared machinery; quadratic or worse, fine for small inputs.
# ---------------------------------------------------------------------------


def _match_forward(text: bytes, j0: int, i0: int) -> int:
    """Symbols matched comparing text[j0..] against text[i0..], capped so the
    later occurrence stays inside the text (the earlier one may overlap it)."""
    n = len(text)
    l = 0
    while i0 + l < n and text[j0 + l] == text[i0 + l]:
        l += 1
    return l


def naive_lpf(text: bytes, i: int) -> int:
    """Length of the longest prefix of text[i..] that also occurs starting
    at some position < i.  Positions are 1-based; occurrences may overlap
    position i."""
    if not 1 <= i <= len(text):
        raise ValueError(f"position {i} out of range 1..{len(text)}")
    i0 = i - 1
    best = 0
    for j0 in range(i0):
        best = max(best, _match_forward(text, j0, i0))
    return best


def naive_lmocc(text: bytes, i: int, length: int) -> Optional[int]:
    """Leftmost position j < i where text[j..j+length) == text[i..i+length),
    or None if the factor has no earlier occurrence.  1-based."""
    n = len(text)
    if not (1 <= i <= n and length >= 1 and i + length - 1 <= n):
        raise ValueError(
            f"factor (i={i}, length={length}) out of range for n={n}")
    i0 = i - 1
    for j0 in range(i0):
        if _match_forward(text, j0, i0) >= length:
            return j0 + 1
    return None


def naive_prefix_query(
        symbols: Sequence[Optional[int]],
        query: Sequence[int]) -> tuple[int, Optional[int]]:
    """Longest prefix of ``query`` occurring in ``symbols`` without touching
    a masked (None) position, with the leftmost start of that longest
    prefix.  Returns (0, None) when not even the first symbol occurs.
    Occurrence positions are 1-based."""
    q = list(query)
    m = len(symbols)
    for l in range(min(len(q), m), 0, -1):
        for j in range(m - l + 1):
            if all(symbols[j + t] is not None and symbols[j + t] == q[t]
                   for t in range(l)):
                return l, j + 1
    return 0, None


def naive_min_period(w: bytes) -> int:
    """Smallest p >= 1 with w[i] == w[i+p] for every valid i (0 if empty)."""
    m = len(w)
    for p in range(1, m + 1):
        if all(w[i] == w[i + p] for i in range(m - p)):
            return p
    return 0


# ---------------------------------------------------------------------------
# Incremental minimum period (border array).
# ---------------------------------------------------------------------------


class MinPeriodTracker:
    """Maintains the minimum period of a growing word, one push at a time.

    ``push`` appends a symbol and returns the new minimum period in
    amortized O(1) via the classic border-array recurrence.
    """

    __slots__ = ("_word", "_border")

    def __init__(self) -> None:
        self._word: list[int] = []
        self._border: list[int] = []

    def push(self, symbol: int) -> int:
        w = self._word
        border = self._border
        w.append(symbol)
        m = len(w)
        if m == 1:
            border.append(0)
            return 1
        k = border[-1]
        while k and w[k] != symbol:
            k = border[k - 1]
        if w[k] == symbol:
            k += 1
        border.append(k)
        return m - k

    @property
    def length(self) -> int:
        return len(self._word)

    @property
    def period(self) -> int:
        return len(self._word) - self._border[-1] if self._word else 0


# ---------------------------------------------------------------------------
# Windowed leftmost occurrence.
# ---------------------------------------------------------------------------


def window_leftmost_occurrence(text: bytes, pattern_start: int,
                               pattern_len: int, window_start: int,
                               window_end: int) -> Optional[int]:
    """Leftmost occurrence of text[pattern_start..pattern_start+pattern_len)
    whose START lies in [window_start, window_end); the matched content may
    extend past window_end.  All positions 1-based; None when absent."""
    if pattern_len < 1 or window_start >= window_end:
        return None
    p0 = pattern_start - 1
    pat = text[p0:p0 + pattern_len]
    ws0 = max(window_start - 1, 0)
    # find() wants the hit fully inside its bounds; the latest legal start
    # is window_end - 2 (0-based), so let the body run to that plus the
    # pattern length.
    k = text.find(pat, ws0, window_end - 2 + pattern_len)
    if k < 0 or k >= window_end - 1:
        return None
    return k + 1


# ---------------------------------------------------------------------------
# Suffix array + LCP kernels (offline index).
# ---------------------------------------------------------------------------


@njit(cache=True)
def _sa_radix_doubling(t):
    """Suffix array by prefix doubling with two counting sorts per round."""
    n = t.shape[0]
    rank = np.empty(n, np.int32)
    for i in range(n):
        rank[i] = t[i]
    sa = np.empty(n, np.int32)
    tmp = np.empty(n, np.int32)
    cnt = np.zeros(max(n, 257) + 1, np.int64)
    new_rank = np.empty(n, np.int32)
    k = 1
    while True:
        m = 0
        for i in range(n):
            r = rank[i]
            if r > m:
                m = r
        size = m + 2
        for i in range(size + 1):
            cnt[i] = 0
        for i in range(n):
            key = rank[i + k] + 1 if i + k < n else 0
            cnt[key + 1] += 1
        for i in range(1, size + 1):
            cnt[i] += cnt[i - 1]
        for i in range(n):
            key = rank[i + k] + 1 if i + k < n else 0
            tmp[cnt[key]] = i
            cnt[key] += 1
        for i in range(size + 1):
            cnt[i] = 0
        for i in range(n):
            cnt[rank[i] + 1] += 1
        for i in range(1, size + 1):
            cnt[i] += cnt[i - 1]
        for j in range(n):
            i = tmp[j]
            sa[cnt[rank[i]]] = i
            cnt[rank[i]] += 1
        new_rank[sa[0]] = 0
        r = 0
        for j in range(1, n):
            a, b = sa[j - 1], sa[j]
            ra2 = rank[a + k] if a + k < n else -1
            rb2 = rank[b + k] if b + k < n else -1
            if rank[a] != rank[b] or ra2 != rb2:
                r += 1
            new_rank[b] = r
        for i in range(n):
            rank[i] = new_rank[i]
        if r == n - 1:
            break
        k <<= 1
        if k >= n:
            break
    return sa


@njit(cache=True)
def _kasai(t, sa):
    """LCP array: lcp[r] = common prefix length of suffixes ranked r-1, r."""
    n = t.shape[0]
    rank = np.empty(n, np.int32)
    for i in range(n):
        rank[sa[i]] = i
    lcp = np.zeros(n, np.int32)
    h = 0
    for i in range(n):
        r = rank[i]
        if r > 0:
            j = sa[r - 1]
            while i + h < n and j + h < n and t[i + h] == t[j + h]:
                h += 1
            lcp[r] = h
            if h > 0:
                h -= 1
        else:
            h = 0
    return lcp


_I32MAX = 2**31 - 1


def _build_min_tree(values: np.ndarray) -> tuple[np.ndarray, int]:
    """Complete binary min-tree over ``values``, padded with +inf leaves."""
    n = values.shape[0]
    size = 1
    while size < max(n, 1):
        size <<= 1
    tree = np.full(2 * size, _I32MAX, np.int32)
    tree[size:size + n] = values
    lvl = size
    while lvl > 1:
        half = lvl >> 1
        tree[half:lvl] = np.minimum(tree[lvl:2 * lvl:2], tree[lvl + 1:2 * lvl:2])
        lvl = half
    return tree, size


@njit(cache=True)
def _seg_min(tree, size, lo, hi):
    """Minimum of leaves [lo, hi)."""
    res = _I32MAX
    lo += size
    hi += size
    while lo < hi:
        if lo & 1:
            if tree[lo] < res:
                res = tree[lo]
            lo += 1
        if hi & 1:
            hi -= 1
            if tree[hi] < res:
                res = tree[hi]
        lo >>= 1
        hi >>= 1
    return res


@njit(cache=True)
def _seg_next_below(tree, size, start, limit):
    """Smallest leaf index >= start whose value is < limit, else -1."""
    if start < 0:
        start = 0
    if start >= size:
        return -1
    node = start + size
    while True:
        if tree[node] < limit:
            while node < size:
                node <<= 1
                if tree[node] >= limit:
                    node += 1
            return node - size
        while node & 1:
            node >>= 1
        if node <= 1:
            return -1
        node += 1


@njit(cache=True)
def _seg_prev_below(tree, size, start, limit):
    """Largest leaf index <= start whose value is < limit, else -1."""
    if start >= size:
        start = size - 1
    if start < 0:
        return -1
    node = start + size
    while True:
        if tree[node] < limit:
            while node < size:
                node = (node << 1) + 1
                if tree[node] >= limit:
                    node -= 1
            return node - size
        while not node & 1:
            node >>= 1
        if node <= 1:
            return -1
        node -= 1


class OfflineIndex:
    """Suffix-array index over a fixed text.

    Answers, all in 1-based positions:
      * ``lpf(i)``      longest previous factor at i,
      * ``lmocc(i, l)`` leftmost earlier occurrence of text[i..i+l),
      * ``lcp(i, j)``   longest common prefix of the suffixes at i and j.
    """

    __slots__ = ("text", "n", "_sa", "_rank", "_sa_tree", "_sa_size",
                 "_lcp_tree", "_lcp_size")

    def __init__(self, text: bytes):
        self.text = bytes(text)
        self.n = len(self.text)
        if self.n == 0:
            return
        t = np.frombuffer(self.text, np.uint8).astype(np.int32)
        sa = _sa_radix_doubling(t)
        lcp = _kasai(t, sa)
        rank = np.empty(self.n, np.int32)
        rank[sa] = np.arange(self.n, dtype=np.int32)
        self._sa = sa
        self._rank = rank
        self._sa_tree, self._sa_size = _build_min_tree(sa)
        self._lcp_tree, self._lcp_size = _build_min_tree(lcp)

    def _check_pos(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise ValueError(f"position {i} out of range 1..{self.n}")

    def lpf(self, i: int) -> int:
        self._check_pos(i)
        i0 = i - 1
        r = int(self._rank[i0])
        best = 0
        prev = _seg_prev_below(self._sa_tree, self._sa_size, r - 1, i0)
        if prev >= 0:
            best = _seg_min(self._lcp_tree, self._lcp_size, prev + 1, r + 1)
        nxt = _seg_next_below(self._sa_tree, self._sa_size, r + 1, i0)
        if nxt >= 0:
            cand = _seg_min(self._lcp_tree, self._lcp_size, r + 1, nxt + 1)
            if cand > best:
                best = cand
        return int(best)

    def lmocc(self, i: int, length: int) -> Optional[int]:
        n = self.n
        if not (1 <= i <= n and length >= 1 and i + length - 1 <= n):
            raise ValueError(
                f"factor (i={i}, length={length}) out of range for n={n}")
        i0 = i - 1
        r = int(self._rank[i0])
        lo = _seg_prev_below(self._lcp_tree, self._lcp_size, r, length)
        hi = _seg_next_below(self._lcp_tree, self._lcp_size, r + 1, length)
        if hi < 0:
            hi = n
        m = int(_seg_min(self._sa_tree, self._sa_size, lo, hi))
        return None if m == i0 else m + 1

    def lcp(self, i: int, j: int) -> int:
        self._check_pos(i)
        self._check_pos(j)
        if i == j:
            return self.n - i + 1
        ri = int(self._rank[i - 1])
        rj = int(self._rank[j - 1])
        if ri > rj:
            ri, rj = rj, ri
        return int(_seg_min(self._lcp_tree, self._lcp_size, ri + 1, rj + 1))


# ---------------------------------------------------------------------------
# Online masked suffix tree (Ukkonen) kernels.
#
# Node storage is flat int32 arrays: edge start, edge end (-1 = open),
# suffix link, first occurrence label, first child, next sibling.  Root
# children are a 256-entry byte-indexed table; sentinel-labelled edges
# never hang off the root because the length-1 pure-sentinel suffix is
# skipped.  Mutable parser state lives in an int64 array so the kernel
# can update it in place.
# ---------------------------------------------------------------------------

S_NSEQ, S_NNODES, S_NODE, S_EDGE, S_ALEN, S_REM = 0, 1, 2, 3, 4, 5


@njit(cache=True)
def _uk_extend(seq, start, endo, slink, focc, fc, ns, root_child, state, data):
    nseq = state[S_NSEQ]
    nn = state[S_NNODES]
    node = state[S_NODE]
    edge = state[S_EDGE]
    alen = state[S_ALEN]
    rem = state[S_REM]
    for idx in range(data.shape[0]):
        c = data[idx]
        pos = nseq
        seq[pos] = c
        nseq += 1
        rem += 1
        last = 0
        sentinel = c >= 256
        while rem > 0:
            if sentinel and rem == 1:
                # skip the suffix that is the bare sentinel so the root
                # keeps only byte-valued children
                if last != 0:
                    slink[last] = 0
                    last = 0
                rem = 0
                node = 0
                alen = 0
                break
            if alen == 0:
                edge = pos
            s = seq[edge]
            prev = -1
            if node == 0:
                nxt = root_child[s] if s < 256 else -1
            else:
                nxt = fc[node]
                while nxt != -1 and seq[start[nxt]] != s:
                    prev = nxt
                    nxt = ns[nxt]
            if nxt == -1:
                leaf = nn
                nn += 1
                start[leaf] = pos
                endo[leaf] = -1
                slink[leaf] = 0
                focc[leaf] = pos - rem + 1
                if node == 0:
                    root_child[s] = leaf
                    fc[leaf] = -1
                    ns[leaf] = -1
                else:
                    fc[leaf] = -1
                    ns[leaf] = fc[node]
                    fc[node] = leaf
                if last != 0:
                    slink[last] = node
                    last = 0
            else:
                e = endo[nxt]
                elen = (nseq if e < 0 else e) - start[nxt]
                if alen >= elen:
                    node = nxt
                    edge += elen
                    alen -= elen
                    continue
                if seq[start[nxt] + alen] == c:
                    alen += 1
                    if last != 0:
                        slink[last] = node
                    break
                split = nn
                leaf = nn + 1
                nn += 2
                sn = start[nxt]
                start[split] = sn
                endo[split] = sn + alen
                slink[split] = 0
                focc[split] = focc[nxt]
                start[leaf] = pos
                endo[leaf] = -1
                slink[leaf] = 0
                focc[leaf] = pos - rem + 1
                fc[leaf] = -1
                ns[leaf] = -1
                if node == 0:
                    root_child[seq[sn]] = split
                elif prev == -1:
                    fc[node] = split
                else:
                    ns[prev] = split
                ns[split] = ns[nxt]
                fc[split] = leaf
                ns[leaf] = nxt
                ns[nxt] = -1
                start[nxt] = sn + alen
                if last != 0:
                    slink[last] = split
                last = split
            rem -= 1
            if node == 0 and alen > 0:
                alen -= 1
                edge = pos - rem + 1
            elif node != 0:
                node = slink[node]
    state[S_NSEQ] = nseq
    state[S_NNODES] = nn
    state[S_NODE] = node
    state[S_EDGE] = edge
    state[S_ALEN] = alen
    state[S_REM] = rem


@njit(cache=True)
def _uk_prefix_query(seq, start, endo, focc, fc, ns, root_child, nseq,
                     q, qoff, qlim):
    """Longest prefix of q[qoff:qlim] readable from the root; returns its
    length and the first-occurrence label of the locus (-1 when length 0)."""
    node = 0
    v = -1
    off = 0
    vlen = 0
    l = 0
    qn = qlim - qoff
    while l < qn:
        c = q[qoff + l]
        if v >= 0 and off == vlen:
            node = v
            v = -1
            off = 0
        if v < 0:
            if node == 0:
                nxt = root_child[c]
            else:
                nxt = fc[node]
                while nxt != -1 and seq[start[nxt]] != c:
                    nxt = ns[nxt]
            if nxt == -1:
                break
            v = nxt
            e = endo[v]
            vlen = (nseq if e < 0 else e) - start[v]
        if seq[start[v] + off] != c:
            break
        off += 1
        l += 1
    if l == 0:
        return 0, -1
    if v >= 0 and off > 0:
        return l, focc[v]
    return l, focc[node]


@njit(cache=True)
def _match_len(text, i, j, limit):
    """Equal-symbol run length of text[i..] vs text[j..], at most limit."""
    t = 0
    while t < limit and text[i + t] == text[j + t]:
        t += 1
    return t


class OnlineIndex:
    """Append-only masked substring index.

    Supports appending symbols (optionally masked), and querying the
    longest prefix of a pattern that occurs entirely over unmasked
    appended symbols, together with that prefix's leftmost occurrence.
    Earlier answers stay valid as the text grows: appending never removes
    occurrences, and masked positions never participate in any match.
    """

    __slots__ = ("_seq", "_start", "_endo", "_slink", "_focc", "_fc", "_ns",
                 "_root_child", "_state")

    def __init__(self, size_hint: int = 64):
        cap_seq = max(size_hint, 16)
        cap_nodes = 2 * cap_seq + 8
        self._seq = np.empty(cap_seq, np.int32)
        self._start = np.empty(cap_nodes, np.int32)
        self._endo = np.empty(cap_nodes, np.int32)
        self._slink = np.zeros(cap_nodes, np.int32)
        self._focc = np.zeros(cap_nodes, np.int32)
        self._fc = np.full(cap_nodes, -1, np.int32)
        self._ns = np.full(cap_nodes, -1, np.int32)
        self._root_child = np.full(256, -1, np.int32)
        self._state = np.zeros(8, np.int64)
        self._state[S_NNODES] = 1
        self._start[0] = 0
        self._endo[0] = 0

    @property
    def n(self) -> int:
        return int(self._state[S_NSEQ])

    @property
    def masked_text(self) -> list[Optional[int]]:
        """Appended symbols with masked positions reported as None."""
        return [None if s >= 256 else int(s)
                for s in self._seq[:self.n]]

    def _ensure(self, extra_syms: int) -> None:
        need_seq = int(self._state[S_NSEQ]) + extra_syms
        if need_seq > self._seq.shape[0]:
            cap = max(2 * self._seq.shape[0], need_seq)
            self._seq = np.resize(self._seq, cap)
        need_nodes = int(self._state[S_NNODES]
                         + 2 * (extra_syms + self._state[S_REM]) + 4)
        if need_nodes > self._start.shape[0]:
            cap = max(2 * self._start.shape[0], need_nodes)
            for name in ("_start", "_endo", "_slink", "_focc", "_fc", "_ns"):
                arr = getattr(self, name)
                new = np.empty(cap, np.int32)
                new[:arr.shape[0]] = arr
                if name in ("_fc", "_ns"):
                    new[arr.shape[0]:] = -1
                setattr(self, name, new)

    def extend(self, data, mask=None) -> None:
        """Append a block of symbols; mask[i] true hides position i forever."""
        if isinstance(data, (bytes, bytearray, memoryview)):
            syms = np.frombuffer(data, np.uint8).astype(np.int32)
        else:
            syms = np.asarray(data, np.int32).copy()
        if mask is not None:
            p0 = self.n
            mi = np.flatnonzero(mask)
            if mi.size:
                syms[mi] = (256 + p0 + mi).astype(np.int32)
        self._ensure(syms.shape[0])
        _uk_extend(self._seq, self._start, self._endo, self._slink,
                   self._focc, self._fc, self._ns, self._root_child,
                   self._state, syms)

    def append(self, symbol: int, masked: bool = False) -> None:
        self.extend(bytes([symbol]), [masked] if masked else None)

    def has_symbol(self, symbol: int) -> bool:
        """True when the symbol occurs at some unmasked position."""
        return self._root_child[symbol] != -1

    def _prefix_query_arr(self, q_i32, qoff: int, qlim: int):
        """Kernel-level query over a pre-converted int32 array; returns
        (length, 0-based occurrence or -1)."""
        return _uk_prefix_query(self._seq, self._start, self._endo,
                                self._focc, self._fc, self._ns,
                                self._root_child, self._state[S_NSEQ],
                                q_i32, qoff, qlim)

    def prefix_query(self, query) -> tuple[int, Optional[int]]:
        """Longest unmasked-occurring prefix of ``query`` and the 1-based
        leftmost start of that prefix (None when length is 0)."""
        if isinstance(query, (bytes, bytearray, memoryview)):
            qa = np.frombuffer(query, np.uint8).astype(np.int32)
        else:
            qa = np.asarray(query, np.int32)
        l, occ = self._prefix_query_arr(qa, 0, qa.shape[0])
        return int(l), (None if occ < 0 else int(occ) + 1)
