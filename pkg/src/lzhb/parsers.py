"""Greedy height-bounded parsers, brute-force optimal parsers, generators.

Five parsers produce standard encodings (``parse_lz77`` plus the
height-bounded ``parse_lzhb1``..``parse_lzhb3``) or modified encodings
(``parse_lzhb4``).  ``optimal_bruteforce`` finds exact minimum-size
encodings for tiny inputs.  The generators build the string families
used by the experiments: a greedy-hostile family, a family whose LZ77
referencing forest is tall, and mutated-copy "versioned" files.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from typing import Optional

import numpy as np
from numba import njit

from .encodings import (
    Copy,
    Encoding,
    Literal,
    PeriodicCopy,
    Run,
    Unbounded,
)
from .text_index import (
    OfflineIndex,
    OnlineIndex,
    _match_len,
    naive_min_period,
    window_leftmost_occurrence,
)

VARIANTS = ("lz77", "lzhb1", "lzhb2", "lzhb3", "lzhb4")


def parse(text: bytes, variant: str, h: float = Unbounded) -> Encoding:
    """Dispatch to one of the named parsers."""
    if variant == "lz77":
        return parse_lz77(text)
    if variant == "lzhb1":
        return parse_lzhb1(text, h)
    if variant == "lzhb2":
        return parse_lzhb2(text, h)
    if variant == "lzhb3":
        return parse_lzhb3(text, h)
    if variant == "lzhb4":
        return parse_lzhb4(text, h)
    raise ValueError(f"unknown variant {variant!r}")


# ---------------------------------------------------------------------------
# Small shared helpers.
# ---------------------------------------------------------------------------


def _tile_copy_heights(H: list, b0: int, s0: int, length: int) -> list:
    """Heights for a copy phrase at b0 sourcing s0, writing into H[b0:]."""
    win_end = min(s0 + length, b0)
    seg = [H[t] + 1 for t in range(s0, win_end)]
    w = len(seg)
    if length > w:
        seg = (seg * (-(-length // w)))[:length]
    H[b0:b0 + length] = seg
    return seg


def _all_literals(variant: str, text: bytes, h: float) -> Encoding:
    return Encoding(variant, h, [Literal(c) for c in text])


def _run_length(text: bytes) -> list:
    """Maximal-run decomposition as Run phrases."""
    arr = np.frombuffer(text, np.uint8)
    if arr.size == 0:
        return []
    bounds = np.flatnonzero(arr[1:] != arr[:-1]) + 1
    starts = np.concatenate(([0], bounds))
    ends = np.concatenate((bounds, [arr.size]))
    return [Run(int(e - s), int(arr[s])) for s, e in zip(starts, ends)]


# ---------------------------------------------------------------------------
# LZ77 and the height-bounded standard parsers.
# ---------------------------------------------------------------------------


def parse_lz77(text: bytes) -> Encoding:
    """Classic greedy LZ77: longest previous factor, leftmost source,
    self-references allowed; factors shorter than 2 become literals."""
    text = bytes(text)
    n = len(text)
    idx = OfflineIndex(text)
    phrases = []
    b = 1
    while b <= n:
        l = idx.lpf(b)
        if l >= 2:
            phrases.append(Copy(l, idx.lmocc(b, l)))
            b += l
        else:
            phrases.append(Literal(text[b - 1]))
            b += 1
    return Encoding("lz77", Unbounded, phrases)


def parse_lzhb1(text: bytes, h: float = Unbounded) -> Encoding:
    """Height-bounded parse that keeps the LZ77 source choice but truncates
    the factor before the first height-saturated source position."""
    text = bytes(text)
    if h == 0:
        return _all_literals("lzhb1", text, 0)
    n = len(text)
    idx = OfflineIndex(text)
    phrases = []
    H = [0] * n
    sat: list = []          # 1-based saturated positions, ascending
    bounded = h is not Unbounded
    b = 1
    while b <= n:
        l = idx.lpf(b)
        s = None
        if l >= 1:
            s = idx.lmocc(b, l)
            if bounded:
                win_end = min(b, s + l)
                j = bisect_left(sat, s)
                if j < len(sat) and sat[j] < win_end:
                    l = sat[j] - s
        if l >= 2:
            phrases.append(Copy(l, s))
            seg = _tile_copy_heights(H, b - 1, s - 1, l)
            if bounded:
                sat.extend(b + t for t, v in enumerate(seg) if v == h)
            b += l
        else:
            phrases.append(Literal(text[b - 1]))
            b += 1
    return Encoding("lzhb1", h, phrases)


def parse_lzhb2(text: bytes, h: float = Unbounded) -> Encoding:
    """Height-bounded parse that grows the factor one symbol at a time,
    re-choosing the leftmost source at each length, stopping at the first
    length whose leftmost source window is saturated.

    Growth is processed in stretches sharing one leftmost source: while the
    source stays fixed, window validity is monotone in the length, so each
    stretch needs a single saturation lookup.
    """
    text = bytes(text)
    if h == 0:
        return _all_literals("lzhb2", text, 0)
    n = len(text)
    idx = OfflineIndex(text)
    phrases = []
    H = [0] * n
    sat: list = []          # 1-based saturated positions, ascending
    bounded = h is not Unbounded
    b = 1
    while b <= n:
        cur_l = 0
        cur_s = None
        while b + cur_l <= n:
            j = idx.lmocc(b, cur_l + 1)
            if j is None:
                break
            stretch = min(idx.lcp(j, b), n - b + 1)
            lim = stretch
            if bounded:
                si = bisect_left(sat, j)
                if si < len(sat) and sat[si] < b:
                    lim = sat[si] - j
            if lim < cur_l + 1:
                break
            if stretch > lim:
                cur_l, cur_s = lim, j
                break
            cur_l, cur_s = stretch, j
        if cur_l >= 2:
            phrases.append(Copy(cur_l, cur_s))
            seg = _tile_copy_heights(H, b - 1, cur_s - 1, cur_l)
            if bounded:
                sat.extend(b + t for t, v in enumerate(seg) if v == h)
            b += cur_l
        else:
            phrases.append(Literal(text[b - 1]))
            b += 1
    return Encoding("lzhb2", h, phrases)


def parse_lzhb3(text: bytes, h: float = Unbounded) -> Encoding:
    """Height-bounded parse over a masked online index: saturated positions
    are masked out of the searchable prefix, and a window near the phrase
    start may override the source when that occurrence extends further."""
    text = bytes(text)
    if h == 0:
        return _all_literals("lzhb3", text, 0)
    n = len(text)
    u = OnlineIndex(size_hint=n)
    t32 = np.frombuffer(text, np.uint8).astype(np.int32)
    tu8 = np.frombuffer(text, np.uint8)
    phrases = []
    H = [0] * n
    bounded = h is not Unbounded
    last_sat = 0
    b = 1
    while b <= n:
        b0 = b - 1
        l, occ0 = u._prefix_query_arr(t32, b0, n)
        l = int(l)
        s = int(occ0) + 1 if l > 0 else None
        if l >= 1 and b + l <= n:
            k = window_leftmost_occurrence(
                text, b, l, max(last_sat + 1, b - l), b)
            if k is not None and text[k - 1 + l] == text[b0 + l]:
                s = k
                ext = _match_len(tu8, k + l, b0 + l + 1, n - (b0 + l + 1))
                l += 1 + int(ext)
        if l >= 2:
            phrases.append(Copy(l, s))
            seg = _tile_copy_heights(H, b0, s - 1, l)
        else:
            l = 1
            phrases.append(Literal(text[b0]))
            seg = (0,)
        mask = None
        if bounded:
            satpos = [t for t, v in enumerate(seg) if v == h]
            if satpos:
                mask = np.zeros(l, np.bool_)
                mask[satpos] = True
                last_sat = b + satpos[-1]
        u.extend(t32[b0:b0 + l], mask)
        b += l
    return Encoding("lzhb3", h, phrases)


# ---------------------------------------------------------------------------
# LZHB4: run / periodic-copy parsing over the masked online index.
#
# The per-phrase kernel fuses the period tracking (border array) with the
# suffix-tree descent: the tree walker only advances when the minimum
# period strictly increases, and the phrase stops when the new period's
# prefix has no unmasked occurrence.
# ---------------------------------------------------------------------------


@njit(cache=True)
def _lzhb4_phrase(seq, start, endo, focc, fc, ns, root_child, nseq,
                  text, b0, n, border):
    c0 = text[b0]
    r = 1
    while b0 + r < n and text[b0 + r] == c0:
        r += 1
    v0 = root_child[c0]
    if v0 == -1:
        # the symbol has no unmasked occurrence: the phrase is the maximal
        # run, and no longer period can ever validate
        return r, 1, -1
    node = 0
    v = v0
    e = endo[v]
    vlen = (nseq if e < 0 else e) - start[v]
    off = 1
    d = 1
    occ_cur = focc[v0]
    for i in range(1, r):
        border[i] = i
    border[0] = 0
    l = r
    while b0 + l < n:
        c = text[b0 + l]
        k = border[l - 1]
        while k > 0 and text[b0 + k] != c:
            k = border[k - 1]
        if text[b0 + k] == c:
            k += 1
        p = l + 1 - k
        if p > d:
            # tentative walk: commit the new period only if the whole
            # period-long prefix is found, otherwise the accepted phrase
            # keeps its old minimum period
            ok = True
            dd = d
            while dd < p:
                cc = text[b0 + dd]
                if v >= 0 and off == vlen:
                    node = v
                    v = -1
                    off = 0
                if v < 0:
                    if node == 0:
                        nxt = root_child[cc]
                    else:
                        nxt = fc[node]
                        while nxt != -1 and seq[start[nxt]] != cc:
                            nxt = ns[nxt]
                    if nxt == -1:
                        ok = False
                        break
                    v = nxt
                    e = endo[v]
                    vlen = (nseq if e < 0 else e) - start[v]
                if seq[start[v] + off] != cc:
                    ok = False
                    break
                off += 1
                dd += 1
            if not ok:
                break
            d = dd
            occ_cur = focc[v] if (v >= 0 and off > 0) else focc[node]
        border[l] = k
        l += 1
    return l, d, occ_cur


def parse_lzhb4(text: bytes, h: float = Unbounded) -> Encoding:
    """Greedy modified parse: each phrase extends while its minimum period
    stays 1 or the period-long prefix still occurs unmasked in the parsed
    prefix; emits Run for period 1, PeriodicCopy otherwise."""
    text = bytes(text)
    if h == 0:
        return Encoding("lzhb4", 0, _run_length(text))
    n = len(text)
    u = OnlineIndex(size_hint=n)
    t32 = np.frombuffer(text, np.uint8).astype(np.int32)
    tu8 = np.frombuffer(text, np.uint8)
    border = np.zeros(n + 1, np.int32)
    phrases = []
    H = [0] * n
    bounded = h is not Unbounded
    b = 1
    while b <= n:
        b0 = b - 1
        l, p, occ0 = _lzhb4_phrase(
            u._seq, u._start, u._endo, u._focc, u._fc, u._ns,
            u._root_child, u._state[0], tu8, b0, n, border)
        l, p = int(l), int(p)
        if p == 1:
            phrases.append(Run(l, text[b0]))
            seg = [0] * l
        else:
            s = int(occ0) + 1
            phrases.append(PeriodicCopy(l, s, p))
            s0 = s - 1
            win = [H[t] + 1 for t in range(s0, s0 + p)]
            seg = (win * (-(-l // p)))[:l]
            H[b0:b0 + l] = seg
        mask = None
        if bounded:
            satpos = [t for t, v in enumerate(seg) if v == h]
            if satpos:
                mask = np.zeros(l, np.bool_)
                mask[satpos] = True
        u.extend(t32[b0:b0 + l], mask)
        b += l
    return Encoding("lzhb4", h, phrases)


# ---------------------------------------------------------------------------
# Brute-force optimal parsers (tiny inputs only).
# ---------------------------------------------------------------------------

BRUTE_FORCE_LIMIT = 16


def _check_brute_size(n: int) -> None:
    if n > BRUTE_FORCE_LIMIT:
        raise ValueError(
            f"brute-force parser accepts at most {BRUTE_FORCE_LIMIT} "
            f"symbols, got {n}")


def _std_candidates(text: bytes):
    """For each position b0, the copy sources per length: cand[b0][l] is the
    ascending list of 0-based sources with a (possibly overlapping) match."""
    n = len(text)
    cand: list[dict[int, list[int]]] = [dict() for _ in range(n)]
    for b0 in range(n):
        for s0 in range(b0):
            m = 0
            while b0 + m < n and text[s0 + m] == text[b0 + m]:
                m += 1
            for l in range(2, m + 1):
                cand[b0].setdefault(l, []).append(s0)
    return cand


def _mod_candidates(text: bytes):
    """For each position b0 and length l >= 1: the minimum period of
    text[b0..b0+l), plus ascending source lists per (b0, period)."""
    n = len(text)
    periods: list[list[int]] = [[0] * (n - b0 + 1) for b0 in range(n)]
    for b0 in range(n):
        for l in range(1, n - b0 + 1):
            periods[b0][l] = naive_min_period(text[b0:b0 + l])
    sources: list[dict[int, list[int]]] = [dict() for _ in range(n)]
    for b0 in range(n):
        for l in range(1, n - b0 + 1):
            p = periods[b0][l]
            if p >= 2 and p not in sources[b0]:
                occ = [s0 for s0 in range(b0 - p + 1)
                       if text[s0:s0 + p] == text[b0:b0 + p]]
                sources[b0][p] = occ
    return periods, sources


def _dp_counts(text: bytes, modified: bool):
    """Minimum phrase counts per suffix ignoring heights (valid lower bound
    for any height; exact at no bound)."""
    n = len(text)
    std = None if modified else _std_candidates(text)
    mod = _mod_candidates(text) if modified else None
    dp = [0] * (n + 1)
    for b0 in range(n - 1, -1, -1):
        best = 1 + dp[b0 + 1]
        if modified:
            periods, sources = mod
            for l in range(2, n - b0 + 1):
                p = periods[b0][l]
                if p == 1 or sources[b0][p]:
                    best = min(best, 1 + dp[b0 + l])
        else:
            for l, srcs in std[b0].items():
                if srcs:
                    best = min(best, 1 + dp[b0 + l])
        dp[b0] = best
    return dp


def _optimal_unbounded(text: bytes, modified: bool) -> list:
    """Exact minimum-size parse with no height bound: right-to-left DP and
    a canonical left-to-right reconstruction (longest first, then smallest
    source)."""
    n = len(text)
    dp = _dp_counts(text, modified)
    phrases = []
    if modified:
        periods, sources = _mod_candidates(text)
    else:
        std = _std_candidates(text)
    b0 = 0
    while b0 < n:
        length = 1
        for l in range(n - b0, 1, -1):
            if modified:
                p = periods[b0][l]
                feasible = p == 1 or sources[b0][p]
            else:
                feasible = l in std[b0] and std[b0][l]
            if feasible and dp[b0] == 1 + dp[b0 + l]:
                length = l
                break
        if modified:
            p = periods[b0][length]
            if p == 1:
                phrases.append(Run(length, text[b0]))
            else:
                phrases.append(PeriodicCopy(length, sources[b0][p][0] + 1, p))
        else:
            if length == 1:
                phrases.append(Literal(text[b0]))
            else:
                phrases.append(Copy(length, std[b0][length][0] + 1))
        b0 += length
    return phrases


def optimal_bruteforce(text: bytes, h: float = Unbounded,
                       modified: bool = False) -> Encoding:
    """Exact minimum-size h-bounded encoding by exhaustive search.

    Only accepts tiny inputs (n <= 16).  Ties are broken deterministically:
    fewest phrases, then longest-first phrase lengths, then smallest
    sources.  The returned variant is "optimal" or "optimal-mod".
    """
    text = bytes(text)
    n = len(text)
    _check_brute_size(n)
    variant = "optimal-mod" if modified else "optimal"
    if n == 0:
        return Encoding(variant, h, [])
    if h == Unbounded:
        return Encoding(variant, h, _optimal_unbounded(text, modified))

    if modified:
        periods, sources = _mod_candidates(text)
    else:
        std = _std_candidates(text)
    lb = _dp_counts(text, modified)

    # greedy parses give an achievable size; search strictly below seed+1
    if modified:
        seed = parse_lzhb4(text, h).z
    else:
        seed = min(parse_lzhb1(text, h).z, parse_lzhb2(text, h).z,
                   parse_lzhb3(text, h).z)

    best = seed + 1
    best_sol: Optional[list] = None
    H: list[int] = []
    sol: list = []

    def candidates(b0: int):
        """Phrase candidates at b0 in canonical order (longest first,
        sources ascending)."""
        out = []
        for l in range(n - b0, 1, -1):
            if modified:
                p = periods[b0][l]
                if p == 1:
                    out.append((l, None, 1))
                else:
                    for s0 in sources[b0][p]:
                        if all(v < h for v in H[s0:s0 + p]):
                            out.append((l, s0, p))
            else:
                for s0 in std[b0].get(l, ()):
                    if all(v < h for v in H[s0:min(s0 + l, b0)]):
                        out.append((l, s0, 0))
        out.append((1, None, 1) if modified else (1, None, 0))
        return out

    def dfs(b0: int, count: int) -> None:
        nonlocal best, best_sol
        if count + lb[b0] >= best:
            return
        if b0 == n:
            best = count
            best_sol = list(sol)
            return
        for l, s0, p in candidates(b0):
            if s0 is None:
                if modified:
                    ph = Run(l, text[b0])
                    seg = [0] * l
                elif l == 1:
                    ph = Literal(text[b0])
                    seg = [0]
                else:
                    continue
            elif modified:
                ph = PeriodicCopy(l, s0 + 1, p)
                win = [H[t] + 1 for t in range(s0, s0 + p)]
                seg = (win * (-(-l // p)))[:l]
            else:
                ph = Copy(l, s0 + 1)
                win = [H[t] + 1 for t in range(s0, min(s0 + l, b0))]
                seg = (win * (-(-l // len(win))))[:l]
            H.extend(seg)
            sol.append(ph)
            dfs(b0 + l, count + 1)
            sol.pop()
            del H[b0:]

    dfs(0, 0)
    assert best_sol is not None
    return Encoding(variant, h, best_sol)


# ---------------------------------------------------------------------------
# String family generators.
# ---------------------------------------------------------------------------


def gen_greedy_adversary(k: int) -> bytes:
    """The family "ababc" + "bab"*k on which greedy height-1 parsing uses
    4 + 2k phrases while 8 always suffice."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return b"ababc" + b"bab" * k


_TALL_MAX_K = 120


def gen_tall_lz77_string(k: int) -> bytes:
    """A k-block string whose greedy LZ77 referencing forest has height
    >= k: each block makes its two 'b' positions reference the closest
    previous 'b', climbing two levels per block.  Blocks after the first
    are introduced by distinct 3-byte separators so no letter pair ever
    repeats accidentally."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if k > _TALL_MAX_K:
        raise ValueError(f"family defined for k <= {_TALL_MAX_K}")
    letters = list(range(99, 255)) + list(range(0, 84))
    free = list(range(84, 97))
    bb = ord("b")
    out = bytearray(b"abab")
    if k >= 1:
        c = letters
        out += bytes([c[0], c[1], bb, c[0]])
        for m in range(1, k):
            sep = bytes([255, free[(m - 1) // 13], free[(m - 1) % 13]])
            out += sep
            out += bytes([c[2 * m - 1], bb, c[2 * m],
                          c[2 * m + 1], bb, c[2 * m]])
    return bytes(out)


def gen_versioned(seed_len: int = 100_000, copies: int = 100,
                  rate: float = 0.001, seed: int = 7) -> bytes:
    """Concatenation of ``copies`` versions of a random seed, each version
    mutating ``rate * seed_len`` random positions of the previous one."""
    rng = np.random.default_rng(seed)
    cur = rng.integers(0, 256, seed_len, dtype=np.uint8)
    muts = max(int(round(rate * seed_len)), 0)
    parts = []
    for _ in range(copies):
        parts.append(cur.copy())
        if muts:
            idx = rng.integers(0, seed_len, muts)
            cur[idx] = rng.integers(0, 256, muts)
    return b"".join(p.tobytes() for p in parts)
