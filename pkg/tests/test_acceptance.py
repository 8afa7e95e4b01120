"""Acceptance checklist for the whole package.

Each test is one numbered delivery criterion with its tolerance and time
budget asserted in place.  A summary line is printed per criterion so a
``pytest -s`` run reads as a checklist.  All randomness is seeded.
"""

import itertools
import math
import os
import random
import resource
import time
from pathlib import Path

import pytest

from lzhb import (
    Copy,
    Literal,
    RandomAccessIndex,
    Unbounded,
    compute_heights,
    decode,
    gen_greedy_adversary,
    gen_tall_lz77_string,
    gen_versioned,
    naive_lmocc,
    naive_lpf,
    naive_prefix_query,
    OfflineIndex,
    OnlineIndex,
    optimal_bruteforce,
    parse,
    parse_lz77,
    verify,
)
from lzhb.harness import sweep, write_sweep_csv

import io
import numpy as np

VARIANTS = ("lzhb1", "lzhb2", "lzhb3", "lzhb4")
BOUNDS = (0, 1, 2, 3, 8, Unbounded)


def rand_text(rng, n, sigma):
    return bytes(rng.randrange(sigma) + 97 for _ in range(n))


@pytest.fixture(scope="module", autouse=True)
def warm_kernels():
    """Trigger all JIT compilation before anything is timed."""
    t = b"abracadabra" * 3
    parse_lz77(t)
    for v in VARIANTS:
        parse(t, v, 2)
        parse(t, v, Unbounded)
    u = OnlineIndex()
    u.extend(t, np.zeros(len(t), bool))
    u.prefix_query(b"abr")


@pytest.fixture(scope="module")
def round_trip_corpus():
    """5,000 seeded strings, n <= 2,000 drawn log-uniformly, sigma in
    {1, 2, 4, 26}."""
    rng = random.Random(0xC0FFEE)
    corpus = []
    for _ in range(5000):
        n = int(round(math.exp(rng.uniform(0.0, math.log(2000)))))
        sigma = rng.choice((1, 2, 4, 26))
        corpus.append(rand_text(rng, n, sigma))
    return corpus


def test_criterion_01_worked_examples():
    """The 11-char example parses to the known 5-phrase encoding and both
    height sequences reproduce exactly.  Budget: 1 s."""
    t0 = time.perf_counter()
    e = parse_lz77(b"ababacbabac")
    assert e.phrases == (Literal(97), Literal(98), Copy(3, 1),
                         Literal(99), Copy(5, 2))
    std = parse_lz77(b"aababacbaba")
    assert compute_heights(std) == [0, 0, 0, 1, 1, 1, 0, 1, 2, 2, 2]
    mod = parse(b"aababacbaba", "lzhb4", Unbounded)
    assert compute_heights(mod) == [0, 0, 0, 1, 1, 1, 0, 1, 2, 1, 2]
    dt = time.perf_counter() - t0
    assert dt < 1.0
    print(f"\ncriterion 1 PASS: worked examples exact in {dt:.3f}s")


def test_criterion_02_round_trip(round_trip_corpus):
    """decode(parse(x)) == x and max height <= h over the full grid.
    Budget: 5 min."""
    t0 = time.perf_counter()
    checked = 0
    for text in round_trip_corpus:
        e77 = parse_lz77(text)
        assert decode(e77) == text
        checked += 1
        for variant in VARIANTS:
            for h in BOUNDS:
                e = parse(text, variant, h)
                assert decode(e) == text, (variant, h, text)
                if text:
                    hs = compute_heights(e)
                    assert max(hs) <= h, (variant, h, text)
                checked += 1
    dt = time.perf_counter() - t0
    assert dt < 300.0
    print(f"\ncriterion 2 PASS: {checked} parses round-trip in {dt:.1f}s")


def test_criterion_03_unbounded_equivalence(round_trip_corpus):
    """The three truncation/stepping/rescan parsers collapse to the plain
    greedy parse, phrase for phrase, when no bound is set."""
    t0 = time.perf_counter()
    for text in round_trip_corpus:
        base = parse_lz77(text).phrases
        for variant in ("lzhb1", "lzhb2", "lzhb3"):
            assert parse(text, variant, Unbounded).phrases == base, (
                variant, text)
    dt = time.perf_counter() - t0
    print(f"\ncriterion 3 PASS: phrase-identical at no bound in {dt:.1f}s")


def test_criterion_04_sandwich():
    """Modified-greedy size <= standard-greedy size <= twice the modified
    optimum: all binary strings with n <= 12 plus 500 random with n <= 14."""
    t0 = time.perf_counter()
    texts = [bytes(bits)
             for n in range(13)
             for bits in itertools.product(b"ab", repeat=n)]
    rng = random.Random(4)
    texts += [rand_text(rng, rng.randint(1, 14), rng.choice((2, 3, 4)))
              for _ in range(500)]
    for text in texts:
        z_mod = parse(text, "lzhb4", Unbounded).z
        z_std = parse_lz77(text).z
        z_opt_mod = optimal_bruteforce(text, Unbounded, True).z
        assert z_opt_mod <= z_mod <= z_std <= 2 * z_opt_mod, text
    dt = time.perf_counter() - t0
    print(f"\ncriterion 4 PASS: sandwich on {len(texts)} strings in {dt:.1f}s")


def test_criterion_05_optimal_monotone_and_greedy_optimal():
    """On all binary strings with n <= 10 the exhaustive optimum never
    grows when the bound is relaxed, and with no bound it equals the
    greedy size exactly."""
    t0 = time.perf_counter()
    grid = (0, 1, 2, 3, 8, Unbounded)
    count = 0
    for n in range(11):
        for bits in itertools.product(b"ab", repeat=n):
            text = bytes(bits)
            sizes = [optimal_bruteforce(text, h).z for h in grid]
            assert all(a >= b for a, b in zip(sizes, sizes[1:])), text
            assert sizes[-1] == parse_lz77(text).z, text
            count += 1
    dt = time.perf_counter() - t0
    print(f"\ncriterion 5 PASS: {count} strings monotone+greedy-optimal "
          f"in {dt:.1f}s")


def test_criterion_06_greedy_non_optimality():
    """On the adversary family at bound 1 the greedy rescan parser grows
    linearly (4 + 2k) while the exhaustive optimum stays bounded.

    The classic 8-phrase witness a|b|ab|c|b|a|b|(bab)^{k-1} proves the
    optimum is at most 8 for every k; exhaustive search shows the true
    optimum is 7 at k=2 (a|b|a|b|c|bab|bab) and 8 at k=3, so the witness
    size is an upper bound rather than the optimum itself.  The values
    asserted here are the exhaustively verified ones.
    """
    t0 = time.perf_counter()
    opts = {}
    for k in (2, 3):
        text = gen_greedy_adversary(k)
        greedy = parse(text, "lzhb3", 1)
        assert verify(greedy, text, 1).ok
        assert greedy.z == 4 + 2 * k, k
        opt = optimal_bruteforce(text, 1)
        assert verify(opt, text, 1).ok
        opts[k] = opt.z
        assert opt.z <= 8, k
    assert opts[2] == 7
    assert opts[3] == 8
    # the gap grows with k: greedy is not optimal and gets worse
    assert (4 + 2 * 3) - opts[3] > (4 + 2 * 2) - opts[2] > 0
    dt = time.perf_counter() - t0
    print(f"\ncriterion 6 PASS: greedy 8/10 vs optimal {opts[2]}/{opts[3]} "
          f"in {dt:.1f}s")


def test_criterion_07_tall_family():
    """Unbounded greedy reference chains grow linearly on the tall family
    while the rescan parser at bound 5 stays flat and correct.
    Budget: 10 s."""
    t0 = time.perf_counter()
    for k in (5, 20, 50):
        text = gen_tall_lz77_string(k)
        assert max(compute_heights(parse_lz77(text))) >= k, k
        e = parse(text, "lzhb3", 5)
        assert max(compute_heights(e)) <= 5
        assert decode(e) == text
    dt = time.perf_counter() - t0
    assert dt < 10.0
    print(f"\ncriterion 7 PASS: tall chains bounded in {dt:.2f}s")


def test_criterion_08_access_contract():
    """10,000 random accesses across 10 texts return the decoded symbol
    with exactly height-many steps, never more than the bound."""
    t0 = time.perf_counter()
    rng = random.Random(8)
    texts = [
        (b"ababacbabac", "lz77", Unbounded),
        (gen_greedy_adversary(12), "lzhb3", 1),
        (gen_tall_lz77_string(10), "lzhb3", 5),
        (b"a" * 4096, "lzhb4", 3),
        (b"abc" * 700, "lzhb2", 2),
        (gen_versioned(1500, 4, 0.01, seed=81), "lzhb1", 8),
        (rand_text(rng, 3000, 4), "lzhb4", 2),
        (rand_text(rng, 5000, 26), "lzhb1", 0),
        (rand_text(rng, 2500, 2), "lzhb2", Unbounded),
        (b"mississippi" * 200, "lzhb3", 4),
    ]
    total = 0
    for text, variant, h in texts:
        e = parse(text, variant, h)
        idx = RandomAccessIndex(e)
        dec = decode(e)
        assert dec == text
        H = compute_heights(e)
        for _ in range(1000):
            i = rng.randint(1, len(text))
            sym, steps = idx.access(i)
            assert sym == dec[i - 1]
            assert steps == H[i - 1]
            assert steps <= h
            total += 1
    dt = time.perf_counter() - t0
    print(f"\ncriterion 8 PASS: {total} accesses exact in {dt:.1f}s")


def test_criterion_09_oracle_equivalence():
    """Index answers match the definitional quadratic oracles on 1,000
    random cases per query kind."""
    t0 = time.perf_counter()
    rng = random.Random(9)
    texts = [rand_text(rng, rng.randint(1, 120), rng.choice((1, 2, 4, 26)))
             for _ in range(60)]
    indexes = [OfflineIndex(t) for t in texts]

    for name, cases in (("lpf", 1000), ("lmocc", 1000)):
        done = 0
        while done < cases:
            j = rng.randrange(len(texts))
            t, idx = texts[j], indexes[j]
            i = rng.randint(1, len(t))
            if name == "lpf":
                assert idx.lpf(i) == naive_lpf(t, i)
            else:
                ell = rng.randint(1, max(1, naive_lpf(t, i)))
                assert idx.lmocc(i, ell) == naive_lmocc(t, i, ell)
            done += 1

    done = 0
    while done < 1000:
        sigma = rng.choice((1, 2, 4))
        t = rand_text(rng, rng.randint(1, 60), sigma)
        masked = [rng.random() < 0.25 for _ in t]
        u = OnlineIndex()
        u.extend(t, np.asarray(masked))
        syms = [None if m else c for c, m in zip(t, masked)]
        for _ in range(10):
            q = rand_text(rng, rng.randint(1, 10), sigma)
            assert u.prefix_query(q) == naive_prefix_query(syms, q)
            done += 1
    dt = time.perf_counter() - t0
    print(f"\ncriterion 9 PASS: 3x1000 oracle cases in {dt:.1f}s")


def test_criterion_10_large_file_performance():
    """A 10 MB synthetic versioned file parses with every variant at
    h=64 in under 60 s each and under 2 GB peak memory, single thread
    (the kernels have no parallel sections)."""
    data = gen_versioned()
    assert len(data) == 10_000_000
    timings = {}
    t0 = time.perf_counter()
    base = parse_lz77(data)
    timings["lz77"] = time.perf_counter() - t0
    assert decode(base) == data
    for variant in VARIANTS:
        t0 = time.perf_counter()
        e = parse(data, variant, 64)
        dt = time.perf_counter() - t0
        timings[variant] = dt
        assert dt < 60.0, (variant, dt)
        rep = verify(e, data, 64)
        assert rep.ok, (variant, rep.problems)
    peak = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss * 1024
    assert peak < 2 * 1024**3, f"peak RSS {peak / 1024**2:.0f} MB"
    line = " ".join(f"{v}={timings[v]:.1f}s" for v in timings)
    print(f"\ncriterion 10 PASS: {line}, peak {peak / 1024**2:.0f} MB")


def _find_reference_corpus():
    env = os.environ.get("LZHB_EINSTEIN")
    candidates = [env] if env else []
    here = Path(__file__).resolve().parent.parent
    candidates += [here / "corpus" / "einstein.de.txt",
                   here / "einstein.de.txt"]
    for c in candidates:
        if c and Path(c).is_file():
            return Path(c)
    return None


def test_criterion_11_reference_dataset_or_substitute():
    """When the well-known versioned-text benchmark file is present, the
    best variant at h=120 stays within a 1.6 size ratio while the
    unbounded parse's height exceeds 600.  Always: ratios at no bound
    anchor at 1 for the truncating variants (and never above 1 for the
    run-aware one), and sweep output is byte-stable."""
    corpus = _find_reference_corpus()
    if corpus is not None:
        data = corpus.read_bytes()
        base = parse_lz77(data)
        assert max(compute_heights(base)) > 600
        best = min(parse(data, v, 120).z for v in VARIANTS)
        ratio = best / base.z
        assert 1.0 <= ratio <= 1.6
        print(f"\ncriterion 11 PASS: h=120 ratio {ratio:.3f} on {corpus.name}")
        return

    texts = [gen_versioned(3000, 4, 0.003, seed=21),
             gen_greedy_adversary(25),
             b"abcabdabcabe" * 40]
    for text in texts:
        runs = []
        for _ in range(2):
            buf = io.StringIO()
            write_sweep_csv(sweep(text, VARIANTS, (1, 64, Unbounded)), buf)
            runs.append(buf.getvalue())
        assert runs[0] == runs[1]
        rows = sweep(text, VARIANTS, (Unbounded,))
        for row in rows[1:]:
            if row.variant == "lzhb4":
                assert row.ratio <= 1.0
            else:
                assert row.ratio == 1.0
    print("\ncriterion 11 PASS (substitute): sweeps byte-stable, unbounded "
          "ratios anchored at 1")
    pytest.skip("reference dataset not present; deterministic-substitute "
                "checks passed")
