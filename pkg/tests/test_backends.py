"""The two braid backends: permutation braids and non-crossing partitions."""

from __future__ import annotations

import itertools
import math
import random
from collections import Counter

import pytest

from ultrasummit import oracle
from ultrasummit.bkl import catalan
from ultrasummit.garside import NotSimpleError, normalize

from conftest import P, art


# -- Artin ----------------------------------------------------------------------

class TestArtin:
    def test_atom_divisibility(self):
        p = P("artin", 3)
        assert p.atom_left_divides(1, p.delta) and p.atom_left_divides(2, p.delta)
        assert not any(p.atom_left_divides(i, p.identity) for i in (1, 2))
        s1 = p.simple_from_word([1])
        assert p.atom_left_divides(1, s1) and not p.atom_left_divides(2, s1)
        with pytest.raises(ValueError):
            p.atom_left_divides(3, s1)

    @pytest.mark.parametrize("n", [3, 4])
    def test_atom_divisibility_matches_word_prefixes(self, n):
        p = P("artin", n)
        lat = oracle.word_lattice(p)
        for s in p.enumerate_simples():
            ks = oracle.action(p, p.word_of(s))
            for j in range(1, n):
                assert p.atom_left_divides(j, s) == lat.left_divides(oracle.action(p, [j]), ks)

    def test_simple_from_word(self):
        p = P("artin", 3)
        assert p.simple_from_word([1, 2, 1]) == p.delta
        assert p.simple_from_word([]) == p.identity
        with pytest.raises(NotSimpleError):
            p.simple_from_word([1, 1])
        with pytest.raises(NotSimpleError):
            p.simple_from_word([1, 2, 1, 2])

    def test_tau(self):
        p = P("artin", 3)
        assert p.tau(p.delta) == p.delta
        assert p.tau(p.identity) == p.identity
        assert p.tau(p.simple_from_word([1])) == p.simple_from_word([2])

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_counts(self, n):
        assert len(P("artin", n).enumerate_simples()) == math.factorial(n)

    @pytest.mark.parametrize("n", [3, 4])
    def test_word_round_trip(self, n):
        p = P("artin", n)
        for s in p.enumerate_simples():
            assert p.simple_from_word(p.word_of(s)) == s

    @pytest.mark.parametrize("n", [4, 6])
    def test_braid_relations(self, n):
        p = P("artin", n)
        for i, j in itertools.product(range(1, n), repeat=2):
            if abs(i - j) >= 2:
                assert normalize([i, j], p) == normalize([j, i], p)
        for i in range(1, n - 1):
            assert normalize([i, i + 1, i], p) == normalize([i + 1, i, i + 1], p)

    def test_delta_word(self):
        # δ = (σ1⋯σ_{n-1})(σ1⋯σ_{n-2})⋯σ1
        for n in (3, 4, 5, 6):
            w = [j for m in range(n - 1, 0, -1) for j in range(1, m + 1)]
            assert normalize(w, P("artin", n)) == P("artin", n).delta_power(1)


# -- BKL ------------------------------------------------------------------------

class TestBKL:
    def test_atom_divisibility(self):
        p = P("bkl", 3)
        for t, s in [(2, 1), (3, 1), (3, 2)]:
            assert p.atom_left_divides(t, s, p.delta)
            assert not p.atom_left_divides(t, s, p.identity)
        q = p.from_blocks([[1, 2]])
        assert p.atom_left_divides(2, 1, q)
        assert not p.atom_left_divides(3, 1, q)
        assert not p.atom_left_divides(3, 2, q)

    @pytest.mark.parametrize("n", [3, 4])
    def test_atom_divisibility_matches_word_prefixes(self, n):
        p = P("bkl", n)
        lat = oracle.word_lattice(p)
        for s in p.enumerate_simples():
            ks = oracle.action(p, p.word_of(s))
            for r, t in itertools.combinations(range(1, n + 1), 2):
                a = oracle.action(p, [(t, r)])
                assert p.atom_left_divides(t, r, s) == lat.left_divides(a, ks)

    def test_meet_join_examples(self):
        p = P("bkl", 4)
        q13 = p.from_blocks([[1, 3]])
        q123 = p.from_blocks([[1, 2, 3]])
        assert p.blocks(p.meet(q13, q123)) == [[1, 3], [2], [4]]
        assert p.meet(q13, p.delta) == q13
        assert p.meet(q13, p.identity) == p.identity
        assert p.join(q13, p.from_blocks([[2, 4]])) == p.delta
        assert p.join(q13, p.identity) == q13
        assert p.join(q13, p.delta) == p.delta

    def test_tau(self):
        p = P("bkl", 3)
        assert p.tau(p.delta) == p.delta
        assert p.tau(p.identity) == p.identity
        assert p.blocks(p.tau(p.from_blocks([[1, 2]]))) == [[1], [2, 3]]
        q = P("bkl", 5).from_blocks([[1, 3], [4, 5]])
        assert P("bkl", 5).tau(q, 5) == q

    @pytest.mark.parametrize("n,count", [(3, 5), (4, 14), (5, 42), (6, 132)])
    def test_counts(self, n, count):
        assert catalan(n) == math.factorial(2 * n) // (math.factorial(n) * math.factorial(n + 1)) == count
        assert len(P("bkl", n).enumerate_simples()) == count

    def test_crossing_blocks_rejected(self):
        with pytest.raises(ValueError):
            P("bkl", 4).from_blocks([[1, 3], [2, 4]])

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_word_round_trip(self, n):
        p = P("bkl", n)
        for s in p.enumerate_simples():
            assert p.simple_from_word(p.word_of(s)) == s
            assert p.from_blocks(p.blocks(s)) == s

    @pytest.mark.parametrize("n", [4, 5])
    def test_band_relations(self, n):
        # a_{t,s} a_{r,q} = a_{r,q} a_{t,s} when the chords do not interleave;
        # a_{t,s} a_{s,r} = a_{t,r} a_{t,s} = a_{s,r} a_{t,r} for t > s > r
        p = P("bkl", n)
        pairs = [(t, s) for t in range(2, n + 1) for s in range(1, t)]
        for (t, s), (r, q) in itertools.product(pairs, repeat=2):
            if (t - r) * (t - q) * (s - r) * (s - q) > 0:
                assert normalize([(t, s), (r, q)], p) == normalize([(r, q), (t, s)], p)
        for t, s, r in itertools.combinations(range(n, 0, -1), 3):
            a = normalize([(t, s), (s, r)], p)
            assert a == normalize([(t, r), (t, s)], p) == normalize([(s, r), (t, r)], p)

    @pytest.mark.parametrize("n", [3, 4])
    def test_band_generators_embed_in_artin(self, n):
        # a_{t,s} = (σ_{t-1}⋯σ_{s+1}) σ_s (σ_{s+1}^{-1}⋯σ_{t-1}^{-1}), checked on the free group
        p = P("bkl", n)
        for t, s in [(t, s) for t in range(2, n + 1) for s in range(1, t)]:
            w = list(range(t - 1, s, -1)) + [s] + [-j for j in range(s + 1, t)]
            assert oracle.action(p, [(t, s)]) == oracle.artin_action(n, w)


# -- sampling -------------------------------------------------------------------

@pytest.mark.parametrize("kind,n", [("artin", 3), ("artin", 4), ("bkl", 4), ("bkl", 5)])
def test_random_simple_is_uniform(kind, n):
    p = P(kind, n)
    S = p.enumerate_simples()
    rng = random.Random(12345)
    draws = 400 * len(S)
    counts = Counter(p.random_simple(rng) for _ in range(draws))
    assert set(counts) == set(S)
    chi2 = sum((counts[s] - 400) ** 2 / 400 for s in S)
    # generous bound: mean is len(S) - 1, standard deviation sqrt(2(len(S) - 1))
    dof = len(S) - 1
    assert chi2 < dof + 6 * math.sqrt(2 * dof)


def test_random_simple_large_index():
    p = P("bkl", 40)
    rng = random.Random(3)
    for _ in range(50):
        assert p.is_simple(p.random_simple(rng))
    q = P("artin", 40)
    assert q.is_simple(q.random_simple(rng))


def test_element_helper():
    assert art(3, 1, 2, 1) == P("artin", 3).delta_power(1)
