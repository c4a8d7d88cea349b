"""Cycling, summit sets, transport, pullback and minimal conjugators."""

from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ultrasummit import oracle
from ultrasummit.bench import random_canonical
from ultrasummit.garside import (
    ContractError,
    conjugate,
    conjugate_by_simple,
    invert,
    meet_positive,
    multiply,
    tau_pow,
)
from ultrasummit.summit import (
    Trajectory,
    TransportContext,
    cycling,
    decycling,
    min_ss_conjugator,
    min_uss_conjugator,
    minimal_conjugator_set,
    pullback,
    sss_representative,
    stable_pullback,
    transport,
    transport_orbit,
    transport_simple,
    ultra_summit_set,
    uss_representative,
)

from ultrasummit.wordfmt import parse

from conftest import ORACLE_SIZES, P, art, elements, summit_pairs

A3 = P("artin", 3)


def s3(*w):
    return A3.simple_from_word(list(w))


def oracle_cases(kind, n, count, max_r=3):
    """Seeded ``(x, S_x, U_x)`` triples for exhaustive loops."""
    p = P(kind, n)
    rng = random.Random(f"cases/{kind}/{n}/{count}/{max_r}")
    out = []
    for _ in range(count):
        x = random_canonical(p, rng.randint(1, max_r), rng)
        S = oracle.brute_sss(x)
        out.append((x, S, oracle.brute_uss(x, S)))
    return out


# -- cycling and decycling ------------------------------------------------------

class TestCycling:
    def test_examples(self):
        x = art(3, 1, 1)
        assert cycling(x) == (x, art(3, 1))
        assert decycling(x) == (x, art(3, -1))
        d = art(3, inf=2)
        assert cycling(d) == (d, art(3))
        assert decycling(d) == (d, art(3))
        y = art(3, 1, 2)
        assert cycling(y) == (y, y)

    def test_decycling_negative_infimum(self):
        x = art(3, -2)                      # δ^{-1}[σ2σ1]
        z, c = decycling(x)
        assert z == art(3, 1, 2, inf=-1)    # δ^{-1}[σ1σ2]
        assert c == art(3, -1, -2)          # A_r^{-1} = (σ2σ1)^{-1}
        assert conjugate(x, c) == z
        assert oracle.naive_decycle(x) == z

    @pytest.mark.parametrize("kind,n", [("artin", 3), ("artin", 5), ("bkl", 4), ("bkl", 6)])
    @given(data=st.data())
    def test_matches_definition_and_tau_equivariant(self, kind, n, data):
        p = P(kind, n)
        x = data.draw(elements(p, max_size=10))
        c, cc = cycling(x)
        d, dc = decycling(x)
        assert c == oracle.naive_cycle(x) == conjugate(x, cc)
        assert d == oracle.naive_decycle(x) == conjugate(x, dc)
        t = tau_pow(x, 1)
        assert cycling(t)[0] == tau_pow(c, 1)
        assert decycling(t)[0] == tau_pow(d, 1)
        # cycling never lowers inf, decycling never raises sup
        assert c.inf >= x.inf and c.sup <= x.sup or x.length == 0
        assert d.inf >= x.inf and d.sup <= x.sup or x.length == 0

    @pytest.mark.parametrize("kind,n", ORACLE_SIZES)
    def test_preserve_super_summit_set(self, kind, n):
        for x, S, U in oracle_cases(kind, n, 6):
            for y in S:
                assert cycling(y)[0] in S
                assert decycling(y)[0] in S


# -- summit representatives -----------------------------------------------------

class TestRepresentatives:
    def test_examples(self):
        d = art(3, inf=1)
        assert sss_representative(d) == (d, art(3))
        x = art(3, 1, 1)
        assert sss_representative(x)[0] == x
        y = art(3, 2, 1, 1, -2)
        z, c = sss_representative(y)
        assert (z.inf, z.sup) == (0, 2)
        assert conjugate(y, c) == z
        assert z in oracle.brute_sss(x)

    @pytest.mark.parametrize("kind,n", ORACLE_SIZES)
    @settings(max_examples=25)
    @given(data=st.data())
    def test_bounds_match_oracle(self, kind, n, data):
        p = P(kind, n)
        x = data.draw(elements(p, max_size=5 if n == 5 else 8))
        S = oracle.brute_sss(x)
        z, c = sss_representative(x)
        assert z in S and conjugate(x, c) == z
        u, cu = uss_representative(x)
        assert u in oracle.brute_uss(x, S) and conjugate(x, cu) == u


# -- trajectories -----------------------------------------------------------------

class TestTrajectory:
    def test_invariants(self):
        x = parse_uss_example()
        t = Trajectory.of(x)
        N = t.period
        for i, z in enumerate(t.elements):
            assert cycling(z)[0] == t.elements[(i + 1) % N]
            assert conjugate(t.base, t.conjugator(z)) == z
            assert t.conjugators[z] == t.conjugator(z)
            assert not z < t.key()

    def test_not_in_uss(self):
        # a super summit element off every cycling circuit (found by the oracle)
        x = parse("artin 4 / d^1 3 2 1 1 2 2 1 3 2")
        S = oracle.brute_sss(x)
        assert x in S and x not in oracle.brute_uss(x, S)
        with pytest.raises(ContractError):
            Trajectory.of(x)

    def test_context_needs_positive_length(self):
        with pytest.raises(ContractError):
            TransportContext(art(3, inf=1))


def parse_uss_example():
    return uss_representative(art(4, 1, 2, 2, 3, 1, 1, 2))[0]


# -- transport ----------------------------------------------------------------------

def prop21_transport(y, u):
    """
    Transport from the product formula ``u_1 = A_2⋯A_r u ∧ A_1^{-1} u_0 δ`` with
    ``u_0 = τ^k(u)`` and ``φ = τ^{-k}(u_1)``; shares only meets and products
    with the library, not its transport code.
    """
    p = y.presentation
    k, A = y.k, y.factors
    u0 = tau_pow(u, k)
    rest = p.identity_element()
    for f in A[1:]:
        rest = multiply(rest, p.simple_element(f))
    left = multiply(rest, u)
    right = multiply(multiply(invert(p.simple_element(A[0])), u0), p.delta_power(1))
    return tau_pow(meet_positive(left, right), -k)


class TestTransport:
    def test_examples(self):
        y = art(3, 1, 1)
        ctx = TransportContext(y)
        assert transport(ctx, A3.delta) == A3.delta
        assert transport(ctx, A3.identity) == A3.identity
        assert transport(ctx, s3(1)) == s3(1)
        assert transport(y, art(3, 1)) == art(3, 1)
        orbit = transport_orbit(ctx, s3(1))
        assert (orbit.F, orbit.length) == ((s3(1),), 1)
        assert transport_orbit(ctx, A3.identity).F == (A3.identity,)
        assert transport_orbit(ctx, A3.delta).F == (A3.delta,)

    def test_precondition(self):
        with pytest.raises(ContractError):
            transport_simple(art(3, 1, 1), s3(2))
        with pytest.raises(ContractError):
            transport(art(3, 1, 1), art(3, -1))

    @pytest.mark.parametrize("kind,n", ORACLE_SIZES)
    def test_commuting_square_and_formula(self, kind, n):
        p = P(kind, n)
        for x, S, U in oracle_cases(kind, n, 5):
            for y in list(S)[:6]:
                if not y.factors:
                    continue
                cy = cycling(y)[0]
                for u in p.enumerate_simples():
                    yu = conjugate_by_simple(y, u)
                    if yu not in S:
                        continue
                    phi = transport_simple(y, u)
                    assert p.is_simple(phi)
                    assert cycling(yu)[0] == conjugate_by_simple(cy, phi)
                    assert p.simple_element(phi) == prop21_transport(y, p.simple_element(u))

    @pytest.mark.parametrize("kind,n", [("artin", 3), ("artin", 4), ("bkl", 4)])
    def test_positive_transport(self, kind, n):
        # products of two simples: φ of a positive element, checked against the square and the formula
        p = P(kind, n)
        simples = p.enumerate_simples()
        rng = random.Random(7)
        for x, S, U in oracle_cases(kind, n, 4):
            y = sorted(S, key=lambda z: z.sort_key())[0]
            if not y.factors:
                continue
            for _ in range(40):
                u = multiply(p.simple_element(rng.choice(simples)), p.simple_element(rng.choice(simples)))
                if conjugate(y, u) not in S:
                    continue
                phi = transport(y, u)
                assert phi.inf >= 0 and phi.sup <= u.sup
                assert cycling(conjugate(y, u))[0] == conjugate(cycling(y)[0], phi)
                assert phi == prop21_transport(y, u)

    @pytest.mark.parametrize("kind,n", ORACLE_SIZES)
    def test_injective_and_meet_compatible(self, kind, n):
        p = P(kind, n)
        for x, S, U in oracle_cases(kind, n, 5):
            for y in list(U)[:4]:
                if not y.factors:
                    continue
                good = [u for u in p.enumerate_simples() if conjugate_by_simple(y, u) in S]
                phi = {u: transport_simple(y, u) for u in good}
                by_target: dict = {}
                for u in good:
                    by_target.setdefault(conjugate_by_simple(y, u), []).append(u)
                for group in by_target.values():
                    assert len({phi[u] for u in group}) == len(group)
                for u, v in itertools.product(good, repeat=2):
                    m = p.meet(u, v)
                    assert m in phi
                    assert phi[m] == p.meet(phi[u], phi[v])

    @pytest.mark.parametrize("kind,n", ORACLE_SIZES)
    def test_orbit_is_periodic_and_lands_in_uss(self, kind, n):
        p = P(kind, n)
        for x, S, U in oracle_cases(kind, n, 5):
            for y in list(U)[:3]:
                if not y.factors:
                    continue
                ctx = TransportContext(y)
                N = ctx.period
                for u in p.enumerate_simples():
                    if conjugate_by_simple(y, u) not in S:
                        continue
                    orb = transport_orbit(ctx, u)
                    # one more lap from the end of the orbit returns to its start
                    cur = orb.values[-1]
                    for j in range(N):
                        cur = transport_simple(ctx.element(j), cur)
                    assert cur == orb.values[orb.i1]
                    assert len(set(orb.values)) == len(orb.values)
                    for v in orb.F:
                        assert conjugate_by_simple(y, v) in U
                    assert (p.identity in orb.F) == (orb.F == (p.identity,))


# -- minimal conjugators ----------------------------------------------------------

class TestMinimalConjugators:
    def test_examples(self):
        y = art(3, 1, 1)
        ctx = TransportContext(y)
        assert min_ss_conjugator(y, s3(1)) == s3(1)
        assert min_ss_conjugator(y, s3(2)) == s3(2, 1)
        assert min_ss_conjugator(y, A3.delta) == A3.delta
        assert pullback(y, A3.identity) == A3.identity
        assert pullback(y, A3.delta) == A3.delta
        assert pullback(y, s3(1)) == s3(1)
        assert stable_pullback(ctx, A3.identity) == A3.identity
        assert stable_pullback(ctx, A3.delta) == A3.delta
        assert stable_pullback(ctx, s3(1)) == s3(1)
        assert min_uss_conjugator(ctx, s3(1)) == s3(1)
        assert min_uss_conjugator(ctx, s3(2)) == s3(2, 1)
        assert min_uss_conjugator(ctx, A3.delta) == A3.delta
        assert sorted(minimal_conjugator_set(ctx)) == sorted([s3(1), s3(2, 1)])
        assert conjugate_by_simple(y, s3(2, 1)) == art(3, 2, 2)

    def test_minimal_set_of_sigma1_sigma2(self):
        y = art(3, 1, 2)
        ctx = TransportContext(y)
        assert minimal_conjugator_set(ctx) == [s3(1)]
        assert conjugate_by_simple(y, s3(1)) == art(3, 2, 1)

    @pytest.mark.parametrize("kind,n", ORACLE_SIZES)
    def test_against_oracle(self, kind, n):
        p = P(kind, n)
        simples = p.enumerate_simples()
        for x, S, U in oracle_cases(kind, n, 4):
            for y in sorted(U, key=lambda z: z.sort_key())[:2]:
                if not y.factors:
                    continue
                ctx = TransportContext(y)
                D = [c for c in simples if c != p.identity and conjugate_by_simple(y, c) in U]
                for s in simples:
                    if s == p.identity:
                        continue
                    assert min_ss_conjugator(y, s) == oracle.brute_min_conjugator(y, s, S)
                    c = min_uss_conjugator(ctx, s)
                    assert c == oracle.brute_min_conjugator(y, s, U)
                    d = min_uss_conjugator(ctx, s, discard=True)
                    assert d is None or d == c
                minimal = {c for c in D if not any(e != c and p.left_divides(e, c) for e in D)}
                assert set(minimal_conjugator_set(ctx)) == minimal
                assert len(minimal) <= len(p.atoms)

    @pytest.mark.parametrize("kind,n", ORACLE_SIZES)
    def test_pullback_postconditions(self, kind, n):
        p = P(kind, n)
        simples = p.enumerate_simples()
        for x, S, U in oracle_cases(kind, n, 4):
            for y in sorted(U, key=lambda z: z.sort_key())[:2]:
                if not y.factors:
                    continue
                ctx = TransportContext(y)
                good = [u for u in simples if conjugate_by_simple(y, u) in S]
                phi = {u: transport_simple(y, u) for u in good}
                for s in simples:
                    pi = pullback(y, s)
                    assert pi in phi and p.left_divides(s, phi[pi])
                    # least such element
                    for u in good:
                        if p.left_divides(s, phi[u]):
                            assert p.left_divides(pi, u)
                    q = stable_pullback(ctx, s)
                    c = min_uss_conjugator(ctx, s)
                    assert p.left_divides(q, c)
                    assert any(p.left_divides(s, v) for v in transport_orbit(ctx, q).F)


# -- ultra summit sets --------------------------------------------------------------

class TestUltraSummitSet:
    def test_examples(self):
        d = art(3, inf=3)
        assert ultra_summit_set(d).elements == {d}
        u = ultra_summit_set(art(3, 1, 1))
        assert u.elements == {art(3, 1, 1), art(3, 2, 2)}
        assert u.n_trajectories == 2 and all(t.period == 1 for t in u.trajectories)
        v = ultra_summit_set(art(3, 1, 2))
        assert v.elements == {art(3, 1, 2), art(3, 2, 1)}
        for uss in (u, v):
            assert uss.elements == oracle.brute_uss(uss.x)

    def test_target_stops_early(self):
        x = art(4, 1, 1, 2, 3, 3, 2)
        full = ultra_summit_set(x)
        first = full.trajectories[0].base
        part = ultra_summit_set(x, target=first)
        assert part.n_trajectories == 1 and first in part

    @pytest.mark.parametrize("kind,n", ORACLE_SIZES)
    @settings(max_examples=20)
    @given(data=st.data())
    def test_equals_oracle(self, kind, n, data):
        p = P(kind, n)
        x, S, U = data.draw(summit_pairs(p, max_r=4))
        uss = ultra_summit_set(x)
        assert uss.elements == U
        for z in uss:
            assert conjugate(x, uss.conjugator(z)) == z
            assert (z.inf, z.sup) == (uss.inf, uss.sup)
            assert tau_pow(z, 1) in uss
            tid, off = uss.index[z]
            assert uss.trajectories[tid].elements[off] == z

    @pytest.mark.parametrize("kind,n", [("artin", 3), ("artin", 4), ("bkl", 4)])
    def test_gcd_closure(self, kind, n):
        # y^u, y^v in U  ⇒  y^{u∧v} in U, for simple and two-factor positive u, v
        p = P(kind, n)
        simples = p.enumerate_simples()
        rng = random.Random(11)
        for x, S, U in oracle_cases(kind, n, 4):
            for y in list(U)[:3]:
                into = [u for u in simples if conjugate_by_simple(y, u) in U]
                for u, v in itertools.product(into, repeat=2):
                    assert conjugate_by_simple(y, p.meet(u, v)) in U
                pos = []
                for _ in range(60):
                    w = multiply(p.simple_element(rng.choice(simples)), p.simple_element(rng.choice(simples)))
                    if conjugate(y, w) in U:
                        pos.append(w)
                for u, v in itertools.product(pos[:8], repeat=2):
                    assert conjugate(y, meet_positive(u, v)) in U

    @pytest.mark.parametrize("kind,n", [("artin", 4), ("bkl", 5)])
    def test_closed_under_minimal_conjugators(self, kind, n):
        p = P(kind, n)
        x = random_canonical(p, 5, random.Random(5))
        uss = ultra_summit_set(x)
        for t in uss.trajectories:
            for z in t.elements[:2]:
                ctx = TransportContext(z)
                for c in minimal_conjugator_set(ctx):
                    assert conjugate_by_simple(z, c) in uss

    def test_conjugators_from_negative_input(self):
        x = art(4, 1, -2, 3, 3, 1, 2)
        uss = ultra_summit_set(x)
        for z in uss:
            assert conjugate(x, uss.conjugator(z)) == z
