from __future__ import annotations

import os
import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ultrasummit import oracle
from ultrasummit.bench import random_canonical
from ultrasummit.garside import normalize
from ultrasummit.wordfmt import presentation

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.register_profile("thorough", max_examples=400, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# presentations small enough for the word-level oracle
SMALL = [("artin", 3), ("artin", 4), ("bkl", 3), ("bkl", 4)]
ORACLE_SIZES = [("artin", 3), ("artin", 4), ("bkl", 3), ("bkl", 4), ("bkl", 5)]


def P(kind: str, n: int):
    return presentation(kind, n)


def A3():
    return presentation("artin", 3)


def art(n: int, *word, inf: int = 0):
    """Artin element from a signed word, e.g. ``art(3, 1, -2)``."""
    return normalize(list(word), presentation("artin", n), inf=inf)


def signed_token(p, atom_index: int, sign: int):
    tok = p.token_of_atom(p.atoms[atom_index])
    return sign * tok if p.kind == "artin" else (sign * tok[0], tok[1])


@st.composite
def words(draw, p, min_size=0, max_size=10, positive=False):
    n_atoms = len(p.atoms)
    idx = draw(st.lists(st.integers(0, n_atoms - 1), min_size=min_size, max_size=max_size))
    if positive:
        signs = [1] * len(idx)
    else:
        signs = draw(st.lists(st.sampled_from((1, -1)), min_size=len(idx), max_size=len(idx)))
    return [signed_token(p, i, s) for i, s in zip(idx, signs)]


@st.composite
def elements(draw, p, max_size=10, positive=False, min_size=0):
    w = draw(words(p, min_size=min_size, max_size=max_size, positive=positive))
    k = 0 if positive else draw(st.integers(-1, 1))
    return normalize(w, p, inf=k)


def simples(p):
    return st.sampled_from(p.enumerate_simples())


@st.composite
def summit_pairs(draw, p, max_r=3):
    """``(x, S_x, U_x)`` from the oracle for a random ``x`` of canonical length ``≤ max_r``."""
    seed = draw(st.integers(0, 2**32 - 1))
    r = draw(st.integers(1, max_r))
    x = random_canonical(p, r, random.Random(seed))
    sss = oracle.brute_sss(x)
    return x, sss, oracle.brute_uss(x, sss)


@pytest.fixture(params=SMALL, ids=lambda t: f"{t[0]}{t[1]}")
def small_p(request):
    return P(*request.param)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "REPORT", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
