"""
Small-index validation of the library against the brute-force oracle.

Backs ``ultrasummit oracle check``. Each check yields ``(name, ok, detail)``.
"""

from __future__ import annotations

import random
from typing import Iterator, Optional, Sequence

from . import oracle
from .bench import random_canonical
from .garside import CanonicalForm, check_normal_form, conjugate, normalize
from .summit import TransportContext, min_ss_conjugator, min_uss_conjugator, ultra_summit_set
from .wordfmt import presentation

DEFAULT_INDICES = {"artin": (3, 4), "bkl": (3, 4, 5)}


def random_word(p, length: int, rng: random.Random) -> list:
    """A random word in the atoms and their inverses, as signed tokens (``-2``, ``(-3, 1)``)."""
    out = []
    for _ in range(length):
        tok = p.token_of_atom(p.atoms[rng.randrange(len(p.atoms))])
        sign = rng.choice((1, -1))
        out.append(sign * tok if p.kind == "artin" else (sign * tok[0], tok[1]))
    return out


def _check_simples(p) -> tuple[bool, str]:
    ours = set(p.enumerate_simples())
    theirs = set(oracle.enumerate_simples(p))
    return ours == theirs, f"{len(ours)} simples, oracle {len(theirs)}"


def _check_normal_forms(p, samples: int, rng) -> tuple[bool, str]:
    bad = 0
    for _ in range(samples):
        w = random_word(p, rng.randint(0, 12), rng)
        x = normalize(w, p)
        if not check_normal_form(x) or oracle.element_action(x) != oracle.action(p, w):
            bad += 1
    return bad == 0, f"{samples} words, {bad} mismatches"


def _check_summits(p, samples: int, rng) -> tuple[bool, str]:
    bad = 0
    for _ in range(samples):
        x = random_canonical(p, rng.randint(1, 4), rng)
        uss = ultra_summit_set(x)
        ref = oracle.brute_uss(x)
        if uss.elements != ref:
            bad += 1
            continue
        if any(conjugate(x, uss.conjugator(z)) != z for z in uss):
            bad += 1
    return bad == 0, f"{samples} elements, {bad} mismatches"


def _check_min_conjugators(p, samples: int, rng) -> tuple[bool, str]:
    bad = 0
    simples = p.enumerate_simples()
    for _ in range(samples):
        x = random_canonical(p, rng.randint(1, 3), rng)
        sss = oracle.brute_sss(x)
        uss = oracle.brute_uss(x, sss)
        y = sorted(uss, key=CanonicalForm.sort_key)[0]
        ctx = TransportContext(y)
        for s in simples:
            if min_ss_conjugator(y, s) != oracle.brute_min_conjugator(y, s, sss):
                bad += 1
            if min_uss_conjugator(ctx, s) != oracle.brute_min_conjugator(y, s, uss):
                bad += 1
    return bad == 0, f"{samples} elements x {len(simples)} simples, {bad} mismatches"


def run_checks(kind: Optional[str] = None, ns: Optional[Sequence[int]] = None,
               samples: int = 20, seed: int = 0) -> Iterator[tuple[str, bool, str]]:
    kinds = [kind] if kind else list(DEFAULT_INDICES)
    for k in kinds:
        for n in ns or DEFAULT_INDICES[k]:
            p = presentation(k, n)
            rng = random.Random(f"{seed}/{k}/{n}")
            tag = f"{k} n={n}"
            yield (f"{tag} simples", *_check_simples(p))
            yield (f"{tag} normal forms", *_check_normal_forms(p, samples, rng))
            yield (f"{tag} ultra summit sets", *_check_summits(p, samples, rng))
            yield (f"{tag} minimal conjugators", *_check_min_conjugators(p, max(1, samples // 4), rng))
