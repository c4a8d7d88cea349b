"""
Conjugacy decision and randomized conjugacy search.

Every witness returned from this module has been checked by direct
conjugation; a failed check raises :class:`ContractError` rather than
returning a wrong answer.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Optional

from .garside import CanonicalForm, ContractError, Perm, PresentationMismatch, conjugate, conjugate_by_simple, invert
from .summit import (
    TransportContext,
    Trajectory,
    _uss_pieces,
    min_uss_conjugator,
    product_of_pieces,
    ultra_summit_set,
)

# Test hook: when set, applied to every conjugator just before verification.
_tamper: Optional[Callable[[CanonicalForm], CanonicalForm]] = None


@dataclass(frozen=True)
class ConjugacyWitness:
    """``conjugator`` satisfies ``source^conjugator = target``; checked on construction."""

    source: CanonicalForm
    target: CanonicalForm
    conjugator: CanonicalForm
    method: str = "closure"
    steps: int = 0

    def __post_init__(self):
        if conjugate(self.source, self.conjugator) != self.target:
            raise ContractError("conjugacy witness does not verify")


def _witness(x, y, c, method, steps=0) -> ConjugacyWitness:
    if _tamper is not None:
        c = _tamper(c)
    return ConjugacyWitness(x, y, c, method, steps)


def _same(x: CanonicalForm, y: CanonicalForm):
    if x.presentation != y.presentation:
        raise PresentationMismatch(f"{x.presentation!r} vs {y.presentation!r}")


def is_conjugate(x: CanonicalForm, y: CanonicalForm) -> tuple[bool, Optional[ConjugacyWitness]]:
    """
    Decide whether ``x`` and ``y`` are conjugate.

    Both are moved into their ultra summit sets; differing bounds settle the
    question at once, otherwise the ultra summit set of ``x`` is grown until
    it contains the representative of ``y`` or is complete.
    """
    _same(x, y)
    if x == y:
        return True, _witness(x, y, x.presentation.identity_element(), "trivial")
    if x.exponent_sum() != y.exponent_sum():
        return False, None
    ty, py = _uss_pieces(y)
    tx, _ = _uss_pieces(x)
    if (tx.inf, tx.sup) != (ty.inf, ty.sup):
        return False, None
    uss = ultra_summit_set(x, target=ty)
    if ty not in uss:
        return False, None
    c = uss.conjugator(ty) * invert(product_of_pieces(x.presentation, py))
    return True, _witness(x, y, c, "closure")


def default_step_cap(x_summit: CanonicalForm) -> int:
    return 16 * len(x_summit.presentation.atoms) * max(1, len(x_summit.factors))


def conjugacy_search(x: CanonicalForm, y: CanonicalForm, seed: int = 0,
                     step_cap: Optional[int] = None) -> ConjugacyWitness:
    """
    Find ``c`` with ``x^c = y`` for conjugate ``x, y`` by a seeded random walk.

    The walk starts at the ultra summit representative of ``y`` and repeatedly
    conjugates by ``c_a`` for a uniformly random atom ``a`` until it lands on
    the circuit through the representative of ``x``. After ``step_cap`` steps
    the deterministic closure takes over; if that finds the inputs are not
    conjugate, :class:`ContractError` is raised.
    """
    _same(x, y)
    p = x.presentation
    tx, px = _uss_pieces(x)
    ty, py = _uss_pieces(y)
    if (tx.inf, tx.sup) != (ty.inf, ty.sup):
        raise ContractError("conjugacy_search called on elements that are not conjugate")
    home = Trajectory.of(tx)
    cap = default_step_cap(tx) if step_cap is None else step_cap
    rng = random.Random(seed)
    z = ty
    walk: list[Perm] = []
    contexts: dict[CanonicalForm, TransportContext] = {}
    steps = 0
    while z not in home:
        if steps >= cap or not z.factors:
            ok, w = is_conjugate(x, y)
            if not ok:
                raise ContractError("conjugacy_search called on elements that are not conjugate")
            return _witness(x, y, w.conjugator, "fallback", steps)
        a = p.atoms[rng.randrange(len(p.atoms))]
        ctx = contexts.get(z)
        if ctx is None:
            ctx = contexts[z] = TransportContext(z)
        c = min_uss_conjugator(ctx, a, discard=False)
        z = conjugate_by_simple(z, c)
        walk.append(c)
        steps += 1
    # x^{s_x s(z)} = z and y^{s_y c_1⋯c_m} = z
    s_x = product_of_pieces(p, px)
    s = product_of_pieces(p, list(py) + [(c, 1) for c in walk])
    c = s_x * home.conjugator(z) * invert(s)
    return _witness(x, y, c, "search", steps)
