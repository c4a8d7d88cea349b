"""
Brute-force reference computations for small braid index.

Two layers, deliberately separate from the normal-form code:

* Word level. Braid equality is decided through Artin's faithful action of
  B_n on the free group F_n (images of the free generators, freely reduced).
  Simple elements are enumerated as prefixes of all positive spellings of δ,
  obtained by closing one spelling under the defining relations; divisor
  relations come from the same spellings. None of this touches normal forms.
* Set level. Super summit and ultra summit sets, and minimal conjugators, by
  exhaustive conjugation with every simple element. These use the group
  arithmetic from :mod:`ultrasummit.garside` but none of the summit
  machinery under test.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .garside import (
    CanonicalForm,
    GarsideError,
    GarsidePresentation,
    Perm,
    conjugate,
    invert,
)

FreeWord = tuple[int, ...]


class BudgetExceeded(GarsideError, RuntimeError):
    """An enumeration would exceed the configured oracle budget."""


@dataclass(frozen=True)
class OracleBudget:
    max_index_artin: int = 4
    max_index_bkl: int = 5
    max_length: int = 12
    max_closure: int = 20000

    def check_index(self, p: GarsidePresentation):
        limit = self.max_index_artin if p.kind == "artin" else self.max_index_bkl
        if p.n > limit:
            raise BudgetExceeded(f"{p.kind} n={p.n} exceeds oracle budget n<={limit}")


DEFAULT_BUDGET = OracleBudget()


# -- free group action --------------------------------------------------------

def _reduce(word: Iterable[int]) -> FreeWord:
    out: list[int] = []
    for g in word:
        if out and out[-1] == -g:
            out.pop()
        else:
            out.append(g)
    return tuple(out)


def _inv(word: FreeWord) -> FreeWord:
    return tuple(-g for g in reversed(word))


def _substitute(word: FreeWord, images: Sequence[FreeWord]) -> FreeWord:
    out: list[int] = []
    for g in word:
        img = images[g - 1] if g > 0 else _inv(images[-g - 1])
        out.extend(img)
    return _reduce(out)


def _artin_letter_images(n: int, i: int) -> tuple[FreeWord, ...]:
    """Automorphism of F_n for σ_i^{±1}: x_i ↦ x_i x_{i+1} x_i^{-1}, x_{i+1} ↦ x_i."""
    imgs = [(g,) for g in range(1, n + 1)]
    j = abs(i)
    if i > 0:
        imgs[j - 1] = (j, j + 1, -j)
        imgs[j] = (j,)
    else:
        imgs[j - 1] = (j + 1,)
        imgs[j] = (-(j + 1), j, j + 1)
    return tuple(imgs)


def artin_action(n: int, word: Iterable[int]) -> tuple[FreeWord, ...]:
    """Images of the free generators under the braid spelled by an Artin word (signed ints)."""
    imgs = tuple((g,) for g in range(1, n + 1))
    for letter in word:
        letter_imgs = _artin_letter_images(n, letter)
        imgs = tuple(_substitute(img, letter_imgs) for img in imgs)
    return imgs


def bkl_to_artin(t: int, s: int, sign: int = 1) -> list[int]:
    """``a_{t,s} = (σ_{t-1}⋯σ_{s+1}) σ_s (σ_{s+1}^{-1}⋯σ_{t-1}^{-1})`` as an Artin word."""
    left = list(range(t - 1, s, -1))
    w = left + [sign * s] + [-g for g in reversed(left)]
    return w


def delta_word(p: GarsidePresentation) -> list:
    """The standard positive spelling of δ in the atoms of ``p``."""
    n = p.n
    if p.kind == "artin":
        return [j for top in range(n - 1, 0, -1) for j in range(1, top + 1)]
    return [(t, t - 1) for t in range(n, 1, -1)]


def to_artin_word(p: GarsidePresentation, word: Iterable) -> list[int]:
    """Rewrite a signed word of ``p`` (atoms or ``'d'``/``'-d'``) as a signed Artin word."""
    out: list[int] = []
    dw = None
    for item in word:
        if item in ("d", "-d"):
            if dw is None:
                dw = to_artin_word(p, delta_word(p))
            out.extend(dw if item == "d" else [-g for g in reversed(dw)])
            continue
        tok, sign = p.signed_token(item)
        if p.kind == "artin":
            out.append(sign * tok)
        else:
            t, s = tok
            out.extend(bkl_to_artin(t, s, sign))
    return out


def action(p: GarsidePresentation, word: Iterable) -> tuple[FreeWord, ...]:
    return artin_action(p.n, to_artin_word(p, word))


def element_word(x: CanonicalForm) -> list:
    """Signed word for a normal form, δ written out as ``'d'`` tokens."""
    p = x.presentation
    word: list = ["d"] * x.k if x.k > 0 else ["-d"] * (-x.k)
    for f in x.factors:
        word.extend(p.word_of(f))
    return word


def element_action(x: CanonicalForm) -> tuple[FreeWord, ...]:
    return action(x.presentation, element_word(x))


def words_equal(p: GarsidePresentation, w1: Iterable, w2: Iterable) -> bool:
    """Equality in B_n of two signed words, decided by the free group action."""
    return action(p, w1) == action(p, w2)


# -- positive relations and spellings --------------------------------------

def _artin_rewrites(a: int, b: int, c: int | None) -> list:
    out = []
    if abs(a - b) >= 2:
        out.append((2, (b, a)))
    if c is not None and c == a and abs(a - b) == 1:
        out.append((3, (b, a, b)))
    return out


def _bkl_two_letter(x: tuple[int, int], y: tuple[int, int]) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    t, s = x
    r, q = y
    out = []
    # a_{t,s} a_{r,q} = a_{r,q} a_{t,s} when the chords are disjoint and do not interleave
    if (t - r) * (t - q) * (s - r) * (s - q) > 0:
        out.append((y, x))
    pts = set(x) | set(y)
    if len(pts) == 3:
        # a_{t,s} a_{s,r} = a_{t,r} a_{t,s} = a_{s,r} a_{t,r}  for t > s > r
        hi, mid, lo = sorted(pts, reverse=True)
        forms = [((hi, mid), (mid, lo)), ((hi, lo), (hi, mid)), ((mid, lo), (hi, lo))]
        if (x, y) in forms:
            out.extend(f for f in forms if f != (x, y))
    return out


def positive_spellings(p: GarsidePresentation, word: Sequence, limit: int = 200000) -> set[tuple]:
    """All positive words equal to ``word`` in the positive monoid, by relation closure."""
    start = tuple(word)
    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for i in range(len(w) - 1):
            if p.kind == "artin":
                c = w[i + 2] if i + 2 < len(w) else None
                for span, repl in _artin_rewrites(w[i], w[i + 1], c):
                    nw = w[:i] + repl + w[i + span:]
                    if nw not in seen:
                        seen.add(nw)
                        queue.append(nw)
            else:
                for repl in _bkl_two_letter(w[i], w[i + 1]):
                    nw = w[:i] + repl + w[i + 2:]
                    if nw not in seen:
                        seen.add(nw)
                        queue.append(nw)
        if len(seen) > limit:
            raise BudgetExceeded("too many spellings")
    return seen


class WordLattice:
    """
    The simple elements of ``p`` with left and right divisibility, from words only.

    Elements are keyed by their free-group action; ``spelling[key]`` is one
    positive word, ``left_divisors[key]`` and ``right_divisors[key]`` are sets
    of keys.
    """

    def __init__(self, p: GarsidePresentation, budget: OracleBudget = DEFAULT_BUDGET):
        budget.check_index(p)
        self.p = p
        spellings = positive_spellings(p, delta_word(p))
        self.delta_spellings = spellings
        key_of_prefix: dict[tuple, tuple] = {}

        def key(w):
            k = key_of_prefix.get(w)
            if k is None:
                k = action(p, w)
                key_of_prefix[w] = k
            return k

        self.spelling: dict[tuple, tuple] = {}
        self.left_divisors: dict[tuple, set] = {}
        self.right_divisors: dict[tuple, set] = {}
        for w in spellings:
            keys = [key(w[:j]) for j in range(len(w) + 1)]
            for j, kj in enumerate(keys):
                self.spelling.setdefault(kj, w[:j])
                ld = self.left_divisors.setdefault(kj, set())
                ld.update(keys[: j + 1])
                rd = self.right_divisors.setdefault(kj, set())
                for i in range(j + 1):
                    rd.add(key(w[i:j]))
        self.keys = list(self.spelling)
        self.identity = key(())
        self.delta = key(tuple(delta_word(p)))

    def __len__(self):
        return len(self.keys)

    def left_divides(self, a, b) -> bool:
        return a in self.left_divisors[b]

    def right_divides(self, a, b) -> bool:
        """``b ≽ a``: ``a`` is a right divisor of ``b``."""
        return a in self.right_divisors[b]

    def meet(self, a, b):
        common = self.left_divisors[a] & self.left_divisors[b]
        best = [c for c in common if all(d in self.left_divisors[c] for d in common)]
        assert len(best) == 1
        return best[0]

    def right_meet(self, a, b):
        common = self.right_divisors[a] & self.right_divisors[b]
        best = [c for c in common if all(d in self.right_divisors[c] for d in common)]
        assert len(best) == 1
        return best[0]

    def join(self, a, b):
        uppers = [c for c in self.keys if a in self.left_divisors[c] and b in self.left_divisors[c]]
        best = [c for c in uppers if all(c in self.left_divisors[d] for d in uppers)]
        assert len(best) == 1
        return best[0]

    def to_core(self, key) -> Perm:
        return self.p.simple_from_word(self.spelling[key])


@lru_cache(maxsize=None)
def word_lattice(p: GarsidePresentation) -> WordLattice:
    return WordLattice(p, OracleBudget(max_index_artin=max(5, p.n), max_index_bkl=max(5, p.n)))


def enumerate_simples(p: GarsidePresentation, budget: OracleBudget = DEFAULT_BUDGET) -> list[Perm]:
    """Every simple element of ``p``, found from positive spellings of δ and mapped to the core encoding."""
    budget.check_index(p)
    lat = WordLattice(p, budget)
    return [lat.to_core(k) for k in lat.keys]


# -- summit sets by exhaustion ------------------------------------------------

def _simples(p: GarsidePresentation) -> list[Perm]:
    return p.enumerate_simples()


def naive_cycle(y: CanonicalForm) -> CanonicalForm:
    """Cycling straight from the definition, through generic conjugation."""
    p = y.presentation
    if not y.factors:
        return y
    return conjugate(y, p.simple_element(p.tau(y.factors[0], -y.k)))


def naive_decycle(y: CanonicalForm) -> CanonicalForm:
    p = y.presentation
    if not y.factors:
        return y
    return conjugate(y, invert(p.simple_element(y.factors[-1])))


def _to_circuit(y: CanonicalForm, step) -> CanonicalForm:
    seen = set()
    while y not in seen:
        seen.add(y)
        y = step(y)
    return y


def brute_sss(x: CanonicalForm, budget: OracleBudget = DEFAULT_BUDGET) -> set[CanonicalForm]:
    """
    The super summit set of ``x``.

    Cycling never lowers the infimum nor raises the supremum, so iterating it
    reaches a circuit, on which the infimum is maximal (otherwise further
    cycling would raise it). Decycling then does the same for the supremum.
    From that representative, all conjugates by simple elements with the same
    bounds are collected until closed. Along the way every simple conjugate is
    checked not to beat those bounds; a failure raises AssertionError, since a
    non-optimal bound always improves under some simple conjugation.
    """
    p = x.presentation
    budget.check_index(p)
    if len(x.factors) > budget.max_length:
        raise BudgetExceeded(f"canonical length {len(x.factors)} exceeds oracle budget")
    simples = _simples(p)
    y = x
    while True:
        z = _to_circuit(_to_circuit(y, naive_cycle), naive_decycle)
        if (z.inf, z.sup) == (y.inf, y.sup):
            y = z
            break
        y = z
    lo, hi = y.inf, y.sup
    level = {y}
    queue = deque([y])
    while queue:
        w = queue.popleft()
        for s in simples:
            z = conjugate(w, p.simple_element(s))
            assert z.inf <= lo and z.sup >= hi, "summit bounds not optimal"
            if z.inf == lo and z.sup == hi and z not in level:
                level.add(z)
                queue.append(z)
                if len(level) > budget.max_closure:
                    raise BudgetExceeded("super summit closure too large")
    return level


def brute_uss(x: CanonicalForm, sss: set[CanonicalForm] | None = None,
              budget: OracleBudget = DEFAULT_BUDGET) -> set[CanonicalForm]:
    """Elements of the super summit set lying on a cycling circuit."""
    if sss is None:
        sss = brute_sss(x, budget)
    out = set()
    for y in sss:
        z = y
        for _ in range(len(sss)):
            z = naive_cycle(z)
            if z == y:
                out.add(y)
                break
    return out


def brute_min_conjugator(y: CanonicalForm, s: Perm, target: set[CanonicalForm]) -> Perm:
    """
    The ≼-minimal simple ``t`` with ``s ≼ t`` and ``y^t`` in ``target``.

    Raises AssertionError if the minimum is not unique, which would contradict
    the gcd-closure of summit sets.
    """
    p = y.presentation
    cands = [t for t in _simples(p) if p.left_divides(s, t) and conjugate(y, p.simple_element(t)) in target]
    mins = [t for t in cands if not any(u != t and p.left_divides(u, t) for u in cands)]
    assert len(mins) == 1, f"no unique minimum: {mins}"
    assert all(p.left_divides(mins[0], t) for t in cands)
    return mins[0]


def brute_is_conjugate(x: CanonicalForm, y: CanonicalForm, budget: OracleBudget = DEFAULT_BUDGET) -> bool:
    sx = brute_sss(x, budget)
    return next(iter(brute_sss(y, budget))) in sx
