"""
B_n under the Artin presentation: simple elements are permutation braids.

A permutation ``p`` stands for the positive braid in which every pair of
strings crosses at most once and the string starting at position ``i`` ends
at position ``p[i]``. ``σ_j`` (1 ≤ j ≤ n-1) swaps positions ``j-1`` and ``j``.

With products composing left to right:

* ``σ_j ≼ s``  iff the strings starting at ``j-1, j`` cross: ``s[j-1] > s[j]``;
* ``s·σ_j`` is simple iff the strings ending at ``j-1, j`` have not crossed;
* ``δ`` is the order-reversing permutation and ``τ`` is conjugation by it.

The lattice operations are greedy atom exchanges driven by a worklist, so a
meet or a left-weighting costs ``O(n + number of atoms moved)``.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from .garside import GarsidePresentation, ParseError, Perm, perm_inverse


class ArtinPresentation(GarsidePresentation):
    kind = "artin"

    def _make_delta(self) -> Perm:
        return tuple(range(self.n - 1, -1, -1))

    def _make_atoms(self) -> list[Perm]:
        atoms = []
        for j in range(1, self.n):
            p = list(range(self.n))
            p[j - 1], p[j] = p[j], p[j - 1]
            atoms.append(tuple(p))
        return atoms

    def _tau_order(self) -> int:
        return 2

    # -- backend primitives ---------------------------------------------------

    def is_simple(self, p: Sequence[int]) -> bool:
        return len(p) == self.n and sorted(p) == list(range(self.n))

    def atom_length(self, s: Perm) -> int:
        n = self.n
        return sum(1 for i in range(n) for j in range(i + 1, n) if s[i] > s[j])

    def atom_left_divides(self, j: int, s: Perm) -> bool:
        """``σ_j ≼ s``."""
        if not 1 <= j < self.n:
            raise ValueError(f"atom index {j} out of range for B_{self.n}")
        return s[j - 1] > s[j]

    def tau(self, s: Perm, m: int = 1) -> Perm:
        if m % 2 == 0:
            return s
        top = self.n - 1
        return tuple([top - v for v in reversed(s)])

    def left_divides(self, a: Perm, b: Perm) -> bool:
        # inversion sets, labelled by starting positions, must nest
        n = self.n
        for i in range(n - 1):
            ai, bi = a[i], b[i]
            for j in range(i + 1, n):
                if ai > a[j] and bi < b[j]:
                    return False
        return True

    def meet(self, a: Perm, b: Perm) -> Perm:
        n = self.n
        al, bl = list(a), list(b)
        dinv = list(range(n))
        moved = False
        stack = [j for j in range(1, n) if al[j - 1] > al[j] and bl[j - 1] > bl[j]]
        while stack:
            j = stack.pop()
            if al[j - 1] > al[j] and bl[j - 1] > bl[j]:
                al[j - 1], al[j] = al[j], al[j - 1]
                bl[j - 1], bl[j] = bl[j], bl[j - 1]
                dinv[j - 1], dinv[j] = dinv[j], dinv[j - 1]
                moved = True
                if j > 1:
                    stack.append(j - 1)
                if j < n - 1:
                    stack.append(j + 1)
        if not moved:
            return self.identity
        return perm_inverse(dinv)

    def right_meet(self, a: Perm, b: Perm) -> Perm:
        # word reversal is an anti-automorphism mapping a simple to its inverse permutation
        return perm_inverse(self.meet(perm_inverse(a), perm_inverse(b)))

    def join(self, a: Perm, b: Perm) -> Perm:
        # s ≼ m  iff  ∂m is a right divisor of ∂s, so a ∨ b = δ·(∂a ∧_R ∂b)^{-1}
        z = self.right_meet(self.complement(a), self.complement(b))
        zinv = perm_inverse(z)
        top = self.n - 1
        return tuple([zinv[top - i] for i in range(self.n)])

    def left_weight(self, a: Perm, b: Perm) -> tuple[Perm, Perm]:
        n = self.n
        ainv = [0] * n
        for i, v in enumerate(a):
            ainv[v] = i
        bl = list(b)
        moved = False
        stack = [j for j in range(1, n) if ainv[j - 1] < ainv[j] and bl[j - 1] > bl[j]]
        while stack:
            j = stack.pop()
            if ainv[j - 1] < ainv[j] and bl[j - 1] > bl[j]:
                ainv[j - 1], ainv[j] = ainv[j], ainv[j - 1]
                bl[j - 1], bl[j] = bl[j], bl[j - 1]
                moved = True
                if j > 1:
                    stack.append(j - 1)
                if j < n - 1:
                    stack.append(j + 1)
        if not moved:
            return a, b
        return perm_inverse(ainv), tuple(bl)

    def enumerate_simples(self) -> list[Perm]:
        return [tuple(p) for p in itertools.permutations(range(self.n))]

    def random_simple(self, rng) -> Perm:
        p = list(range(self.n))
        rng.shuffle(p)
        return tuple(p)

    # -- tokens and words -------------------------------------------------------

    def atom_of_token(self, token) -> Perm:
        if isinstance(token, bool) or not isinstance(token, int) or not 1 <= token < self.n:
            raise ParseError(f"invalid Artin generator {token!r} for B_{self.n}")
        return self.atoms[token - 1]

    def token_of_atom(self, atom: Perm) -> int:
        return self.atoms.index(atom) + 1

    def signed_token(self, item) -> tuple[int, int]:
        if isinstance(item, bool) or not isinstance(item, int) or item == 0:
            raise ParseError(f"invalid Artin token {item!r}")
        if abs(item) >= self.n:
            raise ParseError(f"generator index {abs(item)} out of range for B_{self.n}")
        return abs(item), (1 if item > 0 else -1)

    def parse_token(self, text: str) -> tuple[int, int]:
        try:
            value = int(text)
        except ValueError:
            raise ParseError(f"bad Artin token {text!r}") from None
        return self.signed_token(value)

    def format_token(self, token, sign: int = 1) -> str:
        return str(token if sign > 0 else -token)

    def word_of(self, s: Perm) -> list[int]:
        sl = list(s)
        word = []
        j = 1
        while j < self.n:
            if sl[j - 1] > sl[j]:
                word.append(j)
                sl[j - 1], sl[j] = sl[j], sl[j - 1]
                j = max(j - 1, 1)
            else:
                j += 1
        return word
