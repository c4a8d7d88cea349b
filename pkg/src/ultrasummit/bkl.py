"""
B_n under the Birman-Ko-Lee (band generator) presentation.

Simple elements are non-crossing partitions of the strings. The braid of a
block ``b_1 < ... < b_m`` is the descending product ``a_{b_m,b_{m-1}} ⋯
a_{b_2,b_1}``; its permutation sends each block element to the next larger
one and the largest back to the smallest. Internally a simple is stored as
that permutation (0-based), which determines the partition; the ``blocks``
helpers convert to and from the 1-based block notation used in I/O.

δ is the single block ``{1..n}`` (the cycle ``i ↦ i+1 mod n``), so ``τ`` rotates
every block by one: ``τ(P) = P + 1 (mod n)``. Divisibility among simples is
refinement of partitions, the meet is the common refinement and the join is
the smallest non-crossing coarsening.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from .garside import GarsidePresentation, ParseError, Perm


@lru_cache(maxsize=None)
def catalan(m: int) -> int:
    if m <= 1:
        return 1
    return sum(catalan(i) * catalan(m - 1 - i) for i in range(m))


def _cycles(p: Sequence[int]) -> list[list[int]]:
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if not seen[i]:
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = p[j]
            out.append(cyc)
    return out


def _crossing(b1: Sequence[int], b2: Sequence[int]) -> bool:
    """Whether two disjoint blocks cross (some a<b<c<d with a,c in one and b,d in the other)."""
    s1 = set(b1)
    merged = sorted(list(b1) + list(b2))
    # blocks cross iff the membership pattern along the circle alternates more than twice
    changes = 0
    prev = merged[-1] in s1
    for v in merged:
        cur = v in s1
        if cur != prev:
            changes += 1
        prev = cur
    return changes > 2


class BKLPresentation(GarsidePresentation):
    kind = "bkl"

    def _make_delta(self) -> Perm:
        n = self.n
        return tuple((i + 1) % n for i in range(n))

    def _make_atoms(self) -> list[Perm]:
        atoms = []
        self._atom_tokens = []
        for t in range(2, self.n + 1):
            for s in range(1, t):
                p = list(range(self.n))
                p[s - 1], p[t - 1] = t - 1, s - 1
                atoms.append(tuple(p))
                self._atom_tokens.append((t, s))
        self._atom_index = {tok: i for i, tok in enumerate(self._atom_tokens)}
        return atoms

    def _tau_order(self) -> int:
        return self.n

    # -- partition views ------------------------------------------------------

    def blocks(self, s: Perm) -> list[list[int]]:
        """Blocks of the partition of ``s``, 1-based, sorted."""
        return sorted(sorted(v + 1 for v in cyc) for cyc in _cycles(s))

    def from_blocks(self, blocks: Iterable[Iterable[int]]) -> Perm:
        """The simple element of a 1-based partition; unlisted points are singletons."""
        p = list(range(self.n))
        seen = set()
        clean = []
        for blk in blocks:
            b = sorted(int(v) - 1 for v in blk)
            if not b:
                continue
            if b[0] < 0 or b[-1] >= self.n or seen.intersection(b) or len(set(b)) != len(b):
                raise ValueError(f"invalid block {list(blk)!r} for n={self.n}")
            seen.update(b)
            clean.append(b)
        for i, b in enumerate(clean):
            for c in clean[i + 1:]:
                if _crossing(b, c):
                    raise ValueError(f"blocks {b} and {c} cross")
        for b in clean:
            self._write_block(p, b)
        return tuple(p)

    @staticmethod
    def _write_block(p: list[int], b: Sequence[int]):
        for x, y in zip(b, b[1:]):
            p[x] = y
        p[b[-1]] = b[0]

    def _labels(self, s: Perm) -> list[int]:
        """Block label (its smallest element) for every point."""
        lab = [-1] * self.n
        for i in range(self.n):
            if lab[i] < 0:
                j = i
                while lab[j] < 0:
                    lab[j] = i
                    j = s[j]
        return lab

    def _from_labels(self, lab: Sequence[int]) -> Perm:
        groups: dict[int, list[int]] = {}
        for i, l in enumerate(lab):
            groups.setdefault(l, []).append(i)
        p = list(range(self.n))
        for b in groups.values():
            if len(b) > 1:
                self._write_block(p, b)
        return tuple(p)

    # -- backend primitives ---------------------------------------------------

    def is_simple(self, p: Sequence[int]) -> bool:
        if len(p) != self.n or sorted(p) != list(range(self.n)):
            return False
        cycles = _cycles(p)
        for cyc in cycles:
            # each block must cycle upwards: exactly one descent back to the minimum
            m = cyc.index(min(cyc))
            rot = cyc[m:] + cyc[:m]
            if rot != sorted(rot):
                return False
        big = [c for c in cycles if len(c) > 1]
        for i, b in enumerate(big):
            for c in big[i + 1:]:
                if _crossing(b, c):
                    return False
        return True

    def atom_length(self, s: Perm) -> int:
        return self.n - len(_cycles(s))

    def atom_left_divides(self, t: int, s: int, p: Perm) -> bool:
        """``a_{t,s} ≼ P`` iff ``t`` and ``s`` share a block."""
        if not self.n >= t > s >= 1:
            raise ValueError(f"band generator ({t},{s}) out of range for n={self.n}")
        lab = self._labels(p)
        return lab[t - 1] == lab[s - 1]

    def left_divides(self, a: Perm, b: Perm) -> bool:
        # a refines b: every cycle of a stays inside one block of b
        lb = self._labels(b)
        return all(lb[i] == lb[v] for i, v in enumerate(a))

    def meet(self, a: Perm, b: Perm) -> Perm:
        la, lb = self._labels(a), self._labels(b)
        return self._from_labels([la[i] * self.n + lb[i] for i in range(self.n)])

    def right_meet(self, a: Perm, b: Perm) -> Perm:
        return self.meet(a, b)

    def join(self, a: Perm, b: Perm) -> Perm:
        n = self.n
        parent = list(range(n))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        def union(i, j):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)

        for p in (a, b):
            for i, v in enumerate(p):
                union(i, v)
        # merge crossing blocks until the partition is non-crossing
        changed = True
        while changed:
            changed = False
            groups: dict[int, list[int]] = {}
            for i in range(n):
                groups.setdefault(find(i), []).append(i)
            big = [g for g in groups.values() if len(g) > 1]
            for i, g in enumerate(big):
                for h in big[i + 1:]:
                    if _crossing(g, h):
                        union(g[0], h[0])
                        changed = True
                        break
                if changed:
                    break
        return self._from_labels([find(i) for i in range(n)])

    def left_weight(self, a: Perm, b: Perm) -> tuple[Perm, Perm]:
        t = self.meet(self.complement(a), b)
        if t == self.identity:
            return a, b
        return self.mul(a, t), self.left_quotient(t, b)

    def enumerate_simples(self) -> list[Perm]:
        out = []

        def rec(i: int, lab: list[int]):
            if i == self.n:
                p = self._from_labels(lab)
                if self.is_simple(p):
                    out.append(p)
                return
            for l in sorted(set(lab)) + [i]:
                lab.append(l)
                rec(i + 1, lab)
                lab.pop()

        rec(0, [])
        return out

    def random_simple(self, rng) -> Perm:
        """Uniform random non-crossing partition, by the first-return decomposition."""
        p = list(range(self.n))
        # intervals [lo, hi] to fill; `glue` is a point forced into the block of lo
        work = [(0, self.n - 1, None)]
        blocks: list[list[int]] = []
        where: dict[int, int] = {}
        while work:
            lo, hi, glue = work.pop()
            if lo > hi:
                continue
            m = hi - lo + 1
            # the point following lo in its block: none (weight C_{m-1}) or y (C_{y-lo-1} C_{hi-y+1})
            pick = rng.randrange(catalan(m))
            y = None
            acc = catalan(m - 1)
            if pick >= acc:
                for cand in range(lo + 1, hi + 1):
                    acc += catalan(cand - lo - 1) * catalan(hi - cand + 1)
                    if pick < acc:
                        y = cand
                        break
            if glue is None:
                bid = len(blocks)
                blocks.append([lo])
            else:
                bid = where[glue]
                blocks[bid].append(lo)
            where[lo] = bid
            if y is None:
                work.append((lo + 1, hi, None))
            else:
                work.append((lo + 1, y - 1, None))
                work.append((y, hi, lo))
        for b in blocks:
            if len(b) > 1:
                self._write_block(p, sorted(b))
        return tuple(p)

    # -- tokens and words -------------------------------------------------------

    def atom_of_token(self, token) -> Perm:
        try:
            return self.atoms[self._atom_index[tuple(token)]]
        except (KeyError, TypeError):
            raise ParseError(f"invalid band generator {token!r} for n={self.n}") from None

    def token_of_atom(self, atom: Perm) -> tuple[int, int]:
        return self._atom_tokens[self.atoms.index(atom)]

    def signed_token(self, item) -> tuple[tuple[int, int], int]:
        try:
            t, s = item
            t, s = int(t), int(s)
        except (TypeError, ValueError):
            raise ParseError(f"invalid BKL token {item!r}") from None
        sign = -1 if t < 0 else 1
        tok = (abs(t), s)
        if tok not in self._atom_index:
            raise ParseError(f"band generator {tok} out of range for n={self.n}")
        return tok, sign

    def parse_token(self, text: str) -> tuple[tuple[int, int], int]:
        body = text.strip()
        sign = 1
        if body.startswith("-"):
            sign, body = -1, body[1:]
        elif body.startswith("+"):
            body = body[1:]
        parts = body.split(".")
        if len(parts) != 2:
            raise ParseError(f"bad BKL token {text!r}; expected 't.s'")
        try:
            tok = (int(parts[0]), int(parts[1]))
        except ValueError:
            raise ParseError(f"bad BKL token {text!r}") from None
        if tok not in self._atom_index:
            raise ParseError(f"band generator {tok} out of range for n={self.n}")
        return tok, sign

    def format_token(self, token, sign: int = 1) -> str:
        t, s = token
        return f"{'-' if sign < 0 else ''}{t}.{s}"

    def word_of(self, s: Perm) -> list[tuple[int, int]]:
        word = []
        for b in self.blocks(s):
            for x, y in zip(reversed(b), list(reversed(b))[1:]):
                word.append((x, y))
        return word
