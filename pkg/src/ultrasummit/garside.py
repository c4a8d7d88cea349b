"""
Presentation-agnostic Garside arithmetic.

An element of a Garside group is stored in left normal form δ^k A_1 ... A_r,
where every A_i is a proper simple element (neither 1 nor δ) and every
adjacent pair is left-weighted: ∂A_i ∧ A_{i+1} = 1.

Simple elements are encoded by the permutation they induce on the strings,
as a tuple ``p`` with ``p[i]`` the final position of the string starting at
position ``i`` (0-based). Braid products compose left to right, so the
permutation of ``a·b`` is ``i ↦ b[a[i]]``. Both shipped presentations (Artin
and Birman-Ko-Lee) identify a simple element with its permutation, so this
encoding is canonical and hashable. The lattice structure (divisibility,
meet, join) is presentation specific and lives in the backends.
"""

from __future__ import annotations

import abc
from typing import Iterable, Sequence

Perm = tuple[int, ...]


class GarsideError(Exception):
    """Base class for errors raised by this package."""


class ParseError(GarsideError, ValueError):
    """A word token or text could not be parsed."""


class NotSimpleError(GarsideError, ValueError):
    """A positive word does not spell a simple element."""


class PresentationMismatch(GarsideError, ValueError):
    """Two operands belong to different presentations."""


class ContractError(GarsideError, RuntimeError):
    """A documented precondition or postcondition was violated."""


def perm_inverse(p: Sequence[int]) -> Perm:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def perm_mul(a: Sequence[int], b: Sequence[int]) -> Perm:
    """Permutation of the braid product ``a·b``."""
    return tuple([b[v] for v in a])


class GarsidePresentation(abc.ABC):
    """
    Backend contract for a Garside structure on the braid group B_n.

    Subclasses provide the atoms, the Garside element and the lattice
    operations on simple elements. Everything that can be phrased as
    permutation arithmetic (products of simples known to be simple, quotients,
    τ, complements) is implemented here once.
    """

    kind: str = ""

    def __init__(self, n: int):
        if n < 2:
            raise ValueError(f"braid index must be at least 2, got {n}")
        self.n = n
        self.identity: Perm = tuple(range(n))
        self.delta: Perm = self._make_delta()
        self._delta_inv = perm_inverse(self.delta)
        self.atoms: tuple[Perm, ...] = tuple(self._make_atoms())
        self.tau_order = self._tau_order()
        # δ^m as a permutation, for m in [0, tau_order)
        powers = [self.identity]
        for _ in range(1, self.tau_order):
            powers.append(perm_mul(powers[-1], self.delta))
        self._delta_pows = powers
        self._delta_pow_invs = [perm_inverse(q) for q in powers]

    # -- identity and hashing -------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, GarsidePresentation)
                and self.kind == other.kind and self.n == other.n)

    def __hash__(self):
        return hash((self.kind, self.n))

    def __repr__(self):
        return f"{type(self).__name__}({self.n})"

    # -- abstract backend pieces --------------------------------------------

    @abc.abstractmethod
    def _make_delta(self) -> Perm: ...

    @abc.abstractmethod
    def _make_atoms(self) -> list[Perm]: ...

    @abc.abstractmethod
    def _tau_order(self) -> int: ...

    @abc.abstractmethod
    def is_simple(self, p: Sequence[int]) -> bool:
        """Whether the permutation ``p`` is the permutation of a simple element."""

    @abc.abstractmethod
    def atom_length(self, s: Perm) -> int:
        """Number of atoms in any positive spelling of ``s``."""

    @abc.abstractmethod
    def left_divides(self, a: Perm, b: Perm) -> bool:
        """``a ≼ b`` for simple ``a`` and ``b``."""

    @abc.abstractmethod
    def meet(self, a: Perm, b: Perm) -> Perm:
        """Left gcd ``a ∧ b`` of two simples."""

    @abc.abstractmethod
    def right_meet(self, a: Perm, b: Perm) -> Perm:
        """Right gcd of two simples (largest common right divisor)."""

    @abc.abstractmethod
    def join(self, a: Perm, b: Perm) -> Perm:
        """Left lcm ``a ∨ b`` of two simples; always simple."""

    @abc.abstractmethod
    def enumerate_simples(self) -> list[Perm]: ...

    @abc.abstractmethod
    def random_simple(self, rng) -> Perm: ...

    @abc.abstractmethod
    def atom_of_token(self, token) -> Perm:
        """The atom named by a positive token (e.g. ``2`` or ``(3, 1)``)."""

    @abc.abstractmethod
    def token_of_atom(self, atom: Perm):
        """Inverse of :meth:`atom_of_token`."""

    @abc.abstractmethod
    def parse_token(self, text: str) -> tuple[object, int]:
        """Parse one textual atom token into ``(token, sign)``."""

    @abc.abstractmethod
    def format_token(self, token, sign: int = 1) -> str: ...

    @abc.abstractmethod
    def signed_token(self, item) -> tuple[object, int]:
        """Split a Python-level signed token (``-2``, ``(-3, 1)``) into ``(token, sign)``."""

    @abc.abstractmethod
    def word_of(self, s: Perm) -> list:
        """A positive spelling of ``s`` as a list of atom tokens."""

    # -- permutation arithmetic on simples ------------------------------------

    def mul(self, a: Perm, b: Perm) -> Perm:
        """``a·b``; the caller guarantees the product is simple."""
        return tuple([b[v] for v in a])

    def left_quotient(self, a: Perm, b: Perm) -> Perm:
        """``a^{-1}·b`` for ``a ≼ b``."""
        ainv = perm_inverse(a)
        return tuple([b[v] for v in ainv])

    def right_quotient(self, b: Perm, a: Perm) -> Perm:
        """``b·a^{-1}`` for ``b ≽ a``."""
        ainv = perm_inverse(a)
        return tuple([ainv[v] for v in b])

    def complement(self, s: Perm) -> Perm:
        """Right complement ``∂s = s^{-1}δ``, so that ``s·∂s = δ``."""
        d = self.delta
        sinv = perm_inverse(s)
        return tuple([d[v] for v in sinv])

    def left_complement(self, s: Perm) -> Perm:
        """``δ·s^{-1}``, the simple ``t`` with ``t·s = δ``."""
        sinv = perm_inverse(s)
        return tuple([sinv[v] for v in self.delta])

    def tau(self, s: Perm, m: int = 1) -> Perm:
        """``τ^m(s) = δ^{-m} s δ^m``."""
        m %= self.tau_order
        if m == 0:
            return s
        d = self._delta_pows[m]
        dinv = self._delta_pow_invs[m]
        return tuple([d[s[v]] for v in dinv])

    def quotient_join(self, a: Perm, s: Perm) -> Perm:
        """``a\\s = a^{-1}(a ∨ s)``: the smallest simple ``c`` with ``s ≼ a·c``."""
        return self.left_quotient(a, self.join(a, s))

    def left_weight(self, a: Perm, b: Perm) -> tuple[Perm, Perm]:
        """
        Make the pair ``(a, b)`` left-weighted, preserving the product.

        Returns ``(a·t, t^{-1}·b)`` with ``t = ∂a ∧ b``.
        """
        t = self.meet(self.complement(a), b)
        if t == self.identity:
            return a, b
        return self.mul(a, t), self.left_quotient(t, b)

    def simple_from_word(self, word: Iterable) -> Perm:
        """The simple element spelled by a positive word, or :class:`NotSimpleError`."""
        s = self.identity
        length = 0
        for tok in word:
            s = perm_mul(s, self.atom_of_token(tok))
            length += 1
        if not self.is_simple(s) or self.atom_length(s) != length:
            raise NotSimpleError(f"word {list(word)!r} does not spell a simple element")
        return s

    def element(self, word: Iterable = (), inf: int = 0) -> "CanonicalForm":
        return normalize(word, self, inf=inf)

    def simple_element(self, s: Perm) -> "CanonicalForm":
        """Wrap a simple element as a :class:`CanonicalForm`."""
        if s == self.identity:
            return CanonicalForm(self, 0, ())
        if s == self.delta:
            return CanonicalForm(self, 1, ())
        return CanonicalForm(self, 0, (s,))

    def identity_element(self) -> "CanonicalForm":
        return CanonicalForm(self, 0, ())

    def delta_power(self, k: int) -> "CanonicalForm":
        return CanonicalForm(self, k, ())


class CanonicalForm:
    """
    An element δ^k A_1 ... A_r of a Garside group in left normal form.

    Instances are immutable and hash on ``(presentation, k, factors)``. Use
    :func:`normalize` or the arithmetic operators to build them; the raw
    constructor trusts its input.
    """

    __slots__ = ("presentation", "k", "factors", "_hash")

    def __init__(self, presentation: GarsidePresentation, k: int, factors: tuple[Perm, ...]):
        self.presentation = presentation
        self.k = k
        self.factors = factors
        self._hash = None

    @property
    def inf(self) -> int:
        return self.k

    @property
    def sup(self) -> int:
        return self.k + len(self.factors)

    @property
    def length(self) -> int:
        """Canonical length ``r``."""
        return len(self.factors)

    def __len__(self):
        return len(self.factors)

    def __eq__(self, other):
        if not isinstance(other, CanonicalForm):
            return NotImplemented
        return (self.k == other.k and self.factors == other.factors
                and self.presentation == other.presentation)

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.presentation.kind, self.presentation.n, self.k, self.factors))
            self._hash = h
        return h

    def sort_key(self):
        return (self.k, self.factors)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __mul__(self, other):
        return multiply(self, other)

    def __invert__(self):
        return invert(self)

    def __pow__(self, e: int):
        if e < 0:
            return invert(self) ** (-e)
        out = self.presentation.identity_element()
        for _ in range(e):
            out = multiply(out, self)
        return out

    def __xor__(self, c):
        """``x ^ c`` is the conjugate ``c^{-1} x c``."""
        return conjugate(self, c)

    def is_identity(self) -> bool:
        return self.k == 0 and not self.factors

    def is_delta_power(self) -> bool:
        return not self.factors

    def is_positive(self) -> bool:
        return self.k >= 0

    def is_simple(self) -> bool:
        return (self.k == 0 and len(self.factors) <= 1) or (self.k == 1 and not self.factors)

    def as_simple(self) -> Perm:
        """The simple element this form represents; raises if it is not simple."""
        p = self.presentation
        if self.k == 0 and not self.factors:
            return p.identity
        if self.k == 0 and len(self.factors) == 1:
            return self.factors[0]
        if self.k == 1 and not self.factors:
            return p.delta
        raise ContractError(f"{self} is not a simple element")

    def tokens(self) -> list:
        """A spelling as a list of positive atom tokens (δ-power excluded)."""
        p = self.presentation
        out = []
        for f in self.factors:
            out.extend(p.word_of(f))
        return out

    def exponent_sum(self) -> int:
        p = self.presentation
        return self.k * p.atom_length(p.delta) + sum(p.atom_length(f) for f in self.factors)

    def __repr__(self):
        p = self.presentation
        parts = [f"d^{self.k}"]
        for f in self.factors:
            parts.append("[" + " ".join(p.format_token(t) for t in p.word_of(f)) + "]")
        return f"<{p.kind} {p.n}: {' '.join(parts)}>"


# -- normalization ------------------------------------------------------------

def _left_multiply(p: GarsidePresentation, s: Perm, factors: list[Perm]) -> list[Perm]:
    """
    Normal factor list of ``s·F_1⋯F_m`` for a normal list ``F``.

    ``F`` may begin with copies of δ. The carry moves right; the pass stops as
    soon as the carry vanishes or meets an already left-weighted pair.
    """
    ident = p.identity
    if s == ident:
        return factors
    out = []
    c = s
    lw = p.left_weight
    for i, f in enumerate(factors):
        a, b = lw(c, f)
        if a == c:
            out.append(c)
            out.extend(factors[i:])
            return out
        out.append(a)
        c = b
        if c == ident:
            out.extend(factors[i + 1:])
            return out
    out.append(c)
    return out


def _finish(p: GarsidePresentation, k: int, factors: list[Perm]) -> CanonicalForm:
    delta, ident = p.delta, p.identity
    i = 0
    while i < len(factors) and factors[i] == delta:
        i += 1
    j = len(factors)
    while j > i and factors[j - 1] == ident:
        j -= 1
    return CanonicalForm(p, k + i, tuple(factors[i:j]))


def normal_form_of_simples(p: GarsidePresentation, k: int, simples: Sequence[Perm]) -> CanonicalForm:
    """Normal form of ``δ^k · s_1 ⋯ s_m`` for arbitrary simple elements ``s_i``."""
    out: list[Perm] = []
    for s in reversed(simples):
        out = _left_multiply(p, s, out)
    return _finish(p, k, out)


def normalize(word: Iterable, p: GarsidePresentation, inf: int = 0) -> CanonicalForm:
    """
    Normal form of a word.

    Tokens are atom tokens of ``p`` (``2``/``-2`` for Artin, ``(3, 1)``/``(-3, 1)``
    for BKL), their textual forms (``"-2"``, ``"-3.1"``), or δ tokens
    ``"d"``, ``"-d"``, ``"d^k"``. ``inf`` prepends an extra power of δ.
    """
    result = p.delta_power(inf)
    run: list[Perm] = []

    def flush():
        nonlocal result, run
        if run:
            result = multiply(result, normal_form_of_simples(p, 0, run))
            run = []

    for item in word:
        tok, sign = _split_token(p, item)
        if tok == "d":
            flush()
            result = multiply(result, p.delta_power(sign))
            continue
        atom = p.atom_of_token(tok)
        if sign > 0:
            run.append(atom)
        else:
            flush()
            # a^{-1} = δ^{-1}·τ^{-1}(∂a)
            result = multiply(result, CanonicalForm(p, -1, (p.tau(p.complement(atom), -1),)))
    flush()
    return result


def _split_token(p: GarsidePresentation, item) -> tuple[object, int]:
    if isinstance(item, str):
        text = item.strip()
        if text in ("d", "D", "+d", "+D"):
            return "d", 1
        if text in ("-d", "-D"):
            return "d", -1
        if text[:2] in ("d^", "D^"):
            try:
                return "d", int(text[2:])
            except ValueError:
                raise ParseError(f"bad delta token {item!r}") from None
        return p.parse_token(text)
    return p.signed_token(item)


# -- group operations ---------------------------------------------------------

def _check_same(a: CanonicalForm, b: CanonicalForm):
    if a.presentation != b.presentation:
        raise PresentationMismatch(f"{a.presentation!r} vs {b.presentation!r}")


def multiply(a: CanonicalForm, b: CanonicalForm) -> CanonicalForm:
    """Normal form of ``a·b``."""
    _check_same(a, b)
    p = a.presentation
    if not a.factors:
        if not b.factors:
            return CanonicalForm(p, a.k + b.k, ())
        # δ^a·δ^b B = δ^{a+b} B
        return CanonicalForm(p, a.k + b.k, b.factors)
    # δ^a A δ^b B = δ^{a+b} τ^b(A) B
    out = list(b.factors)
    tau = p.tau
    for f in reversed(a.factors):
        out = _left_multiply(p, tau(f, b.k), out)
    return _finish(p, a.k + b.k, out)


def invert(a: CanonicalForm) -> CanonicalForm:
    """
    Normal form of ``a^{-1}``.

    For ``a = δ^k A_1⋯A_r`` the inverse is ``δ^{-k-r} B_r⋯B_1`` with
    ``B_i = τ^{-k-i}(∂A_i)``, which is already left-weighted.
    """
    p = a.presentation
    r = len(a.factors)
    k = a.k
    facs = tuple(p.tau(p.complement(a.factors[i - 1]), -k - i) for i in range(r, 0, -1))
    return CanonicalForm(p, -k - r, facs)


def conjugate(x: CanonicalForm, c: CanonicalForm) -> CanonicalForm:
    """``x^c = c^{-1} x c``."""
    _check_same(x, c)
    if not c.factors:
        return tau_pow(x, c.k)
    return multiply(multiply(invert(c), x), c)


def conjugate_by_simple(x: CanonicalForm, s: Perm) -> CanonicalForm:
    """``s^{-1} x s`` for a simple element ``s``."""
    p = x.presentation
    if s == p.identity:
        return x
    if s == p.delta:
        return tau_pow(x, 1)
    # τ^k(s)^{-1} = δ^{-1} τ^{-1}(∂τ^k(s))
    head = p.tau(p.complement(p.tau(s, x.k)), -1)
    out = _left_multiply(p, s, [])
    for f in reversed(x.factors):
        out = _left_multiply(p, f, out)
    out = _left_multiply(p, head, out)
    return _finish(p, x.k - 1, out)


def tau_pow(x: CanonicalForm, m: int) -> CanonicalForm:
    """``τ^m(x) = δ^{-m} x δ^m``; preserves inf, sup and len."""
    p = x.presentation
    if m % p.tau_order == 0:
        return x
    return CanonicalForm(p, x.k, tuple(p.tau(f, m) for f in x.factors))


def left_divides(a: CanonicalForm, b: CanonicalForm) -> bool:
    """``a ≼ b``, i.e. ``a^{-1}b`` is positive."""
    _check_same(a, b)
    return multiply(invert(a), b).k >= 0


def head(u: CanonicalForm) -> Perm:
    """``u ∧ δ`` for a positive element ``u``."""
    p = u.presentation
    if u.k > 0:
        return p.delta
    if u.factors:
        return u.factors[0]
    return p.identity


def meet_positive(u: CanonicalForm, v: CanonicalForm) -> CanonicalForm:
    """Left gcd of two positive elements, by repeatedly peeling the meet of their heads."""
    _check_same(u, v)
    if u.k < 0 or v.k < 0:
        raise ContractError("meet_positive needs positive arguments")
    p = u.presentation
    pieces: list[Perm] = []
    while True:
        d = p.meet(head(u), head(v))
        if d == p.identity:
            break
        pieces.append(d)
        dinv = invert(p.simple_element(d))
        u = multiply(dinv, u)
        v = multiply(dinv, v)
    return normal_form_of_simples(p, 0, pieces)


def join_simple(p: GarsidePresentation, s: Perm, t: Perm) -> Perm:
    return p.join(s, t)


def meet_simple(p: GarsidePresentation, s: Perm, t: Perm) -> Perm:
    return p.meet(s, t)


def complement(p: GarsidePresentation, s: Perm) -> Perm:
    return p.complement(s)


def complement_of_positive_in_simple(u: CanonicalForm, s: Perm) -> Perm:
    """
    ``u\\s``: the smallest simple ``c`` with ``s ≼ u·c``; then ``u·c = u ∨ s``.

    Folds the simple-level identity ``(AB)\\s = B\\(A\\s)`` over the normal
    form of ``u``.
    """
    if u.k < 0:
        raise ContractError("complement_of_positive_in_simple needs a positive element")
    return _quotient_join_factors(u.presentation, u.k, u.factors, s)


def _quotient_join_factors(p: GarsidePresentation, k: int, factors: Sequence[Perm], s: Perm) -> Perm:
    if k > 0:
        # s ≼ δ ≼ u already
        return p.identity
    c = s
    ident = p.identity
    qj = p.quotient_join
    for f in factors:
        if c == ident:
            break
        c = qj(f, c)
    return c


def is_left_weighted(p: GarsidePresentation, a: Perm, b: Perm) -> bool:
    return p.meet(p.complement(a), b) == p.identity


def check_normal_form(x: CanonicalForm) -> bool:
    """Structural validity: no trivial factors and every adjacent pair left-weighted."""
    p = x.presentation
    for f in x.factors:
        if f == p.identity or f == p.delta or not p.is_simple(f):
            return False
    return all(is_left_weighted(p, a, b) for a, b in zip(x.factors, x.factors[1:]))
