"""
Cycling, summit sets, transport and minimal conjugators.

Conventions: ``x^c = c^{-1} x c``. For ``y = δ^k A_1⋯A_r``

* cycling ``c(y) = y^{τ^{-k}(A_1)} = δ^k A_2⋯A_r τ^{-k}(A_1)``,
* decycling ``d(y) = y^{A_r^{-1}} = δ^k τ^k(A_r) A_1⋯A_{r-1}``,
* transport ``φ_y(u) = τ^{-k}(A_1)^{-1} · u · τ^{-k}(B_1)`` where ``B_1`` is the
  first factor of ``y^u``; for ``y, y^u`` in the super summit set this is the
  positive element making ``c(y^u) = c(y)^{φ_y(u)}``.

Simple elements are passed around as raw permutations (``Perm``); group
elements as :class:`~ultrasummit.garside.CanonicalForm`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .garside import (
    CanonicalForm,
    ContractError,
    Perm,
    _finish,
    _left_multiply,
    _quotient_join_factors,
    conjugate_by_simple,
    invert,
    multiply,
    normal_form_of_simples,
)

# Pieces of a lazily multiplied conjugator: (simple, +1) or (simple, -1) for its inverse.
Piece = tuple[Perm, int]


def product_of_pieces(p, pieces: Iterable[Piece]) -> CanonicalForm:
    """Normal form of a product of simple elements and inverses of simple elements."""
    result = p.identity_element()
    run: list[Perm] = []
    for s, sign in pieces:
        if sign > 0:
            run.append(s)
            continue
        if run:
            result = multiply(result, normal_form_of_simples(p, 0, run))
            run = []
        result = multiply(result, invert(p.simple_element(s)))
    if run:
        result = multiply(result, normal_form_of_simples(p, 0, run))
    return result


# -- cycling and decycling ----------------------------------------------------

def _cycle(y: CanonicalForm) -> tuple[CanonicalForm, Perm]:
    p = y.presentation
    if not y.factors:
        return y, p.identity
    a = p.tau(y.factors[0], -y.k)
    out = [a]
    for f in reversed(y.factors[1:]):
        out = _left_multiply(p, f, out)
    return _finish(p, y.k, out), a


def _decycle(y: CanonicalForm) -> tuple[CanonicalForm, Perm]:
    """``d(y)`` and the simple ``A_r`` (the conjugator is its inverse)."""
    p = y.presentation
    if not y.factors:
        return y, p.identity
    last = y.factors[-1]
    out = _left_multiply(p, p.tau(last, y.k), list(y.factors[:-1]))
    return _finish(p, y.k, out), last


def cycling(x: CanonicalForm) -> tuple[CanonicalForm, CanonicalForm]:
    """``(c(x), τ^{-k}(A_1))``; the identity conjugator when ``len(x) = 0``."""
    z, a = _cycle(x)
    return z, x.presentation.simple_element(a)


def decycling(x: CanonicalForm) -> tuple[CanonicalForm, CanonicalForm]:
    """``(d(x), A_r^{-1})``; the identity conjugator when ``len(x) = 0``."""
    z, a = _decycle(x)
    return z, invert(x.presentation.simple_element(a))


# -- summit representatives -------------------------------------------------

def _run_until_stalled(y, step, better, patience, pieces, sign):
    """
    Iterate ``step`` while it keeps improving. Stops when an element repeats
    (the orbit closed) or after ``patience`` steps without improvement.
    """
    seen = {y}
    idle = 0
    improved = False
    while y.factors:
        z, s = step(y)
        pieces.append((s, sign))
        if better(z, y):
            improved = True
            seen = {z}
            idle = 0
        else:
            idle += 1
            if z in seen or idle >= patience:
                return z, improved
            seen.add(z)
        y = z
    return y, improved


def _sss_pieces(x: CanonicalForm) -> tuple[CanonicalForm, list[Piece]]:
    p = x.presentation
    # an infimum (supremum) below its summit value improves within ‖δ‖ cyclings (decyclings)
    patience = p.atom_length(p.delta) + 1
    pieces: list[Piece] = []
    y = x
    while True:
        y, up = _run_until_stalled(y, _cycle, lambda z, w: z.inf > w.inf, patience, pieces, 1)
        y, down = _run_until_stalled(y, _decycle, lambda z, w: z.sup < w.sup, patience, pieces, -1)
        if not up and not down:
            return y, pieces


def sss_representative(x: CanonicalForm) -> tuple[CanonicalForm, CanonicalForm]:
    """An element ``x̃`` of the super summit set of ``x`` and ``c`` with ``x^c = x̃``."""
    y, pieces = _sss_pieces(x)
    return y, product_of_pieces(x.presentation, pieces)


def _uss_pieces(x: CanonicalForm) -> tuple[CanonicalForm, list[Piece]]:
    y, pieces = _sss_pieces(x)
    # iterated cycling inside S_x ends on a circuit; the first repeat lies on it
    position = {y: 0}
    trail: list[Perm] = []
    while True:
        z, a = _cycle(y)
        if z in position:
            cut = position[z]
            pieces.extend((s, 1) for s in trail[:cut])
            return z, pieces
        trail.append(a)
        position[z] = len(trail)
        y = z


def uss_representative(x: CanonicalForm) -> tuple[CanonicalForm, CanonicalForm]:
    """An element ``x̂`` of the ultra summit set of ``x`` and ``c`` with ``x^c = x̂``."""
    y, pieces = _uss_pieces(x)
    return y, product_of_pieces(x.presentation, pieces)


# -- trajectories -------------------------------------------------------------

@dataclass
class Trajectory:
    """
    A cycling circuit ``y, c(y), …, c^{N-1}(y)`` inside an ultra summit set.

    ``steps[i]`` is the simple element conjugating ``elements[i]`` to
    ``elements[i+1 mod N]``.
    """

    base: CanonicalForm
    elements: list[CanonicalForm]
    steps: list[Perm]
    _offset: dict = field(default_factory=dict, repr=False)
    _inverses: dict = field(default_factory=dict, repr=False)

    @classmethod
    def of(cls, y: CanonicalForm) -> "Trajectory":
        """The circuit through ``y``; ``y`` must lie in its ultra summit set."""
        elements = [y]
        steps = []
        offset = {y: 0}
        z = y
        while True:
            z, a = _cycle(z)
            steps.append(a)
            if z == y:
                break
            if z in offset:
                raise ContractError("cycling does not return: element is not in its ultra summit set")
            offset[z] = len(elements)
            elements.append(z)
        t = cls(y, elements, steps)
        t._offset = offset
        return t

    @property
    def period(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self) -> Iterator[CanonicalForm]:
        return iter(self.elements)

    def __contains__(self, z) -> bool:
        return z in self._offset

    def offset(self, z: CanonicalForm) -> int:
        return self._offset[z]

    def key(self) -> CanonicalForm:
        """Deduplication key: the least element of the circuit."""
        return min(self.elements, key=CanonicalForm.sort_key)

    def conjugator_to(self, i: int) -> CanonicalForm:
        """``s`` with ``base^s = elements[i]``."""
        p = self.base.presentation
        return normal_form_of_simples(p, 0, self.steps[:i % self.period])

    def conjugator(self, z: CanonicalForm) -> CanonicalForm:
        return self.conjugator_to(self._offset[z])

    @property
    def conjugators(self) -> dict[CanonicalForm, CanonicalForm]:
        """The map ``z ↦ s(z)`` with ``base^{s(z)} = z``."""
        p = self.base.presentation
        out = {}
        acc: list[Perm] = []
        for z, s in zip(self.elements, self.steps):
            out[z] = normal_form_of_simples(p, 0, acc)
            acc.append(s)
        return out

    def inverse_of(self, i: int) -> CanonicalForm:
        inv = self._inverses.get(i)
        if inv is None:
            inv = invert(self.elements[i])
            self._inverses[i] = inv
        return inv


class TransportContext:
    """
    A point ``y`` of an ultra summit set together with its circuit.

    Transport and pullback at ``c^i(y)`` read the circuit from here.
    """

    def __init__(self, y: CanonicalForm, trajectory: Optional[Trajectory] = None, offset: int = 0):
        if not y.factors:
            raise ContractError("transport needs an element of positive canonical length")
        if trajectory is None:
            trajectory = Trajectory.of(y)
            offset = 0
        self.trajectory = trajectory
        self.offset = offset
        self.y = y
        self.p = y.presentation

    @property
    def x(self) -> CanonicalForm:
        return self.y

    @property
    def period(self) -> int:
        return self.trajectory.period

    def element(self, i: int) -> CanonicalForm:
        """``c^i(y)``."""
        t = self.trajectory
        return t.elements[(self.offset + i) % t.period]

    def inverse(self, i: int) -> CanonicalForm:
        t = self.trajectory
        return t.inverse_of((self.offset + i) % t.period)


# -- transport ------------------------------------------------------------------

def transport_simple(y: CanonicalForm, u: Perm) -> Perm:
    """``φ_y(u)`` for simple ``u`` with ``y, y^u`` in the super summit set."""
    p = y.presentation
    if u == p.identity or u == p.delta:
        return u
    z = conjugate_by_simple(y, u)
    if z.k != y.k or len(z.factors) != len(y.factors):
        raise ContractError("transport precondition violated: conjugate leaves the super summit set")
    a = p.tau(y.factors[0], -y.k)
    b = p.tau(z.factors[0], -y.k)
    return p.left_quotient(a, p.mul(u, b))


def transport(ctx: TransportContext | CanonicalForm, u: CanonicalForm | Perm):
    """
    ``φ_y(u)`` for positive ``u`` with ``y^u`` in the super summit set of ``y``.

    A simple ``u`` (a ``Perm``) gives a ``Perm``; a :class:`CanonicalForm`
    gives a :class:`CanonicalForm`.
    """
    y = ctx.y if isinstance(ctx, TransportContext) else ctx
    if not isinstance(u, CanonicalForm):
        return transport_simple(y, u)
    p = y.presentation
    if u.k < 0:
        raise ContractError("transport needs a positive element")
    if not y.factors:
        return u
    z = y ^ u
    if z.k != y.k or len(z.factors) != len(y.factors):
        raise ContractError("transport precondition violated: conjugate leaves the super summit set")
    a = p.simple_element(p.tau(y.factors[0], -y.k))
    b = p.simple_element(p.tau(z.factors[0], -y.k))
    return invert(a) * u * b


@dataclass(frozen=True)
class TransportOrbit:
    """``u^{(iN)}`` for ``i < i2``; ``F = values[i1:i2]`` is the stable part."""

    i1: int
    i2: int
    values: tuple[Perm, ...]

    @property
    def length(self) -> int:
        return self.i2 - self.i1

    @property
    def F(self) -> tuple[Perm, ...]:
        return self.values[self.i1:self.i2]


def transport_orbit(ctx: TransportContext, u: Perm) -> TransportOrbit:
    """Iterate transport once around the circuit until ``u^{(iN)}`` repeats."""
    N = ctx.period
    seen = {u: 0}
    values = [u]
    cur = u
    i = 0
    while True:
        for j in range(N):
            cur = transport_simple(ctx.element(j), cur)
        i += 1
        if cur in seen:
            return TransportOrbit(seen[cur], i, tuple(values))
        seen[cur] = i
        values.append(cur)


# -- minimal conjugators ------------------------------------------------------

def min_ss_conjugator(y: CanonicalForm, s: Perm, inverse: Optional[CanonicalForm] = None) -> Perm:
    """
    ``ρ_s``: the least simple ``c ≽ s`` with ``y^c`` in the super summit set.

    ``y`` must be a super summit element. With ``y = δ^k w`` and
    ``y^{-1} = δ^{k'} w'`` (``w, w'`` positive), ``y^c`` keeps both bounds iff
    ``τ^k(c) ≼ w·c`` and ``τ^{k'}(c) ≼ w'·c``. Each condition fails exactly when
    ``w\\τ^k(c) ⋠ c``, and every solution above ``c`` lies above that
    complement, so joining it in is safe. The loop climbs to the least fixpoint.
    """
    p = y.presentation
    if inverse is None:
        inverse = invert(y)
    k, w = y.k, y.factors
    ki, wi = inverse.k, inverse.factors
    join, tau = p.join, p.tau
    c = s
    while True:
        d = join(c, _quotient_join_factors(p, 0, w, tau(c, k)))
        d = join(d, _quotient_join_factors(p, 0, wi, tau(d, ki)))
        if d == c:
            return c
        c = d


def pullback(y: CanonicalForm, s: Perm, inverse: Optional[CanonicalForm] = None) -> Perm:
    """
    ``π_y(s)``: the least simple ``u`` with ``y^u`` super summit and ``s ≼ φ_y(u)``.

    With ``y = δ^k B_1⋯B_r``: ``b_0 = τ^{-1}(X\\s)`` for ``X = τ^{-k}(∂B_1)``,
    ``b_1 = τ^k(s)``, ``b_i = B_i\\b_{i-1}``, and the answer is ``ρ`` of
    ``b_0 ∨ b_r``.
    """
    p = y.presentation
    if not y.factors:
        raise ContractError("pullback needs an element of positive canonical length")
    k = y.k
    x_ = p.tau(p.complement(y.factors[0]), -k)
    b0 = p.tau(p.quotient_join(x_, s), -1)
    b = p.tau(s, k)
    for f in y.factors[1:]:
        b = p.quotient_join(f, b)
    return min_ss_conjugator(y, p.join(b0, b), inverse)


def stable_pullback(ctx: TransportContext, s: Perm) -> Perm:
    """
    ``p_y(s)``: iterate pullbacks once around the circuit, backwards, until
    the values at ``y`` cycle, and return one that lies on the cycle at an
    index that is a multiple of the cycle length.
    """
    N = ctx.period
    seen = {s: 0}
    seq = [s]
    cur = s
    i = 0
    while True:
        for alpha in range(N - 1, -1, -1):
            cur = pullback(ctx.element(alpha), cur, ctx.inverse(alpha))
        i += 1
        if cur in seen:
            i1 = seen[cur]
            break
        seen[cur] = i
        seq.append(cur)
    length = i - i1
    j = max(1, -(-i1 // length))
    return seq[i1 + (j * length - i1) % length]


def min_uss_conjugator(ctx: TransportContext, s: Perm, discard: bool = False) -> Optional[Perm]:
    """
    ``c_s``: the least simple ``c ≽ s`` with ``y^c`` in the ultra summit set.

    With ``discard`` set, returns ``None`` as soon as ``c_s`` is known not to
    be a minimal element of ``D_y`` (it then plays no role in ``C_y``).
    """
    p = ctx.p
    y = ctx.y
    if s == p.identity:
        return s
    ld = p.left_divides
    rho = min_ss_conjugator(y, s, ctx.inverse(0))
    orbit = transport_orbit(ctx, rho)
    F = orbit.F
    for v in F:
        if ld(s, v):
            return v
    if discard:
        if F != (p.identity,):
            return None
        # the transport of ρ_s hits 1, so a minimal c_s must divide τ^{-k}(A_1)
        if not ld(s, p.tau(y.factors[0], -y.k)):
            return None
    q = stable_pullback(ctx, s)
    for v in transport_orbit(ctx, q).F:
        if ld(s, v):
            return v
    raise ContractError("stable pullback produced no transport above s")


def minimal_conjugator_set(ctx: TransportContext) -> list[Perm]:
    """``C_y``: the ≼-minimal simple ``c ≠ 1`` with ``y^c`` in the ultra summit set."""
    p = ctx.p
    found: list[Perm] = []
    for a in p.atoms:
        c = min_uss_conjugator(ctx, a, discard=True)
        if c is not None and c not in found:
            found.append(c)
    ld = p.left_divides
    return [c for c in found if not any(d != c and ld(d, c) for d in found)]


# -- ultra summit sets ----------------------------------------------------------

class UltraSummitSet:
    """
    The ultra summit set of ``x`` as a union of cycling circuits.

    Conjugators are kept as a tree: each circuit records its parent circuit
    and the simple element taking the parent's base to its own base, and is
    multiplied out only on request.
    """

    def __init__(self, x: CanonicalForm, root: Trajectory, root_pieces: list[Piece]):
        self.x = x
        self.presentation = x.presentation
        self.trajectories: list[Trajectory] = []
        self.index: dict[CanonicalForm, tuple[int, int]] = {}
        self._parent: list[Optional[tuple[int, Perm]]] = []
        self._root_pieces = root_pieces
        self._base_conj: dict[int, CanonicalForm] = {}
        self._add(root, None)

    def _add(self, traj: Trajectory, parent: Optional[tuple[int, Perm]]) -> int:
        tid = len(self.trajectories)
        self.trajectories.append(traj)
        self._parent.append(parent)
        for i, z in enumerate(traj.elements):
            self.index[z] = (tid, i)
        return tid

    def __contains__(self, z) -> bool:
        return z in self.index

    def __len__(self):
        return len(self.index)

    def __iter__(self) -> Iterator[CanonicalForm]:
        return iter(self.index)

    @property
    def elements(self) -> set[CanonicalForm]:
        return set(self.index)

    @property
    def n_trajectories(self) -> int:
        return len(self.trajectories)

    @property
    def inf(self) -> int:
        return self.trajectories[0].base.inf

    @property
    def sup(self) -> int:
        return self.trajectories[0].base.sup

    def base_conjugator(self, tid: int) -> CanonicalForm:
        """``c`` with ``x^c`` equal to the base of trajectory ``tid``."""
        chain: list[int] = []
        t = tid
        while t not in self._base_conj:
            chain.append(t)
            parent = self._parent[t]
            if parent is None:
                self._base_conj[t] = product_of_pieces(self.presentation, self._root_pieces)
                chain.pop()
                break
            t = parent[0]
        for t in reversed(chain):
            ptid, s = self._parent[t]
            self._base_conj[t] = multiply(self._base_conj[ptid], self.presentation.simple_element(s))
        return self._base_conj[tid]

    def conjugator(self, z: CanonicalForm) -> CanonicalForm:
        """``c`` with ``x^c = z`` for ``z`` in the set."""
        tid, i = self.index[z]
        return multiply(self.base_conjugator(tid), self.trajectories[tid].conjugator_to(i))


def ultra_summit_set(x: CanonicalForm, target: Optional[CanonicalForm] = None) -> UltraSummitSet:
    """
    The ultra summit set of ``x``.

    Starting from one circuit, each circuit's base ``y`` contributes the
    circuits through ``y^c`` for ``c`` in ``C_y``; one base per circuit is
    enough. With ``target`` given, stops as soon as it has been reached.
    """
    y, pieces = _uss_pieces(x)
    root = Trajectory.of(y)
    uss = UltraSummitSet(x, root, pieces)
    if not y.factors or (target is not None and target in uss):
        return uss
    queue = deque([0])
    while queue:
        tid = queue.popleft()
        traj = uss.trajectories[tid]
        ctx = TransportContext(traj.base, traj, 0)
        for c in minimal_conjugator_set(ctx):
            z = conjugate_by_simple(traj.base, c)
            if z in uss.index:
                continue
            new = uss._add(Trajectory.of(z), (tid, c))
            queue.append(new)
            if target is not None and target in uss:
                return uss
    return uss
