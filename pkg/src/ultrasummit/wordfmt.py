"""
Text format for braid words.

::

    # a comment
    artin 4
    d^-1 1 -3 2

The first line names the presentation and braid index (``artin <n>`` or
``bkl <n>``). The rest is whitespace separated tokens: an optional ``d^<k>``,
then atoms. Artin atoms are nonzero integers (``-2`` is the inverse of σ_2);
BKL atoms are ``t.s`` with ``t > s`` (``-3.1`` is the inverse of a_{3,1}).
A ``/`` can stand in for a line break, so ``"artin 3 / 1 2 1"`` is a
complete one-line input.
"""

from __future__ import annotations

from functools import lru_cache

from .artin import ArtinPresentation
from .bkl import BKLPresentation
from .garside import CanonicalForm, GarsidePresentation, ParseError, normalize

BACKENDS = {"artin": ArtinPresentation, "bkl": BKLPresentation}


@lru_cache(maxsize=None)
def presentation(kind: str, n: int) -> GarsidePresentation:
    try:
        cls = BACKENDS[kind.lower()]
    except KeyError:
        raise ParseError(f"unknown presentation {kind!r}; expected one of {sorted(BACKENDS)}") from None
    try:
        return cls(int(n))
    except ValueError as e:
        raise ParseError(str(e)) from None


def _lines(text: str) -> list[str]:
    out = []
    for line in text.replace("/", "\n").splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def parse_word(text: str) -> tuple[GarsidePresentation, list[str]]:
    """Split an input into its presentation and raw token strings."""
    lines = _lines(text)
    if not lines:
        raise ParseError("empty input: expected a header such as 'artin 3'")
    head = lines[0].split()
    if len(head) < 2:
        raise ParseError(f"bad header {lines[0]!r}: expected '<artin|bkl> <n>'")
    try:
        n = int(head[1])
    except ValueError:
        raise ParseError(f"bad braid index {head[1]!r}") from None
    p = presentation(head[0], n)
    tokens = head[2:]
    for line in lines[1:]:
        tokens.extend(line.split())
    for t in tokens:
        # validate eagerly so errors name the offending token
        if t.lower().startswith("d"):
            continue
        p.parse_token(t)
    return p, tokens


def parse(text: str) -> CanonicalForm:
    """The normal form of the braid written in ``text``."""
    p, tokens = parse_word(text)
    return normalize(tokens, p)


def format_tokens(x: CanonicalForm) -> str:
    """Token part of the canonical spelling: ``d^k`` (if k ≠ 0) then the factors' atoms."""
    p = x.presentation
    parts = [f"d^{x.k}"] if x.k else []
    for f in x.factors:
        parts.extend(p.format_token(t) for t in p.word_of(f))
    return " ".join(parts)


def format_element(x: CanonicalForm) -> str:
    """Canonical one-line spelling, e.g. ``"artin 3 / d^1 2"``; :func:`parse` inverts it."""
    p = x.presentation
    body = format_tokens(x)
    return f"{p.kind} {p.n} / {body}" if body else f"{p.kind} {p.n} /"


def element_json(x: CanonicalForm) -> dict:
    p = x.presentation
    return {
        "presentation": p.kind,
        "n": p.n,
        "inf": x.inf,
        "sup": x.sup,
        "len": x.length,
        "factors": [[p.format_token(t) for t in p.word_of(f)] for f in x.factors],
        "word": format_element(x),
    }
