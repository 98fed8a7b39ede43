"""Formal words over End(G) and their action on the group.

A word n1*f1 + ... + nt*ft acts by g -> f1(g^n1) * ... * ft(g^nt), an ordered
product in G.  The empty word is 0 (constant identity); the words 1 and -1
are single terms over the identity endomorphism.

Composition with a map psi is written psi_alpha below: psi_alpha(g) =
psi(alpha(g)).  Because psi is an endomorphism, psi_alpha equals the word
obtained by composing psi into every term, which is what `compose_word`
returns.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import BadParameters, NotAbelian, SpecSyntaxError
from .groups import FiniteGroup
from .maps import GMap, identity_map, is_abelian_map


@dataclass(frozen=True)
class EndoWord:
    """Ordered terms (endomorphism, nonzero integer coefficient)."""

    terms: tuple[tuple[GMap, int], ...]

    def __post_init__(self):
        for f, n in self.terms:
            if n == 0:
                raise BadParameters("word coefficients must be nonzero")
            if self.terms and f.group is not self.terms[0][0].group:
                raise BadParameters("word terms must share one group")

    def __add__(self, other: "EndoWord") -> "EndoWord":
        return EndoWord(self.terms + other.terms)

    def __len__(self) -> int:
        return len(self.terms)


def word_zero() -> EndoWord:
    return EndoWord(())


def word_int(G: FiniteGroup, n: int) -> EndoWord:
    """The word n * id (0 gives the empty word)."""
    if n == 0:
        return word_zero()
    return EndoWord(((identity_map(G), n),))


def word_one(G: FiniteGroup) -> EndoWord:
    return word_int(G, 1)


def word_minus_one(G: FiniteGroup) -> EndoWord:
    return word_int(G, -1)


def word_single(f: GMap, n: int = 1) -> EndoWord:
    return EndoWord(((f, n),))


def reverse_word(alpha: EndoWord) -> EndoWord:
    """alpha with its terms reversed (written alpha* elsewhere)."""
    return EndoWord(tuple(reversed(alpha.terms)))


def negate_word(alpha: EndoWord) -> EndoWord:
    """The free-group inverse: terms reversed and coefficients negated.

    Evaluates to alpha(g)^-1 pointwise for every g.
    """
    return EndoWord(tuple((f, -n) for f, n in reversed(alpha.terms)))


def compose_word(psi: GMap, alpha: EndoWord) -> EndoWord:
    """Replace each term (f, n) by (psi . f, n); evaluates to psi(alpha(g))."""
    return EndoWord(tuple((psi.compose(f), n) for f, n in alpha.terms))


def _power_column(G: FiniteGroup, n: int) -> np.ndarray:
    """g -> g^n for every g at once."""
    out = np.zeros(G.order, dtype=np.int32)
    if n == 0:
        return out
    base = np.arange(G.order, dtype=np.int32)
    if n < 0:
        base = G.inverses[base]
        n = -n
    # n stays small (word coefficients, binomials); repeated product is fine
    for _ in range(n):
        out = G.table[out, base]
    return out


def eval_word_all(G: FiniteGroup, alpha: EndoWord) -> np.ndarray:
    """alpha(g) for every g, as one array pass per term."""
    for f, _ in alpha.terms:
        if f.group is not G:
            raise BadParameters("word terms live on a different group")
    acc = np.zeros(G.order, dtype=np.int32)
    for f, n in alpha.terms:
        fimg = np.asarray(f.images, dtype=np.int32)
        acc = G.table[acc, fimg[_power_column(G, n)]]
    return acc


def eval_word(G: FiniteGroup, alpha: EndoWord, g: int) -> int:
    acc = 0
    for f, n in alpha.terms:
        acc = G.mul(acc, f(G.power(g, n)))
    return acc


def psi_alpha_map(G: FiniteGroup, psi: GMap, alpha: EndoWord) -> GMap:
    """g -> psi(alpha(g)) as a full image table."""
    vals = eval_word_all(G, alpha)
    pimg = np.asarray(psi.images, dtype=np.int32)
    return GMap(G, tuple(int(x) for x in pimg[vals]))


def binomial_word(psi: GMap, n: int) -> EndoWord:
    """The word sum_{i=0}^{n-1} (-1)^i C(n, i+1) psi^i for an abelian psi.

    With these coefficients psi composed with the word equals 1 - (1-psi)^n
    pointwise, the convention fixed by the metacyclic closed form t^(1-j^n).
    """
    G = psi.group
    if not is_abelian_map(G, psi):
        raise NotAbelian("binomial words need an abelian map")
    if n < 0:
        raise BadParameters("binomial words need n >= 0")
    terms = []
    power = identity_map(G)
    for i in range(n):
        coeff = (-1) ** i * math.comb(n, i + 1)
        terms.append((power, coeff))
        power = psi.compose(power)
    return EndoWord(tuple(terms))


def same_circle(G: FiniteGroup, psi: GMap, alpha: EndoWord, beta: EndoWord) -> bool:
    """True when the two words induce the same circle operation.

    Criterion: psi_alpha(g)^-1 * psi_beta(g) is central for every g, which is
    equivalent to entrywise equality of the two circle tables.
    """
    a = np.asarray(psi_alpha_map(G, psi, alpha).images, dtype=np.int32)
    b = np.asarray(psi_alpha_map(G, psi, beta).images, dtype=np.int32)
    diff = G.table[G.inverses[a], b]
    return all(int(d) in G.center for d in diff)


# -- the word-spec mini-language ------------------------------------------------

_TERM_RE = re.compile(r"(?:(\d+)\s*\*\s*)?([A-Za-z_]\w*)$|(\d+)$")


def parse_word(spec: str, G: FiniteGroup, env: Mapping[str, GMap]) -> EndoWord:
    """Parse ``term (('+'|'-') term)*`` where term is ``[int '*'] name | int``.

    Bare integers mean multiples of the identity endomorphism, so "0", "1"
    and "-1" denote the three distinguished words.
    """
    s = spec.strip()
    if not s:
        raise SpecSyntaxError("empty word spec")
    tokens = re.findall(r"[+-]|[^+-]+", s)
    terms: list[tuple[GMap, int]] = []
    sign = 1
    expect_term = True
    for tok in tokens:
        tok = tok.strip()
        if tok in ("+", "-"):
            if expect_term and tok == "-":
                sign = -sign  # unary minus (possibly leading)
                continue
            if expect_term:
                raise SpecSyntaxError(f"unexpected {tok!r} in word spec {spec!r}")
            sign = 1 if tok == "+" else -1
            expect_term = True
            continue
        if not expect_term:
            raise SpecSyntaxError(f"missing operator before {tok!r} in {spec!r}")
        m = _TERM_RE.match(tok)
        if not m:
            raise SpecSyntaxError(f"bad term {tok!r} in word spec {spec!r}")
        if m.group(3) is not None:
            coeff = sign * int(m.group(3))
            f = identity_map(G)
        else:
            coeff = sign * (int(m.group(1)) if m.group(1) else 1)
            name = m.group(2)
            if name not in env:
                raise SpecSyntaxError(f"unknown map name {name!r} in word spec {spec!r}")
            f = env[name]
        if coeff != 0:
            terms.append((f, coeff))
        expect_term = False
        sign = 1
    if expect_term:
        raise SpecSyntaxError(f"word spec {spec!r} ends with an operator")
    return EndoWord(tuple(terms))


def format_word(alpha: EndoWord, names: Mapping[GMap, str]) -> str:
    """Canonical spec string for a word, given a map -> name table."""
    if not alpha.terms:
        return "0"
    parts = []
    for i, (f, n) in enumerate(alpha.terms):
        if f not in names:
            raise BadParameters("word uses a map with no assigned name")
        name = names[f]
        mag = abs(n)
        body = name if mag == 1 else f"{mag}*{name}"
        if name == "id" and mag != 1:
            body = str(mag)
        if i == 0:
            parts.append(body if n > 0 else "-" + body)
        else:
            parts.append(("+" if n > 0 else "-") + body)
    return "".join(parts)


def random_word(
    rng, G: FiniteGroup, pool: Sequence[GMap], max_terms: int = 3, max_coeff: int = 3
) -> EndoWord:
    """A seeded random word over the given endomorphism pool."""
    k = rng.randint(0, max_terms)
    terms = []
    for _ in range(k):
        f = pool[rng.randrange(len(pool))]
        coeff = rng.choice([c for c in range(-max_coeff, max_coeff + 1) if c])
        terms.append((f, coeff))
    return EndoWord(tuple(terms))
