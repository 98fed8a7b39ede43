"""Maps G -> G: endomorphism enumeration and the special map families.

A :class:`GMap` is any total map on the carrier, stored as an image table.
Endomorphisms are built by extending generator images along products;
enumeration tries every generator-image tuple in lexicographic order, so
the output order is deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadParameters,
    NotAHomomorphism,
    NotEndomorphism,
    NotInvolution,
    TooLarge,
)
from .groups import FiniteGroup, Permutation

ENUMERATION_BUDGET = 10**6


@dataclass(frozen=True)
class GMap:
    """A total map G -> G given by its image table."""

    group: FiniteGroup
    images: tuple[int, ...]

    def __post_init__(self):
        n = self.group.order
        if len(self.images) != n or any(not (0 <= x < n) for x in self.images):
            raise BadParameters("map images must cover the carrier")

    def __call__(self, g: int) -> int:
        return self.images[g]

    def compose(self, other: "GMap") -> "GMap":
        """self after other."""
        if other.group is not self.group:
            raise BadParameters("maps live on different groups")
        return GMap(self.group, tuple(self.images[x] for x in other.images))

    def power(self, k: int) -> "GMap":
        """k-fold self-composition (k >= 0)."""
        if k < 0:
            raise BadParameters("composition power needs k >= 0")
        out = identity_map(self.group)
        for _ in range(k):
            out = self.compose(out)
        return out

    def is_endomorphism(self) -> bool:
        G = self.group
        f = np.array(self.images, dtype=np.int32)
        return bool(np.array_equal(f[G.table], G.table[f[:, None], f[None, :]]))

    def image_set(self) -> frozenset[int]:
        return frozenset(self.images)

    def to_json(self) -> dict:
        return {"group": self.group.name, "images": list(self.images)}


def identity_map(G: FiniteGroup) -> GMap:
    return GMap(G, tuple(range(G.order)))


def zero_map(G: FiniteGroup) -> GMap:
    """The constant-identity endomorphism."""
    return GMap(G, (0,) * G.order)


def conjugation_map(G: FiniteGroup, g: int) -> GMap:
    """C(g): h -> g h g^-1, always an automorphism."""
    return GMap(G, tuple(G.conj(g, h) for h in range(G.order)))


def permutation_as_map(G: FiniteGroup, p: Permutation) -> GMap:
    return GMap(G, p.images)


def extend_from_generators(
    G: FiniteGroup, gens: Sequence[int], images: Sequence[int]
) -> GMap:
    """The unique endomorphism sending gens[i] to images[i].

    Extension walks the Cayley graph: every edge x -> x*gen is checked, so a
    successful extension is guaranteed to be a homomorphism.  Raises
    :class:`NotAHomomorphism` when two factorizations of the same element
    disagree, and :class:`BadParameters` when the gens do not generate.
    """
    if len(gens) != len(images):
        raise BadParameters("gens and images must have the same length")
    n = G.order
    f = [-1] * n
    f[0] = 0
    for g, img in zip(gens, images):
        if f[g] not in (-1, img):
            raise NotAHomomorphism(f"conflicting images for generator {g}")
        f[g] = img
    frontier = [x for x in set([0, *gens]) if f[x] != -1]
    seen = set(frontier)
    while frontier:
        nxt = []
        for x in frontier:
            for g, img in zip(gens, images):
                y = int(G.table[x, g])
                fy = int(G.table[f[x], img])
                if f[y] == -1:
                    f[y] = fy
                elif f[y] != fy:
                    raise NotAHomomorphism(
                        f"element {G.names[y]} has two factorizations with "
                        f"different images ({G.names[f[y]]} vs {G.names[fy]})"
                    )
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    if -1 in f:
        raise BadParameters("the given elements do not generate the group")
    return GMap(G, tuple(f))


def enumerate_endomorphisms(
    G: FiniteGroup, budget: int = ENUMERATION_BUDGET
) -> list[GMap]:
    """All endomorphisms of G, ordered lexicographically by generator images."""
    gens = G.generators
    if not gens:  # trivial group
        return [zero_map(G)]
    if G.order ** len(gens) > budget:
        raise TooLarge(
            f"generator-image search size {G.order}^{len(gens)} exceeds budget {budget}"
        )
    out = []
    for images in itertools.product(range(G.order), repeat=len(gens)):
        try:
            out.append(extend_from_generators(G, gens, images))
        except NotAHomomorphism:
            continue
    return out


def commutator_central_maps(G: FiniteGroup) -> list[GMap]:
    return [f for f in enumerate_endomorphisms(G) if is_commutator_central(G, f)]


def abelian_maps(G: FiniteGroup) -> list[GMap]:
    return [f for f in enumerate_endomorphisms(G) if is_abelian_map(G, f)]


def _require_endomorphism(G: FiniteGroup, f: GMap):
    if f.group is not G:
        raise BadParameters("map belongs to a different group")
    if not f.is_endomorphism():
        raise NotEndomorphism("the map is not an endomorphism")


def is_abelian_map(G: FiniteGroup, f: GMap) -> bool:
    """True when f is an endomorphism with abelian image."""
    _require_endomorphism(G, f)
    img = sorted(f.image_set())
    return all(
        G.table[x, y] == G.table[y, x] for x in img for y in img
    )


def is_commutator_central(G: FiniteGroup, f: GMap) -> bool:
    """True when f sends the commutator subgroup into the center."""
    _require_endomorphism(G, f)
    return all(f.images[c] in G.center for c in G.commutator_subgroup)


def images_commute_mod_center(G: FiniteGroup, f: GMap, g: GMap) -> bool:
    """True when every commutator of image elements lies in the center."""
    _require_endomorphism(G, f)
    _require_endomorphism(G, g)
    img1 = sorted(f.image_set())
    img2 = sorted(g.image_set())
    return all(
        G.commutator(x, y) in G.center for x in img1 for y in img2
    )


def images_commute_witness(
    G: FiniteGroup, f: GMap, g: GMap
) -> tuple[int, int] | None:
    """First image pair whose commutator escapes the center, if any."""
    for x in sorted(f.image_set()):
        for y in sorted(g.image_set()):
            if G.commutator(x, y) not in G.center:
                return (x, y)
    return None


# -- special map families ------------------------------------------------------


def sign_map(G: FiniteGroup, tau: int) -> GMap:
    """On a symmetric group: even permutations -> 1, odd -> tau (tau^2 = 1)."""
    if G.meta.get("family") != "symmetric":
        raise BadParameters("sign_map needs a symmetric catalog group")
    if G.mul(tau, tau) != 0:
        raise NotInvolution(f"{G.names[tau]} does not square to the identity")
    perms = G.meta["perms"]
    images = tuple(0 if _parity(p) == 0 else tau for p in perms)
    f = GMap(G, images)
    if not f.is_endomorphism():  # cannot happen: sgn is a homomorphism
        raise NotEndomorphism("sign map failed the endomorphism check")
    return f


def _parity(p: tuple[int, ...]) -> int:
    transpositions = sum(len(c) - 1 for c in Permutation(p).cycles())
    return transpositions % 2


def metacyclic_map(G: FiniteGroup, n: int) -> GMap:
    """On M_{p,q}: s -> 1, t -> t^n for 0 <= n < q."""
    if G.meta.get("family") != "metacyclic":
        raise BadParameters("metacyclic_map needs a metacyclic catalog group")
    q = G.meta["q"]
    if not 0 <= n < q:
        raise BadParameters(f"exponent must satisfy 0 <= n < {q}, got {n}")
    images = tuple((j * n % q) for i in range(G.meta["p"]) for j in range(q))
    return GMap(G, images)


def det_row_map(G: FiniteGroup, t: int) -> GMap:
    """On GL(n,q): A -> the identity matrix with row t scaled by det(A)."""
    if G.meta.get("family") != "gl":
        raise BadParameters("det_row_map needs a gl catalog group")
    n, q = G.meta["n"], G.meta["q"]
    if not 1 <= t <= n:
        raise BadParameters(f"row index must satisfy 1 <= t <= {n}, got {t}")
    mats = G.meta["matrices"]
    index = {m: i for i, m in enumerate(mats)}
    images = []
    for m in mats:
        d = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) % q
        elem = tuple(
            tuple((d if (i == j == t - 1) else (1 if i == j else 0)) for j in range(n))
            for i in range(n)
        )
        images.append(index[elem])
    return GMap(G, tuple(images))


def matrix_of(G: FiniteGroup, g: int) -> tuple[tuple[int, ...], ...]:
    if G.meta.get("family") != "gl":
        raise BadParameters("matrix_of needs a gl catalog group")
    return G.meta["matrices"][g]


def named_maps(G: FiniteGroup, enumerated: bool = False) -> dict[str, GMap]:
    """Name -> map environment used by the word mini-language.

    Always contains ``id`` and ``zero``; the quaternion catalog adds its four
    generator-table endomorphisms ``f1``..``f4``; with ``enumerated`` every
    endomorphism is also exposed as ``e0``, ``e1``, ... in enumeration order.
    """
    env = {"id": identity_map(G), "zero": zero_map(G)}
    if G.meta.get("family") == "quaternion8":
        a, b = G.index_of("a"), G.index_of("b")
        tables = {
            "f1": ("a3b", "a3"),
            "f2": ("a2b", "a3"),
            "f3": ("b", "ab"),
            "f4": ("a3", "ab"),
        }
        for label, (ia, ib) in tables.items():
            env[label] = extend_from_generators(
                G, [a, b], [G.index_of(ia), G.index_of(ib)]
            )
    if enumerated:
        for i, f in enumerate(enumerate_endomorphisms(G)):
            env[f"e{i}"] = f
    return env


def map_name_table(maps: Iterable[tuple[str, GMap]]) -> dict[GMap, str]:
    """Reverse lookup (first name wins) for formatting words canonically."""
    table: dict[GMap, str] = {}
    for name, f in maps:
        table.setdefault(f, name)
    return table
