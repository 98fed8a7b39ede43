"""Finite groups as validated multiplication tables.

Every group lives on the carrier {0, ..., n-1} with the identity pinned at
index 0.  A :class:`FiniteGroup` checks the full group axioms on
construction (identity, two-sided inverses, exhaustive associativity) and
caches the center and the commutator subgroup.  Instances are immutable and
safe to share.

The catalog constructors build the concrete groups used throughout:
cyclic, dihedral, the quaternion group, symmetric groups, the nonabelian
metacyclic group of order pq, GL(2, q) for q in {2, 3}, and direct
products.  Orders are capped at ``MAX_ORDER`` so exhaustive n^3 scans stay
cheap.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    BadParameters,
    MissingInverse,
    NoIdentity,
    NotAssociative,
    TooLarge,
)

MAX_ORDER = 200


@dataclass(frozen=True)
class Permutation:
    """A bijection of {0..n-1}; ``(p * q)[x] == p[q[x]]`` (p applied last)."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(n)):
            raise BadParameters(f"not a bijection on 0..{n - 1}: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if len(other.images) != len(self.images):
            raise BadParameters("permutation degrees differ")
        return Permutation(tuple(self.images[i] for i in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    @property
    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self, include_fixed: bool = False) -> list[list[int]]:
        """Disjoint cycles, each starting at its least point, sorted by start."""
        seen = set()
        out = []
        for start in range(len(self.images)):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self.images[x]
            if len(cyc) > 1 or include_fixed:
                out.append(cyc)
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles(include_fixed=True)))

    def cycle_string(self, names: Sequence[str] | None = None) -> str:
        """Cycle notation over element names, fixed points omitted."""
        cycs = self.cycles()
        if not cycs:
            return "()"
        label = (lambda i: names[i]) if names is not None else str
        return "".join("(" + " ".join(label(i) for i in c) + ")" for c in cycs)


class FiniteGroup:
    """A group given by its full multiplication table.

    ``table[g][h]`` is the product g*h.  The constructor validates the
    axioms and raises :class:`NoIdentity`, :class:`MissingInverse` or
    :class:`NotAssociative` (each naming a witness) on failure.
    """

    def __init__(
        self,
        table,
        names: Sequence[str] | None = None,
        name: str = "",
        generators: Sequence[int] | None = None,
        meta: Mapping | None = None,
    ):
        arr = np.array(table, dtype=np.int32)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise BadParameters(f"table must be square, got shape {arr.shape}")
        n = arr.shape[0]
        if n == 0:
            raise BadParameters("empty table")
        if arr.min() < 0 or arr.max() >= n:
            raise BadParameters("table entries must lie in [0, n)")

        rng = np.arange(n)
        id_rows = np.nonzero(arr[0] != rng)[0]
        id_cols = np.nonzero(arr[:, 0] != rng)[0]
        if id_rows.size or id_cols.size:
            bad = int(id_rows[0]) if id_rows.size else int(id_cols[0])
            raise NoIdentity(bad)

        inverses = np.full(n, -1, dtype=np.int32)
        for g in range(n):
            right = np.nonzero(arr[g] == 0)[0]
            if right.size != 1 or arr[right[0], g] != 0:
                raise MissingInverse(g)
            inverses[g] = right[0]

        left = arr[arr]                # left[g,h,k] = (g*h)*k
        right_ = arr[rng[:, None, None], arr[None, :, :]]  # g*(h*k)
        bad = np.argwhere(left != right_)
        if bad.size:
            raise NotAssociative(tuple(int(x) for x in bad[0]))

        arr.setflags(write=False)
        inverses.setflags(write=False)
        self.order: int = n
        self.table = arr
        self.inverses = inverses
        self.name = name or f"group:{n}"
        if names is None:
            names = tuple(str(i) for i in range(n))
        else:
            names = tuple(names)
            if len(names) != n or len(set(names)) != n:
                raise BadParameters("names must be distinct and match the order")
        self.names = names
        self._name_index = {s: i for i, s in enumerate(names)}

        central = np.all(arr == arr.T, axis=1)
        self.center: frozenset[int] = frozenset(int(z) for z in np.nonzero(central)[0])
        self._center_mask = central.copy()
        self._center_mask.setflags(write=False)

        gg, hh = np.meshgrid(rng, rng, indexing="ij")
        comms = arr[arr[arr[gg, hh], inverses[gg]], inverses[hh]]
        self.commutator_subgroup: frozenset[int] = self.subgroup_closure(
            set(int(c) for c in np.unique(comms))
        )

        if generators is None:
            generators = self._greedy_generators()
        self.generators: tuple[int, ...] = tuple(int(g) for g in generators)
        if self.subgroup_closure(self.generators) != frozenset(range(n)):
            raise BadParameters("declared generators do not generate the group")
        self.meta = MappingProxyType(dict(meta or {}))

    # -- basic operations -------------------------------------------------

    def mul(self, g: int, h: int) -> int:
        return int(self.table[g, h])

    def inv(self, g: int) -> int:
        return int(self.inverses[g])

    def conj(self, g: int, h: int) -> int:
        """g h g^-1."""
        return int(self.table[self.table[g, h], self.inverses[g]])

    def commutator(self, g: int, h: int) -> int:
        """g h g^-1 h^-1."""
        return int(self.table[self.conj(g, h), self.inverses[h]])

    def power(self, g: int, k: int) -> int:
        k %= self.element_order(g)
        out = 0
        for _ in range(k):
            out = int(self.table[out, g])
        return out

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = int(self.table[x, g])
            k += 1
        return k

    def is_central(self, g: int) -> bool:
        return bool(self._center_mask[g])

    @property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def nilpotency_class_at_most_two(self) -> bool:
        return self.commutator_subgroup <= self.center

    def subgroup_closure(self, gens: Iterable[int]) -> frozenset[int]:
        """Closure of ``gens`` under products and inverses (contains 1)."""
        closure = {0}
        frontier = [0]
        gens = sorted(set(int(g) for g in gens))
        for g in gens:
            if g not in closure:
                closure.add(g)
                frontier.append(g)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = int(self.table[x, g])
                    if y not in closure:
                        closure.add(y)
                        nxt.append(y)
            frontier = nxt
        # gens of finite order: closure under products already contains inverses
        return frozenset(closure)

    def _greedy_generators(self) -> tuple[int, ...]:
        gens: list[int] = []
        closure = frozenset({0})
        for g in range(self.order):
            if g in closure:
                continue
            gens.append(g)
            closure = self.subgroup_closure(gens)
            if len(closure) == self.order:
                break
        return tuple(gens)

    # -- translations ------------------------------------------------------

    def left_translation(self, g: int) -> Permutation:
        """lambda(g): h -> g h."""
        return Permutation(tuple(int(x) for x in self.table[g]))

    def right_translation(self, g: int) -> Permutation:
        """rho(g): h -> h g^-1 (the homomorphism convention)."""
        return Permutation(tuple(int(x) for x in self.table[:, self.inverses[g]]))

    # -- names and serialization -------------------------------------------

    def index_of(self, name: str) -> int:
        if name not in self._name_index:
            raise BadParameters(f"unknown element name {name!r} in {self.name}")
        return self._name_index[name]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "order": self.order,
            "elements": list(self.names),
            "table": [[int(x) for x in row] for row in self.table],
        }

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"


def validate_group(table, names: Sequence[str] | None = None) -> FiniteGroup:
    """Build a :class:`FiniteGroup` from a raw table, verifying all axioms."""
    return FiniteGroup(table, names=names)


def group_from_json(doc: dict | str) -> FiniteGroup:
    if isinstance(doc, str):
        doc = json.loads(doc)
    return FiniteGroup(doc["table"], names=doc.get("elements"), name=doc.get("name", ""))


def subgroup_group(G: FiniteGroup, elements: Iterable[int], name: str = "") -> FiniteGroup:
    """The subgroup on ``elements`` as a standalone group (identity first)."""
    elems = sorted(set(int(e) for e in elements))
    if 0 not in elems:
        raise BadParameters("a subgroup must contain the identity")
    pos = {e: i for i, e in enumerate(elems)}
    k = len(elems)
    table = [[0] * k for _ in range(k)]
    for i, g in enumerate(elems):
        for j, h in enumerate(elems):
            p = int(G.table[g, h])
            if p not in pos:
                raise BadParameters("element set is not closed under the product")
            table[i][j] = pos[p]
    names = [G.names[e] for e in elems]
    return FiniteGroup(table, names=names, name=name or f"sub:{G.name}")


# -- catalog constructors ----------------------------------------------------


def _check_order(n: int):
    if n > MAX_ORDER:
        raise TooLarge(f"order {n} exceeds the cap of {MAX_ORDER}")


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise BadParameters("cyclic group needs n >= 1")
    _check_order(n)
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    names = ["1"] + [f"g{i}" if i > 1 else "g" for i in range(1, n)]
    gens = [1] if n > 1 else []
    return FiniteGroup(table, names=names, name=f"cyclic({n})", generators=gens,
                       meta={"family": "cyclic", "n": n})


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n: r^n = s^2 = 1, s r s = r^-1."""
    if n < 1:
        raise BadParameters("dihedral group needs n >= 1")
    _check_order(2 * n)
    size = 2 * n

    def mul(x, y):
        i, u = x % n, x // n
        j, v = y % n, y // n
        k = (i - j) % n if u else (i + j) % n
        return k + n * ((u + v) % 2)

    table = [[mul(x, y) for y in range(size)] for x in range(size)]
    names = []
    for u in ("", "s"):
        for i in range(n):
            rot = "" if i == 0 else ("r" if i == 1 else f"r{i}")
            names.append((rot + u) or "1")
    gens = [1, n] if n > 1 else [n]
    return FiniteGroup(table, names=names, name=f"dihedral({n})", generators=gens,
                       meta={"family": "dihedral", "n": n})


def quaternion_group() -> FiniteGroup:
    """Q8 on [1, a, a2, a3, b, ab, a2b, a3b]: a^4 = 1, b^2 = a^2, bab^-1 = a^-1."""

    def mul(x, y):
        i, u = x % 4, x // 4
        j, v = y % 4, y // 4
        if not u:
            return (i + j) % 4 + 4 * v
        if not v:
            return (i - j) % 4 + 4
        return (i - j + 2) % 4

    table = [[mul(x, y) for y in range(8)] for x in range(8)]
    names = ["1", "a", "a2", "a3", "b", "ab", "a2b", "a3b"]
    return FiniteGroup(table, names=names, name="quaternion8", generators=[1, 4],
                       meta={"family": "quaternion8"})


def _perm_name(p: tuple[int, ...]) -> str:
    # cycle notation over 1-based points; desk scale keeps points single-digit
    return Permutation(p).cycle_string([str(i + 1) for i in range(len(p))]).replace(" ", "")


def symmetric_group(n: int) -> FiniteGroup:
    if n < 1:
        raise BadParameters("symmetric group needs n >= 1")
    _check_order(math.factorial(n))
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    size = len(perms)
    table = [[0] * size for _ in range(size)]
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            table[i][j] = index[tuple(p[q[k]] for k in range(n))]
    names = [_perm_name(p) for p in perms]
    if n == 1:
        gens = []
    elif n == 2:
        gens = [1]
    else:
        swap = tuple([1, 0] + list(range(2, n)))
        cycle = tuple(list(range(1, n)) + [0])
        gens = [index[swap], index[cycle]]
    return FiniteGroup(table, names=names, name=f"symmetric({n})", generators=gens,
                       meta={"family": "symmetric", "n": n, "perms": tuple(perms)})


def smallest_metacyclic_twist(p: int, q: int) -> int:
    """Least d with d^q = 1 mod p and d != 1 mod p, or BadParameters."""
    for d in range(2, p):
        if pow(d, q, p) == 1:
            return d
    raise BadParameters(f"no valid twist d for metacyclic({p},{q})")


def metacyclic_group(p: int, q: int, d: int | None = None) -> FiniteGroup:
    """The group <s, t : s^p = t^q = 1, t s t^-1 = s^d> of order p*q."""
    if p < 2 or q < 2:
        raise BadParameters("metacyclic group needs p, q >= 2")
    _check_order(p * q)
    if d is None:
        d = smallest_metacyclic_twist(p, q)
    if d % p == 1 % p or pow(d, q, p) != 1:
        raise BadParameters(
            f"metacyclic twist must satisfy d^q = 1 mod p and d != 1 mod p, got d={d}"
        )
    size = p * q

    def mul(x, y):
        i, j = divmod(x, q)
        k, l = divmod(y, q)
        return ((i + k * pow(d, j, p)) % p) * q + (j + l) % q

    table = [[mul(x, y) for y in range(size)] for x in range(size)]
    names = []
    for i in range(p):
        for j in range(q):
            s = "" if i == 0 else ("s" if i == 1 else f"s{i}")
            t = "" if j == 0 else ("t" if j == 1 else f"t{j}")
            names.append((s + t) or "1")
    return FiniteGroup(table, names=names, name=f"metacyclic({p},{q},{d})",
                       generators=[q, 1],
                       meta={"family": "metacyclic", "p": p, "q": q, "d": d})


def general_linear_group(n: int, q: int) -> FiniteGroup:
    """GL(n, F_q) at desk scale: n = 2, q in {2, 3}.

    Elements are ordered identity first, then row-major lexicographically
    (the identity-at-0 normalization overrides pure row-major order).
    """
    if n != 2 or q not in (2, 3):
        raise BadParameters("only gl(2,2) and gl(2,3) are supported at desk scale")
    mats = []
    for a, b, c, d in itertools.product(range(q), repeat=4):
        if (a * d - b * c) % q != 0:
            mats.append(((a, b), (c, d)))
    ident = ((1, 0), (0, 1))
    mats.sort()
    mats.remove(ident)
    mats.insert(0, ident)
    _check_order(len(mats))
    index = {m: i for i, m in enumerate(mats)}

    def matmul(x, y):
        return tuple(
            tuple(sum(x[i][k] * y[k][j] for k in range(2)) % q for j in range(2))
            for i in range(2)
        )

    size = len(mats)
    table = [[index[matmul(mats[i], mats[j])] for j in range(size)] for i in range(size)]
    names = [f"[[{m[0][0]},{m[0][1]}],[{m[1][0]},{m[1][1]}]]" for m in mats]
    transvection = ((1, 1), (0, 1))
    swap = ((0, 1), (1, 0))
    gens = [index[transvection], index[swap]]
    return FiniteGroup(table, names=names, name=f"gl({n},{q})", generators=gens,
                       meta={"family": "gl", "n": n, "q": q, "matrices": tuple(mats)})


def direct_product(*factors: FiniteGroup, name: str = "") -> FiniteGroup:
    if not factors:
        raise BadParameters("direct product needs at least one factor")
    order = math.prod(g.order for g in factors)
    _check_order(order)
    sizes = [g.order for g in factors]

    def encode(tup):
        x = 0
        for v, s in zip(tup, sizes):
            x = x * s + v
        return x

    def decode(x):
        out = []
        for s in reversed(sizes):
            x, r = divmod(x, s)
            out.append(r)
        return tuple(reversed(out))

    table = [[0] * order for _ in range(order)]
    for x in range(order):
        xs = decode(x)
        for y in range(order):
            ys = decode(y)
            table[x][y] = encode(tuple(g.mul(a, b) for g, a, b in zip(factors, xs, ys)))
    names = [
        "(" + ",".join(g.names[v] for g, v in zip(factors, decode(x))) + ")"
        for x in range(order)
    ]
    gens = []
    for i, g in enumerate(factors):
        for gen in g.generators:
            tup = [0] * len(factors)
            tup[i] = gen
            gens.append(encode(tuple(tup)))
    label = name or "direct_product(" + ",".join(g.name for g in factors) + ")"
    return FiniteGroup(table, names=names, name=label, generators=gens,
                       meta={"family": "direct_product"})


# -- catalog spec strings ----------------------------------------------------


def _split_args(s: str) -> list[str]:
    """Split on top-level commas (parentheses may nest)."""
    parts, depth, cur = [], 0, []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    if cur or parts:
        parts.append("".join(cur).strip())
    return parts


def make_catalog_group(spec: str) -> FiniteGroup:
    """Build a catalog group from a spec string.

    Accepted forms: ``cyclic(n)``, ``dihedral(n)``, ``quaternion8``,
    ``symmetric(n)``, ``metacyclic(p,q[,d])``, ``gl(n,q)`` and
    ``direct_product(spec, ...)``.
    """
    spec = spec.strip()
    if spec == "quaternion8":
        return quaternion_group()
    if "(" not in spec or not spec.endswith(")"):
        raise BadParameters(f"bad group spec {spec!r}")
    head, _, inner = spec.partition("(")
    inner = inner[:-1]
    head = head.strip()
    if head == "direct_product":
        parts = _split_args(inner)
        if not parts or parts == [""]:
            raise BadParameters("direct_product needs at least one factor spec")
        return direct_product(*(make_catalog_group(p) for p in parts))
    try:
        args = [int(a) for a in _split_args(inner)]
    except ValueError as exc:
        raise BadParameters(f"bad group spec {spec!r}: {exc}") from exc
    builders = {
        "cyclic": (cyclic_group, {1}),
        "dihedral": (dihedral_group, {1}),
        "symmetric": (symmetric_group, {1}),
        "metacyclic": (metacyclic_group, {2, 3}),
        "gl": (general_linear_group, {2}),
    }
    if head not in builders:
        raise BadParameters(f"unknown group family {head!r}")
    fn, arities = builders[head]
    if len(args) not in arities:
        raise BadParameters(f"{head} takes {sorted(arities)} arguments, got {len(args)}")
    return fn(*args)
