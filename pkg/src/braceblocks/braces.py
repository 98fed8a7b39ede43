"""Circle operations, brace verification, and brace blocks.

The circle operation attached to a commutator-central map psi and a word
alpha is g o h = g * w(g) * h * w(g)^-1 with w = psi . alpha.  Any two such
operations (over maps whose images commute modulo the center) satisfy the
brace relation

    a o (b . c) = (a o b) . a^-1 . (a o c)

which `verify_brace` checks exhaustively over all n^3 triples.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    BraceFailure,
    EmptyBlock,
    ImagesDoNotCommute,
    NotCommutatorCentral,
)
from .groups import FiniteGroup, Permutation
from .maps import GMap, is_commutator_central, images_commute_witness
from .words import (
    EndoWord,
    negate_word,
    psi_alpha_map,
    reverse_word,
    word_minus_one,
)


@dataclass(frozen=True)
class CheckReport:
    """Outcome of an exhaustive verification; failures carry witnesses."""

    ok: bool
    checked: int
    failures: tuple[tuple, ...] = ()
    info: dict = field(default_factory=dict)

    def first_witness(self):
        return self.failures[0] if self.failures else None


@dataclass(frozen=True)
class Provenance:
    psi: GMap
    word: EndoWord
    psi_spec: str = ""
    word_spec: str = ""


class BinaryOpTable:
    """A group operation on the carrier of a base group.

    Construction validates the full group axioms (delegating to
    :class:`FiniteGroup`), so an instance is always a group with identity 0.
    """

    def __init__(self, group: FiniteGroup, table, provenance: tuple[Provenance, ...] = ()):
        self.group = group
        self._fg = FiniteGroup(np.asarray(table), names=group.names,
                               name=f"op-on:{group.name}")
        self.table = self._fg.table
        self.inverses = self._fg.inverses
        self.provenance = tuple(provenance)

    def op(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    @property
    def is_abelian(self) -> bool:
        return self._fg.is_abelian

    def element_order(self, g: int) -> int:
        return self._fg.element_order(g)

    def left_translation(self, g: int) -> Permutation:
        return self._fg.left_translation(g)

    def as_group(self) -> FiniteGroup:
        return self._fg

    def digest(self) -> str:
        """sha256 over the comma-joined row-major entries."""
        payload = ",".join(str(int(x)) for x in self.table.ravel())
        return hashlib.sha256(payload.encode()).hexdigest()

    def same_table(self, other: "BinaryOpTable") -> bool:
        return bool(np.array_equal(self.table, other.table))

    def __repr__(self):
        return f"BinaryOpTable(on {self.group.name})"


def _as_table(op) -> np.ndarray:
    if isinstance(op, BinaryOpTable):
        return op.table
    if isinstance(op, FiniteGroup):
        return op.table
    return np.asarray(op, dtype=np.int32)


def dot_table(G: FiniteGroup) -> BinaryOpTable:
    """The base operation wrapped as an op table (word 0 provenance-free)."""
    return BinaryOpTable(G, G.table)


def circle_table(
    G: FiniteGroup,
    psi: GMap,
    alpha: EndoWord,
    psi_spec: str = "",
    word_spec: str = "",
) -> BinaryOpTable:
    """The operation g o h = g * w(g) * h * w(g)^-1 with w = psi . alpha."""
    if not is_commutator_central(G, psi):
        raise NotCommutatorCentral(
            f"the map does not send [G,G] into Z(G) on {G.name}"
        )
    v = np.asarray(psi_alpha_map(G, psi, alpha).images, dtype=np.int32)
    n = G.order
    gv = G.table[np.arange(n), v]
    left = G.table[gv]                       # row g: (g w(g)) h
    table = G.table[left, G.inverses[v][:, None]]
    return BinaryOpTable(G, table, provenance=(Provenance(psi, alpha, psi_spec, word_spec),))


def verify_group_table(G: FiniteGroup, op) -> CheckReport:
    """Report on the group axioms of a raw table or op.

    Checks identity at 0, row/column bijectivity, exhaustive associativity,
    and (when provenance is attached) that the circle inverse of g equals
    w(g)^-1 g^-1 w(g) in the base group.
    """
    T = _as_table(op)
    n = T.shape[0]
    rng = np.arange(n)
    failures: list[tuple] = []

    bad = np.nonzero(T[0] != rng)[0]
    if bad.size:
        failures.append(("identity-row", int(bad[0])))
    bad = np.nonzero(T[:, 0] != rng)[0]
    if bad.size:
        failures.append(("identity-column", int(bad[0])))

    if not np.array_equal(np.sort(T, axis=1), np.tile(rng, (n, 1))):
        row = int(np.nonzero(~np.all(np.sort(T, axis=1) == rng, axis=1))[0][0])
        failures.append(("row-not-bijective", row))
    if not np.array_equal(np.sort(T, axis=0), np.tile(rng[:, None], (1, n))):
        col = int(np.nonzero(~np.all(np.sort(T, axis=0) == rng[:, None], axis=0))[0][0])
        failures.append(("column-not-bijective", col))

    lhs = T[T]
    rhs = T[rng[:, None, None], T[None, :, :]]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        failures.append(("not-associative", tuple(int(x) for x in bad[0])))

    checked = n * n * n
    if isinstance(op, BinaryOpTable) and op.provenance and not failures:
        prov = op.provenance[0]
        w = np.asarray(psi_alpha_map(G, prov.psi, prov.word).images, dtype=np.int32)
        expect = G.table[G.table[G.inverses[w], G.inverses[rng]], w]
        actual = np.argmax(T == 0, axis=1)
        bad = np.nonzero(expect != actual)[0]
        if bad.size:
            failures.append(("circle-inverse-formula", int(bad[0])))
        checked += n
    return CheckReport(not failures, checked, tuple(failures))


def verify_brace(G: FiniteGroup, dot, circ) -> CheckReport:
    """Exhaustive check of a o (b . c) = (a o b) . a^-1 . (a o c)."""
    D = _as_table(dot)
    C = _as_table(circ)
    n = D.shape[0]
    dinv = np.argmax(D == 0, axis=1).astype(np.int32)
    lhs = C[np.arange(n)[:, None, None], D[None, :, :]]
    t2 = D[C, dinv[:, None]]
    rhs = D[t2[:, :, None], C[:, None, :]]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        witness = tuple(int(x) for x in bad[0])
        return CheckReport(False, n**3, (("brace-relation", witness),))
    return CheckReport(True, n**3)


def opposite_table(op) -> BinaryOpTable:
    """The opposite group: a .' b = b . a."""
    if isinstance(op, BinaryOpTable):
        group = op.group
    elif isinstance(op, FiniteGroup):
        group = op
    else:
        raise TypeError("opposite_table needs a FiniteGroup or BinaryOpTable")
    return BinaryOpTable(group, _as_table(op).T)


def hat_opposite(dot, circ) -> BinaryOpTable:
    """a ^o b = (a^-1 o b^-1)^-1 with inverses taken in the dot group."""
    D = _as_table(dot)
    C = _as_table(circ)
    dinv = np.argmax(D == 0, axis=1).astype(np.int32)
    group = circ.group if isinstance(circ, BinaryOpTable) else circ
    table = dinv[C[dinv[:, None], dinv[None, :]]]
    return BinaryOpTable(group, table)


def class_two_opposite_word(G: FiniteGroup, alpha: EndoWord) -> EndoWord:
    """The word -1 - alpha*, whose circle table is the hat opposite of alpha's.

    -alpha* is the free-group inverse of the reversed word, i.e. alpha's own
    terms negated in their original order.
    """
    return word_minus_one(G) + negate_word(reverse_word(alpha))


@dataclass(frozen=True)
class BlockSource:
    psi: GMap
    word: EndoWord
    psi_spec: str = ""
    word_spec: str = ""


class BraceBlock:
    """A deduplicated family of operations, every ordered pair a brace."""

    def __init__(self, group, ops, op_ids, merges, pairwise_verified):
        self.group = group
        self.ops: tuple[BinaryOpTable, ...] = tuple(ops)
        self.op_ids: tuple[str, ...] = tuple(op_ids)
        self.merges: tuple[dict, ...] = tuple(merges)
        self.pairwise_verified = bool(pairwise_verified)

    def __len__(self):
        return len(self.ops)

    def op_by_id(self, op_id: str) -> BinaryOpTable:
        try:
            return self.ops[self.op_ids.index(op_id)]
        except ValueError:
            raise KeyError(f"no op {op_id!r} in block") from None


def build_block(G: FiniteGroup, sources: Sequence[BlockSource]) -> BraceBlock:
    """Construct, deduplicate and pairwise-verify a brace block.

    Preconditions are enforced: every pair of distinct source maps must have
    images commuting modulo the center (:class:`ImagesDoNotCommute` names
    the offending pair), and any brace failure after that aborts the build
    (:class:`BraceFailure`), since theorem-guaranteed inputs can only fail
    through an implementation bug.
    """
    sources = list(sources)
    if not sources:
        raise EmptyBlock("a block needs at least one source operation")

    distinct: list[tuple[GMap, str]] = []
    for src in sources:
        if all(src.psi.images != p.images for p, _ in distinct):
            distinct.append((src.psi, src.psi_spec or f"psi{len(distinct)}"))
    for i, (p1, s1) in enumerate(distinct):
        for p2, s2 in distinct[i + 1:]:
            witness = images_commute_witness(G, p1, p2)
            if witness is not None:
                raise ImagesDoNotCommute(s1, s2, witness)

    ops: list[BinaryOpTable] = []
    op_ids: list[str] = []
    merges: list[dict] = []
    keys: dict[bytes, int] = {}
    for src in sources:
        op = circle_table(G, src.psi, src.word, src.psi_spec, src.word_spec)
        key = op.table.tobytes()
        if key in keys:
            idx = keys[key]
            kept = ops[idx]
            ops[idx] = BinaryOpTable(G, kept.table, kept.provenance + op.provenance)
            merges.append({
                "psi": src.psi_spec,
                "word": src.word_spec,
                "into": op_ids[idx],
            })
        else:
            keys[key] = len(ops)
            op_ids.append(f"op{len(ops):02d}")
            ops.append(op)

    for i, a in enumerate(ops):
        for j, b in enumerate(ops):
            report = verify_brace(G, a.table, b.table)
            if not report.ok:
                raise BraceFailure(op_ids[i], op_ids[j], report.first_witness()[1])
    return BraceBlock(G, ops, op_ids, merges, True)


def block_to_json(block: BraceBlock, identify=None) -> dict:
    """Block report per the documented schema; iso types via ``identify``."""
    if identify is None:
        from .isoclass import identify  # deferred: isoclass pulls in its catalog
    ops = []
    for op_id, op in zip(block.op_ids, block.ops):
        prov = op.provenance[0] if op.provenance else None
        ops.append({
            "id": op_id,
            "psi": prov.psi_spec if prov else "",
            "word": prov.word_spec if prov else "",
            "table_digest": op.digest(),
            "iso_type": identify(op),
        })
    return {
        "group": block.group.name,
        "ops": ops,
        "pairwise_brace": block.pairwise_verified,
        "dedup_merges": list(block.merges),
    }


def verify_lemma_congruences(
    G: FiniteGroup,
    psi: GMap,
    word_pairs: Sequence[tuple[EndoWord, EndoWord]],
) -> CheckReport:
    """Exhaustively check the five mod-center congruences of the word action.

    For each word w = psi . alpha appearing in the pairs: w(1) = 1,
    w(gh) = w(g)w(h), w(g)^-1 = w(g^-1) and w(gh)w(g)^-1 = w(h), all modulo
    the center; and for each pair, w_{a+b} = w_{b+a} mod the center.  The
    congruences are guaranteed only for commutator-central psi; the check
    itself runs for any endomorphism and reports failures rather than
    raising, which is how the non-CC counterexamples are exercised.
    """
    n = G.order
    center_mask = np.zeros(n, dtype=bool)
    center_mask[sorted(G.center)] = True

    def congruent(X, Y):
        return center_mask[G.table[G.inverses[np.asarray(X)], np.asarray(Y)]]

    failures: list[tuple] = []
    checked = 0

    words: list[EndoWord] = []
    for a, b in word_pairs:
        for w in (a, b):
            if all(w is not seen for seen in words):
                words.append(w)

    for wi, w in enumerate(words):
        v = np.asarray(psi_alpha_map(G, psi, w).images, dtype=np.int32)
        if v[0] != 0:
            failures.append(("part1-identity", wi, int(v[0])))
        prod_vals = v[G.table]                       # w(gh)
        split_vals = G.table[v[:, None], v[None, :]]  # w(g) w(h)
        mask = congruent(prod_vals, split_vals)
        if not mask.all():
            g, h = (int(x) for x in np.argwhere(~mask)[0])
            failures.append(("part3-multiplicative", wi, (g, h)))
        mask = congruent(G.inverses[v], v[G.inverses])
        if not mask.all():
            g = int(np.argwhere(~mask)[0][0])
            failures.append(("part4-inverse", wi, g))
        quot = G.table[prod_vals, G.inverses[v][:, None]]  # w(gh) w(g)^-1
        mask = congruent(quot, np.broadcast_to(v, (n, n)))
        if not mask.all():
            g, h = (int(x) for x in np.argwhere(~mask)[0])
            failures.append(("part5-quotient", wi, (g, h)))
        checked += 1 + 3 * n * n

    for pi, (a, b) in enumerate(word_pairs):
        v1 = np.asarray(psi_alpha_map(G, psi, a + b).images, dtype=np.int32)
        v2 = np.asarray(psi_alpha_map(G, psi, b + a).images, dtype=np.int32)
        mask = congruent(v1, v2)
        if not mask.all():
            failures.append(("part2-commute", pi, int(np.argwhere(~mask)[0][0])))
        checked += n
    return CheckReport(not failures, checked, tuple(failures))
