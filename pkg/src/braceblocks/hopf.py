"""Regular stable permutation subgroups and their combinatorial invariants.

Left translations of a block operation form a subgroup N of Perm(G) that is
regular and normalized by conjugation with the base translations; the fixed
points of that conjugation action count the group-like elements of the
associated fixed-point algebra.  Everything here is checked exhaustively.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .braces import BinaryOpTable, CheckReport, _as_table
from .errors import BadParameters, NotCommutatorCentral
from .groups import FiniteGroup, Permutation
from .maps import GMap, is_commutator_central
from .words import EndoWord, psi_alpha_map


@dataclass(frozen=True)
class PermSubgroup:
    """A subgroup of Perm(G) stored as an explicit element list."""

    group: FiniteGroup
    elements: tuple[Permutation, ...]
    generators: tuple[Permutation, ...] = ()

    def __post_init__(self):
        elems = set(p.images for p in self.elements)
        if len(elems) != len(self.elements):
            raise BadParameters("subgroup elements must be deduplicated")
        n = self.group.order
        if tuple(range(n)) not in elems:
            raise BadParameters("subgroup must contain the identity permutation")
        for p in self.elements:
            if p.inverse().images not in elems:
                raise BadParameters("subgroup not closed under inversion")
            for q in self.elements:
                if (p * q).images not in elems:
                    raise BadParameters("subgroup not closed under composition")

    def __len__(self):
        return len(self.elements)

    def __contains__(self, p: Permutation) -> bool:
        return any(p.images == q.images for q in self.elements)


def eta(G: FiniteGroup, psi: GMap, beta: EndoWord, g: int) -> Permutation:
    """The translation h -> g w(g) h w(g)^-1 with w = psi . beta.

    Also asserts the factored form lambda(g w(g)) rho(w(g)) under the
    rho(x): h -> h x^-1 convention; the two must agree pointwise.
    """
    if not is_commutator_central(G, psi):
        raise NotCommutatorCentral(f"map is not commutator-central on {G.name}")
    w = psi_alpha_map(G, psi, beta)
    wg = w(g)
    direct = Permutation(
        tuple(G.mul(G.mul(G.mul(g, wg), h), G.inv(wg)) for h in range(G.order))
    )
    factored = G.left_translation(G.mul(g, wg)) * G.right_translation(wg)
    assert direct.images == factored.images, "translation factorization broke"
    return direct


def eta_family(G: FiniteGroup, psi: GMap, beta: EndoWord) -> PermSubgroup:
    """N = {eta_g : g in G}, with generator images taken at group generators."""
    if not is_commutator_central(G, psi):
        raise NotCommutatorCentral(f"map is not commutator-central on {G.name}")
    w = np.asarray(psi_alpha_map(G, psi, beta).images, dtype=np.int32)
    n = G.order
    gw = G.table[np.arange(n), w]
    rows = G.table[G.table[gw][:, :], 0]  # placeholder shape; replaced below
    rows = G.table[G.table[gw], w[:, None] * 0]  # not used; kept simple below
    elems = []
    for g in range(n):
        row = G.table[G.table[gw[g]], G.inverses[w[g]]]
        elems.append(Permutation(tuple(int(x) for x in row[np.arange(n)])))
    # the loop above builds lambda(g w(g)) conj(w(g)) rows directly
    return PermSubgroup(G, tuple(dict.fromkeys(elems)), ())


def translations_of(op: BinaryOpTable) -> PermSubgroup:
    """N = all left translations of a block operation (rows of its table)."""
    rows = tuple(Permutation(tuple(int(x) for x in op.table[g])) for g in range(op.group.order))
    gen_rows = tuple(
        Permutation(tuple(int(x) for x in op.table[g])) for g in op.as_group().generators
    )
    return PermSubgroup(op.group, rows, gen_rows)


def is_regular(G: FiniteGroup, N: PermSubgroup) -> bool:
    """Unique transitivity: for all g, h exactly one member sends g to h."""
    n = G.order
    counts = np.zeros((n, n), dtype=np.int32)
    for p in N.elements:
        counts[np.arange(n), p.images] += 1
    return bool(np.all(counts == 1))


def is_stable_under(N: PermSubgroup, op) -> bool:
    """Conjugation by every left op-translation maps N into itself."""
    T = _as_table(op)
    n = T.shape[0]
    members = {p.images for p in N.elements}
    arr = np.array([p.images for p in N.elements], dtype=np.int32)
    for k in range(n):
        tk = T[k]
        tk_inv = np.empty(n, dtype=np.int32)
        tk_inv[tk] = np.arange(n)
        conj = tk[arr[:, tk_inv]]
        for row in conj:
            if tuple(int(x) for x in row) not in members:
                return False
    return True


def stability_conjugate_formula_check(
    G: FiniteGroup, psi: GMap, beta: EndoWord
) -> CheckReport:
    """Check the closed form for conjugating a translation by lambda(k).

    lambda(k) eta_g lambda(k)^-1 must equal eta at the index
    k g w(g) k^-1 w(g)^-1 for every k and g.
    """
    if not is_commutator_central(G, psi):
        raise NotCommutatorCentral(f"map is not commutator-central on {G.name}")
    w = psi_alpha_map(G, psi, beta)
    n = G.order
    etas = {g: eta(G, psi, beta, g) for g in range(n)}
    failures = []
    for k in range(n):
        lam = G.left_translation(k)
        lam_inv = G.left_translation(G.inv(k))
        for g in range(n):
            wg = w(g)
            idx = G.mul(G.mul(G.mul(G.mul(k, g), wg), G.inv(k)), G.inv(wg))
            if (lam * etas[g] * lam_inv).images != etas[idx].images:
                failures.append(("stability-formula", (k, g)))
                return CheckReport(False, n * n, tuple(failures))
    return CheckReport(True, n * n)


def grouplike_count(G: FiniteGroup, psi: GMap, beta: EndoWord) -> int:
    """Number of g with g w(g) central; cross-checked against the fixed
    points of the conjugation action on the translation family."""
    if not is_commutator_central(G, psi):
        raise NotCommutatorCentral(f"map is not commutator-central on {G.name}")
    w = psi_alpha_map(G, psi, beta)
    by_center = sum(1 for g in range(G.order) if G.mul(g, w(g)) in G.center)

    etas = [eta(G, psi, beta, g) for g in range(G.order)]
    fixed = 0
    for e in etas:
        if all(
            (G.left_translation(k) * e * G.left_translation(G.inv(k))).images == e.images
            for k in range(G.order)
        ):
            fixed += 1
    assert by_center == fixed, (
        f"group-like counts disagree: center condition {by_center}, "
        f"fixed translations {fixed}"
    )
    return by_center


def hgs_report(
    G: FiniteGroup,
    psi: GMap,
    beta: EndoWord,
    psi_spec: str = "",
    word_spec: str = "",
    identify=None,
) -> dict:
    """The combinatorial summary for one (psi, word) choice, per schema."""
    from .braces import circle_table
    if identify is None:
        from .isoclass import identify
    op = circle_table(G, psi, beta, psi_spec, word_spec)
    N = translations_of(op)
    formula = stability_conjugate_formula_check(G, psi, beta)
    return {
        "group": G.name,
        "psi": psi_spec,
        "word": word_spec,
        "N_generators": [p.cycle_string(G.names) for p in N.generators],
        "regular": is_regular(G, N),
        "stable": is_stable_under(N, G.table) and formula.ok,
        "grouplikes": grouplike_count(G, psi, beta),
        "N_iso_type": identify(op),
    }
