"""Set-theoretic Yang-Baxter solutions attached to braces.

For a brace pair (dot, circ) on one carrier the solution and its inverse are

    R(a, b)  = (a^-1 . (a o b),  inv_o(a^-1 . (a o b)) o a o b)
    R'(a, b) = ((a o b) . a^-1,  inv_o((a o b) . a^-1) o a o b)

with . the dot product, o the circ product, a^-1 the dot inverse and inv_o
the circ inverse.  Maps are materialized as full n x n component tables so
the braid equation can be checked by pure lookups.
"""

from __future__ import annotations

import numpy as np

from .braces import BinaryOpTable, CheckReport, _as_table, verify_brace
from .errors import NotABrace
from .groups import FiniteGroup


class YbeMap:
    """A bijection of G x G stored as two component tables.

    ``R(a, b) = (sigma[a, b], tau[a, b])``.
    """

    def __init__(self, group: FiniteGroup, sigma, tau):
        n = group.order
        sigma = np.asarray(sigma, dtype=np.int32)
        tau = np.asarray(tau, dtype=np.int32)
        if sigma.shape != (n, n) or tau.shape != (n, n):
            raise ValueError("component tables must be n x n")
        flat = sigma.astype(np.int64) * n + tau
        if not np.array_equal(np.sort(flat, axis=None), np.arange(n * n)):
            raise ValueError("the pair map is not a bijection of G x G")
        sigma.setflags(write=False)
        tau.setflags(write=False)
        self.group = group
        self.sigma = sigma
        self.tau = tau

    def __call__(self, a: int, b: int) -> tuple[int, int]:
        return (int(self.sigma[a, b]), int(self.tau[a, b]))

    def compose(self, other: "YbeMap") -> "YbeMap":
        """self after other, as maps of G x G."""
        s2, t2 = other.sigma, other.tau
        return YbeMap(self.group, self.sigma[s2, t2], self.tau[s2, t2])

    @property
    def is_identity(self) -> bool:
        n = self.group.order
        rng = np.arange(n, dtype=np.int32)
        return bool(
            np.array_equal(self.sigma, np.tile(rng[:, None], (1, n)))
            and np.array_equal(self.tau, np.tile(rng, (n, 1)))
        )

    def to_json(self, dot_id: str = "", circ_id: str = "", checks: dict | None = None) -> dict:
        return {
            "group": self.group.name,
            "dot": dot_id,
            "circ": circ_id,
            "R": [
                [[int(self.sigma[a, b]), int(self.tau[a, b])] for b in range(self.group.order)]
                for a in range(self.group.order)
            ],
            "checks": checks or {},
        }


def _brace_tables(G: FiniteGroup, dot, circ):
    D = _as_table(dot)
    C = _as_table(circ)
    report = verify_brace(G, D, C)
    if not report.ok:
        raise NotABrace(report.first_witness()[1])
    dinv = np.argmax(D == 0, axis=1).astype(np.int32)
    cinv = np.argmax(C == 0, axis=1).astype(np.int32)
    return D, C, dinv, cinv


def ybe_map(G: FiniteGroup, dot, circ) -> YbeMap:
    D, C, dinv, cinv = _brace_tables(G, dot, circ)
    n = G.order
    u = D[dinv[:, None], C]                 # a^-1 . (a o b)
    v = C[C[cinv[u], np.arange(n)[:, None]], np.arange(n)[None, :]]
    return YbeMap(G, u, v)


def ybe_inverse_map(G: FiniteGroup, dot, circ) -> YbeMap:
    D, C, dinv, cinv = _brace_tables(G, dot, circ)
    n = G.order
    u = D[C, dinv[:, None]]                 # (a o b) . a^-1
    v = C[C[cinv[u], np.arange(n)[:, None]], np.arange(n)[None, :]]
    return YbeMap(G, u, v)


def check_braid(R: YbeMap) -> CheckReport:
    """(R x id)(id x R)(R x id) = (id x R)(R x id)(id x R) on all triples."""
    n = R.group.order
    s, t = R.sigma, R.tau
    a, b, c = np.meshgrid(
        np.arange(n, dtype=np.int32),
        np.arange(n, dtype=np.int32),
        np.arange(n, dtype=np.int32),
        indexing="ij",
    )

    def r12(x, y, z):
        return s[x, y], t[x, y], z

    def r23(x, y, z):
        return x, s[y, z], t[y, z]

    l1 = r12(*r23(*r12(a, b, c)))
    l2 = r23(*r12(*r23(a, b, c)))
    mismatch = (l1[0] != l2[0]) | (l1[1] != l2[1]) | (l1[2] != l2[2])
    bad = np.argwhere(mismatch)
    if bad.size:
        witness = tuple(int(x) for x in bad[0])
        return CheckReport(False, n**3, (("braid", witness),))
    return CheckReport(True, n**3)


def check_nondegenerate(R: YbeMap) -> CheckReport:
    """Every left component map sigma_a and right component map tau_b bijective."""
    n = R.group.order
    rng = np.arange(n, dtype=np.int32)
    failures = []
    rows_ok = np.all(np.sort(R.sigma, axis=1) == rng, axis=1)
    if not rows_ok.all():
        failures.append(("sigma-not-bijective", int(np.nonzero(~rows_ok)[0][0])))
    cols_ok = np.all(np.sort(R.tau, axis=0) == rng[:, None], axis=0)
    if not cols_ok.all():
        failures.append(("tau-not-bijective", int(np.nonzero(~cols_ok)[0][0])))
    return CheckReport(not failures, 2 * n * n, tuple(failures))


def check_inverse_pair(R: YbeMap, Rp: YbeMap) -> CheckReport:
    """R' o R = R o R' = identity on G x G."""
    failures = []
    if not Rp.compose(R).is_identity:
        failures.append(("Rp-after-R", None))
    if not R.compose(Rp).is_identity:
        failures.append(("R-after-Rp", None))
    n = R.group.order
    return CheckReport(not failures, 2 * n * n, tuple(failures))


def check_involutive(R: YbeMap, dot) -> CheckReport:
    """Assert (R o R = id) if and only if the dot operation is abelian.

    ``dot`` is the first operation of the brace pair that produced R; its
    table is the abelianness witness.
    """
    D = _as_table(dot)
    involutive = R.compose(R).is_identity
    abelian = bool(np.array_equal(D, D.T))
    ok = involutive == abelian
    failures = () if ok else (("involutive-iff-abelian", (involutive, abelian)),)
    n = R.group.order
    return CheckReport(ok, n * n, failures, info={
        "involutive": involutive,
        "dot_abelian": abelian,
    })


def solution_checks(G: FiniteGroup, dot, circ) -> dict:
    """Run the full YBE suite for a brace pair; returns the flag summary."""
    R = ybe_map(G, dot, circ)
    Rp = ybe_inverse_map(G, dot, circ)
    braid = check_braid(R).ok and check_braid(Rp).ok
    nondeg = check_nondegenerate(R).ok and check_nondegenerate(Rp).ok
    inverse = check_inverse_pair(R, Rp).ok
    invol = check_involutive(R, dot)
    return {
        "braid": braid,
        "nondegenerate": nondeg,
        "inverse_pair": inverse,
        "involutive": invol.info["involutive"],
        "involutive_iff_dot_abelian": invol.ok,
    }
