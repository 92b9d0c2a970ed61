"""Restricted one-dimensional central extensions from even restricted 2-cocycles."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from . import linalg
from .cochain import coboundaries, d2_matrix, form_matrix, pair_label, wedge2_basis
from .families import FamilyMember
from .rescohomology import (
    NotACocycleError,
    RestrictedCochain2,
    cochain_parity,
    d1_res_matrix,
    is_restricted_cocycle,
    restricted_coboundaries,
)
from .restricted import POperator, p_power, validate_restricted
from .superalgebra import LieSuperalgebra, validate_superalgebra


class OddCocycleError(ValueError):
    """Only even cocycles define restricted central extensions."""


@dataclass
class ExtensionResult:
    algebra: LieSuperalgebra
    p_operator: POperator
    cocycle: RestrictedCochain2
    center_index: int
    name: str = ""
    split: bool | None = None

    @property
    def center_label(self) -> str:
        return self.algebra.names[self.center_index]


def _fresh_label(names) -> str:
    if "c" not in names:
        return "c"
    k = 0
    while f"c{k}" in names:
        k += 1
    return f"c{k}"


def central_extension(P: POperator, z: RestrictedCochain2, name: str = "") -> ExtensionResult:
    """``[g, h]' = [g, h] + phi(g, h) c`` and ``e_i^{[p]'} = e_i^{[p]} + frob_i c``, with c central and ``c^{[p]} = 0``.

    The new even generator ``c`` is placed at the end of the even block.
    """
    A, p = P.algebra, P.p
    if cochain_parity(A, z) != 0:
        raise OddCocycleError("central extensions are built from even cocycles only")
    ok, why = is_restricted_cocycle(P, z)
    if not ok:
        raise NotACocycleError(why)
    m, N = A.m, A.dim
    new = list(range(m)) + list(range(m + 1, N + 1))  # old index -> new index
    cidx = m
    c = np.zeros((N + 1,) * 3, dtype=np.int64)
    Phi = form_matrix(A, z.phi)
    for i, j in product(range(N), repeat=2):
        c[new[i], new[j], new] = A.constants[i, j]
        c[new[i], new[j], cidx] = Phi[i, j]
    label = _fresh_label(A.names)
    G = LieSuperalgebra([*A.even_names, label], A.odd_names, p, c)
    images = np.zeros((m + 1, N + 1), dtype=np.int64)
    for i in range(m):
        images[i, new] = P.images[i]
        images[i, cidx] = z.frob[i]
    return ExtensionResult(G, POperator(G, images), z, cidx, name)


def is_split_ordinary(A: LieSuperalgebra, phi: np.ndarray) -> bool:
    """True iff the ordinary cocycle ``phi`` is a coboundary."""
    phi = np.asarray(phi, dtype=np.int64) % A.p
    if np.any(d2_matrix(A) @ phi % A.p):
        raise NotACocycleError("d2(phi) != 0")
    B = linalg.stack([coboundaries(A, 0), coboundaries(A, 1)], len(phi))
    return linalg.in_span(phi, B, A.p)


def _check_cocycle(P: POperator, z: RestrictedCochain2) -> None:
    ok, why = is_restricted_cocycle(P, z)
    if not ok:
        raise NotACocycleError(why)


def coboundary_witness(P: POperator, z1: RestrictedCochain2, z2: RestrictedCochain2) -> np.ndarray | None:
    """A 1-cochain psi with ``z1 - z2 = d1_res(psi)``, or None."""
    p = P.p
    diff = (z1.vector() - z2.vector()) % p
    return linalg.solve(d1_res_matrix(P), diff, p)


def cocycles_equivalent(P: POperator, z1: RestrictedCochain2, z2: RestrictedCochain2) -> bool:
    _check_cocycle(P, z1)
    _check_cocycle(P, z2)
    return coboundary_witness(P, z1, z2) is not None


def transports_structure(P: POperator, z1: RestrictedCochain2, z2: RestrictedCochain2) -> bool:
    """Check that ``g + a c -> g + (a + psi(g)) c`` is a restricted isomorphism from the z2-extension to the z1-extension."""
    psi = coboundary_witness(P, z1, z2)
    if psi is None:
        return False
    A, p = P.algebra, P.p
    E1, E2 = central_extension(P, z1), central_extension(P, z2)
    G = E1.algebra
    m, N = A.m, A.dim
    new = list(range(m)) + list(range(m + 1, N + 1))
    S = np.eye(N + 1, dtype=np.int64)
    for j in range(N):
        S[E1.center_index, new[j]] = psi[j]

    def sigma(v):
        return S @ v % p

    basis = [G.basis(k) for k in range(N + 1)]
    for u, v in product(basis, repeat=2):
        if np.any((sigma(E2.algebra.bracket(u, v)) - G.bracket(sigma(u), sigma(v))) % p):
            return False
    even = [G.basis(k) for k in range(m + 1)]
    probes = even + [(a + b) % p for a, b in combinations(even, 2)]
    for g in probes:
        lhs = sigma(p_power(E2.p_operator, g))
        rhs = p_power(E1.p_operator, sigma(g))
        if np.any((lhs - rhs) % p):
            return False
    return True


def check_extension(E: ExtensionResult) -> dict[str, bool]:
    """Axioms of the extended algebra, centrality of c and ``c^{[p]} = 0``."""
    G, P = E.algebra, E.p_operator
    cvec = G.basis(E.center_index)
    central = all(not np.any(G.bracket(cvec, G.basis(k))) for k in range(G.dim))
    return {
        "superalgebra": validate_superalgebra(G).ok,
        "restricted": validate_restricted(P).ok,
        "central": central,
        "c_p_zero": not np.any(p_power(P, cvec)),
    }


def _phi_unit(A: LieSuperalgebra, i: int, j: int) -> np.ndarray:
    pairs = wedge2_basis(A.m, A.n)
    v = np.zeros(len(pairs), dtype=np.int64)
    v[pairs.index((min(i, j), max(i, j)))] = 1
    return v


def catalog_cocycles(member: FamilyMember) -> list[tuple[str, RestrictedCochain2]]:
    """Named even cocycles whose classes form a basis of the even restricted H^2.

    Split ones ``(0, bar e^i)`` come first, then the ``x^{s,t}`` and ``y^{k,l}``
    types.
    """
    if not isinstance(member, FamilyMember):
        raise TypeError("extension catalogs exist only for the Heisenberg family members")
    A = member.algebra
    k = len(wedge2_basis(A.m, A.n))
    zero_phi = np.zeros(k, dtype=np.int64)
    zero_frob = np.zeros(A.m, dtype=np.int64)
    out = []
    for i in range(A.m):
        f = zero_frob.copy()
        f[i] = 1
        out.append((f"H_{i + 1}", RestrictedCochain2(zero_phi.copy(), f)))
    if member.kind == "heisenberg-even":
        m, n = member.m, member.n
        xs = range(2 * m)
        ys = [A.m + j for j in range(n)]
        pairs = [(s, t) for s in xs for t in xs if s < t]
        ypairs = [(ys[a], ys[b]) for a in range(n) for b in range(n) if a < b]
        ypairs += [(ys[a], ys[a]) for a in range(n - 1)]
        ypairs.sort()
    else:
        n = member.n
        pairs = [(s, t) for s in range(n) for t in range(n) if s < t]
        ys = [A.m + j for j in range(n)]
        ypairs = [(ys[a], ys[b]) for a in range(n) for b in range(n) if a <= b]
    for s, t in pairs:
        out.append((f"X_{{{s + 1},{t + 1}}}", RestrictedCochain2(_phi_unit(A, s, t), zero_frob.copy())))
    for s, t in ypairs:
        a, b = s - A.m + 1, t - A.m + 1
        out.append((f"Y_{{{a},{b}}}", RestrictedCochain2(_phi_unit(A, s, t), zero_frob.copy())))
    return out


def extension_catalog(member: FamilyMember) -> list[ExtensionResult]:
    P = member.p_operator
    results = []
    for name, z in catalog_cocycles(member):
        E = central_extension(P, z, name)
        E.split = is_split_ordinary(member.algebra, z.phi)
        results.append(E)
    return results


def catalog_is_basis(member: FamilyMember) -> bool:
    """The catalog cocycles are independent modulo restricted coboundaries."""
    P = member.p_operator
    A = P.algebra
    dim = len(wedge2_basis(A.m, A.n)) + A.m
    B = restricted_coboundaries(P)[0]
    rows = [z.vector() for _, z in catalog_cocycles(member)]
    base = linalg.rank(B, A.p) if len(B) else 0
    return linalg.rank(linalg.stack([B, *rows], dim), A.p) == base + len(rows)


def describe_cocycle(A: LieSuperalgebra, z: RestrictedCochain2) -> str:
    names = A.names
    terms = []
    for b, (i, j) in enumerate(wedge2_basis(A.m, A.n)):
        if z.phi[b]:
            terms.append(f"{int(z.phi[b])}*{pair_label(names[i], names[j])}")
    for i, f in enumerate(z.frob):
        if f:
            terms.append(f"{int(f)}*frob:{i + 1}")
    return " + ".join(terms) or "0"
