"""Chevalley-Eilenberg cochains C^1..C^3 with trivial coefficients.

Coordinates are taken in dual wedge bases. For a 2-cochain the basis is
indexed by pairs ``(i, j)``: ``i < j`` when ``e_i`` is even, ``i <= j`` when
both are odd, with even-even pairs first, then even-odd, then odd-odd.
The odd diagonal is normalized by ``e^{i,i}(e_i, e_i) = 1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

import numpy as np

from . import linalg
from .superalgebra import LieSuperalgebra


@lru_cache(maxsize=None)
def wedge2_basis(m: int, n: int) -> tuple[tuple[int, int], ...]:
    even = range(m)
    odd = range(m, m + n)
    pairs = [(i, j) for i in even for j in even if i < j]
    pairs += [(i, j) for i in even for j in odd]
    pairs += [(i, j) for i in odd for j in odd if i <= j]
    return tuple(pairs)


@lru_cache(maxsize=None)
def wedge3_basis(m: int, n: int) -> tuple[tuple[int, int, int], ...]:
    N = m + n
    out = []
    for u, v, w in product(range(N), repeat=3):
        if not (u <= v <= w):
            continue
        if (u == v and u < m) or (v == w and v < m):
            continue
        out.append((u, v, w))
    return tuple(out)


def _cache(A: LieSuperalgebra) -> dict:
    return A.__dict__.setdefault("_cochain_cache", {})


def form_tensor(A: LieSuperalgebra) -> np.ndarray:
    """``F[b]`` is the full bilinear-form matrix of the b-th 2-cochain basis vector."""
    cache = _cache(A)
    if "F" not in cache:
        pairs = wedge2_basis(A.m, A.n)
        F = np.zeros((len(pairs), A.dim, A.dim), dtype=np.int64)
        par = A.parities
        for b, (i, j) in enumerate(pairs):
            F[b, i, j] = 1
            if i != j:
                F[b, j, i] = 1 if (par[i] and par[j]) else -1
        cache["F"] = F % A.p
    return cache["F"]


def parities1(A: LieSuperalgebra) -> np.ndarray:
    return A.parities.copy()


def parities2(A: LieSuperalgebra) -> np.ndarray:
    par = A.parities
    return np.array([(par[i] + par[j]) % 2 for i, j in wedge2_basis(A.m, A.n)], dtype=np.int64)


def parities3(A: LieSuperalgebra) -> np.ndarray:
    par = A.parities
    return np.array([(par[u] + par[v] + par[w]) % 2 for u, v, w in wedge3_basis(A.m, A.n)], dtype=np.int64)


def form_matrix(A: LieSuperalgebra, phi: np.ndarray) -> np.ndarray:
    """Gram matrix ``Phi`` with ``phi(g, h) = g @ Phi @ h``."""
    return np.einsum("b,bij->ij", np.asarray(phi, dtype=np.int64), form_tensor(A)) % A.p


def eval2(A: LieSuperalgebra, phi: np.ndarray, g: np.ndarray, h: np.ndarray) -> int:
    return int(np.asarray(g) @ form_matrix(A, phi) @ np.asarray(h) % A.p)


def d1_matrix(A: LieSuperalgebra) -> np.ndarray:
    """Matrix of d^1: row (i, j) is the functional psi -> psi([e_i, e_j])."""
    cache = _cache(A)
    if "d1" not in cache:
        pairs = wedge2_basis(A.m, A.n)
        M = np.array([A.constants[i, j] for i, j in pairs], dtype=np.int64).reshape(len(pairs), A.dim)
        cache["d1"] = M % A.p
    return cache["d1"]


def d2_full(A: LieSuperalgebra) -> np.ndarray:
    """d^2 evaluated on every ordered basis triple; shape (N, N, N, dim C^2)."""
    cache = _cache(A)
    if "d2_full" not in cache:
        c, par, p = A.constants, A.parities, A.p
        F = form_tensor(A)
        # G[u, v, w, b] = phi_b([e_u, e_v], e_w)
        G = np.einsum("uvk,bkw->uvwb", c, F) % p
        s_vw = np.where(np.outer(par, par) % 2 == 1, -1, 1)  # (-1)^{|v||w|}
        T = G.copy()
        # -(-1)^{|w||v|} phi([u, w], v)
        T -= s_vw[None, :, :, None] * np.transpose(G, (0, 2, 1, 3))
        # +(-1)^{|u|(|v|+|w|)} phi([v, w], u)
        vw = (par[:, None] + par[None, :]) % 2
        s_u = np.where((par[:, None, None] * vw[None, :, :]) % 2 == 1, -1, 1)
        T += s_u[..., None] * np.transpose(G, (2, 0, 1, 3))
        cache["d2_full"] = T % p
    return cache["d2_full"]


def d2_matrix(A: LieSuperalgebra) -> np.ndarray:
    cache = _cache(A)
    if "d2" not in cache:
        T = d2_full(A)
        triples = wedge3_basis(A.m, A.n)
        k = len(wedge2_basis(A.m, A.n))
        cache["d2"] = np.array([T[u, v, w] for u, v, w in triples], dtype=np.int64).reshape(len(triples), k)
    return cache["d2"]


def d1(A: LieSuperalgebra, psi: np.ndarray) -> np.ndarray:
    return d1_matrix(A) @ np.asarray(psi, dtype=np.int64) % A.p


def d2(A: LieSuperalgebra, phi: np.ndarray) -> np.ndarray:
    return d2_matrix(A) @ np.asarray(phi, dtype=np.int64) % A.p


def eval3(A: LieSuperalgebra, phi: np.ndarray, u: int, v: int, w: int) -> int:
    """Value of d^2(phi) on the ordered basis triple (e_u, e_v, e_w)."""
    return int(d2_full(A)[u, v, w] @ np.asarray(phi, dtype=np.int64) % A.p)


# labels ---------------------------------------------------------------

_LABEL = re.compile(r"^([A-Za-z_]+)(\d+)$")


def dual_label(name: str) -> str:
    m = _LABEL.match(name)
    return f"{m.group(1)}^{m.group(2)}" if m else f"{name}^*"


def pair_label(a: str, b: str) -> str:
    ma, mb = _LABEL.match(a), _LABEL.match(b)
    if ma and mb and ma.group(1) == mb.group(1):
        return f"{ma.group(1)}^{{{ma.group(2)},{mb.group(2)}}}"
    return f"{dual_label(a)}∧{dual_label(b)}"


def frob_label(name: str) -> str:
    return f"bar({dual_label(name)})"


def cochain_labels(A: LieSuperalgebra, degree: int, restricted: bool = False) -> list[str]:
    names = A.names
    if degree == 1:
        return [dual_label(x) for x in names]
    if degree == 2:
        labels = [pair_label(names[i], names[j]) for i, j in wedge2_basis(A.m, A.n)]
        if restricted:
            labels += [frob_label(x) for x in A.even_names]
        return labels
    if degree == 3:
        return ["∧".join(dual_label(names[i]) for i in t) for t in wedge3_basis(A.m, A.n)]
    raise ValueError(f"unsupported degree {degree}")


def format_vector(v: np.ndarray, labels: list[str]) -> dict[str, int]:
    return {labels[k]: int(x) for k, x in enumerate(np.asarray(v)) if x}


# cohomology -------------------------------------------------------------

@dataclass
class CohomologyReport:
    degree: int
    restricted: bool
    p: int
    sdim: tuple[int, int]
    representatives: dict[int, np.ndarray] = field(default_factory=dict)
    labels: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "degree": self.degree,
            "restricted": self.restricted,
            "sdim": list(self.sdim),
            "representatives": {
                "even": [format_vector(v, self.labels) for v in self.representatives.get(0, [])],
                "odd": [format_vector(v, self.labels) for v in self.representatives.get(1, [])],
            },
        }


def representatives(sub: np.ndarray, ambient: np.ndarray, p: int, dim: int, prefer: list[int] | None = None) -> np.ndarray:
    """Coset representatives for span(ambient) / span(sub).

    Standard basis vectors lying in span(ambient) are tried first (in the
    order ``prefer``, default ascending), then the ambient basis itself.
    """
    ambient = linalg.as_rows(ambient, dim)
    order = range(dim) if prefer is None else prefer
    units = []
    for k in order:
        e = np.zeros(dim, dtype=np.int64)
        e[k] = 1
        if linalg.in_span(e, ambient, p):
            units.append(e)
    return linalg.complement_basis(sub, [*units, *ambient], p, dim)


def _embed(vectors: np.ndarray, idx: np.ndarray, dim: int) -> np.ndarray:
    out = np.zeros((vectors.shape[0], dim), dtype=np.int64)
    out[:, idx] = vectors
    return out


def cocycles(A: LieSuperalgebra, degree: int, parity: int) -> np.ndarray:
    """Basis of Z^degree of the given parity, as full-length coordinate rows."""
    if degree == 1:
        M, par = d1_matrix(A), parities1(A)
    elif degree == 2:
        M, par = d2_matrix(A), parities2(A)
    else:
        raise ValueError(f"unsupported degree {degree}")
    idx = np.nonzero(par == parity)[0]
    K = linalg.kernel_basis(M[:, idx], A.p)
    return _embed(K, idx, M.shape[1])


def coboundaries(A: LieSuperalgebra, parity: int) -> np.ndarray:
    """Spanning set of B^2 of the given parity (images of the parity-matching C^1 basis)."""
    idx = np.nonzero(A.parities == parity)[0]
    return d1_matrix(A)[:, idx].T.copy()


def cohomology(A: LieSuperalgebra, degree: int) -> CohomologyReport:
    """Ordinary H^1 or H^2 with explicit representative cocycles, split by parity."""
    if degree not in (1, 2):
        raise ValueError("only degrees 1 and 2 are supported")
    p = A.p
    reps = {}
    for parity in (0, 1):
        Z = cocycles(A, degree, parity)
        if degree == 1:
            reps[parity] = Z
        else:
            dim = len(wedge2_basis(A.m, A.n))
            reps[parity] = representatives(coboundaries(A, parity), Z, p, dim)
    return CohomologyReport(
        degree=degree,
        restricted=False,
        p=p,
        sdim=(len(reps[0]), len(reps[1])),
        representatives=reps,
        labels=cochain_labels(A, degree),
    )
