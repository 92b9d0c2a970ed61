"""Restricted cochains, restricted H^1/H^2 and the six-term exact sequence.

A restricted 2-cochain is a pair ``(phi, omega)`` where ``omega`` is a
phi-compatible map on the even part. Every such ``omega`` splits uniquely as
``tilde(phi) + f`` with ``tilde(phi)`` the compatible map vanishing on the even
basis and ``f`` a Frobenius homomorphism, so the pair is stored as
``(phi, frob)`` with ``frob[i] = f(e_i)``. Full coordinate vectors of
C^2_res are ``phi`` coordinates followed by the ``m`` Frobenius coordinates.
Odd restricted cochains carry ``frob = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import linalg
from .cochain import (
    CohomologyReport,
    _cache,
    cochain_labels,
    cocycles,
    coboundaries,
    d1_matrix,
    d2_matrix,
    eval2,
    form_matrix,
    form_tensor,
    parities2,
    representatives,
    wedge2_basis,
)
from .restricted import POperator, _require_even, p_power
from .superalgebra import LieSuperalgebra


class InternalConsistencyError(RuntimeError):
    """A map that should be well defined on cohomology is not."""


class NotACocycleError(ValueError):
    pass


@dataclass(frozen=True)
class FrobeniusMap:
    """``f(sum a_i e_i) = sum coords[i] * a_i^p``."""

    coords: np.ndarray
    p: int

    def __call__(self, g: np.ndarray) -> int:
        m = len(self.coords)
        g = np.asarray(g, dtype=np.int64)[:m] % self.p
        return int(sum(int(c) * pow(int(a), self.p, self.p) for c, a in zip(self.coords, g)) % self.p)


@dataclass
class RestrictedCochain2:
    phi: np.ndarray
    frob: np.ndarray

    def vector(self) -> np.ndarray:
        return np.concatenate([np.asarray(self.phi, dtype=np.int64), np.asarray(self.frob, dtype=np.int64)])

    @classmethod
    def from_vector(cls, A: LieSuperalgebra, v: np.ndarray) -> RestrictedCochain2:
        k = len(wedge2_basis(A.m, A.n))
        v = np.asarray(v, dtype=np.int64) % A.p
        return cls(v[:k].copy(), v[k:].copy())

    def omega(self, A: LieSuperalgebra, g: np.ndarray) -> int:
        return (tilde_eval(A, self.phi, g) + FrobeniusMap(self.frob, A.p)(g)) % A.p


@dataclass
class RestrictedCochain3:
    """``zeta`` over the 3-wedge basis; ``eta[a, j] = eta(e_a, e_j)`` for even ``j``."""

    zeta: np.ndarray
    eta: np.ndarray


def cochain_parity(A: LieSuperalgebra, z: RestrictedCochain2) -> int | None:
    """Parity of a restricted 2-cochain (0 for the zero cochain, None if inhomogeneous)."""
    par = parities2(A)
    support = set(par[np.nonzero(np.asarray(z.phi) % A.p)[0]].tolist())
    if np.any(np.asarray(z.frob) % A.p):
        support.add(0)
    if len(support) > 1:
        return None
    return support.pop() if support else 0


# compatible maps ----------------------------------------------------------

def _pair_functional(A: LieSuperalgebra, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Vector ``w`` with ``phi(u, v) = w @ phi`` for every 2-cochain phi."""
    return np.einsum("a,bac,c->b", u, form_tensor(A), v) % A.p


def correction_functional(A: LieSuperalgebra, g: np.ndarray, h: np.ndarray) -> np.ndarray:
    """Functional of phi giving the correction term in omega(g + h) - omega(g) - omega(h).

    Sums ``phi([g_1, ..., g_{p-1}] ^ g_p) / #(g)`` over sequences in {g, h}
    with ``g_1 = g`` and ``g_2 = h``.
    """
    p = A.p
    k = len(wedge2_basis(A.m, A.n))
    out = np.zeros(k, dtype=np.int64)
    if not (np.any(g % p) and np.any(h % p)):
        return out
    for tail in product((0, 1), repeat=p - 2):
        seq = [g, h] + [g if t == 0 else h for t in tail]
        count_g = 1 + tail.count(0)
        inner = A.n_fold_bracket(*seq[: p - 1])
        if not inner.any():
            continue
        out = out + linalg.inv(count_g, p) * _pair_functional(A, inner, seq[p - 1])
    return out % p


def tilde_functional(A: LieSuperalgebra, g: np.ndarray) -> np.ndarray:
    """Functional ``w`` with ``tilde(phi)(g) = w @ phi``.

    ``tilde(phi)`` vanishes on the even basis and is built by peeling one
    basis term of ``g`` at a time with the compatibility rule.
    """
    g = _require_even(A, g)
    k = len(wedge2_basis(A.m, A.n))
    out = np.zeros(k, dtype=np.int64)
    acc = np.zeros(A.dim, dtype=np.int64)
    for i in range(A.m):
        if g[i] == 0:
            continue
        term = np.zeros(A.dim, dtype=np.int64)
        term[i] = g[i]
        out = out + correction_functional(A, acc, term)
        acc = acc + term
    return out % A.p


def tilde_eval(A: LieSuperalgebra, phi: np.ndarray, g: np.ndarray) -> int:
    return int(tilde_functional(A, g) @ np.asarray(phi, dtype=np.int64) % A.p)


def is_compatible(A: LieSuperalgebra, phi: np.ndarray, omega, samples) -> bool:
    """Check ``omega`` against the compatibility rule on the given ``(g, h)`` pairs and scalars."""
    p = A.p
    phi = np.asarray(phi, dtype=np.int64)
    for g, h in samples:
        corr = int(correction_functional(A, g, h) @ phi % p)
        if (omega(g + h) - omega(g) - omega(h) - corr) % p:
            return False
        for a in range(p):
            if (omega(a * g % p) - pow(a, p, p) * omega(g)) % p:
                return False
    return True


# ind maps and restricted differentials -------------------------------------

def ind1(P: POperator, psi: np.ndarray) -> np.ndarray:
    """Values ``psi(e_i^{[p]})`` on the even basis."""
    return P.images @ np.asarray(psi, dtype=np.int64) % P.p


def ind1_eval(P: POperator, psi: np.ndarray, g: np.ndarray) -> int:
    return int(np.asarray(psi, dtype=np.int64) @ p_power(P, g) % P.p)


def _power_chain(A: LieSuperalgebra, g: np.ndarray, h: np.ndarray) -> np.ndarray:
    # [g, h, ..., h] with p-1 copies of h
    return A.n_fold_bracket(g, *([h] * (A.p - 1)))


def ind2(P: POperator, phi: np.ndarray, g: np.ndarray, h: np.ndarray, omega=None) -> int:
    """``phi(g ^ h^{[p]}) - phi([g, h, ..., h] ^ h)``; ``omega`` does not enter the value."""
    A = P.algebra
    h = _require_even(A, h)
    first = eval2(A, phi, g, p_power(P, h))
    second = eval2(A, phi, _power_chain(A, np.asarray(g, dtype=np.int64), h), h)
    return (first - second) % A.p


def ind2_matrix(P: POperator) -> np.ndarray:
    """Rows indexed by (a, j), a over the full basis, j over the even basis."""
    A = P.algebra
    cache = _cache(A)
    key = ("ind2", P.images.tobytes())
    if key not in cache:
        rows = []
        for a, j in product(range(A.dim), range(A.m)):
            ea, ej = A.basis(a), A.basis(j)
            rows.append(_pair_functional(A, ea, P.images[j]) - _pair_functional(A, _power_chain(A, ea, ej), ej))
        k = len(wedge2_basis(A.m, A.n))
        cache[key] = np.array(rows, dtype=np.int64).reshape(len(rows), k) % A.p
    return cache[key]


def d1_res_matrix(P: POperator) -> np.ndarray:
    return np.vstack([d1_matrix(P.algebra), P.images]) % P.p


def d1_res(P: POperator, psi: np.ndarray) -> RestrictedCochain2:
    psi = np.asarray(psi, dtype=np.int64)
    return RestrictedCochain2(d1_matrix(P.algebra) @ psi % P.p, ind1(P, psi))


def d2_res(P: POperator, z: RestrictedCochain2) -> RestrictedCochain3:
    A = P.algebra
    phi = np.asarray(z.phi, dtype=np.int64)
    eta = (ind2_matrix(P) @ phi % A.p).reshape(A.dim, A.m)
    return RestrictedCochain3(d2_matrix(A) @ phi % A.p, eta)


def restricted_cocycle_conditions(P: POperator) -> np.ndarray:
    """Stacked linear conditions on phi: d^2 phi = 0 and ind^2 phi = 0 on basis pairs."""
    return np.vstack([d2_matrix(P.algebra), ind2_matrix(P)])


def is_restricted_cocycle(P: POperator, z: RestrictedCochain2) -> tuple[bool, str | None]:
    A = P.algebra
    phi = np.asarray(z.phi, dtype=np.int64)
    if np.any(d2_matrix(A) @ phi % A.p):
        return False, "d2(phi) != 0"
    if np.any(ind2_matrix(P) @ phi % A.p):
        return False, "ind2(phi) != 0"
    return True, None


def _res_dim(A: LieSuperalgebra) -> int:
    return len(wedge2_basis(A.m, A.n)) + A.m


def d2_res_kernel(P: POperator) -> dict[int, np.ndarray]:
    """Basis of Z^2_res per parity, as full C^2_res coordinate rows."""
    A, p = P.algebra, P.p
    k = len(wedge2_basis(A.m, A.n))
    dim = k + A.m
    C = restricted_cocycle_conditions(P)
    par = parities2(A)
    out = {}
    for parity in (0, 1):
        idx = np.nonzero(par == parity)[0]
        K = linalg.kernel_basis(C[:, idx], p)
        rows = np.zeros((K.shape[0], dim), dtype=np.int64)
        rows[:, idx] = K
        if parity == 0:
            frob = np.zeros((A.m, dim), dtype=np.int64)
            frob[:, k:] = np.eye(A.m, dtype=np.int64)
            rows = np.vstack([rows, frob])
        out[parity] = rows
    return out


def restricted_coboundaries(P: POperator) -> dict[int, np.ndarray]:
    """Spanning set of B^2_res per parity."""
    A = P.algebra
    M = d1_res_matrix(P)
    return {parity: M[:, np.nonzero(A.parities == parity)[0]].T.copy() for parity in (0, 1)}


def _prefer_order(A: LieSuperalgebra) -> list[int]:
    # Frobenius coordinates first so the representatives (0, bar e^i) survive
    k = len(wedge2_basis(A.m, A.n))
    return list(range(k, k + A.m)) + list(range(k))


def h1_res(P: POperator) -> CohomologyReport:
    """Dual of g / ([g, g] + span of the [p]-images), split by parity."""
    A, p = P.algebra, P.p
    brackets = A.constants.reshape(A.dim * A.dim, A.dim)
    S = np.vstack([brackets, P.images])
    reps = {}
    for parity in (0, 1):
        idx = np.nonzero(A.parities == parity)[0]
        K = linalg.kernel_basis(S[:, idx], p)
        full = np.zeros((K.shape[0], A.dim), dtype=np.int64)
        full[:, idx] = K
        reps[parity] = full
    return CohomologyReport(1, True, p, (len(reps[0]), len(reps[1])), reps, cochain_labels(A, 1))


def h2_res(P: POperator) -> CohomologyReport:
    A, p = P.algebra, P.p
    Z = d2_res_kernel(P)
    B = restricted_coboundaries(P)
    dim = _res_dim(A)
    reps = {parity: representatives(B[parity], Z[parity], p, dim, _prefer_order(A)) for parity in (0, 1)}
    return CohomologyReport(2, True, p, (len(reps[0]), len(reps[1])), reps, cochain_labels(A, 2, restricted=True))


# six-term exact sequence ----------------------------------------------------

@dataclass
class SixTermReport:
    dims: dict[str, int]
    ranks: dict[str, int]
    exact_at: dict[str, bool]
    iota1_injective: bool
    maps: dict[str, np.ndarray] = field(default_factory=dict, repr=False)

    @property
    def exact(self) -> bool:
        return all(self.exact_at.values())

    @property
    def D_zero(self) -> bool:
        return self.ranks["D"] == 0

    @property
    def H_zero(self) -> bool:
        return self.ranks["H"] == 0

    def as_dict(self) -> dict:
        return {
            "dims": dict(self.dims),
            "ranks": dict(self.ranks),
            "exact_at": dict(self.exact_at),
            "iota1_injective": self.iota1_injective,
            "exact": self.exact,
            "D_zero": self.D_zero,
            "H_zero": self.H_zero,
        }


def _columns(cols: list[np.ndarray], target_dim: int) -> np.ndarray:
    """Map matrix whose j-th column is ``cols[j]``."""
    M = np.zeros((target_dim, len(cols)), dtype=np.int64)
    for j, col in enumerate(cols):
        M[:, j] = col
    return M


def _both(report: CohomologyReport, dim: int) -> np.ndarray:
    return linalg.stack([report.representatives[0], report.representatives[1]], dim)


def _coords_or_fail(v, reps, sub, p, what) -> np.ndarray:
    x = linalg.class_coordinates(v, reps, sub, p)
    if x is None:
        raise InternalConsistencyError(f"{what}: image does not lie in the expected cocycle space")
    return x


def h_map_functionals(P: POperator, phi: np.ndarray) -> np.ndarray:
    """Row i is the functional ``h -> phi(e_i ^ (ad e_i)^{p-1} h) - phi(e_i^{[p]} ^ h)``."""
    A, p = P.algebra, P.p
    Phi = form_matrix(A, phi)
    rows = []
    for i in range(A.m):
        Mi = linalg.matpow(A.basis_ad[i], p - 1, p)
        rows.append(A.basis(i) @ Phi @ Mi - P.images[i] @ Phi)
    return np.array(rows, dtype=np.int64).reshape(A.m, A.dim) % p


def sixterm_verify(P: POperator) -> SixTermReport:
    """Materialize the six-term sequence as matrices and test exactness at each interior node.

    Map matrices have one column per source basis vector.
    """
    A, p, m, N = P.algebra, P.p, P.algebra.m, P.algebra.dim
    k = len(wedge2_basis(A.m, A.n))
    rdim = k + m

    H1res = _both(h1_res(P), N)
    Z1 = linalg.stack([cocycles(A, 1, 0), cocycles(A, 1, 1)], N)  # H^1 = Z^1
    H2res_rep = _both(h2_res(P), rdim)
    B2res = linalg.stack([*restricted_coboundaries(P).values()], rdim)
    H2_rep = _both(_ordinary_h2(A), k)
    B2 = linalg.stack([coboundaries(A, 0), coboundaries(A, 1)], k)
    none = np.zeros((0, N), dtype=np.int64)

    def coords_h1(v, what):
        return _coords_or_fail(v, Z1, none, p, what)

    iota1 = _columns([coords_h1(v, "iota1") for v in H1res], len(Z1))
    D = _columns([ind1(P, psi) for psi in Z1], m)
    iota2_cols = []
    for i in range(m):
        v = np.zeros(rdim, dtype=np.int64)
        v[k + i] = 1
        iota2_cols.append(_coords_or_fail(v, H2res_rep, B2res, p, "iota2"))
    iota2 = _columns(iota2_cols, len(H2res_rep))
    pi = _columns([_coords_or_fail(z[:k], H2_rep, B2, p, "pi") for z in H2res_rep], len(H2_rep))

    def h_coords(phi):
        F = h_map_functionals(P, phi)
        return np.concatenate([coords_h1(f, "H") for f in F]) if m else np.zeros(0, dtype=np.int64)

    for b in B2:
        if np.any(h_map_functionals(P, b)):
            raise InternalConsistencyError("H is not constant on cohomology classes")
    Hm = _columns([h_coords(phi) for phi in H2_rep], m * len(Z1))

    iota1, D, iota2, pi, Hm = (M % p for M in (iota1, D, iota2, pi, Hm))
    dims = {
        "H1_res": len(H1res),
        "H1": len(Z1),
        "Hom_Fr": m,
        "H2_res": len(H2res_rep),
        "H2": len(H2_rep),
        "Hom_Fr_H1": m * len(Z1),
    }
    ranks = {name: linalg.rank(M, p) for name, M in (("iota1", iota1), ("D", D), ("iota2", iota2), ("pi", pi), ("H", Hm))}

    maps = {"iota1": iota1, "D": D, "iota2": iota2, "pi": pi, "H": Hm}

    def exact(into: str, out: str, node: str) -> bool:
        composite = (maps[out] @ maps[into]) % p
        return not composite.any() and ranks[into] + ranks[out] == dims[node]

    exact_at = {
        "H1": exact("iota1", "D", "H1"),
        "Hom_Fr": exact("D", "iota2", "Hom_Fr"),
        "H2_res": exact("iota2", "pi", "H2_res"),
        "H2": exact("pi", "H", "H2"),
    }
    return SixTermReport(
        dims=dims,
        ranks=ranks,
        exact_at=exact_at,
        iota1_injective=ranks["iota1"] == dims["H1_res"],
        maps=maps,
    )


def _ordinary_h2(A: LieSuperalgebra) -> CohomologyReport:
    from .cochain import cohomology

    return cohomology(A, 2)


# Lemma-style regression guard -----------------------------------------------

def lemma_swap_property(P: POperator, psi: np.ndarray, frob: np.ndarray | None = None) -> bool:
    """For ``phi = d^1 psi``: ``psi o [p]`` is phi-compatible, and ind^2 agrees whichever compatible omega is paired with phi."""
    A, p = P.algebra, P.p
    psi = np.asarray(psi, dtype=np.int64) % p
    phi = d1_matrix(A) @ psi % p
    omega_ind = lambda g: ind1_eval(P, psi, g)  # noqa: E731
    samples = []
    for i, j in product(range(A.m), repeat=2):
        if i != j:
            samples.append((A.basis(i), A.basis(j)))
            samples.append(((p - 1) * A.basis(i) % p, (A.basis(i) + 2 * A.basis(j)) % p))
    if not is_compatible(A, phi, omega_ind, samples):
        return False
    frob = np.zeros(A.m, dtype=np.int64) if frob is None else np.asarray(frob, dtype=np.int64)
    other = RestrictedCochain2(phi, frob)
    for a, j in product(range(A.dim), range(A.m)):
        g, h = A.basis(a), A.basis(j)
        if ind2(P, phi, g, h, omega=other.omega) != ind2(P, phi, g, h, omega=omega_ind):
            return False
    return True
