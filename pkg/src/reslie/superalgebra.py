"""Finite-dimensional Lie superalgebras given by structure constants over F_p."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations_with_replacement, permutations, product
from typing import Sequence

import numpy as np

from .linalg import MalformedInputError, check_modulus


class LieSuperalgebra:
    """Lie superalgebra with ordered basis ``even_names | odd_names``.

    ``constants[i, j, k]`` is the coefficient of ``e_k`` in ``[e_i, e_j]``.
    All ordered pairs are stored; nothing is symmetrized on input, so a bad
    table is reported by :func:`validate_superalgebra` rather than repaired.
    Elements are int64 coordinate vectors of length ``dim``.
    """

    def __init__(self, even_names: Sequence[str], odd_names: Sequence[str], p: int, constants):
        self.p = check_modulus(p)
        self.even_names = tuple(even_names)
        self.odd_names = tuple(odd_names)
        names = self.names
        if len(set(names)) != len(names):
            raise MalformedInputError(f"basis labels are not unique: {names}")
        N = len(names)
        c = np.asarray(constants, dtype=np.int64)
        if c.shape != (N, N, N):
            raise MalformedInputError(f"constants must have shape {(N, N, N)}, got {c.shape}")
        self.constants = c % self.p
        self.constants.setflags(write=False)

    @property
    def names(self) -> tuple[str, ...]:
        return self.even_names + self.odd_names

    @property
    def m(self) -> int:
        return len(self.even_names)

    @property
    def n(self) -> int:
        return len(self.odd_names)

    @property
    def dim(self) -> int:
        return self.m + self.n

    @cached_property
    def parities(self) -> np.ndarray:
        par = np.array([0] * self.m + [1] * self.n, dtype=np.int64)
        par.setflags(write=False)
        return par

    def parity(self, i: int) -> int:
        return int(self.parities[i])

    def index(self, label: str) -> int:
        try:
            return self.names.index(label)
        except ValueError:
            raise KeyError(f"unknown basis label {label!r}") from None

    def basis(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def element(self, coeffs: dict[str, int] | None = None, **kw: int) -> np.ndarray:
        """Build an element from ``{label: coefficient}``."""
        v = np.zeros(self.dim, dtype=np.int64)
        for label, a in {**(coeffs or {}), **kw}.items():
            v[self.index(label)] += a
        return v % self.p

    def element_parity(self, g: np.ndarray) -> int | None:
        """0 or 1 for homogeneous nonzero elements, None if mixed (0 counts as even)."""
        support = np.nonzero(np.asarray(g) % self.p)[0]
        if support.size == 0:
            return 0
        pars = set(self.parities[support].tolist())
        return pars.pop() if len(pars) == 1 else None

    def is_even(self, g: np.ndarray) -> bool:
        return not np.any(np.asarray(g)[self.m:] % self.p)

    def _check(self, g: np.ndarray) -> np.ndarray:
        g = np.asarray(g, dtype=np.int64)
        if g.shape != (self.dim,):
            raise MalformedInputError(f"element has {g.shape[0] if g.ndim else 0} coordinates, expected {self.dim}")
        return g

    def bracket(self, g: np.ndarray, h: np.ndarray) -> np.ndarray:
        g, h = self._check(g), self._check(h)
        return np.einsum("i,j,ijk->k", g, h, self.constants) % self.p

    def n_fold_bracket(self, *gs: np.ndarray) -> np.ndarray:
        """Left-nested bracket ``[[...[[g1, g2], g3], ...], gj]``."""
        if not gs:
            raise ValueError("n_fold_bracket needs at least one argument")
        acc = self._check(gs[0]) % self.p
        for g in gs[1:]:
            acc = self.bracket(acc, g)
        return acc

    def ad_matrix(self, g: np.ndarray) -> np.ndarray:
        """Matrix of ``h -> [g, h]``; column j is the image of ``e_j``."""
        g = self._check(g)
        return np.einsum("i,ijk->kj", g, self.constants) % self.p

    @cached_property
    def basis_ad(self) -> np.ndarray:
        """``basis_ad[i]`` is the matrix of ad e_i."""
        out = np.transpose(self.constants, (0, 2, 1)).copy()
        out.setflags(write=False)
        return out

    def __repr__(self) -> str:
        return f"LieSuperalgebra({' '.join(self.even_names)} | {' '.join(self.odd_names)}, p={self.p})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieSuperalgebra):
            return NotImplemented
        return (
            self.p == other.p
            and self.even_names == other.even_names
            and self.odd_names == other.odd_names
            and np.array_equal(self.constants, other.constants)
        )

    __hash__ = None  # type: ignore[assignment]


def from_brackets(even_names, odd_names, p: int, brackets: dict[tuple[str, str], dict[str, int]]) -> LieSuperalgebra:
    """Build an algebra from listed brackets ``{(a, b): {label: coeff}}``.

    An unlisted pair whose mirror is listed gets the super skew-symmetric
    value; pairs listed in both orders are kept exactly as given.
    """
    names = tuple(even_names) + tuple(odd_names)
    N = len(names)
    pos = {name: i for i, name in enumerate(names)}
    m = len(even_names)
    c = np.zeros((N, N, N), dtype=np.int64)
    for (a, b), value in brackets.items():
        for label in (a, b, *value):
            if label not in pos:
                raise MalformedInputError(f"unknown basis label {label!r}")
        i, j = pos[a], pos[b]
        for label, coeff in value.items():
            c[i, j, pos[label]] += coeff
        if (b, a) not in brackets and i != j:
            sign = -1 if (i >= m and j >= m) else 1
            for label, coeff in value.items():
                c[j, i, pos[label]] -= sign * coeff
    return LieSuperalgebra(even_names, odd_names, p, c)


def abelian(m: int, n: int, p: int) -> LieSuperalgebra:
    even = [f"e{i + 1}" for i in range(m)]
    odd = [f"f{i + 1}" for i in range(n)]
    return LieSuperalgebra(even, odd, p, np.zeros((m + n,) * 3, dtype=np.int64))


@dataclass
class ValidationReport:
    skew_ok: bool = True
    grading_ok: bool = True
    jacobi_ok: bool = True
    cubic_ok: bool = True
    counterexamples: dict[str, tuple[int, ...]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.skew_ok and self.grading_ok and self.jacobi_ok and self.cubic_ok

    def as_dict(self, names: Sequence[str] | None = None) -> dict:
        def lab(t):
            return [names[i] for i in t] if names else list(t)

        return {
            "ok": self.ok,
            "skew": self.skew_ok,
            "grading": self.grading_ok,
            "jacobi": self.jacobi_ok,
            "odd_cubic": self.cubic_ok,
            "counterexamples": {k: lab(v) for k, v in sorted(self.counterexamples.items())},
        }


def validate_superalgebra(A: LieSuperalgebra) -> ValidationReport:
    """Check super skew-symmetry, parity grading, super Jacobi and, for p = 3, [g,[g,g]] = 0 on odd g.

    Failures are recorded with the first violating basis pair or triple.
    """
    rep = ValidationReport()
    c, p, par, N = A.constants, A.p, A.parities, A.dim

    for i, j in product(range(N), repeat=2):
        sign = -1 if (par[i] and par[j]) else 1
        if np.any((c[j, i] + sign * c[i, j]) % p):
            rep.skew_ok = False
            rep.counterexamples["skew"] = (i, j)
            break

    for i, j in product(range(N), repeat=2):
        wrong = par != (par[i] + par[j]) % 2
        if np.any(c[i, j][wrong]):
            rep.grading_ok = False
            rep.counterexamples["grading"] = (i, j)
            break

    basis = [A.basis(i) for i in range(N)]
    for u, v, w in product(range(N), repeat=3):
        # [u,[v,w]] = [[u,v],w] + (-1)^{|u||v|} [v,[u,w]]
        lhs = A.bracket(basis[u], A.bracket(basis[v], basis[w]))
        sign = -1 if (par[u] and par[v]) else 1
        rhs = A.bracket(A.bracket(basis[u], basis[v]), basis[w]) + sign * A.bracket(basis[v], A.bracket(basis[u], basis[w]))
        if np.any((lhs - rhs) % p):
            rep.jacobi_ok = False
            rep.counterexamples["jacobi"] = (u, v, w)
            break

    if p == 3:
        odd = range(A.m, N)
        for triple in combinations_with_replacement(odd, 3):
            # coefficient of the monomial t_a t_b t_c in [g,[g,g]], g = sum t_i e_i
            total = np.zeros(N, dtype=np.int64)
            for a, b, cc in set(permutations(triple)):
                total += A.bracket(basis[a], A.bracket(basis[b], basis[cc]))
            if np.any(total % p):
                rep.cubic_ok = False
                rep.counterexamples["odd_cubic"] = tuple(triple)
                break
    return rep
