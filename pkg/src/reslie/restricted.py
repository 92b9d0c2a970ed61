"""[p]-operators on the even part of a Lie superalgebra."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Sequence

import numpy as np

from . import linalg
from .linalg import MalformedInputError
from .superalgebra import LieSuperalgebra


class OddElementError(ValueError):
    """An even element was required."""


def _require_even(A: LieSuperalgebra, g: np.ndarray) -> np.ndarray:
    g = np.asarray(g, dtype=np.int64) % A.p
    if g.shape != (A.dim,):
        raise MalformedInputError(f"element has wrong length {g.shape}, expected {A.dim}")
    if not A.is_even(g):
        raise OddElementError("expected an element of the even part")
    return g


class POperator:
    """A [p]-map stored by the images of the even basis vectors.

    ``images[i]`` is ``e_i^{[p]}`` as a full coordinate vector. Values on
    other even elements follow from semilinearity and the additivity rule
    with the ``s_i`` correction terms.
    """

    def __init__(self, algebra: LieSuperalgebra, images):
        self.algebra = algebra
        imgs = np.asarray(images, dtype=np.int64)
        if imgs.size != algebra.m * algebra.dim:
            raise MalformedInputError(f"expected {algebra.m} images of length {algebra.dim}")
        imgs = imgs.reshape(algebra.m, algebra.dim) % algebra.p
        if np.any(imgs[:, algebra.m:]):
            raise MalformedInputError("[p]-images must lie in the even part")
        imgs.setflags(write=False)
        self.images = imgs

    @classmethod
    def zero(cls, algebra: LieSuperalgebra) -> POperator:
        return cls(algebra, np.zeros((algebra.m, algebra.dim), dtype=np.int64))

    @property
    def p(self) -> int:
        return self.algebra.p

    def __call__(self, g: np.ndarray) -> np.ndarray:
        return p_power(self, g)

    def __repr__(self) -> str:
        return f"POperator({self.algebra!r})"


def s_coefficients(A: LieSuperalgebra, g: np.ndarray, h: np.ndarray) -> list[np.ndarray]:
    """``[s_1, ..., s_{p-1}]`` where ``i s_i`` is the t^{i-1} coefficient of ``(ad(t g + h))^{p-1}(g)``."""
    g = _require_even(A, g)
    h = _require_even(A, h)
    p = A.p
    # poly[k] is the coefficient of t^k
    poly = [g]
    for _ in range(p - 1):
        nxt = [np.zeros(A.dim, dtype=np.int64) for _ in range(len(poly) + 1)]
        for k, coeff in enumerate(poly):
            if not coeff.any():
                continue
            nxt[k] = (nxt[k] + A.bracket(h, coeff)) % p
            nxt[k + 1] = (nxt[k + 1] + A.bracket(g, coeff)) % p
        poly = nxt
    return [(poly[i - 1] * linalg.inv(i, p)) % p for i in range(1, p)]


def p_power(P: POperator, g: np.ndarray, order: Sequence[int] | None = None) -> np.ndarray:
    """Evaluate ``g^{[p]}`` by peeling off one basis term at a time.

    ``order`` is the sequence of even basis indices to peel (ascending by default).
    """
    A, p = P.algebra, P.p
    g = _require_even(A, g)
    order = range(A.m) if order is None else order
    acc = np.zeros(A.dim, dtype=np.int64)
    value = np.zeros(A.dim, dtype=np.int64)
    for i in order:
        a = int(g[i])
        if a == 0:
            continue
        term = np.zeros(A.dim, dtype=np.int64)
        term[i] = a
        value = value + pow(a, p, p) * P.images[i]
        if acc.any():
            for s in s_coefficients(A, acc, term):
                value = value + s
        acc = acc + term
    return value % p


@dataclass
class RestrictednessReport:
    axiom1_ok: bool = True
    axiom2_ok: bool = True
    axiom3_ok: bool = True
    odd_module_ok: bool = True
    counterexamples: dict[str, tuple] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.axiom1_ok and self.axiom2_ok and self.axiom3_ok and self.odd_module_ok

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "semilinearity": self.axiom1_ok,
            "additivity": self.axiom2_ok,
            "ad_power": self.axiom3_ok,
            "odd_module": self.odd_module_ok,
            "counterexamples": {k: [int(x) for x in v] for k, v in sorted(self.counterexamples.items())},
        }


def validate_restricted(P: POperator) -> RestrictednessReport:
    """Check the restricted axioms on the even part and the restricted-module condition on the odd part.

    Semilinearity is checked on basis vectors and sums of two basis vectors
    for the scalars {0, 1, 2, p-1}; additivity on all ordered pairs of scaled
    even basis vectors (the evaluator peels in ascending order, so the
    descending pairs are the informative ones); ``(ad e_i)^p = ad e_i^{[p]}``
    on the even block and on the odd block separately.
    """
    A, p, m = P.algebra, P.p, P.algebra.m
    rep = RestrictednessReport()
    scalars = sorted({0, 1, 2 % p, p - 1})

    probes = [(i,) for i in range(m)] + list(combinations(range(m), 2))
    for idx, a in product(probes, scalars):
        g = np.zeros(A.dim, dtype=np.int64)
        g[list(idx)] = 1
        lhs = p_power(P, a * g)
        rhs = pow(a, p, p) * p_power(P, g) % p
        if np.any((lhs - rhs) % p):
            rep.axiom1_ok = False
            rep.counterexamples["semilinearity"] = (*idx, a)
            break

    for i, j in product(range(m), repeat=2):
        if i == j:
            continue
        done = False
        for a, b in product([1, p - 1], [1, 2 % p]):
            g, h = a * A.basis(i), b * A.basis(j)
            rhs = p_power(P, g) + p_power(P, h) + sum(s_coefficients(A, g, h))
            if np.any((p_power(P, g + h) - rhs) % p):
                rep.axiom2_ok = False
                rep.counterexamples["additivity"] = (i, j, a, b)
                done = True
                break
        if done:
            break

    for i in range(m):
        lhs = linalg.matpow(A.basis_ad[i], p, p)
        rhs = A.ad_matrix(P.images[i])
        diff = (lhs - rhs) % p
        if rep.axiom3_ok and np.any(diff[:m, :m]):
            rep.axiom3_ok = False
            rep.counterexamples["ad_power"] = (i,)
        if rep.odd_module_ok and np.any(diff[m:, m:]):
            rep.odd_module_ok = False
            rep.counterexamples["odd_module"] = (i,)
    return rep


@dataclass
class JacobsonResult:
    restrictable: bool
    witnesses: list[np.ndarray]
    failing_index: int | None = None

    def p_operator(self, A: LieSuperalgebra) -> POperator:
        if not self.restrictable:
            raise ValueError("algebra is not restrictable")
        return POperator(A, np.array(self.witnesses).reshape(A.m, A.dim))


def jacobson_check(A: LieSuperalgebra) -> JacobsonResult:
    """Decide restrictability: each ``(ad e_i)^p`` must equal ``ad z_i`` for an even ``z_i``."""
    p, m, N = A.p, A.m, A.dim
    system = A.basis_ad[:m].reshape(m, N * N).T
    witnesses = []
    for i in range(m):
        target = linalg.matpow(A.basis_ad[i], p, p).reshape(-1)
        z = linalg.solve(system, target, p)
        if z is None:
            return JacobsonResult(False, witnesses, i)
        full = np.zeros(N, dtype=np.int64)
        full[:m] = z
        witnesses.append(full)
    return JacobsonResult(True, witnesses)
