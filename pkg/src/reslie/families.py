"""The two restricted Heisenberg families and their closed-form dimensions."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .linalg import MalformedInputError, check_modulus
from .restricted import POperator
from .superalgebra import LieSuperalgebra, abelian


@dataclass(frozen=True)
class FamilyMember:
    """A constructed family algebra together with its [p]-operator."""

    kind: str  # "heisenberg-even" or "heisenberg-odd"
    m: int | None
    n: int
    p: int
    lam: tuple[int, ...] | None
    algebra: LieSuperalgebra
    p_operator: POperator

    @property
    def label(self) -> str:
        if self.kind == "heisenberg-even":
            return f"h^{list(self.lam)}_{{{self.m},{self.n}}}"
        return f"ba^0_{self.n}"


def heisenberg_even(m: int, n: int, p: int, lam: Sequence[int] | None = None) -> FamilyMember:
    """Even-center Heisenberg superalgebra with the [p]-map ``x_i -> lam_i x_{2m+1}``.

    Basis ``x1..x_{2m+1} | y1..yn`` with ``[x_i, x_{m+i}] = [y_j, y_j] = x_{2m+1}``.
    """
    p = check_modulus(p)
    if m < 1 or n < 1:
        raise MalformedInputError(f"need m, n >= 1, got m={m}, n={n}")
    lam = (0,) * (2 * m + 1) if lam is None else tuple(int(a) % p for a in lam)
    if len(lam) != 2 * m + 1:
        raise MalformedInputError(f"lambda must have length {2 * m + 1}, got {len(lam)}")
    even = [f"x{i}" for i in range(1, 2 * m + 2)]
    odd = [f"y{j}" for j in range(1, n + 1)]
    N = len(even) + len(odd)
    z = 2 * m
    c = np.zeros((N, N, N), dtype=np.int64)
    for i in range(m):
        c[i, m + i, z] = 1
        c[m + i, i, z] = -1
    for j in range(n):
        y = len(even) + j
        c[y, y, z] = 1
    A = LieSuperalgebra(even, odd, p, c)
    images = np.zeros((len(even), N), dtype=np.int64)
    images[:, z] = lam
    return FamilyMember("heisenberg-even", m, n, p, lam, A, POperator(A, images))


def heisenberg_odd(n: int, p: int) -> FamilyMember:
    """Odd-center Heisenberg superalgebra ``x1..xn | y1..y_{n+1}``, ``[x_i, y_i] = y_{n+1}``, with [p] = 0."""
    p = check_modulus(p)
    if n < 1:
        raise MalformedInputError(f"need n >= 1, got n={n}")
    even = [f"x{i}" for i in range(1, n + 1)]
    odd = [f"y{j}" for j in range(1, n + 2)]
    N = 2 * n + 1
    z = N - 1
    c = np.zeros((N, N, N), dtype=np.int64)
    for i in range(n):
        c[i, n + i, z] = 1
        c[n + i, i, z] = -1
    A = LieSuperalgebra(even, odd, p, c)
    return FamilyMember("heisenberg-odd", None, n, p, None, A, POperator.zero(A))


def two_dim_solvable(p: int) -> tuple[LieSuperalgebra, POperator]:
    """Even algebra ``[e1, e2] = e2`` with ``e1^{[p]} = e1``, ``e2^{[p]} = 0``."""
    c = np.zeros((2, 2, 2), dtype=np.int64)
    c[0, 1, 1] = 1
    c[1, 0, 1] = -1
    A = LieSuperalgebra(["e1", "e2"], [], p, c)
    return A, POperator(A, [[1, 0], [0, 0]])


def abelian_member(m: int, n: int, p: int, images=None) -> tuple[LieSuperalgebra, POperator]:
    A = abelian(m, n, p)
    P = POperator.zero(A) if images is None else POperator(A, images)
    return A, P


def random_lambda(m: int, p: int, seed: int) -> tuple[int, ...]:
    """Deterministic pseudorandom lambda: ``random.Random(seed).randrange(p)`` per coordinate."""
    rng = random.Random(seed)
    return tuple(rng.randrange(p) for _ in range(2 * m + 1))


def expected_sdim_h2res_even_family(m: int, n: int) -> tuple[int, int]:
    return 2 * m * m + m + (n * n + n) // 2, 2 * m * n


def expected_sdim_h2res_odd_family(n: int) -> tuple[int, int]:
    delta = 1 if n == 1 else 0
    return n * n + n, n * n - 1 + delta


def expected_sdim_h2_even_family(m: int, n: int) -> tuple[int, int]:
    return 2 * m * m - m + (n * n + n) // 2 - 1, 2 * m * n


def expected_sdim_h2_odd_family(n: int) -> tuple[int, int]:
    delta = 1 if n == 1 else 0
    return n * n, n * n - 1 + delta


def expected_sdim_h1_even_family(m: int, n: int) -> tuple[int, int]:
    return 2 * m, n


def expected_sdim_h1_odd_family(n: int) -> tuple[int, int]:
    return n, n


def corpus(p: int) -> list[tuple[str, LieSuperalgebra, POperator]]:
    """Small test corpus: family members, abelian (k|l) for k, l <= 2 and the 2-dim solvable algebra."""
    out = []
    for m in (1, 2):
        for n in (1, 2, 3):
            for lam in (None, random_lambda(m, p, seed=0)):
                F = heisenberg_even(m, n, p, lam)
                out.append((F.label, F.algebra, F.p_operator))
    for n in (1, 2, 3, 4):
        F = heisenberg_odd(n, p)
        out.append((F.label, F.algebra, F.p_operator))
    for k in range(3):
        for l in range(3):
            if k or l:
                A, P = abelian_member(k, l, p)
                out.append((f"abelian({k}|{l})", A, P))
    A, P = two_dim_solvable(p)
    out.append(("solvable2", A, P))
    return out
