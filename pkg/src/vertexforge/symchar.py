"""Symmetric-group characters and Littlewood-Richardson coefficients.

Characters use the Murnaghan-Nakayama rule on beta-sets (abacus form).
LR coefficients count LR skew tableaux directly.  Both are memoised per
process; ``functools.lru_cache`` is thread-safe, and a racing duplicate
computation produces the same integer.
"""

from __future__ import annotations

import os
from functools import lru_cache

from .partitions import Partition, partitions

_CACHE_LIMIT = int(os.environ.get("VERTEXFORGE_CACHE_LIMIT", "0")) or None


def character(nu: Partition, mu: Partition) -> int:
    """Value of the irreducible character chi_nu on the class of cycle type mu."""
    nu, mu = Partition(nu), Partition(mu)
    if nu.size != mu.size:
        raise ValueError(f"character size mismatch: |{nu}| != |{mu}|")
    return _mn(tuple(nu), tuple(mu))


@lru_cache(maxsize=_CACHE_LIMIT)
def _mn(shape: tuple[int, ...], cycles: tuple[int, ...]) -> int:
    if not cycles:
        return 1
    k, rest = cycles[0], cycles[1:]
    n = len(shape)
    beta = [shape[i] + n - 1 - i for i in range(n)]
    occupied = set(beta)
    total = 0
    for b in beta:
        target = b - k
        if target < 0 or target in occupied:
            continue
        # leg length = beads strictly between target and b
        height = sum(1 for c in beta if target < c < b)
        moved = sorted((target if c == b else c for c in beta), reverse=True)
        m = len(moved)
        smaller = tuple(p for p in (moved[i] - (m - 1 - i) for i in range(m)) if p > 0)
        total += (-1) ** height * _mn(smaller, rest)
    return total


def character_table(d: int) -> dict[tuple[Partition, Partition], int]:
    """Full table ``{(nu, mu): chi_nu(mu)}`` for S_d."""
    return {(nu, mu): character(nu, mu) for nu in partitions(d) for mu in partitions(d)}


def lr_coefficient(eta: Partition, mu: Partition, nu: Partition) -> int:
    """Multiplicity c^eta_{mu nu} of s_eta in s_mu * s_nu."""
    eta, mu, nu = Partition(eta), Partition(mu), Partition(nu)
    if eta.size != mu.size + nu.size:
        return 0
    # c is symmetric in (mu, nu); fill the smaller content
    if nu.size > mu.size:
        mu, nu = nu, mu
    return _lr(tuple(eta), tuple(mu), tuple(nu))


@lru_cache(maxsize=_CACHE_LIMIT)
def _lr(eta: tuple[int, ...], mu: tuple[int, ...], nu: tuple[int, ...]) -> int:
    if len(mu) > len(eta) or any(m > e for m, e in zip(mu, eta)):
        return 0
    if not nu:
        return 1 if eta == mu else 0
    rows = len(eta)
    inner = list(mu) + [0] * (rows - len(mu))
    cells = [(i, j) for i in range(rows) for j in range(eta[i] - 1, inner[i] - 1, -1)]
    filling: dict[tuple[int, int], int] = {}
    counts = [0] * (len(nu) + 1)
    limit = len(nu)

    def place(idx: int) -> int:
        if idx == len(cells):
            return 1
        i, j = cells[idx]
        # row weakly increasing left-to-right: we fill right-to-left
        hi = filling.get((i, j + 1), limit)
        lo = filling.get((i - 1, j), 0) + 1 if (i - 1, j) in filling else 1
        found = 0
        for k in range(lo, hi + 1):
            if counts[k] >= nu[k - 1]:
                continue
            if k > 1 and counts[k] + 1 > counts[k - 1]:
                continue
            counts[k] += 1
            filling[(i, j)] = k
            found += place(idx + 1)
            del filling[(i, j)]
            counts[k] -= 1
        return found

    return place(0)


def lr_double(mu1: Partition, mu3: Partition, rho1: Partition, rho3: Partition) -> int:
    """sum_eta c^{mu1}_{eta rho1} c^{mu3^t}_{eta rho3^t}."""
    mu1, mu3, rho1, rho3 = (Partition(p) for p in (mu1, mu3, rho1, rho3))
    k = mu1.size - rho1.size
    if k < 0 or k != mu3.size - rho3.size:
        return 0
    mu3t, rho3t = mu3.transpose(), rho3.transpose()
    return sum(
        lr_coefficient(mu1, eta, rho1) * lr_coefficient(mu3t, eta, rho3t) for eta in partitions(k)
    )
