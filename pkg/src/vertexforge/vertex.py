"""The W family of vertex amplitudes and the character-sum expression W-tilde."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import DEFAULT_ROOT, ExactScalar, q_power
from .partitions import EMPTY, Partition, PartitionTriple, kappa, partitions, z
from .symchar import _CACHE_LIMIT, character, lr_coefficient, lr_double

R = DEFAULT_ROOT


@lru_cache(maxsize=None)
def bracket(m: int) -> ExactScalar:
    """[m] = q^(m/2) - q^(-m/2)."""
    return q_power(Fraction(m, 2), R) - q_power(Fraction(-m, 2), R)


@lru_cache(maxsize=_CACHE_LIMIT)
def _w_one(mu: Partition) -> ExactScalar:
    n = len(mu)
    num = ExactScalar.one(R)
    den = ExactScalar.one(R)
    for i in range(n):
        for j in range(i + 1, n):
            num = num * bracket(mu[i] - mu[j] + j - i)
            den = den * bracket(j - i)
    for i, part in enumerate(mu, start=1):
        for v in range(1, part + 1):
            den = den * bracket(v - i + n)
    return q_power(Fraction(kappa(mu), 4), R) * num / den


def w_one(mu) -> ExactScalar:
    return _w_one(Partition(mu))


@dataclass(frozen=True)
class ESeries:
    """Truncated expansion of E_mu(q, t) in t; ``coefficients[n]`` multiplies t**n."""

    mu: Partition
    coefficients: tuple[ExactScalar, ...]

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, n: int) -> ExactScalar:
        if n < 0:
            return ExactScalar.zero(R)
        return self.coefficients[n]


def _series_mul(a: list[ExactScalar], b: list[ExactScalar], order: int) -> list[ExactScalar]:
    out = [ExactScalar.zero(R) for _ in range(order + 1)]
    for i, ai in enumerate(a):
        if ai.is_zero():
            continue
        for j in range(order + 1 - i):
            if j < len(b) and not b[j].is_zero():
                out[i + j] = out[i + j] + ai * b[j]
    return out


@lru_cache(maxsize=_CACHE_LIMIT)
def _e_series(mu: Partition, order: int) -> tuple[ExactScalar, ...]:
    one = ExactScalar.one(R)
    # tail 1 + sum_n t^n / prod_{i<=n} (q^i - 1)
    tail = [one]
    acc = one
    for n in range(1, order + 1):
        acc = acc / (q_power(n, R) - 1)
        tail.append(acc)
    series = tail
    for j, part in enumerate(mu, start=1):
        # (1 + a t) / (1 + b t) = 1 + sum_{n>=1} (a - b)(-b)^{n-1} t^n
        a, b = q_power(part - j, R), q_power(-j, R)
        factor = [one]
        diff = a - b
        for n in range(1, order + 1):
            factor.append(diff)
            diff = diff * (-b)
        series = _series_mul(series, factor, order)
    return tuple(series)


def e_series(mu, order: int) -> ESeries:
    if order < 0:
        raise ValueError("truncation order must be nonnegative")
    mu = Partition(mu)
    return ESeries(mu, _e_series(mu, order))


def _determinant(matrix: list[list[ExactScalar]]) -> ExactScalar:
    m = [row[:] for row in matrix]
    n = len(m)
    det = ExactScalar.one(R)
    for col in range(n):
        pivot = next((r for r in range(col, n) if not m[r][col].is_zero()), None)
        if pivot is None:
            return ExactScalar.zero(R)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        p = m[col][col]
        det = det * p
        inv = p.inverse()
        for r in range(col + 1, n):
            if m[r][col].is_zero():
                continue
            f = m[r][col] * inv
            for c in range(col + 1, n):
                if not m[col][c].is_zero():
                    m[r][c] = m[r][c] - f * m[col][c]
    return det


@lru_cache(maxsize=_CACHE_LIMIT)
def _schur_of_e(nu: Partition, mu: Partition) -> ExactScalar:
    if not nu:
        return ExactScalar.one(R)
    e = e_series(mu, nu.size)
    lam = nu.transpose()
    n = len(lam)
    matrix = [[e[lam[i] - i + j] if lam[i] - i + j <= e.order else ExactScalar.zero(R)
               for j in range(n)] for i in range(n)]
    return _determinant(matrix)


def schur_of_e(nu, mu) -> ExactScalar:
    """s_nu on the alphabet with elementary generating function E_mu(q, t), by dual Jacobi-Trudi."""
    return _schur_of_e(Partition(nu), Partition(mu))


@lru_cache(maxsize=_CACHE_LIMIT)
def _w_two(mu: Partition, nu: Partition) -> ExactScalar:
    return q_power(Fraction(nu.size, 2), R) * _w_one(mu) * _schur_of_e(nu, mu)


def w_two(mu, nu) -> ExactScalar:
    return _w_two(Partition(mu), Partition(nu))


@lru_cache(maxsize=_CACHE_LIMIT)
def _w_three(mu1: Partition, mu2: Partition, mu3: Partition) -> ExactScalar:
    total = ExactScalar.zero(R)
    mu2t = mu2.transpose()
    for k in range(min(mu1.size, mu3.size) + 1):
        for rho1 in partitions(mu1.size - k):
            for rho3 in partitions(mu3.size - k):
                c = lr_double(mu1, mu3, rho1, rho3)
                if c:
                    total = total + _w_two(mu2t, rho1) * _w_two(mu2, rho3.transpose()) * c
    pre = q_power(Fraction(kappa(mu2) + kappa(mu3), 2), R)
    return pre * total / _w_one(mu2)


def w_three(triple) -> ExactScalar:
    """W_{mu1,mu2,mu3} as a sum of products of two-partition amplitudes."""
    t = PartitionTriple(*triple)
    return _w_three(*t)


@lru_cache(maxsize=_CACHE_LIMIT)
def eta_weight(eta1: Partition, eta3: Partition) -> Fraction:
    """sum over mu |- |eta1| of chi_eta1(mu) chi_eta3(2mu) / z_mu."""
    if eta3.size != 2 * eta1.size:
        return Fraction(0)
    return sum(
        (Fraction(character(eta1, mu) * character(eta3, mu.double()), z(mu))
         for mu in partitions(eta1.size)),
        Fraction(0),
    )


@lru_cache(maxsize=_CACHE_LIMIT)
def _w_tilde(rho1: Partition, rho2: Partition, rho3: Partition) -> ExactScalar:
    # collect rational weights per (nu_plus, nu3) before touching rational functions
    weights: dict[tuple[Partition, Partition], Fraction] = defaultdict(Fraction)
    for k in range(min(rho1.size, rho3.size // 2) + 1):
        for eta1 in partitions(k):
            eta1t = eta1.transpose()
            for nu1 in partitions(rho1.size - k):
                c1 = lr_coefficient(rho1, eta1t, nu1)
                if not c1:
                    continue
                nu1t = nu1.transpose()
                for eta3 in partitions(2 * k):
                    ew = eta_weight(eta1, eta3)
                    if not ew:
                        continue
                    for nu3 in partitions(rho3.size - 2 * k):
                        c3 = lr_coefficient(rho3, eta3, nu3.transpose())
                        if not c3:
                            continue
                        for nu_plus in partitions(nu1.size + rho2.size):
                            cp = lr_coefficient(nu_plus, nu1t, rho2)
                            if cp:
                                weights[(nu_plus, nu3)] += cp * c1 * c3 * ew
    total = ExactScalar.zero(R)
    for (nu_plus, nu3), w in sorted(weights.items()):
        if w:
            term = q_power(Fraction(-4 * kappa(nu_plus) - kappa(nu3), 4), R) * _w_two(nu_plus, nu3)
            total = total + term * w
    pre = q_power(Fraction(-2 * kappa(rho1) + 4 * kappa(rho2) + kappa(rho3), 4), R)
    return pre * total


def w_tilde(triple) -> ExactScalar:
    """The character-sum vertex amplitude W-tilde_{rho1,rho2,rho3}."""
    t = PartitionTriple(*triple)
    return _w_tilde(*t)


def clear_caches() -> None:
    for f in (_w_one, _e_series, _schur_of_e, _w_two, _w_three, _w_tilde, eta_weight, bracket):
        f.cache_clear()


__all__ = [
    "ESeries", "bracket", "e_series", "schur_of_e", "w_one", "w_two", "w_three", "w_tilde",
    "eta_weight", "clear_caches", "EMPTY",
]
