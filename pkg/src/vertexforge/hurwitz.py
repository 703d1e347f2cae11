"""Double Hurwitz numbers via the Burnside formula, and the cut-and-join operators."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable

from .exact import DEFAULT_ROOT, ExactScalar, q_power
from .partitions import EMPTY, Partition, kappa, partitions, z
from .symchar import character


def _check_sizes(mu_plus: Partition, mu_minus: Partition) -> None:
    if mu_plus.size != mu_minus.size:
        raise ValueError(f"size mismatch: |{mu_plus}| != |{mu_minus}|")


def _burnside_terms(mu_plus: Partition, mu_minus: Partition) -> list[tuple[int, Fraction]]:
    """``[(kappa_nu, chi_nu(mu+) chi_nu(mu-) / (z z))]`` over nu |- d, zero terms dropped."""
    zz = z(mu_plus) * z(mu_minus)
    out = []
    for nu in partitions(mu_plus.size):
        c = character(nu, mu_plus) * character(nu, mu_minus)
        if c:
            out.append((kappa(nu), Fraction(c, zz)))
    return out


def phi_q(mu_plus, mu_minus, n: int, r: int = DEFAULT_ROOT) -> ExactScalar:
    """Phi_{mu+,mu-} at lambda -> n*lambda with q = e^{i lambda} substituted."""
    mu_plus, mu_minus = Partition(mu_plus), Partition(mu_minus)
    _check_sizes(mu_plus, mu_minus)
    total = ExactScalar.zero(r)
    for k, c in _burnside_terms(mu_plus, mu_minus):
        total = total + q_power(Fraction(k * n, 2), r) * c
    return total


@dataclass(frozen=True)
class LambdaSeries:
    """Truncated power series in lambda; ``coefficients[k]`` multiplies lambda**k."""

    coefficients: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, k: int) -> Fraction:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else Fraction(0)


def phi_series(mu_plus, mu_minus, order: int) -> LambdaSeries:
    """Taylor expansion of sum_nu e^{kappa_nu lambda / 2} chi chi / (z z) up to lambda**order."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    mu_plus, mu_minus = Partition(mu_plus), Partition(mu_minus)
    _check_sizes(mu_plus, mu_minus)
    coeffs = [Fraction(0)] * (order + 1)
    for k, c in _burnside_terms(mu_plus, mu_minus):
        half = Fraction(k, 2)
        for j in range(order + 1):
            coeffs[j] += c * half ** j / factorial(j)
    return LambdaSeries(tuple(coeffs))


def hurwitz_number(chi: int, mu_plus, mu_minus) -> Fraction:
    """Disconnected double Hurwitz number with r = -chi + l(mu+) + l(mu-) simple branch points."""
    mu_plus, mu_minus = Partition(mu_plus), Partition(mu_minus)
    _check_sizes(mu_plus, mu_minus)
    if chi % 2:
        raise ValueError("Euler characteristic must be even")
    r = -chi + len(mu_plus) + len(mu_minus)
    if r < 0:
        raise ValueError("Euler characteristic too large")
    return factorial(r) * phi_series(mu_plus, mu_minus, r)[r]


# --- formal power sums -------------------------------------------------------

Key = tuple[int, Partition, Partition]


class WindingPolynomial:
    """Polynomial in lambda, p+_j and p-_j with rational coefficients.

    Terms are stored as ``{(lambda_order, mu_plus, mu_minus): coefficient}`` where a
    partition mu stands for the monomial prod_i p_{mu_i}.  Truncation caps are
    enforced on construction: terms of partition size above ``d_cap`` or lambda
    order above ``lambda_order`` are dropped.
    """

    def __init__(self, terms: dict[Key, Fraction] | None = None, *,
                 d_cap: int | None = None, lambda_order: int | None = None):
        self.d_cap = d_cap
        self.lambda_order = lambda_order
        self.terms: dict[Key, Fraction] = {}
        for key, c in (terms or {}).items():
            self._add(key, Fraction(c))

    def _fits(self, key: Key) -> bool:
        k, mp, mm = key
        if self.lambda_order is not None and k > self.lambda_order:
            return False
        if self.d_cap is not None and max(mp.size, mm.size) > self.d_cap:
            return False
        return True

    def _add(self, key: Key, c: Fraction) -> None:
        if not c or not self._fits(key):
            return
        total = self.terms.get(key, Fraction(0)) + c
        if total:
            self.terms[key] = total
        else:
            self.terms.pop(key, None)

    def _like(self) -> "WindingPolynomial":
        return WindingPolynomial(d_cap=self.d_cap, lambda_order=self.lambda_order)

    @classmethod
    def monomial(cls, mu_plus=(), mu_minus=(), coefficient=1, lambda_power: int = 0,
                 **caps) -> "WindingPolynomial":
        return cls({(lambda_power, Partition(mu_plus), Partition(mu_minus)): Fraction(coefficient)},
                   **caps)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, WindingPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other: "WindingPolynomial") -> "WindingPolynomial":
        out = self._like()
        for src in (self, other):
            for key, c in src.terms.items():
                out._add(key, c)
        return out

    def __neg__(self) -> "WindingPolynomial":
        return self.scale(-1)

    def __sub__(self, other: "WindingPolynomial") -> "WindingPolynomial":
        return self + (-other)

    def scale(self, c) -> "WindingPolynomial":
        out = self._like()
        for key, v in self.terms.items():
            out._add(key, v * Fraction(c))
        return out

    def __mul__(self, other: "WindingPolynomial") -> "WindingPolynomial":
        out = self._like()
        for (k1, a1, b1), c1 in self.terms.items():
            for (k2, a2, b2), c2 in other.terms.items():
                out._add((k1 + k2, a1.union(a2), b1.union(b2)), c1 * c2)
        return out

    def d_lambda(self) -> "WindingPolynomial":
        out = self._like()
        for (k, mp, mm), c in self.terms.items():
            if k:
                out._add((k - 1, mp, mm), c * k)
        return out

    def _act(self, side: str, op) -> "WindingPolynomial":
        if side not in ("+", "-"):
            raise ValueError("side must be '+' or '-'")
        out = self._like()
        for (k, mp, mm), c in self.terms.items():
            target = mp if side == "+" else mm
            for mu, w in op(target):
                key = (k, mu, mm) if side == "+" else (k, mp, mu)
                out._add(key, c * w)
        return out

    def cut(self, side: str = "+") -> "WindingPolynomial":
        """C = sum_{j,k>=1} (j+k) p_j p_k d/dp_{j+k}."""
        return self._act(side, _cut_monomial)

    def join(self, side: str = "+") -> "WindingPolynomial":
        """J = sum_{j,k>=1} jk p_{j+k} d^2/dp_j dp_k."""
        return self._act(side, _join_monomial)

    def truncated(self, *, lambda_order: int | None = None) -> "WindingPolynomial":
        out = WindingPolynomial(d_cap=self.d_cap,
                                lambda_order=self.lambda_order if lambda_order is None else lambda_order)
        for key, c in self.terms.items():
            out._add(key, c)
        return out

    def __repr__(self) -> str:
        if not self.terms:
            return "WindingPolynomial(0)"
        parts = []
        for (k, mp, mm), c in sorted(self.terms.items(), key=lambda t: (t[0][0], t[0][1], t[0][2])):
            parts.append(f"{c}*L^{k}*p+[{mp}]*p-[{mm}]")
        return "WindingPolynomial(" + " + ".join(parts) + ")"


def _remove(mu: Partition, parts: Iterable[int]) -> Partition:
    rest = list(mu)
    for p in parts:
        rest.remove(p)
    return Partition(rest)


def _cut_monomial(mu: Partition) -> list[tuple[Partition, int]]:
    out: dict[Partition, int] = defaultdict(int)
    mult = mu.multiplicities()
    for m, count in mult.items():
        rest = _remove(mu, [m])
        for j in range(1, m):
            out[rest.union((j, m - j))] += m * count
    return list(out.items())


def _join_monomial(mu: Partition) -> list[tuple[Partition, int]]:
    out: dict[Partition, int] = defaultdict(int)
    mult = mu.multiplicities()
    for j, mj in mult.items():
        for k, mk in mult.items():
            deriv = mj * (mj - 1) if j == k else mj * mk
            if deriv:
                out[_remove(mu, [j, k]).union((j + k,))] += j * k * deriv
    return list(out.items())


def burnside_generating_function(d_cap: int, lambda_order: int) -> WindingPolynomial:
    """Phi(lambda; p+, p-) truncated to |mu| <= d_cap and lambda**lambda_order."""
    poly = WindingPolynomial(d_cap=d_cap, lambda_order=lambda_order)
    for d in range(d_cap + 1):
        for mp in partitions(d):
            for mm in partitions(d):
                series = phi_series(mp, mm, lambda_order)
                for k, c in enumerate(series.coefficients):
                    poly._add((k, mp, mm), c)
    return poly


def cut_join_residual(d_cap: int, lambda_order: int, side: str = "+") -> WindingPolynomial:
    """dPhi/dlambda - (C + J) Phi / 2 on the window where both sides are exact."""
    if d_cap <= 0 or lambda_order <= 0:
        raise ValueError("caps must be positive")
    phi = burnside_generating_function(d_cap, lambda_order)
    lhs = phi.d_lambda()
    rhs = (phi.cut(side) + phi.join(side)).scale(Fraction(1, 2))
    # the top lambda order of rhs has no partner in lhs
    return (lhs - rhs).truncated(lambda_order=lambda_order - 1)


__all__ = [
    "EMPTY", "LambdaSeries", "WindingPolynomial", "phi_q", "phi_series", "hurwitz_number",
    "burnside_generating_function", "cut_join_residual",
]
