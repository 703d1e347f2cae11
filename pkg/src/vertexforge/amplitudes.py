"""Framed vertex amplitudes, graph amplitudes by gluing, and Hodge generating functions.

All lambda-dependence is carried by q = e^{i lambda}; every amplitude is a single
:class:`ExactScalar`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import prod
from typing import Iterable, Mapping

from .exact import DEFAULT_ROOT, ExactScalar, GaussianRational, i_power, q_power, render
from .ftcy import EffectiveClass, FtcyGraph, OEdge, effective_classes, full_resolution, splitting_types, wedge
from .hurwitz import phi_q
from .partitions import Partition, PartitionTriple, kappa, partitions, z
from .symchar import character
from .vertex import w_three, w_tilde

R = DEFAULT_ROOT


def _triple(mu) -> PartitionTriple:
    return mu if isinstance(mu, PartitionTriple) else PartitionTriple(*mu)


def _labelings(mu: PartitionTriple) -> Iterable[PartitionTriple]:
    for nus in product(*(partitions(m.size) for m in mu)):
        yield PartitionTriple(*nus)


def _char_weight(nu: PartitionTriple, mu: PartitionTriple) -> Fraction:
    """prod_i chi_{nu^i}(mu^i) / z_{mu^i}."""
    return Fraction(prod(character(a, b) for a, b in zip(nu, mu)), prod(z(b) for b in mu))


def _char_product(mu: PartitionTriple, nu: PartitionTriple) -> int:
    """prod_i chi_{mu^i}(nu^i)."""
    return prod(character(a, b) for a, b in zip(mu, nu))


# --- single vertex -----------------------------------------------------------


def c_tilde(mu) -> ExactScalar:
    """C-tilde_mu at zero framing, identified with W-tilde_mu(q)."""
    return w_tilde(_triple(mu))


def framing_factor(mu, n) -> ExactScalar:
    mu = _triple(mu)
    return q_power(Fraction(sum(kappa(m) * k for m, k in zip(mu, n)), 2), R)


def c_tilde_framed(mu, n) -> ExactScalar:
    """C-tilde_mu(n) = q^{sum kappa_i n_i / 2} C-tilde_mu."""
    mu = _triple(mu)
    return framing_factor(mu, n) * c_tilde(mu)


def f_tilde(mu, n=(0, 0, 0)) -> ExactScalar:
    """Winding-basis amplitude sum_nu C-tilde_nu(n) prod chi_{nu^i}(mu^i)/z_{mu^i}."""
    mu = _triple(mu)
    total = ExactScalar.zero(R)
    for nu in _labelings(mu):
        w = _char_weight(nu, mu)
        if w:
            total = total + c_tilde_framed(nu, n) * w
    return total


def _f_sign(mu: PartitionTriple, n) -> GaussianRational:
    sign = (-1) ** (sum((k - 1) * m.size for m, k in zip(mu, n)) % 2)
    return i_power(-sum(len(m) for m in mu)) * sign


def f_vertex(mu, n=(0, 0, 0)) -> ExactScalar:
    """F_mu(lambda; n) recovered from the representation basis."""
    mu = _triple(mu)
    return f_tilde(mu, n) * _f_sign(mu, n)


def c_tilde_from_f(mu, f_tilde_of) -> ExactScalar:
    """C-tilde_mu = sum_nu F-tilde_nu prod chi_{mu^i}(nu^i), for any callable F-tilde."""
    mu = _triple(mu)
    total = ExactScalar.zero(R)
    for nu in _labelings(mu):
        c = _char_product(mu, nu)
        if c:
            total = total + f_tilde_of(nu) * c
    return total


def f_tilde_framed_by_hurwitz(mu, n) -> ExactScalar:
    """F-tilde_mu(n) as the convolution of F-tilde(0) with framing Hurwitz series."""
    mu = _triple(mu)
    total = ExactScalar.zero(R)
    for nu in _labelings(mu):
        term = f_tilde(nu)
        if term.is_zero():
            continue
        for a, b, k in zip(nu, mu, n):
            term = term * phi_q(a, b, k, R) * z(a)
            if term.is_zero():
                break
        total = total + term
    return total


def c_tilde_framed_by_hurwitz(mu, n) -> ExactScalar:
    """C-tilde_mu(n) reached through the winding basis and the Hurwitz convolution."""
    return c_tilde_from_f(mu, lambda nu: f_tilde_framed_by_hurwitz(nu, n))


# --- graphs -------------------------------------------------------------------


def _cyclic_outgoing(g: FtcyGraph, v: str) -> tuple[OEdge, OEdge, OEdge]:
    out = g.outgoing(v)
    e1 = out[0]
    e2 = next(o for o in out if wedge(g.p(e1), g.p(o)) == 1)
    e3 = next(o for o in out if o not in (e1, e2))
    return e1, e2, e3


@dataclass(frozen=True)
class _Layout:
    edges: tuple[str, ...]
    edge_n: tuple[int, ...]
    vertices: tuple[tuple[OEdge, OEdge, OEdge], ...]
    boundary: tuple[tuple[str, OEdge], ...]


def _layout(g: FtcyGraph) -> _Layout:
    if g.bivalent:
        raise ValueError("graph has bivalent vertices; use f_graph_general")
    uni = set(g.univalent)
    for e in g.edges.values():
        if e.tail in uni and e.head in uni:
            raise ValueError(f"edge {e.id!r} joins two univalent vertices")
    ids = tuple(g.edges)
    return _Layout(
        ids,
        tuple(g.n((eid, 1)) for eid in ids),
        tuple(_cyclic_outgoing(g, v) for v in g.trivalent),
        tuple((u, g.incoming(u)[0]) for u in g.univalent),
    )


def f_graph_regular(g: FtcyGraph, c: EffectiveClass) -> ExactScalar:
    """Formal relative GW generating function of a regular graph in degree class ``c``.

    Each unoriented edge carries nu^e on one orientation and its transpose on the
    other; trivalent vertices contribute C-tilde in wedge-positive cyclic order, and
    each univalent vertex u with incoming edge e contributes
    chi_{nu^e}(mu^u) / (i^{l(mu^u)} z_{mu^u}).
    """
    lay = _layout(g)
    degrees = dict(c.degrees)
    boundary = dict(c.boundary)
    edge_sign = 1
    for eid, n in zip(lay.edges, lay.edge_n):
        edge_sign *= (-1) ** (((n + 1) * degrees[eid]) % 2)
    bound_const = GaussianRational(1)
    for u, _ in lay.boundary:
        mu = boundary[u]
        bound_const = bound_const * i_power(-len(mu)) / z(mu)
    total = ExactScalar.zero(R)
    for labels in product(*(partitions(degrees[eid]) for eid in lay.edges)):
        nu = dict(zip(lay.edges, labels))

        def label(oe: OEdge) -> Partition:
            return nu[oe[0]] if oe[1] > 0 else nu[oe[0]].transpose()

        weight = 1
        for u, e in lay.boundary:
            weight *= character(label(e), boundary[u])
            if not weight:
                break
        if not weight:
            continue
        term = q_power(Fraction(sum(kappa(nu[eid]) * n for eid, n in zip(lay.edges, lay.edge_n)), 2), R)
        for e1, e2, e3 in lay.vertices:
            term = term * c_tilde((label(e1), label(e2), label(e3)))
        total = total + term * weight
    return total * (bound_const * edge_sign)


def resolve_class(g: FtcyGraph, c: EffectiveClass, sigma: Mapping[str, Partition],
                  vertex_map: Mapping[str, str]) -> EffectiveClass:
    """The class c with splitting partitions attached to the normalization's new vertices."""
    boundary = dict(c.boundary)
    for new_v, old_v in vertex_map.items():
        if new_v != old_v:
            boundary[new_v] = sigma[old_v]
    return EffectiveClass(c.degrees, tuple(sorted(boundary.items())))


def f_graph_general(g: FtcyGraph, c: EffectiveClass) -> ExactScalar:
    """Sum over splitting types of z_sigma times the amplitude of the full resolution."""
    if g.is_regular():
        return f_graph_regular(g, c)
    resolved, vmap = full_resolution(g)
    total = ExactScalar.zero(R)
    for sigma in splitting_types(g, c):
        zs = prod(z(s) for s in sigma.values())
        total = total + f_graph_regular(resolved, resolve_class(g, c, sigma, vmap)) * zs
    return total


def is_rational_q(v: ExactScalar) -> bool:
    """Diagnostic: True when the value has only rational coefficients in q."""
    return v.is_real()


class AmplitudeTable(dict):
    """Map from effective classes to amplitudes, in enumeration order."""

    def render_lines(self) -> list[str]:
        lines = []
        for c, v in self.items():
            d = ",".join(f"{k}:{n}" for k, n in c.degrees)
            mu = ",".join(f"{k}:[{p}]" if p else f"{k}:[]" for k, p in c.boundary)
            lines.append(f"d=({d}) mu=({mu}) -> {render(v)}")
        return lines


def partition_function(g: FtcyGraph, caps: Mapping[str, int] | int) -> AmplitudeTable:
    """Truncated Z_rel: every effective class within ``caps`` mapped to its amplitude."""
    _layout(g)
    table = AmplitudeTable()
    for c in effective_classes(g, caps):
        table[c] = f_graph_regular(g, c)
    return table


# --- Hodge integrals ------------------------------------------------------------


def _weights(w) -> tuple[Fraction, Fraction, Fraction]:
    w1, w2 = (Fraction(x) for x in w[:2])
    w3 = -w1 - w2
    if len(w) > 2 and Fraction(w[2]) != w3:
        raise ValueError("weights must sum to zero")
    if w1 == 0 or w2 == 0 or w3 == 0:
        raise ValueError("degenerate weight")
    return w1, w2, w3


def _ratio_exponent(nu: Iterable[Partition], w) -> Fraction:
    ws = _weights(w)
    return sum((kappa(p) * ws[(i + 1) % 3] / ws[i] for i, p in enumerate(nu)), Fraction(0)) / 2


def _hodge_sum(mu: PartitionTriple, w, amplitude) -> ExactScalar:
    total = ExactScalar.zero(R)
    for nu in _labelings(mu):
        c = _char_weight(nu, mu)
        if c:
            total = total + q_power(_ratio_exponent(nu, w), R) * amplitude(nu) * c
    return total


def g_three(mu, w) -> ExactScalar:
    """Three-partition Hodge generating function at weights (w1, w2, -w1-w2)."""
    return _hodge_sum(_triple(mu), w, w_tilde)


def g_two(mu1, mu2, w) -> ExactScalar:
    return _hodge_sum(PartitionTriple(mu1, mu2, ()), w, w_three)


def g_one(mu, w) -> ExactScalar:
    return _hodge_sum(PartitionTriple(mu, (), ()), w, w_three)


def c_tilde_from_g(mu, w) -> ExactScalar:
    """Recover C-tilde_mu from the Hodge generating functions by the character transform."""
    mu = _triple(mu)
    total = ExactScalar.zero(R)
    for nu in _labelings(mu):
        c = _char_product(mu, nu)
        if c:
            total = total + g_three(nu, w) * c
    return q_power(-_ratio_exponent(mu, w), R) * total


__all__ = [
    "AmplitudeTable", "c_tilde", "c_tilde_framed", "c_tilde_framed_by_hurwitz", "c_tilde_from_f",
    "c_tilde_from_g", "f_graph_general", "f_graph_regular", "f_tilde", "f_tilde_framed_by_hurwitz",
    "f_vertex", "framing_factor", "g_one", "g_three", "g_two", "is_rational_q", "partition_function",
    "resolve_class",
]
