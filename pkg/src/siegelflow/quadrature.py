"""Deterministic quadrature plans: Gauss-Legendre panels and rank-1 lattices.

A QuadratureSpec freezes everything that influences a numerical value
(rule, orders, point counts, truncation height, seed), so that a run is
reproducible bit for bit from its recorded config.
"""
from __future__ import annotations

from dataclasses import dataclass, asdict, replace

import numpy as np

from ._errors import ValidationError

_RULES = ("gauss-legendre", "qmc-lattice")


@dataclass(frozen=True)
class QuadratureSpec:
    """Integration plan shared by cell averages and domain integrals.

    order:  Gauss-Legendre nodes per panel and axis.
    panels: panels per axis (refinement doubles this).
    points: sample count for the lattice rule.
    y_max:  truncation height for the genus-1 domain integral.
    seed:   seeds the lattice generating vector and shift only.
    """

    rule: str = "gauss-legendre"
    order: int = 12
    panels: int = 1
    points: int = 4096
    y_max: float = 8.0
    seed: int = 0

    def __post_init__(self):
        if self.rule not in _RULES:
            raise ValidationError(f"unknown quadrature rule {self.rule!r}")
        if self.order < 2 or self.panels < 1 or self.points < 8:
            raise ValidationError("degenerate quadrature spec")
        if self.y_max <= 1.0:
            raise ValidationError("y_max must exceed the domain floor")

    def refined(self) -> "QuadratureSpec":
        return replace(self, panels=2 * self.panels, points=2 * self.points)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "QuadratureSpec":
        unknown = set(d) - {f for f in cls.__dataclass_fields__}
        if unknown:
            raise ValidationError(f"unknown quadrature fields: {sorted(unknown)}")
        return cls(**d)


def gauss_legendre_panels(a: float, b: float, order: int, panels: int):
    """Composite Gauss-Legendre nodes and weights on [a, b]."""
    x, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(a, b, panels + 1)
    nodes = []
    weights = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        half = (hi - lo) / 2
        nodes.append(half * x + (lo + hi) / 2)
        weights.append(half * w)
    return np.concatenate(nodes), np.concatenate(weights)


def geometric_panels(a: float, b: float, order: int, panels: int):
    """Gauss-Legendre panels with geometrically graded edges on [a, b]."""
    x, w = np.polynomial.legendre.leggauss(order)
    edges = a * (b / a) ** np.linspace(0.0, 1.0, panels + 1)
    nodes = []
    weights = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        half = (hi - lo) / 2
        nodes.append(half * x + (lo + hi) / 2)
        weights.append(half * w)
    return np.concatenate(nodes), np.concatenate(weights)


def tensor_rule_unit_cube(dim: int, order: int, panels: int):
    """Tensor Gauss-Legendre rule on [0, 1]^dim; nodes (N, dim), weights (N,)."""
    x1, w1 = gauss_legendre_panels(0.0, 1.0, order, panels)
    grids = np.meshgrid(*([x1] * dim), indexing="ij")
    nodes = np.stack([gg.ravel() for gg in grids], axis=1)
    weights = np.ones(nodes.shape[0])
    for axis in range(dim):
        idx = np.meshgrid(*([np.arange(x1.size)] * dim), indexing="ij")[axis].ravel()
        weights *= w1[idx]
    return nodes, weights


def _next_prime(n: int) -> int:
    def is_prime(k):
        if k < 2:
            return False
        i = 2
        while i * i <= k:
            if k % i == 0:
                return False
            i += 1
        return True

    while not is_prime(n):
        n += 1
    return n


def korobov_lattice(dim: int, points: int, seed: int, shifted: bool = True):
    """Rank-1 lattice with a Korobov generating vector (1, a, a^2, ..) mod N.

    N is the next prime >= points; the multiplier and the Cranley-
    Patterson shift derive deterministically from the seed.  Weights are
    uniform 1/N.
    """
    n = _next_prime(points)
    rng = np.random.default_rng(np.random.SeedSequence([seed, dim, n]))
    a = int(rng.integers(2, n - 1))
    z = np.array([pow(a, j, n) for j in range(dim)], dtype=np.int64)
    k = np.arange(n, dtype=np.int64)
    nodes = (k[:, None] * z[None, :]) % n
    nodes = nodes.astype(np.float64) / n
    if shifted:
        shift = rng.random(dim)
        nodes = (nodes + shift) % 1.0
    return nodes, np.full(n, 1.0 / n)


def unit_cube_rule(dim: int, spec: QuadratureSpec):
    """Nodes and weights on [0, 1]^dim following the spec's rule choice.

    Tensor Gauss-Legendre up to dimension 3 (smooth non-periodic
    integrands), rank-1 lattice beyond, where tensor grids blow up.
    """
    if spec.rule == "gauss-legendre" and dim <= 3:
        return tensor_rule_unit_cube(dim, spec.order, spec.panels)
    return korobov_lattice(dim, spec.points, spec.seed)
