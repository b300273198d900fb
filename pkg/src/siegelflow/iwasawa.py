"""Iwasawa coordinates on the Siegel upper half-space.

A point tau decomposes as

    tau = W + i U V^2 U^t,

with W real symmetric, U unit upper triangular and V^2 = diag(v_1..v_g),
v_i > 0.  The determinant identity det Im(tau) = prod v_i holds exactly,
the Jacobian of the coordinate map is prod v_i^(i-1), and the invariant
measure has density prod v_i^(i-g-2) in these coordinates.

The factorization runs bottom-right to top-left (last pivot first), which
matches the corank-1 fibration: stripping the first row and column of
U, V, W leaves the Iwasawa data of the genus g-1 block tau22.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._errors import DimensionMismatch, NumericalDegeneracy, ValidationError
from .symplectic import (
    SiegelPoint,
    SymplecticMatrix,
    _fmt,
    _freeze,
    block_split,
    is_symplectic,
    mobius_act,
)

_PD_TOL = 1e-13


@dataclass(frozen=True)
class IwasawaCoords:
    """(v, u, w) with v_i > 0, u strictly upper triangular, w symmetric."""

    genus: int
    v: np.ndarray
    u: np.ndarray
    w: np.ndarray

    def __post_init__(self):
        g = self.genus
        v = np.asarray(self.v, dtype=float).reshape(g)
        u = np.asarray(self.u, dtype=float).reshape(g, g)
        w = np.asarray(self.w, dtype=float).reshape(g, g)
        if g and np.min(v) <= 0:
            raise ValidationError("all v_i must be positive")
        if np.max(np.abs(np.tril(u)), initial=0.0) > 0:
            raise ValidationError("u must be strictly upper triangular")
        if np.max(np.abs(w - w.T), initial=0.0) > 1e-12 * max(np.max(np.abs(w), initial=0.0), 1.0):
            raise ValidationError("w must be symmetric")
        object.__setattr__(self, "v", _freeze(v))
        object.__setattr__(self, "u", _freeze(u))
        object.__setattr__(self, "w", _freeze((w + w.T) / 2))

    @property
    def unitriangular(self) -> np.ndarray:
        """U = I + u."""
        return np.eye(self.genus) + self.u

    @classmethod
    def trivial(cls, genus: int) -> "IwasawaCoords":
        return cls(genus, np.ones(genus), np.zeros((genus, genus)), np.zeros((genus, genus)))

    # fixed coordinate order: v_1..v_g, then w upper triangle row-major
    # (w11, w12, .., w1g, w22, ..), then u strict upper row-major
    def vector(self) -> np.ndarray:
        g = self.genus
        iu, ju = np.triu_indices(g)
        isu, jsu = np.triu_indices(g, k=1)
        return np.concatenate([self.v, self.w[iu, ju], self.u[isu, jsu]])

    @classmethod
    def from_vector(cls, genus: int, vec) -> "IwasawaCoords":
        vec = np.asarray(vec, dtype=float)
        g = genus
        nw = g * (g + 1) // 2
        v = vec[:g]
        w = np.zeros((g, g))
        iu, ju = np.triu_indices(g)
        w[iu, ju] = vec[g: g + nw]
        w = w + np.triu(w, k=1).T
        u = np.zeros((g, g))
        isu, jsu = np.triu_indices(g, k=1)
        u[isu, jsu] = vec[g + nw:]
        return cls(g, v, u, w)

    def to_json_dict(self) -> dict:
        isu, jsu = np.triu_indices(self.genus, k=1)
        iw, jw = np.triu_indices(self.genus)
        return {
            "genus": self.genus,
            "v": [_fmt(x) for x in self.v],
            "u": [[int(i) + 1, int(j) + 1, _fmt(self.u[i, j])] for i, j in zip(isu, jsu)],
            "w": [[int(i) + 1, int(j) + 1, _fmt(self.w[i, j])] for i, j in zip(iw, jw)],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "IwasawaCoords":
        g = int(d["genus"])
        v = np.array([float(x) for x in d["v"]])
        u = np.zeros((g, g))
        for i, j, val in d["u"]:
            u[int(i) - 1, int(j) - 1] = float(val)
        w = np.zeros((g, g))
        for i, j, val in d["w"]:
            w[int(i) - 1, int(j) - 1] = float(val)
            w[int(j) - 1, int(i) - 1] = float(val)
        return cls(g, v, u, w)


def from_coords(coords: IwasawaCoords) -> SiegelPoint:
    """tau = W + i U V^2 U^t."""
    u = coords.unitriangular
    y = (u * coords.v) @ u.T
    return SiegelPoint(coords.genus, coords.w + 1j * y)


def to_coords(point: SiegelPoint) -> IwasawaCoords:
    """Invert the parametrization via a UDU^t factorization of Im(tau).

    Pivots run from the bottom-right corner upward, so the trailing
    (g-1) x (g-1) block factors into the coordinates of the base point
    of the corank-1 fibration.
    """
    g = point.genus
    y = point.tau.imag.copy()
    v = np.zeros(g)
    u = np.zeros((g, g))
    scale = max(np.max(np.abs(y), initial=0.0), 1.0)
    for j in range(g - 1, -1, -1):
        piv = y[j, j]
        if piv <= _PD_TOL * scale:
            raise NumericalDegeneracy(
                f"pivot {j} of Im(tau) is not positive within tolerance"
            )
        v[j] = piv
        if j:
            col = y[:j, j] / piv
            u[:j, j] = col
            y[:j, :j] -= np.outer(col, col) * piv
    return IwasawaCoords(g, v, u, point.tau.real)


def measure_density(coords: IwasawaCoords) -> float:
    """Density prod v_i^(i-g-2) of the invariant measure, i = 1..g."""
    g = coords.genus
    expo = np.arange(1, g + 1) - g - 2
    return float(np.prod(coords.v ** expo))


def jacobian(coords: IwasawaCoords) -> float:
    """Jacobian prod v_i^(i-1) of the map (v, u, w) -> (Re tau, Im tau).

    Follows from the recursion J_g = v_g^(g-1) J_(g-1): the last row of
    Im(tau) is (u_1g v_g, .., v_g), so each of the g-1 off-diagonal
    entries and the diagonal contribute one factor of v_g.
    """
    g = coords.genus
    expo = np.arange(g)
    return float(np.prod(coords.v ** expo))


def decompose_symplectic(m: SymplecticMatrix) -> tuple[IwasawaCoords, SymplecticMatrix]:
    """Factor m = N A K with N unipotent, A = diag(V, V^(-1)), K orthosymplectic.

    Returns the Iwasawa coordinates encoding (N, A) together with K.
    The coordinates equal to_coords(m . iI) because the orthosymplectic
    factor is exactly the stabilizer of the base point iI.
    """
    if not is_symplectic(m.entries, tol=1e-10):
        raise ValidationError("input is not symplectic")
    g = m.genus
    coords = to_coords(mobius_act(m, SiegelPoint.diagonal_i(g)))
    na = nak_frame(coords)
    k = np.linalg.solve(na, m.entries)
    return coords, SymplecticMatrix(g, k)


def nak_frame(coords: IwasawaCoords) -> np.ndarray:
    """The 2g x 2g factor N A determined by the coordinates.

    N = [[U, W U^(-t)], [0, U^(-t)]] and A = diag(V, V^(-1)) with
    V = diag(sqrt(v)).
    """
    g = coords.genus
    u = coords.unitriangular
    uinv_t = np.linalg.inv(u).T
    rv = np.sqrt(coords.v)
    na = np.zeros((2 * g, 2 * g))
    na[:g, :g] = u * rv
    na[:g, g:] = (coords.w @ uinv_t) / rv
    na[g:, g:] = uinv_t / rv
    return na


@dataclass(frozen=True)
class Corank1Fiber:
    """Fiber data of the corank-1 boundary fibration over genus g-1.

    The embedded point has top-left entry w11 + i (v1 + u V^2 u^t) where
    V, U are taken from the base point's coordinates, first row
    w + i u V^2 U^t, and trailing block exactly ``base``.
    """

    v1: float
    w11: float
    w: np.ndarray
    u: np.ndarray
    base: SiegelPoint

    def __post_init__(self):
        if self.v1 <= 0:
            raise ValidationError("v1 must be positive")
        object.__setattr__(self, "w", _freeze(np.asarray(self.w, dtype=float).reshape(-1)))
        object.__setattr__(self, "u", _freeze(np.asarray(self.u, dtype=float).reshape(-1)))
        if self.w.shape[0] != self.base.genus or self.u.shape[0] != self.base.genus:
            raise DimensionMismatch("fiber vectors must have length genus(base)")


def corank1_embed(fiber: Corank1Fiber) -> SiegelPoint:
    """Assemble the genus g point over a genus g-1 base.

    The trailing block is the base tau bit for bit; only the first row
    and column are synthesized, so det Im = v1 * det Im(base) up to the
    roundoff of the base factorization.
    """
    gb = fiber.base.genus
    g = gb + 1
    t = np.zeros((g, g), dtype=complex)
    if gb:
        cb = to_coords(fiber.base)
        du_t = (cb.unitriangular * cb.v).T  # V^2 U^t  (rows scaled)
        row_im = fiber.u @ du_t
        head_im = fiber.v1 + float(fiber.u @ (cb.v * fiber.u))
        t[0, 1:] = fiber.w + 1j * row_im
        t[1:, 0] = t[0, 1:]
        t[1:, 1:] = fiber.base.tau
    else:
        head_im = fiber.v1
    t[0, 0] = fiber.w11 + 1j * head_im
    return SiegelPoint(g, t)


def corank1_base(point: SiegelPoint) -> tuple[float, SiegelPoint]:
    """(v1, base) of the corank-1 fibration: v1 = det Im / det Im(tau22)."""
    if point.genus < 2:
        raise DimensionMismatch("corank-1 base needs genus >= 2")
    sp = block_split(point, 1)
    base = SiegelPoint(point.genus - 1, sp.tau22)
    yinv = np.linalg.inv(point.tau.imag)
    return 1.0 / float(yinv[0, 0]), base
