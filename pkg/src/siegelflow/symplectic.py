"""Symplectic matrices, Siegel upper half-space points and the Moebius action.

The Siegel upper half-space of genus g is the set of complex symmetric
g x g matrices with positive definite imaginary part.  The integer
symplectic group Sp(2g, Z) acts on it by

    tau  ->  (a tau + b) (c tau + d)^(-1),

where a, b, c, d are the g x g corner blocks of a 2g x 2g symplectic
matrix.  Everything in this module is a pure function on immutable
values; no shared mutable state.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._errors import DimensionMismatch, NumericalDegeneracy, ValidationError

DEFAULT_TOL = 1e-10
SYMPLECTIC_TOL = 1e-12


def symplectic_form(genus: int) -> np.ndarray:
    """The standard symplectic form J = [[0, I], [-I, 0]]."""
    z = np.zeros((genus, genus))
    i = np.eye(genus)
    return np.block([[z, i], [-i, z]])


def is_symplectic(entries, tol: float = SYMPLECTIC_TOL) -> bool:
    """True iff ``entries`` satisfies M^t J M = J entrywise within ``tol``.

    Raises DimensionMismatch for non-square or odd-dimensional input.
    """
    m = np.asarray(entries, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] % 2 != 0:
        raise DimensionMismatch(f"symplectic matrices have even size, got {m.shape[0]}")
    j = symplectic_form(m.shape[0] // 2)
    return bool(np.max(np.abs(m.T @ j @ m - j)) <= tol)


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class SymplecticMatrix:
    """A real 2g x 2g symplectic matrix, optionally flagged as integral.

    Invariants checked on construction: M^t J M = J to 1e-12, and when
    ``integral`` is set every entry is within 1e-12 of an integer.
    """

    genus: int
    entries: np.ndarray
    integral: bool = False

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=float)
        if m.shape != (2 * self.genus, 2 * self.genus):
            raise DimensionMismatch(
                f"genus {self.genus} needs a {2 * self.genus} x {2 * self.genus} matrix, "
                f"got {m.shape}"
            )
        if not is_symplectic(m):
            raise ValidationError("matrix is not symplectic within 1e-12")
        if self.integral and np.max(np.abs(m - np.round(m))) > SYMPLECTIC_TOL:
            raise ValidationError("integral flag set but entries are not integers")
        object.__setattr__(self, "entries", _freeze(m))

    # -- block accessors -------------------------------------------------
    @property
    def a(self) -> np.ndarray:
        return self.entries[: self.genus, : self.genus]

    @property
    def b(self) -> np.ndarray:
        return self.entries[: self.genus, self.genus:]

    @property
    def c(self) -> np.ndarray:
        return self.entries[self.genus:, : self.genus]

    @property
    def d(self) -> np.ndarray:
        return self.entries[self.genus:, self.genus:]

    @property
    def int_entries(self) -> np.ndarray:
        """Entries rounded to exact int64 (only valid when integral)."""
        if not self.integral:
            raise ValidationError("matrix is not flagged integral")
        return np.round(self.entries).astype(np.int64)

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_blocks(cls, a, b, c, d, integral: bool = False) -> "SymplecticMatrix":
        a = np.atleast_2d(np.asarray(a, dtype=float))
        m = np.block([[a, np.atleast_2d(b)], [np.atleast_2d(c), np.atleast_2d(d)]])
        return cls(a.shape[0], m, integral=integral)

    @classmethod
    def identity(cls, genus: int) -> "SymplecticMatrix":
        return cls(genus, np.eye(2 * genus), integral=True)

    @classmethod
    def inversion(cls, genus: int) -> "SymplecticMatrix":
        """The full inversion tau -> -tau^(-1), i.e. the form J itself."""
        return cls(genus, symplectic_form(genus), integral=True)

    @classmethod
    def translation(cls, shift) -> "SymplecticMatrix":
        """tau -> tau + S for a symmetric matrix S."""
        s = np.atleast_2d(np.asarray(shift, dtype=float))
        g = s.shape[0]
        if np.max(np.abs(s - s.T)) > SYMPLECTIC_TOL:
            raise ValidationError("translation shift must be symmetric")
        m = np.eye(2 * g)
        m[:g, g:] = s
        return cls(g, m, integral=bool(np.max(np.abs(s - np.round(s))) <= SYMPLECTIC_TOL))

    @classmethod
    def gl_embed(cls, a) -> "SymplecticMatrix":
        """tau -> A^t tau A for A in GL(g).  Embeds as diag(A^t, A^(-1))."""
        a = np.atleast_2d(np.asarray(a, dtype=float))
        g = a.shape[0]
        det = np.linalg.det(a)
        if abs(abs(det) - 1.0) > 1e-9 and abs(det) < 1e-12:
            raise ValidationError("GL embedding needs an invertible matrix")
        m = np.zeros((2 * g, 2 * g))
        m[:g, :g] = a.T
        m[g:, g:] = np.linalg.inv(a)
        integral = bool(
            np.max(np.abs(m - np.round(m))) <= SYMPLECTIC_TOL and abs(abs(det) - 1) < 1e-9
        )
        return cls(g, np.round(m) if integral else m, integral=integral)

    # -- algebra ----------------------------------------------------------
    def __matmul__(self, other: "SymplecticMatrix") -> "SymplecticMatrix":
        if self.genus != other.genus:
            raise DimensionMismatch("genus mismatch in product")
        if self.integral and other.integral:
            prod = self.int_entries @ other.int_entries
            return SymplecticMatrix(self.genus, prod.astype(float), integral=True)
        return SymplecticMatrix(self.genus, self.entries @ other.entries)

    def inverse(self) -> "SymplecticMatrix":
        # M^(-1) = -J M^t J, exact for integral matrices
        j = symplectic_form(self.genus)
        inv = -j @ self.entries.T @ j
        return SymplecticMatrix(self.genus, inv, integral=self.integral)

    def neg(self) -> "SymplecticMatrix":
        return SymplecticMatrix(self.genus, -self.entries, integral=self.integral)

    # -- serialization ----------------------------------------------------
    def to_json_dict(self) -> dict:
        return {
            "genus": self.genus,
            "re": [_fmt(x) for x in self.entries.ravel()],
            "im": [_fmt(0.0)] * (4 * self.genus * self.genus),
            "integral": self.integral,
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "SymplecticMatrix":
        g = int(d["genus"])
        re = np.array([float(x) for x in d["re"]]).reshape(2 * g, 2 * g)
        return cls(g, re, integral=bool(d.get("integral", False)))


@dataclass(frozen=True)
class SiegelPoint:
    """A point of the genus g Siegel upper half-space.

    ``tau`` is complex symmetric with positive definite imaginary part;
    symmetry is enforced to 1e-12 relative and definiteness is certified
    by a Cholesky attempt (cheaper and more robust than eigenvalues at
    the genera used here).  Genus 0 is allowed and denotes the empty
    point used by degenerate fiber integrals.
    """

    genus: int
    tau: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.tau, dtype=complex)
        if t.shape != (self.genus, self.genus):
            raise DimensionMismatch(
                f"genus {self.genus} needs a {self.genus} x {self.genus} matrix, got {t.shape}"
            )
        scale = np.max(np.abs(t)) if t.size else 0.0
        if t.size and np.max(np.abs(t - t.T)) > SYMPLECTIC_TOL * max(scale, 1.0):
            raise ValidationError("tau is not symmetric within tolerance")
        if t.size:
            try:
                np.linalg.cholesky(t.imag)
            except np.linalg.LinAlgError as exc:
                raise NumericalDegeneracy("Im(tau) is not positive definite") from exc
        object.__setattr__(self, "tau", _freeze(t))

    @classmethod
    def from_xy(cls, x, y) -> "SiegelPoint":
        x = np.atleast_2d(np.asarray(x, dtype=float))
        y = np.atleast_2d(np.asarray(y, dtype=float))
        return cls(x.shape[0], x + 1j * y)

    @classmethod
    def scalar(cls, z: complex) -> "SiegelPoint":
        return cls(1, np.array([[z]], dtype=complex))

    @classmethod
    def empty(cls) -> "SiegelPoint":
        return cls(0, np.zeros((0, 0), dtype=complex))

    @classmethod
    def diagonal_i(cls, genus: int, scale: float = 1.0) -> "SiegelPoint":
        return cls(genus, 1j * scale * np.eye(genus))

    @property
    def x(self) -> np.ndarray:
        return self.tau.real

    @property
    def y(self) -> np.ndarray:
        return self.tau.imag

    @property
    def det_im(self) -> float:
        return float(np.linalg.det(self.y)) if self.genus else 1.0

    def to_json_dict(self) -> dict:
        return {
            "genus": self.genus,
            "re": [_fmt(x) for x in self.tau.real.ravel()],
            "im": [_fmt(x) for x in self.tau.imag.ravel()],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "SiegelPoint":
        g = int(d["genus"])
        re = np.array([float(x) for x in d["re"]]).reshape(g, g)
        im = np.array([float(x) for x in d["im"]]).reshape(g, g)
        return cls(g, re + 1j * im)


def _fmt(x: float) -> str:
    # 17 significant digits round-trip float64 exactly as text
    return format(float(x), ".17g")


def mobius_act(gamma: SymplecticMatrix, point: SiegelPoint) -> SiegelPoint:
    """Apply tau -> (a tau + b)(c tau + d)^(-1).

    The result satisfies det Im(gamma tau) = det Im(tau) / |det(c tau + d)|^2.
    """
    if gamma.genus != point.genus:
        raise DimensionMismatch(
            f"genus mismatch: matrix {gamma.genus} vs point {point.genus}"
        )
    tau = point.tau
    den = gamma.c @ tau + gamma.d
    num = gamma.a @ tau + gamma.b
    try:
        # solve den^T X^T = num^T instead of forming an explicit inverse
        out = np.linalg.solve(den.T, num.T).T
    except np.linalg.LinAlgError as exc:
        raise NumericalDegeneracy("c tau + d is numerically singular") from exc
    out = (out + out.T) / 2
    return SiegelPoint(point.genus, out)


def cocycle_det(gamma: SymplecticMatrix, point: SiegelPoint) -> complex:
    """det(c tau + d), the automorphy denominator."""
    return complex(np.linalg.det(gamma.c @ point.tau + gamma.d))


@dataclass(frozen=True)
class BlockSplit:
    """Corank-r block decomposition tau = [[tau11, tau2], [tau2^t, tau22]].

    tau11 is r x r, tau22 is (g-r) x (g-r); joining reproduces the source
    point bit for bit.
    """

    corank: int
    tau11: np.ndarray
    tau2: np.ndarray
    tau22: np.ndarray


def block_split(point: SiegelPoint, r: int) -> BlockSplit:
    if not 1 <= r < point.genus:
        raise IndexError(f"corank index must satisfy 1 <= r < g, got r={r}, g={point.genus}")
    t = point.tau
    return BlockSplit(
        corank=r,
        tau11=_freeze(t[:r, :r].copy()),
        tau2=_freeze(t[:r, r:].copy()),
        tau22=_freeze(t[r:, r:].copy()),
    )


def block_join(split: BlockSplit) -> SiegelPoint:
    r = split.corank
    g = r + split.tau22.shape[0]
    t = np.zeros((g, g), dtype=complex)
    t[:r, :r] = split.tau11
    t[:r, r:] = split.tau2
    t[r:, :r] = split.tau2.T
    t[r:, r:] = split.tau22
    return SiegelPoint(g, t)


# ---------------------------------------------------------------------------
# random sampling for property tests and experiments
# ---------------------------------------------------------------------------

def random_siegel_point(genus: int, rng: np.random.Generator) -> SiegelPoint:
    """A random point with O(1) eccentricity, suitable for test batteries."""
    if genus == 0:
        return SiegelPoint.empty()
    b = rng.normal(size=(genus, genus))
    y = b @ b.T + 0.3 * np.eye(genus)
    x = rng.uniform(-2.0, 2.0, size=(genus, genus))
    x = (x + x.T) / 2
    return SiegelPoint(genus, x + 1j * y)


def random_integer_symplectic(
    genus: int,
    rng: np.random.Generator,
    word_length: int = 8,
    shear_bound: int = 2,
) -> SymplecticMatrix:
    """A random word in the generators of Sp(2g, Z).

    Uniform sampling of the group is undefined; bounded words in the
    inversion, integer translations and elementary GL(g, Z) embeddings
    are enough for property tests.
    """
    word = SymplecticMatrix.identity(genus)
    n = int(rng.integers(1, word_length + 1))
    for _ in range(n):
        kind = rng.random()
        if kind < 0.4:
            s = rng.integers(-shear_bound, shear_bound + 1, size=(genus, genus))
            s = s + s.T
            gen = SymplecticMatrix.translation(s.astype(float))
        elif kind < 0.7:
            gen = SymplecticMatrix.inversion(genus)
        else:
            a = np.eye(genus, dtype=np.int64)
            if genus > 1:
                i, j = rng.choice(genus, size=2, replace=False)
                a[i, j] = rng.integers(-shear_bound, shear_bound + 1)
            if rng.random() < 0.3:
                a[0, 0] *= -1  # reflection keeps |det| = 1
            gen = SymplecticMatrix.gl_embed(a.astype(float))
        word = word @ gen
    return word
