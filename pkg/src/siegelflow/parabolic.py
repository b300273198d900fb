"""The integer corank-1 parabolic subgroup and its closed-form actions.

Integer symplectic matrices stabilizing the corank-1 boundary component
have first column e_1 and row g+1 equal to e_(g+1).  In block widths
(1, g-1, 1, g-1) they look like

    [ 1   m   q    n  ]
    [ 0   a   n^t  b  ]          (a b; c d) integer symplectic of genus g-1,
    [ 0   0   1    0  ]          m, n integer row vectors, q an integer,
    [ 0   c  -m^t  d  ]

and factor exactly as p = g1(gamma) . g2(m, n) . g3(q) where g1 embeds
the genus g-1 group, g2 carries the shear vectors and g3 shifts the
top-left entry.  Everything here is exact integer arithmetic: the
factorization feeds coset logic where float drift is unacceptable.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._errors import DimensionMismatch, NotInParabolic, ValidationError
from .symplectic import SiegelPoint, SymplecticMatrix, _freeze


@dataclass(frozen=True)
class ParabolicElement:
    """Factor data (gamma_sub, m, n, q) of a corank-1 parabolic matrix."""

    genus: int
    gamma_sub: SymplecticMatrix
    m: np.ndarray
    n: np.ndarray
    q: int

    def __post_init__(self):
        g = self.genus
        if self.gamma_sub.genus != g - 1:
            raise DimensionMismatch("gamma_sub must have genus g-1")
        if not self.gamma_sub.integral:
            raise ValidationError("gamma_sub must be an integer symplectic matrix")
        m = np.asarray(self.m, dtype=np.int64).reshape(g - 1)
        n = np.asarray(self.n, dtype=np.int64).reshape(g - 1)
        object.__setattr__(self, "m", _freeze(m))
        object.__setattr__(self, "n", _freeze(n))
        object.__setattr__(self, "q", int(self.q))

    def to_json_dict(self) -> dict:
        return {
            "genus": self.genus,
            "gamma_sub": self.gamma_sub.to_json_dict(),
            "m": [int(x) for x in self.m],
            "n": [int(x) for x in self.n],
            "q": self.q,
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "ParabolicElement":
        return cls(
            genus=int(d["genus"]),
            gamma_sub=SymplecticMatrix.from_json_dict(d["gamma_sub"]),
            m=np.array(d["m"], dtype=np.int64),
            n=np.array(d["n"], dtype=np.int64),
            q=int(d["q"]),
        )


def _g1_int(gamma_sub: SymplecticMatrix, g: int) -> np.ndarray:
    h = g - 1
    sub = gamma_sub.int_entries
    out = np.eye(2 * g, dtype=np.int64)
    out[1:g, 1:g] = sub[:h, :h]
    out[1:g, g + 1:] = sub[:h, h:]
    out[g + 1:, 1:g] = sub[h:, :h]
    out[g + 1:, g + 1:] = sub[h:, h:]
    return out


def _g2_int(m: np.ndarray, n: np.ndarray, g: int) -> np.ndarray:
    out = np.eye(2 * g, dtype=np.int64)
    out[0, 1:g] = m
    out[0, g + 1:] = n
    out[1:g, g] = n
    out[g + 1:, g] = -m
    return out


def _g3_int(q: int, g: int) -> np.ndarray:
    out = np.eye(2 * g, dtype=np.int64)
    out[0, g] = q
    return out


def g1_factor(gamma_sub: SymplecticMatrix, genus: int) -> SymplecticMatrix:
    return SymplecticMatrix(genus, _g1_int(gamma_sub, genus).astype(float), integral=True)


def g2_factor(m, n, genus: int) -> SymplecticMatrix:
    m = np.asarray(m, dtype=np.int64).reshape(genus - 1)
    n = np.asarray(n, dtype=np.int64).reshape(genus - 1)
    return SymplecticMatrix(genus, _g2_int(m, n, genus).astype(float), integral=True)


def g3_factor(q: int, genus: int) -> SymplecticMatrix:
    return SymplecticMatrix(genus, _g3_int(int(q), genus).astype(float), integral=True)


def assemble(p: ParabolicElement) -> SymplecticMatrix:
    """Exact integer product g1 . g2 . g3."""
    g = p.genus
    prod = _g1_int(p.gamma_sub, g) @ _g2_int(p.m, p.n, g) @ _g3_int(p.q, g)
    return SymplecticMatrix(g, prod.astype(float), integral=True)


def factor(mat: SymplecticMatrix) -> ParabolicElement:
    """Invert ``assemble``: read (gamma_sub, m, n, q) off the matrix.

    The stabilizer pattern is first column e_1, equivalently row g+1
    equal to e_(g+1); m, q, n sit in the first row and gamma_sub in the
    inner blocks.  (The remaining column carries a n^t - b m^t and
    c n^t - d m^t, as symplecticity forces; the reassembly check below
    certifies the factorization exactly in integer arithmetic.)
    """
    if not mat.integral:
        raise ValidationError("parabolic factorization needs an integer matrix")
    g = mat.genus
    e = mat.int_entries
    col = np.zeros(2 * g, dtype=np.int64)
    col[0] = 1
    row = np.zeros(2 * g, dtype=np.int64)
    row[g] = 1
    if not (np.array_equal(e[:, 0], col) and np.array_equal(e[g], row)):
        raise NotInParabolic("matrix does not stabilize the corank-1 component")
    m = e[0, 1:g].copy()
    q = int(e[0, g])
    n = e[0, g + 1:].copy()
    h = g - 1
    sub = np.zeros((2 * h, 2 * h), dtype=np.int64)
    sub[:h, :h] = e[1:g, 1:g]
    sub[:h, h:] = e[1:g, g + 1:]
    sub[h:, :h] = e[g + 1:, 1:g]
    sub[h:, h:] = e[g + 1:, g + 1:]
    try:
        gamma_sub = SymplecticMatrix(h, sub.astype(float), integral=True)
    except ValidationError as exc:
        raise NotInParabolic("embedded genus g-1 block is not symplectic") from exc
    p = ParabolicElement(genus=g, gamma_sub=gamma_sub, m=m, n=n, q=q)
    if not np.array_equal(assemble(p).int_entries, e):
        raise NotInParabolic("matrix is not a g1.g2.g3 product")
    return p


# ---------------------------------------------------------------------------
# closed-form actions on tau = [[tau1, tau2], [tau2^t, tau3]]
# ---------------------------------------------------------------------------

def _split(point: SiegelPoint):
    t = point.tau
    return t[:1, :1], t[:1, 1:], t[1:, 1:]


def _join(t1, t2, t3, g) -> SiegelPoint:
    out = np.zeros((g, g), dtype=complex)
    out[:1, :1] = t1
    out[:1, 1:] = t2
    out[1:, :1] = t2.T
    out[1:, 1:] = t3
    return SiegelPoint(g, out)


def act_g1(gamma_sub: SymplecticMatrix, point: SiegelPoint) -> SiegelPoint:
    """Embedded genus g-1 action.

    tau3 -> (a tau3 + b)(c tau3 + d)^(-1), the row tau2 picks up
    (c tau3 + d)^(-1) on the right, and tau1 loses
    tau2 (c tau3 + d)^(-1) c tau2^t.
    """
    g = point.genus
    if gamma_sub.genus != g - 1:
        raise DimensionMismatch("gamma_sub genus must be g-1")
    t1, t2, t3 = _split(point)
    a, b, c, d = gamma_sub.a, gamma_sub.b, gamma_sub.c, gamma_sub.d
    den = c @ t3 + d
    t2_new = np.linalg.solve(den.T, t2.T).T
    t3_new = np.linalg.solve(den.T, (a @ t3 + b).T).T
    t3_new = (t3_new + t3_new.T) / 2
    t1_new = t1 - t2_new @ c @ t2.T
    return _join(t1_new, t2_new, t3_new, g)


def act_g2(m, n, point: SiegelPoint) -> SiegelPoint:
    """Shear action: tau2 -> tau2 + m tau3 + n, tau3 fixed,
    tau1 -> tau1 + 2 m tau2^t + m tau3 m^t + n m^t."""
    g = point.genus
    m = np.asarray(m, dtype=float).reshape(1, g - 1)
    n = np.asarray(n, dtype=float).reshape(1, g - 1)
    t1, t2, t3 = _split(point)
    t2_new = t2 + m @ t3 + n
    t1_new = t1 + 2 * (m @ t2.T) + m @ t3 @ m.T + n @ m.T
    return _join(t1_new, t2_new, t3, g)


def act_g3(q, point: SiegelPoint) -> SiegelPoint:
    """tau1 -> tau1 + q, everything else fixed."""
    t = point.tau.copy()
    t[0, 0] = t[0, 0] + q
    return SiegelPoint(point.genus, t)


def act(p: ParabolicElement, point: SiegelPoint) -> SiegelPoint:
    """Composite closed-form action, equal to the Moebius action of assemble(p)."""
    out = act_g3(p.q, point)
    out = act_g2(p.m, p.n, out)
    return act_g1(p.gamma_sub, out)


def embed_gamma(gamma_sub: SymplecticMatrix) -> SymplecticMatrix:
    """Embed a genus g-1 symplectic matrix into genus g fixing the new slot."""
    return g1_factor(gamma_sub, gamma_sub.genus + 1)


def random_parabolic(
    genus: int, rng: np.random.Generator, bound: int = 3, word_length: int = 6
) -> ParabolicElement:
    from .symplectic import random_integer_symplectic

    gamma_sub = random_integer_symplectic(genus - 1, rng, word_length=word_length,
                                          shear_bound=min(bound, 2))
    m = rng.integers(-bound, bound + 1, size=genus - 1)
    n = rng.integers(-bound, bound + 1, size=genus - 1)
    q = int(rng.integers(-bound, bound + 1))
    return ParabolicElement(genus=genus, gamma_sub=gamma_sub, m=m, n=n, q=q)
