"""The corank-1 Eisenstein series in its region of absolute convergence.

Cosets of the corank-1 integer parabolic inside Sp(2g, Z) are in
bijection with primitive integer row vectors (c, d) of length 2g modulo
sign: row g+1 of a symplectic matrix is fixed by left multiplication by
the stabilizer pattern, and any primitive vector completes to a group
element.  The summand depends on the coset through

    term(c, d) = [ (c tau + d) Y^(-1) (c tau + d)^dagger ]^(-1),
    Y = Im tau,

which equals det Im(gamma tau) / det Im((gamma tau)_22) for any
completion gamma (the Schur-complement identity for the leading entry
of the inverse).  The series

    E(tau, s) = sum over primitive (c, d) mod +- of term(c, d)^s

converges absolutely for Re s > g; the truncated sum over norm <= R is
reported together with an integral tail bound.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._errors import ConvergenceRegionError, ValidationError
from .symplectic import SiegelPoint, SymplecticMatrix, block_split, mobius_act

_MAX_RADIUS = {1: 2000.0, 2: 40.0, 3: 12.0}


@dataclass(frozen=True)
class EisensteinSpec:
    """Evaluation plan: exponent s with Re s > g, truncation radius, genus."""

    s: complex
    radius: float
    genus: int

    def __post_init__(self):
        if complex(self.s).real <= self.genus:
            raise ConvergenceRegionError(
                f"series needs Re s > g = {self.genus}, got s = {self.s}"
            )
        if self.radius <= 0:
            raise ValidationError("radius must be positive")
        cap = _MAX_RADIUS.get(self.genus)
        if cap is not None and self.radius > cap:
            raise ValidationError(
                f"radius {self.radius} exceeds the desk-scale cap {cap} at genus {self.genus}"
            )


@dataclass(frozen=True)
class EisensteinValue:
    value: complex
    tail: float
    terms: int


@lru_cache(maxsize=32)
def _primitive_vectors_cached(genus: int, radius_sq_int: int) -> np.ndarray:
    n = 2 * genus
    r = int(math.isqrt(radius_sq_int))
    rng1 = np.arange(-r, r + 1, dtype=np.int64)
    grids = np.meshgrid(*([rng1] * n), indexing="ij")
    pts = np.stack([gg.ravel() for gg in grids], axis=1)
    norms = np.sum(pts * pts, axis=1)
    pts = pts[(norms > 0) & (norms <= radius_sq_int)]
    gcds = np.gcd.reduce(np.abs(pts), axis=1)
    pts = pts[gcds == 1]
    # one representative per +- pair: first nonzero entry positive
    first = np.argmax(pts != 0, axis=1)
    signs = np.sign(pts[np.arange(pts.shape[0]), first])
    pts = pts[signs > 0]
    # fixed deterministic order: by norm, then lexicographic
    norms = np.sum(pts * pts, axis=1)
    order = np.lexsort(tuple(pts[:, k] for k in range(n - 1, -1, -1)) + (norms,))
    out = pts[order]
    out.setflags(write=False)
    return out


def primitive_vectors(genus: int, radius: float) -> np.ndarray:
    """Primitive integer rows in Z^(2g), norm <= radius, modulo sign."""
    return _primitive_vectors_cached(genus, int(math.floor(radius * radius + 1e-9)))


def _is_primitive(cd: np.ndarray) -> bool:
    cd = np.asarray(cd, dtype=np.int64)
    return cd.any() and int(np.gcd.reduce(np.abs(cd))) == 1


def gram_form(point: SiegelPoint) -> np.ndarray:
    """The positive quadratic form Q(c, d) = (c tau + d) Y^(-1) (..)^dagger
    as a real symmetric 2g x 2g matrix."""
    g = point.genus
    t = np.vstack([point.tau, np.eye(g)])
    yinv = np.linalg.inv(point.tau.imag)
    m = t @ yinv @ t.conj().T
    return np.real((m + m.conj().T) / 2)


def eisenstein_term(cd, point: SiegelPoint) -> float:
    """Coset summand 1 / Q(c, d); requires a primitive integer row."""
    cd = np.asarray(cd, dtype=np.int64).reshape(2 * point.genus)
    if not _is_primitive(cd):
        raise ValidationError("coset representative must be primitive")
    q = float(cd @ gram_form(point) @ cd)
    return 1.0 / q


def eisenstein_sum(point: SiegelPoint, spec: EisensteinSpec) -> EisensteinValue:
    """Truncated coset sum with an integral tail bound.

    The bound uses lambda_min of the Gram form: summands beyond radius R
    are at most (lambda |x|^2)^(-Re s), and the lattice tail is dominated
    by the shell integral of |y|^(-2 Re s) beyond R - sqrt(2g)/2.
    """
    if point.genus != spec.genus:
        raise ValidationError("genus mismatch between point and spec")
    pts = primitive_vectors(spec.genus, spec.radius)
    m = gram_form(point)
    q = np.einsum("ni,ij,nj->n", pts, m, pts)
    s = complex(spec.s)
    if s.imag == 0:
        vals = q ** (-s.real)
    else:
        vals = np.exp(-s * np.log(q))
    value = complex(np.sum(vals))
    if s.imag == 0:
        value = complex(value.real)
    tail = _tail_bound(m, spec)
    return EisensteinValue(value=value, tail=tail, terms=pts.shape[0])


def _tail_bound(gram: np.ndarray, spec: EisensteinSpec) -> float:
    g = spec.genus
    sigma = complex(spec.s).real
    lam = float(np.min(np.linalg.eigvalsh(gram)))
    r_eff = max(spec.radius - math.sqrt(2 * g) / 2, 1.0)
    sphere = 2 * math.pi**g / math.factorial(g - 1)
    return 0.5 * sphere * lam ** (-sigma) * r_eff ** (2 * g - 2 * sigma) / (2 * sigma - 2 * g)


# ---------------------------------------------------------------------------
# exact completion of a primitive row to a symplectic matrix (coset oracle)
# ---------------------------------------------------------------------------

def _int_eye(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _int_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        row = out[i]
        for t in range(k):
            ait = ai[t]
            if ait:
                bt = b[t]
                for j in range(m):
                    row[j] += ait * bt[j]
    return out


def _embed_gl(a_small, g):
    """[[A, 0], [0, A^(-t)]] for elementary A given with its inverse-transpose."""
    a, ait = a_small
    out = _int_eye(2 * g)
    for i in range(g):
        for j in range(g):
            out[i][j] = a[i][j]
            out[g + i][g + j] = ait[i][j]
    return out


def _elem_add(g, i, j, lam):
    """A = I + lam E_ij (i != j); A^(-t) = I - lam E_ji."""
    a = _int_eye(g)
    a[i][j] = lam
    ait = _int_eye(g)
    ait[j][i] = -lam
    return a, ait


def _elem_swap(g, i, j):
    a = _int_eye(g)
    a[i][i] = a[j][j] = 0
    a[i][j] = a[j][i] = 1
    return a, [row[:] for row in a]


def _elem_negate(g, i):
    a = _int_eye(g)
    a[i][i] = -1
    return a, [row[:] for row in a]


def _embed_sl2_first(a, b, c, d, g):
    """SL(2, Z) on the first hyperbolic pair of slots (1, g+1)."""
    out = _int_eye(2 * g)
    out[0][0] = a
    out[0][g] = b
    out[g][0] = c
    out[g][g] = d
    return out


def _row_times(x, m):
    return [sum(x[i] * m[i][j] for i in range(len(x))) for j in range(len(m[0]))]


def _reduce_block_to_e1(x, s, g, offset):
    """Column-reduce the g entries x[offset:offset+g] to (gcd, 0, .., 0).

    Applies embedded GL(g, Z) moves to both x and the accumulator s.
    The block at ``offset`` 0 (the c block) transforms by A, the block
    at ``offset`` g by A^(-t); ops are mirrored accordingly so the
    reduced block always sees the intended elementary move.  Exact
    integer arithmetic throughout.
    """
    dual = offset == g

    def apply(op):
        # diag(A, A^(-t)) is symplectic, and so is diag(A^(-t), A); the
        # mirrored embedding makes the reduced block always see A itself.
        nonlocal x, s
        a, ait = op
        m = _embed_gl((ait, a) if dual else (a, ait), g)
        x = _row_times(x, m)
        s = _int_mul(s, m)

    while True:
        block = x[offset:offset + g]
        support = [i for i, val in enumerate(block) if val != 0]
        if len(support) <= 1:
            if support and support[0] != 0:
                apply(_elem_swap(g, 0, support[0]))
            break
        piv = min(support, key=lambda i: abs(block[i]))
        for i in support:
            if i == piv:
                continue
            lam = -(block[i] // block[piv])
            if lam:
                apply(_elem_add(g, piv, i, lam))
    if x[offset] < 0:
        apply(_elem_negate(g, 0))
    return x, s


def complete_symplectic_row(cd) -> SymplecticMatrix:
    """An integer symplectic matrix whose row g+1 is the given primitive row.

    Reduces the row to e_(g+1) by exact right multiplication with
    symplectic generators (GL block moves and an SL(2, Z) rotation in
    the first hyperbolic pair), then inverts the accumulated word with
    the symplectic inverse, all in integer arithmetic.
    """
    cd = np.asarray(cd, dtype=np.int64)
    g = cd.size // 2
    if cd.size != 2 * g or g < 1:
        raise ValidationError("row must have even length 2g")
    if not _is_primitive(cd):
        raise ValidationError("row must be primitive")
    x = [int(v) for v in cd]
    s = _int_eye(2 * g)

    # make the c block (gcd_c, 0, ..) then kill it against d_1 by SL2
    x, s = _reduce_block_to_e1(x, s, g, 0)
    u, v = x[0], x[g]
    gg, p, q = _xgcd(u, v)
    if gg:
        # (u, v) [[v/g, p], [-u/g, q]] = (0, g), determinant +1
        m2 = _embed_sl2_first(v // gg, p, -(u // gg), q, g)
        assert (v // gg) * q + p * (u // gg) == 1
        x = _row_times(x, m2)
        s = _int_mul(s, m2)
    # now x = (0, d); reduce d to e_1
    x, s = _reduce_block_to_e1(x, s, g, g)
    assert x == [0] * g + [1] + [0] * (g - 1), f"reduction failed: {x}"
    gamma = _symplectic_int_inverse(s, g)
    out = SymplecticMatrix(g, np.array(gamma, dtype=float), integral=True)
    assert np.array_equal(out.int_entries[g], cd)
    return out


def _xgcd(a, b):
    """g, p, q with p a + q b = g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        qt = old_r // r
        old_r, r = r, old_r - qt * r
        old_s, s = s, old_s - qt * s
        old_t, t = t, old_t - qt * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _symplectic_int_inverse(m, g):
    """M^(-1) = -J M^t J in exact integer arithmetic."""
    n = 2 * g
    out = [[0] * n for _ in range(n)]
    # (-J M^t J)[i][j] expanded blockwise: for M = [[A,B],[C,D]],
    # inverse = [[D^t, -B^t], [-C^t, A^t]]
    for i in range(g):
        for j in range(g):
            out[i][j] = m[g + j][g + i]
            out[i][g + j] = -m[j][g + i]
            out[g + i][j] = -m[g + j][i]
            out[g + i][g + j] = m[j][i]
    return out


def term_via_completion(cd, point: SiegelPoint) -> float:
    """Oracle path: det Im(gamma tau) / det Im((gamma tau)_22) through an
    explicit completion gamma of the row; genus 1 falls back to
    det Im(gamma tau) itself (the trailing block is empty)."""
    gamma = complete_symplectic_row(cd)
    img = mobius_act(gamma, point)
    if point.genus == 1:
        return img.det_im
    trailing = block_split(img, 1).tau22
    return img.det_im / float(np.linalg.det(trailing.imag))
