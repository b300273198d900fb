"""Fundamental-domain reduction and deterministic domain integration.

Genus 1 reduction is the classical translate-and-invert loop into
{|Re tau| <= 1/2, |tau| >= 1}.  Genus 2 reduction is best effort:
integer translation of the real part, Minkowski reduction of the
imaginary part by GL(2, Z), and a sweep of 19 inversion-type generators
that stops once det Im can no longer be increased.

The genus-1 modular integral of an invariant function of rapid decay is
computed by direct panel quadrature over the standard domain truncated
at y_max; no Monte Carlo, since downstream experiments need 6+ digits.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._errors import DimensionMismatch, TailError
from .quadrature import QuadratureSpec, gauss_legendre_panels, geometric_panels
from .symplectic import SiegelPoint, SymplecticMatrix, mobius_act


@dataclass(frozen=True)
class ReductionResult:
    point: SiegelPoint
    word: SymplecticMatrix
    steps: int
    best_effort: bool = False


def reduce_g1(point: SiegelPoint, max_iters: int = 2000) -> ReductionResult:
    """Reduce a genus-1 point into {|x| <= 1/2, |tau| >= 1}."""
    if point.genus != 1:
        raise DimensionMismatch("reduce_g1 needs a genus-1 point")
    z = complex(point.tau[0, 0])
    word = np.eye(2, dtype=np.int64)
    steps = 0
    for _ in range(max_iters):
        n = round(z.real)
        if n:
            z -= n
            word = np.array([[1, -n], [0, 1]], dtype=np.int64) @ word
            steps += 1
        if abs(z) < 1.0 - 1e-15:
            z = -1.0 / z
            word = np.array([[0, -1], [1, 0]], dtype=np.int64) @ word
            steps += 1
        else:
            break
    gamma = SymplecticMatrix(1, word.astype(float), integral=True)
    return ReductionResult(SiegelPoint.scalar(z), gamma, steps)


# --- genus 2 -----------------------------------------------------------------

def _shifted_inversion(shift: np.ndarray) -> np.ndarray:
    """tau -> -(tau + S)^(-1) for symmetric integer S: [[0, -I], [I, S]]."""
    out = np.zeros((4, 4), dtype=np.int64)
    out[:2, 2:] = -np.eye(2, dtype=np.int64)
    out[2:, :2] = np.eye(2, dtype=np.int64)
    out[2:, 2:] = shift
    return out


def gottschling_generators() -> list[SymplecticMatrix]:
    """The 19 inversion-type generators used by the genus-2 sweep.

    Thirteen full inversions tau -> -(tau + S)^(-1) for small symmetric
    shifts S, plus six embedded genus-1 inversions acting on one
    diagonal slot with a local shift.
    """
    gens = []
    shifts = [np.diag([d1, d2]) for d1 in (-1, 0, 1) for d2 in (-1, 0, 1)]
    shifts += [np.array([[0, e], [e, 0]]) for e in (1, -1)]
    shifts += [np.array([[e, e], [e, e]]) for e in (1, -1)]
    for s in shifts:
        m = _shifted_inversion(np.asarray(s, dtype=np.int64))
        gens.append(SymplecticMatrix(2, m.astype(float), integral=True))
    # embedded SL(2, Z) inversions with shift: slot 0 and slot 1
    for slot in (0, 1):
        for shift in (-1, 0, 1):
            m = np.eye(4, dtype=np.int64)
            i, j = slot, slot + 2
            # [[0, -1], [1, shift]] acting in the (i, j) plane:
            # tau_slot -> -1 / (tau_slot + shift)
            m[i, i] = 0
            m[i, j] = -1
            m[j, i] = 1
            m[j, j] = shift
            gens.append(SymplecticMatrix(2, m.astype(float), integral=True))
    assert len(gens) == 19
    return gens


_GOTTSCHLING = None


def _gottschling():
    global _GOTTSCHLING
    if _GOTTSCHLING is None:
        _GOTTSCHLING = gottschling_generators()
    return _GOTTSCHLING


def _minkowski_reduce_2d(y: np.ndarray) -> np.ndarray:
    """Unimodular u with u^t y u Minkowski-reduced (Lagrange-Gauss)."""
    u = np.eye(2, dtype=np.int64)
    y = y.copy()
    for _ in range(200):
        if y[0, 0] > y[1, 1]:
            s = np.array([[0, 1], [1, 0]], dtype=np.int64)
        else:
            r = round(y[0, 1] / y[0, 0])
            if r == 0:
                break
            s = np.array([[1, -r], [0, 1]], dtype=np.int64)
        u = u @ s
        y = s.T @ y @ s
    if y[0, 1] < 0:
        s = np.diag([1, -1]).astype(np.int64)
        u = u @ s
    return u


def reduce_g2_best_effort(point: SiegelPoint, max_iters: int = 64) -> ReductionResult:
    """Best-effort reduction at genus 2.

    Guarantees: det Im never decreases, |Re| entries end in [-1/2, 1/2],
    Im is Minkowski-reduced, and one full sweep of the 19 generators no
    longer increases det Im.  Sets ``best_effort`` when the iteration
    budget runs out instead of failing.
    """
    if point.genus != 2:
        raise DimensionMismatch("reduce_g2_best_effort needs a genus-2 point")
    tau = point
    word = SymplecticMatrix.identity(2)
    steps = 0
    exhausted = True
    for _ in range(max_iters):
        # Minkowski reduction of Im by GL(2, Z), then integer translation
        u = _minkowski_reduce_2d(tau.y)
        if not np.array_equal(u, np.eye(2, dtype=np.int64)):
            gl = SymplecticMatrix.gl_embed(u.astype(float))
            tau = mobius_act(gl, tau)
            word = gl @ word
            steps += 1
        shift = -np.round(tau.x)
        shift = (shift + shift.T) / 2
        if np.max(np.abs(shift)) > 0:
            t = SymplecticMatrix.translation(shift)
            tau = mobius_act(t, tau)
            word = t @ word
            steps += 1
        # generator sweep: apply the first generator that increases det Im
        best = None
        base = tau.det_im
        for gen in _gottschling():
            cand = mobius_act(gen, tau)
            if cand.det_im > base * (1 + 1e-12):
                best = (gen, cand)
                break
        if best is None:
            exhausted = False
            break
        gen, tau = best
        word = gen @ word
        steps += 1
    if exhausted:
        # budget ran out mid-sweep: still hand back a boxed, reduced point
        u = _minkowski_reduce_2d(tau.y)
        if not np.array_equal(u, np.eye(2, dtype=np.int64)):
            gl = SymplecticMatrix.gl_embed(u.astype(float))
            tau = mobius_act(gl, tau)
            word = gl @ word
        shift = -np.round(tau.x)
        shift = (shift + shift.T) / 2
        if np.max(np.abs(shift)) > 0:
            t = SymplecticMatrix.translation(shift)
            tau = mobius_act(t, tau)
            word = t @ word
    return ReductionResult(tau, word, steps, best_effort=exhausted)


# --- genus 1 domain integration ---------------------------------------------

def integrate_domain_g1(f, spec: QuadratureSpec, tail_tol: float | None = None):
    """Integrate f over the genus-1 fundamental domain with weight y^(-2).

    Uses tensor Gauss-Legendre panels on the strip {|x| <= 1/2,
    sqrt(1 - x^2) <= y <= y_max}.  Returns (value, error_estimate) where
    the estimate combines a one-step panel refinement with the
    truncation tail bound sup_{y = y_max} |f| / y_max.  Raises TailError
    when the tail exceeds ``tail_tol``.
    """
    coarse = _domain_quadrature(f, spec)
    fine = _domain_quadrature(f, spec.refined())
    tail = _tail_estimate(f, spec.y_max)
    if tail_tol is not None and tail > tail_tol:
        raise TailError(f"tail estimate {tail:.3e} exceeds {tail_tol:.3e}")
    return fine, abs(fine - coarse) + tail


def _domain_quadrature(f, spec: QuadratureSpec) -> float:
    fvec = _vectorize(f)
    xs, wxs = gauss_legendre_panels(-0.5, 0.5, spec.order, 2 * spec.panels)
    total = 0.0
    ypanels = max(4, 2 * spec.panels)
    for x, wx in zip(xs, wxs):
        y0 = float(np.sqrt(1.0 - x * x))
        ys, wys = geometric_panels(y0, spec.y_max, spec.order, ypanels)
        vals = fvec(np.full_like(ys, x), ys)
        total += wx * float(np.sum(wys * vals / ys**2))
    return total


def _tail_estimate(f, y_max: float) -> float:
    fvec = _vectorize(f)
    xs = np.linspace(-0.5, 0.5, 17)
    vals = fvec(xs, np.full_like(xs, y_max))
    return float(np.max(np.abs(vals))) / y_max


def _vectorize(f):
    """Accept either f(SiegelPoint) -> float or an object with eval_xy."""
    eval_xy = getattr(f, "eval_xy", None)
    if eval_xy is not None:
        return eval_xy

    def fallback(xs, ys):
        return np.array(
            [f(SiegelPoint.scalar(complex(x, y))) for x, y in zip(xs, ys)]
        )

    return fallback
