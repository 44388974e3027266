"""Curvature-regularized refinement of the interpolated green plane.

Minimizes  0.5 * sum((g_hat - g)^2) + lam * sum(|kappa(g)|)  over full-
resolution green planes g, where kappa is the mean curvature of the image
surface,  kappa(I) = div( grad I / sqrt(|grad I|^2 + 1) ).

The nonsmooth, nonlinear curvature term is handled by variable splitting
with an augmented Lagrangian: auxiliary fields

    p ~ [grad g, 1]      (3-vector per pixel)
    n ~ p / |p|          (3-vector per pixel, relaxed)
    m ~ n, |m| <= 1      (3-vector per pixel, constrained to the unit ball)
    q ~ div n            (the curvature surrogate carrying the L1 term)

are coupled through quadratic penalties r1..r4 and multiplier fields
lam1..lam4. Each outer iteration solves the five subproblems in the order
p, m, q, n, g and then ascends the multipliers. The q, p and m updates have
closed forms (shrinkage, a norm shrinkage and a ball projection); the n and
g subproblems are linear and handled by Gauss-Seidel sweeps (see _kernels).

Discretization: forward differences for gradients, backward differences for
divergences (the adjoint-consistent pairing), spacing h, whole-sample
reflective boundaries throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .grid import as_plane, l2_relative_change, reflect_index, reflect_indices


class SolverNumericsError(RuntimeError):
    """Raised when a subproblem update produces non-finite values."""


@dataclass
class McParams:
    """Scalars of the refinement model and its solver.

    Defaults are the working configuration for [0, 255] intensity data:
    lam = 2e-3, h = 5, (r1, r2, r3, r4) = (40, 40, 100, 100), stopping when
    the relative iterate change falls below 1e-4.
    """

    lam: float = 2e-3
    h: float = 5.0
    r1: float = 40.0
    r2: float = 40.0
    r3: float = 100.0
    r4: float = 100.0
    inner_sweeps: int = 10
    outer_tol: float = 1e-4
    max_outer: int = 200

    def __post_init__(self):
        for name in ("lam", "h", "r1", "r2", "r3", "r4", "outer_tol"):
            if getattr(self, name) <= 0:
                raise ValueError(f"McParams.{name} must be > 0")
        if self.inner_sweeps < 1 or self.max_outer < 1:
            raise ValueError("sweep and iteration counts must be >= 1")


class _Stencils:
    """Forward-gradient / backward-divergence pair with reflective borders."""

    def __init__(self, shape, h):
        height, width = shape
        self.h = float(h)
        self.im1 = reflect_indices(width, -1)
        self.ip1 = reflect_indices(width, +1)
        self.jm1 = reflect_indices(height, -1)
        self.jp1 = reflect_indices(height, +1)

    def gx(self, u):
        return (u[:, self.ip1] - u) / self.h

    def gy(self, u):
        return (u[self.jp1, :] - u) / self.h

    def div(self, v1, v2):
        return (v1 - v1[:, self.im1]) / self.h + (v2 - v2[self.jm1, :]) / self.h


def shrink(x, t):
    """Soft threshold sign(x) * max(|x| - t, 0); the minimizer of t|q| + (q-x)^2/2."""
    return np.sign(x) * np.maximum(np.abs(x) - t, 0.0)


def mean_curvature(p: np.ndarray, h: float) -> np.ndarray:
    """Discrete mean curvature div(grad p / sqrt(|grad p|^2 + 1)).

    Central differences for both passes, spacing h, reflective boundaries.
    This is the reference operator used by the energy functional and tests;
    the solver itself works on the split formulation above.
    """
    if h <= 0:
        raise ValueError("spacing h must be > 0")
    height, width = p.shape
    im1, ip1 = reflect_indices(width, -1), reflect_indices(width, +1)
    jm1, jp1 = reflect_indices(height, -1), reflect_indices(height, +1)
    gx = (p[:, ip1] - p[:, im1]) / (2.0 * h)
    gy = (p[jp1, :] - p[jm1, :]) / (2.0 * h)
    denom = np.sqrt(gx * gx + gy * gy + 1.0)
    f1 = gx / denom
    f2 = gy / denom
    return (f1[:, ip1] - f1[:, im1]) / (2.0 * h) + (f2[jp1, :] - f2[jm1, :]) / (2.0 * h)


def energy(g_hat: np.ndarray, g_tilde: np.ndarray, lam: float, h: float) -> float:
    """0.5 * sum((g_hat - g_tilde)^2) + lam * sum(|kappa(g_tilde)|)."""
    if g_hat.shape != g_tilde.shape:
        raise ValueError(f"plane dimensions differ: {g_hat.shape} vs {g_tilde.shape}")
    fidelity = 0.5 * float(np.sum((g_hat - g_tilde) ** 2))
    return fidelity + lam * float(np.sum(np.abs(mean_curvature(g_tilde, h))))


@dataclass
class SolverState:
    """All solver fields. Vector fields are (3, height, width) arrays."""

    g_tilde: np.ndarray
    q: np.ndarray
    p: np.ndarray
    n: np.ndarray
    m: np.ndarray
    lam1: np.ndarray
    lam2: np.ndarray
    lam3: np.ndarray
    lam4: np.ndarray
    clamp_events: int = 0          # times r1 + lam1 dropped below 0 and was clamped
    stencils: _Stencils = field(default=None, repr=False)


def init_state(g_hat: np.ndarray, params: McParams) -> SolverState:
    """Start from g = g_hat with p = [grad g, 1], n = m = p/|p|, q = div n."""
    g = as_plane(g_hat).copy()
    st = _Stencils(g.shape, params.h)
    p = np.stack([st.gx(g), st.gy(g), np.ones_like(g)])
    norm = np.sqrt((p * p).sum(axis=0))    # >= 1 because p3 = 1
    n = p / norm
    grid = np.zeros_like(g)
    vec = np.zeros_like(p)
    return SolverState(
        g_tilde=g, q=st.div(n[0], n[1]), p=p, n=n, m=n.copy(),
        lam1=grid.copy(), lam2=vec.copy(), lam3=grid.copy(), lam4=vec.copy(),
        stencils=st,
    )


def _alignment_coeff(state: SolverState, params: McParams) -> np.ndarray:
    """r1 + lam1, clamped at 0 against multiplier drift (counted for diagnostics)."""
    c = params.r1 + state.lam1
    bad = c < 0
    if bad.any():
        state.clamp_events += int(bad.sum())
        c = np.maximum(c, 0.0)
    return c


def update_p(state: SolverState, params: McParams) -> np.ndarray:
    """Closed-form minimizer of c(|p| - p.m) + (r2/2)|p - [grad g, 1]|^2 + lam2.p.

    With w = r2 [grad g, 1] - lam2 + c m: p = 0 when |w| <= c, otherwise
    p = ((|w| - c) / r2) * w / |w|.
    """
    st = state.stencils
    c = _alignment_coeff(state, params)
    a = np.stack([st.gx(state.g_tilde), st.gy(state.g_tilde), np.ones_like(state.g_tilde)])
    w = params.r2 * a - state.lam2 + c * state.m
    wn = np.sqrt((w * w).sum(axis=0))
    scale = np.zeros_like(wn)
    np.divide(wn - c, params.r2 * wn, out=scale, where=wn > c)
    state.p = w * scale
    return state.p


def update_m(state: SolverState, params: McParams) -> np.ndarray:
    """Project n + (lam4 + (r1 + lam1) p) / r4 onto the closed unit ball."""
    c = _alignment_coeff(state, params)
    t = state.n + (state.lam4 + c * state.p) / params.r4
    tn = np.sqrt((t * t).sum(axis=0))
    state.m = t * np.where(tn > 1.0, 1.0 / np.maximum(tn, 1e-300), 1.0)
    return state.m


def update_q(state: SolverState, params: McParams) -> np.ndarray:
    """Pointwise shrinkage q = shrink(div n - lam3/r3, lam/r3)."""
    st = state.stencils
    divn = st.div(state.n[0], state.n[1])
    state.q = shrink(divn - state.lam3 / params.r3, params.lam / params.r3)
    return state.q


def _vector_diag(n_points: int, r4: float, rh: float) -> np.ndarray:
    """Exact diagonal of the n-system along one axis.

    The coefficient of n_a at its own pixel inside the forward difference of
    the backward divergence depends on how reflection folds the stencil, so
    it is derived from the same reflect_index used by the sweeps.
    """
    diag = np.empty(n_points, dtype=np.float64)
    for i in range(n_points):
        e = reflect_index(i + 1, n_points)
        c_here = 1 - (1 if reflect_index(i - 1, n_points) == i else 0)
        c_east = (1 if e == i else 0) - (1 if reflect_index(e - 1, n_points) == i else 0)
        diag[i] = r4 - rh * (c_east - c_here)
    return diag


def update_n(state: SolverState, params: McParams) -> np.ndarray:
    """Gauss-Seidel solve of r4 n - r3 grad(div n) = r4 m - lam4 - grad(r3 q + lam3).

    The third component decouples (no derivative touches it) and is updated
    in closed form; components 1 and 2 get params.inner_sweeps sweeps.
    """
    st = state.stencils
    r3, r4 = params.r3, params.r4
    state.n[2] = state.m[2] - state.lam4[2] / r4
    src = r3 * state.q + state.lam3
    rhs1 = r4 * state.m[0] - state.lam4[0] - st.gx(src)
    rhs2 = r4 * state.m[1] - state.lam4[1] - st.gy(src)
    rh = r3 / (params.h * params.h)
    height, width = state.g_tilde.shape
    diag1 = _vector_diag(width, r4, rh)
    diag2 = _vector_diag(height, r4, rh)
    _kernels.vector_sweeps(
        state.n[0], state.n[1], rhs1, rhs2, r4, rh, diag1, diag2,
        st.im1, st.ip1, st.jm1, st.jp1, params.inner_sweeps,
    )
    return state.n


def gauss_seidel_sweep(state: SolverState, g_hat: np.ndarray, params: McParams,
                       nsweeps: int = 1) -> np.ndarray:
    """Sweep(s) of (1 + 4 r2/h^2) g = src + (r2/h^2)(W + E + S + N neighbors),

    src = g_hat - dx(r2 p1 + lam2_1) - dy(r2 p2 + lam2_2), with dx/dy the
    backward differences over h. In-sweep ordering: west and south neighbors
    already updated, east and north from the previous sweep.
    """
    st = state.stencils
    src = g_hat - st.div(params.r2 * state.p[0] + state.lam2[0],
                         params.r2 * state.p[1] + state.lam2[1])
    coef = params.r2 / (params.h * params.h)
    _kernels.green_sweeps(state.g_tilde, src, coef,
                          st.im1, st.ip1, st.jm1, st.jp1, nsweeps)
    return state.g_tilde


def update_multipliers(state: SolverState, params: McParams) -> None:
    """Standard ascent lam_k += r_k * (constraint residual)."""
    st = state.stencils
    a = np.stack([st.gx(state.g_tilde), st.gy(state.g_tilde),
                  np.ones_like(state.g_tilde)])
    pn = np.sqrt((state.p * state.p).sum(axis=0))
    state.lam1 = state.lam1 + params.r1 * (pn - (state.p * state.m).sum(axis=0))
    state.lam2 = state.lam2 + params.r2 * (state.p - a)
    state.lam3 = state.lam3 + params.r3 * (state.q - st.div(state.n[0], state.n[1]))
    state.lam4 = state.lam4 + params.r4 * (state.n - state.m)


def constraint_residuals(state: SolverState, params: McParams) -> dict:
    """L2 norms of the four splitting constraints (diagnostics and tests)."""
    st = state.stencils
    a = np.stack([st.gx(state.g_tilde), st.gy(state.g_tilde),
                  np.ones_like(state.g_tilde)])
    pn = np.sqrt((state.p * state.p).sum(axis=0))
    return {
        "alignment": float(np.linalg.norm(pn - (state.p * state.m).sum(axis=0))),
        "gradient": float(np.linalg.norm(state.p - a)),
        "curvature": float(np.linalg.norm(state.q - st.div(state.n[0], state.n[1]))),
        "unit": float(np.linalg.norm(state.n - state.m)),
    }


def _check_finite(arr: np.ndarray, stage: str, iteration: int) -> None:
    if not np.isfinite(arr).all():
        raise SolverNumericsError(
            f"non-finite values after the {stage} update (outer iteration {iteration})")


def solve(g_hat: np.ndarray, params: McParams | None = None,
          state: SolverState | None = None) -> np.ndarray:
    """Refine g_hat; iterates until the relative change drops below outer_tol.

    Pass a pre-built ``state`` to inspect solver fields after the run.
    """
    params = params or McParams()
    g_hat = as_plane(g_hat)
    if state is None:
        state = init_state(g_hat, params)
    for it in range(1, params.max_outer + 1):
        prev = state.g_tilde.copy()
        update_p(state, params)
        _check_finite(state.p, "p", it)
        update_m(state, params)
        _check_finite(state.m, "m", it)
        update_q(state, params)
        _check_finite(state.q, "q", it)
        update_n(state, params)
        _check_finite(state.n, "n", it)
        gauss_seidel_sweep(state, g_hat, params, nsweeps=params.inner_sweeps)
        _check_finite(state.g_tilde, "green Gauss-Seidel", it)
        update_multipliers(state, params)
        for arr, name in ((state.lam1, "lam1"), (state.lam2, "lam2"),
                          (state.lam3, "lam3"), (state.lam4, "lam4")):
            _check_finite(arr, f"multiplier {name}", it)
        cur_norm = float(np.linalg.norm(state.g_tilde))
        if cur_norm == 0.0:
            change = float(np.linalg.norm(state.g_tilde - prev))
        else:
            change = l2_relative_change(state.g_tilde, prev)
        if change <= params.outer_tol:
            break
    return state.g_tilde
