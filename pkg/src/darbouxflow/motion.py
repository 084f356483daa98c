"""Isoperimetric motions of discrete plane curves: x_n' = e^{i(psi_n + w_n)}.

The deformation angles w obey w_{n+1} + kappa_{n+1} = -w_n, which makes every
edge length a_n a conserved quantity; the recorded potential theta (the
tangential angle of each vertex trajectory) then satisfies the semi-discrete
potential mKdV equation (theta_{n+1}+theta_n)'/2 = (2/a_n) sin((theta_{n+1}-theta_n)/2).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import BlowupError, CoincidentPointsError, CurveError, NonRegularError
from .geometry import EPS_REG, DiscretePolarizedCurve, SGrid, Sheet, cross, fd_derivative
from .ode import rk4_path

#: Largest per-step angle change the recorder accepts before declaring the
#: step size too coarse to track branches.
MAX_ANGLE_JUMP = 0.5 * math.pi


@dataclass(frozen=True, eq=False)
class DiscreteFrameData:
    """Edge data of a discrete curve: lengths a_n, unit tangents/normals,
    unwrapped edge angles psi_n and interior turning angles kappa (kappa[j] is
    the turn at vertex j+1, so psi[j+1] = psi[j] + kappa[j])."""

    a: np.ndarray
    tangent: np.ndarray
    normal: np.ndarray
    psi: np.ndarray
    kappa: np.ndarray


@dataclass(frozen=True, eq=False)
class MotionState:
    """One instant of a motion: the vertices, their frame, the deformation
    angles w (one per edge vertex) and the velocity angles theta (one per vertex)."""

    vertices: np.ndarray
    frame: DiscreteFrameData
    w: np.ndarray
    theta: np.ndarray


def discrete_frame(vertices, eps_reg: float = EPS_REG) -> DiscreteFrameData:
    """Frame of a regular discrete curve; raises NonRegularError at any vertex
    whose adjacent edges fold back on each other (turning angle at +-pi).

    A zero turning angle (collinear edges pointing the same way) is fine: the
    curvature and the w-recursion stay well defined, and several motions pass
    through such configurations.  Only a reversal makes the unwrapped tangent
    angle ill-defined.
    """
    v = np.asarray(vertices, dtype=complex)
    if v.ndim != 1 or len(v) < 2:
        raise CurveError("a discrete frame needs at least two vertices")
    edges = np.diff(v)
    a = np.abs(edges)
    if a.min() <= eps_reg:
        n = int(np.argmin(a))
        raise CoincidentPointsError(f"edge ({n}, {n + 1}) has length {a.min():.3e}")
    t = edges / a
    turn = np.angle(t[1:] / t[:-1])
    # Turning bound |kappa| < pi: adjacent edges must not be anti-parallel.
    slack = math.pi - np.abs(turn)
    bad = slack <= eps_reg
    if bad.any():
        n = int(np.argmax(bad)) + 1
        raise NonRegularError(
            f"vertex {n} is not regular (adjacent edges anti-parallel)", vertex=n)
    psi = np.empty(len(t))
    psi[0] = np.angle(t[0])
    psi[1:] = psi[0] + np.cumsum(turn)
    return DiscreteFrameData(a=a, tangent=t, normal=1j * t, psi=psi, kappa=turn)


def seed_w(frame: DiscreteFrameData, w0: float, n0: int) -> np.ndarray:
    """Deformation angles from the isoperimetric recursion w_{n+1} = -w_n - kappa_{n+1},
    seeded with w_{n0} = w0 and run outward in both directions."""
    num = len(frame.psi)
    if not 0 <= n0 < num:
        raise CurveError(f"seed edge {n0} outside 0..{num - 1}")
    w = np.empty(num)
    w[n0] = w0
    for k in range(n0, num - 1):
        w[k + 1] = -w[k] - frame.kappa[k]
    for k in range(n0, 0, -1):
        w[k - 1] = -w[k] - frame.kappa[k - 1]
    return w


def motion_state(vertices, w0: float, n0: int, eps_reg: float = EPS_REG) -> MotionState:
    """Assemble the motion state: frame, w-recursion, and velocity angles.

    theta_n = psi_n + w_n at every frame vertex; the final vertex (which has no
    outgoing edge) gets theta = psi - w of the last edge, which is where the
    recursion would continue and is what keeps the last edge length conserved.
    """
    v = np.asarray(vertices, dtype=complex)
    frame = discrete_frame(v, eps_reg)
    w = seed_w(frame, w0, n0)
    theta = np.empty(len(v))
    theta[:-1] = frame.psi + w
    theta[-1] = frame.psi[-1] - w[-1]
    return MotionState(vertices=v, frame=frame, w=w, theta=theta)


def motion_rhs(state: MotionState) -> np.ndarray:
    """Vertex velocities e^{i theta_n}; unit speed by construction."""
    return np.exp(1j * state.theta)


@dataclass(frozen=True, eq=False)
class MotionResult:
    """Sheet of vertex trajectories plus the recorded angles theta_n(s_i)."""

    sheet: Sheet
    theta: np.ndarray

    @property
    def psi(self) -> np.ndarray:
        return 0.5 * (self.theta[1:] + self.theta[:-1])

    @property
    def w(self) -> np.ndarray:
        return -0.5 * (self.theta[1:] - self.theta[:-1])

    @cached_property
    def a(self) -> np.ndarray:
        """Edge lengths a_n(s_i); conserved along s up to solver error."""
        return np.abs(np.diff(self.sheet.values, axis=0))


def integrate_motion(curve0, w0, n0: int, grid: SGrid,
                     eps_reg: float = EPS_REG) -> MotionResult:
    """RK4-step all vertices of ``curve0`` under the isoperimetric motion.

    ``w0`` may be a constant or a function of s; the w-recursion is re-run from
    (w0(s), n0) against the current turning angles at every RK4 stage, so the
    constraint holds exactly rather than drifting. Recorded theta rows are
    unwrapped along s by nearest-branch selection.
    """
    if isinstance(curve0, DiscretePolarizedCurve):
        curve0 = curve0.vertices
    v0 = np.asarray(curve0, dtype=complex)
    w_fn = w0 if callable(w0) else (lambda s: w0)

    def rhs(s, x):
        return motion_rhs(motion_state(x, w_fn(s), n0, eps_reg))

    states = rk4_path(grid.values(), rhs, v0)
    svals = grid.values()
    theta = np.empty((grid.count, len(v0)))
    for i in range(grid.count):
        theta[i] = motion_state(states[i], w_fn(svals[i]), n0, eps_reg).theta
        if i:
            theta[i] += 2.0 * math.pi * np.round((theta[i - 1] - theta[i]) / (2.0 * math.pi))
            jump = np.abs(theta[i] - theta[i - 1]).max()
            if jump >= MAX_ANGLE_JUMP:
                raise BlowupError(
                    f"angle jump {jump:.3f} at grid index {i}: step too coarse to "
                    f"track branches", index=i)
    th = theta.T.copy()
    return MotionResult(sheet=Sheet(grid, states.T.copy(), tangents=np.exp(1j * th)),
                        theta=th)


def tangential_angles(sheet: Sheet, reference: np.ndarray | None = None) -> np.ndarray:
    """theta_n(s_i) recovered from a sheet alone: the argument of each row's
    derivative, unwrapped along s.

    Each row carries a free 2*pi offset.  Without ``reference`` the offsets are
    chained so consecutive rows differ by less than pi at the first node, which
    is ambiguous when the true jump is pi or larger (e.g. velocity reversals
    between neighbouring vertices).  Passing a ``reference`` theta array (same
    shape, or one value per row) pins each row's branch to the one nearest the
    reference instead.
    """
    th = np.unwrap(np.angle(sheet.row_derivatives), axis=1)
    if reference is not None:
        ref = np.asarray(reference, dtype=float)
        anchors = ref[:, 0] if ref.ndim == 2 else ref
        if anchors.shape[0] != sheet.rows:
            raise CurveError("reference must provide one angle per sheet row")
        for n in range(sheet.rows):
            th[n] += 2.0 * math.pi * round((anchors[n] - th[n, 0]) / (2.0 * math.pi))
    else:
        for n in range(1, sheet.rows):
            th[n] += 2.0 * math.pi * round((th[n - 1, 0] - th[n, 0]) / (2.0 * math.pi))
    return th


def mkdv_residual(theta: np.ndarray, a, grid: SGrid) -> float:
    """Max residual of the semi-discrete potential mKdV equation.

    |d/ds[(theta_{n+1}+theta_n)/2] - (2/a_n) sin((theta_{n+1}-theta_n)/2)| over
    every edge and interior grid node (central-stencil region), with the s
    derivative taken by 4th-order finite differences.
    """
    theta = np.asarray(theta, dtype=float)
    a_arr = np.asarray(a, dtype=float)
    if a_arr.ndim == 1:
        a_arr = a_arr[:, None]
    if np.any(a_arr <= 0):
        raise CurveError("edge lengths must be positive")
    lhs = fd_derivative(0.5 * (theta[1:] + theta[:-1]), grid.h, axis=1)
    rhs = (2.0 / a_arr) * np.sin(0.5 * (theta[1:] - theta[:-1]))
    res = np.abs(lhs - rhs)
    inner = res[:, 2:-2] if grid.count >= 5 else res
    return float(inner.max()) if inner.size else 0.0


def frame_compatibility_check(result: MotionResult):
    """Residuals of the frame compatibility law L_n' = L_n M_{n+1} - M_n L_n.

    L_n = R(kappa_{n+1}) and M_n = (2 sin w_n / a_n) [[0, 1], [-1, 0]] are built
    at every node from the recorded angles; L is finite-differenced in s.
    Returns (matrix_defect, scalar_defect) where the scalar part checks
    psi_n' + (2/a_n) sin w_n = 0; the matrix part is vacuously 0 without an
    interior vertex.
    """
    psi, w, a = result.psi, result.w, result.a
    h = result.sheet.grid.h
    alpha = 2.0 * np.sin(w) / a
    scalar = float(np.abs(fd_derivative(psi, h, axis=1) + alpha).max())
    if len(psi) < 2:
        return 0.0, scalar
    kappa = psi[1:] - psi[:-1]
    c, s = np.cos(kappa), np.sin(kappa)
    diff = alpha[1:] - alpha[:-1]
    e1 = fd_derivative(c, h, axis=1) - diff * s
    e2 = fd_derivative(s, h, axis=1) + diff * c
    matrix = float(max(np.abs(e1).max(), np.abs(e2).max()))
    return matrix, scalar


def smooth_curvature(sheet: Sheet) -> np.ndarray:
    """Curvature k_n(s_i) of each row, from x'' = i k x' (finite differences)."""
    xp = sheet.row_derivatives
    xpp = fd_derivative(xp, sheet.grid.h, axis=1)
    return cross(xp, xpp) / np.abs(xp) ** 3
