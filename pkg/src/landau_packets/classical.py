"""Classical reference dynamics: closed-form relativistic cyclotron motion
and a fixed-step RK4 integrator for covariant spin precession in a constant
magnetic field along z.

The integrator advances the pair (u, S) of four-vectors in lab time,
u = (gamma, b_vec) the dimensionless four-momentum and S the four-spin,

    du/d(tau) = K u_low,
    dS/d(tau) = (g/2) K S_low + (g/2 - 1) u (S_low K u_low),

with d(tau) = dt/gamma and K the dimensionless field tensor whose only
nonzero components are K^{12} = -K^{21} = 2h for a negative charge in a
field of strength h along +z.  A magnetic field does no work, so gamma is
conserved; orthogonality S.u and the spacelike norm of S are conserved by
the equation and drift only through integrator error, which is monitored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, IntegrationAccuracyError
from .evolution import closed_form_momentum, closed_form_spin, compute_invariants
from .kinematics import SpinKinematics
from .trajectory import Trajectory

#: default resolution of one cyclotron period
STEPS_PER_PERIOD = 1024

#: invariant drift beyond this aborts the run
DRIFT_LIMIT = 1e-6


@dataclass(frozen=True)
class ClassicalState:
    """Instantaneous classical state: four-momentum u, four-spin s, g-factor."""

    u: tuple[float, float, float, float]
    s: tuple[float, float, float, float]
    g_factor: float

    def orthogonality_residual(self) -> float:
        u, s = self.u, self.s
        return abs(s[0] * u[0] - s[1] * u[1] - s[2] * u[2] - s[3] * u[3])

    def norm_residual(self) -> float:
        s = self.s
        return abs(s[1] ** 2 + s[2] ** 2 + s[3] ** 2 - s[0] ** 2 - 1.0)


def classical_state_from_kinematics(kin: SpinKinematics, g_factor: float) -> ClassicalState:
    """Initial conditions matching the full-contrast packet at t = 0."""
    p = closed_form_momentum(kin, None, 1.0, 0.0)
    s = closed_form_spin(kin, None, 1.0, 1.0, 0.0)
    u = (kin.energy, float(p[0]), float(p[1]), float(p[2]))
    return ClassicalState(u=u, s=(float(s[0]), float(s[1]), float(s[2]), float(s[3])), g_factor=g_factor)


def classical_momentum(t, b_perp: float, b_z: float, omega: float) -> np.ndarray:
    """Closed-form cyclotron momentum (-b_perp sin wt, b_perp cos wt, b_z)."""
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.empty((t_arr.size, 3))
    out[:, 0] = -b_perp * np.sin(omega * t_arr)
    out[:, 1] = b_perp * np.cos(omega * t_arr)
    out[:, 2] = b_z
    return out if np.ndim(t) else out[0]


def cyclotron_omega(h_field: float, gamma: float) -> float:
    """Lab-time cyclotron frequency 2h/gamma of the classical motion."""
    return 2.0 * h_field / gamma


def anomalous_omega(h_field: float, gamma: float, b: float, g_factor: float) -> float:
    """Lab-time anomalous precession frequency (g/2 - 1) * 2h * b / gamma."""
    return (0.5 * g_factor - 1.0) * 2.0 * h_field * b / gamma


def _rhs(y: tuple, k: float, g: float) -> tuple:
    # lab-time right-hand side; y = (u0, u1, u2, u3, s0, s1, s2, s3)
    u0, u1, u2, u3, s0, s1, s2, s3 = y
    inv = 1.0 / u0
    half_g = 0.5 * g
    a = half_g - 1.0
    q = k * (s1 * u2 - s2 * u1)
    return (
        0.0,
        -k * u2 * inv,
        k * u1 * inv,
        0.0,
        a * q,
        (-half_g * k * s2 + a * u1 * q) * inv,
        (half_g * k * s1 + a * u2 * q) * inv,
        a * u3 * q * inv,
    )


def bmt_step(state: ClassicalState, h_field: float, dt: float) -> ClassicalState:
    """One classic fourth-order Runge-Kutta step in lab time."""
    y = state.u + state.s
    y = _rk4(y, 2.0 * h_field, state.g_factor, dt)
    return ClassicalState(u=y[:4], s=y[4:], g_factor=state.g_factor)


def _rk4(y: tuple, k: float, g: float, dt: float) -> tuple:
    k1 = _rhs(y, k, g)
    k2 = _rhs(tuple(a + 0.5 * dt * b for a, b in zip(y, k1)), k, g)
    k3 = _rhs(tuple(a + 0.5 * dt * b for a, b in zip(y, k2)), k, g)
    k4 = _rhs(tuple(a + dt * b for a, b in zip(y, k3)), k, g)
    return tuple(
        a + dt / 6.0 * (b1 + 2.0 * (b2 + b3) + b4)
        for a, b1, b2, b3, b4 in zip(y, k1, k2, k3, k4)
    )


def default_step(h_field: float, gamma: float) -> float:
    """Step resolving one cyclotron period with STEPS_PER_PERIOD points."""
    omega = cyclotron_omega(h_field, gamma)
    if omega <= 0:
        raise DomainError("h_field: need a positive field for a default step")
    return 2.0 * math.pi / (omega * STEPS_PER_PERIOD)


def bmt_integrate(
    init: ClassicalState,
    h_field: float,
    t_max: float | None = None,
    dt: float | None = None,
    record_times: np.ndarray | None = None,
    check_drift: bool = True,
) -> Trajectory:
    """Integrate the spin precession and collect a trajectory.

    Either ``record_times`` gives the sample grid (starting at 0) and the
    integrator lands on each sample exactly with substeps no longer than
    ``dt``, or ``t_max`` is split into uniform steps of at most ``dt`` and
    every step is recorded.  Invariant drift beyond DRIFT_LIMIT raises
    IntegrationAccuracyError.
    """
    gamma = init.u[0]
    if dt is None:
        dt = default_step(h_field, gamma)
    if record_times is None:
        if t_max is None or t_max <= 0:
            raise DomainError(f"t_max: must be > 0, got {t_max}")
        steps = max(1, math.ceil(t_max / dt))
        record_times = t_max * np.arange(steps + 1) / steps
    else:
        record_times = np.asarray(record_times, dtype=float)
        if record_times[0] != 0.0:
            raise DomainError("record_times: grid must start at t = 0")

    k = 2.0 * h_field
    g = init.g_factor
    y = init.u + init.s
    samples = [y]
    for t_prev, t_next in zip(record_times[:-1], record_times[1:]):
        span = t_next - t_prev
        substeps = max(1, math.ceil(span / dt - 1e-12))
        sub = span / substeps
        for _ in range(substeps):
            y = _rk4(y, k, g, sub)
        samples.append(y)

    arr = np.asarray(samples)
    p = arr[:, 1:4]
    s = arr[:, 4:8]
    p0 = arr[:, 0]
    report = compute_invariants(p, s, p0)
    traj = Trajectory(
        times=record_times, p=p, s=s, p0=p0, res_sp=report.res_sp, res_ss=report.res_ss
    )
    if check_drift:
        worst = max(float(np.max(report.res_sp)), float(np.max(report.res_ss)))
        if worst > DRIFT_LIMIT:
            raise IntegrationAccuracyError(
                f"invariant drift {worst:.3e} exceeds {DRIFT_LIMIT}; reduce the step"
            )
    return traj
