"""Dimensionless kinematics of Landau levels for spin-0 and spin-1/2 particles.

UNITS: everything is dimensionless. Energies are measured in units of the
rest energy m0*c^2, momenta in m0*c, times in hbar/(m0*c^2) and frequencies
in m0*c^2/hbar.  The magnetic field enters only through the strength
h = mu0*H/(m0*c^2) (mu0 the Bohr magneton); the anomalous part of the
magnetic moment enters only through the product anomaly*h.

Conventions:
- transverse momentum of level n:  b_perp = 2*sqrt(h*(n + 1/2)) for spin-0
  states and b_perp = 2*sqrt(h*n) for spin-1/2 states;
- b = sqrt(1 + b_perp^2), the transverse energy factor;
- spin-1/2 level energy  B = sqrt(b_z^2 + (b + zeta*anomaly*h)^2);
- the cyclotron frequency is defined operationally as the gap between
  adjacent levels, the anomalous frequency as the zeta-splitting of one
  level; both come with their large-n / small-anomaly closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import DomainError, SingularConfigurationError

#: One-loop QED value alpha/(2*pi) of the anomalous-moment ratio.
DEFAULT_ANOMALY = 1.16141e-3

SCALAR = "scalar"
SPINOR = "spinor"


@dataclass(frozen=True)
class FieldConfig:
    """Global run parameters.

    Attributes
    ----------
    h : float
        Dimensionless field strength mu0*H/(m0*c^2), >= 0.
    anomaly : float
        Anomalous-moment ratio, >= 0.  Zero selects the pure Dirac case.
    b_z : float
        Longitudinal momentum p_z/(m0*c).
    """

    h: float
    anomaly: float = DEFAULT_ANOMALY
    b_z: float = 0.0

    def __post_init__(self) -> None:
        if self.h < 0:
            raise DomainError(f"h: field strength must be >= 0, got {self.h}")
        if self.anomaly < 0:
            raise DomainError(f"anomaly: must be >= 0, got {self.anomaly}")

    def without_anomaly(self) -> "FieldConfig":
        return replace(self, anomaly=0.0)


@dataclass(frozen=True)
class QuantumNumbers:
    """Labels (n, s, l, zeta) of one stationary state, with n = l + s.

    ``zeta`` is the spin quantum number (+1/-1) and stays ``None`` for
    spin-0 states.
    """

    n: int
    s: int
    zeta: int | None = None

    def __post_init__(self) -> None:
        if self.n < 0:
            raise DomainError(f"n: principal quantum number must be >= 0, got {self.n}")
        if self.s < 0:
            raise DomainError(f"s: radial quantum number must be >= 0, got {self.s}")
        if self.zeta not in (None, -1, 1):
            raise DomainError(f"zeta: must be +1, -1 or None, got {self.zeta}")

    @property
    def l(self) -> int:
        """Azimuthal quantum number l = n - s."""
        return self.n - self.s


def transverse_momentum(h: float, n: int, kind: str = SPINOR) -> float:
    """Transverse momentum b_perp of level n, in units of m0*c.

    Spin-0 levels carry the half-quantum zero-point offset, spin-1/2
    levels do not.
    """
    if h < 0:
        raise DomainError(f"h: must be >= 0, got {h}")
    if n < 0:
        raise DomainError(f"n: must be >= 0, got {n}")
    if kind == SCALAR:
        return 2.0 * math.sqrt(h * (n + 0.5))
    if kind == SPINOR:
        return 2.0 * math.sqrt(h * n)
    raise DomainError(f"kind: must be 'scalar' or 'spinor', got {kind!r}")


def energy_scalar(cfg: FieldConfig, n: int) -> float:
    """Level energy of a spin-0 state, in units of m0*c^2."""
    b_perp = transverse_momentum(cfg.h, n, SCALAR)
    return math.sqrt(1.0 + cfg.b_z**2 + b_perp**2)


def energy_spinor(cfg: FieldConfig, n: int, zeta: int) -> float:
    """Level energy of a spin-1/2 state with spin quantum number zeta."""
    if zeta not in (-1, 1):
        raise DomainError(f"zeta: must be +1 or -1, got {zeta}")
    b_perp = transverse_momentum(cfg.h, n, SPINOR)
    b = math.sqrt(1.0 + b_perp**2)
    return math.sqrt(cfg.b_z**2 + (b + zeta * cfg.anomaly * cfg.h) ** 2)


def helicity_eigenvalue(b_perp: float, b_z: float, epsilon: int) -> float:
    """Eigenvalue of the longitudinal-polarization operator at t = 0."""
    if epsilon not in (-1, 1):
        raise DomainError(f"epsilon: must be +1 or -1, got {epsilon}")
    return epsilon * math.hypot(b_perp, b_z)


def spin_mixing_ratio(
    cfg: FieldConfig, n: int, epsilon: int, zeta_ref: int | None = None
) -> float:
    """Ratio kappa = A(+1)/A(-1) of the two spin amplitudes of a
    longitudinally polarized level.

    ``zeta_ref`` selects which zeta branch provides the level energy in the
    denominator; it defaults to the helicity sign epsilon.  Raises
    SingularConfigurationError for purely longitudinal motion (b_perp = 0),
    where the ratio is undefined.
    """
    if epsilon not in (-1, 1):
        raise DomainError(f"epsilon: must be +1 or -1, got {epsilon}")
    b_perp = transverse_momentum(cfg.h, n, SPINOR)
    if b_perp == 0.0:
        raise SingularConfigurationError(
            "b_perp = 0 (h = 0 or n = 0): spin mixing ratio is undefined"
        )
    zeta = epsilon if zeta_ref is None else zeta_ref
    b = math.sqrt(1.0 + b_perp**2)
    big_b = energy_spinor(cfg, n, zeta)
    return (cfg.b_z + epsilon * b * math.hypot(b_perp, cfg.b_z)) / (big_b * b_perp)


def polarization_constants(kappa: float) -> tuple[float, float]:
    """Transverse and longitudinal polarization constants (zeta_perp, zeta_z).

    zeta_perp = 2*kappa/(kappa^2 + 1); zeta_z carries the sign of
    kappa^2 - 1 so that zeta_z equals the population imbalance of the two
    spin components, and zeta_perp^2 + zeta_z^2 = 1 identically.
    """
    if not math.isfinite(kappa):
        raise DomainError(f"kappa: must be finite, got {kappa}")
    denom = kappa * kappa + 1.0
    return 2.0 * kappa / denom, (kappa * kappa - 1.0) / denom


def cyclotron_frequency(
    cfg: FieldConfig, n: int, zeta: int = 1, kind: str = SPINOR
) -> tuple[float, float]:
    """Orbital rotation frequency, in units of m0*c^2/hbar.

    Returns
    -------
    (omega_exact, omega_asymptotic)
        ``omega_exact`` is the energy gap between levels n+1 and n;
        ``omega_asymptotic`` is the relativistic cyclotron value 2*h/B(n),
        which the gap approaches as O(1/n).
    """
    if kind == SCALAR:
        b_n = energy_scalar(cfg, n)
        exact = energy_scalar(cfg, n + 1) - b_n
    elif kind == SPINOR:
        if n < 1:
            raise DomainError(f"n: spin-1/2 levels need n >= 1, got {n}")
        b_n = energy_spinor(cfg, n, zeta)
        exact = energy_spinor(cfg, n + 1, zeta) - b_n
    else:
        raise DomainError(f"kind: must be 'scalar' or 'spinor', got {kind!r}")
    return exact, 2.0 * cfg.h / b_n


def anomalous_frequency(cfg: FieldConfig, n: int) -> tuple[float, float]:
    """Zeta-splitting of level n, in units of m0*c^2/hbar.

    Returns
    -------
    (omega_a_exact, omega_a_closed)
        ``omega_a_exact`` is the energy difference between the zeta = +1 and
        zeta = -1 branches; ``omega_a_closed`` is the closed form
        2*anomaly*h*b/sqrt(b_z^2 + b^2), accurate to relative
        O((anomaly*h)^2).
    """
    if n < 1:
        raise DomainError(f"n: spin-1/2 levels need n >= 1, got {n}")
    exact = energy_spinor(cfg, n, +1) - energy_spinor(cfg, n, -1)
    b_perp = transverse_momentum(cfg.h, n, SPINOR)
    b = math.sqrt(1.0 + b_perp**2)
    closed = 2.0 * cfg.anomaly * cfg.h * b / math.hypot(cfg.b_z, b)
    return exact, closed


@dataclass(frozen=True)
class SpinKinematics:
    """Frozen kinematic snapshot of the reference level of a packet.

    All downstream closed forms (momentum and spin trajectories, matrix
    element prefactors) read from one of these, so building it once pins
    the semiclassical freezing consistently.
    """

    b_perp: float
    b: float
    b_z: float
    energy: float
    kappa: float
    zeta_perp: float
    zeta_z: float
    epsilon: int

    def __post_init__(self) -> None:
        if abs(self.b - math.sqrt(1.0 + self.b_perp**2)) > 1e-12 * self.b:
            raise DomainError("b: must equal sqrt(1 + b_perp^2)")
        if abs(self.zeta_perp**2 + self.zeta_z**2 - 1.0) > 1e-12:
            raise DomainError("zeta_perp^2 + zeta_z^2 must equal 1")

    @classmethod
    def from_field(
        cls,
        cfg: FieldConfig,
        n: int,
        epsilon: int = 1,
        zeta_ref: int | None = None,
        anomaly_free: bool = False,
    ) -> "SpinKinematics":
        """Build the snapshot at level n.

        With ``anomaly_free=True`` the energy and the mixing ratio are
        evaluated at anomaly = 0, i.e. B^2 = b^2 + b_z^2 exactly.  That is
        the kinematics solving the classical spin-precession equation, and
        the one under which the four-spin invariants close identically.
        """
        eff = cfg.without_anomaly() if anomaly_free else cfg
        b_perp = transverse_momentum(eff.h, n, SPINOR)
        if b_perp == 0.0:
            raise SingularConfigurationError(
                "b_perp = 0 (h = 0 or n = 0): spin kinematics undefined"
            )
        b = math.sqrt(1.0 + b_perp**2)
        zeta = epsilon if zeta_ref is None else zeta_ref
        kappa = spin_mixing_ratio(eff, n, epsilon, zeta)
        zeta_perp, zeta_z = polarization_constants(kappa)
        return cls(
            b_perp=b_perp,
            b=b,
            b_z=eff.b_z,
            energy=energy_spinor(eff, n, zeta),
            kappa=kappa,
            zeta_perp=zeta_perp,
            zeta_z=zeta_z,
            epsilon=epsilon,
        )
