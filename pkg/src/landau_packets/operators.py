"""Closed-form matrix elements of the momentum and spin observables between
neighboring Landau levels, assembled into band-sparse Hermitian tables.

The transverse momentum components connect adjacent levels only and are
diagonal in the spin quantum number; the transverse spin components flip
the spin quantum number and also connect adjacent levels; the longitudinal
spin components are diagonal in the level index with both spin-diagonal and
spin-flip parts.  In the default frozen mode every entry of a table uses
the kinematic factors (b_perp, b, B) of the packet's reference level, which
is the regime in which the closed-form trajectories are exact.  The
optional per-level mode re-evaluates the factors at each entry's own level
to quantify the dispersion neglected by the freezing.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import DomainError
from .kinematics import (
    SCALAR,
    SPINOR,
    FieldConfig,
    energy_spinor,
    transverse_momentum,
)

MOMENTUM_OBSERVABLES = ("Px", "Py", "Pz")
SPIN_OBSERVABLES = ("Sx", "Sy", "Sz", "S0")
OBSERVABLES = MOMENTUM_OBSERVABLES + SPIN_OBSERVABLES

#: spin label used for spin-0 states, where zeta is not a quantum number
NO_SPIN = 0


def scalar_momentum_element(
    m_prime: int, m: int, component: str, b_perp: float, b_z: float
) -> complex:
    """Momentum matrix element between spin-0 levels m' (bra) and m (ket)."""
    dm = m_prime - m
    if component == "x":
        if dm == 1:
            return 0.5j * b_perp
        if dm == -1:
            return -0.5j * b_perp
        return 0j
    if component == "y":
        return 0.5 * b_perp if dm in (1, -1) else 0j
    if component == "z":
        return complex(b_z) if dm == 0 else 0j
    raise DomainError(f"component: must be 'x', 'y' or 'z', got {component!r}")


def spinor_momentum_element(
    m_prime: int,
    zeta_prime: int,
    m: int,
    zeta: int,
    component: str,
    b_perp: float,
    b_z: float,
) -> complex:
    """Momentum matrix element between spin-1/2 states; diagonal in zeta."""
    if zeta_prime != zeta:
        return 0j
    return scalar_momentum_element(m_prime, m, component, b_perp, b_z)


def spin_element(
    m_prime: int,
    zeta_prime: int,
    m: int,
    zeta: int,
    component: str,
    b: float,
    b_z: float,
    b_perp: float,
    energy: float,
) -> complex:
    """Spin four-vector matrix element between spin-1/2 states.

    The x and y components flip zeta and connect adjacent levels, with the
    raising branch weighted by (b - zeta) and the lowering branch by
    (b + zeta).  The z and time components are diagonal in the level index.
    """
    dm = m_prime - m
    if component == "x":
        if zeta_prime != -zeta:
            return 0j
        if dm == 1:
            return 0.5j * (b - zeta)
        if dm == -1:
            return -0.5j * (b + zeta)
        return 0j
    if component == "y":
        if zeta_prime != -zeta:
            return 0j
        if dm == 1:
            return 0.5 * (b - zeta)
        if dm == -1:
            return 0.5 * (b + zeta)
        return 0j
    if component == "z":
        if dm != 0:
            return 0j
        if zeta_prime == zeta:
            return complex(zeta * energy / b)
        return complex(b_perp * b_z / b)
    if component == "0":
        if dm != 0:
            return 0j
        if zeta_prime == zeta:
            return complex(zeta * b_z / b)
        return complex(energy * b_perp / b)
    raise DomainError(f"component: must be 'x', 'y', 'z' or '0', got {component!r}")


@dataclass(frozen=True)
class BandParams:
    """Kinematic factors a band was built with."""

    b_perp: float
    b: float
    b_z: float
    energy: float


@dataclass(frozen=True)
class OperatorBand:
    """Band-sparse table of matrix elements of one observable.

    ``entries`` maps (m_bra, zeta_bra, m_ket, zeta_ket) to the complex
    element; only nonzero elements are stored, and the band never reaches
    beyond adjacent levels.
    """

    observable: str
    kind: str
    levels: tuple[int, ...]
    entries: dict[tuple[int, int, int, int], complex]
    params: BandParams

    def hermiticity_defect(self) -> float:
        """Largest deviation of any entry from the conjugate of its mirror."""
        worst = 0.0
        for (mb, zb, mk, zk), value in self.entries.items():
            mirror = self.entries.get((mk, zk, mb, zb), 0j)
            worst = max(worst, abs(value - mirror.conjugate()))
        return worst

    def band_width_defect(self) -> int:
        """Largest |m_bra - m_ket| beyond one; zero for a valid band."""
        worst = 0
        for (mb, _, mk, _) in self.entries:
            worst = max(worst, abs(mb - mk) - 1)
        return max(worst, 0)

    def to_debug_json(self) -> str:
        """Dump indices and values for inspection; not a stable format."""
        payload = {
            "observable": self.observable,
            "kind": self.kind,
            "levels": list(self.levels),
            "params": {
                "b_perp": self.params.b_perp,
                "b": self.params.b,
                "b_z": self.params.b_z,
                "energy": self.params.energy,
            },
            "entries": [
                {
                    "m_bra": mb,
                    "zeta_bra": zb,
                    "m_ket": mk,
                    "zeta_ket": zk,
                    "re": value.real,
                    "im": value.imag,
                }
                for (mb, zb, mk, zk), value in sorted(self.entries.items())
            ],
        }
        return json.dumps(payload, indent=2, sort_keys=True)


def _component_of(observable: str) -> str:
    return observable[-1].lower() if observable != "S0" else "0"


def _entry_params(
    cfg: FieldConfig,
    kind: str,
    zeta_ref: int,
    m_bra: int,
    m_ket: int,
    frozen_params: BandParams,
    per_level: bool,
) -> BandParams:
    if not per_level:
        return frozen_params
    # off-diagonal entries take the upper level, matching the exact ladder value
    level = max(m_bra, m_ket)
    b_perp = transverse_momentum(cfg.h, level, kind)
    b = math.sqrt(1.0 + b_perp**2)
    energy = energy_spinor(cfg, level, zeta_ref) if kind == SPINOR else 0.0
    return BandParams(b_perp=b_perp, b=b, b_z=cfg.b_z, energy=energy)


def build_operator_band(
    levels,
    observable: str,
    cfg: FieldConfig,
    reference_n: int,
    kind: str = SPINOR,
    zeta_ref: int = 1,
    per_level: bool = False,
) -> OperatorBand:
    """Populate the band table of one observable over a contiguous level set.

    ``reference_n`` fixes the frozen kinematic factors; ``per_level=True``
    switches to exact per-entry factors instead.
    """
    levels = tuple(sorted(levels))
    if not levels:
        raise DomainError("levels: must be nonempty")
    if any(b - a != 1 for a, b in zip(levels, levels[1:])):
        raise DomainError(f"levels: must be contiguous, got {levels}")
    if observable not in OBSERVABLES:
        raise DomainError(f"observable: must be one of {OBSERVABLES}, got {observable!r}")
    if kind == SCALAR and observable in SPIN_OBSERVABLES:
        raise DomainError(f"observable: {observable} is undefined for spin-0 states")
    if kind not in (SCALAR, SPINOR):
        raise DomainError(f"kind: must be 'scalar' or 'spinor', got {kind!r}")

    b_perp = transverse_momentum(cfg.h, reference_n, kind)
    b = math.sqrt(1.0 + b_perp**2)
    energy = energy_spinor(cfg, reference_n, zeta_ref) if kind == SPINOR else 0.0
    frozen = BandParams(b_perp=b_perp, b=b, b_z=cfg.b_z, energy=energy)

    component = _component_of(observable)
    zetas = (NO_SPIN,) if kind == SCALAR else (-1, 1)
    level_set = set(levels)
    entries: dict[tuple[int, int, int, int], complex] = {}
    for m_ket in levels:
        for m_bra in (m_ket - 1, m_ket, m_ket + 1):
            if m_bra not in level_set:
                continue
            for zeta_ket in zetas:
                for zeta_bra in zetas:
                    p = _entry_params(cfg, kind, zeta_ref, m_bra, m_ket, frozen, per_level)
                    if kind == SCALAR:
                        value = scalar_momentum_element(m_bra, m_ket, component, p.b_perp, p.b_z)
                    elif observable in MOMENTUM_OBSERVABLES:
                        value = spinor_momentum_element(
                            m_bra, zeta_bra, m_ket, zeta_ket, component, p.b_perp, p.b_z
                        )
                    else:
                        value = spin_element(
                            m_bra, zeta_bra, m_ket, zeta_ket, component, p.b, p.b_z, p.b_perp, p.energy
                        )
                    if value != 0j:
                        entries[(m_bra, zeta_bra, m_ket, zeta_ket)] = value
    return OperatorBand(
        observable=observable, kind=kind, levels=levels, entries=entries, params=frozen
    )
