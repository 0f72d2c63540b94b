"""Wave packets over neighboring Landau levels and their bilinear
amplitude sums.

A packet spreads unit probability uniformly over a contiguous window of
levels centered on a reference level n.  Spin-1/2 packets additionally fix
the ratio of the two spin amplitudes at every level to the mixing ratio
kappa of the reference level, which is what ties the packet to a definite
longitudinal polarization.  The bilinear sums of the amplitudes are what
the time-dependent expectation values contract against; for the uniform
equal-phase construction the adjacent-level sums carry the semiclassical
contrast factor (N-1)/N and the same-level sums reproduce the polarization
constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .kinematics import SCALAR, SPINOR, FieldConfig, spin_mixing_ratio
from .operators import NO_SPIN


@dataclass(frozen=True)
class PacketSpec:
    """A normalized superposition over a contiguous window of levels.

    ``amplitudes`` maps (zeta, m) to the complex coefficient; spin-0
    packets use zeta = 0.  ``n`` is the reference level the window is
    centered on and at which frozen kinematics are evaluated.
    """

    kind: str
    n: int
    levels: tuple[int, ...]
    epsilon: int
    amplitudes: dict[tuple[int, int], complex]

    @property
    def level_count(self) -> int:
        return len(self.levels)

    @property
    def is_spinor(self) -> bool:
        return self.kind == SPINOR

    def amplitude(self, zeta: int, m: int) -> complex:
        return self.amplitudes.get((zeta, m), 0j)

    def as_json_dict(self) -> dict:
        """Serializable form for run manifests."""
        return {
            "kind": self.kind,
            "reference_level": self.n,
            "levels": list(self.levels),
            "epsilon": self.epsilon,
            "amplitudes": [
                {"zeta": zeta, "m": m, "re": value.real, "im": value.imag}
                for (zeta, m), value in sorted(self.amplitudes.items())
            ],
        }


@dataclass(frozen=True)
class StructureSums:
    """Bilinear amplitude sums entering the closed-form trajectories.

    adjacent_same_spin   sum over adjacent pairs, spin preserved; equals
                         (N-1)/N for the uniform equal-phase packet.
    adjacent_spin_flip   sum over adjacent pairs with a spin flip; the
                         construction gives (N-1)/N * kappa/(kappa^2+1).
    diagonal_spin_flip   same-level spin-flip sum, kappa/(kappa^2+1).
    population_imbalance difference of the two spin populations,
                         (kappa^2-1)/(kappa^2+1).
    """

    adjacent_same_spin: complex
    adjacent_spin_flip: complex
    diagonal_spin_flip: complex
    population_imbalance: complex


def _level_window(n: int, count: int) -> tuple[int, ...]:
    # odd counts sit symmetrically about n; even counts put the extra level above
    if count < 1:
        raise DomainError(f"levels: need at least one level, got {count}")
    m_min = n - (count - 1) // 2
    return tuple(range(m_min, m_min + count))


def _phase_factors(count: int, phases) -> np.ndarray:
    if phases is None:
        return np.ones(count, dtype=complex)
    phases = np.asarray(phases, dtype=float)
    if phases.shape != (count,):
        raise DomainError(f"phases: need one phase per level, got shape {phases.shape}")
    return np.exp(1j * phases)


def build_scalar_packet(n: int, levels: int, phases=None) -> PacketSpec:
    """Uniform equal-phase packet of spin-0 states on ``levels`` levels
    centered on n.

    An optional per-level phase vector perturbs the equal-phase rule for
    degradation experiments.
    """
    window = _level_window(n, levels)
    if window[0] < 0:
        raise DomainError(
            f"levels: window {window[0]}..{window[-1]} reaches below the ground level"
        )
    factors = _phase_factors(levels, phases)
    weight = 1.0 / math.sqrt(levels)
    amplitudes = {(NO_SPIN, m): weight * factors[i] for i, m in enumerate(window)}
    return PacketSpec(kind=SCALAR, n=n, levels=window, epsilon=1, amplitudes=amplitudes)


def build_spinor_packet(
    n: int,
    levels: int,
    cfg: FieldConfig,
    epsilon: int = 1,
    zeta_ref: int | None = None,
    phases=None,
) -> PacketSpec:
    """Uniform equal-phase packet of spin-1/2 states with helicity sign
    ``epsilon``.

    Every level carries the same spin amplitude ratio kappa, so the packet
    normalization splits as 1/N per level regardless of kappa.
    """
    window = _level_window(n, levels)
    if window[0] < 1:
        raise DomainError(
            f"levels: window {window[0]}..{window[-1]} reaches below the first spin-1/2 level"
        )
    kappa = spin_mixing_ratio(cfg, n, epsilon, zeta_ref)
    factors = _phase_factors(levels, phases)
    down = 1.0 / math.sqrt(levels * (kappa * kappa + 1.0))
    amplitudes: dict[tuple[int, int], complex] = {}
    for i, m in enumerate(window):
        amplitudes[(-1, m)] = down * factors[i]
        amplitudes[(+1, m)] = kappa * down * factors[i]
    return PacketSpec(kind=SPINOR, n=n, levels=window, epsilon=epsilon, amplitudes=amplitudes)


def normalization_defect(packet: PacketSpec) -> float:
    """|sum of squared amplitude magnitudes - 1|."""
    total = sum(abs(a) ** 2 for a in packet.amplitudes.values())
    return abs(total - 1.0)


def structure_sums(packet: PacketSpec) -> StructureSums:
    """Bilinear amplitude sums of a packet.

    The adjacent sums run over every pair (m, m+1) inside the window; the
    diagonal sums run over the window itself.  Spin-0 packets only populate
    the same-spin adjacent sum.
    """
    amp = packet.amplitude
    zetas = (-1, 1) if packet.is_spinor else (NO_SPIN,)

    same_adjacent = 0j
    flip_adjacent = 0j
    for m in packet.levels[:-1]:
        for zeta in zetas:
            same_adjacent += amp(zeta, m).conjugate() * amp(zeta, m + 1)
        flip_adjacent += amp(+1, m).conjugate() * amp(-1, m + 1)

    flip_diagonal = 0j
    imbalance = 0j
    for m in packet.levels:
        flip_diagonal += amp(+1, m).conjugate() * amp(-1, m)
        imbalance += abs(amp(+1, m)) ** 2 - abs(amp(-1, m)) ** 2

    return StructureSums(
        adjacent_same_spin=same_adjacent,
        adjacent_spin_flip=flip_adjacent,
        diagonal_spin_flip=flip_diagonal,
        population_imbalance=imbalance,
    )


def contrast_factor(levels: int) -> float:
    """Semiclassical contrast (N-1)/N of an N-level uniform packet."""
    if levels < 1:
        raise DomainError(f"levels: must be >= 1, got {levels}")
    return (levels - 1.0) / levels
