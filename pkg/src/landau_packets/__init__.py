"""Landau-level wave packets: cyclotron motion and spin precession
reconstructed from quantum expectation values, with classical references
and an independent quadrature oracle."""

from .classical import (
    ClassicalState,
    bmt_integrate,
    bmt_step,
    classical_momentum,
    classical_state_from_kinematics,
)
from .errors import (
    AccuracyError,
    DomainError,
    IntegrationAccuracyError,
    QuadratureAccuracyError,
    SingularConfigurationError,
)
from .evolution import (
    EXACT,
    UNIFORM_GAP,
    EnergyModel,
    InvariantReport,
    closed_form_momentum,
    closed_form_spin,
    closed_form_trajectory,
    compute_invariants,
    evolve_packet,
    expectation_series,
    generic_expectation,
    invariant_report,
    polarization_series,
    polarization_tensor,
    sample_times,
)
from .kinematics import (
    DEFAULT_ANOMALY,
    SCALAR,
    SPINOR,
    FieldConfig,
    QuantumNumbers,
    SpinKinematics,
    anomalous_frequency,
    cyclotron_frequency,
    energy_scalar,
    energy_spinor,
    helicity_eigenvalue,
    polarization_constants,
    spin_mixing_ratio,
    transverse_momentum,
)
from .laguerre import (
    QuadratureSpec,
    fit_decay_exponent,
    laguerre_I,
    momentum_element_quadrature,
    orthonormality_defect,
    semiclassical_convergence,
)
from .operators import (
    OperatorBand,
    build_operator_band,
    scalar_momentum_element,
    spin_element,
    spinor_momentum_element,
)
from .packets import (
    PacketSpec,
    StructureSums,
    build_scalar_packet,
    build_spinor_packet,
    contrast_factor,
    normalization_defect,
    structure_sums,
)
from .trajectory import Trajectory, TrajectoryComparison, compare_trajectories

__version__ = "0.1.0"
