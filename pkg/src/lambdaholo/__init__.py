"""Nonadiabatic holonomic single-qubit gates in off-resonant Lambda systems."""
from .errors import (
    AngleOutOfRange,
    BadEnvelopeSpec,
    GridTooCoarse,
    InvalidParams,
    NonHermitianInput,
    NonUnitaryInput,
    NotCyclic,
    ParallelAxes,
)
from .estimator import HolonomicGateCompiler
from .holonomy import (
    HolonomicGate,
    aa_phase,
    bright_trajectory,
    chi_of,
    commutator_norm,
    compose_two,
    connection_abb,
    extract_holonomy,
    geometric_audit,
    numeric_aa_phase,
    offres_gate,
    resonant_gate,
)
from .linalg import expm_hermitian, gate_distance, project_to_qubit, unitarity_defect
from .model import (
    LaserParams,
    PulseEnvelope,
    axis_from_angles,
    bright_eigen,
    dark_bright,
    hamiltonian,
    make_envelope,
)
from .propagator import (
    TimeGrid,
    cyclic_period,
    propagate_numeric,
    propagate_square,
    subspace_return_error,
)
from .schedule import ParseError, ScheduleFile, ValidationError, parse_schedule, serialize_schedule
from .sweep import SweepResult, run_sweep
from .synthesis import (
    RotationSpec,
    SynthesisResult,
    average_gate_fidelity,
    decompose_two_resonant,
    rwa_warning,
    synthesize_single,
)

__version__ = "0.1.0"
