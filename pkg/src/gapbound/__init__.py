"""Exact operators on gapped-boundary qudits of D(Z_N) and the D(Z_3) qutrit gate set."""

__version__ = "0.1.0"

from .boundary import (
    GroundSpace,
    LagrangianAlgebra,
    ProductSpace,
    build_ground_space,
    enumerate_lagrangians,
    lagrangian_by_key,
    qudit_registers,
)
from .braid import BraidGenerator, braid_squared, group_order_generated, pure_braid_image
from .charge import (
    ChargeMeasurement,
    CurveLabel,
    charge_projector,
    effective_hamiltonian,
    measure,
    split_double_layer,
    wilson_basis,
)
from .circuit import Circuit, channel_matrix, run, sum_protocol_circuit
from .cyclotomic import Cyclotomic, omega
from .gates import compile_gate
from .theory import AnyonLabel, build_theory, fuse, verify_modular_relations
from .wilson import OperatorMatrix, compose_tunnels, is_unitary, loop, tunnel

__all__ = [
    "AnyonLabel",
    "BraidGenerator",
    "ChargeMeasurement",
    "Circuit",
    "CurveLabel",
    "Cyclotomic",
    "GroundSpace",
    "LagrangianAlgebra",
    "OperatorMatrix",
    "ProductSpace",
    "braid_squared",
    "build_ground_space",
    "build_theory",
    "channel_matrix",
    "charge_projector",
    "compile_gate",
    "compose_tunnels",
    "effective_hamiltonian",
    "enumerate_lagrangians",
    "fuse",
    "group_order_generated",
    "is_unitary",
    "lagrangian_by_key",
    "loop",
    "measure",
    "omega",
    "pure_braid_image",
    "qudit_registers",
    "run",
    "split_double_layer",
    "sum_protocol_circuit",
    "tunnel",
    "verify_modular_relations",
    "wilson_basis",
]
