"""Qudit circuit compression toolkit.

Compresses N-qubit circuits onto M-qudit registers by weighted-graph
partitioning and commutation-aware gate merging, computes the
compression-ratio bounds, verifies every rewrite by exact simulation, and
estimates photonic / trapped-ion resource costs.

Circuits are plain dicts mirroring the canonical JSON file format; matrices
and state vectors are numpy arrays.
"""

import json as _json

from . import _core
from ._core import (
    InfeasibleError,
    InputError,
    controlled_on_level_gate,
    cpf_unitary,
    cyclic_shift,
    embed_two_qubit_gate,
    encoding_isometry,
    ion_circuit_error,
    ion_scenarios,
    operator_schmidt_rank,
    photonic_oam_bs_count,
    photonic_success_probability,
    state_entropy,
    verify_equivalence,
)

__all__ = [
    "InfeasibleError",
    "InputError",
    "analyze",
    "canonicalize",
    "circuit_stats",
    "circuit_unitary",
    "cluster_circuit",
    "compress",
    "controlled_on_level_gate",
    "cpf_circuit",
    "cpf_unitary",
    "cyclic_shift",
    "embed_two_qubit_gate",
    "encoding_isometry",
    "ion_circuit_error",
    "ion_scenarios",
    "merge_pass",
    "operator_schmidt_rank",
    "photonic_oam_bs_count",
    "photonic_success_probability",
    "simulate_state",
    "state_entropy",
    "verify_equivalence",
]


def _to_text(circuit):
    if isinstance(circuit, str):
        return circuit
    return _json.dumps(circuit)


def canonicalize(circuit):
    """Validate a circuit and return its canonical dict form."""
    return _json.loads(_core.canonicalize(_to_text(circuit)))


def cpf_circuit(n):
    """Reference controlled-phase-flip circuit (n = 2 or 4) as a dict."""
    return _json.loads(_core.cpf_circuit(n))


def cluster_circuit(rows, cols):
    """2D cluster-state preparation circuit as a dict."""
    return _json.loads(_core.cluster_circuit(rows, cols))


def circuit_stats(circuit):
    return _core.circuit_stats(_to_text(circuit))


def circuit_unitary(circuit):
    return _core.circuit_unitary(_to_text(circuit))


def simulate_state(circuit):
    return _core.simulate_state(_to_text(circuit))


def analyze(circuit, k, method="auto", seed=0):
    """Interaction graph, minimal balanced k-cut, and compression bounds."""
    return _json.loads(_core.analyze(_to_text(circuit), k, method, seed))


def compress(circuit, k, merge=False, absorb_local=False, method="auto", seed=0,
             tol=1e-9, dims=None):
    """Compress onto k qudits; returns (report dict, compressed circuit dict)."""
    report, compressed = _core.compress(
        _to_text(circuit), k, merge, absorb_local, method, seed, tol, dims)
    return _json.loads(report), _json.loads(compressed)


def merge_pass(circuit, absorb_local=False):
    """Merge two-qudit gates on the same pair; returns the rewritten circuit."""
    return _json.loads(_core.merge_pass(_to_text(circuit), absorb_local))
