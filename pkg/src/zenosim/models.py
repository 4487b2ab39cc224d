"""Hamiltonian and projector builders.

Covers the driven two-level system, the resonantly driven three-level qubit
in the rotating frame (with and without the leakage channel, with and
without tunneling out of the top level), and the fully connected three-qubit
network with XY + ZZ couplings.

Conventions, fixed here once for the whole package:
  * units: all rates and frequencies in angular rad/ns, hbar = 1;
  * levels are labeled 1..dim, level i sits at vector index i-1;
  * qubit tensor order is qubit-1 (x) qubit-2 (x) qubit-3, |0> = ground;
  * sigma_z |0> = +|0>.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import kron

__all__ = [
    "DEFAULT_ETA",
    "DEFAULT_PHI",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "IDENTITY_2",
    "ModelSpec",
    "build_two_level",
    "build_three_level",
    "build_three_level_ideal",
    "build_tunneling",
    "build_ghz_hamiltonian",
    "projector_comp",
]

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)

# Typical phase/transmon-like anharmonicity magnitude; scenarios may override.
DEFAULT_ETA = -0.2
# Drive phase realizing rotations about the Y axis.
DEFAULT_PHI = -math.pi / 2


def _require_finite(**params: float) -> None:
    for name, value in params.items():
        if not math.isfinite(value):
            raise ValueError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class ModelSpec:
    """Validated physical parameter record (rad/ns throughout).

    omega    Rabi drive strength (>= 0)
    phi      drive phase
    eta      anharmonicity of the 2->3 transition (negative for real qubits)
    gamma    tunneling rate of the top level (>= 0)
    v        two-level coupling of the toy model
    g        transverse (XY) qubit-qubit coupling
    g_tilde  longitudinal (ZZ) qubit-qubit coupling
    """

    omega: float = 0.0
    phi: float = DEFAULT_PHI
    eta: float = DEFAULT_ETA
    gamma: float = 0.0
    v: float = 0.0
    g: float = 0.0
    g_tilde: float = 0.0

    def __post_init__(self) -> None:
        _require_finite(
            omega=self.omega, phi=self.phi, eta=self.eta, gamma=self.gamma,
            v=self.v, g=self.g, g_tilde=self.g_tilde,
        )
        if self.omega < 0:
            raise ValueError(f"omega must be >= 0, got {self.omega}")
        if self.gamma < 0:
            raise ValueError(f"gamma must be >= 0, got {self.gamma}")


def build_two_level(v: float) -> np.ndarray:
    """Two-level coupling Hamiltonian [[0, V], [V, 0]] (real off-diagonals)."""
    _require_finite(v=v)
    return np.array([[0, v], [v, 0]], dtype=complex)


def build_three_level(omega: float, phi: float, eta: float) -> np.ndarray:
    """Rotating-frame Hamiltonian of a resonantly driven three-level qubit.

    The drive couples 1<->2 with strength omega*exp(i*phi) and 2<->3 with the
    harmonic-oscillator-enhanced sqrt(2)*omega*exp(i*phi); the third level is
    detuned by the anharmonicity eta.
    """
    _require_finite(omega=omega, phi=phi, eta=eta)
    d = omega * complex(math.cos(phi), math.sin(phi))
    s2 = math.sqrt(2.0)
    return np.array(
        [
            [0, d, 0],
            [d.conjugate(), 0, s2 * d],
            [0, s2 * d.conjugate(), eta],
        ],
        dtype=complex,
    )


def build_three_level_ideal(omega: float, eta: float) -> np.ndarray:
    """Leak-free reference Hamiltonian: the Y-drive with the 2<->3 matrix
    element removed, so the top level never populates."""
    _require_finite(omega=omega, eta=eta)
    return np.array(
        [
            [0, -1j * omega, 0],
            [1j * omega, 0, 0],
            [0, 0, eta],
        ],
        dtype=complex,
    )


def build_tunneling(omega: float, eta: float, gamma: float) -> np.ndarray:
    """Y-drive Hamiltonian with the top level decaying at rate gamma.

    The decay enters as the imaginary energy shift eta -> eta - i*gamma/2,
    making the matrix non-Hermitian for gamma > 0.
    """
    _require_finite(omega=omega, eta=eta, gamma=gamma)
    if gamma < 0:
        raise ValueError(f"gamma must be >= 0, got {gamma}")
    h = build_three_level(omega, DEFAULT_PHI, eta)
    h[2, 2] = eta - 0.5j * gamma
    return h


def _embed(qubit: int, op: np.ndarray) -> np.ndarray:
    factors = [IDENTITY_2, IDENTITY_2, IDENTITY_2]
    factors[qubit] = op
    return kron(kron(factors[0], factors[1]), factors[2])


def build_ghz_hamiltonian(omega_vecs, g: float, g_tilde: float) -> np.ndarray:
    """Fully connected three-qubit Hamiltonian.

    H = sum_i Omega_i . sigma_i
        + (1/2) sum_{i<j} [ g (X_i X_j + Y_i Y_j) + g_tilde Z_i Z_j ]

    omega_vecs: three 3-vectors of per-qubit drive components (x, y, z).
    """
    _require_finite(g=g, g_tilde=g_tilde)
    vecs = np.asarray(omega_vecs, dtype=float)
    if vecs.shape != (3, 3):
        raise ValueError(f"omega_vecs must be three 3-vectors, got shape {vecs.shape}")
    if not np.all(np.isfinite(vecs)):
        raise ValueError("omega_vecs has non-finite entries")

    paulis = (SIGMA_X, SIGMA_Y, SIGMA_Z)
    h = np.zeros((8, 8), dtype=complex)
    for i in range(3):
        for a in range(3):
            if vecs[i, a] != 0.0:
                h += vecs[i, a] * _embed(i, paulis[a])
    for i in range(3):
        for j in range(i + 1, 3):
            h += 0.5 * g * (_embed(i, SIGMA_X) @ _embed(j, SIGMA_X))
            h += 0.5 * g * (_embed(i, SIGMA_Y) @ _embed(j, SIGMA_Y))
            h += 0.5 * g_tilde * (_embed(i, SIGMA_Z) @ _embed(j, SIGMA_Z))
    return h


def projector_comp(dim: int) -> np.ndarray:
    """Projector onto the computational subspace {|1>, |2>} of a qutrit."""
    if dim != 3:
        raise ValueError(f"computational-subspace projector supports dim 3, got {dim}")
    return np.diag([1.0, 1.0, 0.0]).astype(complex)
