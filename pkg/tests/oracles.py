"""Independent reference implementations used only by the tests.

Nothing here may call into zenosim's propagator paths: the matrix
exponential is a plain truncated Taylor sum (no scaling, no
eigendecomposition), the fine-step integrator is a fourth-order Taylor
stepper driven by matrix powers, and the three-qubit Hamiltonian is built
by basis-index bookkeeping instead of Kronecker algebra.
"""

from __future__ import annotations

import numpy as np


def taylor_expm(a, s: complex = 1.0, terms: int = 40) -> np.ndarray:
    """exp(s*A) by direct truncated Taylor summation."""
    a = np.asarray(a, dtype=complex)
    acc = np.eye(a.shape[0], dtype=complex)
    term = np.eye(a.shape[0], dtype=complex)
    for k in range(1, terms + 1):
        term = term @ (s * a) / k
        acc = acc + term
    return acc


def fine_step_final_state(h, psi0, t_total: float, delta: float = 1e-5) -> np.ndarray:
    """Final state of exp(-iHt)|psi0> from chained 4th-order Taylor steps.

    For constant H the step matrix is fixed, so the chain is a matrix power;
    binary exponentiation keeps this exact-order and fast.
    """
    h = np.asarray(h, dtype=complex)
    a = -1j * h * delta
    step = np.eye(h.shape[0], dtype=complex)
    term = np.eye(h.shape[0], dtype=complex)
    for k in range(1, 5):
        term = term @ a / k
        step = step + term
    steps = round(t_total / delta)
    return np.linalg.matrix_power(step, steps) @ np.asarray(psi0, dtype=complex)


def zeno_survival_taylor(h, projector, psi0, n: int, dt: float) -> float:
    """Survival product of the evolve-project loop with a Taylor propagator."""
    u = taylor_expm(h, -1j * dt)
    proj = np.asarray(projector, dtype=complex)
    psi = np.asarray(psi0, dtype=complex)
    w = 1.0
    for _ in range(n):
        psi = u @ psi
        kept = proj @ psi
        w *= 1.0 - float(np.linalg.norm(psi - kept) ** 2)
        psi = kept / np.linalg.norm(kept)
    return w


def _bit(index: int, qubit: int) -> int:
    # qubit 0 is the most significant bit (tensor order q1 x q2 x q3)
    return (index >> (2 - qubit)) & 1


def brute_force_three_qubit_h(omega_vecs, g: float, g_tilde: float) -> np.ndarray:
    """8x8 three-qubit Hamiltonian assembled entry-by-entry from basis indices."""
    vecs = np.asarray(omega_vecs, dtype=float)
    h = np.zeros((8, 8), dtype=complex)
    for s in range(8):
        bits = [_bit(s, q) for q in range(3)]
        # single-qubit drive terms
        for q in range(3):
            z = 1.0 if bits[q] == 0 else -1.0
            h[s, s] += vecs[q, 2] * z
            flipped = s ^ (1 << (2 - q))
            h[flipped, s] += vecs[q, 0]
            h[flipped, s] += vecs[q, 1] * (1j if bits[q] == 0 else -1j)
        # pairwise couplings
        for i in range(3):
            for j in range(i + 1, 3):
                zi = 1.0 if bits[i] == 0 else -1.0
                zj = 1.0 if bits[j] == 0 else -1.0
                h[s, s] += 0.5 * g_tilde * zi * zj
                if bits[i] != bits[j]:
                    # (XX + YY)/2 exchanges |01> and |10>
                    swapped = s ^ (1 << (2 - i)) ^ (1 << (2 - j))
                    h[swapped, s] += g
    return h


def qubit_permutation_operator(perm) -> np.ndarray:
    """8x8 operator sending qubit q of the input to slot perm[q]."""
    p = np.zeros((8, 8), dtype=complex)
    for s in range(8):
        bits = [_bit(s, q) for q in range(3)]
        target_bits = [0, 0, 0]
        for q in range(3):
            target_bits[perm[q]] = bits[q]
        target = (target_bits[0] << 2) | (target_bits[1] << 1) | target_bits[2]
        p[target, s] = 1.0
    return p
