"""Evolution engines and closed-form survival probabilities.

Three regimes are implemented:

  * run_unitary    exact evolution under a Hermitian Hamiltonian, no
                   measurements; survival is the instantaneous probability
                   of the computational subspace, 1 - p_leak(t);
  * run_zeno       evolution interrupted by n ideal projective measurements
                   of the leak level, conditioned on never detecting it;
                   survival is the running product of per-step
                   no-leak probabilities;
  * run_tunneling  exact evolution under a non-Hermitian Hamiltonian whose
                   top level decays; the state norm shrinks and survival is
                   the population remaining in the two computational levels.

All runs are deterministic, single-threaded and allocation-local; distinct
runs may execute concurrently without coordination.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import apply, is_hermitian, mat_exp
from .models import projector_comp

__all__ = [
    "PhysicsError",
    "DegenerateProjectionError",
    "ZenoSchedule",
    "SimulationTrace",
    "SurvivalRecord",
    "two_level_survival_closed_form",
    "two_level_zeno_limit",
    "run_unitary",
    "run_zeno",
    "run_tunneling",
    "perturbative_step",
    "survival_product",
    "default_tunneling_steps",
]

# Norm below which a projective measurement outcome is treated as impossible.
DEGENERATE_NORM = 1e-14

PROBABILITY_SLACK = 1e-12


class PhysicsError(RuntimeError):
    """A physically meaningful failure during a simulation run."""


class DegenerateProjectionError(PhysicsError):
    """The state leaked with certainty; the conditioned protocol cannot continue."""


def _check_count(name: str, value, minimum: int = 1) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise ValueError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return int(value)


@dataclass(frozen=True)
class ZenoSchedule:
    """Measurement plan: n intervals of length dt, total time T = n*dt (ns)."""

    n: int
    dt: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "n", _check_count("n", self.n))
        if not (math.isfinite(self.dt) and self.dt > 0):
            raise ValueError(f"dt must be positive and finite, got {self.dt!r}")

    @property
    def t_total(self) -> float:
        return self.n * self.dt


@dataclass
class SimulationTrace:
    """Time-ordered record of populations and running survival probability.

    times        sample instants (ns), strictly increasing
    populations  row k holds (p_1, ..., p_dim) at times[k]
    survival     running survival probability W at times[k]
    amplitudes   complex amplitudes at times[k], retained on request
    """

    times: np.ndarray
    populations: np.ndarray
    survival: np.ndarray
    amplitudes: np.ndarray | None = None

    @property
    def dim(self) -> int:
        return self.populations.shape[1]


@dataclass
class SurvivalRecord:
    """Final survival probabilities of a run; None where the variant is undefined."""

    w_zeno: float | None = None
    w_no_zeno: float | None = None
    w_tunnel: float | None = None
    n: int | None = None


def two_level_survival_closed_form(v: float, t_total: float, n: int) -> float:
    """Survival of the monitored two-level system after n projective checks,
    (1 - q/n^2)^n with q = (V*T)^2.

    Accurate when |V*T/n| << 1; the caller owns that regime choice.
    """
    n = _check_count("n", n)
    if not (math.isfinite(v) and math.isfinite(t_total)):
        raise ValueError("v and t_total must be finite")
    q = (v * t_total) ** 2
    return (1.0 - q / n**2) ** n


def two_level_zeno_limit(v: float, t_total: float) -> float:
    """Infinite-measurement-rate limit of the closed form: always 1.

    Provided for API symmetry; (1 - q/n^2)^n -> exp(-q/n) -> 1 as n grows.
    """
    if not (math.isfinite(v) and math.isfinite(t_total)):
        raise ValueError("v and t_total must be finite")
    return 1.0


def _check_unit_state(psi: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    v = np.asarray(psi, dtype=complex)
    if v.ndim != 1:
        raise ValueError(f"state must be a 1-d vector, got shape {v.shape}")
    nrm = np.linalg.norm(v)
    if abs(nrm - 1.0) > tol:
        raise ValueError(f"state must be normalized, got norm {nrm}")
    return v


def run_unitary(h, psi0, t_total: float, samples: int = 101,
                retain_amplitudes: bool = False) -> SimulationTrace:
    """Exact unmeasured evolution exp(-iHt)|psi0> sampled on a uniform grid.

    The survival column is the instantaneous probability of not being in the
    top (monitored) level, 1 - p_dim(t); its final entry is the
    single-measurement survival at time T.
    """
    hm = np.asarray(h, dtype=complex)
    if not is_hermitian(hm):
        raise ValueError("h must be Hermitian; use run_tunneling for decaying levels")
    psi = _check_unit_state(psi0)
    if psi.shape[0] != hm.shape[0]:
        raise ValueError("dimension mismatch between h and psi0")
    if not (math.isfinite(t_total) and t_total > 0):
        raise ValueError(f"t_total must be positive, got {t_total!r}")
    samples = _check_count("samples", samples, minimum=2)

    # One eigendecomposition serves every sample instant exactly.
    w, vecs = np.linalg.eigh(hm)
    coef = vecs.conj().T @ psi
    times = np.linspace(0.0, t_total, samples)
    states = (vecs @ (np.exp(-1j * np.outer(w, times)) * coef[:, None])).T
    populations = np.abs(states) ** 2
    survival = 1.0 - populations[:, -1]
    return SimulationTrace(
        times=times,
        populations=populations,
        survival=survival,
        amplitudes=states if retain_amplitudes else None,
    )


def _default_projector(dim: int) -> np.ndarray:
    if dim == 3:
        return projector_comp(3)
    if dim == 2:
        return np.diag([1.0, 0.0]).astype(complex)
    raise ValueError(f"no default projector for dim {dim}; pass one explicitly")


def run_zeno(h, psi0, schedule: ZenoSchedule, projector=None,
             retain_amplitudes: bool = False) -> tuple[SimulationTrace, SurvivalRecord]:
    """Evolve-then-measure protocol conditioned on never detecting the leak level.

    Each of the n intervals evolves the state by exp(-iH dt); the
    pre-measurement leak population enters the survival product and the
    projected, renormalized state continues (and is what the trace records,
    so the trace leak population is identically zero).
    """
    hm = np.asarray(h, dtype=complex)
    if not is_hermitian(hm):
        raise ValueError("h must be Hermitian; use run_tunneling for decaying levels")
    psi = _check_unit_state(psi0)
    dim = hm.shape[0]
    if psi.shape[0] != dim:
        raise ValueError("dimension mismatch between h and psi0")
    if projector is None:
        proj = _default_projector(dim)
    else:
        proj = np.asarray(projector, dtype=complex)
        if proj.shape != hm.shape:
            raise ValueError("projector shape must match h")
        if not is_hermitian(proj) or np.max(np.abs(proj @ proj - proj)) > 1e-12:
            raise ValueError("projector must be Hermitian and idempotent")
    leak0 = np.linalg.norm(psi - proj @ psi)
    if leak0 > 1e-10:
        raise ValueError("psi0 must lie in the monitored (computational) subspace")

    u = mat_exp(hm, -1j * schedule.dt)
    n = schedule.n
    times = np.empty(n + 1)
    populations = np.empty((n + 1, dim))
    survival = np.empty(n + 1)
    amplitudes = np.empty((n + 1, dim), dtype=complex) if retain_amplitudes else None

    times[0] = 0.0
    populations[0] = np.abs(psi) ** 2
    survival[0] = 1.0
    if amplitudes is not None:
        amplitudes[0] = psi

    leaks: list[float] = []
    running = 1.0
    for k in range(1, n + 1):
        psi = apply(u, psi)
        kept = proj @ psi
        leak = float(np.linalg.norm(psi - kept) ** 2)
        leaks.append(leak)
        running *= 1.0 - leak
        nrm = np.linalg.norm(kept)
        if nrm < DEGENERATE_NORM:
            raise DegenerateProjectionError(
                f"certain leakage at step {k}: projected norm {nrm:.3e}"
            )
        psi = kept / nrm
        times[k] = k * schedule.dt
        populations[k] = np.abs(psi) ** 2
        survival[k] = running
        if amplitudes is not None:
            amplitudes[k] = psi

    record = SurvivalRecord(w_zeno=survival_product(leaks), n=n)
    trace = SimulationTrace(times=times, populations=populations,
                            survival=survival, amplitudes=amplitudes)
    return trace, record


def default_tunneling_steps(gamma: float, t_total: float) -> int:
    """Sub-step count keeping each step below 0.01/gamma, floored at 1000.

    The chained propagator is exact for constant H, so the grid only sets
    the sampling density of the trace.
    """
    steps = 1000
    if gamma > 0:
        steps = max(steps, math.ceil(100.0 * gamma * t_total))
    return steps


def run_tunneling(h_nh, psi0, t_total: float, steps: int | None = None,
                  retain_amplitudes: bool = False) -> tuple[SimulationTrace, SurvivalRecord]:
    """Continuous-measurement evolution under a decaying-level Hamiltonian.

    The state is never renormalized; the lost norm is the probability that
    the monitored level tunneled out.  Survival is the population of the two
    computational levels, |a_1|^2 + |a_2|^2.
    """
    hm = np.asarray(h_nh, dtype=complex)
    if hm.shape != (3, 3):
        raise ValueError(f"h_nh must be 3x3, got shape {hm.shape}")
    # Decay part K from H = H_herm - iK; gain (negative eigenvalue of K) is invalid.
    decay = 0.5j * (hm - hm.conj().T)
    if np.min(np.linalg.eigvalsh(decay)) < -1e-12:
        raise ValueError("anti-Hermitian part has gain; decay rates must be >= 0")
    psi = np.asarray(psi0, dtype=complex)
    if psi.shape != (3,):
        raise ValueError("psi0 must be a 3-vector")
    if np.linalg.norm(psi) > 1.0 + 1e-10:
        raise ValueError("psi0 must have norm <= 1")
    if not (math.isfinite(t_total) and t_total > 0):
        raise ValueError(f"t_total must be positive, got {t_total!r}")

    if steps is None:
        gamma_eff = 2.0 * float(np.max(np.linalg.eigvalsh(decay)))
        steps = default_tunneling_steps(gamma_eff, t_total)
    steps = _check_count("steps", steps)

    delta = t_total / steps
    u = mat_exp(hm, -1j * delta)
    times = np.linspace(0.0, t_total, steps + 1)
    populations = np.empty((steps + 1, 3))
    amplitudes = np.empty((steps + 1, 3), dtype=complex) if retain_amplitudes else None
    populations[0] = np.abs(psi) ** 2
    if amplitudes is not None:
        amplitudes[0] = psi
    for k in range(1, steps + 1):
        psi = u @ psi
        populations[k] = np.abs(psi) ** 2
        if amplitudes is not None:
            amplitudes[k] = psi
    survival = populations[:, 0] + populations[:, 1]
    record = SurvivalRecord(w_tunnel=float(survival[-1]))
    trace = SimulationTrace(times=times, populations=populations,
                            survival=survival, amplitudes=amplitudes)
    return trace, record


def perturbative_step(a1: complex, a2: complex, omega: float, eta: float,
                      gamma: float, dt: float) -> tuple[complex, complex, complex]:
    """Second-order short-time amplitudes of the driven three-level system.

    Expanding the propagator of the Y-drive Hamiltonian (top-level energy
    eta - i*gamma/2) to second order in dt about a state with no leak
    population gives

        a1' = a1 (1 - omega^2 dt^2 / 2) - a2 omega dt
        a2' = a2 (1 - 3 omega^2 dt^2 / 2) + a1 omega dt
        a3' = sqrt(2) a2 omega dt
              + (sqrt(2)/2) [a1 omega^2 - a2 omega (gamma/2 + i eta)] dt^2

    Choosing gamma = 4/dt cancels the first-order leak amplitude exactly,
    leaving only the quadratic residue.  Valid for omega*dt << 1.
    """
    a1 = complex(a1)
    a2 = complex(a2)
    s2 = math.sqrt(2.0)
    a1p = a1 * (1.0 - 0.5 * omega**2 * dt**2) - a2 * omega * dt
    a2p = a2 * (1.0 - 1.5 * omega**2 * dt**2) + a1 * omega * dt
    a3p = s2 * a2 * omega * dt + (s2 / 2.0) * (
        a1 * omega**2 - a2 * omega * (gamma / 2.0 + 1j * eta)
    ) * dt**2
    return a1p, a2p, a3p


def survival_product(p3_samples) -> float:
    """Product of per-measurement no-leak probabilities, prod_k (1 - p3_k)."""
    result = 1.0
    for k, p in enumerate(p3_samples):
        p = float(p)
        if p < -PROBABILITY_SLACK or p > 1.0 + PROBABILITY_SLACK:
            raise ValueError(f"sample {k} outside [0, 1]: {p!r}")
        result *= 1.0 - min(max(p, 0.0), 1.0)
    return result
