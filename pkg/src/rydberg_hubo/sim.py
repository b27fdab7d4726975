"""Small-scale quantum simulation of compiled Rydberg atom graphs.

Conventions (hbar = 1): qubit basis |0> ground, |1> Rydberg. The Hamiltonian
on n atoms is

    H = (Omega/2) * sum_j sigma_x_j  -  Delta * sum_j w_j n_j  +  U * sum_edges n_j n_k

with per-atom detuning multipliers w_j taken from the compiled graph (local
addressing). Basis states are integers whose bit j is atom j's occupation.
In the limit Omega -> 0 with 0 < w_j*Delta < U the ground manifold is the
maximum-weight independent set family of the blockade graph, which is what
the adiabatic sweep extracts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np
import scipy.linalg
import scipy.sparse as sp
from scipy.sparse.linalg import eigsh, expm_multiply

from .compiler import CompiledGraph
from .poly import Assignment

DEFAULT_ATOM_CAP = 14
HARD_ATOM_CAP = 20
CLAMP_PENALTY_FACTOR = 1e3


class SimulationCapError(ValueError):
    """Atom count exceeds the simulable Hilbert-space cap."""


class IntegrationError(RuntimeError):
    """Propagation lost more norm than tolerated; refine the step count."""


@dataclass(frozen=True)
class RydbergParams:
    """Drive and interaction scales, all in the same angular-frequency units."""

    rabi: float
    detuning: float
    blockade: float

    def __post_init__(self) -> None:
        for name in ("rabi", "detuning", "blockade"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")
        if self.blockade <= 0:
            raise ValueError("blockade strength must be positive")

    def mis_regime_ok(self, weights: Sequence[int]) -> bool:
        """True when 0 < w*Delta < U holds for every positively weighted atom."""
        positive = [w for w in weights if w > 0]
        return bool(positive) and all(
            0 < w * self.detuning < self.blockade for w in positive
        )


def default_blockade(max_weight: int, delta_final: float) -> float:
    """U = 4 * w_max * Delta keeps every weighted atom inside 0 < w*Delta < U."""
    return 4.0 * max(1, max_weight) * delta_final


@dataclass(frozen=True)
class Schedule:
    """Piecewise-linear drive waveforms over [0, duration]."""

    duration: float
    omega: tuple[tuple[float, float], ...]
    delta: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        if not (self.duration > 0 and math.isfinite(self.duration)):
            raise ValueError(f"duration must be positive and finite, got {self.duration}")
        for label, points in (("omega", self.omega), ("delta", self.delta)):
            if not points:
                raise ValueError(f"{label} needs at least one breakpoint")
            times = [t for t, _ in points]
            if any(b <= a for a, b in zip(times, times[1:])):
                raise ValueError(f"{label} breakpoints must be strictly increasing")
            if times[0] < 0 or times[-1] > self.duration:
                raise ValueError(f"{label} breakpoints must lie within [0, duration]")
            if any(not math.isfinite(v) for _, v in points):
                raise ValueError(f"{label} values must be finite")

    def omega_at(self, t: float) -> float:
        return float(np.interp(t, [p[0] for p in self.omega], [p[1] for p in self.omega]))

    def delta_at(self, t: float) -> float:
        return float(np.interp(t, [p[0] for p in self.delta], [p[1] for p in self.delta]))

    @classmethod
    def standard(
        cls,
        duration: float,
        *,
        omega_max: float = 2.0,
        delta_final: float = 6.0,
        ramp_fraction: float = 0.1,
    ) -> "Schedule":
        """Trapezoidal Rabi pulse with a linear detuning sweep -d_f -> +d_f."""
        t_on = ramp_fraction * duration
        t_off = (1.0 - ramp_fraction) * duration
        return cls(
            duration=duration,
            omega=((0.0, 0.0), (t_on, omega_max), (t_off, omega_max), (duration, 0.0)),
            delta=((0.0, -delta_final), (duration, delta_final)),
        )

    def to_json_dict(self) -> dict:
        return {
            "T": self.duration,
            "omega": [list(p) for p in self.omega],
            "delta": [list(p) for p in self.delta],
        }

    @classmethod
    def from_json_dict(cls, d: Mapping) -> "Schedule":
        return cls(
            duration=float(d["T"]),
            omega=tuple((float(t), float(v)) for t, v in d["omega"]),
            delta=tuple((float(t), float(v)) for t, v in d["delta"]),
        )


class RydbergHamiltonian:
    """Prefactored Hamiltonian pieces for one compiled graph.

    The flip pattern, weighted-occupation diagonal and blocked-pair counts
    are built once; `matrix(omega, delta)` assembles the sparse operator for
    arbitrary drive values, so sweeps pay only a diagonal update per step.
    """

    def __init__(
        self,
        cg: CompiledGraph,
        params: RydbergParams,
        *,
        cap: int = DEFAULT_ATOM_CAP,
        clamp: Mapping[int, int] | None = None,
    ):
        n = cg.graph.n_atoms
        if cap > HARD_ATOM_CAP:
            raise SimulationCapError(
                f"cap {cap} exceeds the hard limit of {HARD_ATOM_CAP} atoms"
            )
        if n > cap:
            raise SimulationCapError(
                f"{n} atoms exceed the simulation cap {cap} "
                f"(hard limit {HARD_ATOM_CAP})"
            )
        self.compiled = cg
        self.params = params
        self.n_atoms = n
        self.dim = 1 << n
        self.weights = np.array(cg.graph.weights(), dtype=np.float64)

        idx = np.arange(self.dim, dtype=np.int64)
        weighted = np.zeros(self.dim, dtype=np.float64)
        for j in range(n):
            if self.weights[j]:
                weighted += self.weights[j] * ((idx >> j) & 1)
        self.weighted_occupation = weighted  # sum_j w_j n_j per config
        blocked = np.zeros(self.dim, dtype=np.float64)
        for a, b in cg.graph.edges:
            blocked += ((idx >> a) & 1) * ((idx >> b) & 1)
        self.blocked_pairs = blocked

        self.clamp_penalty = np.zeros(self.dim, dtype=np.float64)
        if clamp:
            scale = CLAMP_PENALTY_FACTOR * params.blockade
            for atom, bit in clamp.items():
                actual = (idx >> atom) & 1
                self.clamp_penalty += scale * (actual != bit)

        if n:
            flips = idx[:, None] ^ (np.int64(1) << np.arange(n, dtype=np.int64))[None, :]
            rows = np.repeat(idx, n)
            cols = flips.reshape(-1)
            data = np.ones(rows.size, dtype=np.float64)
            self.flip_matrix = sp.csr_matrix(
                (data, (rows, cols)), shape=(self.dim, self.dim)
            )
        else:
            self.flip_matrix = sp.csr_matrix((1, 1), dtype=np.float64)

        self.data_atom_ids = cg.data_atom_ids

    def diagonal(self, delta: float | None = None) -> np.ndarray:
        de = self.params.detuning if delta is None else delta
        return (
            -de * self.weighted_occupation
            + self.params.blockade * self.blocked_pairs
            + self.clamp_penalty
        )

    def matrix(self, omega: float | None = None, delta: float | None = None) -> sp.csr_matrix:
        om = self.params.rabi if omega is None else omega
        h = (om / 2.0) * self.flip_matrix
        return h + sp.diags(self.diagonal(delta), format="csr")

    def independent_mask(self) -> np.ndarray:
        return self.blocked_pairs == 0

    def independent_diagonal_minimum(self, delta: float | None = None) -> float:
        """Spectral minimum of the Omega=0 operator restricted to independent
        configurations; equals -Delta * (max independent-set weight)."""
        diag = self.diagonal(delta)
        return float(diag[self.independent_mask()].min())

    def projection_probabilities(self, state: np.ndarray) -> dict[Assignment, float]:
        """Probability mass per data-variable assignment, auxiliaries traced out."""
        probs = np.abs(state) ** 2
        m = len(self.data_atom_ids)
        if m == 0:
            return {(): float(probs.sum())}
        idx = np.arange(self.dim, dtype=np.int64)
        key = np.zeros(self.dim, dtype=np.int64)
        for j, a in enumerate(self.data_atom_ids):
            key |= ((idx >> a) & 1) << j
        mass = np.bincount(key, weights=probs, minlength=1 << m)
        return {
            tuple((int(k) >> j) & 1 for j in range(m)): float(mass[k])
            for k in range(1 << m)
        }


def build_hamiltonian(
    cg: CompiledGraph,
    params: RydbergParams,
    *,
    cap: int = DEFAULT_ATOM_CAP,
    clamp: Mapping[int, int] | None = None,
) -> RydbergHamiltonian:
    return RydbergHamiltonian(cg, params, cap=cap, clamp=clamp)


@dataclass(frozen=True)
class GroundStateResult:
    energy: float
    state: np.ndarray
    degenerate: bool
    eigenvalues: tuple[float, ...]


DENSE_CUTOFF = 2048
DEGENERACY_TOL = 1e-10


def ground_state(
    H: RydbergHamiltonian,
    *,
    omega: float | None = None,
    delta: float | None = None,
    n_eigenvalues: int = 6,
) -> GroundStateResult:
    """Lowest eigenpair; degeneracy flagged when the first gap is below
    1e-10 relative to the spectral scale.

    Omega = 0 is diagonal and solved exactly (the returned state is the
    uniform superposition of the degenerate minima). Small dimensions use a
    dense solve; larger ones iterate with a fixed deterministic start vector.
    """
    om = H.params.rabi if omega is None else omega
    if om == 0.0:
        diag = H.diagonal(delta)
        e0 = float(diag.min())
        minima = np.nonzero(diag == e0)[0]
        state = np.zeros(H.dim, dtype=np.complex128)
        state[minima] = 1.0 / math.sqrt(len(minima))
        others = np.unique(diag[diag > e0])
        eigs = (e0,) * len(minima) + tuple(float(v) for v in others[: max(0, 4 - len(minima))])
        return GroundStateResult(e0, state, len(minima) > 1, eigs[:6])
    if H.dim <= DENSE_CUTOFF:
        dense = H.matrix(om, delta).toarray()
        vals, vecs = scipy.linalg.eigh(dense)
        k = min(n_eigenvalues, len(vals))
        scale = max(1.0, float(np.abs(vals).max()))
        degenerate = len(vals) > 1 and (vals[1] - vals[0]) < DEGENERACY_TOL * scale
        return GroundStateResult(
            float(vals[0]),
            vecs[:, 0].astype(np.complex128),
            degenerate,
            tuple(float(v) for v in vals[:k]),
        )
    mat = H.matrix(om, delta)
    k = min(n_eigenvalues, H.dim - 2)
    v0 = np.full(H.dim, 1.0 / math.sqrt(H.dim))
    vals, vecs = eigsh(mat, k=k, which="SA", v0=v0)
    order = np.argsort(vals)
    vals = vals[order]
    vecs = vecs[:, order]
    scale = max(1.0, float(np.abs(vals).max()))
    degenerate = len(vals) > 1 and (vals[1] - vals[0]) < DEGENERACY_TOL * scale
    return GroundStateResult(
        float(vals[0]),
        vecs[:, 0].astype(np.complex128),
        degenerate,
        tuple(float(v) for v in vals),
    )


@dataclass(frozen=True)
class SweepResult:
    state: np.ndarray
    probabilities: dict[Assignment, float]
    success_probability: float | None
    target: tuple[Assignment, ...] | None
    norm_drift: float
    steps: int


def adiabatic_sweep(
    H: RydbergHamiltonian,
    schedule: Schedule,
    steps: int,
    *,
    target: Sequence[Assignment] | None = None,
    norm_tol: float = 1e-6,
) -> SweepResult:
    """Propagate |00...0> under the scheduled Hamiltonian with fixed steps.

    Each step applies the exact exponential of the midpoint Hamiltonian, so
    norm is conserved to machine precision; drift beyond `norm_tol` aborts
    with a refinement hint. Success probability is the final mass on
    configurations whose data projection lies in `target`.
    """
    if steps < 100:
        raise ValueError(f"steps must be >= 100 for a trustworthy sweep, got {steps}")
    psi = np.zeros(H.dim, dtype=np.complex128)
    psi[0] = 1.0
    dt = schedule.duration / steps
    for s in range(steps):
        tm = (s + 0.5) * dt
        mat = H.matrix(schedule.omega_at(tm), schedule.delta_at(tm))
        psi = expm_multiply((-1j * dt) * mat, psi)
    drift = abs(float(np.linalg.norm(psi)) - 1.0)
    if drift > norm_tol:
        raise IntegrationError(
            f"norm drifted by {drift:.3e} (> {norm_tol:.0e}); "
            f"rerun with more steps (e.g. {2 * steps})"
        )
    probabilities = H.projection_probabilities(psi)
    success = None
    target_tuple = None
    if target is not None:
        target_tuple = tuple(tuple(t) for t in target)
        success = float(sum(probabilities.get(t, 0.0) for t in set(target_tuple)))
    return SweepResult(
        state=psi,
        probabilities=probabilities,
        success_probability=success,
        target=target_tuple,
        norm_drift=drift,
        steps=steps,
    )
