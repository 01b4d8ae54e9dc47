"""Spectral imaginary-time ground states of the 1D ring equation.

The stationary states solve

    [-(d/dphi - i eta)^2 + u_tilde |psi|^2] psi = mu_eff psi

on a uniform periodic grid phi_j = 2 pi j / G.  The kinetic operator is
exact in the angular-mode basis: mode k (a signed integer) has eigenvalue
(k - eta)^2, so the gauge phase costs nothing spectrally and introduces no
finite-difference artifacts.  Relaxation uses Strang splitting
(half kinetic / full interaction / half kinetic) with renormalization after
every step; imaginary time damps everything above the lowest state reachable
from the seed, which makes the same routine serve both as a metastable-state
preparator (noise-free seed, stays in its winding sector) and as a global
ground-state search (small seeded noise lets the state slide between
sectors).

Mode index convention: numpy transform order, indices above G/2 - 1 wrap to
negative k (exactly numpy.fft.fftfreq(G, 1/G)).  This matters because
(k - eta)^2 is not symmetric in k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .reduction import RingParams
from .ring import ground_winding

__all__ = [
    "RingWavefunction",
    "SolverSettings",
    "GroundStateReport",
    "ConvergenceError",
    "phi_grid",
    "mode_numbers",
    "apply_hamiltonian",
    "imaginary_time_step",
    "relax",
    "winding_number",
    "global_ground",
    "observables",
    "dump_wavefunction",
]

TWO_PI = 2.0 * math.pi
NODE_FLOOR = 1e-10  # fraction of max |psi| below which winding is undefined


def _check_grid_size(grid_size: int) -> None:
    if grid_size < 64 or grid_size & (grid_size - 1) != 0:
        raise ValueError("grid_size must be a power of two >= 64")


def phi_grid(grid_size: int) -> np.ndarray:
    """Azimuthal grid angles phi_j = 2 pi j / G."""
    _check_grid_size(grid_size)
    return TWO_PI * np.arange(grid_size) / grid_size


def mode_numbers(grid_size: int) -> np.ndarray:
    """Signed integer angular modes in transform order: 0..G/2-1, -G/2..-1."""
    _check_grid_size(grid_size)
    return np.fft.fftfreq(grid_size, d=1.0 / grid_size)


@dataclass
class RingWavefunction:
    """Complex amplitudes on the periodic azimuthal grid.

    Normalization convention: sum_j |psi_j|^2 * (2 pi / G) = 1 for a unit
    wavefunction.  Instances are treated as immutable values; operations
    return new instances.
    """

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        self.amplitudes = np.asarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.ndim != 1:
            raise ValueError("amplitudes must be a 1D array")
        _check_grid_size(self.amplitudes.size)

    @property
    def grid_size(self) -> int:
        return self.amplitudes.size

    @property
    def phi(self) -> np.ndarray:
        return phi_grid(self.grid_size)

    def norm_squared(self) -> float:
        """Integral of |psi|^2 over the ring (trapezoid = exact on this grid)."""
        a = self.amplitudes
        return float((a.real**2 + a.imag**2).sum()) * TWO_PI / self.grid_size

    def normalized(self) -> "RingWavefunction":
        n2 = self.norm_squared()
        if not (math.isfinite(n2) and n2 > 0):
            raise ValueError("cannot normalize a zero or non-finite wavefunction")
        return RingWavefunction(self.amplitudes / math.sqrt(n2))

    def density(self) -> np.ndarray:
        a = self.amplitudes
        return a.real**2 + a.imag**2

    @classmethod
    def plane_wave(cls, winding: int, grid_size: int) -> "RingWavefunction":
        """Unit-normalized e^{i m phi} / sqrt(2 pi) sampled on the grid."""
        phi = phi_grid(grid_size)
        return cls(np.exp(1j * winding * phi) / math.sqrt(TWO_PI))


@dataclass(frozen=True)
class SolverSettings:
    """Knobs of the imaginary-time relaxation.

    grid_size: azimuthal points G, power of two >= 64
    tau_step: imaginary-time step
    tolerance: convergence when |mu_new - mu_old| per step falls below
        tolerance * max(1, |mu|)
    max_iterations: hard stop; hitting it reports converged=False
    seed_winding: initial state e^{i m0 phi}/sqrt(2 pi)
    noise_amplitude: per-mode complex Gaussian noise added to the seed,
        drawn relative to the seed winding (zero keeps the flow exactly in
        the seeded sector)
    rng_seed: seed of the noise generator, fixed for reproducibility
    """

    grid_size: int = 256
    tau_step: float = 1e-3
    tolerance: float = 1e-10
    max_iterations: int = 50_000
    seed_winding: int = 0
    noise_amplitude: float = 0.0
    rng_seed: int = 7

    def __post_init__(self) -> None:
        _check_grid_size(self.grid_size)
        if self.tau_step <= 0:
            raise ValueError("tau_step must be > 0")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be > 0")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if abs(self.seed_winding) >= self.grid_size // 2:
            raise ValueError("seed_winding must satisfy |m0| < grid_size/2")
        if self.noise_amplitude < 0:
            raise ValueError("noise_amplitude must be >= 0")


@dataclass
class GroundStateReport:
    """Outcome of one relaxation run.

    mu and energy_per_particle are in ring units (offset excluded, same scale
    as ring.mu_uniform).  energy_history holds the per-step energies of the
    run, useful for monotonicity checks.
    """

    wavefunction: RingWavefunction
    mu: float
    energy_per_particle: float
    winding: int
    iterations: int
    converged: bool
    energy_history: np.ndarray = field(repr=False, default_factory=lambda: np.empty(0))


class ConvergenceError(RuntimeError):
    """Raised when no relaxation seed converged; carries the best attempt."""

    def __init__(self, message: str, best_report: GroundStateReport | None = None):
        super().__init__(message)
        self.best_report = best_report


def _as_potential(potential, grid_size: int) -> np.ndarray | None:
    if potential is None:
        return None
    v = np.asarray(potential, dtype=np.float64)
    if v.shape != (grid_size,):
        raise ValueError(f"potential must have shape ({grid_size},)")
    if not np.all(np.isfinite(v)):
        raise ValueError("potential must be finite")
    return v


def _seed_state(settings: SolverSettings) -> np.ndarray:
    """Seed plane wave plus optional mode-space noise, unit-normalized.

    The noise pattern is generated relative to the seed winding (then rolled
    to absolute mode indices), so runs at (eta, m0) and (eta+1, m0+1) with
    the same rng_seed start from exact gauge images of each other.
    """
    g = settings.grid_size
    coeffs = np.zeros(g, dtype=np.complex128)
    if settings.noise_amplitude > 0:
        rng = np.random.default_rng(settings.rng_seed)
        coeffs += settings.noise_amplitude * (rng.standard_normal(g) + 1j * rng.standard_normal(g))
    coeffs[0] += 1.0
    coeffs = np.roll(coeffs, settings.seed_winding)
    psi = np.fft.ifft(coeffs) * g
    n2 = float((psi.real**2 + psi.imag**2).sum()) * TWO_PI / g
    return psi / math.sqrt(n2)


def apply_hamiltonian(psi: RingWavefunction, params: RingParams) -> RingWavefunction:
    """Apply the ring Hamiltonian to a normalized state (unnormalized image).

    Kinetic part spectrally: mode k picks up (k - eta)^2.  Interaction part
    pointwise: u_tilde |psi_j|^2 psi_j.  Plane waves e^{i m phi}/sqrt(2 pi)
    are exact eigenstates with eigenvalue (m - eta)^2 + u_tilde/(2 pi).
    """
    if abs(psi.norm_squared() - 1.0) > 1e-8:
        raise ValueError("apply_hamiltonian expects a unit-normalized state")
    a = psi.amplitudes
    k = mode_numbers(psi.grid_size)
    kinetic = np.fft.ifft((k - params.eta) ** 2 * np.fft.fft(a))
    return RingWavefunction(kinetic + params.u_tilde * (a.real**2 + a.imag**2) * a)


def observables(psi: RingWavefunction, params: RingParams, potential=None) -> tuple[float, float]:
    """Chemical potential and energy per particle of a normalized state.

    mu = int |(d/dphi - i eta) psi|^2 + V |psi|^2 + u |psi|^4 dphi
    E  = same with u/2 on the quartic term.
    The gauge-kinetic integral is evaluated spectrally, the rest by the
    (exact) uniform-grid quadrature.
    """
    g = psi.grid_size
    a = psi.amplitudes
    dphi = TWO_PI / g
    k = mode_numbers(g)
    spec = np.fft.fft(a)
    kinetic = float(((k - params.eta) ** 2 * (spec.real**2 + spec.imag**2)).sum()) * dphi / g
    dens = a.real**2 + a.imag**2
    quart = float((dens * dens).sum()) * dphi
    v = _as_potential(potential, g)
    pot = float((v * dens).sum()) * dphi if v is not None else 0.0
    mu = kinetic + pot + params.u_tilde * quart
    energy = kinetic + pot + 0.5 * params.u_tilde * quart
    return mu, energy


def imaginary_time_step(
    psi: RingWavefunction, params: RingParams, tau_step: float, potential=None
) -> tuple[RingWavefunction, float, float]:
    """One normalized Strang step; returns (new state, mu, energy).

    Convenience wrapper over the same kernel relax uses; intended for
    step-by-step inspection, not for long runs (relax precomputes the
    multipliers once).
    """
    if tau_step <= 0:
        raise ValueError("tau_step must be > 0")
    v = _as_potential(potential, psi.grid_size)
    kernel = _make_kernel(psi.grid_size, params, tau_step, v)
    new_amps, mu, energy = kernel(psi.amplitudes.copy())
    return RingWavefunction(new_amps), mu, energy


def _make_kernel(grid_size: int, params: RingParams, tau_step: float, v: np.ndarray | None):
    """Build the per-step closure: Strang step + renormalize + observables."""
    g = grid_size
    dphi = TWO_PI / g
    inv_g2 = dphi / g
    kin = (mode_numbers(g) - params.eta) ** 2
    half_kinetic = np.exp(-0.5 * tau_step * kin)
    u = params.u_tilde
    fft, ifft = np.fft.fft, np.fft.ifft

    def step(psi: np.ndarray) -> tuple[np.ndarray, float, float]:
        spec = fft(psi)
        spec *= half_kinetic
        psi = ifft(spec)
        dens = psi.real**2 + psi.imag**2
        expo = u * dens if v is None else u * dens + v
        expo -= expo.mean()  # uniform factor is gauge for the renormalized flow
        psi *= np.exp(-tau_step * expo)
        spec = fft(psi)
        spec *= half_kinetic
        spec2 = spec.real**2 + spec.imag**2
        norm2 = inv_g2 * float(spec2.sum())
        if not (math.isfinite(norm2) and norm2 > 0):
            raise ArithmeticError(
                "imaginary-time step diverged; reduce tau_step (tau_step * u_tilde too large)"
            )
        kinetic = inv_g2 * float((kin * spec2).sum()) / norm2
        psi = ifft(spec)
        psi *= 1.0 / math.sqrt(norm2)
        dens = psi.real**2 + psi.imag**2
        quart = dphi * float((dens * dens).sum())
        pot = dphi * float((v * dens).sum()) if v is not None else 0.0
        mu = kinetic + pot + u * quart
        energy = kinetic + pot + 0.5 * u * quart
        return psi, mu, energy

    return step


def relax(params: RingParams, settings: SolverSettings, potential=None) -> GroundStateReport:
    """Relax to the lowest state reachable from the seed.

    Propagates in imaginary time until the chemical potential changes by
    less than tolerance * max(1, |mu|) in one step, or max_iterations is
    reached (reported via converged=False, never silently).  An optional
    real potential sampled on the grid (ring energy units) is applied
    pointwise; default is the azimuthally symmetric case V = 0.
    """
    v = _as_potential(potential, settings.grid_size)
    kernel = _make_kernel(settings.grid_size, params, settings.tau_step, v)
    psi = _seed_state(settings)
    mu_prev = math.inf
    mu = math.inf
    energies: list[float] = []
    converged = False
    iterations = 0
    for iterations in range(1, settings.max_iterations + 1):
        psi, mu, energy = kernel(psi)
        energies.append(energy)
        if abs(mu - mu_prev) <= settings.tolerance * max(1.0, abs(mu)):
            converged = True
            break
        mu_prev = mu
    wavefunction = RingWavefunction(psi)
    return GroundStateReport(
        wavefunction=wavefunction,
        mu=mu,
        energy_per_particle=energies[-1],
        winding=_winding_or_dominant(wavefunction),
        iterations=iterations,
        converged=converged,
        energy_history=np.asarray(energies),
    )


def winding_number(psi: RingWavefunction) -> int:
    """Net phase turns around the ring, from principal-branch increments.

    Sums arg(psi_{j+1} / psi_j) over the closed loop and divides by 2 pi;
    exact for node-free states resolved by the grid.  Raises when any |psi_j|
    sits below 1e-10 of the maximum: the phase (and hence the winding) is
    undefined through a density node.
    """
    a = psi.amplitudes
    mags = np.abs(a)
    peak = float(mags.max())
    if peak == 0.0 or float(mags.min()) < NODE_FLOOR * peak:
        raise ValueError("winding undefined: wavefunction has a density node")
    increments = np.angle(np.roll(a, -1) * np.conj(a))
    return int(round(float(increments.sum()) / TWO_PI))


def _winding_or_dominant(psi: RingWavefunction) -> int:
    """winding_number, falling back to the dominant mode index near a node.

    Mid-relaxation states can pass arbitrarily close to a density node while
    sliding between sectors; the dominant angular mode is still well defined
    there and matches winding_number whenever the latter is defined on a
    nearly uniform state.
    """
    try:
        return winding_number(psi)
    except ValueError:
        spec = np.fft.fft(psi.amplitudes)
        k = mode_numbers(psi.grid_size)
        return int(k[int(np.argmax(spec.real**2 + spec.imag**2))])


def _relax_batch(params: RingParams, settings: SolverSettings, seeds: list) -> list:
    """Relax several seed windings side by side (one report per seed).

    Same Strang step as relax, applied to a (batch, G) stack with rows frozen
    as they converge; rows never couple, so each report matches a standalone
    relax of that seed up to summation-order roundoff.  Batching exists
    because the FFT cost at these grid sizes is call-overhead dominated.
    """
    g = settings.grid_size
    dphi = TWO_PI / g
    inv_g2 = dphi / g
    kin = (mode_numbers(g) - params.eta) ** 2
    half_kinetic = np.exp(-0.5 * settings.tau_step * kin)
    u = params.u_tilde
    tau = settings.tau_step
    tol = settings.tolerance
    fft, ifft = np.fft.fft, np.fft.ifft

    batch = len(seeds)
    psi_final = np.zeros((batch, g), dtype=np.complex128)
    mu = np.full(batch, math.inf)
    mu_prev = np.full(batch, math.inf)
    energy = np.full(batch, math.inf)
    iterations = np.zeros(batch, dtype=int)
    converged = np.zeros(batch, dtype=bool)
    histories: list[list[float]] = [[] for _ in range(batch)]

    # working set: rows compress away as they converge, carrying the
    # normalized spectrum across steps so each step needs 3 transforms
    rows = np.arange(batch)
    spec = fft(np.stack([_seed_state(replace(settings, seed_winding=s)) for s in seeds]))

    for it in range(1, settings.max_iterations + 1):
        spec *= half_kinetic
        sub = ifft(spec)
        dens = sub.real**2 + sub.imag**2
        expo = u * dens
        expo -= expo.mean(axis=-1, keepdims=True)
        expo *= -tau
        np.exp(expo, out=expo)
        sub *= expo
        spec = fft(sub)
        spec *= half_kinetic
        spec2 = spec.real**2 + spec.imag**2
        norm2 = inv_g2 * spec2.sum(axis=-1)
        if not np.all(np.isfinite(norm2) & (norm2 > 0)):
            raise ArithmeticError(
                "imaginary-time step diverged; reduce tau_step (tau_step * u_tilde too large)"
            )
        kinetic = inv_g2 * (spec2 @ kin) / norm2
        spec *= (1.0 / np.sqrt(norm2))[:, None]
        sub = ifft(spec)
        dens = sub.real**2 + sub.imag**2
        quart = dphi * np.einsum("ij,ij->i", dens, dens)
        mu_now = kinetic + u * quart
        energy_now = kinetic + 0.5 * u * quart
        for row, e_val in zip(rows, energy_now):
            histories[row].append(float(e_val))
        done = np.abs(mu_now - mu_prev[rows]) <= tol * np.maximum(1.0, np.abs(mu_now))
        mu[rows] = mu_now
        energy[rows] = energy_now
        iterations[rows] = it
        mu_prev[rows] = mu_now
        if done.any():
            finished = done.nonzero()[0]
            psi_final[rows[finished]] = sub[finished]
            converged[rows[finished]] = True
            keep = ~done
            rows = rows[keep]
            if rows.size == 0:
                break
            spec = spec[keep]
            sub = sub[keep]
    if rows.size:
        psi_final[rows] = sub  # hit max_iterations; reported unconverged

    reports = []
    for i in range(batch):
        wavefunction = RingWavefunction(psi_final[i])
        reports.append(
            GroundStateReport(
                wavefunction=wavefunction,
                mu=float(mu[i]),
                energy_per_particle=float(energy[i]),
                winding=_winding_or_dominant(wavefunction),
                iterations=int(iterations[i]),
                converged=bool(converged[i]),
                energy_history=np.asarray(histories[i]),
            )
        )
    return reports


def global_ground(params: RingParams, settings: SolverSettings | None = None) -> GroundStateReport:
    """Minimum-energy state over seed windings around the expected ground.

    Relaxes seeds m0 in {[eta]-2, ..., [eta]+2} (evaluated side by side) and
    returns the converged report with the lowest energy per particle;
    energies within 1e-6 of the minimum count as ties and resolve toward the
    lower |winding| (then the lower winding).  With settings=None a small
    seeded noise (1e-3, fixed rng) is used so seeds can slide out of their
    sectors.  Raises ConvergenceError (carrying the best attempt) only when
    every seed fails to converge.
    """
    if settings is None:
        settings = SolverSettings(noise_amplitude=1e-3)
    center = ground_winding(params).winding
    reports = _relax_batch(params, settings, [center + shift for shift in range(-2, 3)])
    converged = [r for r in reports if r.converged]
    pool = converged if converged else reports
    best_energy = min(r.energy_per_particle for r in pool)
    ties = [r for r in pool if r.energy_per_particle <= best_energy + 1e-6]
    best = min(ties, key=lambda r: (abs(r.winding), r.winding))
    if not converged:
        raise ConvergenceError(
            f"no seed converged within {settings.max_iterations} iterations "
            f"(eta={params.eta}, u_tilde={params.u_tilde})",
            best_report=best,
        )
    return best


def dump_wavefunction(psi: RingWavefunction, path) -> None:
    """Write (phi_j, Re psi_j, Im psi_j) as plain text columns."""
    a = psi.amplitudes
    phi = psi.phi
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# phi re_psi im_psi\n")
        for j in range(psi.grid_size):
            fh.write(f"{phi[j]:.17g} {a[j].real:.17g} {a[j].imag:.17g}\n")
