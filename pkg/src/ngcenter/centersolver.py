"""Enumerate the solutions (xi, tau, omega) of the center equations of a near-group
category by sweeping (omega, tau), solving the linear system (C - B) xi = z and
polishing against the full nonlinear system."""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import kernels
from .linalg import NewtonFailure, gauss_newton_batch, newton_polish, solve_affine
from .modular import e
from .neargroup import NearGroupData


class SolverError(RuntimeError):
    pass


@dataclass(frozen=True)
class SolverConfig:
    omega_order: int = 240
    rank_tol: float = 1e-8
    residual_tol: float = 1e-9
    dedup_tol: float = 1e-6
    accept_tol: float = 1e-6
    grid_radii: tuple[float, ...] = (0.5, 1.0, 2.0)
    grid_phases: int = 8
    workers: int = 1

    def __post_init__(self):
        if self.omega_order < 1:
            raise ValueError("omega_order must be positive")
        if not self.residual_tol > 0:
            raise ValueError("residual_tol must be positive")
        if not self.dedup_tol > self.residual_tol:
            raise ValueError("dedup_tol must exceed residual_tol")


@dataclass(frozen=True)
class CenterTriple:
    omega: Fraction
    tau: int
    xi: np.ndarray

    @property
    def omega_value(self) -> complex:
        return e(self.omega)

    def phases(self) -> np.ndarray:
        return np.angle(self.xi)


class CenterSystem:
    """Index tables and residuals of the center equations for one near-group datum."""

    def __init__(self, data: NearGroupData):
        self.data = data
        G = data.group
        self.n = G.n
        self.add, self.neg, self.sub = G.add_table, G.neg_table, G.sub_table
        b = data.b
        self.B = b[self.add]
        self.bsub = b[self.sub]
        self.conj_a_sub = data.a[self.sub].conj()
        self.z = np.full(self.n, data.c * np.sqrt(self.n) / data.d)

    @cached_property
    def _bghmt(self) -> list[np.ndarray]:
        # [tau][g, h] -> b(g + h - tau)
        return [self.data.b[self.sub[self.add, t]] for t in range(self.n)]

    def build_CB(self, omega: complex, tau: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        a, n = self.data.a, self.n
        C = np.zeros((n, n), complex)
        g = np.arange(n)
        C[g, self.neg] = omega * a[tau] * np.conj(a[self.add[g, tau]] * a[g])
        return C, self.B, self.z

    def residual_families(self, X: np.ndarray, tau: int, omega: complex) -> dict[str, np.ndarray]:
        """Residuals of each center equation for a batch X of shape (B, n)."""
        d, n, a, c = self.data.d, self.n, self.data.a, self.data.c
        X = np.atleast_2d(X)
        taug = self.sub[tau]
        return {
            "half1": X.sum(axis=1, keepdims=True) - (np.sqrt(n) * omega**2 * a[tau] * c**3 - n / d),
            "half2": np.conj(c) * (X @ self.B) - (omega**2 * c**3 * a[tau] * X[:, self.add[:, tau]].conj() - np.sqrt(n) / d),
            "half3": X[:, taug] - omega * c**4 * (a * a[taug])[None] * X.conj(),
            "half4": kernels.half4_residual_batch(X, self.bsub, self._bghmt[tau], self.conj_a_sub, c**-2, c**2 / d),
            "modulus": np.abs(X) ** 2 - 1,
        }

    def residual(self, X: np.ndarray, tau: int, omega: complex) -> np.ndarray:
        return np.concatenate(list(self.residual_families(X, tau, omega).values()), axis=1)


def build_CB(data: NearGroupData, omega: complex, tau) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """C(omega, tau), B and the right-hand side z of (C - B) xi = z."""
    sysm = CenterSystem(data)
    return sysm.build_CB(complex(omega), data.group.index(tau))


def _polish(sysm: CenterSystem, xi: np.ndarray, tau: int, omega: complex, cfg: SolverConfig) -> np.ndarray | None:
    f = lambda x: sysm.residual(x[None], tau, omega)[0]
    try:
        return newton_polish(f, xi, tol=1e-12, max_iter=30)
    except NewtonFailure as exc:
        return exc.x if exc.residual < cfg.residual_tol else None


def _candidates(sysm: CenterSystem, omega_exp: Fraction, tau: int, cfg: SolverConfig) -> list[np.ndarray]:
    omega = e(omega_exp)
    C, B, z = sysm.build_CB(omega, tau)
    sol = solve_affine(C - B, z, cfg.rank_tol)
    if not sol.consistent:
        return []
    xp, N, k = sol.particular, sol.basis, sol.dim
    if k == 0:
        if np.abs(sysm.residual(xp[None], tau, omega)).max() > cfg.accept_tol:
            return []
        seeds = [xp]
    else:
        grid = [r * np.exp(2j * np.pi * p / cfg.grid_phases) for r in cfg.grid_radii for p in range(cfg.grid_phases)]
        T0 = np.array(list(itertools.product(grid, repeat=k)))
        T, _, ok = gauss_newton_batch(lambda T: sysm.residual(xp[None] + T @ N.T, tau, omega), T0, tol=1e-9)
        seeds = []
        for xi in xp[None] + T[ok] @ N.T:
            if not any(np.abs(xi - s).max() < cfg.dedup_tol for s in seeds):
                seeds.append(xi)
    out = []
    for s in seeds:
        xi = _polish(sysm, s, tau, omega, cfg)
        if xi is None or np.abs(sysm.residual(xi[None], tau, omega)).max() >= cfg.residual_tol:
            continue
        if not any(np.abs(xi - o).max() < cfg.dedup_tol for o in out):
            out.append(xi)
    return out


def candidate_xis(data: NearGroupData, omega: Fraction, tau, cfg: SolverConfig | None = None) -> list[np.ndarray]:
    """All xi solving the center equations at fixed (omega, tau)."""
    cfg = cfg or SolverConfig()
    return _candidates(CenterSystem(data), Fraction(omega), data.group.index(tau), cfg)


@dataclass
class TripleReport:
    residuals: dict[str, float]
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tol

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values())


def check_triple(data: NearGroupData, triple: CenterTriple, tol: float = 1e-9) -> TripleReport:
    fams = CenterSystem(data).residual_families(np.asarray(triple.xi)[None], triple.tau, triple.omega_value)
    return TripleReport({k: float(np.abs(v).max()) for k, v in fams.items()}, tol)


def expected_triple_count(n: int) -> int:
    return n * (n + 3) // 2


def _sweep_tau(args) -> list[CenterTriple]:
    data, tau, cfg = args
    sysm = CenterSystem(data)
    found = []
    for k in range(cfg.omega_order):
        om = Fraction(k, cfg.omega_order)
        found.extend(CenterTriple(om, tau, xi) for xi in _candidates(sysm, om, tau, cfg))
    return found


def _sort_key(t: CenterTriple):
    return (t.tau, t.omega, tuple(np.round(t.phases(), 6)))


def solve_all_triples(data: NearGroupData, cfg: SolverConfig | None = None) -> list[CenterTriple]:
    """All n(n+3)/2 triples, deduplicated and deterministically sorted."""
    cfg = cfg or SolverConfig()
    jobs = [(data, tau, cfg) for tau in range(data.n)]
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            chunks = list(pool.map(_sweep_tau, jobs))
    else:
        chunks = [_sweep_tau(j) for j in jobs]
    triples: list[CenterTriple] = []
    for t in itertools.chain.from_iterable(chunks):
        dup = any(
            u.tau == t.tau and u.omega == t.omega and np.abs(u.xi - t.xi).max() < cfg.dedup_tol for u in triples
        )
        if not dup:
            triples.append(t)
    triples.sort(key=_sort_key)
    want = expected_triple_count(data.n)
    if len(triples) != want:
        raise SolverError(f"found {len(triples)} of {want} triples")
    return triples
