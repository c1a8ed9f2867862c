"""Dense complex linear algebra and Newton polishing for the center solver."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

FD_STEP = 1e-7


@dataclass
class AffineSolutionSet:
    """{particular + basis @ t}; basis columns are orthonormal."""

    particular: np.ndarray
    basis: np.ndarray
    rank: int
    consistent: bool
    residual: float

    @property
    def dim(self) -> int:
        return self.basis.shape[1]


class NewtonFailure(RuntimeError):
    def __init__(self, residual: float, iterations: int, x: np.ndarray | None = None):
        super().__init__(f"Newton did not converge after {iterations} iterations (residual {residual:.3e})")
        self.residual = residual
        self.iterations = iterations
        self.x = x


def solve_affine(A: np.ndarray, z: np.ndarray, rank_tol: float = 1e-8) -> AffineSolutionSet:
    """Minimum-norm least-squares solution of A x = z plus the numerical nullspace of A."""
    A = np.asarray(A, dtype=complex)
    z = np.asarray(z, dtype=complex)
    U, s, Vh = np.linalg.svd(A)
    smax = s[0] if s.size else 0.0
    rank = int(np.sum(s > rank_tol * smax)) if smax > 0 else 0
    coeff = (U[:, :rank].conj().T @ z) / s[:rank]
    x = Vh[:rank].conj().T @ coeff
    res = float(np.linalg.norm(A @ x - z))
    zn = float(np.linalg.norm(z))
    consistent = res <= rank_tol * zn if zn > 0 else res <= rank_tol
    return AffineSolutionSet(x, Vh[rank:].conj().T, rank, consistent, res)


def affine_nullspace(E: np.ndarray, f: np.ndarray, rank_tol: float = 1e-9) -> tuple[np.ndarray, np.ndarray, float]:
    """Solve E p = f: returns (p0, N, max residual) with solutions p0 + N t."""
    E = np.asarray(E, dtype=complex)
    K = E.shape[1]
    if E.shape[0] == 0:
        return np.zeros(K, complex), np.eye(K, dtype=complex), 0.0
    f = np.asarray(f, dtype=complex)
    keep = np.abs(E).max(axis=1) > rank_tol
    res0 = float(np.abs(f[~keep]).max(initial=0.0))
    E, f = E[keep], f[keep]
    if E.shape[0] == 0:
        return np.zeros(K, complex), np.eye(K, dtype=complex), res0
    # absolute floor: equations are O(1), so noise-level singular values are not rank
    U, s, Vh = np.linalg.svd(E)
    rank = int(np.sum(s > rank_tol * max(1.0, s[0])))
    p0 = Vh[:rank].conj().T @ ((U[:, :rank].conj().T @ f) / s[:rank])
    res = max(res0, float(np.abs(E @ p0 - f).max()))
    return p0, Vh[rank:].conj().T, res


def _split(x: np.ndarray) -> np.ndarray:
    return np.concatenate([x.real, x.imag], axis=-1)


def _fd_jacobian(fun: Callable[[np.ndarray], np.ndarray], v: np.ndarray, h: float) -> np.ndarray:
    cols = []
    for k in range(v.size):
        vp = v.copy()
        vm = v.copy()
        vp[k] += h
        vm[k] -= h
        cols.append((fun(vp) - fun(vm)) / (2 * h))
    return np.stack(cols, axis=1)


def newton_polish(
    residual: Callable[[np.ndarray], np.ndarray],
    x0: np.ndarray,
    tol: float = 1e-12,
    max_iter: int = 100,
    step: float = FD_STEP,
) -> np.ndarray:
    """Damped Gauss-Newton on the real and imaginary parts of x.

    Complex x0 is treated as 2m independent real unknowns, so residuals may
    contain conjugates. Raises NewtonFailure if ||residual||_inf >= tol after
    max_iter steps.
    """
    x0 = np.asarray(x0)
    is_complex = np.iscomplexobj(x0)
    m = x0.size
    if is_complex:
        unpack = lambda v: v[:m] + 1j * v[m:]
        v = _split(x0.astype(complex))
    else:
        unpack = lambda v: v
        v = x0.astype(float).copy()

    def rfun(w):
        r = np.asarray(residual(unpack(w)))
        return _split(r) if np.iscomplexobj(r) else r

    r = rfun(v)
    nr = np.abs(r).max(initial=0.0)
    for it in range(max_iter):
        if nr < tol:
            return unpack(v)
        J = _fd_jacobian(rfun, v, step)
        dv = np.linalg.lstsq(J, -r, rcond=None)[0]
        t = 1.0
        while True:
            vn = v + t * dv
            rn = rfun(vn)
            nrn = np.abs(rn).max(initial=0.0)
            if nrn < nr or t < 1e-4:
                break
            t /= 2
        if nrn >= nr:
            raise NewtonFailure(nr, it + 1, unpack(v))
        v, r, nr = vn, rn, nrn
    if nr < tol:
        return unpack(v)
    raise NewtonFailure(nr, max_iter, unpack(v))


def gauss_newton_batch(
    residual: Callable[[np.ndarray], np.ndarray],
    X0: np.ndarray,
    tol: float = 1e-10,
    max_iter: int = 40,
    step: float = FD_STEP,
    stall: float = 0.999,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Batched variant of newton_polish over independent complex starts.

    residual maps a (B, m) complex array to (B, M) complex residuals. Starts
    whose residual stops decreasing are dropped. Returns (X, norms, converged).
    """
    X = np.array(X0, dtype=complex)
    B, m = X.shape
    V = _split(X)

    def rfun(W):
        return _split(residual(W[:, :m] + 1j * W[:, m:]))

    R = rfun(V)
    norms = np.abs(R).max(axis=1)
    active = norms >= tol
    for _ in range(max_iter):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        Va, Ra = V[idx], R[idx]
        J = np.empty((idx.size, Ra.shape[1], 2 * m))
        for k in range(2 * m):
            Vp = Va.copy()
            Vm = Va.copy()
            Vp[:, k] += step
            Vm[:, k] -= step
            J[:, :, k] = (rfun(Vp) - rfun(Vm)) / (2 * step)
        dV = -np.einsum("bij,bj->bi", np.linalg.pinv(J), Ra)
        t = np.ones(idx.size)
        accepted = np.zeros(idx.size, bool)
        newV, newR, newN = Va.copy(), Ra.copy(), norms[idx].copy()
        for _ls in range(14):
            todo = np.flatnonzero(~accepted)
            if todo.size == 0:
                break
            Vt = Va[todo] + t[todo, None] * dV[todo]
            Rt = rfun(Vt)
            Nt = np.abs(Rt).max(axis=1)
            ok = Nt < norms[idx[todo]]
            sel = todo[ok]
            newV[sel], newR[sel], newN[sel] = Vt[ok], Rt[ok], Nt[ok]
            accepted[sel] = True
            t[todo[~ok]] /= 2
        progressed = accepted & (newN < stall * norms[idx])
        V[idx], R[idx], norms[idx] = newV, newR, newN
        active[idx[~progressed]] = False
        active &= norms >= tol
    X = V[:, :m] + 1j * V[:, m:]
    return X, norms, norms < tol
