"""Independent reference computations used to cross-check the package."""
import itertools

import numpy as np


def jacobi_svd(A, sweeps=60, tol=1e-15):
    """One-sided Jacobi SVD of a complex matrix: returns (U, s, V) with A = U diag(s) V^H."""
    A = np.array(A, dtype=complex)
    m, n = A.shape
    U = A.copy()
    V = np.eye(n, dtype=complex)
    for _ in range(sweeps):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                alpha = np.vdot(U[:, p], U[:, p]).real
                beta = np.vdot(U[:, q], U[:, q]).real
                gamma = np.vdot(U[:, p], U[:, q])
                if abs(gamma) <= tol * np.sqrt(alpha * beta) or abs(gamma) == 0:
                    continue
                off = max(off, abs(gamma) / np.sqrt(alpha * beta))
                phase = gamma / abs(gamma)
                zeta = (beta - alpha) / (2 * abs(gamma))
                t = np.sign(zeta) / (abs(zeta) + np.sqrt(1 + zeta**2)) if zeta != 0 else 1.0
                c = 1 / np.sqrt(1 + t**2)
                s = c * t
                up, uq = U[:, p].copy(), U[:, q].copy()
                U[:, p] = c * up - s * np.conj(phase) * uq
                U[:, q] = s * phase * up + c * uq
                vp, vq = V[:, p].copy(), V[:, q].copy()
                V[:, p] = c * vp - s * np.conj(phase) * vq
                V[:, q] = s * phase * vp + c * vq
        if off < tol:
            break
    s = np.linalg.norm(U, axis=0)
    order = np.argsort(-s)
    s, U, V = s[order], U[:, order], V[:, order]
    nz = s > 0
    U[:, nz] = U[:, nz] / s[nz]
    return U, s, V


def svd_affine(A, z, rank_tol=1e-8):
    """Minimum-norm solution and nullspace dimension of A x = z via the Jacobi SVD."""
    U, s, V = jacobi_svd(A)
    r = int(np.sum(s > rank_tol * s[0])) if s[0] > 0 else 0
    x = V[:, :r] @ ((U[:, :r].conj().T @ z) / s[:r])
    return x, A.shape[1] - r


def naive_verlinde(S):
    r = S.shape[0]
    N = np.zeros((r, r, r), complex)
    for a in range(r):
        for b in range(r):
            for c in range(r):
                N[a, b, c] = sum(S[a, x] * S[b, x] * np.conj(S[c, x]) / S[0, x] for x in range(r))
    return N


def phase_distance(p, q):
    d = (np.asarray(p) - np.asarray(q) + np.pi) % (2 * np.pi) - np.pi
    return float(np.abs(d).max())


def assign_table(triples, group, table, zeta):
    """For each printed row, the index of the closest unused triple with the same (omega, tau)."""
    used, out = set(), []
    for k, tau, phases in table:
        cands = [
            (phase_distance(np.angle(t.xi), phases), i)
            for i, t in enumerate(triples)
            if i not in used and t.omega * zeta == k and group.coords[t.tau] == tau
        ]
        if not cands:
            out.append((None, np.inf))
            continue
        dev, i = min(cands)
        used.add(i)
        out.append((i, dev))
    return out


def match_table(triples, group, table, zeta):
    """Match printed rows to solver triples on (omega exponent, tau) and xi phases.

    Returns (keys_equal, worst phase deviation under the assignment).
    """
    ours = sorted((t.omega * zeta, group.coords[t.tau]) for t in triples)
    theirs = sorted((k, tau) for k, tau, _ in table)
    keys_equal = all(o[0].denominator == 1 for o in ours) and [(int(o[0]), o[1]) for o in ours] == theirs
    worst = max(dev for _, dev in assign_table(triples, group, table, zeta))
    return keys_equal, worst


def printed_w_label(triples, group, table, zeta, row):
    """Center label of the printed W_row (1-based row of the triple table)."""
    i, _ = assign_table(triples, group, table, zeta)[row - 1]
    return f"D{i + 1}"


def dims_twists_diff(dims, twists, table, tol=1e-6):
    """Unmatched (dim, twist) on each side after greedy matching against (dim, e(r)) rows."""
    remaining = list(table)
    extra = []
    for d, t in zip(dims, twists):
        hit = next(
            (i for i, (td, tr) in enumerate(remaining) if abs(td - d) < tol and abs(np.exp(2j * np.pi * float(tr)) - t) < tol),
            None,
        )
        if hit is None:
            extra.append((round(float(d), 4), round(float(np.angle(t) / (2 * np.pi)) % 1, 4)))
        else:
            remaining.pop(hit)
    return extra, [(round(d, 4), str(r)) for d, r in remaining]


def dims_twists_match(dims, twists, table, tol=1e-6):
    """Bijection between (dim, e(r)) pairs and the table's rows within tol."""
    extra, missing = dims_twists_diff(dims, twists, table, tol)
    return not extra and not missing


def brute_force_match(Sa, Sb, tol=1e-6, conj=False):
    """Exhaustive permutation search fixing 0 (small ranks only)."""
    A = Sa.conj() if conj else Sa
    r = A.shape[0]
    for rest in itertools.permutations(range(1, r)):
        p = (0,) + rest
        if np.abs(A - Sb[np.ix_(p, p)]).max() < tol:
            return list(p)
    return None
