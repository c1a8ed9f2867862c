"""Modular data of the Drinfeld center of a near-group category and generic
modularity checks (unitarity, charge conjugation, Verlinde, balancing)."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .centersolver import CenterTriple, expected_triple_count
from .modular import MAX_DENOMINATOR, ModularData, e, phase_exponent
from .neargroup import NearGroupData


class FusionError(ValueError):
    pass


@dataclass(frozen=True)
class SimpleLabel:
    """A(g), B(h), C(k,l) with k before l, or D(j)."""

    kind: str
    args: tuple

    def name(self, group) -> str:
        if self.kind == "D":
            return f"D{self.args[0] + 1}"
        return self.kind + "".join(group.label(i) for i in self.args)


def center_labels(data: NearGroupData, ntriples: int) -> list[SimpleLabel]:
    n = data.n
    labs = [SimpleLabel("A", (g,)) for g in range(n)] + [SimpleLabel("B", (h,)) for h in range(n)]
    labs += [SimpleLabel("C", (k, l)) for k in range(n) for l in range(k + 1, n)]
    labs += [SimpleLabel("D", (j,)) for j in range(ntriples)]
    return labs


def assemble_center_data(data: NearGroupData, triples: Sequence[CenterTriple]) -> ModularData:
    """Block S and diagonal T of the center, labels ordered A, B, C, D.

    The twisted double sum of the D-D block uses <tau_j - tau_j' + h - g, h - g>.
    """
    n, d, c, a, P = data.n, data.d, data.c, data.a, data.P
    if len(triples) != expected_triple_count(n):
        raise ValueError(f"need {expected_triple_count(n)} triples, got {len(triples)}")
    add, sub = data.group.add_table, data.group.sub_table
    pairs = [(k, l) for k in range(n) for l in range(k + 1, n)]
    m, npairs = len(triples), len(pairs)
    oB, oC, oD = n, 2 * n, 2 * n + npairs
    r = oD + m
    dims = np.array([1.0] * n + [d + 1] * n + [d + 2] * npairs + [d] * m)
    tau = np.array([t.tau for t in triples])
    om = np.array([t.omega_value for t in triples])
    kl = np.array([add[k, l] for k, l in pairs], dtype=int)
    twists = np.concatenate([np.diag(P), np.diag(P), [P[k, l] for k, l in pairs], om])

    St = np.zeros((r, r), complex)
    P2 = P**-2.0
    St[:n, :n] = P2
    St[:n, oB:oC] = (d + 1) * P2
    St[oB:oC, oB:oC] = P2
    St[:n, oC:oD] = (d + 2) * P[:, kl].conj()
    St[oB:oC, oC:oD] = (d + 2) * P[:, kl].conj()
    St[:n, oD:] = d * P[:, tau]
    St[oB:oC, oD:] = -d * P[:, tau]
    k_, l_ = np.array(pairs).T if pairs else (np.zeros(0, int), np.zeros(0, int))
    St[oC:oD, oC:oD] = (d + 2) * (
        (P[np.ix_(k_, k_)] * P[np.ix_(l_, l_)]).conj() + (P[np.ix_(k_, l_)] * P[np.ix_(l_, k_)]).conj()
    )
    # D-D block
    g = np.arange(n)
    s1 = np.array([[P[add[add[t1, t2], g], g].sum() for t2 in tau] for t1 in tau])
    hg = sub.T  # [g, h] -> h - g
    M = np.array([P[add[t, hg], hg].conj() for t in range(n)])  # M[t][g, h] = conj<t + h - g, h - g>
    Xc = np.array([t.xi for t in triples]).conj()
    s2 = np.einsum("jg,jkgh,kh->jk", Xc, M[sub[np.ix_(tau, tau)]], Xc)
    pre = np.outer(om, om)
    St[oD:, oD:] = pre * s1 + d * pre * c**6 * np.outer(a[tau], a[tau]) / n * s2
    iu = np.triu_indices(oD, 1)
    St.T[iu] = St[iu]
    St[oD:, :oD] = St[:oD, oD:].T

    lam = float(np.sqrt(np.sum(dims**2)))
    if abs(lam - (n + d * d)) > 1e-6:
        raise ValueError(f"global dimension {lam} disagrees with n + d^2 = {n + d * d}")
    labels = [x.name(data.group) for x in center_labels(data, m)]
    return ModularData(labels, dims, twists, St / lam, lam, meta={"instance": data.name})


def verlinde_raw(md: ModularData) -> np.ndarray:
    return kernels.verlinde(md.S)


def verlinde_fusion(md: ModularData, tol: float = 1e-4) -> np.ndarray:
    """Integer fusion tensor N[a, b, c]; raises FusionError if not integral and nonnegative."""
    N = verlinde_raw(md)
    R = np.round(N.real)
    dev = np.abs(N - R)
    bad = np.where(R < -tol, np.inf, dev)
    worst = np.unravel_index(int(np.argmax(bad)), bad.shape)
    if bad[worst] > tol:
        a, b, c = (md.labels[i] for i in worst)
        raise FusionError(f"Verlinde coefficient N[{a},{b}]^{c} = {N[worst]:.6g} is not a nonnegative integer")
    return R.astype(int)


def charge_conjugation(md: ModularData) -> np.ndarray:
    """dual[x] = index of x* read off S^2."""
    return np.argmax(np.abs(md.S @ md.S), axis=1)


def balancing_residuals(md: ModularData, N: np.ndarray | None = None) -> np.ndarray:
    N = verlinde_fusion(md) if N is None else N
    dual = charge_conjugation(md)
    rhs = np.einsum("abz,z->ab", N[dual], md.twists * md.dims)
    lhs = md.twists[:, None] * md.twists[None, :] * md.S_tilde
    return np.abs(lhs - rhs)


def balancing_check(md: ModularData, X, Y, N: np.ndarray | None = None) -> float:
    """|theta_X theta_Y S~_XY - sum_Z N_{X*,Y}^Z theta_Z d_Z|."""
    x, y = md.indices([X, Y])
    N = verlinde_fusion(md) if N is None else N
    xs = charge_conjugation(md)[x]
    rhs = np.sum(N[xs, y] * md.twists * md.dims)
    return float(abs(md.twists[x] * md.twists[y] * md.S_tilde[x, y] - rhs))


@dataclass
class ModularReport:
    checks: dict[str, float] = field(default_factory=dict)
    tol: float = 1e-6
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(v <= self.tol for v in self.checks.values())

    def failed(self) -> list[str]:
        return [k for k, v in self.checks.items() if v > self.tol]


def verify_modular(md: ModularData, tol: float = 1e-6, max_den: int = MAX_DENOMINATOR) -> ModularReport:
    S, r = md.S, md.rank
    rep = ModularReport(tol=tol)
    rep.checks["unitarity"] = float(np.abs(S @ S.conj().T - np.eye(r)).max())
    rep.checks["symmetry"] = float(np.abs(S - S.T).max())
    rep.checks["first_row"] = float(np.abs(S[0] - md.dims / md.lam).max())
    S2 = np.abs(S @ S)
    Pm = np.round(S2)
    perm_ok = (Pm.sum(axis=0) == 1).all() and (Pm.sum(axis=1) == 1).all() and Pm[0, 0] == 1
    rep.checks["charge_conjugation"] = float(np.abs(S2 - Pm).max()) if perm_ok else np.inf
    Nraw = verlinde_raw(md)
    R = np.round(Nraw.real)
    rep.checks["verlinde_integrality"] = float(np.abs(Nraw - R).max())
    rep.checks["verlinde_positivity"] = float(max(0.0, -R.min()))
    rep.checks["twist_finite_order"] = max(
        (0.0 if phase_exponent(t, max_den, tol) is not None else np.inf) for t in md.twists
    )
    rep.checks["twist_modulus"] = float(np.abs(np.abs(md.twists) - 1).max())
    if np.isfinite(rep.checks["charge_conjugation"]):
        rep.checks["balancing"] = float(balancing_residuals(md, R.astype(int)).max())
    else:
        rep.checks["balancing"] = np.inf
    return rep


def twist_spectrum(md: ModularData, idx: Sequence[int] | None = None) -> list:
    idx = range(md.rank) if idx is None else idx
    return [phase_exponent(md.twists[i]) for i in idx]
