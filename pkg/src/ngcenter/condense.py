"""Muger centralizers, bosons and fermions, Z/2 boson condensation, and resolution
of the S-matrix entries that condensation leaves undetermined.

Undetermined entries are carried as an affine family S(p) = const + lin @ p in
complex parameters p. Linear constraints (sum rules, orthogonality against fully
known rows, saturated row norms) shrink the family; once one parameter remains,
charge-conjugation hypotheses give quadratics whose roots are filtered by
Verlinde positivity and balancing.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .linalg import affine_nullspace
from .modular import ModularData, phase_exponent

DEFAULT_TOL = 1e-6


class CondensationError(ValueError):
    pass


class ResolutionError(RuntimeError):
    def __init__(self, message: str, diagnostics: list | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or []


@dataclass
class PartialModularData:
    """Modular data whose S-matrix is S(p) = const + lin @ p.

    kind is "modular" for ordinary data or "super" for a collapsed (S_hat, theta)
    pair of a spin sector, where twists are those of the pair representatives.
    """

    labels: list[str]
    dims: np.ndarray
    twists: np.ndarray
    lam: float
    const: np.ndarray
    lin: np.ndarray
    kind: str = "modular"
    meta: dict = field(default_factory=dict)
    log: list[str] = field(default_factory=list)

    def __post_init__(self):
        self.dims = np.asarray(self.dims, float)
        self.twists = np.asarray(self.twists, complex)
        self.const = np.asarray(self.const, complex)
        r = len(self.labels)
        self.lin = np.asarray(self.lin, complex).reshape(r, r, -1)

    @classmethod
    def from_modular(cls, md: ModularData, kind: str = "modular") -> "PartialModularData":
        r = md.rank
        return cls(list(md.labels), md.dims, md.twists, md.lam, md.S.copy(), np.zeros((r, r, 0)), kind, dict(md.meta))

    @property
    def rank(self) -> int:
        return len(self.labels)

    @property
    def nparams(self) -> int:
        return self.lin.shape[2]

    @property
    def is_resolved(self) -> bool:
        return self.nparams == 0

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def S(self, p=None) -> np.ndarray:
        if p is None or self.nparams == 0:
            return self.const.copy()
        return self.const + self.lin @ np.asarray(p, complex)

    def known_mask(self, tol: float = 1e-12) -> np.ndarray:
        return np.abs(self.lin).max(axis=2, initial=0.0) < tol

    def known_rows(self, tol: float = 1e-12) -> list[int]:
        return [i for i in range(self.rank) if self.known_mask(tol)[i].all()]

    def unknown_rows(self, tol: float = 1e-12) -> list[int]:
        kn = set(self.known_rows(tol))
        return [i for i in range(self.rank) if i not in kn]

    def copy_with(self, const: np.ndarray, lin: np.ndarray, note: str | None = None) -> "PartialModularData":
        out = PartialModularData(
            list(self.labels), self.dims, self.twists, self.lam, const, lin, self.kind, dict(self.meta), list(self.log)
        )
        if note:
            out.log.append(note)
        return out

    def reparam(self, p0: np.ndarray, N: np.ndarray, note: str | None = None) -> "PartialModularData":
        return self.copy_with(self.const + self.lin @ p0, self.lin @ N, note).compress()

    def compress(self, tol: float = 1e-10) -> "PartialModularData":
        """Drop parameter directions that do not move S."""
        r, K = self.rank, self.nparams
        if K == 0:
            return self
        M = self.lin.reshape(r * r, K)
        U, s, _ = np.linalg.svd(M, full_matrices=False)
        k = int(np.sum(s > tol * max(1.0, s[0])))
        self.lin = (U[:, :k] * s[:k]).reshape(r, r, k)
        return self

    def impose(self, E: np.ndarray, f: np.ndarray, note: str, tol: float = 1e-8) -> "PartialModularData":
        """Restrict to parameters with E p = f."""
        if self.nparams == 0:
            return self
        p0, N, res = affine_nullspace(np.asarray(E), np.asarray(f))
        if res > tol:
            raise ResolutionError(f"inconsistent constraints ({note}): residual {res:.2e}")
        return self.reparam(p0, N, f"{note}: {self.nparams} -> {N.shape[1]} parameters")

    def restrict(self, idx: Sequence[int], lam: float) -> "PartialModularData":
        idx = list(idx)
        scale = self.lam / lam
        meta = {k: ([v[i] for i in idx] if k in ("origin", "type") else v) for k, v in self.meta.items()}
        return PartialModularData(
            [self.labels[i] for i in idx],
            self.dims[idx],
            self.twists[idx],
            lam,
            self.const[np.ix_(idx, idx)] * scale,
            self.lin[np.ix_(idx, idx)] * scale,
            self.kind,
            meta,
            list(self.log),
        ).compress()

    def to_modular(self, p=None) -> ModularData:
        return ModularData(list(self.labels), self.dims, self.twists, self.S(p), self.lam, dict(self.meta))


Data = ModularData | PartialModularData


def _S_known(md: Data) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(md, PartialModularData):
        return md.const, md.known_mask()
    return md.S, np.ones(md.S.shape, bool)


def _require_known(md: Data, rows: Sequence[int]):
    _, mask = _S_known(md)
    for i in rows:
        if not mask[i].all():
            raise ValueError(f"row {md.labels[i]} of S is not determined")


def find_invertibles(md: Data, tol: float = DEFAULT_TOL) -> list[int]:
    return [i for i in range(len(md.labels)) if abs(md.dims[i] - 1) < tol]


def _self_dual(md: Data, i: int, tol: float) -> bool:
    S, mask = _S_known(md)
    if not mask[i].all():
        return False
    return bool(np.abs((S[i] / S[0]).imag).max() < tol)


def find_bosons(md: Data, tol: float = DEFAULT_TOL) -> list[int]:
    return [i for i in find_invertibles(md, tol) if i and abs(md.twists[i] - 1) < tol and _self_dual(md, i, tol)]


def find_fermions(md: Data, tol: float = DEFAULT_TOL) -> list[int]:
    return [i for i in find_invertibles(md, tol) if abs(md.twists[i] + 1) < tol and _self_dual(md, i, tol)]


def centralizer(md: Data, generators: Sequence[int | str], tol: float = DEFAULT_TOL) -> list[int]:
    """Labels Y with lam S_XY = d_X d_Y for every generator X."""
    gens = [md.index(g) if isinstance(g, str) else int(g) for g in generators]
    _require_known(md, gens)
    S, _ = _S_known(md)
    out = []
    for y in range(len(md.labels)):
        if all(abs(md.lam * S[x, y] - md.dims[x] * md.dims[y]) < tol for x in gens):
            out.append(y)
    return out


def invertible_action(md: Data, g: int, tol: float = 1e-6) -> np.ndarray:
    """perm[x] = index of g (x) x, read off S_{gx,y} = S_xy S_gy / S_0y on determined rows."""
    S, mask = _S_known(md)
    _require_known(md, [g])
    mono = S[g] / S[0]
    rows = [x for x in range(len(md.labels)) if mask[x].all()]
    perm = -np.ones(len(md.labels), int)
    for x in rows:
        target = S[x] * mono
        hits = [y for y in rows if np.abs(S[y] - target).max() < tol]
        if len(hits) != 1:
            raise ValueError(f"cannot identify {md.labels[g]} x {md.labels[x]}")
        perm[x] = hits[0]
    return perm


@dataclass
class Orbits:
    fixed: list[int]
    pairs: list[tuple[int, int]]
    perm: np.ndarray


def tensor_orbits(md: ModularData, b: int | str, tol: float = 1e-4) -> Orbits:
    """Fixed points and 2-cycles of X -> b X from the Verlinde coefficients N_{b,X}^Y."""
    b = md.index(b) if isinstance(b, str) else b
    if abs(md.dims[b] - 1) > 1e-6:
        raise CondensationError(f"{md.labels[b]} is not invertible")
    S = md.S
    Nb = (S * (S[b] / S[0])[None, :]) @ S.conj().T
    perm = np.argmax(np.abs(Nb), axis=1)
    if np.abs(Nb - np.eye(md.rank)[perm]).max() > tol:
        raise CondensationError("fusion with b is not a permutation")
    fixed = [x for x in range(md.rank) if perm[x] == x]
    pairs = [(x, int(perm[x])) for x in range(md.rank) if perm[x] > x]
    return Orbits(fixed, pairs, perm)


def condense(md: ModularData, b: int | str, tol: float = DEFAULT_TOL) -> PartialModularData:
    """Local modules over 1 + b: one label per free orbit in the centralizer of b,
    two branches per fixed point; lam' = lam / 2."""
    b = md.index(b) if isinstance(b, str) else b
    if b not in find_bosons(md, tol):
        raise CondensationError(f"{md.labels[b]} is not a boson")
    cen = set(centralizer(md, [b], tol))
    orb = tensor_orbits(md, b)
    fixed = [x for x in orb.fixed if x in cen]
    pairs = [(x, y) for x, y in orb.pairs if x in cen]
    for x in fixed:
        if md.labels[x].startswith("B("):
            raise CondensationError(f"{md.labels[x]} is fixed by b, which the dimension argument forbids")
    S = md.S
    typeI = [x for x, _ in pairs]
    labels = [f"F({md.labels[x]})" for x in typeI] + [f"({md.labels[y]})_{i}" for y in fixed for i in (1, 2)]
    origin = [x for x in typeI] + [y for y in fixed for _ in (1, 2)]
    dims = np.array([md.dims[x] for x in typeI] + [md.dims[y] / 2 for y in fixed for _ in (1, 2)])
    twists = md.twists[origin]
    R, nI = len(labels), len(typeI)
    const = np.zeros((R, R), complex)
    const[:nI, :nI] = 2 * S[np.ix_(typeI, typeI)]
    slots: dict[tuple[int, int], int] = {}
    for i in range(nI):
        for j in range(nI, R):
            slots[(i, j)] = len(slots)
    for i in range(nI, R):
        for j in range(i, R):
            slots[(i, j)] = len(slots)
    lin = np.zeros((R, R, len(slots)), complex)
    for (i, j), p in slots.items():
        lin[i, j, p] = lin[j, i, p] = 1
    E, f = [], []
    for i in range(nI):
        for k, y in enumerate(fixed):
            row = np.zeros(len(slots), complex)
            row[slots[(i, nI + 2 * k)]] = row[slots[(i, nI + 2 * k + 1)]] = 1
            E.append(row)
            f.append(2 * S[typeI[i], y])
    meta = {
        "parent": md.meta.get("instance", ""),
        "boson": md.labels[b],
        "origin": [md.labels[x] for x in origin],
        "partner": {f"F({md.labels[x]})": md.labels[y] for x, y in pairs},
        "type": ["I"] * nI + ["II"] * (R - nI),
        "parent_labels": list(md.labels),
        "parent_actions": {
            md.labels[g]: [md.labels[int(v)] for v in tensor_orbits(md, g).perm]
            for g in find_invertibles(md)
            if g in cen
        },
    }
    pmd = PartialModularData(labels, dims, twists, md.lam / 2, const, lin, "modular", meta)
    pmd.log.append(f"condensed {md.labels[b]}: {nI} type I, {len(fixed)} fixed points, {len(slots)} slots")
    return pmd.impose(np.array(E), np.array(f), "branch sum rules")


def condensed_action(pmd: PartialModularData, parent_g: str) -> np.ndarray:
    """Action of F(g) on condensed labels. Branch indices are carried along free
    orbits; a branch pair fixed by g is exchanged (g must act freely)."""
    g_of = dict(zip(pmd.meta["parent_labels"], pmd.meta["parent_actions"][parent_g]))
    orbit_of = {}
    for lab, partner in pmd.meta["partner"].items():
        orbit_of[lab[2:-1]] = orbit_of[partner] = lab
    perm = np.empty(pmd.rank, int)
    for i, (lab, x) in enumerate(zip(pmd.labels, pmd.meta["origin"])):
        gx = g_of[x]
        if lab.startswith("F("):
            perm[i] = pmd.index(orbit_of[gx])
        else:
            br = lab.rsplit("_", 1)[1]
            if gx == x:
                br = "2" if br == "1" else "1"
            perm[i] = pmd.index(f"({gx})_{br}")
    return perm


def linear_stage(pmd: PartialModularData, tol: float = 1e-8, max_rounds: int = 20) -> PartialModularData:
    """Orthogonality against determined rows and saturated row norms, to a fixed point."""
    for _ in range(max_rounds):
        K = pmd.nparams
        if K == 0:
            return pmd
        kn = pmd.known_rows()
        unk = [j for j in range(pmd.rank) if j not in kn]
        E, f = [], []
        for i in kn:
            ci = pmd.const[i].conj()
            for j in unk:
                E.append(pmd.lin[j].T @ ci)
                f.append(-pmd.const[j] @ ci)
        for j in unk:
            L = pmd.lin[j]
            c = pmd.const[j]
            Pc = L @ (np.linalg.pinv(L, rcond=1e-10) @ c)
            if abs(np.linalg.norm(c - Pc) ** 2 - 1) < tol:
                E.extend(L)
                f.extend(-Pc)
        if not E:
            return pmd
        new = pmd.impose(np.array(E), np.array(f), "orthogonality and norm saturation", tol=1e-6)
        if new.nparams == K:
            return new
        pmd = new
    return pmd


def _dual_of_known(S: np.ndarray, rows: Sequence[int], tol: float) -> dict[int, int]:
    out = {}
    for i in rows:
        v = np.abs(S[i] @ S)
        j = int(np.argmax(v))
        if abs(v[j] - 1) < tol:
            out[i] = j
    return out


def _involutions(items: list[int], compatible) -> list[dict[int, int]]:
    if not items:
        return [{}]
    first, rest = items[0], items[1:]
    out = [{**sub, first: first} for sub in _involutions(rest, compatible)]
    for k, other in enumerate(rest):
        if compatible(first, other):
            remaining = rest[:k] + rest[k + 1 :]
            out.extend({**sub, first: other, other: first} for sub in _involutions(remaining, compatible))
    return out


def _quad_coeffs(fun) -> np.ndarray:
    f0, f1, fm = fun(0.0), fun(1.0), fun(-1.0)
    return np.array([(f1 + fm) / 2 - f0, (f1 - fm) / 2, f0])


def split_balancing_residual(S: np.ndarray, twists: np.ndarray, dims: np.ndarray, lam: float) -> float:
    """Balancing for collapsed spin data: N_hat = N^Z + N^{fZ} with theta_{fZ} = -theta_Z,
    minimized over the admissible splits."""
    R = S.shape[0]
    N = np.round(kernels.verlinde(S).real).astype(int)
    dual = np.argmax(np.abs(S @ S), axis=1)
    worst = 0.0
    for i in range(R):
        for j in range(R):
            lhs = lam * S[i, j] * twists[i] * twists[j]
            ks = [k for k in range(R) if N[dual[i], j, k] > 0]
            best = np.inf
            for split in itertools.product(*[range(N[dual[i], j, k] + 1) for k in ks]):
                v = sum(dims[k] * twists[k] * (2 * s - N[dual[i], j, k]) for k, s in zip(ks, split))
                best = min(best, abs(v - lhs))
                if best < 1e-9:
                    break
            worst = max(worst, best if ks else abs(lhs))
    return float(worst)


@dataclass
class Candidate:
    hypothesis: dict[str, str]
    params: np.ndarray
    S: np.ndarray
    checks: dict[str, float]
    tol: float

    @property
    def passed(self) -> bool:
        return all(v <= self.tol for v in self.checks.values())

    def reasons(self) -> list[str]:
        return [f"{k}={v:.3g}" for k, v in self.checks.items() if v > self.tol]


@dataclass
class ResolveResult:
    status: str  # "resolved", "unique", "ambiguous", "underdetermined"
    partial: PartialModularData
    candidates: list[Candidate] = field(default_factory=list)
    data: ModularData | None = None

    @property
    def survivors(self) -> list[Candidate]:
        return [c for c in self.candidates if c.passed]


def candidate_checks(pmd: PartialModularData, S: np.ndarray, tol: float) -> dict[str, float]:
    r = pmd.rank
    checks = {
        "unitarity": float(np.abs(S @ S.conj().T - np.eye(r)).max()),
        "symmetry": float(np.abs(S - S.T).max()),
    }
    S2 = np.abs(S @ S)
    Pm = np.round(S2)
    perm = (Pm.sum(axis=0) == 1).all() and (Pm.sum(axis=1) == 1).all() and Pm[0, 0] == 1
    checks["charge_conjugation"] = float(np.abs(S2 - Pm).max()) if perm else np.inf
    N = kernels.verlinde(S)
    R = np.round(N.real)
    checks["verlinde_integrality"] = float(np.abs(N - R).max())
    checks["verlinde_positivity"] = float(max(0.0, -R.min()))
    if not np.isfinite(checks["charge_conjugation"]) or checks["verlinde_integrality"] > 1e-4:
        checks["balancing"] = np.inf
    elif pmd.kind == "super":
        checks["balancing"] = split_balancing_residual(S, pmd.twists, pmd.dims, pmd.lam)
    else:
        dual = np.argmax(S2, axis=1)
        rhs = np.einsum("abz,z->ab", R.astype(int)[dual], pmd.twists * pmd.dims)
        lhs = pmd.twists[:, None] * pmd.twists[None, :] * S * pmd.lam
        checks["balancing"] = float(np.abs(lhs - rhs).max())
    return checks


def resolve_unknowns(pmd: PartialModularData, tol: float = DEFAULT_TOL) -> ResolveResult:
    """Determine the free S-entries of partial data.

    Runs the linear stage; with one parameter left, branches on self-dual versus
    dual-pair structure of the undetermined rows, solves (S^2)_{ii} = C_{ii} in
    closed form and filters by unitarity, Verlinde positivity and balancing.
    """
    pmd = linear_stage(pmd)
    if pmd.nparams == 0:
        md = pmd.to_modular()
        cand = Candidate({}, np.zeros(0), md.S, candidate_checks(pmd, md.S, tol), tol)
        if not cand.passed:
            raise ResolutionError("determined data fails verification: " + ", ".join(cand.reasons()), [cand])
        return ResolveResult("resolved", pmd, [cand], md)
    if pmd.nparams > 1:
        return ResolveResult("underdetermined", pmd)

    unk = pmd.unknown_rows()
    kn = [i for i in range(pmd.rank) if i not in unk]
    known_dual = _dual_of_known(pmd.const, kn, 1e-6)
    if any(j in unk for j in known_dual.values()):
        raise ResolutionError("a determined row is dual to an undetermined row")

    def compatible(x, y):
        return abs(pmd.twists[x] - pmd.twists[y]) < tol and abs(pmd.dims[x] - pmd.dims[y]) < tol

    L = pmd.lin[..., 0]
    candidates: list[Candidate] = []
    for inv in _involutions(unk, compatible):
        C = np.zeros((pmd.rank, pmd.rank))
        for i, j in known_dual.items():
            C[i, j] = 1
        for i, j in inv.items():
            C[i, j] = 1
        hyp = {pmd.labels[i]: ("self-dual" if i == j else f"dual of {pmd.labels[j]}") for i, j in inv.items()}
        i0 = unk[0]
        eqs = [
            _quad_coeffs(lambda t, j=j: ((pmd.const + t * L) @ (pmd.const + t * L))[i0, j] - C[i0, j])
            for j in range(pmd.rank)
        ]
        eq = max(eqs, key=lambda q: abs(q[0]))
        if abs(eq[0]) < 1e-12:
            eq = max(eqs, key=lambda q: abs(q[1]))
        coeffs = np.trim_zeros(np.where(np.abs(eq) < 1e-14, 0, eq), "f")
        for t in np.roots(coeffs) if coeffs.size > 1 else []:
            S = pmd.const + t * L
            checks = {"hypothesis_S2": float(np.abs(S @ S - C).max())}
            checks.update(candidate_checks(pmd, S, tol))
            candidates.append(Candidate(hyp, np.array([t]), S, checks, tol))
    surv = [c for c in candidates if c.passed]
    if not surv:
        raise ResolutionError(
            "no candidate survives: " + "; ".join(f"{c.hypothesis}: {', '.join(c.reasons())}" for c in candidates),
            candidates,
        )
    if len(surv) > 1:
        return ResolveResult("ambiguous", pmd, candidates)
    md = pmd.to_modular(surv[0].params)
    return ResolveResult("unique", pmd, candidates, md)


def twist_exponent_list(twists: np.ndarray) -> list:
    return [phase_exponent(t) for t in twists]
