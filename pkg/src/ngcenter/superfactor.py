"""Pointed factors, spin sectors, super-modular data (S_hat, T_hat^2) and
comparison of modular data up to relabeling and complex conjugation."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .condense import (
    Data,
    PartialModularData,
    _S_known,
    centralizer,
    condensed_action,
    find_invertibles,
    invertible_action,
)
from .modular import ModularData, e


class FactorError(ValueError):
    pass


@dataclass
class SpinModularData:
    md: Data
    fermion: int

    def __post_init__(self):
        if isinstance(self.fermion, str):
            self.fermion = self.md.index(self.fermion)
        f = self.fermion
        S, mask = _S_known(self.md)
        if abs(self.md.dims[f] - 1) > 1e-6 or abs(self.md.twists[f] + 1) > 1e-6:
            raise FactorError(f"{self.md.labels[f]} is not a fermion")
        if not mask[f].all() or np.abs((S[f] / S[0]).imag).max() > 1e-6:
            raise FactorError(f"{self.md.labels[f]} is not self-inverse")


@dataclass
class SuperModularData:
    pair_labels: list[tuple[str, str]]
    S_hat: np.ndarray
    T2_hat: np.ndarray
    lam_hat: float = 0.0
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.S_hat = np.asarray(self.S_hat, complex)
        self.T2_hat = np.asarray(self.T2_hat, complex)
        if not self.lam_hat:
            self.lam_hat = float(1 / self.S_hat[0, 0].real)

    @property
    def rank(self) -> int:
        return len(self.pair_labels)

    @property
    def dims(self) -> np.ndarray:
        return (self.S_hat[0] / self.S_hat[0, 0]).real

    def check(self, tol: float = 1e-6) -> dict[str, float]:
        S = self.S_hat
        return {
            "unitarity": float(np.abs(S @ S.conj().T - np.eye(self.rank)).max()),
            "symmetry": float(np.abs(S - S.T).max()),
            "positive_dims": float(max(0.0, -(S[0].real.min() - tol))) if S[0].real.min() <= 0 else 0.0,
        }


def _action(md: Data, g: int) -> np.ndarray:
    if isinstance(md, PartialModularData) and "parent_actions" in md.meta:
        origin = md.meta["origin"][g]
        if origin in md.meta["parent_actions"]:
            return condensed_action(md, origin)
    return invertible_action(md, g)


def pointed_part(md: Data, pointed: Sequence[int]) -> ModularData:
    S, mask = _S_known(md)
    pt = list(pointed)
    if not all(mask[i].all() for i in pt):
        raise FactorError("pointed rows are not determined")
    if any(abs(md.dims[i] - 1) > 1e-6 for i in pt):
        raise FactorError("pointed labels must be invertible")
    p = len(pt)
    Spt = md.lam * S[np.ix_(pt, pt)] / np.sqrt(p)
    if np.abs(Spt @ Spt.conj().T - np.eye(p)).max() > 1e-6:
        raise FactorError("pointed part not modular")
    return ModularData([md.labels[i] for i in pt], np.ones(p), md.twists[pt], Spt, np.sqrt(p))


def factor_pointed(md: Data, pointed: Sequence[int | str], tol: float = 1e-6):
    """Split md = factor x C(A, q) along a modular pointed subcategory.

    Returns (factor, pointed data, bijection {(X, a): label of a (x) X}).
    """
    pt = [md.index(x) if isinstance(x, str) else int(x) for x in pointed]
    ptd = pointed_part(md, pt)
    fac = centralizer(md, pt, tol)
    p = len(pt)
    actions = {a: _action(md, a) for a in pt}
    bij = {}
    for x in fac:
        for a in pt:
            bij[(md.labels[x], md.labels[a])] = md.labels[int(actions[a][x])]
    if sorted(bij.values()) != sorted(md.labels) or len(set(bij.values())) != len(md.labels):
        raise FactorError("factor x pointed does not biject onto the simples")
    lam_f = md.lam / np.sqrt(p)
    factor = md.restrict(fac, lam_f)
    S, mask = _S_known(md)
    Sf, maskf = _S_known(factor)
    worst = 0.0
    for (X, a), XA in bij.items():
        i, ia, ix = md.index(XA), ptd.index(a), factor.index(X)
        for (Y, b), YB in bij.items():
            j, jb, jy = md.index(YB), ptd.index(b), factor.index(Y)
            if mask[i, j] and maskf[ix, jy]:
                worst = max(worst, abs(S[i, j] - Sf[ix, jy] * ptd.S[ia, jb]))
    if worst > tol:
        raise FactorError(f"S does not factor: deviation {worst:.2e}")
    return factor, ptd, bij


def find_pointed_modular(md: Data) -> list[list[int]]:
    """Proper nontrivial subgroups of invertibles (containing the unit) with modular restriction,
    largest first."""
    inv = [i for i in find_invertibles(md) if _S_known(md)[1][i].all()]
    acts = {g: _action(md, g) for g in inv}
    out = []
    for k in range(len(inv) - 1, 1, -1):
        for sub in itertools.combinations(inv, k):
            if 0 not in sub:
                continue
            if any(int(acts[a][b]) not in sub for a in sub for b in sub):
                continue
            try:
                pointed_part(md, sub)
            except FactorError:
                continue
            out.append(list(sub))
    return out


def extract_fermion_sector(spin: SpinModularData) -> Data:
    """Centralizer of the fermion, renormalized by lam / sqrt(2)."""
    md, f = spin.md, spin.fermion
    sec = centralizer(md, [f])
    if f not in sec or len(sec) % 2:
        raise FactorError("fermion sector must contain f and have even rank")
    out = md.restrict(sec, md.lam / np.sqrt(2))
    out.meta = dict(out.meta, fermion=md.labels[f])
    S, mask = _S_known(out)
    fi = out.index(md.labels[f])
    dev = np.abs(out.lam * S[fi] - out.dims[fi] * out.dims)[mask[fi]].max()
    if dev > 1e-6:
        raise FactorError("fermion not transparent in its centralizer")
    return out


def _fermion_action(sector: Data, f: int, tol: float = 1e-6) -> np.ndarray:
    """X -> fX inside the fermion sector, where S cannot separate X from fX:
    the partner has the same S row (times the monodromy of f) and opposite twist."""
    if isinstance(sector, PartialModularData) and sector.meta.get("origin", [None])[f] in sector.meta.get("parent_actions", {}):
        return condensed_action(sector, sector.meta["origin"][f])
    S, mask = _S_known(sector)
    mono = S[f] / S[0]
    perm = -np.ones(len(sector.labels), int)
    for x in range(len(sector.labels)):
        hits = [
            y
            for y in range(len(sector.labels))
            if abs(sector.twists[y] + sector.twists[x]) < tol and abs(sector.dims[y] - sector.dims[x]) < tol
            and mask[x].all() and mask[y].all() and np.abs(S[y] - S[x] * mono).max() < tol
        ]
        if len(hits) != 1:
            raise FactorError(f"cannot identify {sector.labels[f]} x {sector.labels[x]}")
        perm[x] = hits[0]
    return perm


def _pairs(sector: Data, fermion: str) -> list[tuple[int, int]]:
    act = _fermion_action(sector, sector.index(fermion))
    pairs, seen = [], set()
    for i, lab in enumerate(sector.labels):
        if i in seen:
            continue
        j = int(act[i])
        if j == i:
            raise FactorError(f"fermion has a fixed point: {lab}")
        seen |= {i, j}
        a = np.angle(sector.twists[i]) % (2 * np.pi)
        pairs.append((i, j) if a < np.pi - 1e-9 else (j, i))
    return pairs


def split_super(sector: Data, fermion: str | int, tol: float = 1e-6):
    """Collapse {X, fX} pairs: S_hat = sqrt(2) S_XY, T_hat^2 = theta_X^2.

    For partial data the row equalities S_{fX,Y} = S_{X,Y} are imposed as
    constraints and partial super data is returned.
    """
    if not isinstance(fermion, str):
        fermion = sector.labels[fermion]
    pairs = _pairs(sector, fermion)
    reps = [i for i, _ in pairs]
    lam_hat = sector.lam / np.sqrt(2)
    labels = [(sector.labels[i], sector.labels[j]) for i, j in pairs]
    if isinstance(sector, PartialModularData):
        E, f = [], []
        for i, j in pairs:
            for y in range(sector.rank):
                E.append(sector.lin[i, y] - sector.lin[j, y])
                f.append(sector.const[j, y] - sector.const[i, y])
        sec = sector.impose(np.array(E), np.array(f), "fermion row equality") if sector.nparams else sector
        if not sec.nparams:
            dev = max(np.abs(sec.const[i] - sec.const[j]).max() for i, j in pairs)
            if dev > tol:
                raise FactorError(f"fermion not transparent: rows differ by {dev:.2e}")
        out = sec.restrict(reps, lam_hat)
        out.labels = [f"[{a}|{b}]" for a, b in labels]
        out.kind = "super"
        out.meta = dict(out.meta, pairs=labels)
        return out
    S = sector.S
    dev = max(np.abs(S[i] - S[j]).max() for i, j in pairs)
    if dev > tol:
        raise FactorError(f"fermion not transparent: rows differ by {dev:.2e}")
    S_hat = np.sqrt(2) * S[np.ix_(reps, reps)]
    return SuperModularData(labels, S_hat, sector.twists[reps] ** 2, lam_hat, {"theta": sector.twists[reps]})


def super_from_resolved(pmd: PartialModularData, S_hat: np.ndarray) -> SuperModularData:
    return SuperModularData(list(pmd.meta["pairs"]), S_hat, pmd.twists**2, pmd.lam, {"theta": pmd.twists})


@dataclass
class MatchResult:
    match: bool
    permutation: list[int] | None
    conjugated: bool
    deviation: float


def _ST(x) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(x, SuperModularData):
        return x.S_hat, x.T2_hat
    return x.S, x.twists


def _multiset_gap(x: np.ndarray, y: np.ndarray) -> float:
    """Largest distance from an entry of either multiset to the nearest entry of the other."""
    D = np.abs(np.asarray(x)[:, None] - np.asarray(y)[None, :])
    return float(max(D.min(axis=1).max(), D.min(axis=0).max()))


def compare_modular(a, b, allow_conjugation: bool = False, tol: float = 1e-6) -> MatchResult:
    """Search label permutations (0 fixed, dims and twists respected) mapping a onto b,
    optionally after entrywise conjugation of a."""
    Sa, Ta = _ST(a)
    Sb, Tb = _ST(b)
    if Sa.shape != Sb.shape:
        return MatchResult(False, None, False, np.inf)
    r = Sa.shape[0]
    best = (np.inf, None, False)
    for conj in (False, True) if allow_conjugation else (False,):
        S1 = Sa.conj() if conj else Sa
        T1 = Ta.conj() if conj else Ta
        da, db = np.abs(S1[0]), np.abs(Sb[0])
        options = [
            [j for j in range(r) if abs(da[i] - db[j]) < tol * 10 and abs(T1[i] - Tb[j]) < tol * 10 and (i == 0) == (j == 0)]
            for i in range(r)
        ]
        if any(not o for o in options):
            dev = max(_multiset_gap(da, db), _multiset_gap(T1, Tb))
            best = min(best, (dev, None, conj), key=lambda t: t[0])
            continue
        order = sorted(range(r), key=lambda i: len(options[i]))
        perm = [-1] * r
        used = set()
        found = []

        def extend(k, worst):
            if found:
                return
            if k == r:
                found.append((worst, list(perm)))
                return
            i = order[k]
            for j in options[i]:
                if j in used:
                    continue
                dev = worst
                for i2 in order[:k]:
                    j2 = perm[i2]
                    dev = max(dev, abs(S1[i, i2] - Sb[j, j2]), abs(S1[i2, i] - Sb[j2, j]))
                dev = max(dev, abs(S1[i, i] - Sb[j, j]))
                if dev > tol:
                    continue
                perm[i] = j
                used.add(j)
                extend(k + 1, dev)
                used.discard(j)
                perm[i] = -1

        extend(0, 0.0)
        if found:
            return MatchResult(True, found[0][1], conj, found[0][0])
        # best effort deviation under the first admissible assignment
        greedy = [options[i][0] for i in range(r)]
        dev = float(np.abs(S1 - Sb[np.ix_(greedy, greedy)]).max())
        best = min(best, (dev, None, conj), key=lambda t: t[0])
    return MatchResult(False, None, best[2], float(best[0]))


def _chi(n: float, m: float) -> float:
    return m + np.sqrt(n)


def target_data() -> dict[str, SuperModularData]:
    """The two rank-10 super-modular data to be realized, from their closed forms."""
    x153, x154, x155 = _chi(15, 3), _chi(15, 4), _chi(15, 5)
    x51, x55 = _chi(5, 1), _chi(5, 5)
    r1 = np.sqrt(30 * x154)
    w = -2 * r1 / x55
    S1 = np.array(
        [
            [1, x154, x155, x153, x153],
            [x154, 1, x155, -x153, -x153],
            [x155, x155, -x155, 0, 0],
            [x153, -x153, 0, x51 * x153 / 2, w],
            [x153, -x153, 0, w, x51 * x153 / 2],
        ],
        dtype=complex,
    ) / r1
    T1 = np.array([1, 1, e(1 / 3), e(2 / 5), e(-2 / 5)])
    x245, x244, x63 = _chi(24, 5), _chi(24, 4), _chi(6, 3)
    r2 = np.sqrt(6 * x245)
    S2 = np.array(
        [
            [1, x245, x63, x63, x244],
            [x245, 1, x63, x63, -x244],
            [x63, x63, -x63 - 1j * r2, -x63 + 1j * r2, 0],
            [x63, x63, -x63 + 1j * r2, -x63 - 1j * r2, 0],
            [x244, -x244, 0, 0, x244],
        ],
        dtype=complex,
    ) / (2 * r2)
    T2 = np.array([1, 1, -1, -1, e(1 / 3)])
    names = lambda k: [(f"s{i}", f"fs{i}") for i in range(k)]
    return {
        "smds1": SuperModularData(names(5), S1, T1, r1),
        "smds2": SuperModularData(names(5), S2, T2, 2 * r2),
    }
