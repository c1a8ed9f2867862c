"""Phase helpers and the ModularData container shared by all stages."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

MAX_DENOMINATOR = 240


def e(r) -> complex:
    """exp(2 pi i r) for a rational or real r."""
    return complex(np.exp(2j * np.pi * float(r)))


def phase_exponent(z: complex, max_den: int = MAX_DENOMINATOR, tol: float = 1e-9) -> Fraction | None:
    """Return r in [0,1) with e(r) == z if r has denominator <= max_den, else None."""
    if abs(abs(z) - 1) > tol:
        return None
    t = (np.angle(z) / (2 * np.pi)) % 1.0
    r = Fraction(t).limit_denominator(max_den) % 1
    if abs(e(r) - z) < tol:
        return r
    return None


def format_phase(z: complex, max_den: int = MAX_DENOMINATOR, tol: float = 1e-9) -> str:
    r = phase_exponent(z, max_den, tol)
    if r is None:
        return f"{z.real:.6g}{z.imag:+.6g}j"
    if r == 0:
        return "1"
    return f"e({r.numerator}/{r.denominator})"


@dataclass
class ModularData:
    """Labeled simples with dimensions, twists and normalized S (S = S~/lam)."""

    labels: list[str]
    dims: np.ndarray
    twists: np.ndarray
    S: np.ndarray
    lam: float
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.dims = np.asarray(self.dims, dtype=float)
        self.twists = np.asarray(self.twists, dtype=complex)
        self.S = np.asarray(self.S, dtype=complex)
        self.lam = float(self.lam)
        r = len(self.labels)
        if self.dims.shape != (r,) or self.twists.shape != (r,) or self.S.shape != (r, r):
            raise ValueError("inconsistent modular data shapes")

    @property
    def rank(self) -> int:
        return len(self.labels)

    @property
    def S_tilde(self) -> np.ndarray:
        return self.S * self.lam

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def indices(self, labels: Sequence[str | int]) -> list[int]:
        return [x if isinstance(x, (int, np.integer)) else self.index(x) for x in labels]

    def restrict(self, idx: Sequence[int], lam: float) -> "ModularData":
        """Sub-data on idx, renormalized so that S = S~/lam."""
        idx = list(idx)
        S = self.S[np.ix_(idx, idx)] * (self.lam / lam)
        return ModularData([self.labels[i] for i in idx], self.dims[idx], self.twists[idx], S, lam)

    def twist_exponents(self) -> list[Fraction | None]:
        return [phase_exponent(t) for t in self.twists]

    def global_dimension(self) -> float:
        return float(np.sum(self.dims**2))
