"""Finite abelian groups as products of cyclic factors, bicharacters, quadratic forms
and the modular data of pointed braided categories C(G, q)."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from .modular import ModularData, e


@dataclass(frozen=True)
class GroupSpec:
    """G = Z/o_1 x ... x Z/o_k."""

    orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(o) for o in self.orders)
        if not orders or any(o < 1 for o in orders):
            raise ValueError(f"invalid cyclic orders {self.orders!r}")
        object.__setattr__(self, "orders", orders)

    @property
    def n(self) -> int:
        return int(np.prod(self.orders))

    @cached_property
    def coords(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*[range(o) for o in self.orders]))

    @cached_property
    def _index(self) -> dict[tuple[int, ...], int]:
        return {g: i for i, g in enumerate(self.coords)}

    def index(self, g) -> int:
        if isinstance(g, GroupElement):
            if g.orders != self.orders:
                raise ValueError("element belongs to a different group")
            g = g.coords
        if isinstance(g, (int, np.integer)):
            if not 0 <= g < self.n:
                raise IndexError(f"element index {g} out of range")
            return int(g)
        key = tuple(int(x) % o for x, o in zip(g, self.orders))
        if len(key) != len(self.orders):
            raise ValueError(f"element {g!r} has wrong arity for orders {self.orders}")
        return self._index[key]

    def element(self, i: int) -> "GroupElement":
        return GroupElement(self.coords[i], self.orders)

    @cached_property
    def add_table(self) -> np.ndarray:
        """add_table[i, j] = index of g_i + g_j."""
        c = np.array(self.coords).reshape(self.n, -1)
        o = np.array(self.orders)
        s = (c[:, None, :] + c[None, :, :]) % o
        return np.array([[self._index[tuple(v)] for v in row] for row in s])

    @cached_property
    def neg_table(self) -> np.ndarray:
        return np.array([self._index[tuple((-x) % o for x, o in zip(g, self.orders))] for g in self.coords])

    @cached_property
    def sub_table(self) -> np.ndarray:
        """sub_table[i, j] = index of g_i - g_j."""
        return self.add_table[:, self.neg_table]

    def label(self, i: int) -> str:
        g = self.coords[i]
        return f"({g[0]})" if len(g) == 1 else "(" + ",".join(map(str, g)) + ")"


@dataclass(frozen=True)
class GroupElement:
    coords: tuple[int, ...]
    orders: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != len(self.orders):
            raise ValueError("coordinate/order length mismatch")
        object.__setattr__(self, "coords", tuple(int(x) % o for x, o in zip(self.coords, self.orders)))

    def _check(self, other: "GroupElement"):
        if other.orders != self.orders:
            raise ValueError("elements of different groups")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(tuple(x + y for x, y in zip(self.coords, other.coords)), self.orders)

    def __neg__(self) -> "GroupElement":
        return GroupElement(tuple(-x for x in self.coords), self.orders)

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def is_zero(self) -> bool:
        return not any(self.coords)


def enumerate_elements(spec: GroupSpec) -> list[GroupElement]:
    """All elements in lexicographic coordinate order, identity first."""
    return [GroupElement(g, spec.orders) for g in spec.coords]


@dataclass(frozen=True)
class Bicharacter:
    """<x,y> = e(sum_ij M_ij x_i y_j) with rational M."""

    group: GroupSpec
    exponents: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def cyclic(cls, n: int, m: int) -> "Bicharacter":
        return cls(GroupSpec((n,)), ((Fraction(m, n),),))

    @classmethod
    def diagonal(cls, group: GroupSpec, ms: Sequence[int]) -> "Bicharacter":
        k = len(group.orders)
        M = [[Fraction(ms[i], group.orders[i]) if i == j else Fraction(0) for j in range(k)] for i in range(k)]
        return cls(group, tuple(tuple(r) for r in M))

    def exponent(self, x, y) -> Fraction:
        gx = self.group.coords[self.group.index(x)]
        gy = self.group.coords[self.group.index(y)]
        k = len(gx)
        return sum((self.exponents[i][j] * gx[i] * gy[j] for i in range(k) for j in range(k)), Fraction(0)) % 1

    @cached_property
    def exponent_matrix(self) -> list[list[Fraction]]:
        n = self.group.n
        return [[self.exponent(i, j) for j in range(n)] for i in range(n)]

    def matrix(self) -> np.ndarray:
        return np.array([[e(r) for r in row] for row in self.exponent_matrix])

    def is_symmetric(self) -> bool:
        M = self.exponent_matrix
        return all(M[i][j] == M[j][i] for i in range(len(M)) for j in range(len(M)))

    def is_bilinear(self) -> bool:
        M, add = self.exponent_matrix, self.group.add_table
        n = self.group.n
        return all((M[add[x, y]][z] - M[x][z] - M[y][z]) % 1 == 0 for x in range(n) for y in range(n) for z in range(n))


def pair(b: Bicharacter, x, y) -> complex:
    """<x, y>."""
    for g in (x, y):
        if isinstance(g, GroupElement) and g.orders != b.group.orders:
            raise ValueError("element not in the bicharacter's group")
    return e(b.exponent(x, y))


def _nondegenerate_matrix(P: np.ndarray, tol: float = 1e-9) -> bool:
    ones = np.ones(P.shape[1])
    return not any(np.allclose(P[x], ones, atol=tol) for x in range(1, P.shape[0]))


def is_nondegenerate(b: Bicharacter | np.ndarray) -> bool:
    """True iff x -> <x, .> is injective."""
    P = b.matrix() if isinstance(b, Bicharacter) else np.asarray(b)
    return _nondegenerate_matrix(P)


@dataclass(frozen=True)
class QuadraticForm:
    """q(g) = e(values[g]) in element-enumeration order."""

    group: GroupSpec
    exponents: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.exponents) != self.group.n:
            raise ValueError("quadratic form needs one exponent per element")
        object.__setattr__(self, "exponents", tuple(Fraction(r) % 1 for r in self.exponents))

    @classmethod
    def from_function(cls, group: GroupSpec, f: Callable[[tuple[int, ...]], Fraction]) -> "QuadraticForm":
        return cls(group, tuple(f(g) for g in group.coords))

    @classmethod
    def from_bicharacter(cls, b: Bicharacter) -> "QuadraticForm":
        """q(g) = <g, g>."""
        return cls(b.group, tuple(b.exponent(i, i) for i in range(b.group.n)))

    def value(self, g) -> complex:
        return e(self.exponents[self.group.index(g)])

    def values(self) -> np.ndarray:
        return np.array([e(r) for r in self.exponents])

    def bicharacter_exponents(self) -> list[list[Fraction]]:
        """q(g+h)/(q(g)q(h))."""
        q, add, n = self.exponents, self.group.add_table, self.group.n
        return [[(q[add[g, h]] - q[g] - q[h]) % 1 for h in range(n)] for g in range(n)]

    def is_valid(self) -> bool:
        q, neg, n = self.exponents, self.group.neg_table, self.group.n
        if any(q[g] != q[neg[g]] for g in range(n)):
            return False
        B = self.bicharacter_exponents()
        add = self.group.add_table
        sym = all(B[g][h] == B[h][g] for g in range(n) for h in range(n))
        lin = all((B[add[x, y]][z] - B[x][z] - B[y][z]) % 1 == 0 for x in range(n) for y in range(n) for z in range(n))
        return sym and lin


def pointed_modular_data(spec: GroupSpec, q: QuadraticForm) -> ModularData:
    """C(G, q): S_{g,h} = conj<g,h>/sqrt|G|, T = q."""
    if q.group.orders != spec.orders:
        raise ValueError("quadratic form lives on a different group")
    P = np.array([[e(r) for r in row] for row in q.bicharacter_exponents()])
    if not is_nondegenerate(P):
        raise ValueError("not modular: associated bicharacter is degenerate")
    n = spec.n
    labels = [f"a{spec.label(i)}" for i in range(n)]
    return ModularData(labels, np.ones(n), q.values(), P.conj() / np.sqrt(n), np.sqrt(n))
