"""JSON and text forms of every stage artifact.

Floats are written with repr precision so parse/emit round-trips exactly;
unit phases of finite order are written as {"num", "den"} exponents.
"""
from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Any

import numpy as np

from .algebra import Bicharacter, GroupSpec, QuadraticForm
from .centersolver import CenterTriple
from .condense import PartialModularData
from .modular import ModularData, e, format_phase, phase_exponent
from .neargroup import NearGroupData
from .superfactor import SuperModularData


def rat(r) -> dict:
    r = Fraction(r)
    return {"num": r.numerator, "den": r.denominator}


def parse_rat(x) -> Fraction:
    if isinstance(x, dict):
        return Fraction(int(x["num"]), int(x["den"]))
    if isinstance(x, int):
        return Fraction(x)
    raise ValueError(f"not a rational: {x!r}")


def cplx(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def parse_cplx(x) -> complex:
    re, im = x
    return complex(float(re), float(im))


def cmatrix(M: np.ndarray) -> list:
    return [[cplx(z) for z in row] for row in np.asarray(M)]


def parse_cmatrix(rows) -> np.ndarray:
    return np.array([[parse_cplx(z) for z in row] for row in rows], dtype=complex).reshape(len(rows), -1)


def phase(z) -> Any:
    r = phase_exponent(complex(z))
    return rat(r) if r is not None else cplx(z)


def parse_phase(x) -> complex:
    return e(parse_rat(x)) if isinstance(x, dict) else parse_cplx(x)


# groups, forms, near-group data


def group_to_json(G: GroupSpec) -> list[int]:
    return list(G.orders)


def group_from_json(x) -> GroupSpec:
    if not isinstance(x, list) or not all(isinstance(o, int) and o > 0 for o in x):
        raise ValueError("GroupSpec must be an array of positive integers")
    return GroupSpec(tuple(x))


def quadratic_form_to_json(q: QuadraticForm) -> list[dict]:
    return [rat(r) for r in q.exponents]


def quadratic_form_from_json(G: GroupSpec, x) -> QuadraticForm:
    return QuadraticForm(G, tuple(parse_rat(r) for r in x))


def _diagonal_ms(b: Bicharacter) -> list[int]:
    G = b.group
    k = len(G.orders)
    for i in range(k):
        for j in range(k):
            if i != j and b.exponents[i][j] % 1 != 0:
                raise ValueError("only diagonal pairings serialize as pairing_m")
    return [int(b.exponents[i][i] * G.orders[i]) % G.orders[i] for i in range(k)]


def neargroup_to_json(data: NearGroupData) -> dict:
    return {
        "name": data.name,
        "orders": list(data.group.orders),
        "pairing_m": _diagonal_ms(data.pairing),
        "c": rat(data.c_exp),
        "a": [rat(r) for r in data.a_exp],
        "b": [cplx(z) for z in data.b],
    }


def neargroup_from_json(x: dict) -> NearGroupData:
    G = group_from_json(x["orders"])
    pairing = Bicharacter.diagonal(G, [int(m) for m in x["pairing_m"]])
    return NearGroupData(
        str(x["name"]),
        pairing,
        parse_rat(x["c"]),
        tuple(parse_rat(r) for r in x["a"]),
        np.array([parse_cplx(z) for z in x["b"]]),
    )


# triples


def triple_to_json(t: CenterTriple, G: GroupSpec) -> dict:
    return {"omega": rat(t.omega), "tau": list(G.coords[t.tau]), "xi": [cplx(z) for z in t.xi]}


def triple_from_json(x: dict, G: GroupSpec) -> CenterTriple:
    return CenterTriple(parse_rat(x["omega"]), G.index(tuple(x["tau"])), np.array([parse_cplx(z) for z in x["xi"]]))


def triples_to_json(ts, G: GroupSpec) -> list[dict]:
    return [triple_to_json(t, G) for t in ts]


def triples_from_json(xs, G: GroupSpec) -> list[CenterTriple]:
    return [triple_from_json(x, G) for x in xs]


# modular, partial and super-modular data


def modular_to_json(md: ModularData) -> dict:
    return {
        "labels": list(md.labels),
        "dims": [float(x) for x in md.dims],
        "twists": [phase(t) for t in md.twists],
        "S": cmatrix(md.S),
        "lambda": float(md.lam),
    }


def modular_from_json(x: dict) -> ModularData:
    return ModularData(
        list(x["labels"]),
        np.array(x["dims"], float),
        np.array([parse_phase(t) for t in x["twists"]]),
        parse_cmatrix(x["S"]),
        float(x["lambda"]),
    )


def partial_to_json(p: PartialModularData) -> dict:
    out = modular_to_json(p.to_modular())
    del out["S"]
    out.update(
        kind=p.kind,
        const=cmatrix(p.const),
        lin=[[[cplx(z) for z in cell] for cell in row] for row in p.lin],
        meta=p.meta,
        log=list(p.log),
    )
    return out


def partial_from_json(x: dict) -> PartialModularData:
    r = len(x["labels"])
    lin = np.array([[[parse_cplx(z) for z in cell] for cell in row] for row in x["lin"]], complex)
    return PartialModularData(
        list(x["labels"]),
        np.array(x["dims"], float),
        np.array([parse_phase(t) for t in x["twists"]]),
        float(x["lambda"]),
        parse_cmatrix(x["const"]),
        lin.reshape(r, r, -1),
        x.get("kind", "modular"),
        dict(x.get("meta", {})),
        list(x.get("log", [])),
    )


def super_to_json(s: SuperModularData) -> dict:
    return {
        "pairs": [list(p) for p in s.pair_labels],
        "S_hat": cmatrix(s.S_hat),
        "T2_hat": [phase(t) for t in s.T2_hat],
    }


def super_from_json(x: dict) -> SuperModularData:
    return SuperModularData(
        [tuple(p) for p in x["pairs"]],
        parse_cmatrix(x["S_hat"]),
        np.array([parse_phase(t) for t in x["T2_hat"]]),
    )


def to_json(obj) -> Any:
    if isinstance(obj, SuperModularData):
        return super_to_json(obj)
    if isinstance(obj, PartialModularData):
        return partial_to_json(obj)
    if isinstance(obj, ModularData):
        return modular_to_json(obj)
    if isinstance(obj, NearGroupData):
        return neargroup_to_json(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def from_json(x: dict):
    """Dispatch on the keys present."""
    if "pairs" in x:
        return super_from_json(x)
    if "lin" in x:
        return partial_from_json(x)
    if "S" in x:
        return modular_from_json(x)
    if "pairing_m" in x:
        return neargroup_from_json(x)
    raise ValueError("unrecognized artifact")


def dumps(x: Any) -> str:
    return json.dumps(x, indent=1, sort_keys=False) + "\n"


def content_hash(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:16]


# text


def _fmt(z: complex) -> str:
    z = complex(z)
    if abs(z) < 1e-12:
        return "0"
    if abs(z.imag) < 5e-7 * max(1.0, abs(z.real)):
        return f"{z.real:.6g}"
    if abs(z.real) < 5e-7 * max(1.0, abs(z.imag)):
        return f"{z.imag:.6g}i"
    return f"{z.real:.6g}{z.imag:+.6g}i"


def _text_matrix(M: np.ndarray) -> list[str]:
    return ["  [" + ", ".join(_fmt(z) for z in row) + "]" for row in M]


def to_text(obj) -> str:
    if isinstance(obj, SuperModularData):
        lines = ["pairs: " + ", ".join(f"[{a}, {b}]" for a, b in obj.pair_labels)]
        lines.append("dims = (" + ", ".join(f"{x:.6g}" for x in obj.dims) + ")")
        lines.append("T2_hat = diag(" + ", ".join(format_phase(t) for t in obj.T2_hat) + ")")
        lines.append("S_hat =")
        lines += _text_matrix(obj.S_hat)
        return "\n".join(lines) + "\n"
    if isinstance(obj, PartialModularData):
        head = to_text(obj.to_modular()).split("S =")[0]
        lines = [head.rstrip("\n"), f"kind = {obj.kind}", f"free parameters = {obj.nparams}"]
        lines.append("undetermined rows: " + ", ".join(obj.labels[i] for i in obj.unknown_rows()))
        lines += obj.log
        return "\n".join(lines) + "\n"
    if isinstance(obj, ModularData):
        lines = ["labels: " + ", ".join(obj.labels)]
        lines.append("dims = (" + ", ".join(f"{x:.6g}" for x in obj.dims) + ")")
        lines.append("T = diag(" + ", ".join(format_phase(t) for t in obj.twists) + ")")
        lines.append(f"lambda = {obj.lam:.6g}")
        lines.append("S =")
        lines += _text_matrix(obj.S)
        return "\n".join(lines) + "\n"
    if isinstance(obj, NearGroupData):
        G = obj.group
        lines = [f"{obj.name}: G = " + " x ".join(f"Z/{o}" for o in G.orders) + f", n = {obj.n}, d = {obj.d:.6g}"]
        lines.append(f"c = e({obj.c_exp.numerator}/{obj.c_exp.denominator})")
        for i in range(G.n):
            lines.append(f"  {G.label(i)}: a = {format_phase(obj.a[i])}, b = {_fmt(obj.b[i])}")
        return "\n".join(lines) + "\n"
    raise TypeError(f"cannot format {type(obj).__name__}")


def emit(obj, fmt: str = "json") -> str:
    if fmt == "json":
        return dumps(to_json(obj))
    if fmt == "text":
        return to_text(obj)
    raise ValueError(f"unknown format {fmt!r}")
