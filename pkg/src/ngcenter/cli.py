"""Command line interface: individual stages and the end-to-end pipelines.

Exit codes: 0 success or match, 1 compare mismatch, 2 stage failure,
3 invalid configuration.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import serialize as ser
from .centerdata import FusionError, assemble_center_data, verify_modular
from .centersolver import SolverConfig, SolverError, check_triple, solve_all_triples
from .condense import (
    CondensationError,
    PartialModularData,
    ResolutionError,
    condense,
    find_fermions,
    resolve_unknowns,
)
from .modular import ModularData
from .neargroup import NearGroupData, catalog, catalog_entry, load_instance, verify_axioms
from .superfactor import (
    FactorError,
    SpinModularData,
    SuperModularData,
    compare_modular,
    extract_fermion_sector,
    factor_pointed,
    find_pointed_modular,
    split_super,
    super_from_resolved,
    target_data,
)

log = logging.getLogger("ngcenter")

EXIT_OK, EXIT_MISMATCH, EXIT_STAGE, EXIT_CONFIG = 0, 1, 2, 3
STEPS = ("solve", "center", "condense", "factor", "supermodular", "compare")
STAGE_ERRORS = (SolverError, FusionError, CondensationError, ResolutionError, FactorError)

# canned settings for the two reproduced pipelines; the compare target only
# applies to a full run (--through compare), conjugation is always opt-in
CANNED = {
    "J6_1": {"compare": "smds1"},
    "J24_1": {"boson": "A(0,2)", "compare": "smds2"},
}


class ConfigError(ValueError):
    pass


class StageError(RuntimeError):
    def __init__(self, stage: str, exc: Exception):
        super().__init__(f"{stage}: {exc}")
        self.stage = stage


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


# stage helpers


def _read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc


def _load(path):
    try:
        return ser.from_json(_read_json(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed artifact {path}: {exc}") from exc


def _neargroup(instance: str | None, path: str | None):
    if path:
        data = _load(path)
        if not isinstance(data, NearGroupData):
            raise ConfigError(f"{path} is not near-group data")
        return data
    if not instance:
        raise ConfigError("need --instance or --input")
    try:
        catalog_entry(instance)
    except KeyError as exc:
        raise ConfigError(str(exc.args[0])) from exc
    return load_instance(instance)


def stage_refine(data, tol: float):
    rep = verify_axioms(data, tol)
    if not rep.passed:
        raise StageError("refine", ValueError(f"axioms fail: {rep.failed()}"))
    return data


def stage_solve(data, omega_order: int, workers: int = 1):
    if omega_order < 1:
        raise ConfigError("--omega-order must be positive")
    try:
        triples = solve_all_triples(data, SolverConfig(omega_order=omega_order, workers=workers))
    except SolverError as exc:
        raise StageError("solve", exc) from exc
    for t in triples:
        rep = check_triple(data, t)
        if not rep.passed:
            raise StageError("solve", ValueError(f"triple residual {rep.max_residual:.2e}"))
    return triples


def stage_center(data, triples, tol: float) -> ModularData:
    md = assemble_center_data(data, triples)
    rep = verify_modular(md, tol)
    if not rep.passed:
        raise StageError("center", ValueError(f"modularity checks fail: {rep.failed()}"))
    return md


def stage_condense(md: ModularData, boson: str, tol: float):
    if boson not in md.labels:
        raise ConfigError(f"unknown boson label {boson!r}")
    try:
        res = resolve_unknowns(condense(md, boson), tol)
    except (CondensationError, ResolutionError) as exc:
        raise StageError("condense", exc) from exc
    return res.data if res.data is not None else res.partial, res


def _pointed_choice(md, pointed):
    if pointed:
        missing = [p for p in pointed if p not in md.labels]
        if missing:
            raise ConfigError(f"unknown pointed labels {missing}")
        return list(pointed)
    cands = find_pointed_modular(md)
    if not cands:
        raise StageError("factor", FactorError("no pointed modular subcategory"))
    return [md.labels[i] for i in cands[0]]


def stage_factor(md, pointed=None):
    chosen = _pointed_choice(md, pointed)
    try:
        fac, _, _ = factor_pointed(md, chosen)
    except (FactorError, ValueError) as exc:
        raise StageError("factor", exc) from exc
    log.info("factored pointed %s: rank %d", chosen, fac.rank)
    return fac


def stage_supermodular(md, fermion: str | None, tol: float) -> SuperModularData:
    fermions = [md.labels[i] for i in find_fermions(md)] if fermion is None else [fermion]
    if fermion is not None and fermion not in md.labels:
        raise ConfigError(f"unknown fermion label {fermion!r}")
    errors = []
    for f in fermions:
        try:
            sector = extract_fermion_sector(SpinModularData(md, f))
            sp = split_super(sector, f)
            if isinstance(sp, PartialModularData):
                res = resolve_unknowns(sp, tol)
                if res.status not in ("resolved", "unique"):
                    raise ResolutionError(f"super data {res.status} ({res.partial.nparams} parameters)")
                sp = super_from_resolved(res.partial, res.data.S)
            bad = {k: v for k, v in sp.check(tol).items() if v > tol}
            if bad:
                raise FactorError(f"super-modular checks fail: {bad}")
            return sp
        except (FactorError, ResolutionError, ValueError) as exc:
            errors.append(f"{f}: {exc}")
    raise StageError("supermodular", FactorError("; ".join(errors) or "no fermion"))


def stage_compare(sm: SuperModularData, target: str, allow_conjugation: bool, tol: float):
    targets = target_data()
    if target not in targets:
        raise ConfigError(f"unknown target {target!r}")
    return compare_modular(sm, targets[target], allow_conjugation, tol)


# artifacts


@dataclass
class PipelineConfig:
    instance: str | None = None
    input: str | None = None
    omega_order: int = 240
    tol: float = 1e-6
    out: str = "runs"
    through: str = "compare"
    boson: str | None = None
    pointed: list[str] | None = None
    fermion: str | None = None
    compare: str | None = None
    allow_conjugation: bool = False
    workers: int = 1
    fmt: str = "json"
    manifest: dict = field(default_factory=dict)

    def steps(self) -> list[str]:
        if self.through not in STEPS:
            raise ConfigError(f"--through must be one of {', '.join(STEPS)}")
        if self.omega_order < 1:
            raise ConfigError("--omega-order must be positive")
        steps = list(STEPS[: STEPS.index(self.through) + 1])
        if self.boson is None and "condense" in steps:
            steps.remove("condense")
        if self.compare is not None:
            if self.through not in ("supermodular", "compare"):
                raise ConfigError("--compare needs the pipeline to run through supermodular")
            steps = steps[: steps.index("supermodular") + 1] + ["compare"]
        elif "compare" in steps:
            raise ConfigError("--through compare needs --compare smds1|smds2")
        return steps


class ArtifactStore:
    """Stage outputs named <stage>-<hash of inputs>.json; existing files are reused."""

    def __init__(self, root: str):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def key(self, stage: str, parent: str, params: dict) -> str:
        return ser.content_hash(json.dumps([stage, parent, params], sort_keys=True))

    def path(self, stage: str, key: str) -> Path:
        return self.root / f"{stage}-{key}.json"

    def get(self, stage: str, key: str):
        p = self.path(stage, key)
        return json.loads(p.read_text()) if p.exists() else None

    def put(self, stage: str, key: str, payload) -> Path:
        p = self.path(stage, key)
        p.write_text(ser.dumps(payload))
        return p


def run_pipeline(cfg: PipelineConfig) -> int:
    data = _neargroup(cfg.instance, cfg.input)
    steps = cfg.steps()
    store = ArtifactStore(cfg.out)
    data = stage_refine(data, 1e-9)
    G = data.group
    key = store.key("neargroup", "", ser.neargroup_to_json(data))
    store.put("neargroup", key, ser.neargroup_to_json(data))
    manifest = {"neargroup": str(store.path("neargroup", key))}

    obj = None
    if "solve" in steps:
        key = store.key("solve", key, {"omega_order": cfg.omega_order})
        cached = store.get("solve", key)
        if cached is not None:
            triples = ser.triples_from_json(cached, G)
        else:
            triples = stage_solve(data, cfg.omega_order, cfg.workers)
            store.put("solve", key, ser.triples_to_json(triples, G))
        manifest["solve"] = str(store.path("solve", key))
        log.info("solve: %d triples", len(triples))
    if "center" in steps:
        key = store.key("center", key, {"tol": cfg.tol})
        cached = store.get("center", key)
        obj = ser.modular_from_json(cached) if cached is not None else stage_center(data, triples, cfg.tol)
        store.put("center", key, ser.modular_to_json(obj))
        manifest["center"] = str(store.path("center", key))
        log.info("center: rank %d, lambda %.6f", obj.rank, obj.lam)
    if "condense" in steps:
        key = store.key("condense", key, {"boson": cfg.boson, "tol": cfg.tol})
        obj, _ = stage_condense(obj, cfg.boson, cfg.tol)
        store.put("condense", key, ser.to_json(obj))
        manifest["condense"] = str(store.path("condense", key))
        log.info("condense: rank %d", obj.rank)
    if "factor" in steps:
        key = store.key("factor", key, {"pointed": cfg.pointed})
        obj = stage_factor(obj, cfg.pointed)
        store.put("factor", key, ser.to_json(obj))
        manifest["factor"] = str(store.path("factor", key))
    if "supermodular" in steps:
        key = store.key("supermodular", key, {"fermion": cfg.fermion, "tol": cfg.tol})
        obj = stage_supermodular(obj, cfg.fermion, cfg.tol)
        store.put("supermodular", key, ser.to_json(obj))
        manifest["supermodular"] = str(store.path("supermodular", key))
    status = EXIT_OK
    if "compare" in steps:
        res = stage_compare(obj, cfg.compare, cfg.allow_conjugation, cfg.tol)
        manifest["compare"] = {
            "target": cfg.compare,
            "match": res.match,
            "conjugated": res.conjugated,
            "permutation": res.permutation,
            "deviation": res.deviation,
        }
        status = EXIT_OK if res.match else EXIT_MISMATCH
    (Path(cfg.out) / "pipeline.json").write_text(ser.dumps(manifest))
    cfg.manifest = manifest
    if obj is not None:
        sys.stdout.write(ser.emit(obj, cfg.fmt))
    if "compare" in steps:
        c = manifest["compare"]
        verdict = "match" if c["match"] else "mismatch"
        print(f"{verdict} with {cfg.compare}: conjugation={str(c['conjugated']).lower()}, max deviation {c['deviation']:.3e}")
    return status


# subcommands


def _write(obj, args):
    text = ser.emit(obj, args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _input_modular(args):
    if not args.input:
        raise ConfigError("need --input")
    obj = _load(args.input)
    if not isinstance(obj, (ModularData, PartialModularData)):
        raise ConfigError(f"{args.input} is not modular data")
    return obj


def cmd_catalog(args) -> int:
    if args.format == "json":
        out = [ser.neargroup_to_json(load_instance(e.name)) for e in catalog()]
        sys.stdout.write(ser.dumps(out))
    else:
        for entry in catalog():
            data = load_instance(entry.name)
            rep = verify_axioms(data, 1e-9)
            print(f"{entry.name:8s} G={list(entry.orders)} c=e({entry.c}) conjugate={entry.conjugate or '-'} axioms={'ok' if rep.passed else 'FAIL'}")
    return EXIT_OK


def cmd_solve(args) -> int:
    data = stage_refine(_neargroup(args.instance, args.input), 1e-9)
    triples = stage_solve(data, args.omega_order, args.workers)
    if args.format == "json":
        text = ser.dumps(ser.triples_to_json(triples, data.group))
    else:
        text = "".join(
            f"tau={data.group.label(t.tau)} omega=e({t.omega.numerator}/{t.omega.denominator}) "
            + "xi=[" + ", ".join(f"{z.real:.6g}{z.imag:+.6g}i" for z in t.xi) + "]\n"
            for t in triples
        )
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_center(args) -> int:
    data = stage_refine(_neargroup(args.instance, args.input), 1e-9)
    if args.triples:
        raw = _read_json(args.triples)
        triples = ser.triples_from_json(raw, data.group)
    else:
        triples = stage_solve(data, args.omega_order, args.workers)
    _write(stage_center(data, triples, args.tol), args)
    return EXIT_OK


def cmd_condense(args) -> int:
    md = _input_modular(args)
    if not isinstance(md, ModularData):
        raise ConfigError("condense needs fully determined modular data")
    obj, res = stage_condense(md, args.boson, args.tol)
    if isinstance(obj, PartialModularData) and not args.emit_partial:
        raise StageError(
            "condense", ResolutionError(f"condensed data {res.status} ({obj.nparams} free parameters); use --emit-partial")
        )
    if res.status == "ambiguous" and args.emit_partial:
        diag = ser.partial_to_json(obj)
        diag["candidates"] = [
            {"hypothesis": c.hypothesis, "params": [ser.cplx(p) for p in c.params], "checks": c.checks}
            for c in res.candidates
        ]
        text = ser.dumps(diag)
        Path(args.out).write_text(text) if args.out else sys.stdout.write(text)
        return EXIT_OK
    _write(obj, args)
    return EXIT_OK


def cmd_factor(args) -> int:
    _write(stage_factor(_input_modular(args), args.pointed), args)
    return EXIT_OK


def cmd_supermodular(args) -> int:
    _write(stage_supermodular(_input_modular(args), args.fermion, args.tol), args)
    return EXIT_OK


def cmd_compare(args) -> int:
    if not args.input:
        raise ConfigError("need --input")
    sm = _load(args.input)
    if not isinstance(sm, SuperModularData):
        raise ConfigError(f"{args.input} is not super-modular data")
    res = stage_compare(sm, args.target, args.allow_conjugation, args.tol)
    out = {"match": res.match, "conjugated": res.conjugated, "permutation": res.permutation, "deviation": res.deviation}
    if args.format == "json":
        sys.stdout.write(ser.dumps(out))
    else:
        verdict = "match" if res.match else "mismatch"
        print(f"{verdict} with {args.target}: conjugation={str(res.conjugated).lower()}, max deviation {res.deviation:.3e}")
    return EXIT_OK if res.match else EXIT_MISMATCH


def cmd_pipeline(args) -> int:
    canned = CANNED.get(args.instance or "", {})
    cfg = PipelineConfig(
        instance=args.instance,
        input=args.input,
        omega_order=args.omega_order,
        tol=args.tol,
        out=args.out or "runs",
        through=args.through,
        boson=args.boson if args.boson is not None else canned.get("boson"),
        pointed=args.pointed,
        fermion=args.fermion,
        compare=args.compare if args.compare is not None or args.through != "compare" else canned.get("compare"),
        allow_conjugation=args.allow_conjugation,
        workers=args.workers,
        fmt=args.format,
    )
    return run_pipeline(cfg)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ngcenter", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, inst=False, out=True):
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("--tol", type=float, default=1e-6)
        sp.add_argument("--input")
        if out:
            sp.add_argument("--out")
        if inst:
            sp.add_argument("--instance")
            sp.add_argument("--omega-order", type=int, default=240)
            sp.add_argument("--workers", type=int, default=1)

    sp = sub.add_parser("catalog", help="list the built-in near-group instances")
    sp.add_argument("--format", choices=("json", "text"), default="text")
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("solve", help="enumerate the center triples")
    common(sp, inst=True)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("center", help="modular data of the center")
    common(sp, inst=True)
    sp.add_argument("--triples", help="reuse triples from a solve artifact")
    sp.set_defaults(func=cmd_center)

    sp = sub.add_parser("condense", help="condense an invertible boson")
    common(sp)
    sp.add_argument("--boson", required=True)
    sp.add_argument("--emit-partial", action="store_true", help="write partial data when not fully determined")
    sp.set_defaults(func=cmd_condense)

    sp = sub.add_parser("factor", help="factor off a pointed modular subcategory")
    common(sp)
    sp.add_argument("--pointed", nargs="+", help="explicit pointed labels (default: first found)")
    sp.set_defaults(func=cmd_factor)

    sp = sub.add_parser("supermodular", help="fermion sector and (S_hat, T_hat^2)")
    common(sp)
    sp.add_argument("--fermion")
    sp.set_defaults(func=cmd_supermodular)

    sp = sub.add_parser("compare", help="compare super-modular data with a target")
    common(sp, out=False)
    sp.add_argument("--target", required=True, choices=("smds1", "smds2"))
    sp.add_argument("--allow-conjugation", action="store_true")
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("pipeline", help="run the stages end to end")
    common(sp, inst=True)
    sp.add_argument("--through", default="compare", choices=STEPS)
    sp.add_argument("--boson")
    sp.add_argument("--pointed", nargs="+")
    sp.add_argument("--fermion")
    sp.add_argument("--compare", choices=("smds1", "smds2"))
    sp.add_argument("--allow-conjugation", action="store_true")
    sp.set_defaults(func=cmd_pipeline)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors exit 3, --help exits 0
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    t0 = time.perf_counter()
    try:
        code = args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except StageError as exc:
        print(f"stage failure: {exc}", file=sys.stderr)
        return EXIT_STAGE
    except STAGE_ERRORS as exc:
        print(f"stage failure: {exc}", file=sys.stderr)
        return EXIT_STAGE
    log.info("done in %.1f s", time.perf_counter() - t0)
    return code


if __name__ == "__main__":
    sys.exit(main())
