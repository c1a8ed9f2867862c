"""Modular data of Drinfeld centers of near-group categories G+n, boson
condensation, pointed factoring and super-modular data."""
from .algebra import Bicharacter, GroupElement, GroupSpec, QuadraticForm, pointed_modular_data
from .centerdata import assemble_center_data, verify_modular
from .centersolver import CenterTriple, SolverConfig, SolverError, check_triple, solve_all_triples
from .condense import PartialModularData, condense, resolve_unknowns
from .kernels import BACKEND
from .modular import ModularData, e
from .neargroup import NearGroupData, catalog, load_instance, refine_b, verify_axioms
from .superfactor import (
    SpinModularData,
    SuperModularData,
    compare_modular,
    extract_fermion_sector,
    factor_pointed,
    split_super,
    target_data,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Bicharacter",
    "CenterTriple",
    "GroupElement",
    "GroupSpec",
    "ModularData",
    "NearGroupData",
    "PartialModularData",
    "QuadraticForm",
    "SolverConfig",
    "SolverError",
    "SpinModularData",
    "SuperModularData",
    "assemble_center_data",
    "catalog",
    "check_triple",
    "compare_modular",
    "condense",
    "e",
    "extract_fermion_sector",
    "factor_pointed",
    "load_instance",
    "pointed_modular_data",
    "refine_b",
    "resolve_unknowns",
    "solve_all_triples",
    "split_super",
    "target_data",
    "verify_axioms",
    "verify_modular",
]
