"""Exact arithmetic for unlikely intersections in multiplicative tori.

The package is layered bottom-up: integer lattices, factored unit
scalars, rational polynomials, torsion cosets in the n-torus, rational
parametrized curves, the bounded atypical-point scan, and finite flat
models for the closure/defect checks.  Everything is exact; no floats
are involved anywhere.
"""

from .errors import (
    ConstantCurveError,
    DimensionMismatch,
    DomainError,
    FactorBoundExceeded,
    InputFormatError,
    ModelInvariantError,
    NotOnTorus,
    RelationInClosureError,
    TorintError,
)
from .lattice import IntLattice, IntMatrix, hnf, kernel, lattice_sum, saturate, snf
from .scalars import CycloRat, cyclorat_from_fraction, format_cyclorat, parse_cyclorat
from .polys import Poly, cyclotomic
from .torus import (
    GeneralCoset,
    MonomialMap,
    TorsionCoset,
    TorusPoint,
    contains_point,
    coset_contains,
    full_coset,
    intersect_torsion_cosets,
    monomial_image,
    monomial_preimage,
    point_as_coset,
    point_closures,
    special_closure_of_coset,
    torsion_cosets_from_characters,
)
from .curves import ClosureReport, ParamCurve, RatFunc, closures, coprime_basis, evaluate_point
from .scan import AtypicalRecord, RelationPoly, ScanResult, ZPReport, relation_poly, scan, zp_report
from .models import (
    ClosureDefect,
    DefectConditionVerdict,
    Flat,
    FlatModel,
    PinkVerdict,
    PythLine,
    check_defect_condition,
    check_pink_form,
    closure_and_defect,
    is_optimal,
    is_weakly_optimal,
    model_from_curve_points,
    model_from_doc,
    model_from_zp_report,
    model_to_doc,
    negative_control_defect,
    negative_control_pink,
    optimal_flats,
    pink_form_oracle,
    pythagorean_lines,
    weakly_optimal_flats,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
