"""Combinatorial n_k point-line configurations: data model, counting gate,
isomorph-free census, matroid orientability, and wiring diagrams."""

from .canonical import is_lex_min, min_image
from .census import (CensusEntry, NaiveCapError, ResourceGuardError,
                     classify_orientability, enumerate_configurations,
                     enumerate_naive)
from .chirotope import (Chirotope, Outcome, OrientabilityResult, SearchStats,
                        chirotope_from_points, chirotope_from_text, is_chirotope,
                        matroid_of_chirotope, orientability, reorient)
from .eulergate import (EulerCounts, GateVerdict, Verdict, euler_counts,
                        feasibility_gate, gate_expression, min_gate_passing_n)
from .incidence import (Configuration, ConfigFormatError, LeviGraph,
                        ValidationReport, dualize, generalize, levi_graph,
                        parse_config, read_config, validate)
from .matroid import (CanonicalCode, IsomorphismMatcher, PoincarePolynomial,
                      Rank3Matroid, are_isomorphic, canonical_code,
                      canonical_form, poincare_polynomial)
from .wiring import (WiringDiagram, WiringFormatError, cell_counts,
                     chirotope_of_wiring, parse_wiring, read_wiring, realizes,
                     render_svg, validate_wiring, wiring_from_lines,
                     wiring_to_text)

__version__ = "0.1.0"

__all__ = [
    "CanonicalCode", "CensusEntry", "Chirotope", "ConfigFormatError",
    "Configuration", "EulerCounts", "GateVerdict", "IsomorphismMatcher",
    "LeviGraph", "NaiveCapError", "OrientabilityResult", "Outcome",
    "PoincarePolynomial", "Rank3Matroid", "ResourceGuardError", "SearchStats",
    "ValidationReport", "Verdict", "WiringDiagram", "WiringFormatError",
    "are_isomorphic", "canonical_code", "canonical_form", "cell_counts",
    "chirotope_from_points", "chirotope_from_text", "chirotope_of_wiring",
    "classify_orientability", "dualize", "enumerate_configurations",
    "enumerate_naive", "euler_counts", "feasibility_gate", "gate_expression",
    "generalize", "is_chirotope", "is_lex_min", "levi_graph",
    "matroid_of_chirotope", "min_gate_passing_n", "min_image", "orientability",
    "parse_config", "parse_wiring", "poincare_polynomial", "read_config",
    "read_wiring", "realizes", "render_svg", "reorient", "validate",
    "validate_wiring", "wiring_from_lines", "wiring_to_text",
]
