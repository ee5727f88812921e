"""Knot census toolkit.

Enumerates knot diagrams as combinatorial names, reduces them with the
three diagram moves, collects the survivors of a crossing-count census,
and certifies distinctness through color tests and the determinant
characteristic.
"""

from .census import (CensusError, CensusState, class_merge, level_shadows,
                     registry_lookup, replay_journal, run_census)
from .characteristic import (CharPoly, characteristic_of, chirality_check,
                             coloring_system, crossing_bound,
                             format_characteristic, normalize_characteristic,
                             parse_characteristic)
from .codes import (Name, NameError_, canonicalize, compare_names,
                    format_name, is_connected_sum, make_name, name_variants,
                    parse_name, to_gauss_word)
from .colorings import (ColorTable, LinearTest, Response, builtin_tables,
                        generate_tables, linear_tests, response,
                        validate_table)
from .diagrams import (Embedding, NotRealizable, StrandPartition,
                       crossing_signs, diagrams_of, embed, is_realizable,
                       strands_of)
from .moves import (flagged_slides, r1_variants, r2_variants, r3_variants,
                    reduce_name)
from .shadows import (Loop, Shadow, canonical_shadow, is_drawable,
                      is_shadow_canonical, permutations_in_order,
                      shadow_of_permutation, simple_loops)

__all__ = [
    "CensusError", "CensusState", "CharPoly", "ColorTable", "Embedding",
    "LinearTest", "Loop", "Name", "NameError_", "NotRealizable", "Response",
    "Shadow", "StrandPartition", "builtin_tables", "canonical_shadow",
    "canonicalize", "characteristic_of", "chirality_check", "class_merge",
    "coloring_system", "compare_names", "crossing_bound", "crossing_signs",
    "diagrams_of", "embed", "flagged_slides", "format_characteristic",
    "format_name", "generate_tables", "is_connected_sum", "is_drawable",
    "is_realizable", "is_shadow_canonical", "level_shadows", "linear_tests",
    "make_name", "name_variants", "normalize_characteristic",
    "parse_characteristic", "parse_name", "permutations_in_order",
    "r1_variants", "r2_variants", "r3_variants", "reduce_name",
    "registry_lookup", "replay_journal", "response", "run_census",
    "shadow_of_permutation", "simple_loops", "to_gauss_word",
    "validate_table",
]

__version__ = "1.0.0"
