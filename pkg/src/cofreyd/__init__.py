"""cofreyd: an exact-arithmetic workbench for coalgebras, comodules,
the stable morphism-category quotients, and functor rings.

Scalars are exact (rationals or prime fields); every structural claim is
decided by exact linear algebra, never numerically.
"""

__version__ = "0.1.0"

from .fields import PrimeField, Rationals, field_from_json, field_from_name
from .linalg import (Matrix, MultTable, Subspace, kernel_basis, rref_solve,
                     subspace_intersection, subspace_ops, subspace_sum,
                     trace_form_radical)
from .coalgebra import (Bicomodule, Coalgebra, Poset, antichain_poset, chain_coalgebra,
                        chain_poset, coradical, coradical_filtration,
                        divided_power_truncated, dual_algebra, grouplike_coalgebra,
                        incidence_coalgebra, matrix2_coalgebra, triangular_coalgebra,
                        triangular_divided_power, validate_coalgebra)
from .comodule import (Comodule, ComoduleMap, StructureReport, decompose_injectives,
                       direct_sum, dual_comodule, dual_map, enumerate_subcomodules,
                       find_isomorphism, hom_space, indecomposable_family, is_indecomposable,
                       is_injective, is_simple, is_uniserial, quotient_comodule,
                       regular_comodule, socle, socle_and_loewy, sub_comodule,
                       subcomodule_generated, witness_family, zero_comodule)
from .freyd import (ChainMap3, FreydMap, FreydObject, ThreeTermComplex, complete_map,
                    complete_to_complex, compose_freyd, dual_freyd_map, dual_freyd_object,
                    freyd_hom_dim, freyd_isomorphism, inverse_matrix_comodule,
                    is_zero_morphism, is_zero_object, matrix_comodule_equivalence,
                    null_homotopy, square_space)
from .functor_ring import (FunctorRing, ProbeReport, RingModule, build_functor_ring,
                           enumerate_simples_oracle, fp_module_from_freyd,
                           is_simple_module, module_hom_space, modules_isomorphic,
                           opposite_duality_check, simple_witnesses,
                           socle_inclusion_objects, symmetry_probe)
from .report import (Report, RunConfig, check_file, oracle_command, probe_command,
                     run_example_suite)
