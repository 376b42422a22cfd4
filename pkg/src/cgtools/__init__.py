"""Finitely presented groups and permutation groups.

Coset enumeration, low-index subgroups, subgroup presentations, Tietze
simplification and abelian invariants on the fp side; stabilizer chains,
blocks, series and backtrack searches on the permutation side.
"""

from .abelian import (IntMatrix, abelian_invariants, format_abelian,
                      relation_matrix, smith_normal_form)
from .backtrack import (SearchSpec, centralizer, element_conjugacy, search,
                        set_stabilizer)
from .blocks import is_primitive, minimal_block_partition
from .bsgs import (PermGroup, SchreierVector, StabilizerChain, base_change,
                   extend_chain, group_order, orbit, pointwise_stabilizer,
                   random_schreier, schreier_sims, sift, transversal_element,
                   verify_chain)
from .coset_table import (CosetLimitError, CosetTable, IncompleteTableError,
                          ScanResult, compact, standardize, to_permutations)
from .enumerator import (EnumerationLimitError, EnumerationResult, Strategy,
                         enumerate_cosets, order_of_group, word_image)
from .low_index import (LowIndexResult, LowIndexSubgroup, low_index_subgroups,
                        quotient_abelian_probe)
from .perm import Permutation, perm_inverse, perm_multiply, perm_parse
from .rewriting import (Transversal, reidemeister_presentation,
                        schreier_generators, schreier_transversal)
from .series import (derived_series, derived_subgroup, is_nilpotent,
                     is_perfect, is_soluble, lower_central_series,
                     normal_closure)
from .tietze import tietze_simplify
from .words import (Presentation, PresentationSyntaxError, SubgroupSpec, Word,
                    cyclically_reduce, free_reduce, parse_presentation,
                    parse_word, word_invert, word_multiply)

__version__ = "0.1.0"
