"""Exact cochain computations for finite crossed modules.

Bi-simplicial cochains on ``N^k x Gamma^l`` with Z/n coefficients, the
shuffle transgressions ``T_k``, multiplicator triples, cohomology and
coboundary solving over Z/n, and central extensions built from 2-cocycles.
"""
from .algebra import (AxiomError, CrossedModule, CyclicCoefficients, FiniteGroup, FiniteGroupoid,
                      GroupAction, action_groupoid, cyclic_group, dihedral_group,
                      inertia_crossed_module, is_abelian, pair_groupoid, preset_group,
                      quaternion_group, semidirect_product, symmetric_group,
                      trivial_crossed_module, validate_crossed_module, validate_group,
                      validate_groupoid)
from .cochains import (CellLimitError, Cochain, Direction, SimplexSpace, d_gamma, d_n,
                       differential, index_simplex, random_cochain, unindex)
from .cohomology import (CohomologyGroup, Multiplicator, cocycle_basis, cohomology_group,
                         make_multiplicator, r_multiplicativity, random_cocycle, rehome,
                         solve_coboundary, standard_cyclic_3cocycle, verify_multiplicator)
from .extensions import (CentralExtension, EquivariantExtension, ExtensionIsomorphism,
                         GroupoidCochain, as_groupoid, build_extension, equivariant_extension,
                         groupoid_differential, phi_b, solve_groupoid_coboundary)
from .linalg import SmithForm, smith_normal_form
from .transgression import (Shuffle, check_chain_identity, enumerate_shuffles, f_sigma_explicit,
                            shuffle_morphism, tau_map, transgress, transgress_T1_explicit)
from .words import (EMPTY, Delta2Morphism, FDeltaMorphism, MonotoneMap, Simplex, act_on_simplex,
                    compose_delta2, compose_fdelta, embed_fdelta, reduce_word)

__version__ = "0.1.0"
