"""Finite catoids and quantales: axiom checkers, constructions and small-model search."""
from .errors import *  # noqa: F401,F403
from .lattice import (FiniteLattice, PowersetLattice, FunctionLattice, build_lattice, chain,
                      powerset_lattice, classify)
from .catoid import (FiniteCatoid, FiniteGroupoid, LazyCatoid, check_catoid, check_groupoid,
                     derived_laws_catoid, check_morphism, opposite, discrete_catoid, pair_groupoid,
                     path_catoid, monoid_catoid, shuffle_lazy, concat_lazy, check_lazy)
from .ncatoid import (NCatoid, check_ncatoid, reduced_implies_full, is_strong, globular_laws, cells,
                      derived_laws_ncatoid, check_npcatoid)
from .quantale import (Quantale, Sampling, check_quantale, derived_laws_quantale, kleene_star,
                       diamonds_boxes, ModalOperators, with_explicit_modal)
from .nquantale import (NQuantale, check_nquantale, is_strong_nquantale, derived_laws_nquantale,
                        check_kleene_layer, check_npquantale)
from .constructions import (powerset_quantale, powerset_nquantale, convolution_quantale, QFunction,
                            indicator_isomorphism, delta_law_report, atoms_to_catoid, find_isomorphism,
                            roundtrip_report)
from .report import Report, Check
from .fixtures import load_fixture

__version__ = "0.1.0"
