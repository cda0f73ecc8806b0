"""Finite models of precategories, univalence and the Rezk completion."""
from .constructions import finset_table, mk_chaotic, mk_discrete, mk_finset_skeleton, mk_preorder
from .equiv import (AdjointEquivalence, Adjunction, adjoint_uniqueness, adjointify, check_adjunction,
                    equivalence_from_ffeso, essential_surjectivity_witness, ff_report, is_isomorphism_of_precats,
                    is_weak_equivalence, make_adjunction)
from .errors import *  # noqa: F401,F403
from .finite import Fin, FinMap, compose_maps, enumerate_maps, guard, guard_limit, invert_map, is_bijection
from .funcat import (FunctorPath, curry_functor, functor_category, precomposition_functor, uncurry_functor)
from .functor import (FinFunctor, FinNatTrans, compose_functors, constant_functor, enumerate_functors,
                      enumerate_nat_trans, identity_functor, identity_nat_trans, interchange_check, is_nat_iso,
                      make_functor, validate_functor, validate_nat_trans, vcomp, whisker_left, whisker_right)
from .groupoid import FinGroupoid, PathRef, discrete_groupoid, groupoid_from_components, validate_groupoid
from .precat import (FinPrecategory, MorRef, build_precategory, classify, idtoiso, inverse, is_iso, is_univalent,
                     iso_set, iso_witness, isotoid, opposite, product, transport_hom, validate_precategory)
from .report import ValidationReport, Violation
from .rezk import rezk_completion, rezk_yoneda_crosscheck
from .yoneda import (FinPresheaf, PresheafMor, enumerate_presheaf_mors, enumerate_presheaves, hom_functor,
                     is_representable, presheaf_precategory, validate_presheaf, yoneda_backward, yoneda_forward,
                     yoneda_map, yoneda_object)

__version__ = "0.1.0"
