"""Exact calculus for star-shaped resolution graphs of C*-surface singularities."""

from .blowup import Bamboo, build_fiber_bamboo, build_model, contract_to_base
from .cfrac import Rational, all_chains, cf_eval, cf_eval_reversed, dual_chain, hj_expand
from .equiv import (AmpleCertificate, EquivalenceReport, enumerate_and_crosscheck,
                    enumerate_moduli, equivalence_report, search_certificate,
                    solve_ample, validate_moduli, verify_certificate)
from .quadform import (chain_diagonal, is_negative_definite, leading_minor_oracle,
                       model_cs_check, star_diagonal)
from .stargraph import (FiberBranch, ModelGraph, ModuliData, StarGraph,
                        intersection_matrix, model_intersection_matrix, to_dot)

__version__ = "0.1.0"
