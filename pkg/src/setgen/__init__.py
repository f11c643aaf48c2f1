"""Anti-unification of goals treated as unordered sets of literals."""

from .engine import EngineConfig, SwapProposal, anytime_snapshots, generalize, kswap_generalize, select_swap
from .errors import BudgetExceeded, GenerationExhausted, InvariantViolation
from .genmodel import (
    EMPTY, CandidatePair, GenContext, PairMapping, comp, conflict, enforce, gen_pairs,
    is_generalization, is_kswap, make_pair,
)
from .instances import CLASSES, GeneratorConfig, ProblemClass, classify_instance, generate_instance
from .isip import UGraph, decide_isip_direct, decide_isip_via_mcg, reduce_isip
from .omega import max_w, min_w, omega_conflicts
from .oracles import (
    OracleBudget, check_kswap_stable, count_literal_matchings, count_variable_combinations,
    mcg_by_matchings, mcg_by_renamings,
)
from .renaming import Renaming, compatible, merge, variant_renaming
from .syntax import GoalSyntaxError, parse_goal, parse_literal, print_goal
from .terms import Compound, Const, Goal, Literal, Symbol, Var, rename_apart, vars_of

__version__ = "0.1.0"
