"""sdfkit: sets A in Z_m (m odd squarefree) whose difference set avoids non-zero squares."""
from .bounds import (
    alon_tournament_bound,
    bound_report,
    check_final_contradiction,
    combined_bound,
    g_d,
    matolcsi_ruzsa_bound,
    proof_inequality_report,
    theorem_bound,
)
from .construct import pigeonhole_witness, product_construct, ramsey_construct, scale_by_nonresidue
from .core import CandidateSet, ForbiddenSet, SdfGraph, build_graph, forbidden_set, is_valid_set, residue_fibers
from .modarith import Modulus, crt_combine, factor_squarefree, jacobi, legendre
from .quadchar import CharProduct, chi_D, full_residue_pair_sum, inner_pair_sum, is_special_pair, s_D
from .search import SearchResult, brute_force_oracle, greedy_lower, max_sdf_exact
from .tournament import (
    Digraph,
    ProductGraph,
    alon_polynomials_rank,
    is_covering_family,
    paley_tournament,
    product,
    sdf_set_to_family,
    verify_lemma,
)

__version__ = "0.1.0"
