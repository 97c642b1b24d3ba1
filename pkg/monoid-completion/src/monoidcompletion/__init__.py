""" Monoid completion package """

# Set up some functions we want to be available at the top level

from .bisimplicial import BisimplicialTrunc, build_S, diagonal, wedge_levels
from .config import Settings, load_settings
from .enums import CheckStatus, ExitCode, HomologyMethod, SimplifyRule, VerdictStatus
from .exceptions import (
    AssociativityError,
    CertificateError,
    CompletionError,
    InputError,
    ParseError,
    ResourceLimitError,
    VerificationFailure,
)
from .free_product import FreeProductElement, FreeProductHom, FreeProductMonoid, fp_multiply
from .fp_nerve import truncated_fp_nerve
from .homology import (
    ChainComplex,
    HomologyGroup,
    euler_characteristic,
    homology_groups,
    homology_of_complex,
    read_chain_complex,
)
from .monoid import (
    FiniteMonoid,
    check_associativity,
    make_paper_monoid_P,
    parse_monoid,
    read_monoid,
)
from .presentation import (
    GroupPresentation,
    TrivialityVerdict,
    abelianization,
    simplify,
    universal_group_of_free_product,
    universal_group_of_table,
)
from .report import CheckResult, Listener, VerificationReport
from .resolution import (
    build_lemma_resolution,
    check_exactness,
    check_projectivity,
    tor_via_resolution,
)
from .simplicial import SimplicialSetTrunc, nerve, normalized_chains, point, wedge
from .simplicial_monoid import build_M, pi0_is_group
from .snf import SmithForm, smith_normal_form
from .sparse import SparseIntMatrix
from .verify import PaperVerifier, verify_paper
