"""
Engine module - Core algorithms for veemap.

Contains engines for:
- Regular languages, local testability and marker words
- Thompson's group V and Brin-Thompson 2V tree pairs
- Veelike local rules on languages and pair languages
- Vertex shifts and language hulls
- Flow orbits and the induced rewriting maps
- Smith normal form and Bowen-Franks groups
- Seeded sweeps over all of the above
"""

from veemap.engine.lang_engine import (
    Alphabet,
    Dfa,
    LanguageError,
    MarkerSearchResult,
    SyntacticMonoid,
    Word,
    compile_regex,
    distinguishing_word,
    enumerate_words,
    equivalent,
    find_marker_words,
    is_locally_testable,
    local_testability_witness,
    minimize,
    syntactic_monoid,
    thompson_language,
)
from veemap.engine.thompson_engine import (
    EventuallyZero,
    ThompsonError,
    TwoVElement,
    VElement,
    baker_map,
    tv_compose,
    tv_inverse,
    tv_local_rule,
    v_apply,
    v_compose,
    v_inverse,
    v_local_rule,
    v_reduce,
)
from veemap.engine.veelike_engine import (
    PairVeelikeRule,
    VeelikeError,
    VeelikeRule,
    VerificationResult,
    WordPair,
    action_on_l,
    apply_pair_rule,
    apply_rule,
    pair_action,
    verify_pair_veelike,
    verify_veelike,
)
from veemap.engine.subshift_engine import (
    CrossValidationResult,
    HullRefusal,
    HullSpec,
    Sft,
    SubshiftError,
    VertexShift,
    build_hull,
    cross_validate_hull,
    hull_vertex_shift,
    is_mixing,
    pair_hull_vertex_shift,
)
from veemap.engine.flow_engine import (
    CodedAlphabet,
    FlowError,
    FlowOrbit,
    InducedMap,
    Mode,
    OrbitCheckResult,
    Tile,
    apply,
    coded_apply,
    orbit_fixed_check,
    pair_apply,
    simulate_embedding,
    symbol_sequence,
)
from veemap.engine.bowenfranks_engine import (
    AbelianGroup,
    BowenFranksError,
    BowenFranksReport,
    IntMatrix,
    SnfResult,
    bf_group,
    bf_trivial_report,
    smith_normal_form,
)
from veemap.engine.sweep_engine import (
    SweepEngine,
    SweepResult,
)

__all__ = [
    # Language Engine
    "Alphabet",
    "Dfa",
    "LanguageError",
    "MarkerSearchResult",
    "SyntacticMonoid",
    "Word",
    "compile_regex",
    "distinguishing_word",
    "enumerate_words",
    "equivalent",
    "find_marker_words",
    "is_locally_testable",
    "local_testability_witness",
    "minimize",
    "syntactic_monoid",
    "thompson_language",
    # Thompson Engine
    "EventuallyZero",
    "ThompsonError",
    "TwoVElement",
    "VElement",
    "baker_map",
    "tv_compose",
    "tv_inverse",
    "tv_local_rule",
    "v_apply",
    "v_compose",
    "v_inverse",
    "v_local_rule",
    "v_reduce",
    # Veelike Engine
    "PairVeelikeRule",
    "VeelikeError",
    "VeelikeRule",
    "VerificationResult",
    "WordPair",
    "action_on_l",
    "apply_pair_rule",
    "apply_rule",
    "pair_action",
    "verify_pair_veelike",
    "verify_veelike",
    # Subshift Engine
    "CrossValidationResult",
    "HullRefusal",
    "HullSpec",
    "Sft",
    "SubshiftError",
    "VertexShift",
    "build_hull",
    "cross_validate_hull",
    "hull_vertex_shift",
    "is_mixing",
    "pair_hull_vertex_shift",
    # Flow Engine
    "CodedAlphabet",
    "FlowError",
    "FlowOrbit",
    "InducedMap",
    "Mode",
    "OrbitCheckResult",
    "Tile",
    "apply",
    "coded_apply",
    "orbit_fixed_check",
    "pair_apply",
    "simulate_embedding",
    "symbol_sequence",
    # Bowen-Franks Engine
    "AbelianGroup",
    "BowenFranksError",
    "BowenFranksReport",
    "IntMatrix",
    "SnfResult",
    "bf_group",
    "bf_trivial_report",
    "smith_normal_form",
    # Sweep Engine
    "SweepEngine",
    "SweepResult",
]
