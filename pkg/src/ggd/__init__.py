"""Finite groupoid toolkit.

Table-defined groupoids and group-groupoids with the interchange law, star
graphs with translation-isomorphism validation, monodromy elements as
reduced edge paths, presented-groupoid word equality through tree lifts,
local-morphism globalization, admissible local sections with the holonomy
quotient, and the GGD v1 file format with a CLI.
"""

from .groupoid import (
    GeneratedSubgroupoid,
    Groupoid,
    Star,
    compose,
    difference,
    inverse,
    pair_name,
    product_groupoid,
    star_of,
    subgroupoid_generated,
    validate_groupoid,
)
from .group_groupoid import GroupGroupoid, product_group_groupoid, validate_group_groupoid
from .stars import (
    EdgePath,
    StarGraph,
    StarredGroupoid,
    is_tree,
    left_translate_path,
    product_starred,
    reduce_path,
    star_connected,
    validate_star_structure,
)
from .monodromy import (
    MonGroupoid,
    MonMor,
    StarredMorphism,
    canonical_mon,
    mon_compose,
    mon_enumerate,
    mon_group_mul,
    mon_identity,
    mon_inverse,
    mon_map,
    mon_product_join,
    mon_product_split,
    mon_project,
    mon_target,
    validate_starred_morphism,
)
from .presentation import (
    Presentation,
    Word,
    check_hypotheses,
    default_cover,
    enumerate_words,
    fold,
    free_reduce,
    letter_product,
    make_word,
    mgw_equal,
    mgw_to_mon,
    parse_word,
    format_word,
)
from .globalize import (
    Extension,
    LocalMorphism,
    UniquenessResult,
    check_group_morphism,
    extend_strong,
    extend_weak,
    globalize_strong,
    globalize_weak,
    uniqueness_check,
    validate_local_morphism,
    word_group_product,
)
from .sections import (
    Germ,
    Holonomy,
    Section,
    all_sections,
    check_extendibility,
    enough_sections,
    germ_product,
    holonomy,
    psi,
    section_composable,
    section_germs,
    section_inverse,
    section_product,
    validate_section,
)
from .report import Report, ValidationFailed, Violation
from .ggdfile import Document, ParseError, emit, load, load_path, load_text, parse

__version__ = "0.1.0"
