"""Dynamics of automorphisms on finite bounded distributive lattices.

Lattices are held through Birkhoff duality: an element is a downset of a
finite poset, so join and meet are union and intersection of bitmasks.
"""

from .covers import (
    Cover,
    Family,
    components,
    cover,
    equivalent,
    finest_cover,
    is_cover,
    maximal_meet_cover,
    minimal_subcover,
    order,
    proper_maximal_elements,
    refines,
    square,
    wedge,
)
from .dynamics import (
    FORWARD,
    TWO_SIDED,
    LatticeAutomorphism,
    UnitalMorphism,
    WedgeTrajectory,
    apply,
    automorphism_from_permutation,
    conjugate,
    dimension,
    identity,
    is_expansive,
    is_expansivity_cover,
    is_positive_expansivity_cover,
    is_positively_expansive,
    iterated_wedge,
    mane_check,
    mane_dimension_certificate,
    mane_witness,
    morphism_from_map,
    power,
    stabilize,
    utz_bound,
    utz_generator,
)
from .entropy import EntropySequence, cover_entropy, expansive_entropy, relative_entropy
from .errors import BudgetError, LattidynError, ParseError, ValidationError
from .lattice import (
    Downset,
    ExplicitLattice,
    Poset,
    from_explicit,
    join,
    join_all,
    join_irreducibles,
    leq,
    meet,
    meet_all,
    poset_validate,
    to_explicit,
)
from .shift import (
    CylinderCover,
    SymbolPoset,
    maximal_symbols,
    minimal_word_subcover,
    n_cylinder_cover,
    shift_entropy,
    shift_expansivity_check,
    symbol_poset_validate,
    word_glb,
    word_leq,
    word_subcover_covers,
)
from .topology import (
    ContinuousMap,
    FiniteSpace,
    continuous_map,
    induced_automorphism,
    induced_morphism,
    open_lattice,
    space_validate,
)

__version__ = "0.1.0"
