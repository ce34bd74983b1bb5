"""Protection of quantum messages against collective noise from a finite group.

The package splits along the pipeline: concrete groups (:mod:`.groups`),
representation analysis (:mod:`.reps`), a dense qudit state-vector engine
(:mod:`.statevec`), the token-state protocol itself (:mod:`.codec`), gate
synthesis with cost accounting (:mod:`.circuits`), the three-qubit collective
rotation demonstration (:mod:`.su2`), and a JSON-reporting CLI (:mod:`.cli`).
"""

__version__ = "0.1.0"

from .codec import (
    ChannelSpec,
    ProtocolContext,
    ProtocolReport,
    TokenSet,
    build_fiducial,
    build_tokens,
    decode,
    encode,
    fixed_channel,
    measure_and_realign,
    prepare_protocol,
    run_roundtrip,
    transmit,
    uniform_channel,
)
from .groups import (
    ConjugacyClasses,
    FiniteGroup,
    builtin_group,
    conjugacy_classes,
    cyclic_group,
    direct_product,
    klein_group,
    symmetric_group_3,
    validate_group,
)
from .reps import (
    CharacterTable,
    IsotypicDecomposition,
    MultiplicityVector,
    UnitaryRep,
    builtin_character_table,
    builtin_rep,
    compound_character,
    contains_regular,
    isotypic_decompose,
    min_r,
    multiplicities,
    regular_rep,
)
from .statevec import (
    MeasurementRecord,
    StateVector,
    apply_collective,
    apply_controlled,
    apply_local,
    basis_state,
    fidelity,
    outcome_probabilities,
    product_state,
    project_measure,
    random_state,
)

__all__ = [name for name in dir() if not name.startswith("_")]
