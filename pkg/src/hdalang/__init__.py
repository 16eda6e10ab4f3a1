"""hdalang: languages of higher-dimensional automata.

The package models concurrent behaviours as interval ipomsets (partially
ordered multisets with interfaces), collects them into subsumption-closed
languages, and extracts such languages from higher-dimensional automata
built on precubical sets.
"""

from hdalang.hda import (
    DownStep,
    Hda,
    HdaMap,
    Path,
    UpStep,
    branching_degree,
    coproduct_hda,
    enumerate_accepting_paths,
    ev_label,
    language,
    pushout_hda,
    replicate,
    replication_chain_prefix,
    start_cell_count,
    tensor_hda,
    tensor_power,
    unit_hda,
    validate_hda_map,
    validate_path,
)
from hdalang.ipomset import (
    EMPTY,
    CycleInPrecedence,
    EventOrderCycle,
    EventOrderIncomplete,
    InternalOrderCycle,
    IntervalRepresentation,
    Ipomset,
    IpomsetError,
    LabelMissing,
    SequentialMismatch,
    SourceNotMinimal,
    TargetNotMaximal,
    TwoPlusTwoWitness,
    canonicalize,
    from_chain,
    from_concurrent,
    glue,
    identity,
    interval_representation,
    is_interval,
    parallel,
    point,
    subsumes,
    validate,
)
from hdalang.language import (
    Language,
    NotInterval,
    contains,
    expand,
    extensions,
    is_equal,
    is_subset,
    normalize,
    par_closure_bounded,
    par_compose,
    restrict,
    seq_compose,
    union,
)
from hdalang.precubical import (
    CofaceMap,
    IllFormedDiagram,
    PositionOutOfRange,
    PrecubicalError,
    PrecubicalInvariant,
    PrecubicalMap,
    PrecubicalSet,
    ShapeMismatch,
    UnknownCell,
    all_cofaces,
    compose_coface,
    compose_maps,
    coproduct,
    elementary_coface,
    finite_colimit,
    identity_coface,
    tensor,
    tensor_cell_id,
    tensor_coface,
    tensor_word,
    validate_precubical,
    validate_precubical_map,
)

__all__ = [
    # ipomsets
    "EMPTY",
    "Ipomset",
    "IntervalRepresentation",
    "TwoPlusTwoWitness",
    "canonicalize",
    "from_chain",
    "from_concurrent",
    "glue",
    "identity",
    "interval_representation",
    "is_interval",
    "parallel",
    "point",
    "subsumes",
    "validate",
    # errors
    "IpomsetError",
    "CycleInPrecedence",
    "EventOrderCycle",
    "EventOrderIncomplete",
    "InternalOrderCycle",
    "LabelMissing",
    "SequentialMismatch",
    "SourceNotMinimal",
    "TargetNotMaximal",
    "NotInterval",
    "PrecubicalError",
    "PrecubicalInvariant",
    "ShapeMismatch",
    "UnknownCell",
    "PositionOutOfRange",
    "IllFormedDiagram",
    # languages
    "Language",
    "contains",
    "expand",
    "extensions",
    "is_equal",
    "is_subset",
    "normalize",
    "par_closure_bounded",
    "par_compose",
    "restrict",
    "seq_compose",
    "union",
    # precubical sets
    "CofaceMap",
    "PrecubicalMap",
    "PrecubicalSet",
    "all_cofaces",
    "compose_coface",
    "compose_maps",
    "coproduct",
    "elementary_coface",
    "finite_colimit",
    "identity_coface",
    "tensor",
    "tensor_cell_id",
    "tensor_coface",
    "tensor_word",
    "validate_precubical",
    "validate_precubical_map",
    # automata
    "DownStep",
    "Hda",
    "HdaMap",
    "Path",
    "UpStep",
    "branching_degree",
    "coproduct_hda",
    "enumerate_accepting_paths",
    "ev_label",
    "language",
    "pushout_hda",
    "replicate",
    "replication_chain_prefix",
    "start_cell_count",
    "tensor_hda",
    "tensor_power",
    "unit_hda",
    "validate_hda_map",
    "validate_path",
]
