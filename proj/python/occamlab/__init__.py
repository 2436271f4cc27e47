"""Universal induction over a toy description language (R0 tape machines)."""

from ._core import (
    ContradictionError,
    Error,
    FormatError,
    HypothesisSpace,
    IoError,
    Language,
    Model,
    ResourceLimitError,
    ValidationError,
    alignment,
    base_language,
    batch_update,
    construct_posthoc,
    correspondence,
    demo_confidence_tradeoff,
    demo_invariance,
    demo_overwhelm,
    demo_posthoc,
    demo_reorder,
    dictionary_wrapper,
    entropy,
    enumerate_space,
    load_space,
    make_special,
    observe_update,
    parse_language,
    permutation_wrapper,
    reweight,
    run,
    solomonoff_prior,
    steps_to_threshold,
    true_prefix,
    verify_posthoc,
)

__version__ = "0.1.0"
