"""Deterministic color-erasing augmentation engine and voting analysis kit.

The engine grays out whole images or random rectangles of them under
probability gates, producing augmented corpora that are bit-reproducible
from a seed. The companion ensemble module analyzes majority-vote
classifiers exactly, including the effect of substituting one voter.
"""

from ._version import __version__
from .ensemble import (
    InstanceParseError,
    SubstitutionReport,
    VoteInstance,
    brute_force_error,
    component_error,
    ensemble_error,
    ensemble_output,
    format_instance,
    format_labels,
    parse_instance,
    parse_labels,
    search_beneficial_substitutions,
    substitute_and_compare,
    vote_sum,
)
from .grayscale import LUMA_WEIGHTS_PER_1000, luma, to_grayscale
from .image import Image, ImageIOError, Rect, extract, load_image, save_image
from .pipeline import (
    CorpusJob,
    CorpusWriteError,
    Manifest,
    ManifestEntry,
    ReplayMismatchError,
    content_digest,
    derive_stream_seed,
    read_manifest,
    replay,
    run_corpus,
    write_manifest,
)
from .rce import (
    BRANCHES,
    DIRECTIONS,
    AugmentationRecord,
    RceConfig,
    apply_rce,
    local_transform,
    sample_decision,
)
from .region import RegionParams, rand_position
from .rng import RngStream, fnv1a64, splitmix64

__all__ = [
    "__version__",
    # imaging
    "Image",
    "Rect",
    "ImageIOError",
    "load_image",
    "save_image",
    "extract",
    # grayscale
    "LUMA_WEIGHTS_PER_1000",
    "luma",
    "to_grayscale",
    # rng / region
    "RngStream",
    "splitmix64",
    "fnv1a64",
    "RegionParams",
    "rand_position",
    # rce
    "BRANCHES",
    "DIRECTIONS",
    "RceConfig",
    "AugmentationRecord",
    "local_transform",
    "sample_decision",
    "apply_rce",
    # ensemble
    "VoteInstance",
    "SubstitutionReport",
    "InstanceParseError",
    "component_error",
    "vote_sum",
    "ensemble_output",
    "ensemble_error",
    "brute_force_error",
    "substitute_and_compare",
    "search_beneficial_substitutions",
    "parse_instance",
    "format_instance",
    "parse_labels",
    "format_labels",
    # pipeline
    "CorpusJob",
    "Manifest",
    "ManifestEntry",
    "CorpusWriteError",
    "ReplayMismatchError",
    "derive_stream_seed",
    "content_digest",
    "run_corpus",
    "replay",
    "write_manifest",
    "read_manifest",
]
