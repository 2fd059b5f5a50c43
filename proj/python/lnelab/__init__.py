"""Inner-vs-outer metric laboratory for real algebraic germs.

The heavy lifting lives in the C++ extension; this package re-exports the
operations most useful from Python: germ construction, on-variety sampling,
graph-geodesic distortion estimates, link sweeps and the exact classifiers.
"""

from ._core import (
    ImplicitGerm,
    SampleCloud,
    classify_brieskorn,
    classify_horn,
    components,
    corpus_germ,
    corpus_names,
    germ_from_json,
    germ_to_json,
    hausdorff_distance,
    inner_distance,
    lne_constant,
    project_to_variety,
    sample_ball,
    sample_sphere_slice,
    sweep,
    tord_outer,
)

__all__ = [
    "ImplicitGerm",
    "SampleCloud",
    "classify_brieskorn",
    "classify_horn",
    "components",
    "corpus_germ",
    "corpus_names",
    "germ_from_json",
    "germ_to_json",
    "hausdorff_distance",
    "inner_distance",
    "lne_constant",
    "project_to_variety",
    "sample_ball",
    "sample_sphere_slice",
    "sweep",
    "tord_outer",
]
