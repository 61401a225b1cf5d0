"""Mutual information, entropy and information gain between grayscale images.

Typical use::

    from imginfo import DEFAULT_SIZE, joint_pdf, load_grayscale, mutual_information

    a = load_grayscale("a.png", DEFAULT_SIZE)
    b = load_grayscale("b.png", DEFAULT_SIZE)
    mutual_information(joint_pdf(a, b))

See :func:`imginfo.matrix.pairwise_matrix` for whole collections and
``python -m imginfo --help`` for the command line.
"""
from .imaging import (
    DEFAULT_SIZE,
    GrayImage,
    ImageDecodeError,
    TargetSize,
    load_grayscale,
    normalize_intensity,
    resize,
    synth_portrait,
    synth_uniform_levels,
)
from .matrix import (
    MatrixParseError,
    MetricKind,
    MetricMatrix,
    invariant_violations,
    pair_metric,
    pairwise_matrix,
    parse_matrix,
    plot_series,
    serialize_matrix,
)
from .metrics import (
    conditional_entropy,
    entropy,
    image_conditional_entropy,
    image_entropy,
    image_joint_entropy,
    image_mutual_information,
    information_gain,
    joint_entropy,
    merge_images,
    mutual_information,
)
from .probability import (
    IntensityHistogram,
    JointHistogram,
    JointProbDist,
    ProbDist,
    joint_histogram,
    joint_pdf,
    marginal_histogram,
    to_joint_pdf,
    to_pdf,
)

__version__ = "0.1.0"
