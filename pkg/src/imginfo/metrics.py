"""Information measures over intensity distributions, in bits.

The distribution-level functions (:func:`entropy`, :func:`joint_entropy`,
:func:`conditional_entropy`, :func:`mutual_information`) take the PMF types from
:mod:`imginfo.probability`.  The ``image_*`` helpers run the histogram step for
you on a pair of equally sized images.
"""
from __future__ import annotations

from typing import Literal

import numpy as np

from .imaging import GrayImage
from .probability import (
    JointProbDist,
    ProbDist,
    joint_pdf,
    marginal_histogram,
    to_pdf,
)

__all__ = [
    "NEG_TOLERANCE",
    "conditional_entropy",
    "entropy",
    "image_conditional_entropy",
    "image_entropy",
    "image_joint_entropy",
    "image_mutual_information",
    "information_gain",
    "joint_entropy",
    "merge_images",
    "mutual_information",
]

NEG_TOLERANCE = 1e-12


def _shannon(p: np.ndarray) -> float:
    nz = p[p > 0]
    h = -float(np.sum(nz * np.log2(nz)))
    return h + 0.0  # no -0.0


def _clamp(x: float) -> float:
    if -NEG_TOLERANCE <= x < 0.0:
        return 0.0
    return x + 0.0


def entropy(p: ProbDist) -> float:
    """Shannon entropy ``-sum p log2 p``, with ``0 log 0 = 0``."""
    return _shannon(p.probs)


def joint_entropy(j: JointProbDist) -> float:
    return _shannon(j.probs)


def conditional_entropy(j: JointProbDist, given: Literal["a", "b"] = "b") -> float:
    """``H(A|B)`` when ``given="b"`` (the default), ``H(B|A)`` when ``given="a"``.

    Computed through the chain rule ``H(A,B) - H(B)``.  Results within 1e-12
    below zero are clamped to 0.
    """
    if given == "b":
        cond_on = j.marginal_b()
    elif given == "a":
        cond_on = j.marginal_a()
    else:
        raise ValueError(f"given must be 'a' or 'b', not {given!r}")
    return _clamp(joint_entropy(j) - entropy(cond_on))


def mutual_information(j: JointProbDist) -> float:
    """Mutual information of a joint intensity distribution.

    ``sum p_ab * log2(p_ab / (p_a * p_b))`` over cells where the joint and
    both marginals are positive; the marginals are taken from ``j`` itself.
    A result within 1e-12 below zero is clamped to 0.

    Examples
    --------
    >>> from imginfo.imaging import synth_uniform_levels, TargetSize
    >>> from imginfo.probability import joint_pdf
    >>> x = synth_uniform_levels([0, 128, 255], TargetSize(3, 1))
    >>> round(mutual_information(joint_pdf(x, x)), 12)
    1.584962500721
    """
    p = j.probs
    pa = p.sum(axis=1)
    pb = p.sum(axis=0)
    rows, cols = np.nonzero(p)
    pab = p[rows, cols]
    qa = pa[rows]
    qb = pb[cols]
    keep = (qa > 0) & (qb > 0)
    pab, qa, qb = pab[keep], qa[keep], qb[keep]
    mi = float(np.sum(pab * np.log2(pab / (qa * qb))))
    return _clamp(mi)


def merge_images(a: GrayImage, b: GrayImage) -> GrayImage:
    """Pixel-wise mean of two images, rounded half-up.

    ``merge_images(x, x) == x`` and the operation is commutative.
    """
    if a.shape != b.shape:
        raise ValueError(
            f"cannot merge {a.width}x{a.height} with {b.width}x{b.height}")
    s = a.pixels.astype(np.uint16) + b.pixels
    return GrayImage(((s + 1) // 2).astype(np.uint8))


def image_entropy(img: GrayImage) -> float:
    return entropy(to_pdf(marginal_histogram(img)))


def information_gain(a: GrayImage, b: GrayImage) -> float:
    """Entropy of ``a`` minus entropy of ``merge_images(a, b)``.

    Negative when merging raises entropy.  Not symmetric in its arguments.
    """
    return image_entropy(a) - image_entropy(merge_images(a, b))


def image_mutual_information(a: GrayImage, b: GrayImage) -> float:
    return mutual_information(joint_pdf(a, b))


def image_joint_entropy(a: GrayImage, b: GrayImage) -> float:
    return joint_entropy(joint_pdf(a, b))


def image_conditional_entropy(a: GrayImage, b: GrayImage) -> float:
    """``H(A|B)`` for two images."""
    return conditional_entropy(joint_pdf(a, b), given="b")
