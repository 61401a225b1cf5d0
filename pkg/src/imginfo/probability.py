"""Marginal and joint intensity histograms and their probability mass functions.

Counts are exact ``int64``; probabilities are ``float64`` obtained by a single
division by the pixel total.  There is always one bin per 8-bit level.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .imaging import GrayImage

__all__ = [
    "LEVELS",
    "IntensityHistogram",
    "JointHistogram",
    "JointProbDist",
    "ProbDist",
    "joint_histogram",
    "joint_pdf",
    "marginal_histogram",
    "to_joint_pdf",
    "to_pdf",
]

LEVELS = 256


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class IntensityHistogram:
    counts: np.ndarray  # (256,) int64

    @property
    def total(self) -> int:
        return int(self.counts.sum())


@dataclass(frozen=True, eq=False)
class ProbDist:
    probs: np.ndarray  # (256,) float64


@dataclass(frozen=True, eq=False)
class JointHistogram:
    """Co-occurrence counts; ``counts[u, v]`` is the number of positions with a=u, b=v."""

    counts: np.ndarray  # (256, 256) int64

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def row_marginal(self) -> IntensityHistogram:
        return IntensityHistogram(_frozen(self.counts.sum(axis=1)))

    def col_marginal(self) -> IntensityHistogram:
        return IntensityHistogram(_frozen(self.counts.sum(axis=0)))

    @property
    def T(self) -> "JointHistogram":
        return JointHistogram(_frozen(np.ascontiguousarray(self.counts.T)))


@dataclass(frozen=True, eq=False)
class JointProbDist:
    probs: np.ndarray  # (256, 256) float64, axis 0 = image A, axis 1 = image B

    def marginal_a(self) -> ProbDist:
        return ProbDist(_frozen(self.probs.sum(axis=1)))

    def marginal_b(self) -> ProbDist:
        return ProbDist(_frozen(self.probs.sum(axis=0)))

    @property
    def T(self) -> "JointProbDist":
        return JointProbDist(_frozen(np.ascontiguousarray(self.probs.T)))


def marginal_histogram(img: GrayImage) -> IntensityHistogram:
    counts = np.bincount(img.flat(), minlength=LEVELS).astype(np.int64)
    return IntensityHistogram(_frozen(counts))


def to_pdf(hist: IntensityHistogram) -> ProbDist:
    return ProbDist(_frozen(hist.counts / hist.total))


def joint_histogram(a: GrayImage, b: GrayImage) -> JointHistogram:
    """2-D histogram of co-located intensity pairs.

    Raises
    ------
    ValueError
        If the two images differ in shape.
    """
    if a.shape != b.shape:
        raise ValueError(
            f"joint histogram needs equal shapes, got {a.width}x{a.height} "
            f"and {b.width}x{b.height}")
    index = a.flat().astype(np.intp) * LEVELS + b.flat()
    counts = np.bincount(index, minlength=LEVELS * LEVELS).astype(np.int64)
    return JointHistogram(_frozen(counts.reshape(LEVELS, LEVELS)))


def to_joint_pdf(jh: JointHistogram) -> JointProbDist:
    return JointProbDist(_frozen(jh.counts / jh.total))


def joint_pdf(a: GrayImage, b: GrayImage) -> JointProbDist:
    """Shorthand for ``to_joint_pdf(joint_histogram(a, b))``."""
    return to_joint_pdf(joint_histogram(a, b))
