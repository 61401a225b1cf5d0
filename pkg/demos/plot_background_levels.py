"""
Pure backgrounds: where log2(3) comes from
==========================================

Strip a picture down to its background and only a handful of intensities
remain.  An image split evenly between three levels has entropy exactly
log2(3), and so does its mutual information with itself or with any other
image whose three bands line up with it.
"""
import math

import numpy as np

from imginfo import (
    GrayImage,
    MetricKind,
    TargetSize,
    image_entropy,
    image_mutual_information,
    pairwise_matrix,
    synth_uniform_levels,
)

size = TargetSize(256, 255)  # 65280 pixels, divisible by 3

# three-band backgrounds with different colours but the same layout
red_ish = synth_uniform_levels([76, 120, 200], size)
grey = synth_uniform_levels([0, 128, 255], size)
dark = synth_uniform_levels([10, 20, 30], size)

print("H(grey)        =", image_entropy(grey))
print("MI(grey, grey) =", image_mutual_information(grey, grey))
print("log2(3)        =", math.log2(3))

###############################################################################
# The levels themselves do not matter, only how the bands co-vary.  A
# two-level image whose split does not match the thirds shares much less.

halves = synth_uniform_levels([40, 220], size)
flat = GrayImage(np.full(size.shape, 90, np.uint8))

images = [("red", red_ish), ("grey", grey), ("dark", dark), ("halves", halves), ("flat", flat)]
m = pairwise_matrix(images, MetricKind.MUTUAL_INFORMATION)
np.set_printoptions(precision=8, suppress=True)
print(m.labels)
print(m.values)

###############################################################################
# A constant image carries no information about anything.

assert m.values[4].max() == 0.0
assert abs(m.values[0, 1] - math.log2(3)) < 1e-12
