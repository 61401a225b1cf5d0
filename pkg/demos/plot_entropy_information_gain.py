"""
Entropy of merged images and information gain
=============================================

Two images are merged by averaging them pixel by pixel.  The entropy matrix
holds H(merge(i, j)) (the diagonal is each image's own entropy, since merging
an image with itself changes nothing) and the information-gain matrix holds
H(i) - H(merge(i, j)).  Gains are negative when merging makes the result less
predictable than the original, and the matrix is not symmetric.
"""
import numpy as np

from imginfo import (
    MetricKind,
    TargetSize,
    image_entropy,
    merge_images,
    pairwise_matrix,
    synth_portrait,
    synth_uniform_levels,
)

size = TargetSize(128, 120)
images = [(f"portrait{k}", synth_portrait(k, size)) for k in range(3)]
images.append(("background", synth_uniform_levels([30, 160, 220], size)))

entropy_m = pairwise_matrix(images, MetricKind.ENTROPY_OF_MERGE)
gain_m = pairwise_matrix(images, MetricKind.INFORMATION_GAIN)

np.set_printoptions(precision=8, suppress=True)
print("Entropy Matrix:")
print(entropy_m.values)
print("Info_gain Matrix:")
print(gain_m.values)

###############################################################################
# The two tables are tied together: gain[i, j] = entropy[i, i] - entropy[i, j].

derived = np.diag(entropy_m.values)[:, None] - entropy_m.values
assert np.array_equal(derived, gain_m.values)
assert (np.diag(gain_m.values) == 0).all()

a, b = images[0][1], images[3][1]
print("H(a) =", image_entropy(a), " H(merge(a, b)) =", image_entropy(merge_images(a, b)))
