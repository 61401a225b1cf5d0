"""
The information diagram, numerically
====================================

Entropy, joint entropy, conditional entropy and mutual information of two
aligned images fit together like the regions of a two-circle Venn diagram:

    H(A, B) = H(A) + H(B) - I(A; B)
    H(A | B) = H(A, B) - H(B)

This script checks both identities on a noisy copy of an image, where the
images share a lot, and on an unrelated pair, where they share little.
"""
import numpy as np

from imginfo import (
    GrayImage,
    TargetSize,
    conditional_entropy,
    entropy,
    joint_entropy,
    joint_pdf,
    mutual_information,
    synth_portrait,
)

rng = np.random.default_rng(0)
a = synth_portrait(1, TargetSize(96, 96))
noisy = GrayImage(np.clip(a.pixels.astype(int) + rng.integers(-6, 7, a.shape), 0, 255))
other = synth_portrait(7, TargetSize(96, 96))

for name, b in [("noisy copy", noisy), ("other portrait", other)]:
    j = joint_pdf(a, b)
    ha, hb = entropy(j.marginal_a()), entropy(j.marginal_b())
    hab, mi = joint_entropy(j), mutual_information(j)
    h_a_given_b = conditional_entropy(j, given="b")
    print(f"{name:>15}: H(A)={ha:.4f} H(B)={hb:.4f} H(A,B)={hab:.4f} "
          f"I(A;B)={mi:.4f} H(A|B)={h_a_given_b:.4f}")
    assert abs(ha + hb - mi - hab) < 1e-9
    assert abs(h_a_given_b - (hab - hb)) < 1e-9
