"""
Mutual information matrix over a small portrait collection
==========================================================

Five synthetic "portraits" are written to disk as PNG, read back through the
same pipeline the command line uses (grayscale, resize to 256x256), and
compared pairwise.  Each image's best match should be itself, and the
diagonal of the matrix holds each image's own entropy.
"""
import os
import tempfile

import numpy as np
from PIL import Image

from imginfo import (
    DEFAULT_SIZE,
    MetricKind,
    TargetSize,
    image_entropy,
    load_grayscale,
    pairwise_matrix,
    plot_series,
    synth_portrait,
)

workdir = tempfile.mkdtemp(prefix="imginfo-demo-")
names = []
for seed in range(5):
    name = f"person{seed}.png"
    # different native sizes, the pipeline resizes them to a common shape
    img = synth_portrait(seed, TargetSize(180 + 20 * seed, 200))
    Image.fromarray(img.pixels).save(os.path.join(workdir, name))
    names.append(name)

###############################################################################
# Load and compare every ordered pair.

images = [(name, load_grayscale(os.path.join(workdir, name), DEFAULT_SIZE)) for name in names]
m = pairwise_matrix(images, MetricKind.MUTUAL_INFORMATION)

for a, value in plot_series(m):
    left, right = a.split("|")
    print(f"The mutual information between '{left}' and '{right}' is: {value}")

np.set_printoptions(precision=8, suppress=True)
print("Mutual Information Matrix:")
print(m.values)

###############################################################################
# Higher MI means higher similarity: the diagonal wins every row, and each
# diagonal entry is that image's entropy.

for i, (name, img) in enumerate(images):
    assert int(np.argmax(m.values[i])) == i
    assert abs(m.values[i, i] - image_entropy(img)) < 1e-12
print("every row peaks on the diagonal")

###############################################################################
# Plot the 25 values (needs matplotlib).

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    points = plot_series(m)
    fig, ax = plt.subplots(figsize=(10, 3.5))
    ax.plot(range(len(points)), [v for _, v in points], "o-")
    ax.set_xticks(range(len(points)))
    ax.set_xticklabels([p for p, _ in points], rotation=90, fontsize=6)
    ax.set_ylabel("MI (bits)")
    fig.tight_layout()
    out = os.path.join(workdir, "mi_plot.png")
    fig.savefig(out, dpi=100)
    print("plot written to", out)
