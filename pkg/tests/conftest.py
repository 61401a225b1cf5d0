import numpy as np
import pytest
from PIL import Image

from imginfo import GrayImage, TargetSize, synth_portrait


def random_image(rng, shape=(64, 64), low=0, high=256):
    return GrayImage(rng.integers(low, high, size=shape, dtype=np.uint8))


def random_pairs(seed, count, shape=(64, 64)):
    """Pairs with varied dependence: independent, noisy copies, coarse levels."""
    rng = np.random.default_rng(seed)
    pairs = []
    for k in range(count):
        a = rng.integers(0, 256, size=shape)
        mode = k % 4
        if mode == 0:
            b = rng.integers(0, 256, size=shape)
        elif mode == 1:
            b = np.clip(a + rng.integers(-20, 21, size=shape), 0, 255)
        elif mode == 2:
            a = rng.integers(0, 8, size=shape) * 32
            b = (a // 64) * 50 + rng.integers(0, 3, size=shape)
        else:
            b = 255 - a
        pairs.append((GrayImage(a.astype(np.uint8)), GrayImage(b.astype(np.uint8))))
    return pairs


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def portraits():
    return [(f"p{k}.png", synth_portrait(k, TargetSize(64, 64))) for k in range(5)]


def write_png(path, array):
    Image.fromarray(np.asarray(array)).save(path)
    return str(path)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
