import subprocess
import sys

import numpy as np
import pytest

from imginfo import (
    DEFAULT_SIZE,
    MetricKind,
    TargetSize,
    image_entropy,
    image_mutual_information,
    invariant_violations,
    load_grayscale,
    normalize_intensity,
    parse_matrix,
    synth_portrait,
    synth_uniform_levels,
)
from imginfo.cli import main

from conftest import write_png

THREE = TargetSize(256, 255)


@pytest.fixture
def portrait_dir(tmp_path):
    d = tmp_path / "faces"
    d.mkdir()
    for k in range(5):
        write_png(d / f"{k:02d}.png", synth_portrait(k, TargetSize(96, 80)).pixels)
    (d / "notes.txt").write_text("not an image")
    return d


@pytest.fixture
def three_level(tmp_path):
    return write_png(tmp_path / "three.png", synth_uniform_levels([0, 128, 255], THREE).pixels)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


class TestCompare:
    def test_self_three_level(self, capsys, three_level):
        code, out, err = run(capsys, "compare", three_level, three_level, "--size", "256x255")
        assert code == 0 and err == ""
        assert out == ("The mutual information between 'three.png' and 'three.png' "
                       "is: 1.58496250072116\n")

    def test_against_constant(self, capsys, tmp_path, portrait_dir):
        flat = write_png(tmp_path / "flat.png", np.full((30, 30), 90, np.uint8))
        code, out, _ = run(capsys, "compare", portrait_dir / "00.png", flat)
        assert code == 0 and out.endswith(" is: 0\n")

    def test_matches_library(self, capsys, portrait_dir):
        a, b = portrait_dir / "01.png", portrait_dir / "03.png"
        code, out, _ = run(capsys, "compare", a, b)
        expected = image_mutual_information(load_grayscale(a, DEFAULT_SIZE), load_grayscale(b, DEFAULT_SIZE))
        assert code == 0
        assert out.rstrip("\n").endswith(f"is: {expected:.15g}")

    def test_normalize_flag(self, capsys, portrait_dir):
        a, b = portrait_dir / "01.png", portrait_dir / "03.png"
        _, out, _ = run(capsys, "compare", a, b, "--normalize")
        na = normalize_intensity(load_grayscale(a, DEFAULT_SIZE))
        nb = normalize_intensity(load_grayscale(b, DEFAULT_SIZE))
        assert out.rstrip("\n").endswith(f"is: {image_mutual_information(na, nb):.15g}")

    def test_symmetric(self, capsys, portrait_dir):
        a, b = portrait_dir / "01.png", portrait_dir / "02.png"
        _, ab, _ = run(capsys, "compare", a, b)
        _, ba, _ = run(capsys, "compare", b, a)
        assert ab.split("is: ")[1] == ba.split("is: ")[1]

    def test_other_metric_title(self, capsys, portrait_dir):
        a = portrait_dir / "01.png"
        _, out, _ = run(capsys, "compare", a, a, "--metric", "info-gain")
        assert out == "The information gain between '01.png' and '01.png' is: 0\n"

    def test_missing_file(self, capsys, tmp_path, three_level):
        code, out, err = run(capsys, "compare", three_level, tmp_path / "gone.png")
        assert code == 2 and out == "" and "gone.png" in err


class TestMatrix:
    def test_directory_mi(self, capsys, portrait_dir):
        code, out, _ = run(capsys, "matrix", portrait_dir)
        assert code == 0
        m = parse_matrix(out.encode(), "csv", kind=MetricKind.MUTUAL_INFORMATION)
        assert m.labels == ("00.png", "01.png", "02.png", "03.png", "04.png")
        assert invariant_violations(m) == []
        for i, label in enumerate(m.labels):
            h = image_entropy(load_grayscale(portrait_dir / label, DEFAULT_SIZE))
            assert abs(m.values[i, i] - h) <= 1e-13 * max(h, 1)

    def test_info_gain_four(self, capsys, portrait_dir):
        files = [portrait_dir / f"0{k}.png" for k in range(4)]
        code, out, _ = run(capsys, "matrix", *files, "--metric", "info-gain", "--format", "json")
        assert code == 0
        m = parse_matrix(out, "json")
        assert m.kind is MetricKind.INFORMATION_GAIN and m.n == 4
        assert (np.diag(m.values) == 0).all()

    def test_single_image(self, capsys, portrait_dir):
        code, out, _ = run(capsys, "matrix", portrait_dir / "02.png")
        assert code == 0 and out.count("\n") == 2

    def test_output_file(self, capsys, tmp_path, portrait_dir):
        target = tmp_path / "m.csv"
        code, out, _ = run(capsys, "matrix", portrait_dir, "--output", target)
        assert code == 0 and out == ""
        _, direct, _ = run(capsys, "matrix", portrait_dir)
        assert target.read_text() == direct

    def test_empty_directory(self, capsys, tmp_path):
        (tmp_path / "empty").mkdir()
        code, out, err = run(capsys, "matrix", tmp_path / "empty")
        assert code == 2 and out == "" and "empty" in err

    def test_decode_failure_names_file(self, capsys, portrait_dir):
        (portrait_dir / "99.png").write_bytes(b"garbage")
        code, out, err = run(capsys, "matrix", portrait_dir)
        assert code == 2 and out == "" and "99.png" in err

    def test_deterministic(self, capsys, portrait_dir):
        outs = {run(capsys, "matrix", portrait_dir, "--metric", "joint-entropy")[1] for _ in range(3)}
        assert len(outs) == 1


class TestPlotData:
    def test_rows(self, capsys, portrait_dir):
        code, out, _ = run(capsys, "plot-data", portrait_dir)
        lines = out.splitlines()
        assert code == 0 and lines[0] == "pair,value" and len(lines) == 26
        rows = [line.rsplit(",", 1) for line in lines[1:]]
        for i in range(5):
            block = rows[5 * i:5 * i + 5]
            best = max(block, key=lambda r: float(r[1]))
            a, b = best[0].split("|")
            assert a == b

    def test_single(self, capsys, portrait_dir):
        _, out, _ = run(capsys, "plot-data", portrait_dir / "00.png")
        assert out.splitlines()[1].startswith("00.png|00.png,")


class TestUsage:
    @pytest.mark.parametrize("argv", [
        [],
        ["bogus"],
        ["compare", "only-one"],
        ["matrix", "x.png", "--metric", "nmi"],
        ["matrix", "x.png", "--size", "0x3"],
        ["matrix", "x.png", "--format", "xml"],
    ])
    def test_exit_one(self, capsys, argv):
        code, out, err = run(capsys, *argv)
        assert code == 1 and out == "" and err

    def test_help(self, capsys):
        code, out, _ = run(capsys, "--help")
        assert code == 0 and "compare" in out


def test_module_entry_point(portrait_dir):
    a = str(portrait_dir / "00.png")
    res = subprocess.run([sys.executable, "-m", "imginfo", "compare", a, a],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert res.stdout.startswith("The mutual information between '00.png' and '00.png' is: ")
