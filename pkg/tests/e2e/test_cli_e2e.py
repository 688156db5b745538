"""End-to-end runs of the command-line workflows."""

import subprocess
import sys

import numpy as np
from typer.testing import CliRunner

from revolve_fractals.cli import app
from revolve_fractals.pointset import read_cloud

runner = CliRunner()


def _small_suite_config(config_file):
    config_file.write_text(
        'config_version: "1.0"\n'
        "verify:\n  kiko_samples: 65\n  kiko_depth: 20\n"
        "processing:\n  log_file: ''\n  log_level: WARNING\n",
        encoding="utf-8",
    )


def test_generate_then_render(tmp_path):
    cloud_path = tmp_path / "koch.txt"
    image_path = tmp_path / "koch.pgm"
    generated = runner.invoke(
        app,
        ["generate", "--figure", "fig3-top-left", "--depth", "8"]
        + ["-o", str(cloud_path)],
    )
    assert generated.exit_code == 0, generated.output
    cloud = read_cloud(cloud_path)
    assert cloud.depth == 8
    assert len(cloud) <= 1 + 6 * (2**8 - 1)

    rendered = runner.invoke(
        app,
        ["render", "--input", str(cloud_path), "--size", "64"]
        + ["-o", str(image_path)],
    )
    assert rendered.exit_code == 0, rendered.output
    data = image_path.read_bytes()
    pixels = np.frombuffer(data[len(b"P5\n64 64\n255\n") :], np.uint8)
    assert pixels.size == 64 * 64
    assert set(np.unique(pixels)) <= {0, 255}
    assert (pixels == 0).any()


def test_outputs_are_reproducible(tmp_path):
    paths = []
    for run in range(2):
        cloud_path = tmp_path / f"cloud{run}.txt"
        image_path = tmp_path / f"image{run}.pgm"
        runner.invoke(
            app,
            ["generate", "--figure", "fig4-bottom-left", "--depth", "9"]
            + ["--threads", "1", "-o", str(cloud_path)],
        )
        runner.invoke(
            app,
            ["render", "--figure", "fig4-bottom-left", "--depth", "9"]
            + ["--size", "48", "--threads", "1", "-o", str(image_path)],
        )
        paths.append((cloud_path, image_path))
    (cloud_a, image_a), (cloud_b, image_b) = paths
    assert cloud_a.read_bytes() == cloud_b.read_bytes()
    assert image_a.read_bytes() == image_b.read_bytes()


def test_verify_all_small_suite(isolated_config):
    _small_suite_config(isolated_config)
    result = runner.invoke(
        app, ["verify", "--all", "--depth", "4", "--threads", "2"]
    )
    assert result.exit_code == 0, result.output
    checks = [
        line
        for line in result.stdout.splitlines()
        if line.startswith("CHECK")
    ]
    # davis_knuth 2, kiko 3x4, twelve figures x 3, classical 3
    assert len(checks) == 2 + 12 + 36 + 3
    assert all(line.endswith("PASS") for line in checks)


def test_represent_known_example():
    result = runner.invoke(
        app, ["represent", "--z=-5+33i", "--anchor=-i"]
    )
    assert result.exit_code == 0, result.output
    assert result.stdout.strip().splitlines()[-1] == (
        "1 0 0 0 -i -1 i 1 0 -i 0"
    )


def test_module_entry_point():
    completed = subprocess.run(
        [sys.executable, "-m", "revolve_fractals", "represent"]
        + ["--z", "1", "--anchor", "-i"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert completed.returncode == 0, completed.stderr
    assert completed.stdout.strip() == "1 -i"
