import json
import os
import subprocess

import pytest

CLI = os.environ.get("SCSEG_CLI")

pytestmark = pytest.mark.skipif(not CLI, reason="SCSEG_CLI not set")


def run(*args, expect=0):
    proc = subprocess.run([CLI, *map(str, args)], capture_output=True, text=True)
    if expect is not None:
        assert proc.returncode == expect, proc.stderr or proc.stdout
    return proc


def test_synth_segment_eval_pipeline(tmp_path):
    block = tmp_path / "block.pgm"
    truth = tmp_path / "truth.png"
    run("synth", "--kind", "smooth-outliers", "--seed", 11, "--out", block, "--truth-out", truth)

    mask = tmp_path / "mask.png"
    fill = tmp_path / "fill.pgm"
    decisions = tmp_path / "decisions.json"
    run("segment", block, "--mask-out", mask, "--fill-out", fill,
        "--decisions-out", decisions, "--seed", 3)

    report = tmp_path / "report.json"
    out = run("eval", "--pred", mask, "--truth", truth, "--report", report)
    assert "F1 100.0%" in out.stdout

    doc = json.loads(report.read_text())
    assert doc["mode"] == "macro"
    assert doc["aggregate"]["f1"] == 1.0
    assert {"name", "tp", "fp", "fn", "tn", "precision", "recall", "f1"} <= set(
        doc["per_image"][0]
    )

    blocks = json.loads(decisions.read_text())["blocks"]
    assert blocks[0]["stage"] == "ransac"
    assert len(blocks[0]["coeffs"]) == 10


def test_segment_is_deterministic(tmp_path):
    scene = tmp_path / "scene.pgm"
    run("synth", "--kind", "smooth-outliers", "--fraction", 0.15, "--seed", 4,
        "--out", scene)
    masks = []
    for name, extra in [("a.pgm", []), ("b.pgm", []), ("c.pgm", ["--threads", "1"]),
                        ("d.pgm", ["--threads", "4"])]:
        out = tmp_path / name
        run("segment", scene, "--mask-out", out, "--seed", 7, *extra)
        masks.append(out.read_bytes())
    assert masks[0] == masks[1] == masks[2] == masks[3]


def test_flat_image_yields_empty_mask(tmp_path):
    flat = tmp_path / "flat.pgm"
    run("synth", "--kind", "constant", "--value", 77, "--out", flat)
    mask = tmp_path / "mask.pgm"
    run("segment", flat, "--mask-out", mask)
    raster = mask.read_bytes().split(b"\n", 3)[3]
    assert raster == b"\x00" * (64 * 64)


def test_eval_directory_mode(tmp_path):
    pred_dir = tmp_path / "pred"
    truth_dir = tmp_path / "truth"
    pred_dir.mkdir()
    truth_dir.mkdir()
    for i in range(3):
        run("synth", "--kind", "palette", "--seed", i, "--fraction", 0.1,
            "--out", pred_dir / f"junk{i}.pgm", "--truth-out", pred_dir / f"m{i}.png")
        (pred_dir / f"junk{i}.pgm").unlink()
        run("synth", "--kind", "palette", "--seed", i, "--fraction", 0.1,
            "--out", truth_dir / f"junk{i}.pgm", "--truth-out", truth_dir / f"m{i}.png")
        (truth_dir / f"junk{i}.pgm").unlink()
    report = tmp_path / "report.json"
    run("eval", "--pred", pred_dir, "--truth", truth_dir, "--micro", "--report", report)
    doc = json.loads(report.read_text())
    assert doc["mode"] == "micro"
    assert len(doc["per_image"]) == 3
    assert doc["aggregate"]["f1"] == 1.0


def test_errors_exit_nonzero(tmp_path):
    run("segment", tmp_path / "missing.pgm", "--mask-out", tmp_path / "m.pgm", expect=1)

    bad = tmp_path / "bad.pgm"
    bad.write_bytes(b"P5\n8 8\n255\nxx")  # truncated raster
    run("segment", bad, "--mask-out", tmp_path / "m.pgm", expect=1)

    proc = run("segment", expect=None)
    assert proc.returncode != 0  # missing required arguments
