import json
import math
import os
import pathlib
import subprocess
import sys

import numpy as np
import pytest

import skelimg

HERE = pathlib.Path(__file__).parent


def canonical(frames, value=0.5):
    coords = np.full((frames, 543, 2), value)
    return skelimg.Sequence.from_numpy(coords)


def test_roundtrip_through_csv(tmp_path):
    rng = np.random.default_rng(0)
    coords = rng.random((7, 543, 2))
    coords[3, 500] = np.nan
    seq = skelimg.Sequence.from_numpy(coords)
    path = tmp_path / "clip.csv"
    skelimg.write_sequence(seq, path)
    back = skelimg.read_sequence(path)
    assert back.video_id == "clip"
    got = back.to_numpy()
    assert np.isnan(got[3, 500]).all()
    mask = ~np.isnan(coords)
    assert np.max(np.abs(got[mask] - coords[mask])) <= 5e-7


def test_builtin_subset_sizes():
    sizes = {name: len(skelimg.manifest_ids(name)) for name in skelimg.builtin_strategies()}
    assert sizes == {"all": 543, "laines": 68, "arcanjo": 75, "asl-1st": 118, "asl-2nd": 80}


def test_selection_then_encode_shape():
    seq = skelimg.apply_selection(canonical(10), "arcanjo")
    assert seq.landmark_count == 75
    img = skelimg.encode(seq)
    assert img.shape == (75, 8, 3)
    assert img.dtype == np.uint8
    # Frames 9..11 pad column 3; frame 9 is real, 10 and 11 are zero.
    assert img[0, 3].tolist() == [128, 0, 0]


def test_impute_fills_interior_gap():
    coords = np.full((9, 543, 2), np.nan)
    for t in (0, 1, 2, 6, 7, 8):
        coords[t, 0] = [0.1 * t, 0.5]
    seq, stats = skelimg.impute(skelimg.Sequence.from_numpy(coords))
    out = seq.to_numpy()
    assert stats["filled_cubic"] == 3
    assert out[4, 0, 0] == pytest.approx(0.4, abs=1e-9)


def test_bad_sequence_raises_schema_error():
    with pytest.raises(skelimg.SchemaError):
        skelimg.parse_sequence("frame,bogus\n0,1\n")


def test_augment_is_deterministic():
    seq = canonical(4, 0.3)
    a = skelimg.augment(seq, seed=5, key="clip", epoch=2).to_numpy()
    b = skelimg.augment(seq, seed=5, key="clip", epoch=2).to_numpy()
    c = skelimg.augment(seq, seed=5, key="clip", epoch=3).to_numpy()
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_split_and_metrics():
    plan = skelimg.make_split_plan(["c", "a", "b", "d"])
    assert plan["session_count"] == 12
    m = skelimg.compute_metrics(["a", "a", "b"], ["a", "b", "b"])
    assert m["accuracy"] == pytest.approx(2 / 3)
    mean, sd = skelimg.mean_sd([1.0, 3.0])
    assert (mean, sd) == (2.0, 1.0)


def test_compare_bench_reports():
    def report(values):
        return {"runs": 1, "valid": True,
                "stages": [{"name": "impute", "seconds": [values[0]]},
                           {"name": "encode", "seconds": [values[1]]}]}
    table = skelimg.compare_bench_reports(report([1.0, 1.0]), report([2.0, 4.0]))
    assert table["end_to_end"] == pytest.approx(3.0)


@pytest.mark.skipif("SKELIMG_CLI" not in os.environ, reason="CLI path not provided")
def test_command_trainer_endpoint(tmp_path):
    cli = os.environ["SKELIMG_CLI"]
    synth = pathlib.Path(cli).with_name("skelimg_synth")
    subprocess.run([str(synth), "--out", str(tmp_path / "data"), "--signers", "3",
                    "--samples", "2", "--frames", "12"], check=True)
    trainer = f"{sys.executable} {HERE / 'fake_trainer.py'}"
    cfg = {"dataset": "data/manifest.json", "strategy": "asl-2nd",
           "trainer": {"endpoint": "command", "train": trainer + " train",
                       "predict": trainer + " predict"}}
    (tmp_path / "cfg.json").write_text(json.dumps(cfg))
    subprocess.run([cli, "--config", str(tmp_path / "cfg.json"), "evaluate",
                    "--out", str(tmp_path / "ev")], check=True)
    report = json.loads((tmp_path / "ev" / "report.json").read_text())
    assert len(report["split_plan"]["sessions"]) == 6
    preds = list((tmp_path / "ev").rglob("preds.json"))
    assert len(preds) == 6
    for p in preds:
        assert len(json.loads(p.read_text())["labels"]) == 6
    acc = report["table"][0]["summary"]["accuracy"]["mean"]
    assert 0.0 <= acc <= 1.0 and not math.isnan(acc)
