import io
import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from torricelli.cli import random_instances, run

INSTANCES = Path(__file__).resolve().parent.parent / "instances"


def call(*argv):
    out = io.StringIO()
    code = run([str(a) for a in argv], out)
    return code, out.getvalue()


def records(text):
    return [json.loads(line) for line in text.splitlines()]


class TestSolve:
    def test_tests1_2(self):
        code, text = call("solve", INSTANCES / "tests1_2.json")
        assert code == 0
        (rec,) = records(text)
        assert rec["regime"] == "interior"
        assert math.dist(rec["point"], (751 / 485, 647 / 485)) < 1e-12
        assert rec["value"] == pytest.approx(math.sqrt(970), rel=1e-12)

    def test_oracle_attached(self):
        code, text = call("solve", "--oracle", INSTANCES / "tests1_2.json")
        (rec,) = records(text)
        assert code == 0 and rec["oracle"]["passed"] is True

    def test_batch_order_and_vertex_regime(self):
        code, text = call("solve", INSTANCES / "batch.json")
        recs = records(text)
        assert code == 0
        assert [r["instance"]["name"] for r in recs] == ["tests1.1", "heavy-first", "tests1.4"]
        assert recs[1]["regime"] == "vertex-1" and recs[1]["point"] == [2.0, 6.0]

    def test_collinear_exit_2(self):
        code, text = call("solve", INSTANCES / "collinear.json")
        (rec,) = records(text)
        assert code == 2
        assert rec["status"] == "error"
        assert rec["error"]["type"] == "CollinearAnchors" and rec["error"]["code"] == 2

    def test_tiny_tol_is_inconsistency(self):
        # residuals sit around 1e-16, so a zero-ish tolerance must trip check mode
        code, text = call("solve", "--tol", "1e-300", INSTANCES / "batch.json")
        assert code == 3
        assert any(r.get("error", {}).get("code") == 3 for r in records(text))

    def test_pretty(self):
        code, text = call("solve", "--pretty", INSTANCES / "batch.json")
        assert code == 0
        lines = text.splitlines()
        assert lines[0].split()[:3] == ["source", "status", "regime"]
        assert "vertex-1" in lines[2]


def test_classical(tmp_path):
    f = tmp_path / "c.json"
    f.write_text(json.dumps({"kind": "classical2d", "anchors": [[0, 0], [4, 0], [2, 1]]}))
    code, text = call("classical", f)
    (rec,) = records(text)
    # the 126.87 degree obtuse corner exceeds 120, so the classical point is that corner
    assert code == 0 and rec["regime"] == "vertex-3" and rec["point"] == [2.0, 1.0]


class TestInverse:
    def test_ratio_2_3_4(self):
        code, text = call("inverse", INSTANCES / "inverse_2_3_4.json")
        (rec,) = records(text)
        m1, m2, m3 = rec["weights"]
        assert code == 0
        assert (m2 / m1, m3 / m1) == pytest.approx((1.5, 2.0), abs=1e-9)
        assert rec["value"] == pytest.approx((-333980 + 193436 * math.sqrt(15)) / 4299, rel=1e-12)

    def test_tetrahedron(self):
        code, text = call("inverse3d", "--oracle", INSTANCES / "tetra.json")
        (rec,) = records(text)
        assert code == 0 and rec["oracle"]["passed"] is True
        assert sum(rec["weights"]) == pytest.approx(1.0)

    def test_not_interior(self, tmp_path):
        f = tmp_path / "i.json"
        f.write_text(json.dumps({"kind": "inverse2d", "anchors": [[2, 6], [1, 1], [5, 1]], "target": [9, 9]}))
        code, text = call("inverse", f)
        assert code == 2 and records(text)[0]["error"]["type"] == "TargetNotInterior"


class TestMalformed:
    def test_kind_mismatch(self):
        code, text = call("inverse", INSTANCES / "tests1_2.json")
        assert code == 2 and records(text)[0]["error"]["type"] == "MalformedInstance"

    def test_missing_file(self, tmp_path):
        code, text = call("solve", tmp_path / "nope.json")
        assert code == 2

    def test_bad_json(self, tmp_path):
        f = tmp_path / "bad.json"
        f.write_text("[{")
        code, text = call("solve", f)
        (rec,) = records(text)
        assert code == 2 and rec["status"] == "error"

    def test_one_bad_item_does_not_hide_others(self, tmp_path):
        f = tmp_path / "mixed.json"
        good = json.loads((INSTANCES / "tests1_2.json").read_text())
        f.write_text(json.dumps([good, {"kind": "direct2d", "anchors": []}]))
        code, text = call("solve", f)
        recs = records(text)
        assert code == 2
        assert [r["status"] for r in recs] == ["ok", "error"]


def test_stdin(monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO((INSTANCES / "tests1_2.json").read_text()))
    code, text = call("solve", "-")
    assert code == 0 and records(text)[0]["source"] == "-#0"


class TestVerify:
    @pytest.mark.parametrize("kind", ["direct2d", "inverse2d", "inverse3d"])
    def test_random(self, kind):
        code, text = call("verify", "--random", 20, "--seed", 3, "--kind", kind)
        recs = records(text)
        assert code == 0 and len(recs) == 20
        assert all(r["oracle"]["passed"] for r in recs)

    def test_files_of_mixed_kinds(self):
        code, text = call("verify", INSTANCES / "batch.json", INSTANCES / "inverse_2_3_4.json",
                          INSTANCES / "tetra.json")
        assert code == 0 and len(records(text)) == 5

    def test_nothing_to_do(self):
        code, text = call("verify")
        assert code == 2

    def test_random_generator_is_seeded(self):
        a = [i.to_dict() for i in random_instances(5, "inverse2d", 11)]
        assert a == [i.to_dict() for i in random_instances(5, "inverse2d", 11)]


class TestCorpus:
    def test_all_pass(self):
        code, text = call("corpus")
        assert code == 0
        assert text.splitlines()[-1] == "9/9 fixtures passed"

    def test_json(self):
        code, text = call("corpus", "--json")
        assert code == 0
        recs = records(text)
        assert len(recs) == 9 and all(r["passed"] for r in recs)


def test_console_script_exit_code():
    proc = subprocess.run(
        [sys.executable, "-m", "torricelli", "solve", str(INSTANCES / "collinear.json")],
        capture_output=True, text=True,
    )
    assert proc.returncode == 2
    assert json.loads(proc.stdout)["error"]["type"] == "CollinearAnchors"
