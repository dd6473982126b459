"""Command-line interface: exit codes, report files, plan documents."""
import json
import subprocess
import sys

import pytest

from strips_operad.cli import main


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# --- check -----------------------------------------------------------------------

def test_check_passes_and_prints_report(capsys):
    code, out, err = run(["check", "intervals", "--seed", "3",
                          "--cases", "20"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"] is True
    assert doc["cases_run"] == 20
    assert doc["seed"] == 3
    assert doc["failures"] == []


def test_check_mutate_fails_with_exit_1(capsys):
    code, out, err = run(["check", "intervals", "--seed", "3", "--cases", "5",
                          "--mutate"], capsys)
    assert code == 1
    doc = json.loads(out)
    assert doc["ok"] is False
    assert doc["failures"]


@pytest.mark.parametrize("target", ["strips", "trees", "sheets"])
def test_check_all_targets(tmp_path, capsys, target):
    out_file = tmp_path / "report.json"
    code, _, _ = run(["check", target, "--seed", "5", "--cases", "5",
                      "--out", str(out_file)], capsys)
    assert code == 0
    doc = json.loads(out_file.read_text())
    assert doc["ok"] is True
    assert doc["instance"]


def test_check_trees_exhaustive(capsys):
    code, out, _ = run(["check", "trees", "--exhaustive", "--max-arity", "2"],
                       capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["mode"] == "exhaustive"


def test_check_reports_are_byte_identical(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    for path in (a, b):
        code, _, _ = run(["check", "strips", "--seed", "9", "--cases", "10",
                          "--out", str(path)], capsys)
        assert code == 0
    assert a.read_bytes() == b.read_bytes()


def test_check_seed_from_environment(tmp_path, capsys, monkeypatch):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    monkeypatch.setenv("STRIPS_OPERAD_SEED", "123")
    code, _, _ = run(["check", "intervals", "--cases", "5",
                      "--out", str(a)], capsys)
    assert code == 0
    monkeypatch.delenv("STRIPS_OPERAD_SEED")
    code, _, _ = run(["check", "intervals", "--seed", "123", "--cases", "5",
                      "--out", str(b)], capsys)
    assert code == 0
    assert a.read_bytes() == b.read_bytes()


def test_check_rejects_unknown_target(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["check", "pretzels"])
    assert exc.value.code == 2


# --- enumerate ----------------------------------------------------------------------

def test_enumerate_json(capsys):
    code, out, _ = run(["enumerate", "4"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["leaves"] == 4
    assert doc["total"] == 11
    assert doc["f_vector"] == [5, 5, 1]
    assert len(doc["trees"]) == 11


def test_enumerate_out_of_range(capsys):
    code, _, err = run(["enumerate", "9"], capsys)
    assert code == 2
    assert err
    code, _, _ = run(["enumerate", "1"], capsys)
    assert code == 2


def test_enumerate_dot(capsys):
    code, out, _ = run(["enumerate", "3", "--format", "dot"], capsys)
    assert code == 0
    assert out.startswith("digraph")
    assert "(**)*" in out or "((**)*)" in out.replace(" ", "")


def test_enumerate_svg(tmp_path, capsys):
    path = tmp_path / "hasse.svg"
    code, _, _ = run(["enumerate", "4", "--format", "svg",
                      "--out", str(path)], capsys)
    assert code == 0
    assert path.read_text().lstrip().startswith("<svg")


def test_enumerate_svg_range_is_tighter(capsys):
    code, _, err = run(["enumerate", "6", "--format", "svg"], capsys)
    assert code == 2


# --- compose -------------------------------------------------------------------------

INTERVALS_PLAN = {
    "kind": "intervals",
    "outer": {"embeddings": [{"a": "1/2", "c": "1/4"}]},
    "inners": [{"embeddings": [{"a": "1/3", "c": "0"},
                               {"a": "1/3", "c": "2/3"}]}],
}


def test_compose_intervals_hand_example(tmp_path, capsys):
    plan = tmp_path / "plan.json"
    plan.write_text(json.dumps(INTERVALS_PLAN))
    code, out, _ = run(["compose", str(plan)], capsys)
    assert code == 0
    doc = json.loads(out)
    embs = doc["embeddings"]
    assert embs[0] == {"a": "1/6", "c": "1/4"}
    assert embs[1] == {"a": "1/6", "c": "7/12"}


def test_compose_rejects_invalid_input(tmp_path, capsys):
    bad = dict(INTERVALS_PLAN)
    bad["outer"] = {"embeddings": [{"a": "2", "c": "0"}]}
    plan = tmp_path / "plan.json"
    plan.write_text(json.dumps(bad))
    code, _, err = run(["compose", str(plan)], capsys)
    assert code == 2
    assert "error" in err


def test_compose_strips_with_file_indirection(tmp_path, capsys):
    base = {"embeddings": [{"a": "1/2", "c": "1/4"}]}
    (tmp_path / "base.json").write_text(json.dumps(base))
    plan = {
        "kind": "strips",
        "outer": {
            "shape": [1],
            "base": {"$file": "base.json"},
            "rects": [[{"a": "1/2", "c": "1/4", "b": "1/2", "d": "1/4"}]],
        },
        "blocks": [{
            "base": {"embeddings": [{"a": "1", "c": "0"}]},
            "configs": [{
                "shape": [2],
                "base": {"embeddings": [{"a": "1", "c": "0"}]},
                "rects": [[{"a": "1", "c": "0", "b": "1/4", "d": "0"},
                           {"a": "1", "c": "0", "b": "1/2", "d": "1/2"}]],
            }],
        }],
    }
    path = tmp_path / "plan.json"
    path.write_text(json.dumps(plan))
    svg = tmp_path / "out.svg"
    code, out, _ = run(["compose", str(path), "--svg", str(svg)], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["shape"] == [2]
    assert doc["rects"][0][0] == {"a": "1/2", "c": "1/4",
                                  "b": "1/8", "d": "1/4"}
    assert svg.read_text().lstrip().startswith("<svg")


def test_compose_missing_file_is_a_usage_error(capsys):
    code, _, err = run(["compose", "/nonexistent/plan.json"], capsys)
    assert code == 2
    assert "error" in err


def test_compose_unknown_kind(tmp_path, capsys):
    plan = tmp_path / "plan.json"
    plan.write_text(json.dumps({"kind": "widgets"}))
    code, _, err = run(["compose", str(plan)], capsys)
    assert code == 2


def test_compose_fiber_product_mismatch(tmp_path, capsys):
    plan = {
        "kind": "strips",
        "outer": {
            "shape": [2],
            "base": {"embeddings": [{"a": "1/2", "c": "1/4"}]},
            "rects": [[{"a": "1/2", "c": "1/4", "b": "1/8", "d": "1/8"},
                       {"a": "1/2", "c": "1/4", "b": "1/8", "d": "1/2"}]],
        },
        "blocks": [{
            "base": {"embeddings": [{"a": "1", "c": "0"}]},
            "configs": [
                {"shape": [1],
                 "base": {"embeddings": [{"a": "1", "c": "0"}]},
                 "rects": [[{"a": "1", "c": "0", "b": "1/4", "d": "0"}]]},
                {"shape": [1],
                 "base": {"embeddings": [{"a": "1/2", "c": "0"}]},
                 "rects": [[{"a": "1/2", "c": "0", "b": "1/4", "d": "0"}]]},
            ],
        }],
    }
    path = tmp_path / "plan.json"
    path.write_text(json.dumps(plan))
    code, _, err = run(["compose", str(path)], capsys)
    assert code == 2
    assert "error" in err


# --- render ---------------------------------------------------------------------------

def test_render_intervals(tmp_path, capsys):
    doc = {"embeddings": [{"a": "1/4", "c": "0"}, {"a": "1/4", "c": "1/2"}]}
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(doc))
    out = tmp_path / "cfg.svg"
    code, _, _ = run(["render", str(path), "--out", str(out)], capsys)
    assert code == 0
    assert out.read_text().lstrip().startswith("<svg")


def test_render_strip_and_sheet(tmp_path, capsys):
    from strips_operad import serialize as ser
    from strips_operad.strips import random_strip
    from strips_operad.sheets import random_pointed_map, random_sheet_element
    import random as _r

    strip_doc = ser.strip_to_json(random_strip((1, 2), seed=3))
    p1 = tmp_path / "strip.json"
    p1.write_text(json.dumps(strip_doc))
    code, out, _ = run(["render", str(p1)], capsys)
    assert code == 0 and out.lstrip().startswith("<svg")

    rng = _r.Random(0)
    f = random_pointed_map(rng, 1, 2)
    elem_doc = ser.sheet_element_to_json(random_sheet_element(f, rng))
    p2 = tmp_path / "elem.json"
    p2.write_text(json.dumps(elem_doc))
    code, out, _ = run(["render", str(p2)], capsys)
    assert code == 0 and out.lstrip().startswith("<svg")


def test_render_unknown_document(tmp_path, capsys):
    path = tmp_path / "junk.json"
    path.write_text(json.dumps({"widgets": 3}))
    code, _, err = run(["render", str(path)], capsys)
    assert code == 2


# --- console script ---------------------------------------------------------------------

def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "strips_operad.cli",
                           "check", "intervals", "--cases", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["ok"] is True
