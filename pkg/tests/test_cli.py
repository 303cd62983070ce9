import json
import subprocess
import sys

import pytest

from colourdepth import formats
from colourdepth.cli import main
from colourdepth.octahedral import Umbrella, expand_umbrella, random_umbrella_combination
from colourdepth.rng import stream


def write(path, doc):
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.fixture
def d1_config(tmp_path):
    return write(tmp_path / "d1.json", {"d": 1, "colours": [[["-1"], ["1"]], [["-2"], ["2"]]]})


@pytest.fixture
def umbrella_file(tmp_path):
    system = expand_umbrella(Umbrella(0, (0, 0)), (3, 3, 3))
    return write(tmp_path / "u.json", formats.system_to_doc(system))


def run_json(capsys, argv):
    code = main(argv + ["--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_depth_prints_depth(capsys, d1_config):
    assert main(["depth", d1_config]) == 0
    captured = capsys.readouterr()
    assert "depth: 2" in captured.out
    assert "manifest:" in captured.err


def test_depth_emit_system_then_check(capsys, tmp_path, d1_config):
    out = tmp_path / "sys.json"
    assert main(["depth", d1_config, "--emit-system", str(out)]) == 0
    assert formats.read_system(out).edges == {(0, 1), (1, 0)}
    assert main(["check", str(out)]) == 0


def test_depth_malformed_rational(capsys, tmp_path):
    path = write(tmp_path / "bad.json", {"d": 1, "colours": [[["-1"], ["1/0"]], [["-2"], ["2"]]]})
    assert main(["depth", path]) == 2
    assert "colours[0][1][0]" in capsys.readouterr().err


def test_depth_dimension_mismatch(capsys, tmp_path):
    path = write(tmp_path / "bad.json", {"d": 2, "colours": [[["1"], ["2"]], [["1"]], [["1"]]]})
    assert main(["depth", path]) == 2


def test_depth_missing_file(capsys, tmp_path):
    assert main(["depth", str(tmp_path / "nope.json")]) == 2


def test_depth_json_manifest(capsys, d1_config):
    code, doc = run_json(capsys, ["depth", d1_config])
    assert code == 0
    assert doc["depth"] == 2
    m = doc["manifest"]
    assert set(m) == {"command", "input_digest", "seed", "version", "elapsed_seconds", "outcome"}
    assert m["outcome"]["exit_code"] == 0


def test_check_empty(capsys, tmp_path):
    path = write(tmp_path / "e.json", {"n": 3, "class_sizes": [3, 3, 3], "edges": []})
    assert main(["check", path]) == 0


def test_check_single_edge_prints_odd_box(capsys, tmp_path):
    path = write(tmp_path / "e.json", {"n": 3, "class_sizes": [3, 3, 3], "edges": [[1, 1, 1]]})
    code, doc = run_json(capsys, ["check", path])
    assert code == 1
    assert doc["odd_box"] == [[1, 2], [1, 2], [1, 2]]
    assert doc["odd_box_edges"] == 1


def test_check_umbrella(capsys, umbrella_file):
    assert main(["check", umbrella_file]) == 0


def test_check_parse_failure(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["check", str(bad)]) == 2


def test_decompose_umbrella_singleton(capsys, umbrella_file):
    code, doc = run_json(capsys, ["decompose", umbrella_file, "--mode", "umbrella"])
    assert code == 0
    assert doc["decomposition"] == [{"colour": 1, "transversal": [1, 1]}]


def test_decompose_empty_suitable_is_input_error(capsys, tmp_path):
    path = write(tmp_path / "e.json", {"n": 3, "class_sizes": [3, 3, 3], "edges": []})
    assert main(["decompose", path, "--mode", "suitable"]) == 2


def test_decompose_non_octahedral(capsys, tmp_path):
    path = write(tmp_path / "e.json", {"n": 3, "class_sizes": [3, 3, 3], "edges": [[1, 1, 1]]})
    assert main(["decompose", path]) == 1


def test_decompose_unequal_sizes(capsys, tmp_path):
    path = write(tmp_path / "e.json", {"n": 2, "class_sizes": [2, 3], "edges": []})
    assert main(["decompose", path]) == 2


@pytest.mark.parametrize("mode", ["suitable", "umbrella"])
def test_decompose_random_self_check(capsys, tmp_path, mode):
    rng = stream(77, 0)
    for t in range(5):
        system = random_umbrella_combination((4, 4, 4, 4), 5, rng)
        if not system:
            continue
        path = write(tmp_path / f"r{t}.json", formats.system_to_doc(system))
        out = tmp_path / f"dec{t}.json"
        code, doc = run_json(capsys, ["decompose", path, "--mode", mode, "--output", str(out)])
        assert code == 0
        assert all(doc["checks"].values())
        assert json.loads(out.read_text()) == doc["decomposition"]


def test_verify_bound_n2(capsys):
    code, doc = run_json(capsys, ["verify", "--mode", "bound", "--n", "2"])
    assert code == 0
    assert doc["cases"] == 8
    assert doc["stats"]["exhaustive"]
    assert [(m["k"], m["min"]) for m in doc["stats"]["minimums"]] == [(1, 2), (2, 2)]


def test_verify_depth_floor_d2(capsys):
    code, doc = run_json(capsys, ["verify", "--mode", "depth-floor", "--d", "2", "--trials", "500", "--seed", "42"])
    assert code == 0
    assert doc["violations"] == []
    assert doc["stats"]["min_depth"] >= 5


def test_verify_span_equiv_n3(capsys):
    code, doc = run_json(capsys, ["verify", "--mode", "span-equiv", "--n", "3", "--cases", "2000"])
    assert code == 0
    assert doc["cases"] == 2000
    assert doc["violations"] == []


def test_verify_missing_parameter(capsys):
    assert main(["verify", "--mode", "bound"]) == 2


def test_verify_resource_limit(capsys):
    code, doc = run_json(capsys, ["verify", "--mode", "bound", "--n", "8"])
    assert code == 3
    assert doc["partial"]


def test_search_min_span(capsys):
    code, doc = run_json(capsys, ["search-min", "--n", "2"])
    assert code == 0
    assert doc["rank"] == 3


def test_search_min_depth(capsys, tmp_path):
    out = tmp_path / "best.json"
    code, doc = run_json(capsys, ["search-min", "--d", "1", "--iterations", "100", "--emit-config", str(out)])
    assert code == 0
    assert doc["depth"] == 2
    assert formats.read_config(out).d == 1


def test_search_min_needs_exactly_one_target(capsys):
    assert main(["search-min"]) == 2
    assert main(["search-min", "--n", "2", "--d", "1"]) == 2


def test_reports_deterministic_apart_from_timing(capsys):
    argv = ["verify", "--mode", "depth-floor", "--d", "2", "--trials", "30", "--seed", "5"]
    _, a = run_json(capsys, argv)
    _, b = run_json(capsys, argv + ["--threads", "2"])
    for doc in (a, b):
        doc["manifest"].pop("elapsed_seconds")
    assert a["manifest"]["input_digest"] == b["manifest"]["input_digest"]
    assert a == b


def test_usage_error_exit_code(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["depth"])
    assert exc.value.code == 2


def test_module_entry_point(tmp_path, d1_config):
    proc = subprocess.run(
        [sys.executable, "-m", "colourdepth.cli", "depth", d1_config], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert "depth: 2" in proc.stdout
