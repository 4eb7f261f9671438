import json
import math

import numpy as np
import pytest

from spinwedge import cli, graph_to_json, path_graph


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_wedge_dot_path6_k2(capsys):
    code, out, _ = run(capsys, "wedge", "--graph", "path:6", "-k", "2", "--format", "dot")
    assert code == 0
    assert out.startswith("graph {")
    # 15 two-digit subset names on six vertices
    names = {f"{i}{j}" for i in range(6) for j in range(i + 1, 6)}
    assert all(name in out for name in names)


def test_wedge_complete4_k2_json_signs(capsys):
    code, out, _ = run(capsys, "wedge", "--graph", "complete:4", "-k", "2")
    assert code == 0
    data = json.loads(out)
    assert data["n"] == 6
    assert len(data["edges"]) == 12
    assert sorted(data["signs"]) == ["0-2", "0-4", "1-5", "2-5"]


def test_wedge_bad_k_exits_2(capsys):
    code, _, err = run(capsys, "wedge", "--graph", "path:3", "-k", "5")
    assert code == 2
    assert "error" in err.lower()


def test_wedge_k_all_rejected(capsys):
    code, _, _ = run(capsys, "wedge", "--graph", "path:3", "-k", "all")
    assert code == 2


def test_spectrum_path3_k1(capsys):
    code, out, _ = run(capsys, "spectrum", "--graph", "path:3", "--model", "xy", "-k", "1")
    assert code == 0
    data = json.loads(out)
    assert data["blocks"][0]["dim"] == 3
    assert np.allclose(data["blocks"][0]["spectrum"]["values"], [-math.sqrt(2), 0.0, math.sqrt(2)], atol=1e-9)


def test_spectrum_complete4_all_ground_energy(capsys):
    code, out, _ = run(capsys, "spectrum", "--graph", "complete:4", "--model", "xy", "-k", "all")
    assert code == 0
    data = json.loads(out)
    assert data["ground_energy"] == pytest.approx(-2.0, abs=1e-9)
    assert [b["dim"] for b in data["blocks"]] == [1, 4, 6, 4, 1]
    assert len(data["union"]["values"]) == 16


def test_spectrum_field_shift(capsys):
    _, plain, _ = run(capsys, "spectrum", "--graph", "path:4", "--model", "heis", "-k", "all")
    _, shifted, _ = run(capsys, "spectrum", "--graph", "path:4", "--model", "heis", "-k", "all", "--field", "0.5")
    a, b = json.loads(plain), json.loads(shifted)
    for block_a, block_b in zip(a["blocks"], b["blocks"]):
        k = block_a["k"]
        delta = 0.5 * (4 - 2 * k)
        assert np.allclose(
            np.array(block_b["spectrum"]["values"]) - np.array(block_a["spectrum"]["values"]),
            delta,
            atol=1e-9,
        )


def test_spectrum_csv(capsys):
    code, out, _ = run(capsys, "spectrum", "--graph", "path:3", "-k", "1", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "k,index,value"
    assert len(lines) == 4


def test_closed_form_path_6_3(capsys):
    code, out, _ = run(capsys, "closed-form", "path", "--n", "6", "-k", "3", "--check")
    assert code == 0
    data = json.loads(out)
    assert data["blocks"][0]["dim"] == 20
    assert data["cross_check"]["equal"] is True
    assert data["cross_check"]["max_gap"] <= 1e-9


def test_closed_form_complete_heis_distinct(capsys):
    code, out, _ = run(capsys, "closed-form", "complete", "--n", "4", "--model", "heis")
    assert code == 0
    data = json.loads(out)
    distinct = {v for v, _ in data["union"]["multiplicity_collapsed"]}
    assert distinct == {0.0, 4.0, 6.0}


def test_closed_form_cycle_exits_2(capsys):
    code, _, _ = run(capsys, "closed-form", "cycle", "--n", "5")
    assert code == 2


def test_closed_form_path_heis_exits_2(capsys):
    code, _, _ = run(capsys, "closed-form", "path", "--n", "5", "--model", "heis")
    assert code == 2


def test_evolve_p2_transfer(capsys):
    code, out, _ = run(
        capsys, "evolve", "--graph", "path:2", "--model", "xy", "-k", "1",
        "--from", "0", "--to", "1", "--times", "1.5708",
    )
    assert code == 0
    series = json.loads(out)
    assert series[0]["t"] == pytest.approx(1.5708)
    assert series[0]["probabilities"][0] == pytest.approx(1.0, abs=1e-9)


def test_evolve_time_zero_is_delta(capsys):
    code, out, _ = run(capsys, "evolve", "--graph", "path:4", "-k", "1", "--from", "2", "--times", "0")
    assert code == 0
    series = json.loads(out)
    assert np.allclose(series[0]["probabilities"], [0.0, 0.0, 1.0, 0.0], atol=1e-12)


def test_evolve_subset_gamma2_norm_preserved(capsys):
    code, out, _ = run(
        capsys, "evolve", "--graph", "path:4", "-k", "2", "--subset", "0,1", "--times", "0.5,1,5",
    )
    assert code == 0
    for row in json.loads(out):
        assert sum(row["probabilities"]) == pytest.approx(1.0, abs=1e-9)


def test_evolve_csv_columns(capsys):
    code, out, _ = run(
        capsys, "evolve", "--graph", "path:3", "-k", "1", "--from", "0", "--times", "0.5,1.5", "--format", "csv",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "t,p_0,p_1,p_2"
    assert len(lines) == 3


def test_evolve_invalid_subset_exits_2(capsys):
    code, _, _ = run(capsys, "evolve", "--graph", "path:4", "-k", "2", "--subset", "0,9", "--times", "1")
    assert code == 2
    code, _, _ = run(capsys, "evolve", "--graph", "path:4", "-k", "2", "--subset", "0", "--times", "1")
    assert code == 2


def test_evolve_requires_initial_state(capsys):
    code, _, _ = run(capsys, "evolve", "--graph", "path:4", "-k", "1", "--times", "1")
    assert code == 2


def test_export_graph_json_roundtrip(tmp_path, capsys):
    out_file = tmp_path / "graph.json"
    code, _, _ = run(capsys, "export", "--graph", "complete:4", "-o", str(out_file))
    assert code == 0
    data = json.loads(out_file.read_text())
    assert data["n"] == 4 and len(data["edges"]) == 6


def test_export_wedge_dot(tmp_path, capsys):
    out_file = tmp_path / "wedge.dot"
    code, _, _ = run(capsys, "export", "--graph", "path:6", "-k", "2", "--format", "dot", "-o", str(out_file))
    assert code == 0
    assert out_file.read_text().startswith("graph {")


def test_graph_file_input(tmp_path, capsys):
    gfile = tmp_path / "g.json"
    gfile.write_text(graph_to_json(path_graph(3)))
    code, out, _ = run(capsys, "spectrum", "--graph", str(gfile), "-k", "1")
    assert code == 0
    assert json.loads(out)["n"] == 3


def test_missing_graph_file_exits_2(capsys):
    code, _, _ = run(capsys, "spectrum", "--graph", "/nonexistent/g.json", "-k", "1")
    assert code == 2


def test_verify_single_graph_passes(capsys):
    code, out, _ = run(capsys, "verify", "--graph", "path:4", "--random-states", "3")
    assert code == 0
    assert "[PASS]" in out and "0 failed" in out


def test_verify_corrupted_graph_json_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 3, "edges": [[0,')
    code, _, err = run(capsys, "verify", "--graph", str(bad))
    assert code == 2
    assert "error" in err.lower()


def test_unknown_command_exits_2(capsys):
    assert cli.main(["frobnicate"]) == 2


def test_missing_required_flag_exits_2(capsys):
    assert cli.main(["wedge", "--graph", "path:3"]) == 2


def test_output_written_atomically(tmp_path, capsys):
    out_file = tmp_path / "spec.json"
    code, _, _ = run(capsys, "spectrum", "--graph", "path:3", "-k", "1", "-o", str(out_file))
    assert code == 0
    data = json.loads(out_file.read_text())
    assert data["graph"] == "path:3"
    leftovers = [p for p in tmp_path.iterdir() if p.name.startswith(".spinwedge-")]
    assert leftovers == []
