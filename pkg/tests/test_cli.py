import json

import pytest

from src.cli import main
from src.core.config import settings
from src.services import group_service


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_group_s3(capsys):
    code, out, _ = run(capsys, "group", "--builtin", "s3")
    assert code == 0
    report = json.loads(out)
    assert [c["size"] for c in report["classes"]] == [1, 2, 3]
    assert [i["label"] for i in report["character_table"]["irreps"]] == ["1", "-1", "2"]


def test_group_z2(capsys):
    code, out, _ = run(capsys, "group", "--builtin", "z2")
    assert code == 0
    assert [c["size"] for c in json.loads(out)["classes"]] == [1, 1]


def test_group_from_file(capsys, tmp_path):
    q8 = group_service.quaternion_group()
    path = tmp_path / "q8.json"
    path.write_text(json.dumps({"cayley": q8.cayley.tolist()}))
    code, out, _ = run(capsys, "group", "--file", str(path))
    assert code == 0
    assert len(json.loads(out)["classes"]) == 5


def test_group_text(capsys):
    code, out, _ = run(capsys, "group", "--builtin", "s3", "--format", "text")
    assert code == 0
    assert out.startswith("s3: order 6, 3 classes")


def test_unknown_builtin_exit_code(capsys):
    code, out, err = run(capsys, "group", "--builtin", "a5")
    assert code == 2
    assert out == ""
    assert "Unknown built-in group" in err


def test_group_source_required(capsys):
    code, _, err = run(capsys, "anyons")
    assert code == 2
    assert "exactly one of --builtin or --file" in err


def test_both_group_sources_rejected(capsys, tmp_path):
    code, _, _ = run(capsys, "anyons", "--builtin", "s3", "--file", str(tmp_path / "g.json"))
    assert code == 2


def test_tolerance_range(capsys):
    code, _, _ = run(capsys, "verify", "--builtin", "z2", "--tolerance", "0.1")
    assert code == 2


def test_bad_arguments(capsys):
    code, _, _ = run(capsys, "spectrum", "--builtin", "z2", "--mode", "fastest")
    assert code == 2


def test_anyons_s3(capsys):
    code, out, _ = run(capsys, "anyons", "--builtin", "s3")
    rows = json.loads(out)
    assert code == 0
    assert len(rows) == 8
    assert rows[-1]["label"] == "H"
    assert rows[-1]["irrep"] == "omegabar"
    assert rows[-1]["quantum_dimension"] == 2
    assert rows[-1]["type"] == "dyon"


def test_anyons_z3(capsys):
    _, out, _ = run(capsys, "anyons", "--builtin", "z3")
    rows = json.loads(out)
    assert len(rows) == 9
    assert {r["quantum_dimension"] for r in rows} == {1}


def test_verify_z2(capsys):
    code, out, _ = run(capsys, "verify", "--builtin", "z2")
    report = json.loads(out)
    assert code == 0
    assert report["passed"] is True
    commutation = next(c for c in report["checks"] if c["name"] == "commutation")
    assert commutation["max_deviation"] == 0


def test_verify_single_check(capsys):
    code, out, _ = run(capsys, "verify", "--builtin", "s3", "--check", "got-swap")
    report = json.loads(out)
    assert code == 0
    assert len(report["checks"]) == 1
    assert len(report["checks"][0]["details"]["pairs"]) == 9


def test_verify_tolerance_floor(capsys):
    code, out, _ = run(capsys, "verify", "--builtin", "s3", "--check", "traces", "--tolerance", "1e-30")
    # trace checks never tighten below 1e-8
    assert code == 0
    assert json.loads(out)["checks"][0]["tolerance"] == 1e-8


def test_verify_capacity_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(settings, "MAX_HILBERT_DIM", 1000)
    code, _, err = run(capsys, "verify", "--builtin", "s3", "--check", "commutation")
    assert code == 3
    assert "exceeds" in err


def test_toric_code_spectrum(capsys):
    code, out, _ = run(capsys, "spectrum", "--builtin", "z2", "--torus", "2x2", "--kitaev")
    report = json.loads(out)
    assert code == 0
    assert report["ground_degeneracy"] == 4
    assert [level["energy"] for level in report["levels"]] == [-8.0, -4.0, 0.0, 4.0, 8.0]


def test_site_spectrum_with_zero_couplings(capsys, tmp_path):
    path = tmp_path / "zeros.json"
    path.write_text(json.dumps({"alpha": {"1": 0, "-1": 0, "2": 0}, "beta": {"e": 0, "x": 0, "y": 0}}))
    code, out, _ = run(capsys, "spectrum", "--builtin", "s3", "--site", "--couplings", str(path))
    report = json.loads(out)
    assert code == 0
    assert report["levels"] == [{"energy": 0.0, "multiplicity": 6**6, "sectors": []}]


def test_site_spectrum_with_masses(capsys, tmp_path):
    path = tmp_path / "masses.json"
    path.write_text(json.dumps({"1": 0, "e": 1, "m": 2, "eps": 3}))
    code, out, _ = run(capsys, "spectrum", "--builtin", "z2", "--site", "0", "--masses", str(path))
    report = json.loads(out)
    assert code == 0
    assert [level["multiplicity"] for level in report["levels"]] == [16, 16, 16, 16]
    assert report["levels"][3]["sectors"] == ["1/-1"]


def test_incomplete_couplings_exit_code(capsys, tmp_path):
    path = tmp_path / "partial.json"
    path.write_text(json.dumps({"alpha": {"1": 0}, "beta": {"e": 0}}))
    code, _, err = run(capsys, "spectrum", "--builtin", "s3", "--site", "--couplings", str(path))
    assert code == 2
    assert "Incomplete couplings" in err


def test_spectrum_needs_a_hamiltonian(capsys):
    code, _, _ = run(capsys, "spectrum", "--builtin", "z2")
    assert code == 2


def test_spectrum_dump(capsys, tmp_path):
    dump = tmp_path / "h.txt"
    code, _, _ = run(capsys, "spectrum", "--builtin", "z2", "--site", "--kitaev", "--dump", str(dump))
    assert code == 0
    header = dump.read_text().splitlines()[0]
    assert header.startswith("64 ")


def test_diagram(capsys, s3_couplings_file):
    code, out, _ = run(capsys, "diagram", "--builtin", "s3", "--couplings", str(s3_couplings_file))
    diagram = json.loads(out)
    assert code == 0
    assert len(diagram["cells"]) == 9
    assert [c["energy"] for c in diagram["cells"]] == [0, 1, 2, 3, 4, 5, 5, 6, 7]
    assert diagram["cells"][2]["label"] == "C₁⊕C₂"


def test_diagram_dot(capsys):
    code, out, _ = run(capsys, "diagram", "--builtin", "s3", "--format", "dot")
    assert code == 0
    assert out.count("->") == 11


def test_lattice(capsys):
    code, out, _ = run(capsys, "lattice", "--builtin", "s3", "--torus", "2x3")
    data = json.loads(out)
    assert code == 0
    assert len(data["edges"]) == 12
    assert data["site_hilbert_share"] == pytest.approx(36)


def test_json_output_is_stable(capsys):
    _, first, _ = run(capsys, "anyons", "--builtin", "d4")
    _, second, _ = run(capsys, "anyons", "--builtin", "d4")
    assert first == second
