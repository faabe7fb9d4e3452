import json

from trackforms.cli import main

from conftest import unorientable_even_track


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_triangulate_writes_file(tmp_path, capsys):
    out = tmp_path / "torus.json"
    code, _, _ = run(capsys, "triangulate", "-g", "1", "-s", "1", "--out", str(out))
    assert code == 0
    data = json.loads(out.read_text())
    assert data["triangles"] == 2
    assert data["edges"] == 3


def test_triangulate_rejects_bad_signature(capsys):
    code, _, err = run(capsys, "triangulate", "-g", "0", "-s", "1")
    assert code == 2
    assert "no ideal triangulation" in err


def test_triangulate_sphere_three_punctures(capsys):
    code, out, _ = run(capsys, "triangulate", "-g", "0", "-s", "3")
    assert code == 0
    data = json.loads(out)
    assert data["triangles"] == 2 and data["edges"] == 3


def test_verify_structure_from_file(tmp_path, capsys):
    tri_path = tmp_path / "tri.json"
    run(capsys, "triangulate", "-g", "1", "-s", "1", "--out", str(tri_path))
    code, out, _ = run(capsys, "verify-structure", "--input", str(tri_path))
    assert code == 0
    report = json.loads(out)
    assert report["pass"] is True
    assert report["computed_blocks"] == [1]
    assert report["nullity"] == 1


def test_verify_structure_genus_two(capsys):
    code, out, _ = run(capsys, "verify-structure", "-g", "2", "-s", "1")
    assert code == 0
    report = json.loads(out)
    assert report["computed_blocks"] == [1, 1, 2, 2]
    assert report["eta_kernel_match"] is True


def test_verify_structure_track_fixture(tmp_path, capsys):
    path = tmp_path / "track.json"
    path.write_text(json.dumps(unorientable_even_track().to_json_dict()))
    code, out, _ = run(capsys, "verify-structure", "--input", str(path))
    assert code == 0
    report = json.loads(out)
    assert report["case"] == "all regions even-spiked, non-orientable"
    assert report["pass"] is True


def test_verify_structure_rejects_malformed(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"whatever": 1}))
    code, _, err = run(capsys, "verify-structure", "--input", str(path))
    assert code == 2
    assert "error" in err


def test_rep_smoke(capsys):
    code, out, _ = run(capsys, "rep", "-g", "1", "-s", "1", "--N", "3", "--seed", "42")
    assert code == 0
    report = json.loads(out)
    assert report["dim"] == 3
    assert report["pass"] is True
    assert report["seed"] == 42


def test_rep_four_punctures(capsys):
    code, out, _ = run(capsys, "rep", "-g", "0", "-s", "4", "--N", "5")
    assert code == 0
    assert json.loads(out)["dim"] == 5


def test_rep_rejects_inconsistent_h(tmp_path, capsys):
    spec = {
        "genus": 0, "punctures": 3, "N": 3, "omega_index": 0,
        "zeta": {"alphas": [], "betas": [],
                 "etas": [[1.0, 0.0], [1.0, 0.0], [1.0, 0.0]]},
        "h": [[1.0, 0.0], [1.0, 0.0], [0.5, 0.5]],
    }
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(spec))
    code, _, err = run(capsys, "rep", "--input", str(path))
    assert code == 2
    assert "h[2]" in err


def test_rep_accepts_explicit_spec(tmp_path, capsys):
    spec = {
        "genus": 0, "punctures": 3, "N": 3, "omega_index": 0,
        "zeta": {"alphas": [], "betas": [],
                 "etas": [[1.0, 0.0], [1.0, 0.0], [1.0, 0.0]]},
        "h": [[1.0, 0.0], [1.0, 0.0], [1.0, 0.0]],
    }
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(spec))
    code, out, _ = run(capsys, "rep", "--input", str(path))
    assert code == 0
    report = json.loads(out)
    assert report["dim"] == 1 and report["pass"] is True


def test_chebyshev_contains_fixed_point(capsys):
    code, out, _ = run(capsys, "chebyshev", "--y", "2", "--n", "7")
    assert code == 0
    data = json.loads(out)
    assert len(data["solutions"]) == 7
    assert any(abs(complex(re, im) - 2) < 1e-9 for re, im in data["solutions"])
    assert max(data["residuals"]) < 1e-9


def test_chebyshev_negative_two_odd(capsys):
    code, out, _ = run(capsys, "chebyshev", "--y", "-2", "--n", "3")
    assert code == 0
    data = json.loads(out)
    assert any(abs(complex(re, im) + 2) < 1e-9 for re, im in data["solutions"])


def test_chebyshev_rejects_bad_n(capsys):
    code, _, err = run(capsys, "chebyshev", "--y", "1", "--n", "0")
    assert code == 2


def test_outputs_are_reproducible(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    for path in (a, b):
        code, _, _ = run(capsys, "rep", "-g", "1", "-s", "1", "--N", "3",
                         "--seed", "7", "--out", str(path))
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
