import json
import subprocess
import sys
from fractions import Fraction

import pytest

from flexcycle import serialize
from flexcycle.butterfly import ButterflySpec, build_bundle
from flexcycle.catalog import octahedron
from flexcycle.cli import run
from flexcycle.coloring import LimitConfiguration
from flexcycle.mobius import OMEGA_INF
from flexcycle.polyhedron import EdgeLengths, Realization, induced_lengths

F = Fraction


@pytest.fixture
def files(tmp_path):
    P = octahedron()
    octa = tmp_path / "octa.json"
    octa.write_text(serialize.dumps(serialize.polyhedron_to_json(P)))
    sq = {e: 3 for e in P.edges}
    sq.update({(1, 2): 1, (3, 4): 1, (2, 3): 4, (1, 4): 4})
    lengths = tmp_path / "lengths.json"
    lengths.write_text(serialize.dumps(serialize.lengths_to_json(EdgeLengths.from_squared(sq))))
    return tmp_path, octa, lengths


def call(capsys, *argv):
    code = run([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_obstruct_single_edge(capsys, files):
    _, octa, lengths = files
    code, out, _ = call(capsys, "obstruct", "--edge", "1,2", octa, lengths)
    assert code == 0
    rep = serialize.obstruction_from_json(json.loads(out))
    assert rep.witness.cycle == (1, 2, 3, 4) and rep.witness.signs == (1, 1, -1, -1)
    assert serialize.dumps(serialize.obstruction_to_json(rep)) == out


def test_obstruct_scan(capsys, files):
    _, octa, lengths = files
    code, out, _ = call(capsys, "obstruct", octa, lengths)
    assert code == 0
    reports = serialize.scan_from_json(json.loads(out))
    assert len(reports) == 12
    assert serialize.dumps(serialize.scan_to_json(reports)) == out


def test_obstruct_without_witness_exits_one(capsys, tmp_path):
    P = octahedron()
    rho = Realization({1: (0, 0, 0), 2: (1, 0, 0), 3: (1, 2, 0), 4: (0, 3, 1), 5: (1, 1, 5), 6: (2, -1, -7)})
    path = tmp_path / "rho.json"
    path.write_text(serialize.dumps(serialize.realization_to_json(rho)))
    code, out, _ = call(capsys, "obstruct", "builtin:octahedron", path)
    assert code == 1
    assert all(r.witness is None for r in serialize.scan_from_json(json.loads(out)).values())


def test_validate(capsys, tmp_path, files):
    _, octa, _ = files
    code, out, _ = call(capsys, "validate", octa)
    assert code == 0 and json.loads(out)["edges"] == 12
    tri = tmp_path / "tri.json"
    tri.write_text('{"vertices": [1, 2, 3], "faces": [[1, 2, 3]]}')
    code, out, _ = call(capsys, "validate", tri)
    assert code == 1
    assert json.loads(out)["error"] == "EdgeFaceCountViolation"


def test_lengths_round_trip(capsys, tmp_path):
    rho = Realization({1: (0, 0, 0), 2: (1, 1, 0), 3: (2, 0, 0), 4: (1, -1, 0),
                       5: (1, 0, 1), 6: (1, 0, F(-3, 2))})
    path = tmp_path / "rho.json"
    path.write_text(serialize.dumps(serialize.realization_to_json(rho)))
    assert serialize.realization_from_json(json.loads(path.read_text())) == rho
    code, out, _ = call(capsys, "lengths", "builtin:octahedron", path)
    assert code == 0
    lam = serialize.lengths_from_json(json.loads(out))
    assert lam == induced_lengths(octahedron(), rho)
    assert lam.squared_of(1, 2) == 2
    code, out, _ = call(capsys, "lengths", "builtin:octahedron", path, "--format", "off")
    assert code == 0 and out.startswith("OFF\n6 8 12\n")


def test_butterfly_bundle(capsys, tmp_path, files):
    _, octa, _ = files
    argv = ["butterfly", "--cycle", "1,2,3,4", "--signs", "+,+,-,-", "--seed", "7", octa]
    code, out, _ = call(capsys, *argv)
    assert code == 0
    code2, out2, _ = call(capsys, *argv)
    assert out == out2
    data = json.loads(out)
    cert = serialize.signed_cycle_from_json(data["certificate"])
    assert cert.signed_sum().is_zero()
    assert cert.signs == (1, 1, -1, -1)

    spec = ButterflySpec(octahedron(), (1, 2, 3, 4), (1, 1, -1, -1), seed=7)
    b = build_bundle(spec)
    assert serialize.dumps(serialize.bundle_to_json(b)) == out
    assert serialize.limit_config_from_json(data["limit_configuration"]) == b.limit
    assert serialize.realization_from_json(data["realization"]) == b.realization
    assert serialize.lengths_from_json(data["lengths"]) == b.lengths
    assert serialize.samples_from_json(data) == list(b.samples)
    assert serialize.butterfly_spec_from_json(data["metadata"], octahedron()) == spec

    bundle = tmp_path / "bundle.json"
    bundle.write_text(out)
    code, out, _ = call(capsys, "flex-verify", octa, bundle)
    assert code == 0 and json.loads(out)["passed"] is True
    code, out, _ = call(capsys, "obstruct", "--edge", "1,2", octa, bundle)
    assert code == 0
    assert serialize.obstruction_from_json(json.loads(out)).witness == cert

    # color from the emitted limit configuration
    cfg = tmp_path / "cfg.json"
    cfg.write_text(serialize.dumps(data["limit_configuration"]))
    lam = tmp_path / "lam.json"
    lam.write_text(serialize.dumps(data["lengths"]))
    code, out, _ = call(capsys, "color", octa, lam, cfg)
    assert code == 0
    assert serialize.signed_cycle_from_json(json.loads(out)) == cert


def test_butterfly_off_frames(capsys, tmp_path):
    out_dir = tmp_path / "frames"
    code, _, _ = call(capsys, "butterfly", "builtin:octahedron", "--cycle", "1,2,3,4",
                      "--signs", "+,-,+,-", "--format", "off", "-o", out_dir)
    assert code == 0
    assert sorted(p.name for p in out_dir.iterdir()) == [f"frame_00{i}.off" for i in range(4)]


def test_butterfly_domain_error_exits_one(capsys):
    code, out, _ = call(capsys, "butterfly", "builtin:octahedron", "--cycle", "1,2,5", "--signs", "+,+,-")
    assert code == 1
    assert json.loads(out)["error"] == "NotSeparating"


def test_color_bad_config_exits_one(capsys, tmp_path, files):
    _, octa, _ = files
    spec = ButterflySpec(octahedron(), (1, 2, 3, 4), (1, 1, -1, -1), seed=1)
    b = build_bundle(spec)
    pts = dict(b.limit.points)
    pts[b.limit.spine.s] = OMEGA_INF
    cfg = tmp_path / "cfg.json"
    cfg.write_text(serialize.dumps(serialize.limit_config_to_json(LimitConfiguration(pts, b.limit.spine))))
    lam = tmp_path / "lam.json"
    lam.write_text(serialize.dumps(serialize.lengths_to_json(b.lengths)))
    code, out, _ = call(capsys, "color", octa, lam, cfg)
    assert code == 1
    payload = json.loads(out)
    assert payload["error"] == "InfinityOnEdge" and payload["stage"] == "validate"


def test_samples_file_round_trip(capsys, tmp_path):
    spec = ButterflySpec(octahedron(), (1, 2, 3, 4), (1, 1, -1, -1), seed=3)
    b = build_bundle(spec, slopes=[0, 1, 3])
    path = tmp_path / "samples.json"
    path.write_text(serialize.dumps(serialize.samples_to_json(spec, b.samples, b.rotating_component)))
    sp = b.limit.spine
    code, out, _ = call(capsys, "flex-verify", "builtin:octahedron", path,
                        "--spine", f"{sp.w1},{sp.w2},{sp.s},{sp.n}")
    assert code == 0
    assert json.loads(out)["samples"] == 3
    code, _, err = call(capsys, "flex-verify", "builtin:octahedron", path)
    assert code == 2 and "spine" in err


@pytest.mark.parametrize(
    "text, fragment",
    [
        ('{"vertices": [1, 2, 3], "faces": [[1, 2, 3]', "line 1"),
        ('{"vertices": [1, 2, 3]}', "'faces'"),
        ('{"vertices": [1, 2, 3], "faces": [[1, 2, "x"]]}', "faces[0]"),
    ],
)
def test_malformed_input_exits_two(capsys, tmp_path, text, fragment):
    bad = tmp_path / "bad.json"
    bad.write_text(text)
    code, _, err = call(capsys, "validate", bad)
    assert code == 2
    assert fragment in err and "Traceback" not in err


def test_malformed_lengths(capsys, tmp_path, files):
    _, octa, _ = files
    bad = tmp_path / "lam.json"
    bad.write_text('{"edges": [{"edge": [1, 2], "squared": "1/0"}]}')
    code, _, err = call(capsys, "obstruct", octa, bad)
    assert code == 2 and "edges[0]" in err


def test_missing_file_and_bad_args(capsys, files):
    _, octa, _ = files
    assert call(capsys, "validate", "/no/such/file.json")[0] == 2
    assert call(capsys, "obstruct", "--edge", "1,x", octa, octa)[0] == 2
    assert call(capsys, "obstruct", "--max-len", "2", octa, octa)[0] == 2
    assert call(capsys, "butterfly", octa, "--cycle", "1,2,3,4", "--signs", "+,*,-,-")[0] == 2


def test_console_script_entry_point(files):
    _, octa, lengths = files
    proc = subprocess.run(
        [sys.executable, "-m", "flexcycle.cli", "obstruct", "--edge", "1,2", str(octa), str(lengths)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["witness"]["cycle"] == [1, 2, 3, 4]
