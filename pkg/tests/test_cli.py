import json

from qgalois import presets
from qgalois.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_suq2(capsys):
    code, out, _ = run(capsys, "verify", "--preset", "suq2", "--max-degree", "4")
    assert code == 0
    assert "CHECK" in out and "FAIL" not in out


def test_verify_u1(capsys):
    code, out, _ = run(capsys, "verify", "--preset", "u1")
    assert code == 0
    assert "FAIL" not in out


def test_verify_podles_line(capsys):
    code, out, _ = run(capsys, "verify", "--preset", "podles-line", "1",
                       "--max-degree", "3")
    assert code == 0


def test_verify_trivial_base(capsys):
    code, out, _ = run(capsys, "verify", "--preset", "trivial-base",
                       "--max-degree", "2")
    assert code == 0


def test_projector_podles(capsys, tmp_path):
    artifact = tmp_path / "podles.json"
    code, out, _ = run(capsys, "projector", "--preset", "podles-line", "1",
                       "--output", str(artifact))
    assert code == 0
    payload = json.loads(artifact.read_text())
    assert payload["matrix"] == [["1 - q^2 g g*", "a g*"],
                                 ["q a* g", "g g*"]]
    assert payload["trace"] == "1 - (q^2-1) g g*"
    assert payload["a_mu"] == ["a*", "g*"]


def test_projector_at_q_one(capsys):
    code, out, _ = run(capsys, "projector", "--preset", "podles-line", "1",
                       "--q", "1")
    assert code == 0
    assert '[["1 - g g*", "a g*"], ["a* g", "g g*"]]' in out
    assert "RANK 1" in out


def test_projector_rejects_q_zero(capsys):
    code, _, err = run(capsys, "projector", "--preset", "podles-line", "1",
                       "--q", "0")
    assert code == 2
    assert "error" in err


def test_projector_trivial_base(capsys):
    code, out, _ = run(capsys, "projector", "--preset", "trivial-base",
                       "--corep", "u")
    assert code == 0
    assert "TRACE 2" in out


def test_projector_trivial_corep(capsys):
    code, out, _ = run(capsys, "projector", "--preset", "trivial-base",
                       "--corep", "trivial")
    assert code == 0
    assert '[["1"]]' in out


def test_pullback_preset(capsys, tmp_path):
    artifact = tmp_path / "pullback.json"
    code, out, _ = run(capsys, "pullback", "--preset", "podles-line", "1",
                       "--output", str(artifact))
    assert code == 0
    payload = json.loads(artifact.read_text())
    assert payload["e_prime"] == [["1"]]
    assert payload["d"] == [["0"]]
    assert payload["report"]["ok"] is True


def test_report_rendering(capsys, tmp_path):
    artifact = tmp_path / "podles.json"
    run(capsys, "projector", "--preset", "podles-line", "1",
        "--output", str(artifact))
    code, out, _ = run(capsys, "report", "--input", str(artifact))
    assert code == 0
    assert "PASS" in out and "E^2 = E" in out and "trace:" in out


def test_report_pinpoints_first_failure(capsys, tmp_path):
    f = tmp_path / "corrupt.alg"
    f.write_text(presets.SUQ2_SOURCE + presets.U1_SOURCE + """
coaction corrupt : suq2 -> suq2 (x) u1
delta a = a (x) u
delta g = g (x) u*
delta g* = g* (x) u*
delta a* = a* (x) u*
""")
    artifact = tmp_path / "fail.json"
    code, *_ = run(capsys, "verify", "--input", str(f), "--output", str(artifact))
    assert code == 1
    code, out, _ = run(capsys, "report", "--input", str(artifact))
    assert code == 1
    assert "first failing identity" in out


def test_report_missing_artifact(capsys, tmp_path):
    code, _, err = run(capsys, "report", "--input", str(tmp_path / "nope.json"))
    assert code == 2


def test_deterministic_artifacts(capsys, tmp_path):
    a1 = tmp_path / "one.json"
    a2 = tmp_path / "two.json"
    run(capsys, "projector", "--preset", "podles-line", "1", "--output", str(a1))
    run(capsys, "projector", "--preset", "podles-line", "1", "--output", str(a2))
    assert a1.read_bytes() == a2.read_bytes()


def test_malformed_file_is_an_input_error(capsys, tmp_path):
    f = tmp_path / "bad.alg"
    f.write_text("algebra oops\n")
    code, _, err = run(capsys, "verify", "--input", str(f))
    assert code == 2
    assert "error" in err


def test_corrupted_coaction_fails_with_exit_one(capsys, tmp_path):
    f = tmp_path / "corrupt.alg"
    f.write_text(presets.SUQ2_SOURCE + presets.U1_SOURCE + """
coaction corrupt : suq2 -> suq2 (x) u1
delta a = a (x) u
delta g = g (x) u*
delta g* = g* (x) u*
delta a* = a* (x) u*
""")
    code, out, _ = run(capsys, "verify", "--input", str(f))
    assert code == 1
    assert "FAIL" in out


def test_broken_connection_fails_with_exit_one(capsys, tmp_path):
    f = tmp_path / "broken.alg"
    f.write_text(presets.SUQ2_SOURCE + presets.U1_SOURCE +
                 presets.FIBRATION_SOURCE + """
connection broken on fibration
L 1 = 1 (x) 1
L u = a* (x) a
""")
    code, out, _ = run(capsys, "verify", "--input", str(f))
    assert code == 1
    assert any("mult-counit" in line and "FAIL" in line
               for line in out.splitlines())


def test_non_equivariant_pullback_rejected(capsys, tmp_path):
    f = tmp_path / "noneq.alg"
    f.write_text(presets.SUQ2_SOURCE + presets.U1_SOURCE +
                 presets.FIBRATION_SOURCE + """
coaction regu1 : u1 -> u1 (x) u1
delta u = u (x) u
delta u* = u* (x) u*
connection hopf1 on fibration
L 1 = 1 (x) 1
L u = a* (x) a + g* (x) g
corep line dim 1 over u1
row u
morphism wrongway : suq2 -> u1
f a = u*
f g = 0
f g* = 0
f a* = u
""")
    code, out, _ = run(capsys, "pullback", "--input", str(f))
    assert code == 1
    assert any("equivariance" in line and "FAIL" in line
               for line in out.splitlines())


def test_file_driven_pullback_passes(capsys, tmp_path):
    f = tmp_path / "good.alg"
    f.write_text(presets.SUQ2_SOURCE + presets.U1_SOURCE +
                 presets.FIBRATION_SOURCE + """
coaction regu1 : u1 -> u1 (x) u1
delta u = u (x) u
delta u* = u* (x) u*
connection hopf1 on fibration
L 1 = 1 (x) 1
L u = a* (x) a + g* (x) g
L u* = a (x) a* + q^2 g (x) g*
corep line dim 1 over u1
row u
""" + presets.COLLAPSE_SOURCE)
    code, out, _ = run(capsys, "pullback", "--input", str(f),
                       "--max-degree", "1")
    assert code == 0


def test_verify_needs_preset_or_input(capsys):
    code, _, err = run(capsys, "verify")
    assert code == 2
