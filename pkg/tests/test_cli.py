"""CLI surface tests: presets, output formats, exit codes."""

import csv
import io
import json

import pytest

from qprim.cli import main, preset_registry


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_preset_registry_names():
    names = set(preset_registry())
    assert names == {
        "lehmer",
        "griffin",
        "euler41",
        "beeger27941",
        "example1",
        "example2",
        "example2-g24",
        "example3",
        "example3-f1",
        "example3-f2",
    }


def test_preset_polynomials_match_published_coefficients():
    reg = preset_registry()
    assert (
        f"{reg['example1'].poly.a},{reg['example1'].poly.b},{reg['example1'].poly.c}"
        == "1008068,16921429448,15753313937"
    )
    assert (
        f"{reg['example3'].poly.a},{reg['example3'].poly.b},{reg['example3'].poly.c}"
        == "866416,0,2903975582404049"
    )
    assert f"{reg['lehmer'].poly.a},{reg['lehmer'].poly.b},{reg['lehmer'].poly.c}" == "326,0,3"
    assert f"{reg['griffin'].poly.a},{reg['griffin'].poly.b},{reg['griffin'].poly.c}" == "10,0,7"
    # construction identities for the presets whose expansion is not printed
    assert reg["example2"].poly.a == 64 * 230849
    assert reg["example2-g24"].poly.a == 64 * 230849
    assert reg["example3-f1"].poly.eval(0) == reg["example3"].poly.eval(599206)
    assert reg["example3-f2"].poly.a == 54151
    assert reg["example1"].g == 170363492 == 26 * 26 * 252017
    assert reg["example2"].g == 17 * 17 * 230849


def test_verify_lehmer(capsys):
    code, out, _ = run_cli(capsys, "verify", "--preset", "lehmer")
    assert code == 0
    assert "206" in out
    assert "1838843753" in out


def test_verify_griffin_json_roundtrip(capsys):
    code, out, _ = run_cli(capsys, "verify", "--preset", "griffin", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["outputs"]["ok"] is True
    assert doc["outputs"]["checks"][0]["count"] == 16
    assert doc["outputs"]["checks"][0]["failing_prime"] == 7297
    # lossless round-trip
    assert json.loads(json.dumps(doc)) == doc


def test_verify_unknown_preset(capsys):
    code, _, err = run_cli(capsys, "verify", "--preset", "nope")
    assert code == 1
    assert "unknown preset" in err


def test_streak_cli_json(capsys):
    code, out, _ = run_cli(
        capsys, "streak", "--poly", "326,0,3", "--g", "326", "--n-cap", "4000",
        "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["outputs"]["count"] == 206
    assert doc["outputs"]["failing_prime"] == 1838843753
    assert doc["outputs"]["residual_index_at_failure"] == 83
    assert doc["version"]


def test_pi_cli(capsys):
    code, out, _ = run_cli(capsys, "pi", "--poly", "1,1,41", "--x", "39")
    assert code == 0
    assert "40" in out
    code, _, err = run_cli(capsys, "pi", "--poly", "1,1,41", "--x", "5000000")
    assert code == 1
    assert "long-run" in err


def test_tau_cli_exact_rational(capsys):
    code, out, _ = run_cli(capsys, "tau", "--poly", "3,0,7", "--disc", "5")
    assert code == 0
    assert "1/3" in out
    code, out, _ = run_cli(
        capsys, "tau", "--poly", "3,0,7", "--disc", "5", "--format", "json"
    )
    doc = json.loads(out)
    assert doc["outputs"]["value"] == {"num": 1, "den": 3}


def test_tau_admissible_cli(capsys):
    code, out, _ = run_cli(
        capsys, "tau", "--poly", "326,0,3", "--admissible", "--format", "json"
    )
    assert code == 0
    assert json.loads(out)["outputs"]["admissible_discriminants"] == [-163, -3, 24, 1304]


def test_charsum_cli_csv(capsys):
    code, out, _ = run_cli(
        capsys, "charsum", "--mode", "local", "--poly", "1,0,1", "--p", "5",
        "--format", "csv",
    )
    assert code == 0
    rows = {r["key"]: r["value"] for r in csv.DictReader(io.StringIO(out))}
    assert rows["value.num"] == "-1"
    assert rows["value.den"] == "3"


def test_charsum_jacobsthal(capsys):
    code, out, _ = run_cli(
        capsys, "charsum", "--mode", "jacobsthal", "--a", "1", "--p", "7",
        "--format", "json",
    )
    assert code == 0
    assert json.loads(out)["outputs"]["value"] == -1


def test_density_cli(capsys):
    code, out, _ = run_cli(capsys, "density", "--lehmer-corrected", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert abs(doc["outputs"]["value"] - 0.99323) < 1e-4
    code, out, _ = run_cli(
        capsys, "density", "--q-product", "3,5", "--format", "json"
    )
    assert json.loads(out)["outputs"]["value"] == 4.0


def test_lvalue_and_hlconst_cli(capsys):
    code, out, _ = run_cli(
        capsys, "lvalue", "--s", "1", "--disc", "-4", "--format", "json"
    )
    assert code == 0
    assert abs(json.loads(out)["outputs"]["value"] - 0.7853981633974483) < 1e-12
    code, out, _ = run_cli(capsys, "hlconst", "--disc", "-163", "--format", "json")
    assert code == 0
    assert abs(json.loads(out)["outputs"]["value"] - 3.3197732) < 1e-5


def test_mstat_cli_seeded(capsys):
    argv = (
        "mstat", "--p1", "0.9", "--s", "100", "--simulate", "--trials", "500",
        "--seed", "42", "--format", "json",
    )
    _, out1, _ = run_cli(capsys, *argv)
    _, out2, _ = run_cli(capsys, *argv)
    d1, d2 = json.loads(out1), json.loads(out2)
    assert d1["outputs"]["simulated_mean"] == d2["outputs"]["simulated_mean"]
    assert d1["seed"] == 42


def test_criteria_cli(capsys):
    code, out, _ = run_cli(
        capsys, "criteria", "--mode", "classic", "--max", "2000", "--format", "json"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["outputs"]["violations"] == 0
    assert doc["outputs"]["applicable"] > 0
    code, out, _ = run_cli(
        capsys, "criteria", "--mode", "lemma1", "--alpha", "1", "--d1", "163",
        "--d2", "1", "--q-max", "40", "--format", "json",
    )
    assert json.loads(out)["outputs"]["excluded_primes"] == [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]


def test_search_cli(capsys, tmp_path):
    code, out, _ = run_cli(
        capsys, "search", "--d", "163", "--d1", "163", "--alpha", "1",
        "--g-base", "326", "--k-hi", "4", "--n-cap", "3000",
        "--checkpoint", str(tmp_path / "ck.jsonl"), "--workers", "1",
        "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["outputs"]["best_c"] >= 206
    assert (tmp_path / "ck.jsonl").exists()


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["streak", "--bogus"])
    assert exc.value.code == 2


def test_missing_argument_combinations(capsys):
    for argv in (
        ["charsum", "--mode", "jacobsthal", "--p", "7"],
        ["charsum", "--mode", "local", "--poly", "1,0,1"],
        ["charsum", "--mode", "average", "--poly", "1,0,1"],
        ["charsum", "--mode", "complete", "--p", "5"],
        ["tau", "--poly", "1,0,1"],
        ["density"],
    ):
        code, _, err = run_cli(capsys, *argv)
        assert code == 1, argv
        assert "error:" in err, argv


def test_maxstreak_long_run_gate(capsys):
    code, _, err = run_cli(
        capsys, "maxstreak", "--poly", "326,0,3", "--g-base", "326", "--k-max", "25000"
    )
    assert code == 1
    assert "long-run" in err
