"""End-to-end tests of the command-line surface: formats, exit codes, cache."""

from __future__ import annotations

import json
import os

import pytest

from qsift.cli import _series_from_payload, main, parse_series_spec
from qsift.generators import EtaQuotientSpec, build_series


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------- expand


def test_expand_partition(capsys):
    code, out, _ = run(capsys, "expand", "partition", "--limit", "6")
    assert code == 0
    payload = json.loads(out)
    assert payload["offset"] == "-1/24"
    assert payload["coefficients"] == [1, 1, 2, 3, 5, 7]


def test_expand_grammar_offset(capsys):
    code, out, _ = run(capsys, "expand", "1^-4,2^5,4^-2", "--limit", "3")
    assert code == 0
    payload = json.loads(out)
    assert payload["offset"] == "-1/12"  # B = -2


def test_expand_unknown_name(capsys):
    code, _, err = run(capsys, "expand", "nosuch")
    assert code == 3
    assert "unknown series" in err


def test_expand_bad_grammar(capsys):
    for bad in ("1^0", "1^2,1^3", "0^1", "2^"):
        code, _, err = run(capsys, "expand", bad)
        assert code == 2, bad
        assert err


def test_expand_roundtrip(capsys):
    code, out, _ = run(capsys, "expand", "crank_diff", "--limit", "12")
    assert code == 0
    series = _series_from_payload(json.loads(out))
    assert series == build_series("crank_diff", 12)


def test_expand_mod_and_csv(capsys):
    code, out, _ = run(
        capsys, "expand", "partition", "--limit", "5", "--mod", "5", "--format", "csv"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,exponent,coefficient"
    assert lines[1] == "0,-1/24,1"
    assert lines[5] == "4,95/24,0"  # p(4) = 5 = 0 mod 5


def test_expand_theta_rejects_mod(capsys):
    code, _, err = run(capsys, "expand", "theta_g0", "--mod", "3")
    assert code == 2
    assert "rational" in err


# ------------------------------------------------------------------ scan


def test_scan_partition_json(capsys):
    code, out, _ = run(
        capsys, "scan", "partition", "--mod", "5", "--m-max", "5",
        "--budget", "600",
    )
    assert code == 0
    payload = json.loads(out)
    candidates = [v for v in payload["verdicts"] if v["status"] == "candidate"]
    assert [(v["m"], v["t"]) for v in candidates] == [[5, 4]] or [
        (v["m"], v["t"]) for v in candidates
    ] == [(5, 4)]


def test_scan_mock_f_all_witnesses(capsys):
    code, out, _ = run(
        capsys, "scan", "mock_f", "--mod", "3", "--m-max", "10",
        "--budget", "3000",
    )
    assert code == 0
    payload = json.loads(out)
    assert all(v["status"] == "witness" for v in payload["verdicts"])


def test_scan_cubic_candidate(capsys):
    code, out, _ = run(
        capsys, "scan", "cubic", "--mod", "3", "--m-max", "3", "--budget", "500"
    )
    assert code == 0
    payload = json.loads(out)
    candidates = [(v["m"], v["t"]) for v in payload["verdicts"] if v["status"] == "candidate"]
    assert candidates == [[3, 2]] or candidates == [(3, 2)]


def test_scan_insufficient_budget(capsys):
    code, _, err = run(
        capsys, "scan", "partition", "--mod", "5", "--m-max", "50",
        "--budget", "10",
    )
    assert code == 4
    assert err


def test_scan_single_progression(capsys):
    code, out, _ = run(
        capsys, "scan", "partition", "--mod", "5", "--progression", "5:4",
        "--budget", "600",
    )
    assert code == 0
    payload = json.loads(out)
    assert len(payload["verdicts"]) == 1
    verdict = payload["verdicts"][0]
    assert (verdict["m"], verdict["t"], verdict["status"]) == (5, 4, "candidate")


def test_scan_bad_progression(capsys):
    code, _, err = run(
        capsys, "scan", "partition", "--mod", "5", "--progression", "five",
    )
    assert code == 2
    assert err


def test_scan_needs_range_or_progression(capsys):
    code, _, err = run(capsys, "scan", "partition", "--mod", "5")
    assert code == 2
    assert "--m-max" in err


def test_scan_csv_format(capsys):
    code, out, _ = run(
        capsys, "scan", "partition", "--mod", "5", "--m-max", "2",
        "--budget", "100", "--format", "csv",
    )
    assert code == 0
    assert out.splitlines()[0] == "m,t,status,n,value,checked"


# ------------------------------------------------------------- identities


def test_identities_pass(capsys):
    code, out, _ = run(capsys, "identities", "--trials", "8")
    assert code == 0
    assert out.count("pass") == 9


def test_identities_deterministic(capsys):
    _, out1, _ = run(capsys, "identities", "--trials", "6", "--seed", "5")
    _, out2, _ = run(capsys, "identities", "--trials", "6", "--seed", "5")
    assert out1 == out2


def test_identities_negative_control(capsys):
    code, out, err = run(
        capsys, "identities", "--trials", "40", "--negative-control"
    )
    assert code == 5
    assert "FAIL" in out
    assert "failing instance" in err


# ------------------------------------------------------------- cusp-check


def test_cusp_check_f(capsys):
    code, out, _ = run(capsys, "cusp-check", "f", "--Q", "5")
    assert code == 0
    assert "t=1 ok" in out and "t=2 ok" in out


def test_cusp_check_omega(capsys):
    code, out, _ = run(capsys, "cusp-check", "omega", "--Q", "7")
    assert code == 0


def test_cusp_check_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["cusp-check", "f", "--Q", "6"])
    assert exc.value.code == 2


def test_cusp_check_explicit_t(capsys):
    code, out, _ = run(capsys, "cusp-check", "f", "--Q", "7", "--t", "3")
    assert code == 0
    assert "t=3 ok" in out


def test_cusp_check_failure_exit_code(capsys, monkeypatch):
    from qsift.arith import ExactScalar

    monkeypatch.setattr(
        "qsift.cli.cusp_half_leading", lambda Q, t: ExactScalar.one()
    )
    code, out, err = run(capsys, "cusp-check", "f", "--Q", "5")
    assert code == 6
    assert "MISMATCH" in out
    assert "expected" in err


# ------------------------------------------------------------------ info


def test_info_cubic(capsys):
    code, out, _ = run(capsys, "info", "cubic", "--ell", "3", "--m", "5")
    assert code == 0
    payload = json.loads(out)
    assert payload["applies"] is False
    assert payload["reasons"] == ["ell-divides-B"]
    assert payload["B"] == -3
    assert payload["pole_at_infinity"] is True


def test_info_crank(capsys):
    code, out, _ = run(capsys, "info", "crank_diff", "--ell", "2", "--m", "5")
    assert code == 0
    payload = json.loads(out)
    assert payload["applies"] is True
    assert payload["reasons"] == []
    assert payload["weight"] == "1/2"


def test_info_core4(capsys):
    code, out, _ = run(capsys, "info", "core4", "--ell", "2", "--m", "5")
    assert code == 0
    payload = json.loads(out)
    assert payload["applies"] is False
    assert "no-pole" in payload["reasons"]


def test_info_rejects_mock(capsys):
    code, _, err = run(capsys, "info", "mock_f", "--ell", "3", "--m", "5")
    assert code == 2
    assert "eta-quotient" in err


# ----------------------------------------------------------------- cache


def test_cache_roundtrip(tmp_path, capsys):
    cache_dir = str(tmp_path / "cache")
    args = ["--cache-dir", cache_dir, "expand", "partition", "--limit", "30"]
    code, out1, _ = run(capsys, *args)
    assert code == 0
    files = os.listdir(cache_dir)
    assert len(files) == 1
    code, out2, _ = run(capsys, *args)
    assert code == 0
    assert out1 == out2  # cache hit is observationally invisible
    assert os.listdir(cache_dir) == files


def test_cache_mismatched_key_recomputes(tmp_path, capsys):
    cache_dir = str(tmp_path / "cache")
    run(capsys, "--cache-dir", cache_dir, "expand", "partition", "--limit", "10")
    code, out, _ = run(
        capsys, "--cache-dir", cache_dir, "expand", "partition", "--limit", "12"
    )
    assert code == 0
    assert len(json.loads(out)["coefficients"]) == 12
    assert len(os.listdir(cache_dir)) == 2


def test_cache_env_var(tmp_path, capsys, monkeypatch):
    cache_dir = str(tmp_path / "envcache")
    monkeypatch.setenv("QSIFT_CACHE_DIR", cache_dir)
    code, _, _ = run(capsys, "expand", "partition", "--limit", "8")
    assert code == 0
    assert len(os.listdir(cache_dir)) == 1


def test_corrupt_cache_entry_recomputed(tmp_path, capsys):
    cache_dir = tmp_path / "cache"
    run(capsys, "--cache-dir", str(cache_dir), "expand", "partition", "--limit", "6")
    (entry,) = cache_dir.iterdir()
    entry.write_text("{not json")
    code, out, _ = run(
        capsys, "--cache-dir", str(cache_dir), "expand", "partition", "--limit", "6"
    )
    assert code == 0
    assert json.loads(out)["coefficients"] == [1, 1, 2, 3, 5, 7]


# ---------------------------------------------------------------- parser


def test_parse_series_spec():
    assert parse_series_spec("partition") == "partition"
    spec = parse_series_spec("1^-4,2^5,4^-2")
    assert isinstance(spec, EtaQuotientSpec)
    assert spec.B == -2


def test_stdout_is_pure_json(capsys):
    code, out, _ = run(capsys, "info", "eta5inv", "--ell", "2", "--m", "5")
    assert code == 0
    json.loads(out)  # must parse cleanly
