"""Command line contract: JSON reports, exit codes, cache, config."""

import json
import pathlib

import pytest
from click.testing import CliRunner

from omzv import OmegaParam, zeta_omega
from omzv.cli import cli
from omzv.ohno import clear_connector_cache
from omzv.omega import clear_value_cache

GOLDEN = pathlib.Path(__file__).parent / "data" / "verify_algebra.json"

VOLATILE_TOP = ("timestamp",)
VOLATILE_CHECK = ("runtime_s",)


@pytest.fixture()
def runner():
    return CliRunner()


def strip_volatile(report):
    out = {k: v for k, v in report.items() if k not in VOLATILE_TOP}
    if "checks" in out:
        out["checks"] = [{k: v for k, v in c.items()
                          if k not in VOLATILE_CHECK}
                         for c in out["checks"]]
    return out


def test_eval_zeta_matches_library(runner):
    res = runner.invoke(cli, ["eval", "zeta", "2"])
    assert res.exit_code == 0
    report = json.loads(res.output)
    want = zeta_omega((2,), OmegaParam(1.0))
    assert report["value"] == [want.value.real, want.value.imag]
    assert report["err_estimate"] == want.err_estimate
    assert report["command"] == "eval" and report["kind"] == "zeta"


def test_eval_word(runner):
    res = runner.invoke(cli, ["eval", "word", "E G2", "--omega", "0.9"])
    assert res.exit_code == 0
    report = json.loads(res.output)
    assert report["config"]["omega"] == 0.9
    assert report["parsed"] == "E G2"


def test_parse_error_is_exit_2(runner):
    res = runner.invoke(cli, ["eval", "zeta", "2,,"])
    assert res.exit_code == 2
    res = runner.invoke(cli, ["eval", "word", "b q a"])
    assert res.exit_code == 2


def test_non_admissible_is_exit_3(runner):
    res = runner.invoke(cli, ["eval", "zeta", "2,1"])
    assert res.exit_code == 3
    res = runner.invoke(cli, ["eval", "word", "G1 E"])
    assert res.exit_code == 3


def test_unknown_suite_is_exit_2(runner):
    res = runner.invoke(cli, ["verify", "no-such-suite"])
    assert res.exit_code == 2


def test_verify_algebra_matches_golden(runner, tmp_path):
    out = tmp_path / "report.json"
    res = runner.invoke(cli, ["verify", "algebra", "--out", str(out)])
    assert res.exit_code == 0
    fresh = strip_volatile(json.loads(out.read_text()))
    golden = strip_volatile(json.loads(GOLDEN.read_text()))
    assert fresh.keys() == golden.keys()
    assert fresh["config"] == golden["config"]
    for got, want in zip(fresh["checks"], golden["checks"], strict=True):
        assert got.keys() == want.keys()
        for key in ("name", "anchor", "pass", "tolerance"):
            assert got[key] == want[key], got["name"]
        assert got["lhs"] == pytest.approx(want["lhs"], abs=1e-12)
        assert got["rhs"] == pytest.approx(want["rhs"], abs=1e-12)
        assert got["residual"] == pytest.approx(want["residual"], abs=1e-12)
    assert all(c["pass"] for c in fresh["checks"])


def test_failed_check_is_exit_1(runner):
    res = runner.invoke(cli, ["verify", "gamma", "--tol", "1e-30"])
    assert res.exit_code == 1
    report = json.loads(res.output)
    assert report["summary"]["failed"] > 0


def test_gamma_point(runner):
    res = runner.invoke(cli, ["gamma", "0.2+0.3i"])
    assert res.exit_code == 0
    report = json.loads(res.output)
    assert report["z"] == [0.2, 0.3]
    assert report["G"] is not None
    res = runner.invoke(cli, ["gamma", "2i"])
    assert res.exit_code == 3


def test_ohno_verb(runner):
    res = runner.invoke(cli, ["ohno", "2", "--order", "1"])
    assert res.exit_code == 0
    report = json.loads(res.output)
    cells = {(c["m"], c["n"]) for c in report["cells"]}
    assert cells == {(0, 0), (0, 1), (1, 0)}
    res = runner.invoke(cli, ["ohno", "2,1"])
    assert res.exit_code == 3


def fresh_memos():
    clear_value_cache()
    clear_connector_cache()


def test_cache_round_trip_is_deterministic(runner, tmp_path):
    store = tmp_path / "values.jsonl"
    out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
    args = ["verify", "duality", "--max-weight", "2",
            "--cache", str(store), "--out"]
    fresh_memos()
    assert runner.invoke(cli, args + [str(out1)]).exit_code == 0
    assert store.exists()
    fresh_memos()
    assert runner.invoke(cli, args + [str(out2)]).exit_code == 0
    r1 = strip_volatile(json.loads(out1.read_text()))
    r2 = strip_volatile(json.loads(out2.read_text()))
    assert r1 == r2

    res = runner.invoke(cli, ["cache", "stats", "--cache", str(store)])
    assert res.exit_code == 0
    assert json.loads(res.output)["entries"] > 0


def test_cache_survives_corruption(runner, tmp_path):
    store = tmp_path / "values.jsonl"
    fresh_memos()
    res = runner.invoke(cli, ["eval", "zeta", "2", "--cache", str(store)])
    assert res.exit_code == 0
    clean = json.loads(res.output)

    lines = store.read_text().splitlines()
    lines.insert(0, "{not json")
    store.write_text("\n".join(lines) + "\n")

    fresh_memos()
    with pytest.warns(UserWarning):
        res = runner.invoke(cli, ["eval", "zeta", "2", "--cache",
                                  str(store)])
    assert res.exit_code == 0
    again = json.loads(res.output)
    assert strip_volatile(again)["value"] == strip_volatile(clean)["value"]


def test_cache_clear(runner, tmp_path):
    store = tmp_path / "values.jsonl"
    fresh_memos()
    runner.invoke(cli, ["eval", "zeta", "2", "--cache", str(store)])
    assert store.exists()
    res = runner.invoke(cli, ["cache", "clear", "--cache", str(store)])
    assert res.exit_code == 0
    assert not store.exists()


def test_config_file_defaults(runner, tmp_path):
    cfgfile = tmp_path / "omzv.cfg"
    cfgfile.write_text("omega = 1.3\nmax-weight = 2\n")
    res = runner.invoke(cli, ["--config", str(cfgfile), "verify", "algebra"])
    assert res.exit_code == 0
    report = json.loads(res.output)
    assert report["config"]["omega"] == 1.3
    assert report["config"]["max_weight"] == 2
    # explicit flags win over the file
    res = runner.invoke(cli, ["--config", str(cfgfile), "verify", "algebra",
                              "--omega", "0.9"])
    assert json.loads(res.output)["config"]["omega"] == 0.9
    res = runner.invoke(cli, ["--config", str(cfgfile), "verify", "algebra",
                              "--omega", "bad"])
    assert res.exit_code == 2


def test_env_prefix(runner):
    res = runner.invoke(cli, ["verify", "algebra"],
                        env={"OMZV_VERIFY_OMEGA": "0.7"},
                        auto_envvar_prefix="OMZV")
    assert res.exit_code == 0
    assert json.loads(res.output)["config"]["omega"] == 0.7
