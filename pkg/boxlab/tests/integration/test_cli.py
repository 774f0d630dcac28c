import json

import pytest

from boxlab import __version__
from boxlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_version(capsys):
    with pytest.raises(SystemExit) as exc_info:
        main(["--version"])
    assert exc_info.value.code == 0
    assert __version__ in capsys.readouterr().out


def test_metrics_report_envelope(capsys):
    """A successful run prints one canonical JSON report"""
    code, out, _ = run(capsys, "metrics", "--family", "cyclic", "--n", "12", "--check")
    assert code == 0
    report = json.loads(out)
    assert set(report) == {"boxlab_version", "versions", "config", "payload", "payload_sha256", "timing"}
    assert report["config"]["subcommand"] == "metrics"
    assert report["payload"]["metrics"]["diameter"] == 6
    assert report["payload"]["all_pairs_diameter"] == 6


def test_payload_hash_is_deterministic(capsys):
    _, first, _ = run(capsys, "quotient", "--family", "sol", "--modulus", "5")
    _, second, _ = run(capsys, "quotient", "--family", "sol", "--modulus", "5")
    first, second = json.loads(first), json.loads(second)
    assert first["payload_sha256"] == second["payload_sha256"]
    assert first["payload"] == second["payload"]


def test_quotient_writes_the_edge_list(capsys, tmp_path):
    path = str(tmp_path / "c6.edges")
    code, out, _ = run(capsys, "--output", path, "quotient", "--family", "cyclic", "--n", "6")
    assert code == 0
    assert json.loads(out)["payload"]["order"] == 6
    with open(path, encoding="UTF8") as f:
        lines = f.read().splitlines()
    assert len(lines) == 1 + 6 * 2
    assert lines[1] == "0 1 0"
    with open(path + ".json", encoding="UTF8") as f:
        assert json.load(f)


def test_report_goes_to_output(capsys, tmp_path):
    path = tmp_path / "fullbox.json"
    code, out, _ = run(capsys, "--output", str(path), "fullbox", "--max", "12")
    assert code == 0
    assert out == ""
    assert json.loads(path.read_text())["payload"]["max_A"] == 1


def test_csv_output(capsys):
    code, out, _ = run(capsys, "--format", "csv", "count", "--group", "zxz2", "--max", "4")
    assert code == 0
    assert out.splitlines() == [
        "n,a_n,s_n,provenance",
        "1,1,1,enumeration",
        "2,3,4,enumeration",
        "3,1,5,enumeration",
        "4,3,8,enumeration",
    ]


def test_csv_is_refused_for_metrics(capsys):
    code, _, err = run(capsys, "--format", "csv", "metrics", "--family", "cyclic", "--n", "5")
    assert code == 1
    assert "csv output" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["metrics", "--family", "sol"],
        ["metrics", "--family", "nosuchfamily", "--n", "3"],
        ["boxspace", "--schedule", "sol:x^k", "--kmax", "2"],
        ["distinguish", "--nks", "1", "--disp", "0", "--ratio", "2", "--horizon", "10"],
        ["isometry", "--n", "2", "--bijection", "0,1,1,2"],
        [],
    ],
)
def test_invalid_input_exits_with_one(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1
    assert out == ""
    assert err.startswith("boxlab: error:") or "usage" in err


def test_budget_exits_with_two(capsys):
    code, _, err = run(capsys, "--max-vertices", "10", "quotient", "--family", "sol", "--modulus", "5")
    assert code == 2
    assert "boxlab: error:" in err


def test_closed_form_mismatch_exits_with_three(capsys):
    """The report is still written before the failure is signalled"""
    code, out, err = run(capsys, "count", "--group", "z2d4", "--max", "16", "--oracle")
    assert code == 3
    payload = json.loads(out)["payload"]
    assert payload["oracle_vs_extensions"] == []
    assert payload["closed_form_vs_oracle"]
    assert "closed form" in err


def test_distinguish(capsys):
    code, out, _ = run(
        capsys, "distinguish", "--nks", "1", "--nks", "2", "--disp", "8", "--ratio", "2^16", "--horizon", "200"
    )
    assert code == 0
    verdict = json.loads(out)["payload"]["verdict"]
    assert verdict["status"] == "distinguished"


def test_boxspace_verdict(capsys):
    code, out, _ = run(
        capsys, "boxspace", "--schedule", "z:1", "--kmax", "3", "--alpha", "1", "--K", "1/4", "--no-spectral"
    )
    assert code == 0
    evaluation = json.loads(out)["payload"]["evaluation"]
    assert evaluation["dalpha"]["verdict"]


def test_isometry(capsys):
    code, out, _ = run(capsys, "isometry", "--n", "2", "--bijection", "0,2,3,1")
    assert code == 0
    assert json.loads(out)["payload"]["isomorphic"]


def test_isometry_refuses_an_identity_moving_bijection(capsys):
    code, _, err = run(capsys, "isometry", "--n", "2", "--bijection", "1,0,2,3")
    assert code == 1
    assert "identity lamp" in err


def test_verify_all_quick_is_reproducible(capsys):
    """Two quick runs of every suite pass and hash to the same payload"""
    code, first, _ = run(capsys, "verify-all", "--quick")
    assert code == 0
    _, second, _ = run(capsys, "verify-all", "--quick")
    first, second = json.loads(first), json.loads(second)
    assert first["payload"]["passed"]
    assert first["payload_sha256"] == second["payload_sha256"]
    names = [suite["name"] for suite in first["payload"]["suites"]]
    assert names[-1] == "determinism" and len(names) == 12
