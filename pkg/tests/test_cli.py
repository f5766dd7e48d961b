import json

import pytest
from click.testing import CliRunner

from sncover.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def test_bounds_human_rows(runner):
    result = runner.invoke(main, ["bounds", "--from", "3", "--to", "12"])
    assert result.exit_code == 0, result.output
    lines = result.output.strip().splitlines()
    assert lines[0].startswith("n=3") and "r=2" in lines[0]
    row7 = next(l for l in lines if l.startswith("n=7"))
    assert "g=3" in row7 and "h=5" in row7 and "r=3" in row7
    row12 = next(l for l in lines if l.startswith("n=12"))
    assert "g=4" in row12 and "h=7" in row12 and "|dE|=4" in row12


def test_bounds_json_and_csv(runner, tmp_path):
    result = runner.invoke(main, ["bounds", "--from", "4", "--to", "6", "--format", "json"])
    rows = json.loads(result.output)
    assert [r["n"] for r in rows] == [4, 5, 6]
    assert rows[0]["g"] == 2 and rows[0]["r_interval"] == [2, 2]
    out = tmp_path / "rows.csv"
    result = runner.invoke(
        main, ["bounds", "--from", "4", "--to", "6", "--format", "csv", "--out", str(out)]
    )
    assert result.exit_code == 0
    header, *data = out.read_text().strip().splitlines()
    assert header == "n,g,h,delta_e_size,gamma,gamma_prime_upper,r_lo,r_hi"
    assert data[0].startswith("4,2,2,2,2,2,2,2")


def test_bounds_usage_error(runner):
    assert runner.invoke(main, ["bounds", "--from", "2", "--to", "5"]).exit_code == 2
    assert runner.invoke(main, ["bounds", "--from", "9", "--to", "5"]).exit_code == 2


def test_bounds_cache_hits_are_byte_identical(runner, tmp_path):
    cache = tmp_path / "cache"
    args = ["--cache-dir", str(cache), "bounds", "--from", "4", "--to", "9"]
    cold = runner.invoke(main, args)
    assert cold.exit_code == 0
    assert any(cache.iterdir())
    warm = runner.invoke(main, args)
    assert warm.output == cold.output


def test_bounds_parallel_matches_serial(runner):
    serial = runner.invoke(main, ["bounds", "--from", "4", "--to", "9"])
    parallel = runner.invoke(main, ["--jobs", "2", "bounds", "--from", "4", "--to", "9"])
    assert parallel.exit_code == 0
    assert parallel.output == serial.output


def test_bounds_plot_written(runner, tmp_path):
    fig = tmp_path / "bounds.png"
    result = runner.invoke(
        main,
        ["bounds", "--from", "4", "--to", "12", "--no-search", "--plot", str(fig)],
    )
    assert result.exit_code == 0
    assert fig.exists() and fig.stat().st_size > 0


def test_verify_named_sets(runner):
    ok = runner.invoke(main, ["verify", "14", "--set", "deltaE"])
    assert ok.exit_code == 0
    assert "basic: PASS" in ok.output and "special: PASS" in ok.output

    lone = runner.invoke(main, ["verify", "9", "--set", '[{"kind":"alternating"}]'])
    assert lone.exit_code == 1
    assert "uncovered type [1^7,2]" in lone.output

    inapplicable = runner.invoke(main, ["verify", "10", "--set", "delta2"])
    assert inapplicable.exit_code == 2
    assert "n odd" in inapplicable.output

    garbage = runner.invoke(main, ["verify", "9", "--set", "{broken"])
    assert garbage.exit_code == 2


def test_verify_set_from_file(runner, tmp_path):
    spec = tmp_path / "set.json"
    spec.write_text(json.dumps([
        {"kind": "intransitive", "x": 1},
        {"kind": "imprimitive", "b": 2, "m": 3},
    ]))
    result = runner.invoke(main, ["verify", "6", "--set", str(spec)])
    assert result.exit_code == 0, result.output


def test_search_writes_checkable_certificate(runner, tmp_path):
    cert = tmp_path / "c10.json"
    result = runner.invoke(main, ["search", "10", "--out", str(cert)])
    assert result.exit_code == 0
    assert "minimum cover size 3" in result.output
    check = runner.invoke(main, ["check-certificate", str(cert)])
    assert check.exit_code == 0 and "valid" in check.output

    obj = json.loads(cert.read_text())
    obj["assignment"][0][1] = {"kind": "intransitive", "x": 4}
    broken = tmp_path / "broken.json"
    broken.write_text(json.dumps(obj))
    check = runner.invoke(main, ["check-certificate", str(broken)])
    assert check.exit_code == 1 and "REJECTED" in check.output


def test_search_check_flag(runner, tmp_path):
    cert = tmp_path / "c8.json"
    assert runner.invoke(main, ["search", "8", "--out", str(cert)]).exit_code == 0
    result = runner.invoke(main, ["search", "8", "--check", str(cert)])
    assert result.exit_code == 0 and "valid" in result.output


def test_search_with_custom_pool_file(runner, tmp_path):
    pool = tmp_path / "pool.json"
    pool.write_text(json.dumps([
        {"kind": "intransitive", "x": 1},
        {"kind": "imprimitive", "b": 2, "m": 3},
    ]))
    cert = tmp_path / "c6.json"
    result = runner.invoke(
        main, ["search", "6", "--pool", str(pool), "--out", str(cert)]
    )
    assert result.exit_code == 0
    assert "minimum cover size 2" in result.output
    assert runner.invoke(main, ["check-certificate", str(cert)]).exit_code == 0


def test_search_infeasible_constraints(runner, tmp_path):
    cert = tmp_path / "infeasible.json"
    result = runner.invoke(
        main,
        ["search", "10", "--force-in", "P2", "--max-size", "3", "--out", str(cert)],
    )
    assert result.exit_code == 0
    assert "no cover within constraints" in result.output
    assert json.loads(cert.read_text())["feasible"] is False


def test_search_resource_exit_code(runner, tmp_path):
    result = runner.invoke(main, ["search", "61", "--out", str(tmp_path / "x.json")])
    assert result.exit_code == 3
    assert "--force" in result.output


def test_search_component_token_errors(runner, tmp_path):
    result = runner.invoke(
        main, ["search", "10", "--force-in", "W3", "--out", str(tmp_path / "x.json")]
    )
    assert result.exit_code == 2  # 3 does not divide 10


def test_certify_summary_and_certificate(runner, tmp_path):
    cert = tmp_path / "cert10.json"
    result = runner.invoke(main, ["certify", "10", "--out", str(cert)])
    assert result.exit_code == 0
    assert "gamma(S_10) = 3" in result.output
    assert "no size-3 cover contains P_2" in result.output
    check = runner.invoke(main, ["check-certificate", str(cert)])
    assert check.exit_code == 0

    result = runner.invoke(main, ["certify", "8", "--out", str(tmp_path / "no.json")])
    assert result.exit_code == 2


def test_shapes_listing(runner):
    result = runner.invoke(main, ["shapes", "6"])
    assert result.exit_code == 0
    assert "[1^2,4]" in result.output and "3 shapes" in result.output
    result = runner.invoke(main, ["shapes", "6", "--format", "json"])
    rows = json.loads(result.output)
    assert rows[0] == {"n": 6, "pair": [1, 2], "parts": [4]}


def test_compare_gh_range_and_construct(runner, tmp_path):
    result = runner.invoke(main, ["compare-gh", "--from", "6", "--to", "12"])
    assert result.exit_code == 0
    assert "n=6" in result.output and "g < h" in result.output
    result = runner.invoke(main, ["compare-gh", "--construct"])
    assert result.exit_code == 0
    assert "955049953" in result.output and "h(n) = 398429696 < g(n) = 400720262" in result.output
    fig = tmp_path / "gh.png"
    result = runner.invoke(
        main, ["compare-gh", "--from", "6", "--to", "30", "--plot", str(fig)]
    )
    assert result.exit_code == 0 and fig.exists()
    assert runner.invoke(main, ["compare-gh"]).exit_code == 2
