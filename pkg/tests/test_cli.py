import json
import math

import pytest

from dickmanlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_rho_value(capsys):
    code, out = run(capsys, "rho", "--x", "1.5")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "x,rho,density,cdf"
    fields = lines[1].split(",")
    assert float(fields[1]) == pytest.approx(1 - math.log(1.5), abs=1e-10)


def test_pmf_rows(capsys):
    code, out = run(capsys, "pmf", "--n", "3")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 5
    got = {int(r.split(",")[0]): float(r.split(",")[1]) for r in lines[1:]}
    assert got[1] == pytest.approx(1 / 3, abs=1e-15)
    assert got[6] == pytest.approx(1 / 6, abs=1e-15)


def test_llt_table_monotone(capsys):
    code, out = run(capsys, "llt-table", "--n", "125,250,500")
    assert code == 0
    errs = [float(r.split(",")[3]) for r in out.strip().splitlines()[1:]]
    assert errs[0] > errs[1] > errs[2]


def test_json_format_carries_config(capsys):
    code, out = run(capsys, "rho", "--x", "2", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["command"] == "rho"
    assert doc["config"]["x"] == [2.0]
    assert len(doc["rows"]) == 1


def test_byte_identical_reports(capsys):
    args = ("aslt", "--N", "20000", "--paths", "3", "--seed", "11")
    _, first = run(capsys, *args)
    _, second = run(capsys, *args)
    assert first == second
    assert first.splitlines()[0] == "path,seed,N,hits,log_avg"


def test_lemmino_exit_codes(capsys):
    code, out = run(capsys, "lemmino", "--x", "1", "--eps", "0.2",
                    "--m", "40", "--n", "50")
    assert code == 0
    assert out.strip().splitlines()[1].endswith("true")
    code, _ = run(capsys, "lemmino", "--x", "1", "--eps", "0.2",
                  "--m", "40", "--n", "70")
    assert code == 2  # outside the band: usage error


def test_golden_check_passes(capsys):
    code, _ = run(capsys, "stimabase", "--golden", "check")
    assert code == 0
    code, _ = run(capsys, "cov-audit", "--regime", "diag", "--golden", "check")
    assert code == 0


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["stimabase", "--m", "3"])
    assert exc.value.code == 2
    code, _ = run(capsys, "pmf", "--n", "70", "--mode", "exact")
    assert code == 2  # beyond the exact-mode cap


def test_zs_command(capsys):
    code, out = run(capsys, "zs", "--n", "2,4")
    assert code == 0
    rows = out.strip().splitlines()[1:]
    assert float(rows[0].split(",")[1]) == pytest.approx(2 * math.pi, abs=1e-12)


def test_cumulants_dump(capsys):
    code, out = run(capsys, "cumulants", "--n", "3")
    assert code == 0
    lines = out.strip().splitlines()
    assert "coeff,3,3,2" in lines  # leading coefficient of x(1-x)(1-2x)


def test_output_file_respects_outdir(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("DICKMANLAB_OUTDIR", str(tmp_path))
    code, _ = run(capsys, "rho", "--x", "1", "--output", "r.csv")
    assert code == 0
    assert (tmp_path / "r.csv").read_text().splitlines()[1].startswith("1,1,")
