import csv
import io
import math
import subprocess
import sys

import pytest

from filmseries.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    body = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(body))))


def test_roots_reference(capsys):
    code, out, _ = run(capsys, "roots", "--reference")
    assert code == 0
    table = rows(out)
    assert len(table) == 25
    assert abs(float(table[0]["q_n"]) - 3.0371) <= 0.01
    assert out.splitlines()[0] == "n,q_n,residual_pct,F_residual"


def test_roots_gamma_zero(capsys):
    code, out, _ = run(capsys, "roots", "--gamma", "0", "--epsilon", "0.3", "--n-roots", "5")
    assert code == 0
    for k, r in enumerate(rows(out), start=1):
        assert float(r["q_n"]) == pytest.approx(k * math.pi, abs=1e-12)
    assert "limit convention" in out


def test_roots_fifty(capsys):
    code, out, _ = run(capsys, "roots", "--reference", "--n-roots", "50")
    qs = [float(r["q_n"]) for r in rows(out)]
    assert code == 0 and len(qs) == 50
    assert all(b > a for a, b in zip(qs, qs[1:]))


def test_roots_markdown_to_file(capsys, tmp_path):
    code, out, _ = run(capsys, "roots", "--reference", "--format", "markdown", "--out", str(tmp_path))
    assert code == 0
    text = (tmp_path / "table1.md").read_text()
    assert "| 1 | 3.0372 |" in text
    assert "wrote" in out


def test_missing_constants_is_usage_error(capsys):
    code, _, err = run(capsys, "roots")
    assert code == 2
    assert "model constants required" in err


def test_bad_argument_exits_2():
    with pytest.raises(SystemExit) as info:
        main(["verify", "4", "--reference"])
    assert info.value.code == 2


def test_verify_formula1_defaults(capsys):
    code, out, _ = run(capsys, "verify", "1", "--reference")
    assert code == 0
    table = rows(out)
    assert len(table) == 11
    assert abs(float(table[4]["lhs"]) - 0.06457) <= 1e-5


def test_verify_tight_tolerance_fails(capsys):
    code, _, err = run(capsys, "verify", "1", "--reference", "--tol", "1e-3")
    assert code == 1
    assert "exceeds" in err


def test_verify_formula3_pi_squared(capsys):
    code, out, _ = run(capsys, "verify", "3", "--p", "9.8696044")
    assert code == 0
    (r,) = rows(out)
    assert float(r["lhs"]) == pytest.approx(math.pi / math.tanh(math.pi), rel=1e-8)


def test_verify_formula2_truncation(capsys):
    diffs = []
    for n in ("20", "25"):
        _, out, _ = run(capsys, "verify", "2", "--reference", "--p", "1e3", "--n-terms", n, "--tol", "1")
        diffs.append(float(rows(out)[0]["abs_diff"]))
    assert diffs[0] > diffs[1]


def test_verify_fixture_limits(capsys):
    code, _, err = run(capsys, "verify", "1", "--reference", "--n-terms", "30")
    assert code == 2
    assert "fixture has 25 roots" in err
    code, _, _ = run(capsys, "verify", "1", "--gamma", "0.1", "--epsilon", "0.2",
                     "--roots-source", "fixture")
    assert code == 2


def test_verify_solver_roots(capsys):
    code, out, _ = run(capsys, "verify", "1", "--reference", "--roots-source", "solver",
                       "--n-terms", "400", "--n-roots", "400", "--p", "1", "--tol", "1e-6")
    assert code == 0


def test_verify_roots_from_file(capsys, tmp_path):
    _, out, _ = run(capsys, "roots", "--reference", "--n-roots", "30")
    path = tmp_path / "roots.csv"
    path.write_text(out)
    code, out, _ = run(capsys, "verify", "2", "--reference", "--roots-source", str(path),
                       "--n-terms", "30", "--p", "1")
    assert code == 0


def test_verify_rejects_bad_p(capsys):
    code, _, _ = run(capsys, "verify", "1", "--reference", "--p", "-1")
    assert code == 2


def test_profile_csv(capsys):
    code, out, _ = run(capsys, "profile", "a", "--reference", "--x", "0", "--x", "1",
                       "--tau", "0.01", "--tau", "50")
    assert code == 0
    table = rows(out)
    assert list(table[0]) == ["kind", "x", "tau", "value"]
    assert float(table[0]["value"]) == pytest.approx(0.81109691258999331189, rel=1e-13)
    assert [float(r["value"]) for r in table if float(r["x"]) == 1.0] == [0.0, 0.0]
    steady = [float(r["value"]) for r in table if float(r["tau"]) == 50.0 and float(r["x"]) == 0.0]
    assert steady[0] == pytest.approx(1 / 1.03421, abs=1e-15)


def test_profile_out_of_range(capsys):
    code, _, err = run(capsys, "profile", "theta", "--reference", "--x", "1.5")
    assert code == 2
    assert "x = 1.5" in err


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# water vapour / LiBr\ngamma = -0.03421\nepsilon = 2.64489e-3\nn_roots = 7\n")
    code, out, _ = run(capsys, "roots", "--config", str(cfg))
    assert code == 0
    assert len(rows(out)) == 7
    # flags override the file
    code, out, _ = run(capsys, "roots", "--config", str(cfg), "--n-roots", "3")
    assert len(rows(out)) == 3


def test_config_errors(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("gamma = minus one\nepsilon = 0.1\n")
    assert run(capsys, "roots", "--config", str(cfg))[0] == 2
    assert run(capsys, "roots", "--config", str(tmp_path / "missing.cfg"))[0] == 2


def test_numerical_failure_exit_1(capsys):
    # 1 - gamma = 0 is degenerate
    code, _, err = run(capsys, "roots", "--gamma", "1", "--epsilon", "0.5")
    assert code == 1
    assert err.startswith("filmseries:")


def test_all_writes_tables_and_reports(capsys, tmp_path):
    code, out, _ = run(capsys, "all", "--reference", "--out", str(tmp_path))
    for name in ("table1.csv", "table2.csv", "table3.csv"):
        assert (tmp_path / name).exists()
    lines = [ln for ln in out.splitlines() if ln.startswith("[")]
    assert len(lines) == 10
    # exit status mirrors the check results
    assert code == (0 if all(ln.startswith("[PASS]") for ln in lines) else 1)


def test_outputs_byte_stable(tmp_path):
    texts = []
    for k in range(2):
        out = tmp_path / str(k)
        # exit 1: the 25-term series falls far short of the closed form at large p
        proc = subprocess.run(
            [sys.executable, "-m", "filmseries", "verify", "2", "--reference", "--out", str(out)],
            capture_output=True, text=True,
        )
        assert proc.returncode == 1
        assert "p = 1e+06" in proc.stderr
        texts.append((out / "table3.csv").read_bytes())
    assert texts[0] == texts[1]
