"""Command-line surface: report contents, determinism, exit codes."""

import pytest

from selfrwa.cli import main


def run_to_file(tmp_path, args, name="out.csv"):
    path = tmp_path / name
    rc = main([*args, "--out", str(path)])
    return rc, path.read_text()


def data_rows(text):
    return [l for l in text.splitlines() if l and not l.startswith("#") and not l[0].isalpha()]


def test_bands_default_report(tmp_path):
    rc, text = run_to_file(tmp_path, ["bands"])
    assert rc == 0
    lines = text.splitlines()
    assert lines[0] == "# selfrwa bands"
    assert "# g0sq=10.0" in lines
    assert "k,n,energy" in lines
    rows = data_rows(text)
    assert len(rows) == 101 * 6
    assert rows[0] == "-0.5,0,-8.450769029120966"
    # the lowest band of a deep lattice is nearly flat
    e0 = [float(r.split(",")[2]) for r in rows if r.split(",")[1] == "0"]
    assert len(e0) == 101
    assert max(e0) - min(e0) < 1e-6


def test_bands_free_particle_row(tmp_path):
    rc, text = run_to_file(tmp_path, ["bands", "--g0sq", "0", "--kpoints", "5", "--bands", "2"])
    assert rc == 0
    assert "0.0,0,0.0" in text.splitlines()


def test_bands_emits_cutoff_warning_comment(tmp_path):
    rc, text = run_to_file(
        tmp_path, ["bands", "--g0sq", "40", "--kpoints", "5", "--bands", "6", "--mmax", "14"]
    )
    assert rc == 0
    assert any(l.startswith("# warning:") for l in text.splitlines())


@pytest.mark.parametrize(
    "args",
    [
        ["bands", "--kpoints", "7", "--bands", "2"],
        ["veff", "--steps", "9"],
        ["morse-errors", "--lambda-min", "10", "--lambda-max", "10", "--steps", "1"],
        ["identities"],
    ],
)
def test_reports_are_byte_deterministic(tmp_path, args):
    _, first = run_to_file(tmp_path, args, "a.csv")
    _, second = run_to_file(tmp_path, args, "b.csv")
    assert first == second


def test_stdout_mode(capsys):
    rc = main(["veff", "--steps", "3", "--alpha", "1.0"])
    assert rc == 0
    out = capsys.readouterr().out
    assert out.startswith("# selfrwa veff")
    assert "x,alpha,v_normalized" in out


def test_veff_grid_and_zero(tmp_path):
    rc, text = run_to_file(tmp_path, ["veff", "--steps", "5"])
    assert rc == 0
    rows = [r.split(",") for r in data_rows(text)]
    alphas = sorted({r[1] for r in rows})
    assert alphas == ["0.1", "1.0", "10.0"]
    assert len(rows) == 15
    for x, _, v in rows:
        if x == "0.0":
            assert v == "0.0"


def test_morse_errors_frozen_deltas(tmp_path):
    rc, text = run_to_file(
        tmp_path, ["morse-errors", "--lambda-min", "10", "--lambda-max", "10", "--steps", "1"]
    )
    assert rc == 0
    rows = [r.split(",") for r in data_rows(text)]
    assert len(rows) == 6
    assert rows[0][5] == "derivation"
    assert float(rows[0][4]) == pytest.approx(0.049488431341, rel=1e-9)

    rc, text = run_to_file(
        tmp_path,
        ["morse-errors", "--lambda-min", "10", "--lambda-max", "10", "--steps", "1", "--variant", "printed"],
        "p.csv",
    )
    rows = [r.split(",") for r in data_rows(text)]
    assert float(rows[0][4]) == pytest.approx(0.205010517, rel=1e-8)


def test_morse_errors_clamps_unbound_levels(tmp_path):
    rc, text = run_to_file(
        tmp_path, ["morse-errors", "--lambda-min", "2", "--lambda-max", "2", "--steps", "1"]
    )
    assert rc == 0
    assert "# lambda=2.0: levels 3..5 unbound (n_max=2)" in text.splitlines()
    assert len(data_rows(text)) == 3


def test_cosine_errors_frozen_delta(tmp_path):
    rc, text = run_to_file(
        tmp_path,
        ["cosine-errors", "--steps", "1", "--g0sq-min", "10", "--g0sq-max", "10", "--dim", "256", "--nmax", "3"],
    )
    assert rc == 0
    rows = [r.split(",") for r in data_rows(text)]
    assert len(rows) == 4
    assert float(rows[0][4]) == pytest.approx(1.4653e-3, rel=1e-3)
    for r in rows:
        assert float(r[4]) >= 0.0


def test_identities_report(tmp_path):
    rc, text = run_to_file(tmp_path, ["identities"])
    assert rc == 0
    lines = text.splitlines()
    assert any(l.startswith("cosine,") for l in lines)
    printed = [l for l in lines if l.startswith("gaussian-as-printed,")]
    assert len(printed) == 1
    assert ",paper-formula-discrepant," in printed[0]
    assert not any(",failed," in l for l in lines)


def test_selftest_report(capsys):
    rc = main(["selftest"])
    assert rc == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 7
    assert "FAIL" not in out


def test_figure_rendering(tmp_path):
    for args, name in [
        (["bands", "--kpoints", "7", "--bands", "2"], "b.csv"),
        (["veff", "--steps", "9"], "v.csv"),
        (["morse-errors", "--lambda-min", "10", "--lambda-max", "12", "--steps", "2"], "m.csv"),
    ]:
        rc, _ = run_to_file(tmp_path, [*args, "--fig"], name)
        assert rc == 0
        png = tmp_path / name.replace(".csv", ".png")
        assert png.exists() and png.stat().st_size > 1000


@pytest.mark.parametrize(
    "args",
    [
        [],
        ["bands", "--no-such-flag"],
        ["bands", "--kpoints", "1"],
        ["bands", "--bands", "0"],
        ["bands", "--mmax", "10"],
        ["bands", "--fig"],
        ["cosine-errors", "--nmax", "9"],
        ["cosine-errors", "--dim", "70"],
        ["cosine-errors", "--steps", "0"],
        ["morse-errors", "--nmax", "-1"],
        ["veff", "--alpha", "0"],
        ["identities", "--tol", "0"],
    ],
)
def test_usage_errors_exit_one(args, capsys):
    assert main(args) == 1
    err = capsys.readouterr().err
    assert "selfrwa" in err and "error" in err


def test_numerical_failure_exits_two(tmp_path):
    # a tolerance below the quadrature floor turns every report row into a
    # failure, which the CLI maps to the numerical-failure exit code
    path = tmp_path / "f.csv"
    rc = main(["identities", "--tol", "1e-30", "--out", str(path)])
    assert rc == 2
    assert ",failed," in path.read_text()
