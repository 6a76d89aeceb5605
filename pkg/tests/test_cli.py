"""End-to-end tests of the command line interface via main(argv)."""

import math

import pytest

from eulerchar import Spectrum, to_document, preset, write_spectrum_csv
from eulerchar.cli import main

PLAN_BLOCK_LASSO = """\
eps_bar=0.25
M_bar=2
L_bar=6
lmin_lower=1
t=1
rho=12
alpha_star=1.288289240136656
d=1
J=48
beta=47.24287600227821
delta_max=0.002604166666666667
eps_value=0.2389897934478469
eps_prev=0.2536934813826548
"""


def test_plan_golden_block(capsys):
    code = main(["plan", "--M", "2", "--L", "6", "--lmin", "1"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.startswith(PLAN_BLOCK_LASSO)


def test_plan_from_graph_priors(capsys):
    code = main(["plan", "--graph", "k5"])
    out = capsys.readouterr().out
    assert code == 0
    assert "J=41" in out
    assert "t=0.5" in out


def test_plan_missing_arguments(capsys):
    code = main(["plan", "--M", "2"])
    err = capsys.readouterr().err
    assert code == 2
    assert "error" in err.lower() or "--lmin" in err


def test_plan_bad_eps(capsys):
    code = main(["plan", "--M", "2", "--L", "6", "--lmin", "1", "--eps", "1.5"])
    assert code == 2


def test_spectrum_csv_output(tmp_path, capsys):
    out = tmp_path / "lasso.csv"
    code = main(["spectrum", "lasso", "--count", "20", "-o", str(out)])
    assert code == 0
    assert "wrote 20 eigenfrequencies" in capsys.readouterr().out
    lines = out.read_text().splitlines()
    notes = [ln for ln in lines if ln.startswith("#")]
    data = [ln for ln in lines if not ln.startswith("#")]
    assert any("cross-validated against von Below" in ln for ln in notes)
    assert any("graph=lasso" in ln for ln in notes)
    assert data[0] == "j,k"
    assert data[1] == "1,0.0000000000000000e+00"
    assert len(data) == 21


def test_spectrum_stdout_when_no_output_file(capsys):
    code = main(["spectrum", "lasso", "--count", "5"])
    out = capsys.readouterr().out
    assert code == 0
    assert "j,k" in out
    assert "1,0.0000000000000000e+00" in out


def test_spectrum_von_below_needs_equilateral(tmp_path, capsys):
    # A graph with incommensurable lengths cannot be subdivided; explicit
    # von Below must fail while auto falls back to secular with a note.
    doc = tmp_path / "weird.json"
    g = preset("lasso")
    text = to_document(g).replace("5.0", "5.000000001")
    doc.write_text(text)
    code = main(["spectrum", str(doc), "--count", "5", "--method", "von-below"])
    assert code == 2
    out_file = tmp_path / "weird.csv"
    code = main(["spectrum", str(doc), "--count", "5", "-o", str(out_file)])
    assert code == 0
    assert "cross-check skipped" in out_file.read_text()


def test_estimate_recovers_chi(tmp_path, capsys):
    csv = tmp_path / "lasso.csv"
    assert main(["spectrum", "lasso", "--count", "48", "-o", str(csv)]) == 0
    capsys.readouterr()
    code = main(["estimate", "--spectrum", str(csv), "--graph", "lasso"])
    out = capsys.readouterr().out
    assert code == 0
    assert "chi_hat=0" in out
    s_line = next(ln for ln in out.splitlines() if ln.startswith("S="))
    assert float(s_line[2:]) == pytest.approx(0.008940398590236542, abs=1e-6)
    bound_line = next(ln for ln in out.splitlines() if ln.startswith("bound="))
    # tail_bound(1, 46, 6) plus the 2 tol J / t term for the secular tol.
    assert float(bound_line[6:]) == pytest.approx(0.237906360519373, abs=1e-12)


def test_estimate_explicit_parameters(tmp_path, capsys):
    csv = tmp_path / "lasso.csv"
    assert main(["spectrum", "lasso", "--count", "48", "-o", str(csv)]) == 0
    capsys.readouterr()
    code = main(
        ["estimate", "--spectrum", str(csv), "--t", "1", "--J", "48", "--d", "1",
         "--M", "2", "--L", "6"]
    )
    out = capsys.readouterr().out
    assert code == 0
    assert "chi_hat=0" in out


def test_estimate_bound_violation(tmp_path, capsys):
    # A comb shifted off any legal spectrum: the sum lands far from every
    # integer while the claimed priors certify a tight bound.
    values = (0.0,) + tuple((j - 1) * math.pi + 1.3 for j in range(2, 41))
    s = Spectrum(values=values, k_max_covered=values[-1] + 0.1,
                 method="external", tol=0.0)
    csv = tmp_path / "fake.csv"
    write_spectrum_csv(csv, s)
    code = main(
        ["estimate", "--spectrum", str(csv), "--t", "1", "--J", "40", "--d", "1",
         "--M", "2", "--L", "1"]
    )
    captured = capsys.readouterr()
    assert code == 1
    assert "bound violation" in captured.err


def test_estimate_missing_file(tmp_path):
    assert main(["estimate", "--spectrum", str(tmp_path / "none.csv"),
                 "--graph", "lasso"]) == 2


def test_perturb_deterministic(tmp_path, capsys):
    csv = tmp_path / "lasso.csv"
    assert main(["spectrum", "lasso", "--count", "10", "-o", str(csv)]) == 0
    a = tmp_path / "noisy-a.csv"
    b = tmp_path / "noisy-b.csv"
    for path in (a, b):
        code = main(["perturb", "--spectrum", str(csv), "--delta", "0.002",
                     "--seed", "7", "-o", str(path)])
        assert code == 0
    assert a.read_text() == b.read_text()
    assert "delta=0.002" in a.read_text()
    c = tmp_path / "noisy-c.csv"
    assert main(["perturb", "--spectrum", str(csv), "--delta", "0.002",
                 "--seed", "8", "-o", str(c)]) == 0
    assert c.read_text() != a.read_text()


def test_perturb_updates_tolerance(tmp_path):
    csv = tmp_path / "lasso.csv"
    assert main(["spectrum", "lasso", "--count", "10", "-o", str(csv)]) == 0
    noisy = tmp_path / "noisy.csv"
    assert main(["perturb", "--spectrum", str(csv), "--delta", "0.002",
                 "-o", str(noisy)]) == 0
    text = noisy.read_text()
    assert "tol=2.0000001000000001e-03" in text  # secular tol 1e-10 plus delta


def test_verify_trace_passes(capsys):
    code = main(["verify-trace", "--graph", "lasso", "--t", "0.4", "--d", "1"])
    out = capsys.readouterr().out
    assert code == 0
    assert "trace identity holds" in out
    gap = float(next(ln for ln in out.splitlines() if ln.startswith("gap="))[4:])
    bound = float(
        next(ln for ln in out.splitlines() if ln.startswith("certified_bound="))[16:]
    )
    assert gap <= bound + 1e-9


def test_verify_trace_triangular(capsys):
    code = main(["verify-trace", "--graph", "loop.json", "--t", "0.5", "--psi"])
    assert code == 2  # unknown file
    code = main(["verify-trace", "--graph", "lasso", "--t", "0.5", "--psi"])
    out = capsys.readouterr().out
    assert code == 0
    assert "trace identity holds" in out


def test_experiment_table(tmp_path, capsys):
    code = main(["experiment", "table", "--out", str(tmp_path)])
    out = capsys.readouterr().out
    assert code == 0
    table = (tmp_path / "table.csv").read_text().splitlines()
    assert table[0] == "rho,d,J_minus_M"
    assert table[1] == "2,1,5"
    assert table[2] == "15.6,1,65"
    assert table[3] == "16.5,2,70"
    assert table[4] == "421,2,2911"
    assert table[5] == "423,3,2926"
    assert table[6] == "10000,3,96360"
    assert "rho=2" in out


def test_experiment_lasso_outputs(tmp_path, capsys):
    code = main(["experiment", "lasso", "--seeds", "2", "--out", str(tmp_path)])
    out = capsys.readouterr().out
    assert code == 0
    assert "2/2 correct" in out
    for name in (
        "plan.txt",
        "spectrum.csv",
        "recovery.csv",
        "sweep_t.csv",
        "sweep_t.svg",
        "testfn_compare.csv",
        "testfn_compare.svg",
        "error_vs_t.csv",
        "error_vs_t.svg",
        "error_vs_J.csv",
        "error_vs_J.svg",
    ):
        assert (tmp_path / name).exists(), name
    lines = (tmp_path / "recovery.csv").read_text().splitlines()
    echo = [ln for ln in lines if ln.startswith("#")]
    rows = [ln for ln in lines if not ln.startswith("#")]
    assert "# J=48" in echo
    assert rows[0] == "t,J,S,abs_err,bound,seed"
    assert len(rows) == 4  # header, exact row, two seeds
    assert rows[1].endswith(",-1")
    # Every SVG has a CSV twin.
    for svg in tmp_path.glob("*.svg"):
        assert svg.with_suffix(".csv").exists()


def test_experiment_deterministic(tmp_path):
    a_dir = tmp_path / "a"
    b_dir = tmp_path / "b"
    assert main(["experiment", "lasso", "--seeds", "2", "--out", str(a_dir)]) == 0
    assert main(["experiment", "lasso", "--seeds", "2", "--out", str(b_dir)]) == 0
    for name in ("recovery.csv", "sweep_t.csv", "sweep_t.svg", "error_vs_J.csv"):
        assert (a_dir / name).read_bytes() == (b_dir / name).read_bytes(), name


def test_experiment_compare(tmp_path, capsys):
    code = main(["experiment", "compare", "--out", str(tmp_path)])
    out = capsys.readouterr().out
    assert code == 0
    assert (tmp_path / "compare.csv").exists()
    assert (tmp_path / "compare.svg").exists()
    header = (tmp_path / "compare.csv").read_text().splitlines()
    data = [ln for ln in header if not ln.startswith("#")]
    assert data[0] == "t,k5,k5_pendant,k33"
    assert "k5: chi=-5" in out


def test_experiment_custom_graph(tmp_path, capsys):
    doc = tmp_path / "loop.json"
    doc.write_text(to_document(preset("lasso")))
    code = main(["experiment", str(doc), "--seeds", "1", "--out",
                 str(tmp_path / "run")])
    assert code == 0
    assert (tmp_path / "run" / "recovery.csv").exists()


def test_experiment_unknown_input(tmp_path):
    assert main(["experiment", str(tmp_path / "missing.json"), "--out",
                 str(tmp_path / "x")]) == 2


def test_spectrum_unknown_graph(tmp_path):
    assert main(["spectrum", str(tmp_path / "nope.json")]) == 2


def test_no_arguments_shows_usage(capsys):
    code = main([])
    assert code == 2
