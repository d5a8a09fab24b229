
from frobstats.cli import EXIT_BUDGET, EXIT_OK, EXIT_USAGE, main, parse_range


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_range():
    assert parse_range("1..4") == [1, 2, 3, 4]
    assert parse_range("2,5..6") == [2, 5, 6]


def test_verify(capsys):
    code, out, _ = _run(capsys, ["verify", "--q", "3", "--g", "2"])
    assert code == EXIT_OK
    assert out.startswith("# frobstats ")
    rows = dict(line.split(",") for line in out.splitlines()[2:])
    assert int(rows["explicit_formula"]) == 6 * 1296


def test_moments_deterministic(capsys, tmp_path):
    argv = ["moments", "--kind", "quadratic", "--q", "3", "--g", "3", "--n", "1..8"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(argv + ["--out", str(a)]) == EXIT_OK
    assert main(argv + ["--out", str(b)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    rows = [r.split(",") for r in a.read_text().splitlines()[2:]]
    for r in rows:
        if int(r[3]) % 2:
            assert r[4] == "0"


def test_old_support_guard(capsys):
    code, _, err = _run(capsys, ["old", "--kind", "ell", "--ell", "3", "--q", "7", "--d", "4", "--alpha", "0.5"])
    assert code == EXIT_USAGE and "1/(ell-1)" in err
    code, out, _ = _run(capsys, ["old", "--kind", "ell", "--ell", "3", "--q", "7", "--d", "4", "--alpha", "0.3"])
    assert code == EXIT_OK


def test_budget_exit(capsys):
    code, _, err = _run(capsys, ["family", "--q", "3", "--g", "5", "--budget", "100"])
    assert code == EXIT_BUDGET and "budget" in err


def test_usage_errors(capsys):
    assert _run(capsys, ["bogus"])[0] == EXIT_USAGE
    assert _run(capsys, ["moments", "--q", "3"])[0] == EXIT_USAGE


def test_estimate_label(capsys):
    code, out, _ = _run(capsys, ["moments", "--q", "3", "--g", "8", "--sample", "50", "--seed", "3", "--n", "2"])
    assert code == EXIT_OK and "ESTIMATE" in out


def test_zeta_and_lindelof(capsys):
    code, out, _ = _run(capsys, ["zeta", "--q", "3", "--coeffs", "0 2 0 1"])
    assert code == EXIT_OK and ",1 0 3," in out
    code, out, _ = _run(capsys, ["lindelof", "--q", "3", "--dmin", "3", "--dmax", "4", "--grid", "256"])
    assert code == EXIT_OK and out.splitlines()[1].startswith("q,ell,v0")


def test_density(capsys):
    code, out, _ = _run(capsys, ["density", "--q", "3", "--g", "2"])
    assert code == EXIT_OK
    assert len(out.splitlines()) == 2 + 3 * 3
