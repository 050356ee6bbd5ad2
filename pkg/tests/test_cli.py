"""Command-line interface: schemas, exit codes, and determinism."""

import csv
import io
import json

import pytest

from alphacf.cli import main, parse_alpha, parse_word_arg, _dec_fraction
from fractions import Fraction


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def parse_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], rows[1:]


def test_tree_schema_and_golden(capsys):
    code, out = run_cli(capsys, "tree", "--len-max", "3", "--q-cap", "2")
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["word", "path", "parent", "prime", "derived",
                      "full_prefix", "palindrome"]
    by_word = {r[0]: r for r in rows}
    assert "1" in by_word
    assert by_word["1 1 1"][header.index("full_prefix")] == "1 1"


def test_intervals_schema(capsys):
    code, out = run_cli(capsys, "--n", "3", "intervals", "--regime", "small",
                        "--k-max", "1", "--len-max", "1", "--q-cap", "0")
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["regime", "k", "v", "zeta_exact", "zeta_dec",
                      "eta_exact", "eta_dec", "omega_exact", "omega_dec",
                      "i", "j", "length_dec"]
    assert rows[0][0] == "small" and rows[0][1] == "1" and rows[0][2] == "1"
    assert rows[0][header.index("i")] == "5"
    assert rows[0][header.index("j")] == "2"
    # decimals of the golden endpoints (in alpha units: x/t with t = 2)
    assert rows[0][header.index("zeta_dec")].startswith("0.104356")
    assert rows[0][header.index("eta_dec")].startswith("0.179128")


def test_verify_exit_codes(capsys):
    code, out = run_cli(capsys, "--n", "3", "verify", "--k", "1",
                        "--v", "1", "--samples", "3")
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["alpha", "i", "j", "relation_ok", "note"]
    assert all(r[3] == "True" for r in rows)
    # an alpha outside the interval fails verification -> exit 1
    code, _ = run_cli(capsys, "--n", "3", "verify", "--k", "1",
                      "--v", "1", "--alpha", "1/2")
    assert code == 1


def test_orbit_output(capsys):
    code, out = run_cli(capsys, "--n", "3", "orbit", "--alpha", "2/5",
                        "--start", "r0", "--steps", "4")
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["step", "digit_k", "digit_l", "value_dec"]
    assert rows[0][0] == "0" and rows[0][3].startswith("0.8")
    assert rows[1][1] == "-3" and rows[1][2] == "2"


def test_measure_output(capsys):
    code, out = run_cli(capsys, "--n", "3", "measure", "--regime", "small",
                        "--k-max", "2", "--len-max", "3", "--q-cap", "2")
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["k_max", "coverage_lo", "coverage_hi"]
    assert [r[0] for r in rows] == ["1", "2"]
    assert float(rows[0][1]) < float(rows[1][1]) < 1.0


def test_identities_pass(capsys):
    code, out = run_cli(capsys, "identities", "--n-max", "3", "--k-max", "1")
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["identity", "params", "passed"]
    assert rows and all(r[2] == "True" for r in rows)


def test_json_format(capsys):
    code, out = run_cli(capsys, "--format", "json", "tree",
                        "--len-max", "1", "--q-cap", "1")
    assert code == 0
    data = json.loads(out)
    assert isinstance(data, list) and data[0]["word"] == "1"


def test_determinism(capsys):
    a = run_cli(capsys, "--n", "3", "intervals", "--regime", "small",
                "--k-max", "2", "--len-max", "3", "--q-cap", "2")
    b = run_cli(capsys, "--n", "3", "intervals", "--regime", "small",
                "--k-max", "2", "--len-max", "3", "--q-cap", "2")
    assert a == b


def test_decimal_append_only(capsys):
    _, lo = run_cli(capsys, "--precision-bits", "64", "--n", "3",
                    "intervals", "--regime", "small", "--k-max", "1",
                    "--len-max", "1", "--q-cap", "0")
    _, hi = run_cli(capsys, "--precision-bits", "128", "--n", "3",
                    "intervals", "--regime", "small", "--k-max", "1",
                    "--len-max", "1", "--q-cap", "0")
    h, rlo = parse_csv(lo)
    _, rhi = parse_csv(hi)
    for col in ("zeta_dec", "eta_dec", "omega_dec"):
        i = h.index(col)
        assert rhi[0][i].startswith(rlo[0][i])


def test_usage_errors(capsys):
    assert main(["verify", "--k", "1", "--v", "2 1 1"]) == 2   # not a word
    capsys.readouterr()
    assert main(["intervals", "--regime", "bogus"]) == 2
    capsys.readouterr()
    assert main(["nonsense"]) == 2
    capsys.readouterr()


def test_out_file(tmp_path, capsys):
    target = tmp_path / "tree.csv"
    code = main(["--out", str(target), "tree", "--len-max", "1",
                 "--q-cap", "1"])
    capsys.readouterr()
    assert code == 0
    header, rows = parse_csv(target.read_text())
    assert header[0] == "word"


def test_figure_data_png(tmp_path, capsys):
    target = tmp_path / "fig.png"
    code = main(["--n", "3", "--out", str(target), "figure-data",
                 "--figure", "cylinders", "--samples", "12"])
    out = capsys.readouterr().out
    assert code == 0
    assert target.exists() and target.stat().st_size > 1000
    header, rows = parse_csv(out)
    assert header == ["alpha", "l1", "l2", "l3", "l4", "l5", "r2"]
    markers = [r for r in rows if r[0].startswith("marker:")]
    assert {m[0] for m in markers} == {"marker:zeta_1_1", "marker:eta_1_1"}


def test_parse_helpers():
    assert parse_word_arg("1-2-1").letters == (1, 2, 1)
    assert parse_alpha("1/3", 3) == Fraction(1, 3)
    g = parse_alpha("gamma", 3)
    assert 4 * g * g - 6 * g + 1 == 0
    z = parse_alpha("zeta:1:1", 3)
    zz = 2 * z
    assert zz * zz - 5 * zz + 1 == 0
    assert _dec_fraction(Fraction(-1, 8), 4) == "-0.1250"
    with pytest.raises(Exception):
        parse_alpha("not-a-number", 3)
