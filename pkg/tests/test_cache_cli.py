import csv
import io
import subprocess
import sys

import pytest

from primepairs.cache import ENV_VAR, FIELDS, SCHEMA_VERSION, ConstantCache, default_cache_dir
from primepairs.cli import EXIT_OK, EXIT_OVERFLOW, EXIT_USAGE, RunConfig, run
from primepairs.constants import c_constant, gamma_constant
from primepairs.residues import OffsetPolynomial, PairFamily


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv(ENV_VAR, str(tmp_path / "cache"))
    return tmp_path / "cache"


def cli(*args):
    buf = io.StringIO()
    code = run(list(args), out=buf)
    return code, buf.getvalue()


def rows(text):
    return list(csv.reader(io.StringIO(text)))


# --- cache -----------------------------------------------------------------------


def test_cache_round_trip(isolated_cache):
    cache = ConstantCache()
    assert cache.directory == isolated_cache and len(cache) == 0
    est = c_constant(PairFamily(2, -2), 1000)
    cache.put("C", 2, -2, 1000, est)
    again = ConstantCache().get("C", 2, -2, 1000)
    assert again == est
    assert ConstantCache().get("C", 2, -2, 999) is None


def test_cache_file_schema(isolated_cache):
    cache = ConstantCache()
    cache.put("C", 2, 2, 100, c_constant(PairFamily(2, 2), 100))
    cache.put("gamma", 3, 1, 100, gamma_constant(OffsetPolynomial(3, 1), 100))
    cache.put("gamma", 3, 1, 100, gamma_constant(OffsetPolynomial(3, 1), 100))  # duplicate ignored
    table = rows(cache.path.read_text())
    assert tuple(table[0]) == FIELDS
    assert len(table) == 3
    assert table[1][:4] == ["C", "2", "2", "100"] and table[1][5:] == ["1", "0", str(SCHEMA_VERSION)]
    assert table[2][5:7] == ["0", "1"]


def test_cache_skips_other_schema_versions_and_torn_rows(isolated_cache):
    isolated_cache.mkdir(parents=True)
    path = isolated_cache / "constants.csv"
    path.write_text(
        ",".join(FIELDS) + "\n"
        "C,2,-2,100,1.5,0,0,999\n"
        "C,2,-4,100,1.25,0,0,1\n"
        "C,2,-6,10\n"
    )
    cache = ConstantCache()
    assert len(cache) == 1
    assert cache.get("C", 2, -2, 100) is None
    assert cache.get("C", 2, -4, 100).value == 1.25


def test_get_or_compute_only_computes_once():
    cache = ConstantCache()
    calls = []

    def compute():
        calls.append(1)
        return c_constant(PairFamily(1, 2), 100)

    a = cache.get_or_compute("C", 1, 2, 100, compute)
    b = ConstantCache().get_or_compute("C", 1, 2, 100, compute)
    assert a == b and len(calls) == 1


def test_default_cache_dir_precedence(tmp_path, monkeypatch):
    assert default_cache_dir() == tmp_path / "cache"
    monkeypatch.delenv(ENV_VAR)
    monkeypatch.setenv("XDG_CACHE_HOME", str(tmp_path / "xdg"))
    assert default_cache_dir() == tmp_path / "xdg" / "primepairs"


def test_cache_clear():
    cache = ConstantCache()
    cache.put("C", 1, 2, 100, c_constant(PairFamily(1, 2), 100))
    cache.clear()
    assert len(cache) == 0 and not cache.path.exists()
    cache.clear()


# --- command line ------------------------------------------------------------------


def test_constant_command(isolated_cache):
    code, out = cli("constant", "--k", "2", "--two-r", "-2", "-P", "1e6")
    assert code == EXIT_OK
    head, row = rows(out)
    assert head[:4] == ["k", "two_r", "P", "value"]
    assert row[:3] == ["2", "-2", "1000000"]
    assert float(row[3]) == pytest.approx(1.6915, abs=1e-3)
    assert (isolated_cache / "constants.csv").exists()


def test_flag_overrides_env_cache_dir(tmp_path, isolated_cache):
    flagged = tmp_path / "flagged"
    assert cli("gamma", "--k", "2", "--q", "1", "-P", "100", "--cache-dir", str(flagged))[0] == 0
    assert (flagged / "constants.csv").exists()
    assert not (isolated_cache / "constants.csv").exists()


def test_no_cache_writes_nothing(isolated_cache):
    assert cli("gamma", "--k", "3", "--q", "2", "-P", "500", "--no-cache")[0] == 0
    assert not isolated_cache.exists()


def test_cached_and_uncached_outputs_agree():
    args = ("constant", "--k", "3", "--two-r", "10", "-P", "2000")
    first = cli(*args)[1]
    assert cli(*args)[1] == first
    assert cli(*args, "--no-cache")[1] == first


def test_gamma_reducible_row():
    code, out = cli("gamma", "--k", "3", "--q", "8", "-P", "100")
    assert code == 0
    assert rows(out)[1][-2:] == ["0", "1"]


def test_count_command_threads_are_deterministic():
    one = cli("count", "--k", "3", "--two-r", "-2", "--x", "1e5")[1]
    four = cli("count", "--k", "3", "--two-r", "-2", "--x", "1e5", "--threads", "4")[1]
    assert one == four
    assert rows(one)[1][3] == "556"


def test_table_1_small():
    # predicted column checked against mpmath li(x) - x/log x
    code, out = cli("table", "--name", "1", "--sieve-limit", "10**4")
    assert code == 0
    assert rows(out) == [
        ["x", "pi^2_{-2}(x)", "L_2(x)", "rho(x)"],
        ["10", "4", "6", "0.667"],
        ["100", "13", "17", "0.765"],
        ["1000", "52", "59", "0.881"],
        ["10000", "259", "274", "0.945"],
    ]


def test_table_2_header_and_zeros(capsys):
    code, out = cli("table", "--name", "2", "-P", "1e4")
    assert code == 0
    table = rows(out)
    assert table[0] == ["2r", "gamma^2_{2r}", "C^2_{2r}", "gamma^2_{-2r}", "C^2_{-2r}"]
    assert len(table) == 16
    by_r = {int(r[0]): r for r in table[1:]}
    assert by_r[2][2] == "0"  # N(3) = 3
    assert by_r[4][3] == "0" and by_r[4][4] == "0"  # n^2 - 4 is reducible
    assert "P=10000" in capsys.readouterr().err


def test_table_3_row():
    code, out = cli("table", "--name", "3", "--format", "tsv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "q\t3-primes p<500"
    assert lines[-1] == "22\t7 43 67 73 79 97 103 163 181 229 331 373 457"


def test_table_4_markdown():
    code, out = cli("table", "--name", "4", "-P", "500", "--format", "markdown")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "| q=2r | gamma^3_q | C^3_{2r} |"
    assert lines[2] == "| 2 | 1.277 | 0.874 |"
    assert len(lines) == 14


def test_three_primes_command():
    code, out = cli("three-primes", "--q", "22", "--bound", "500")
    assert code == 0
    assert out == "7,43,67,73,79,97,103,163,181,229,331,373,457\n"


def test_mean_residual_sweep():
    code, out = cli("mean", "--k", "2", "--lambda", "30", "-P", "1e6")
    assert code == 0
    assert float(rows(out)[1][6]) == pytest.approx(0.982, abs=1e-3)
    code, out = cli("residual", "--k", "1", "--lambda", "4", "-P", "1e6")
    assert float(rows(out)[1][3]) == pytest.approx(-1.16992, abs=1e-4)
    code, out = cli("sweep", "--k", "2", "--lambdas", "10,20,30", "-P", "1e4")
    table = rows(out)
    assert table[0] == ["lambda", "S", "S/lambda", "R"] and [r[0] for r in table[1:]] == ["10", "20", "30"]


def test_cache_subcommands(isolated_cache):
    cli("gamma", "--k", "2", "--q", "1", "-P", "100")
    code, out = cli("cache", "path")
    assert out.strip() == str(isolated_cache / "constants.csv")
    code, out = cli("cache", "show")
    assert out.startswith(",".join(FIELDS))
    assert cli("cache", "clear")[0] == 0
    assert not (isolated_cache / "constants.csv").exists()


@pytest.mark.parametrize(
    "args",
    [
        ("constant", "--k", "2", "--two-r", "0"),
        ("constant", "--k", "2", "--two-r", "3"),
        ("constant", "--k", "2", "--two-r", "2", "-P", "2"),
        ("count", "--k", "2", "--two-r", "2", "--x", "abc"),
        ("three-primes", "--q", "2", "--bound", "5"),
        ("table", "--name", "5"),
        ("mean", "--k", "2", "--lambda", "1"),
        ("count", "--k", "2", "--two-r", "2", "--x", "10", "--threads", "0"),
        (),
    ],
)
def test_usage_errors_exit_2(args):
    assert cli(*args)[0] == EXIT_USAGE


def test_overflow_exits_3():
    assert cli("count", "--k", "3", "--two-r", "2", "--x", "10**43")[0] == EXIT_OVERFLOW


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(truncation=1)
    assert RunConfig().truncation == 10**6


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "primepairs", "three-primes", "--q", "2", "--bound", "100"],
        capture_output=True, text=True, env={"PATH": "", ENV_VAR: str(tmp_path)},
    )
    assert proc.returncode == 0
    assert proc.stdout == "31,43\n"
