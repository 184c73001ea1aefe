import gzip
import json
import shutil
import subprocess

import pytest

from ffprimes import cache as cache_io
from ffprimes import config as cfgmod
from ffprimes.cli import run
from ffprimes.errors import ConfigError, CorruptCache, VersionMismatch
from ffprimes.ffpoly import count_irreducible, field_of_order


def invoke(tmp_path, args, name="out.txt"):
    out = tmp_path / name
    rc = run(args + ["--out", str(out)])
    return rc, (out.read_bytes() if out.exists() else b"")


# --- config --------------------------------------------------------------------

def test_config_precedence_and_echo():
    file_values = cfgmod.parse_text("# comment\nq = 3\nR = 4  # trailing\n#@ poly = 1,1\n")
    assert file_values == {"q": "3", "R": "4", "poly": "1,1"}
    cfg = cfgmod.build("lambda", file_values, {"R": "6", "threads": "4"})
    assert cfg["q"] == 3 and cfg["R"] == 6.0 and cfg["threads"] == 4
    echo = cfg.echo()
    assert list(echo)[0] == "subcommand" and "threads" not in echo


def test_config_rejects_bad_values():
    with pytest.raises(ConfigError):
        cfgmod.build("lambda", {}, {"q": "2"})
    with pytest.raises(ConfigError):
        cfgmod.build("lambda", {}, {"q": "2", "p": "3", "R": "1", "poly": "1"})
    with pytest.raises(ConfigError):
        cfgmod.build("lambda", {}, {"q": "2", "R": "1", "poly": "1", "threads": "0"})
    with pytest.raises(ConfigError):
        cfgmod.build("correlate", {}, {"q": "2", "r": "8", "window": "4", "mode": "other"})
    with pytest.raises(ConfigError):
        cfgmod.parse_text("no equals sign here\n")
    assert cfgmod.build("lambda", {}, {"p": "2", "e": "2", "R": "3", "poly": "1"})["q"] == 4


def test_config_reads_previous_json_output():
    blob = json.dumps({"config": {"subcommand": "lambda", "q": 2, "R": 10.0, "poly": "0,0,1"}, "result": {}})
    assert cfgmod.parse_text(blob)["poly"] == "0,0,1"


# --- cache ---------------------------------------------------------------------

@pytest.mark.parametrize("suffix", [".txt", ".txt.gz"])
def test_cache_build_load_verify(tmp_path, suffix):
    F = field_of_order(3)
    path = tmp_path / f"c{suffix}"
    built = cache_io.build(F, 5, path)
    loaded = cache_io.load(path, 3)
    assert loaded.blocks == built.blocks
    report = cache_io.verify(path, 3, spot_checks=20)
    assert report["counts"] == {d: count_irreducible(3, d) for d in range(1, 6)}
    assert report["verified"] and report["spot_checked"] == 20


def test_gzip_cache_is_byte_stable(tmp_path):
    F = field_of_order(2)
    cache_io.build(F, 6, tmp_path / "a.gz")
    cache_io.build(F, 6, tmp_path / "b.gz")
    assert (tmp_path / "a.gz").read_bytes() == (tmp_path / "b.gz").read_bytes()
    assert gzip.decompress((tmp_path / "a.gz").read_bytes()).startswith(cache_io.MAGIC.encode())


def test_cache_rejections(tmp_path):
    F3 = field_of_order(3)
    path = tmp_path / "c.txt"
    cache_io.build(F3, 4, path)
    with pytest.raises(CorruptCache):
        cache_io.load(path, 2)
    lines = path.read_text().splitlines()
    (tmp_path / "trunc.txt").write_text("\n".join(lines[:-3]) + "\n")
    with pytest.raises(CorruptCache):
        cache_io.load(tmp_path / "trunc.txt")
    (tmp_path / "ver.txt").write_text(path.read_text().replace("format_version = 1", "format_version = 9"))
    with pytest.raises(VersionMismatch):
        cache_io.load(tmp_path / "ver.txt")
    (tmp_path / "junk.txt").write_text("hello\n")
    with pytest.raises(CorruptCache):
        cache_io.load(tmp_path / "junk.txt")
    # a reducible entry swapped in passes the count check but fails verification
    swapped = lines[:]
    swapped[swapped.index("degree 2 count 3") + 1] = "2,0,1"  # t^2 - 1 = (t - 1)(t + 1)
    (tmp_path / "red.txt").write_text("\n".join(swapped) + "\n")
    with pytest.raises(CorruptCache):
        cache_io.verify(tmp_path / "red.txt", 3, spot_checks=1000)


def test_cache_env_directory(tmp_path, monkeypatch):
    monkeypatch.setenv(cache_io.CACHE_ENV, str(tmp_path))
    assert cache_io.default_path(2, 7) == tmp_path / "irreducibles_q2_d7.txt"
    monkeypatch.chdir(tmp_path)
    rc = run(["irreducibles", "--q", "2", "--max-deg", "6", "--out", str(tmp_path / "r.json")])
    assert rc == 0 and (tmp_path / "irreducibles_q2_d6.txt").exists()


# --- command line --------------------------------------------------------------

def test_lambda_output(tmp_path):
    rc, data = invoke(tmp_path, ["lambda", "--q", "2", "--R", "10", "--poly", "0,0,1;1,1,0,0,1"])
    assert rc == 0
    doc = json.loads(data)
    assert list(doc)[0] == "config"
    assert list(doc["config"])[0] == "subcommand"
    assert "0.010050166233954827" in data.decode()


def test_exit_codes(tmp_path):
    assert invoke(tmp_path, ["lambda", "--q", "2", "--R", "10"])[0] == 2
    assert invoke(tmp_path, ["lambda", "--q", "6", "--R", "10", "--poly", "1"])[0] == 2
    assert invoke(tmp_path, ["lambda", "--q", "2", "--R", "x", "--poly", "1"])[0] == 2
    # parameter sets that cannot be built are configuration errors
    assert invoke(tmp_path, ["measure", "--q", "2", "--r", "64"])[0] == 2
    assert invoke(tmp_path, ["search-in-class", "--q", "2", "--M", "1,1", "--W", "0,1", "--alpha", "0,1",
                             "--r", "7", "--s", "1"])[0] == 1
    assert invoke(tmp_path, ["nonsense"])[0] == 2
    assert invoke(tmp_path, ["lift", "--q", "2", "--N", "0,1,1", "--k", "2", "--R", "2"])[0] == 2


def test_csv_echo_block_first(tmp_path):
    rc, data = invoke(tmp_path, ["search", "--q", "2", "--s", "1", "--deg-a-max", "3", "--format", "csv"])
    assert rc == 0
    lines = data.decode().splitlines()
    assert lines[0] == "#@ subcommand = search"
    assert '"1,1,0,1","0,1,1"' in data.decode()


@pytest.mark.parametrize("fmt", ["json", "csv"])
def test_round_trip_through_config(tmp_path, fmt):
    args = ["search", "--q", "2", "--s", "2", "--deg-a-max", "7", "--format", fmt]
    rc, first = invoke(tmp_path, args, "first")
    assert rc == 0
    rc, again = invoke(tmp_path, ["search", "--config", str(tmp_path / "first")], "again")
    assert rc == 0 and again == first


@pytest.mark.parametrize("args", [
    ["correlate", "--q", "2", "--r", "10", "--window", "8", "--forms", "1;1|1;0", "--shifts", "0|1", "--R", "5"],
    ["measure", "--q", "2", "--r", "12", "--R", "6"],
    ["lift", "--q", "2", "--N", "1,1,0,1", "--k", "1", "--R", "2.5", "--mode", "one", "--omegas", "1"],
])
def test_byte_identical_across_threads(tmp_path, args):
    outs = [invoke(tmp_path, args + ["--threads", str(t)], f"t{t}") for t in (1, 2, 4)]
    assert all(rc == 0 for rc, _ in outs)
    assert outs[0][1] == outs[1][1] == outs[2][1]


def test_other_subcommands_run(tmp_path):
    for args in (["cphi", "--q", "2"],
                 ["search-in-class", "--q", "2", "--M", "1,1", "--residue", "1", "--W", "0,1,1", "--r", "7",
                  "--s", "1"],
                 ["lift", "--q", "2", "--N", "1,1,1", "--k", "1", "--R", "2", "--mode", "table",
                  "--format", "csv"]):
        rc, data = invoke(tmp_path, args)
        assert rc == 0 and data


def test_console_script():
    exe = shutil.which("ffprimes")
    if exe is None:
        pytest.skip("console script not on PATH")
    res = subprocess.run([exe, "lambda", "--q", "2", "--R", "10", "--poly", "0,0,1"], capture_output=True,
                         text=True, check=True)
    assert json.loads(res.stdout)["result"]
