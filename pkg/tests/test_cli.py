import json

import pytest

from l00p3r.cli import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, RunConfig, main
from l00p3r.core.green import CTable, ctable_load
from l00p3r.core.reference import POLYGON_TABLE, SQUARE_TABLE


@pytest.fixture
def table_file(tmp_path):
    path = tmp_path / "c6.sqct"
    assert main(["cmatrix", "-n", "6", "--out", str(path)]) == EXIT_OK
    return path


def test_cmatrix(table_file, capsys):
    assert ctable_load(table_file) == CTable.build(6)


def test_enumerate_count_only(capsys):
    assert main(["enumerate", "-l", "8", "--count-only"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "7"


def test_enumerate_prints_words(capsys):
    assert main(["enumerate", "-l", "6"]) == EXIT_OK
    assert capsys.readouterr().out.split() == ["RRULLD", "RUULDD"]


def test_enumerate_to_store_then_stats(tmp_path, capsys):
    assert main(["enumerate", "-l", "10", "--out", str(tmp_path), "--compress"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "28"
    shards = sorted((tmp_path / "ell10").glob("*.saps"))
    assert shards
    assert main(["stats", *map(str, shards)]) == EXIT_OK
    header = capsys.readouterr().out.splitlines()[0]
    assert header.startswith("path,length,count,codec")


def test_stats_on_corrupt_shard(tmp_path):
    assert main(["enumerate", "-l", "8", "--out", str(tmp_path), "--compress"]) == EXIT_OK
    shard = sorted((tmp_path / "ell8").glob("*.saps"))[0]
    data = shard.read_bytes()
    shard.write_bytes(data[:20] + b"garbage")
    assert main(["stats", str(shard)]) == EXIT_FAILURE


def test_enumerate_odd_length():
    assert main(["enumerate", "-l", "7", "--count-only"]) == EXIT_USAGE


def test_sweep(table_file, capsys):
    assert main(["sweep", "-l", "8", "--table", str(table_file)]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "ell,pi,F_ell,S_ell"
    assert len(lines) == 5
    ell, count, total, running_total = lines[-1].split(",")
    assert (int(ell), int(count)) == (8, 7)
    assert float(running_total) == pytest.approx(POLYGON_TABLE[8][2], abs=1e-12)


def test_sweep_resumes_from_checkpoint(tmp_path, table_file, capsys):
    checkpoint = tmp_path / "sweep.pkl"
    assert main(["sweep", "-l", "6", "--table", str(table_file), "--checkpoint", str(checkpoint)]) == EXIT_OK
    capsys.readouterr()
    fit = tmp_path / "fit.csv"
    args = ["sweep", "-l", "8", "--table", str(table_file), "--checkpoint", str(checkpoint), "--fit-out", str(fit)]
    assert main(args) == EXIT_OK
    assert len(capsys.readouterr().out.splitlines()) == 5
    assert fit.read_text().splitlines()[0] == "ell,S,eps,eps_times_ell"


def test_sweep_missing_table(tmp_path):
    assert main(["sweep", "-l", "6", "--table", str(tmp_path / "absent.sqct")]) == EXIT_FAILURE
    assert main(["sweep", "-l", "6"]) == EXIT_FAILURE


def test_sweep_table_too_small(table_file):
    assert main(["sweep", "-l", "10", "--table", str(table_file)]) == EXIT_FAILURE


def test_fp(capsys):
    assert main(["fp", "RULD"]) == EXIT_OK
    word, value = capsys.readouterr().out.strip().split(",")
    assert word == "RULD"
    assert float(value) == pytest.approx(SQUARE_TABLE[1], rel=1e-12)


def test_fp_exact(table_file, capsys):
    assert main(["fp", "RUULLDRD", "--exact", "--table", str(table_file)]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[1].startswith("F_exact,")
    assert lines[2] == "u^0,-23/64"


def test_fp_rejects_bad_words():
    assert main(["fp", "RUX"]) == EXIT_USAGE
    assert main(["fp", "RRU"]) == EXIT_USAGE


def test_square(capsys, tmp_path):
    fit = tmp_path / "squares.csv"
    assert main(["square", "1", "2", "--fit-out", str(fit)]) == EXIT_OK
    rows = [_line.split(",") for _line in capsys.readouterr().out.splitlines()]
    assert [int(_row[0]) for _row in rows] == [1, 2]
    assert float(rows[1][1]) == pytest.approx(SQUARE_TABLE[2], rel=1e-10)
    assert fit.read_text().splitlines()[0] == "L,F,logF_over_4L"


def test_square_rejects_sides():
    assert main(["square", "0"]) == EXIT_USAGE


def test_tri(tmp_path):
    out = tmp_path / "tri.csv"
    assert main(["tri", "3", "--out", str(out)]) == EXIT_OK
    lines = out.read_text().splitlines()
    assert lines[0] == "n,a,b,float_value,asymptotic,residual"
    assert lines[3].startswith("2,8/3,-4/1,0.46135")
    assert lines[4].startswith("3,27/1,-48/1,")


@pytest.mark.parametrize("mode", ["closed", "asymptotic", "oracle"])
def test_tri_modes(mode, capsys):
    assert main(["tri", "4", "--mode", mode]) == EXIT_OK
    assert len(capsys.readouterr().out.splitlines()) >= 5


def test_tri_rejects_negative():
    assert main(["tri", "-1"]) == EXIT_USAGE


def test_extrema(table_file, capsys):
    assert main(["extrema", "-l", "8", "--table", str(table_file)]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("max,R")
    assert lines[1].startswith("min,R")


def test_record(tmp_path, capsys):
    record = tmp_path / "run.json"
    assert main(["enumerate", "-l", "4", "--count-only", "--record", str(record)]) == EXIT_OK
    data = json.loads(record.read_text())
    assert data["command"] == "enumerate"
    assert data["length"] == 4
    config = RunConfig.load_json(record)
    assert config.command == "enumerate"
    assert config.count_only is True


def test_bad_jobs():
    assert main(["enumerate", "-l", "4", "--jobs", "0"]) == EXIT_USAGE


def test_unknown_command():
    with pytest.raises(SystemExit) as info:
        main(["bogus"])
    assert info.value.code == 2
