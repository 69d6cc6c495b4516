import pandas as pd
import pytest

from CyclicHWP.main import run_cli
from CyclicHWP.sweep import instances, process_single_instance


def test_instances_start_at_2k():
    assert list(instances([9, 13], 2)) == [(9, 4), (9, 5), (13, 6), (13, 7)]
    assert list(instances([9], 0)) == []


def test_single_instance():
    success, row, error = process_single_instance(9, 6)
    assert success and error is None
    assert row["v"] == 9 * 109 and row["ok"] is True


def test_single_instance_rejects_ell_5():
    success, row, error = process_single_instance(5, 2)
    assert not success
    assert "ell = 5" in error
    assert row["ok"] is False


def test_sweep_command(tmp_path, capsys):
    csv_path = tmp_path / "sweep.csv"
    assert run_cli(["--quiet", "sweep", "--ell", "9", "13", "--n-span", "2", "--csv", str(csv_path)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("CyclicHWP Sweep\n===============\n")
    assert "[1/4] ell=9 n=4 ... OK" in out
    assert "Summary: 4/4 succeeded, 0 failed" in out

    df = pd.read_csv(csv_path)
    assert list(df.columns) == ["ell", "n", "M", "v", "r", "r_prime", "mu", "t", "ok", "seconds"]
    assert df["ok"].all()
    assert df["v"].tolist() == [9 * 73, 9 * 91, 13 * 157, 13 * 183]


def test_sweep_reports_failures(capsys):
    assert run_cli(["sweep", "--ell", "9", "7", "--n-span", "1"]) == 1
    out = capsys.readouterr().out
    assert "Summary: 1/2 succeeded, 1 failed" in out
    assert "  - ell=7 n=3:" in out


@pytest.mark.slow
def test_sweep_with_full_verification(capsys):
    assert run_cli(["--quiet", "sweep", "--ell", "9", "--n-span", "2", "--full"]) == 0
    assert "Summary: 2/2 succeeded" in capsys.readouterr().out
