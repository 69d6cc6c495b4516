import json

import pandas as pd
import pytest

from CyclicHWP.classes.classes import Certificate
from CyclicHWP.errors import ParseError, SchemaError
from CyclicHWP.interface import (
    base_to_certificate,
    certificate_to_base,
    deserialize,
    serialize,
)
from CyclicHWP.main import run_cli
from CyclicHWP.verifier import check_base


@pytest.fixture(scope="module")
def cert95(base95):
    return base_to_certificate(base95, emit_maps=True, verification={"base": check_base(base95).summary()})


@pytest.fixture
def cert_file(tmp_path, cert95):
    path = tmp_path / "cert.json"
    path.write_text(serialize(cert95))
    return path


def test_json_certificate_layout(cert95):
    text = serialize(cert95)
    lines = text.splitlines()
    assert lines[0] == "{"
    assert lines[1] == '  "schema_version": "1",'
    # one base cycle per line
    assert sum(1 for line in lines if line.lstrip().startswith("[[")) == 9
    assert json.loads(text)["params"]["v"] == 819


def test_certificates_survive_both_formats(cert95):
    assert deserialize(serialize(cert95, "json")) == cert95
    assert deserialize(serialize(cert95, "text")) == cert95


def test_text_certificate_layout(cert95):
    lines = serialize(cert95, "text").splitlines()
    assert lines[0] == "cyclichwp-certificate 1"
    assert lines[1] == "params ell=9 n=5 M=91 v=819 r=45 r_prime=364"
    assert sum(1 for line in lines if line.startswith("short ")) == 5
    assert sum(1 for line in lines if line.startswith("long ")) == 4
    assert any(line.startswith("map F ") for line in lines)
    assert "verification base ok=true missing=0 duplicated=0 transversality_failures=0 structure_failures=0" in lines


def test_cycles_are_canonical(cert95):
    for cycle in cert95.short_base_cycles + cert95.long_base_cycles:
        assert cycle[0] == min(cycle)
        assert cycle[1] <= cycle[-1]


def test_loaded_certificate_passes_base_check(cert95):
    base = certificate_to_base(deserialize(serialize(cert95)))
    assert check_base(base).ok


def test_json_syntax_error_position():
    with pytest.raises(ParseError) as info:
        deserialize('{\n  "params": ,\n}')
    assert info.value.line == 2
    assert "line 2" in str(info.value)


def test_text_errors_carry_position(cert95):
    lines = serialize(cert95, "text").splitlines()
    lines.insert(2, "shrt 0,0 1,1")
    with pytest.raises(ParseError) as info:
        deserialize("\n".join(lines))
    assert (info.value.line, info.value.column) == (3, 1)

    lines[2] = "short 0,0 1,x"
    with pytest.raises(ParseError) as info:
        deserialize("\n".join(lines))
    assert (info.value.line, info.value.column) == (3, 13)


def test_empty_certificate():
    with pytest.raises(ParseError):
        deserialize("  \n")


def test_schema_violations(cert95):
    d = cert95.to_dict()
    with pytest.raises(SchemaError):
        Certificate.from_dict({**d, "extra": 1})
    with pytest.raises(SchemaError):
        Certificate.from_dict({**d, "schema_version": "2"})
    with pytest.raises(SchemaError):
        Certificate.from_dict({k: v for k, v in d.items() if k != "long_base_cycles"})
    with pytest.raises(SchemaError):
        Certificate.from_dict({**d, "params": {**d["params"], "v": 820}})

    shorts = [list(c) for c in d["short_base_cycles"]]
    shorts[0] = [[91, 0]] + shorts[0][1:]
    with pytest.raises(SchemaError):
        Certificate.from_dict({**d, "short_base_cycles": shorts})
    # unknown fields pass when not strict
    assert Certificate.from_dict({**d, "extra": 1}, strict=False) == cert95


@pytest.mark.parametrize(
    "params",
    [
        {"ell": 11, "n": 5},
        {"ell": 13, "n": 2},
        {"ell": 5, "n": 4},
        {"ell": 9.5, "n": 5},
        {"ell": 0, "n": 0},
        {"ell": True, "n": 5},
        {"ell": "9", "n": 5},
    ],
)
def test_unsupported_params_are_schema_errors(cert95, params):
    d = {**cert95.to_dict(), "params": params}
    with pytest.raises(SchemaError):
        Certificate.from_dict(d)


@pytest.mark.parametrize("params", [{"ell": 11, "n": 5}, {"ell": 13, "n": 2}, {"ell": 9.5, "n": 5}, {"ell": 0, "n": 0}])
def test_verify_rejects_unsupported_params(tmp_path, cert95, params, capsys):
    path = tmp_path / "params.json"
    path.write_text(json.dumps({**cert95.to_dict(), "params": params}))
    assert run_cli(["verify", "--input", str(path)]) == 2
    assert capsys.readouterr().err.startswith("Error: ")


def test_text_certificate_with_unsupported_params(cert95):
    lines = serialize(cert95, "text").splitlines()
    lines[1] = "params ell=11 n=5"
    with pytest.raises(SchemaError):
        deserialize("\n".join(lines))


def test_generate_and_verify(tmp_path, capsys):
    path = tmp_path / "out.json"
    assert run_cli(["--quiet", "generate", "--ell", "9", "--n", "5", "--output", str(path)]) == 0
    out = capsys.readouterr().out
    assert "Base criterion: OK" in out
    assert path.exists()

    report = tmp_path / "report.json"
    assert run_cli(["verify", "--input", str(path), "--report", str(report)]) == 0
    assert json.loads(report.read_text())["base"]["ok"] is True


def test_generate_to_stdout(capsys):
    assert run_cli(["generate", "--ell", "9", "--n", "4", "--verify", "none", "--format", "text"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("cyclichwp-certificate 1\nparams ell=9 n=4")


def test_generate_maps_csv(tmp_path):
    csv_path = tmp_path / "maps.csv"
    out = tmp_path / "cert.txt"
    args = ["generate", "--ell", "9", "--n", "5", "--output", str(out), "--maps-csv", str(csv_path)]
    assert run_cli(args) == 0
    df = pd.read_csv(csv_path)
    assert list(df.columns) == ["residue", "f", "phi", "F", "G"]
    assert len(df) == 86
    row = df[df["residue"] == 2].iloc[0]
    assert row["f"] == -1 and row["F"] == -1 and pd.isna(row["phi"])


@pytest.mark.parametrize(
    "argv",
    [
        ["generate", "--ell", "5", "--n", "4"],
        ["generate", "--ell", "9", "--n", "3"],
        ["generate", "--ell", "11", "--n", "9"],
    ],
)
def test_invalid_parameters_exit_2(argv, capsys):
    assert run_cli(argv) == 2
    assert capsys.readouterr().err.startswith("Error: ")


def test_verify_tampered_certificate(tmp_path, cert95, capsys):
    d = cert95.to_dict()
    d["short_base_cycles"][0][0], d["short_base_cycles"][0][1] = (
        [d["short_base_cycles"][0][0][0], d["short_base_cycles"][0][1][1]],
        [d["short_base_cycles"][0][1][0], d["short_base_cycles"][0][0][1]],
    )
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(d))
    assert run_cli(["verify", "--input", str(path)]) == 1
    assert "Base criterion: FAILED" in capsys.readouterr().out


def test_verify_malformed_and_missing_input(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text('{"schema_version": "1", ')
    assert run_cli(["verify", "--input", str(path)]) == 2
    assert run_cli(["verify", "--input", str(tmp_path / "absent.json")]) == 2
    assert "Error: " in capsys.readouterr().err


def test_develop_one_factor(cert_file, tmp_path):
    out = tmp_path / "factor.jsonl"
    assert run_cli(["develop", "--input", str(cert_file), "--factor-index", "45", "--output", str(out)]) == 0
    record = json.loads(out.read_text())
    assert record["index"] == 45 and record["type"] == "[91^9]"
    assert len(record["cycles"]) == 9 and len(record["cycles"][0]) == 91


def test_develop_as_integers(cert_file, capsys):
    assert run_cli(["develop", "--input", str(cert_file), "--factor-index", "0", "--as-integers"]) == 0
    record = json.loads(capsys.readouterr().out)
    vertices = sorted(z for cycle in record["cycles"] for z in cycle)
    assert vertices == list(range(819))


def test_develop_needs_a_selection(cert_file):
    assert run_cli(["develop", "--input", str(cert_file)]) == 2
    assert run_cli(["develop", "--input", str(cert_file), "--factor-index", "409"]) == 2


def test_skolem_command(capsys):
    assert run_cli(["skolem", "--order", "4", "--check"]) == 0
    out = capsys.readouterr().out
    assert "sequence: 1 4 5 3" in out
    assert "check: orders 1..4 OK" in out
    assert run_cli(["skolem", "--order", "0"]) == 2


def test_trace_command(capsys):
    assert run_cli(["trace", "--ell", "9", "--n", "5"]) == 0
    out = capsys.readouterr().out
    assert "D = {2,5}" in out
    assert "mu = 6" in out
    assert "t = 8, X = [10, 11, 12, 13, 14, 18, 20, 21]" in out
    assert "y_44 = 1, y_89 = 0" in out


@pytest.mark.slow
def test_generate_with_full_verification(tmp_path):
    path = tmp_path / "full.json"
    assert run_cli(["--quiet", "generate", "--ell", "9", "--n", "4", "--verify", "full", "--output", str(path)]) == 0
    assert json.loads(path.read_text())["verification"]["full"]["ok"] is True


@pytest.mark.parametrize("kind,index", [("short_base_cycles", i) for i in range(5)] + [("long_base_cycles", i) for i in range(4)])
def test_single_bit_tamper_fails_verification(tmp_path, cert95, kind, index):
    d = cert95.to_dict()
    a, b = d[kind][index][0]
    d[kind][index][0] = [a ^ 1, b]
    path = tmp_path / "flipped.json"
    path.write_text(json.dumps(d))
    assert run_cli(["verify", "--input", str(path)]) == 1
