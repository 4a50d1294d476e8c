import json

import pytest

from qrsd import ring
from qrsd.cli import main
from qrsd.codes import binary_code, read_code, write_code
from qrsd.ring import F2
from qrsd.search import load_table

HAMMING = """ring=F2 n=8 k=4
10000111
01001011
00101101
00011110
"""


@pytest.fixture
def hamming_file(tmp_path):
    path = tmp_path / "hamming.code"
    path.write_text(HAMMING)
    return str(path)


def test_analyze_hamming(hamming_file, capsys):
    assert main(["analyze", hamming_file, "--w-max", "8"]) == 0
    out = capsys.readouterr().out
    assert "self-dual: yes" in out
    assert "d: 4" in out
    assert "A_4 = 14" in out
    assert "A_8 = 1" in out
    assert "type: II" in out


def test_analyze_json_matches_text(hamming_file, capsys):
    assert main(["analyze", hamming_file, "--w-max", "8", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["d"] == 4
    assert data["counts"]["4"] == 14
    assert data["counts"]["8"] == 1
    assert data["self_dual"] is True
    assert data["type"] == "II"
    assert data["extremal"] is True
    # text output carries the same information
    main(["analyze", hamming_file, "--w-max", "8"])
    text = capsys.readouterr().out
    for key, value in (("d", 4), ("A_4", 14), ("A_8", 1)):
        assert f"{key.replace('A_', 'A_')}" in text
    assert "A_4 = 14" in text and "d: 4" in text


def test_analyze_not_self_dual(tmp_path, capsys):
    path = tmp_path / "bad.code"
    path.write_text("ring=F2 n=4 k=1\n1000\n")
    assert main(["analyze", str(path)]) == 2
    err = capsys.readouterr().err
    assert "not self-dual" in err


def test_analyze_malformed_file(tmp_path, capsys):
    path = tmp_path / "bad.code"
    path.write_text("ring=F2 n=4 k=1\n10x0\n")
    assert main(["analyze", str(path)]) == 2
    assert "line 2" in capsys.readouterr().err


def test_construct_and_out(tmp_path, capsys):
    spec_path = tmp_path / "table1.json"
    spec_path.write_text(json.dumps(load_table(1)["construction"]))
    out_path = tmp_path / "c60.code"
    assert main(["construct", str(spec_path), "--out", str(out_path)]) == 0
    out = capsys.readouterr().out
    assert "self-dual: yes" in out
    code = read_code(out_path)
    assert code.n == 30 and code.k == 15


def test_extend_neighbour_chain_round_trip(tmp_path, capsys):
    base = binary_code(2, [0b11])
    base_path = tmp_path / "rep2.code"
    write_code(base, base_path)

    x_path = tmp_path / "x.vec"
    x_path.write_text("c=1\n10\n")
    out_path = tmp_path / "ext.code"
    assert main(["extend", str(base_path), str(x_path), "--out", str(out_path)]) == 0
    extended = read_code(out_path)
    assert extended.n == 4 and extended.k == 2
    capsys.readouterr()

    nb_x = tmp_path / "nx.vec"
    nb_x.write_text("0110\n")
    nb_out = tmp_path / "nb.code"
    assert main(["neighbour", str(out_path), str(nb_x), "--out", str(nb_out)]) == 0
    capsys.readouterr()

    chain_path = tmp_path / "chain.vecs"
    chain_path.write_text("0110\n")
    assert main(["chain", str(out_path), str(chain_path)]) == 0
    out = capsys.readouterr().out
    assert "step 0" in out


def test_verify_tables_subset(capsys):
    assert main(["verify-tables", "--tables", "1,2"]) == 0
    out = capsys.readouterr().out
    assert "table1 row 1: PASS" in out
    assert "table2 row 1: PASS" in out
    assert "verify-tables: PASS" in out


def test_verify_tables_json(capsys):
    assert main(["verify-tables", "--tables", "1", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["passed"] is True
    assert data["rows"][0]["observed"]["a12"] == 2555


def test_search_command(tmp_path, capsys):
    cfg = {
        "phase": "construct",
        "p": 5,
        "ring": "F2U",
        "target_length": 60,
        "max_trials": 1,
        "seed": 7,
        "seed_specs": [load_table(1)["construction"]],
    }
    cfg_path = tmp_path / "search.json"
    cfg_path.write_text(json.dumps(cfg))
    out_path = tmp_path / "found.jsonl"
    assert main(["search", str(cfg_path), "--out", str(out_path)]) == 0
    out = capsys.readouterr().out
    assert "W60,2" in out
    records = [json.loads(line) for line in out_path.read_text().splitlines()]
    assert len(records) == 1
    assert records[0]["beta"] == 0


def test_missing_file_is_input_error(capsys):
    assert main(["analyze", "/nonexistent/zzz.code"]) == 2
