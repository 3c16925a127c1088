import pytest

from immanants.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_char_value(capsys):
    assert run(capsys, "char", "2,2", "2,2") == (0, "2\n", "")
    assert run(capsys, "char", "3,2,1", "5,1")[1] == "1\n"


def test_char_table(capsys):
    code, out, _ = run(capsys, "char", "table", "3")
    rows = [line.split("\t") for line in out.splitlines()]
    assert code == 0 and rows[0][0] == "lambda\\rho" and len(rows) == 4
    assert sorted(int(v) for v in rows[1][1:]) in ([1, 1, 1], [-1, 0, 2], [-1, 1, 1])


def test_partition_stats(capsys):
    code, out, _ = run(capsys, "partition", "stats", "4,4,3,3,3,2")
    fields = dict(line.split("=", 1) for line in out.splitlines())
    assert code == 0
    assert (fields["d"], fields["b"], fields["staircase"]) == ("9", "13", "1")


def test_onion(capsys):
    code, out, _ = run(capsys, "onion", "4,3,2,1", "1")
    assert code == 0 and "format=7,1^3" in out


def test_imm(tmp_path, capsys):
    path = tmp_path / "g.digraph"
    path.write_text("digraph 2\n0 1 2\n1 0 3\n0 0 1\n1 1 1\n")
    assert run(capsys, "imm", "2", str(path))[1] == "7\n"  # permanent
    assert run(capsys, "imm", "1,1", str(path))[1] == "-5\n"  # determinant
    code, _, err = run(capsys, "imm", "3", str(path))
    assert code == 2 and err.startswith("error:")


def test_scans_pass(capsys):
    for what in ("dichotomy", "parity", "theta"):
        code, out, _ = run(capsys, "scan", what, "--max-boxes", "8")
        assert code == 0 and out.splitlines()[-1] == "PASS"


def test_reduce_verify_roundtrip(tmp_path, capsys):
    src = tmp_path / "h.bigraph"
    src.write_text("bigraph 2 2\n0 0 1\n0 1 2\n1 0 1\n1 1 1\n")
    out_dir = tmp_path / "red"
    code, out, _ = run(capsys, "reduce", "pm", str(src), "--lambda", "4,4,4,4", "--out", str(out_dir))
    assert code == 0 and "route=tetromino" in out
    code, out, _ = run(capsys, "verify", str(out_dir))
    assert code == 0 and out.splitlines()[-1] == "PASS"
    assert "direct        3" in out
    # tamper with the stored constant
    meta = out_dir / "meta.txt"
    meta.write_text(meta.read_text().replace("c=1/1152", "c=1/576"))
    code, out, _ = run(capsys, "verify", str(out_dir), "--no-interpolate")
    assert code == 1 and "problem:" in out


def test_reduce_rejects(tmp_path, capsys):
    src = tmp_path / "h.bigraph"
    src.write_text("bigraph 1 1\n0 0 1\n")
    code, _, err = run(capsys, "reduce", "pm", str(src), "--lambda", "1,1,1", "--out", str(tmp_path / "x"))
    assert code == 2 and "insufficient resources" in err
    code, _, err = run(capsys, "reduce", "match", str(src), "--lambda", "3,2,1", "--out", str(tmp_path / "x"))
    assert code == 2


@pytest.mark.parametrize(
    "argv",
    [
        ("char", "2,a", "4"),
        ("char", "2,2", "3"),
        ("char", "table", "x"),
        ("partition", "stats", "1,2"),
        ("imm", "1", "/nonexistent/file"),
        ("gadget", "search", "--alphabet", ""),
    ],
)
def test_malformed_input(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_gadget_commands(tmp_path, capsys):
    assert run(capsys, "gadget", "verify")[0] == 0
    target = tmp_path / "g.txt"
    assert run(capsys, "gadget", "search", "--out", str(target))[0] == 0
    assert run(capsys, "gadget", "verify", str(target))[0] == 0
    target.write_text(target.read_text().replace(" -w", " w"))
    assert run(capsys, "gadget", "verify", str(target))[0] == 1


def test_output_is_deterministic(capsys):
    first = run(capsys, "partition", "stats", "5,3,3,1")
    second = run(capsys, "partition", "stats", "5,3,3,1")
    assert first == second
