import io

from cubecoset.cli import main, parse_representative, parse_size
from cubecoset.coords import relabel
from cubecoset.cube import SOLVED, MoveSequence, apply_sequence


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_parse_size():
    assert parse_size("2G") == 2 << 30
    assert parse_size("512M") == 512 << 20
    assert parse_size("1000") == 1000


def test_parse_representative_hex(phase1):
    rep = MoveSequence.parse("F R' U2 L")
    c = relabel(apply_sequence(SOLVED, rep))
    packed = (c.slice * 2048 + c.flip) * 2187 + c.twist
    back = parse_representative(hex(packed))
    assert relabel(apply_sequence(SOLVED, back)) == c


def test_usage_errors():
    assert run()[0] == 1
    assert run("solve")[0] == 1
    assert run("solve", "--seq", "X2")[0] == 1
    assert run("census", "--depth", "many")[0] == 1


def test_census_output():
    code, text = run("census", "--depth", "5")
    assert code == 0
    rows = [line.split("\t") for line in text.splitlines()]
    assert rows[0] == ["depth", "countS", "countA"]
    assert rows[1:] == [["0", "1", "1"], ["1", "10", "10"], ["2", "67", "67"],
                        ["3", "456", "456"], ["4", "3079", "3079"], ["5", "20076", "19948"]]


def test_solve_and_database(tmp_path):
    db = tmp_path / "db.tsv"
    code, text = run("solve", "--seq", "R U F' D2 B L'", "--target", "6", "--db", str(db))
    assert code == 0
    length, solution, nodes = text.strip().split("\t")
    assert int(length) <= 6 and int(nodes) >= 0
    code, text = run("solve", "--random", "2", "--target", "22", "--seed", "3",
                     "--deterministic", "--db", str(db))
    assert code == 0 and len(text.splitlines()) == 2
    assert run("verify-db", str(db))[0] == 0
    assert len(db.read_text().splitlines()) == 3


def test_solve_is_reproducible():
    a = run("solve", "--random", "2", "--seed", "9", "--target", "22", "--deterministic")
    b = run("solve", "--random", "2", "--seed", "9", "--target", "22", "--deterministic")
    assert a == b


def test_verify_db_reports_bad_line(tmp_path):
    db = tmp_path / "db.tsv"
    db.write_text("R U\tU' R'\nR U\tU R'\nF\tF'\n")
    code, text = run("verify-db", str(db))
    assert code == 3
    assert "line 2" in text and "line 1:" not in text
    assert "1 failures" in text


def test_optimal():
    code, text = run("optimal", "--seq", "R2 L2 U2 D2 F2 B2")
    assert code == 0
    assert text.split("\t")[0] == "6" and text.strip().endswith("optimal")


def test_coset_command(tmp_path):
    code, text = run("coset", "--rep", "", "--depth", "3")
    assert code == 0
    assert text.splitlines()[1:5] == ["0\t1\t1", "1\t10\t11", "2\t67\t78", "3\t456\t534"]
    assert run("coset", "--rep", "R", "--depth", "2")[0] == 1
    assert run("coset", "--mode", "full", "--memory", "2G")[0] == 2


def test_coset_verify():
    code, text = run("coset-verify", "--rep", "R' D L2 D' R", "--depth", "3")
    assert code == 0
    assert "counts agree, sets agree" in text


def test_env_override(monkeypatch):
    monkeypatch.setenv("CUBECOSET_DEPTH", "2")
    code, text = run("census")
    assert code == 0
    assert text.splitlines()[-1] == "2\t67\t67"


def test_graph_workflow(tmp_path):
    ledger = str(tmp_path / "g.rcgl")
    assert run("graph", "status", "--ledger", ledger)[0] == 1
    code, text = run("graph", "init", "--ledger", ledger)
    assert code == 0 and "138639780" in text
    code, text = run("graph", "status", "--ledger", ledger)
    assert text.splitlines()[0] == "global bound 30, 0 sets recorded"
    code, text = run("graph", "record", "--ledger", ledger, "--rep", "", "--bound", "26")
    assert code == 0 and text.startswith("lowered ")
    before = (tmp_path / "g.rcgl").stat().st_mtime_ns
    code, text = run("graph", "record", "--ledger", ledger, "--rep", "U", "--bound", "26")
    assert text.startswith("lowered 0 ")
    assert (tmp_path / "g.rcgl").stat().st_mtime_ns == before
    code, text = run("graph", "status", "--ledger", ledger)
    assert "1 sets recorded" in text.splitlines()[0]
    assert "  1 sets proven at 26 or less" in text
    code, text = run("graph", "select", "--ledger", ledger, "-n", "2", "--assumed", "20",
                     "--threshold", "22", "--candidates", "300", "--seed", "1")
    assert code == 0
    reps = text.splitlines()
    assert len(reps) == 2
    for r in reps:
        assert relabel(apply_sequence(SOLVED, MoveSequence.parse(r))).slice == 0


def test_graph_cover():
    code, text = run("graph", "cover")
    assert code == 0
    assert "cover valid over all 34650 partitions" in text
