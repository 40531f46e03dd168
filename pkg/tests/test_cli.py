import io
import json

import pytest

from stabkit import format_array, parse_array, random_array
from stabkit.cli import main

from conftest import BELL, GHZ3, arr


@pytest.fixture
def files(tmp_path):
    def write(name, *rows, n=None):
        path = tmp_path / f"{name}.stab"
        path.write_text(format_array(arr(*rows, n=n)))
        return str(path)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestBasics:
    def test_validate(self, capsys, files):
        code, out, _ = run(capsys, "validate", files("bell", *BELL))
        assert code == 0 and out == "valid: N=2 K=2 rank=2\n"

    def test_rank(self, capsys, files):
        assert run(capsys, "rank", files("r", "+XX", "+ZZ", "-YY"))[1] == "rank = 2\n"

    def test_rref(self, capsys, files):
        code, out, _ = run(capsys, "rref", files("r", "+ZI", "+ZZ"))
        assert parse_array(out).rows == ("+ZI", "+IZ")

    def test_ptrace_one_based(self, capsys, files):
        code, out, _ = run(capsys, "ptrace", files("g", *GHZ3), "--qubits", "3")
        assert code == 0 and parse_array(out).rows == ("+ZZ",)

    def test_cnf_circuit(self, capsys, files):
        code, out, _ = run(capsys, "cnf", files("z", "+Z"), "--circuit")
        assert out == "# stab v1  N=1 K=1\n+ X\n# circuit\nH 1\n"

    def test_cnf_positive(self, capsys, files):
        code, out, _ = run(capsys, "cnf", files("m", "-X"), "--positive")
        assert parse_array(out).rows == ("+X",)

    def test_overlap(self, capsys, files):
        code, out, _ = run(capsys, "overlap", files("a", "+Z"), files("b", "+X"))
        assert out.splitlines() == ["F = 2^-1", "F_u = 2^-1/2", "D_bures = 1.082392200292"]

    def test_entangle(self, capsys, files):
        code, out, _ = run(capsys, "entangle", files("g", *GHZ3), "--partyA", "1", "--normal-form")
        lines = out.splitlines()
        assert lines[:2] == ["p = 1", "E = 1.0"]
        assert parse_array("\n".join(lines[2:]) + "\n").n_rows == 3

    def test_random_is_reproducible(self, capsys):
        first = run(capsys, "random", "--n", "6", "--k", "4", "--seed", "7")[1]
        second = run(capsys, "random", "--n", "6", "--k", "4", "--seed", "7")[1]
        assert first == second == format_array(random_array(6, 4, 7))

    def test_output_file(self, capsys, files, tmp_path):
        target = tmp_path / "out.txt"
        code, out, _ = run(capsys, "rank", files("b", *BELL), "-o", str(target))
        assert out == "" and target.read_text() == "rank = 2\n"


class TestStdin:
    def test_dash_reads_stdin(self, capsys, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO(format_array(random_array(6, 4, 7))))
        assert run(capsys, "rank", "-")[1] == "rank = 4\n"


class TestJson:
    @pytest.mark.parametrize("before", [True, False])
    def test_flag_position(self, capsys, files, before):
        path = files("b", *BELL)
        argv = ["--json", "rank", path] if before else ["rank", path, "--json"]
        code, out, _ = run(capsys, *argv)
        assert json.loads(out) == {"command": "rank", "rank": 2}

    def test_dyadic_fields(self, capsys, files):
        code, out, _ = run(capsys, "--json", "overlap", files("a", "+Z"), files("b", "+X"))
        rec = json.loads(out)
        assert rec["F"] == {"zero": False, "log2": -1.0, "decimal": 0.5}
        assert rec["F_u"]["log2"] == -0.5

    def test_error_record(self, capsys, files):
        code, out, err = run(capsys, "--json", "validate", files("bad", "+XI", "+ZI"))
        assert code == 1
        assert "error" in json.loads(out) and err.startswith("error:")


class TestErrors:
    def test_dimension_mismatch(self, capsys, files):
        code, out, err = run(capsys, "overlap", files("a", *BELL), files("b", *GHZ3))
        assert code == 1 and err == "error: dimension mismatch (2 vs 3 qubits)\n"

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "rank", str(tmp_path / "nope.stab"))
        assert code == 1 and "cannot read" in err

    def test_malformed_file(self, capsys, tmp_path):
        path = tmp_path / "bad.stab"
        path.write_text("+ XX\n")
        assert run(capsys, "rank", str(path))[0] == 1

    def test_trace_everything(self, capsys, files):
        assert run(capsys, "ptrace", files("b", *BELL), "--qubits", "1,2")[0] == 1

    def test_empty_party_b(self, capsys, files):
        assert run(capsys, "entangle", files("b", *BELL), "--partyA", "1,2")[0] == 1

    @pytest.mark.parametrize("argv", [
        [],
        ["frobnicate"],
        ["ptrace", "x.stab"],
        ["random", "--n", "3", "--k", "5"],
        ["bench", "--reps", "0"],
        ["bench", "--algos", "fft"],
        ["entangle", "x.stab", "--partyA", "0"],
    ])
    def test_usage_errors_exit_2(self, capsys, argv):
        assert run(capsys, *argv)[0] == 2


class TestBenchCommand:
    def test_empty_sizes(self, capsys):
        code, out, _ = run(capsys, "bench", "--sizes", "")
        assert code == 0 and out == "n,k,algo,median_us\n"

    def test_small_run(self, capsys):
        code, out, err = run(capsys, "bench", "--sizes", "4,8", "--reps", "1", "--algos", "rref")
        assert out.splitlines()[0] == "n,k,algo,median_us"
        assert len(out.splitlines()) == 3 and "exponent rref" in err


class TestOracleCommand:
    def test_selfcheck(self, capsys):
        code, out, _ = run(capsys, "oracle", "selfcheck", "--trials", "10", "--n", "4")
        assert code == 0 and out.startswith("selfcheck: 10 trials, 0 mismatches")

    def test_overlap_files(self, capsys, files):
        code, out, _ = run(capsys, "oracle", "overlap", files("a", "+Z"), files("b", "+X"))
        assert out.splitlines()[0] == "F = 0.500000000000"

    def test_ptrace_seeded(self, capsys):
        code, out, _ = run(capsys, "oracle", "ptrace", "--seed", "3", "--n", "4", "--qubits", "1,2")
        assert code == 0 and "agrees = true" in out

    def test_entangle_bell(self, capsys, files):
        code, out, _ = run(capsys, "oracle", "entangle", files("b", *BELL), "--partyA", "1")
        assert out.splitlines() == ["logneg = 1.000000000000", "entropy = 1.000000000000", "p = 1"]

    def test_needs_input(self, capsys):
        assert run(capsys, "oracle", "overlap")[0] == 2
