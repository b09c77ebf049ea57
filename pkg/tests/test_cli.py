import json
import subprocess
import sys

import pytest

from penner.cli import main
from penner.coxeter import LIMIT_DILATATION, lambda_closed_form

A2_PATTERN = "alpha: 1\nbeta: 1\nX:\n1\n"
X2_PATTERN = "alpha: 1\nbeta: 1\nX:\n2\n"
C4_GRAPH = "type: graph\nvertices: 4\nsigns: + - + -\nedges:\n1 2\n2 3\n3 4\n1 4\n"
A6_GRAPH = (
    "type: graph\nvertices: 6\nsigns: + - + - + -\nedges:\n"
    "1 2\n2 3\n3 4\n4 5\n5 6\n"
)
A1_GRAPH = "type: graph\nvertices: 1\nsigns: +\nedges:\n"
TRIANGLE = "type: graph\nvertices: 3\nsigns: + + +\nedges:\n1 2\n2 3\n1 3\n"


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestDilatation:
    def test_a2_value(self, write, capsys):
        path = write("a2.txt", A2_PATTERN)
        code, out, _ = run_cli(capsys, ["dilatation", path, "--word", "a1+ b1-"])
        assert code == 0
        assert "dilatation: 2.618033989" in out
        assert "t^2 - 3t + 1" in out

    def test_double_intersection_certificate(self, write, capsys):
        path = write("x2.txt", X2_PATTERN)
        code, out, _ = run_cli(capsys, ["dilatation", path, "--json"])
        assert code == 0
        payload = json.loads(out)
        assert abs(payload["dilatation"] - LIMIT_DILATATION) < 1e-9
        kinds = {c["kind"] for c in payload["certificates"]}
        assert "double_intersection" in kinds

    def test_invalid_word_exit_code(self, write, capsys):
        path = write("a2.txt", A2_PATTERN)
        code, _, err = run_cli(capsys, ["dilatation", path, "--word", "a1+"])
        assert code == 2
        assert "b1" in err

    def test_missing_file(self, capsys):
        code, _, err = run_cli(capsys, ["dilatation", "/nonexistent/file.txt"])
        assert code == 2
        assert "error" in err

    def test_malformed_document(self, write, capsys):
        path = write("bad.txt", "alpha: 1\nbeta: 1\nX:\n-3\n")
        code, _, err = run_cli(capsys, ["dilatation", path])
        assert code == 2
        assert "DocumentError" in err


class TestCoxeter:
    def test_a6_bipartite(self, write, capsys):
        path = write("a6.txt", A6_GRAPH)
        code, out, _ = run_cli(capsys, ["coxeter", path, "--json"])
        assert code == 0
        payload = json.loads(out)
        assert abs(payload["dilatation"] - lambda_closed_form(3)) < 1e-9
        assert payload["order_independent"] is True

    def test_four_cycle_cyclic_order(self, write, capsys):
        path = write("c4.txt", C4_GRAPH)
        code, out, _ = run_cli(
            capsys, ["coxeter", path, "--order", "custom", "--perm", "1 2 3 4", "--json"]
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["dilatation"] > LIMIT_DILATATION + 1e-6

    def test_single_plus_vertex(self, write, capsys):
        path = write("a1.txt", A1_GRAPH)
        code, out, _ = run_cli(capsys, ["coxeter", path, "--json"])
        assert code == 0
        payload = json.loads(out)
        assert payload["spectral_radius"] == 1.0

    def test_not_bipartite(self, write, capsys):
        path = write("tri.txt", TRIANGLE)
        code, _, err = run_cli(capsys, ["coxeter", path, "--order", "bipartite"])
        assert code == 2
        assert "NotBipartite" in err

    def test_custom_needs_perm(self, write, capsys):
        path = write("c4.txt", C4_GRAPH)
        code, _, err = run_cli(capsys, ["coxeter", path, "--order", "custom"])
        assert code == 2


class TestGenus:
    def test_family_a8(self, capsys):
        code, out, _ = run_cli(capsys, ["genus", "--family", "A", "--n", "8"])
        assert code == 0 and "genus 4" in out

    def test_family_d7(self, capsys):
        code, out, _ = run_cli(capsys, ["genus", "--family", "D", "--n", "7", "--json"])
        assert code == 0
        assert json.loads(out)["genus"] == 3

    def test_cycle_distribution(self, capsys):
        code, out, _ = run_cli(
            capsys, ["genus", "--family", "cycle", "--n", "6", "--distribution", "--json"]
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["genus_bound"] == 3
        assert payload["distribution"] == {"2": 32, "3": 32}

    def test_pattern_file_default_framing(self, write, capsys):
        path = write("a2.txt", A2_PATTERN)
        code, out, _ = run_cli(capsys, ["genus", path])
        assert code == 0
        assert "genus: 1" in out
        assert "no framing" in out

    def test_needs_some_input(self, capsys):
        code, _, err = run_cli(capsys, ["genus"])
        assert code == 2


class TestMinimize:
    def test_genus_one_certified(self, capsys):
        code, out, _ = run_cli(capsys, ["minimize", "--genus", "1", "--json"])
        assert code == 0
        payload = json.loads(out)
        assert payload["witness"] == "A_2"
        assert abs(payload["value"] - lambda_closed_form(1)) < 1e-9
        assert {e["name"] for e in payload["audit"]} == {"A_2", "A_3", "D_4"}

    def test_closed_form_mode(self, capsys):
        code, out, _ = run_cli(
            capsys, ["minimize", "--genus", "7", "--mode", "closed_form"]
        )
        assert code == 0
        assert "witness: A_14" in out

    def test_invalid_genus(self, capsys):
        code, _, err = run_cli(capsys, ["minimize", "--genus", "0"])
        assert code == 2


class TestTableAndLimits:
    def test_table_values(self, capsys):
        code, out, _ = run_cli(capsys, ["table1", "--json"])
        assert code == 0
        rows = {r["graph"]: r for r in json.loads(out)["rows"]}
        assert abs(rows["A_6"].get("dilatation") - 5.048917340) < 1e-6
        assert rows["enriched_6_cycle"]["genus"] == "<= 4"
        assert rows["enriched_6_cycle"]["dilatation"] > 5.7

    def test_limits_csv(self, capsys):
        code, out, _ = run_cli(capsys, ["limits", "--gmax", "3"])
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "genus,dilatation,gap_to_limit"
        values = [float(line.split(",")[1]) for line in lines[1:]]
        assert values == sorted(values)
        assert abs(values[0] - 2.618033989) < 1e-8
        assert abs(values[1] - 4.390256885) < 1e-8
        assert abs(values[2] - 5.04891734) < 1e-8

    def test_limits_deterministic(self, capsys):
        _, first, _ = run_cli(capsys, ["limits", "--gmax", "10"])
        _, second, _ = run_cli(capsys, ["limits", "--gmax", "10"])
        assert first == second

    def test_limits_plot(self, tmp_path, capsys):
        target = tmp_path / "limits.png"
        code, out, _ = run_cli(capsys, ["limits", "--gmax", "5", "--plot", str(target)])
        assert code == 0
        assert target.exists() and target.stat().st_size > 1000

    def test_table_plot(self, tmp_path, capsys):
        target = tmp_path / "table.png"
        code, out, _ = run_cli(capsys, ["table1", "--plot", str(target)])
        assert code == 0
        assert target.exists() and target.stat().st_size > 1000

    def test_bad_gmax(self, capsys):
        code, _, _ = run_cli(capsys, ["limits", "--gmax", "0"])
        assert code == 2


class TestDeterminismAndErrors:
    def test_dilatation_report_byte_identical(self, write, capsys):
        path = write("a2.txt", A2_PATTERN)
        _, first, _ = run_cli(capsys, ["dilatation", path])
        _, second, _ = run_cli(capsys, ["dilatation", path])
        assert first == second

    def test_internal_inconsistency_exit_code(self, capsys, monkeypatch):
        import penner.cli as cli
        from penner.errors import InternalInconsistencyError

        def boom(tol):
            raise InternalInconsistencyError("forced")

        monkeypatch.setattr(cli, "table1", boom)
        code, _, err = run_cli(capsys, ["table1"])
        assert code == 3
        assert "InternalInconsistencyError" in err


class TestEntryPoint:
    def test_module_invocation(self, tmp_path):
        path = tmp_path / "a2.txt"
        path.write_text(A2_PATTERN)
        proc = subprocess.run(
            [sys.executable, "-m", "penner.cli", "dilatation", str(path)],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "2.618033989" in proc.stdout
