"""End-to-end CLI behaviour: subcommands, formats, exit codes."""

import io

import pytest

from bookram.cli import (
    EXIT_INCONCLUSIVE,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VIOLATED,
    main,
)
from bookram.colouring import emit_certificate, emit_colouring, parse_colouring
from bookram.constructions import pentagon_colouring
from bookram.books import max_book

from conftest import all_one_colour


def run(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


@pytest.fixture
def pentagon_file(tmp_path):
    path = tmp_path / "pentagon.knc"
    path.write_text(emit_colouring(pentagon_colouring()))
    return str(path)


class TestBookCommand:
    def test_pentagon_zero_page_result(self, pentagon_file):
        code, text = run(["book", "--k", "2", "--input", pentagon_file])
        assert code == EXIT_OK
        assert text.splitlines()[0] == "BOOK 0 2 0"

    def test_nospine(self, pentagon_file):
        code, text = run(["book", "--k", "3", "--input", pentagon_file])
        assert code == EXIT_OK and text == "NOSPINE\n"

    def test_out_file(self, pentagon_file, tmp_path):
        dest = tmp_path / "best.cert"
        code, text = run(["book", "--k", "2", "--input", pentagon_file, "--out", str(dest)])
        assert code == EXIT_OK and text == ""
        assert dest.read_text().startswith("BOOK 0 2 0")


class TestProfileCommand:
    def test_pentagon_profile(self, pentagon_file):
        code, text = run(["profile", "--k", "1", "--input", pentagon_file])
        assert code == EXIT_OK
        assert text == "colour\t0\n2\t5\ncolour\t1\n2\t5\n"


class TestSearchCommand:
    def test_exact_r6(self, tmp_path):
        witness = tmp_path / "w.knc"
        code, text = run(["search", "--k", "2", "--n", "1", "--witness", str(witness)])
        assert code == EXIT_OK
        lines = dict(l.split("\t") for l in text.splitlines())
        assert lines["status"] == "exact"
        assert lines["ramsey"] == "6"
        col = parse_colouring(witness.read_text())
        assert col.n == 5

    def test_budget_inconclusive(self):
        code, text = run(["search", "--k", "2", "--n", "2", "--max-nodes", "40"])
        assert code == EXIT_INCONCLUSIVE
        assert "bounded" in text

    def test_invalid_parameters(self):
        code, _ = run(["search", "--k", "0", "--n", "1"])
        assert code == EXIT_USAGE


class TestVerifyCommand:
    def test_accepts_then_rejects_corrupted(self, tmp_path):
        col = all_one_colour(5)
        knc = tmp_path / "c.knc"
        knc.write_text(emit_colouring(col))
        cert = max_book(col, 2)
        good = tmp_path / "good.cert"
        good.write_text(emit_certificate(cert))
        code, text = run(["verify", "--input", str(knc), "--cert", str(good), "--n", "3"])
        assert code == EXIT_OK and text == "accept\n"
        bad = tmp_path / "bad.cert"
        bad.write_text("BOOK 1 2 1\n1 2\n3\n")
        code, text = run(["verify", "--input", str(knc), "--cert", str(bad), "--n", "1"])
        assert code == EXIT_VIOLATED
        assert text.startswith("reject\tspine-not-clique")

    def test_parse_error_is_usage(self, tmp_path):
        knc = tmp_path / "broken.knc"
        knc.write_text("KNC 1 3 2\n0\n0\n")
        cert = tmp_path / "x.cert"
        cert.write_text("BOOK 0 1 0\n1\n\n")
        code, _ = run(["verify", "--input", str(knc), "--cert", str(cert), "--n", "0"])
        assert code == EXIT_USAGE


class TestConstructCommand:
    def test_random_is_reproducible(self):
        a = run(["construct", "random", "--N", "30", "--seed", "5"])
        b = run(["construct", "random", "--N", "30", "--seed", "5"])
        assert a == b and a[0] == EXIT_OK

    def test_blowup_default_pentagon(self):
        code, text = run(["construct", "blowup", "--n", "3"])
        assert code == EXIT_OK
        col = parse_colouring(text)
        assert col.n == 15 and col.q == 3

    def test_hblowup_roundtrip(self, tmp_path):
        from bookram.colouring import emit_hypercolouring, parse_hypercolouring
        from bookram.constructions import search_hypergraph_base

        base = tmp_path / "base.knsc"
        base.write_text(emit_hypercolouring(search_hypergraph_base(5, 3, 4, seed=1)))
        code, text = run(
            ["construct", "hblowup", "--base", str(base), "--n", "2", "--k", "12"]
        )
        assert code == EXIT_OK
        assert parse_hypercolouring(text).n == 10

    def test_hblowup_bad_spine_multiple(self, tmp_path):
        from bookram.colouring import emit_hypercolouring
        from bookram.constructions import search_hypergraph_base

        base = tmp_path / "base.knsc"
        base.write_text(emit_hypercolouring(search_hypergraph_base(5, 3, 4, seed=1)))
        code, _ = run(["construct", "hblowup", "--base", str(base), "--n", "2", "--k", "10"])
        assert code == EXIT_USAGE


class TestSatExportCommand:
    def test_export_and_solve(self):
        from bookram.sat import solve_dimacs

        code, text = run(["sat-export", "--k", "1", "--n", "1", "--N", "2"])
        assert code == EXIT_OK
        assert solve_dimacs(text)[0] == "UNSAT"

    def test_cap_refusal(self):
        code, _ = run(["sat-export", "--k", "3", "--n", "2", "--N", "40", "--cap", "100"])
        assert code == EXIT_USAGE


class TestLemmasCommand:
    def test_dichotomy_clean(self):
        code, text = run(
            ["lemmas", "dichotomy", "--k", "3", "--samples", "2000", "--seed", "2"]
        )
        assert code == EXIT_OK
        assert "violations\t0" in text

    def test_dichotomy_perturbed_violates(self):
        code, text = run(
            [
                "lemmas",
                "dichotomy",
                "--k",
                "2",
                "--samples",
                "2000",
                "--seed",
                "2",
                "--bound-offset",
                "1e-3",
            ]
        )
        assert code == EXIT_VIOLATED

    def test_degprod_clean(self):
        code, text = run(
            ["lemmas", "degprod", "--l", "6", "--k", "3", "--samples", "2000", "--seed", "3"]
        )
        assert code == EXIT_OK
        assert "violations\t0" in text


class TestPipelineCommand:
    def test_trace_and_certificate(self, tmp_path):
        knc = tmp_path / "r.knc"
        code, text = run(["construct", "random", "--N", "64", "--seed", "9"])
        knc.write_text(text)
        trace = tmp_path / "trace.log"
        code, text = run(
            [
                "pipeline",
                "--input",
                str(knc),
                "--k",
                "2",
                "--parts",
                "4",
                "--eta",
                "0.3",
                "--delta",
                "0.3",
                "--seed",
                "9",
                "--trace",
                str(trace),
            ]
        )
        assert code == EXIT_OK
        assert text.startswith("BOOK") or text == "NOSPINE\n"
        logged = trace.read_text()
        assert logged.startswith("extract\t")
        assert "winner" in logged

    def test_reproducible(self, tmp_path):
        knc = tmp_path / "r.knc"
        knc.write_text(run(["construct", "random", "--N", "48", "--seed", "2"])[1])
        args = ["pipeline", "--input", str(knc), "--k", "1", "--parts", "4",
                "--eta", "0.3", "--delta", "0.3", "--seed", "4"]
        assert run(args) == run(args)


class TestThreads:
    def test_explicit_threads(self, pentagon_file):
        code, text = run(["--threads", "2", "book", "--k", "2", "--input", pentagon_file])
        assert code == EXIT_OK and text.splitlines()[0] == "BOOK 0 2 0"

    def test_env_fallback(self, pentagon_file, monkeypatch):
        monkeypatch.setenv("BOOKRAM_THREADS", "2")
        code, text = run(["book", "--k", "2", "--input", pentagon_file])
        assert code == EXIT_OK and text.splitlines()[0] == "BOOK 0 2 0"

    def test_invalid_threads(self, pentagon_file):
        code, _ = run(["--threads", "0", "book", "--k", "2", "--input", pentagon_file])
        assert code == EXIT_USAGE


class TestUsageErrors:
    def test_unknown_subcommand(self):
        code, _ = run(["frobnicate"])
        assert code == EXIT_USAGE

    def test_missing_required(self):
        code, _ = run(["book", "--k", "2"])
        assert code == EXIT_USAGE

    def test_missing_file(self):
        code, _ = run(["book", "--k", "2", "--input", "/nonexistent/x.knc"])
        assert code == EXIT_USAGE
