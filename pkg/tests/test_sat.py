"""CNF export semantics, the reference solver, and DFS agreement."""

import itertools

import pytest

from bookram.books import has_mono_book
from bookram.sat import (
    SAT,
    UNSAT,
    CnfSizeError,
    _sequential_counter_clauses,
    decode_model,
    edge_index,
    estimate_clauses,
    parse_dimacs,
    parse_edge_map,
    sat_export,
    solve_dimacs,
)
from bookram.search import FOUND, find_witness


class TestEncoding:
    def test_single_edge_unsat(self):
        # K_2 with k=1, n=1: either colour of the lone edge completes a book
        status, _ = solve_dimacs(sat_export(1, 1, 2))
        assert status == UNSAT

    def test_k2_n1_size5_sat_and_decodes(self):
        status, model = solve_dimacs(sat_export(2, 1, 5))
        assert status == SAT
        col = decode_model(5, model)
        assert not has_mono_book(col, 2, 1)

    def test_k2_n1_size6_unsat(self):
        status, _ = solve_dimacs(sat_export(2, 1, 6))
        assert status == UNSAT

    def test_estimate_matches_emitted(self):
        for k, n, size in ((1, 1, 4), (1, 2, 5), (2, 1, 5), (2, 2, 6), (3, 2, 6)):
            text = sat_export(k, n, size)
            header = next(l for l in text.splitlines() if l.startswith("p cnf"))
            _, _, nvars, nclauses = header.split()
            _, clauses = parse_dimacs(text)
            assert len(clauses) == int(nclauses) == estimate_clauses(k, n, size)
            assert int(nvars) >= len(edge_index(size))

    def test_header_edge_map(self):
        text = sat_export(2, 1, 5)
        size, var_edge = parse_edge_map(text)
        assert size == 5
        want = {t: e for e, t in edge_index(5).items()}
        assert var_edge == want

    def test_cap_refusal_carries_estimate(self):
        with pytest.raises(CnfSizeError) as err:
            sat_export(3, 2, 30, clause_cap=1000)
        assert err.value.estimate == estimate_clauses(3, 2, 30)

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            sat_export(0, 1, 4)


class TestSequentialCounter:
    @pytest.mark.parametrize("t,bound", [(3, 1), (4, 2), (5, 3), (2, 1)])
    def test_exact_semantics(self, t, bound):
        # with the guard forced true, the counter admits exactly the
        # assignments with at most `bound` of the t inputs true
        guard = 1
        xs = list(range(2, 2 + t))
        clauses, _ = _sequential_counter_clauses(guard, xs, bound, 2 + t)
        for pattern in itertools.product((False, True), repeat=t):
            lines = ["p cnf 99 0"]
            for cl in clauses:
                lines.append(" ".join(str(l) for l in cl) + " 0")
            lines.append("1 0")
            for x, val in zip(xs, pattern):
                lines.append(f"{x if val else -x} 0")
            status, _ = solve_dimacs("\n".join(lines))
            expected = SAT if sum(pattern) <= bound else UNSAT
            assert status == expected, (pattern, bound)

    def test_guard_off_releases_constraint(self):
        guard = 1
        xs = [2, 3]
        clauses, _ = _sequential_counter_clauses(guard, xs, 1, 4)
        lines = ["p cnf 9 0"]
        for cl in clauses:
            lines.append(" ".join(str(l) for l in cl) + " 0")
        lines += ["-1 0", "2 0", "3 0"]
        status, _ = solve_dimacs("\n".join(lines))
        assert status == SAT


class TestSolver:
    def test_trivial(self):
        assert solve_dimacs("p cnf 2 2\n1 2 0\n-1 0\n")[0] == SAT
        assert solve_dimacs("p cnf 1 2\n1 0\n-1 0\n")[0] == UNSAT

    def test_model_satisfies_all_clauses(self):
        text = sat_export(2, 2, 6)
        status, model = solve_dimacs(text)
        assert status == SAT
        truth = {abs(l): l > 0 for l in model}
        _, clauses = parse_dimacs(text)
        for cl in clauses:
            assert any(truth[abs(l)] == (l > 0) for l in cl)


class TestAgreementSmallGrid:
    def test_dfs_and_sat_agree_up_to_size6(self):
        for k, n in ((1, 1), (1, 2), (2, 1), (2, 2)):
            for size in range(2, 7):
                dfs = find_witness(k, n, size)
                status, model = solve_dimacs(sat_export(k, n, size))
                assert (dfs.status == FOUND) == (status == SAT), (k, n, size)
                if status == SAT:
                    col = decode_model(size, model)
                    assert not has_mono_book(col, k, n)
