"""DIMACS CNF export for book-avoidance colourings, plus a small reference
solver for the tiny instances the test suites exercise.

The CNF is satisfiable iff K_N has a red/blue edge colouring with no
monochromatic book of spine size k and n pages.  Edge variables come first
(true = blue); every k-set and colour gets a mono-spine indicator, page
indicators, and a sequential-counter cardinality constraint conditioned on
the indicator.  The header maps variables to edges so models decode back to
colourings.
"""

from __future__ import annotations

import itertools
from math import comb

from .colouring import BLUE, Colouring

DEFAULT_CLAUSE_CAP = 2_000_000


class CnfSizeError(ValueError):
    """Raised instead of building a CNF beyond the clause cap."""

    def __init__(self, estimate: int, cap: int):
        super().__init__(f"estimated {estimate} clauses exceeds cap {cap}")
        self.estimate = estimate
        self.cap = cap


def edge_index(size: int) -> dict[tuple[int, int], int]:
    """Map each pair u < v to its 1-based edge variable."""
    out = {}
    t = 0
    for u in range(size):
        for v in range(u + 1, size):
            t += 1
            out[(u, v)] = t
    return out


def _sequential_counter_clauses(guard: int, xs: list[int], bound: int, next_var: int):
    """Clauses for guard -> (sum of xs <= bound), Sinz sequential counter.

    Returns (clauses, next_var).  Callers handle bound == 0 and
    len(xs) <= bound themselves.
    """
    t = len(xs)
    regs = [[0] * (bound + 1) for _ in range(t)]  # regs[i][j], 1-based j
    nv = next_var
    for i in range(1, t):
        for j in range(1, bound + 1):
            regs[i][j] = nv
            nv += 1
    cls = []
    g = -guard
    cls.append((g, -xs[0], regs[1][1]))
    for j in range(2, bound + 1):
        cls.append((g, -regs[1][j]))
    for i in range(2, t):
        cls.append((g, -xs[i - 1], regs[i][1]))
        cls.append((g, -regs[i - 1][1], regs[i][1]))
        for j in range(2, bound + 1):
            cls.append((g, -xs[i - 1], -regs[i - 1][j - 1], regs[i][j]))
            cls.append((g, -regs[i - 1][j], regs[i][j]))
        cls.append((g, -xs[i - 1], -regs[i - 1][bound]))
    cls.append((g, -xs[t - 1], -regs[t - 1][bound]))
    return cls, nv


def _counter_clause_count(t: int, bound: int) -> int:
    if t <= bound:
        return 0
    if bound == 0:
        return t
    return bound + (t - 2) * (2 * bound + 1) + 1


def estimate_clauses(k: int, n: int, size: int) -> int:
    """Closed-form clause count of ``sat_export(k, n, size)``."""
    pages = size - k
    per_spine = (comb(k, 2) + 1) + pages * (k + 1) + _counter_clause_count(pages, n - 1)
    return 2 * comb(size, k) * per_spine


def sat_export(k: int, n: int, size: int, clause_cap: int = DEFAULT_CLAUSE_CAP) -> str:
    """DIMACS CNF text, satisfiable iff some colouring of K_size avoids every
    monochromatic book with spine size k and n pages."""
    if k < 1 or n < 1 or size < 2:
        raise ValueError("need k >= 1, n >= 1, size >= 2")
    estimate = estimate_clauses(k, n, size)
    if estimate > clause_cap:
        raise CnfSizeError(estimate, clause_cap)
    evar = edge_index(size)
    next_var = len(evar) + 1
    clauses: list[tuple[int, ...]] = []

    def edge_lit(u: int, v: int, colour: int) -> int:
        var = evar[(u, v) if u < v else (v, u)]
        return var if colour == BLUE else -var

    for spine in itertools.combinations(range(size), k):
        for colour in (0, 1):
            lits = [edge_lit(u, v, colour) for u, v in itertools.combinations(spine, 2)]
            mono = next_var
            next_var += 1
            for lit in lits:
                clauses.append((-mono, lit))
            clauses.append((mono, *[-lit for lit in lits]))
            page_vars = []
            spine_set = set(spine)
            for v in range(size):
                if v in spine_set:
                    continue
                p = next_var
                next_var += 1
                page_vars.append(p)
                plits = [edge_lit(v, u, colour) for u in spine]
                for lit in plits:
                    clauses.append((-p, lit))
                clauses.append((p, *[-lit for lit in plits]))
            bound = n - 1
            if len(page_vars) <= bound:
                continue
            if bound == 0:
                for p in page_vars:
                    clauses.append((-mono, -p))
            else:
                extra, next_var = _sequential_counter_clauses(mono, page_vars, bound, next_var)
                clauses.extend(extra)

    out = [
        f"c book-avoidance instance: K_{size}, spine K_{k}, forbid {n} pages",
        "c edge variable true = blue, false = red",
        "c cardinality encoding: sequential counter, conditional on mono-spine indicator",
    ]
    for (u, v), t in evar.items():
        out.append(f"c edge {u + 1} {v + 1} -> var {t}")
    out.append(f"p cnf {next_var - 1} {len(clauses)}")
    for cl in clauses:
        out.append(" ".join(str(l) for l in cl) + " 0")
    return "\n".join(out) + "\n"


def parse_edge_map(cnf_text: str) -> tuple[int, dict[int, tuple[int, int]]]:
    """Recover (size, var -> 0-based edge) from the CNF header comments."""
    var_edge: dict[int, tuple[int, int]] = {}
    size = 0
    for line in cnf_text.splitlines():
        parts = line.split()
        if len(parts) == 7 and parts[:2] == ["c", "edge"] and parts[4:6] == ["->", "var"]:
            u, v, t = int(parts[2]) - 1, int(parts[3]) - 1, int(parts[6])
            var_edge[t] = (u, v)
            size = max(size, u + 1, v + 1)
    return size, var_edge


def decode_model(size: int, model) -> Colouring:
    """Turn a DIMACS model (sequence of signed literals) into a colouring.

    Edge variables are the first C(size, 2) variables in lexicographic edge
    order; positive means blue.
    """
    truth = {abs(l): l > 0 for l in model}
    evar = edge_index(size)

    def colour_of(u: int, v: int) -> int:
        return BLUE if truth.get(evar[(u, v)], False) else 0

    return Colouring.from_edge_colours(size, 2, colour_of)


SAT = "SAT"
UNSAT = "UNSAT"


def parse_dimacs(text: str) -> tuple[int, list[list[int]]]:
    nvars = 0
    clauses: list[list[int]] = []
    cur: list[int] = []
    for line in text.splitlines():
        if not line or line[0] in "c%":
            continue
        parts = line.split()
        if parts[0] == "p":
            nvars = int(parts[2])
            continue
        for tok in parts:
            lit = int(tok)
            if lit == 0:
                clauses.append(cur)
                cur = []
            else:
                cur.append(lit)
    if cur:
        clauses.append(cur)
    return nvars, clauses


def solve_dimacs(text: str) -> tuple[str, list[int] | None]:
    """Decide a DIMACS CNF with a watched-literal DPLL.

    Meant for the small instances this package emits; returns ("SAT", model)
    or ("UNSAT", None).  Branches on the lowest unassigned variable, trying
    false (red) first to mirror the colouring search.
    """
    nvars, clauses = parse_dimacs(text)
    assign = [0] * (nvars + 1)  # 0 unknown, +1 true, -1 false
    watches: dict[int, list[int]] = {}
    trail: list[int] = []

    def value(lit: int) -> int:
        v = assign[abs(lit)]
        return v if lit > 0 else -v

    def enqueue(lit: int) -> bool:
        if value(lit) == -1:
            return False
        if value(lit) == 0:
            assign[abs(lit)] = 1 if lit > 0 else -1
            trail.append(lit)
        return True

    for idx, cl in enumerate(clauses):
        if not cl:
            return UNSAT, None
        if len(cl) == 1:
            if not enqueue(cl[0]):
                return UNSAT, None
            continue
        watches.setdefault(cl[0], []).append(idx)
        watches.setdefault(cl[1], []).append(idx)

    def propagate(head: int) -> bool:
        """Exhaust unit propagation from trail position ``head``."""
        while head < len(trail):
            lit = trail[head]
            head += 1
            falsified = -lit
            watching = watches.get(falsified, [])
            i = 0
            while i < len(watching):
                ci = watching[i]
                cl = clauses[ci]
                if cl[0] == falsified:
                    cl[0], cl[1] = cl[1], cl[0]
                # cl[1] == falsified now; find a replacement watch
                if value(cl[0]) == 1:
                    i += 1
                    continue
                moved = False
                for j in range(2, len(cl)):
                    if value(cl[j]) != -1:
                        cl[1], cl[j] = cl[j], cl[1]
                        watches.setdefault(cl[1], []).append(ci)
                        watching[i] = watching[-1]
                        watching.pop()
                        moved = True
                        break
                if moved:
                    continue
                if not enqueue(cl[0]):
                    return False
                i += 1
        return True

    if not propagate(0):
        return UNSAT, None
    decisions: list[tuple[int, int, bool]] = []  # (trail mark, literal, flipped)

    while True:
        var = 0
        for x in range(1, nvars + 1):
            if assign[x] == 0:
                var = x
                break
        if var == 0:
            return SAT, [x if assign[x] > 0 else -x for x in range(1, nvars + 1)]
        lit = -var  # false first
        mark = len(trail)
        decisions.append((mark, lit, False))
        enqueue(lit)
        while not propagate(len(trail) - 1):
            while decisions and decisions[-1][2]:
                mark, lit, _ = decisions.pop()
                for l in trail[mark:]:
                    assign[abs(l)] = 0
                del trail[mark:]
            if not decisions:
                return UNSAT, None
            mark, lit, _ = decisions.pop()
            for l in trail[mark:]:
                assign[abs(l)] = 0
            del trail[mark:]
            decisions.append((mark, -lit, True))
            enqueue(-lit)
    # unreachable
