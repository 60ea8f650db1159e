"""Desk-scale density-partition pipeline with exact verification.

Builds an equitable partition by seeded local search, picks a
well-behaved subset inside each class, colours a reduced graph by density
thresholds (red above 1 - delta, blue otherwise, edges failing the sampled
regularity and density-agreement gates stay uncoloured), and extracts a
monochromatic book by trying every applicable spine prescription of the
case analysis exactly.  Every emitted certificate is re-verified; the
pipeline is a lower-bounding heuristic and never claims more than it checks.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .books import verify_certificate
from .colouring import BLUE, RED, BookCertificate, Colouring, bits, common_pages, mask_of

_FUZZ = 1e-12


def pair_density(col: Colouring, colour: int, a, b) -> float:
    """Edge density of ``colour`` between vertex sets a and b.

    Uses the ordered-pair convention e(A,B)/|A||B| throughout, so for a == b
    both orientations of each internal edge are counted and the diagonal is
    not.
    """
    a = tuple(a)
    b = tuple(b)
    if not a or not b:
        raise ValueError("density of an empty set is undefined")
    mb = mask_of(b)
    adjc = col.adj[colour]
    hits = sum((adjc[u] & mb).bit_count() for u in a)
    return hits / (len(a) * len(b))


@dataclass(frozen=True)
class RegularityVerdict:
    """``regular`` is exact in exhaustive mode; in sampled mode it only means
    no violation was found in the stated number of trials (one-sided)."""

    regular: bool
    mode: str
    trials: int
    base_density: float
    witness: tuple[tuple[int, ...], tuple[int, ...], float] | None = None


def eps_regular_check(
    col: Colouring,
    colour: int,
    a,
    b,
    eps: float,
    mode: str = "exhaustive",
    trials: int = 2000,
    seed: int = 0,
) -> RegularityVerdict:
    """Check whether (a, b) is eps-regular in the given colour.

    Exhaustive mode (|a|, |b| <= 14) scans every qualifying subset of ``a``;
    for each one the extreme sub-densities over subsets of ``b`` are attained
    by the top / bottom vertices by degree, so the verdict is exact and comes
    with a violating witness pair when irregular.
    """
    a = tuple(a)
    b = tuple(b)
    base = pair_density(col, colour, a, b)
    qa = max(1, math.ceil(eps * len(a) - 1e-9))
    qb = max(1, math.ceil(eps * len(b) - 1e-9))
    adjc = col.adj[colour]
    if mode == "exhaustive":
        if len(a) > 14 or len(b) > 14:
            raise ValueError("exhaustive mode caps both sides at 14 vertices")
        checked = 0
        for su in range(qa, len(a) + 1):
            for usub in itertools.combinations(a, su):
                checked += 1
                mu = mask_of(usub)
                degs = sorted(((adjc[w] & mu).bit_count(), w) for w in b)
                lo = degs[:qb]
                hi = degs[-qb:]
                dmin = sum(d for d, _ in lo) / (su * qb)
                dmax = sum(d for d, _ in hi) / (su * qb)
                if dmax > base + eps + _FUZZ:
                    vsub = tuple(sorted(w for _, w in hi))
                    return RegularityVerdict(
                        False, mode, checked, base, (usub, vsub, dmax)
                    )
                if dmin < base - eps - _FUZZ:
                    vsub = tuple(sorted(w for _, w in lo))
                    return RegularityVerdict(
                        False, mode, checked, base, (usub, vsub, dmin)
                    )
        return RegularityVerdict(True, mode, checked, base)
    if mode != "sampled":
        raise ValueError(f"unknown mode {mode!r}")
    rng = np.random.default_rng(seed)
    for trial in range(trials):
        su = int(rng.integers(qa, len(a) + 1))
        sv = int(rng.integers(qb, len(b) + 1))
        usub = tuple(sorted(a[i] for i in rng.choice(len(a), su, replace=False)))
        vsub = tuple(sorted(b[i] for i in rng.choice(len(b), sv, replace=False)))
        d = pair_density(col, colour, usub, vsub)
        if abs(d - base) > eps + _FUZZ:
            return RegularityVerdict(False, mode, trial + 1, base, (usub, vsub, d))
    return RegularityVerdict(True, mode, trials, base)


def pick_regular_subset(col: Colouring, verts, eta: float, trials: int, seed: int = 0):
    """Among seeded random half-size subsets of a class (and the class
    itself), return the one with the best sampled self-regularity score.

    Candidate size is max(2, ceil(|class|/2)), so a 2-vertex class admits
    only itself.
    """
    verts = tuple(sorted(verts))
    if len(verts) < 2:
        raise ValueError("class must have at least 2 vertices")
    size = max(2, (len(verts) + 1) // 2)
    if size >= len(verts):
        return verts
    base = list(seed) if isinstance(seed, (list, tuple)) else [seed]
    rng = np.random.default_rng(base)
    candidates = []
    for _ in range(trials):
        idx = rng.choice(len(verts), size, replace=False)
        candidates.append(tuple(sorted(verts[i] for i in idx)))
    candidates.append(verts)
    best = None
    for ci, cand in enumerate(candidates):
        score = _self_regularity_score(
            col, cand, eta, np.random.default_rng(base + [101, ci])
        )
        if best is None or score < best[0] - _FUZZ:
            best = (score, ci, cand)
    return best[2]


def _loopless_density(col, colour, a, b) -> float | None:
    """Density over admissible ordered pairs only: overlapping sets do not
    count the |a ∩ b| excluded diagonal slots in the denominator, so a
    complete graph scores exactly 1 at any size.  None when no admissible
    pair exists."""
    mb = mask_of(b)
    adjc = col.adj[colour]
    hits = sum((adjc[u] & mb).bit_count() for u in a)
    denom = len(a) * len(b) - len(set(a) & set(b))
    return hits / denom if denom else None


def _self_regularity_score(col, verts, eta, rng, probes: int = 24) -> float:
    """Max sampled deviation |d(U', V') - d(W, W)| over random probe pairs,
    with loopless normalisation; lower is better.  Degenerate probes with no
    admissible pair are skipped."""
    base = _loopless_density(col, RED, verts, verts)
    q = max(1, math.ceil(eta * len(verts) - 1e-9))
    worst = 0.0
    for _ in range(probes):
        su = int(rng.integers(q, len(verts) + 1))
        sv = int(rng.integers(q, len(verts) + 1))
        usub = [verts[i] for i in rng.choice(len(verts), su, replace=False)]
        vsub = [verts[i] for i in rng.choice(len(verts), sv, replace=False)]
        dens = _loopless_density(col, RED, usub, vsub)
        if dens is not None:
            worst = max(worst, abs(dens - base))
    return worst


@dataclass(frozen=True)
class EquitablePartition:
    """Vertex classes of near-equal size with a chosen subset inside each."""

    classes: tuple[tuple[int, ...], ...]
    subsets: tuple[tuple[int, ...], ...]
    eta: float

    @property
    def m(self) -> int:
        return len(self.classes)

    def __post_init__(self):
        sizes = [len(c) for c in self.classes]
        if sizes and max(sizes) - min(sizes) > 1:
            raise ValueError("partition is not equitable")
        for w, v in zip(self.subsets, self.classes):
            if not w or not set(w) <= set(v):
                raise ValueError("subsets must be nonempty parts of their class")


def balanced_swap_search(col: Colouring, m: int, seed: int, steps: int):
    """Seeded balanced class assignment plus pair-swap local search.

    The irregularity proxy is the sum over class pairs of the worst red
    density deviation across a fixed family of random subset probes; a swap
    is kept only when the proxy strictly decreases.  Returns
    (classes, initial proxy score, final proxy score).
    """
    if not 1 <= m <= col.n:
        raise ValueError("need 1 <= m <= vertex count")
    rng = np.random.default_rng(seed)
    perm = rng.permutation(col.n)
    classes: list[list[int]] = [[] for _ in range(m)]
    for pos, v in enumerate(perm):
        classes[pos % m].append(int(v))
    for cl in classes:
        cl.sort()

    patterns: list[list[tuple[int, ...]]] = []
    for cl in classes:
        pats = []
        psize = max(1, len(cl) // 2)
        for _ in range(3):
            pats.append(tuple(sorted(int(i) for i in rng.choice(len(cl), psize, replace=False))))
        patterns.append(pats)

    def probe_sets(i: int) -> list[list[int]]:
        return [[classes[i][p] for p in pat] for pat in patterns[i]]

    def pair_score(i: int, j: int) -> float:
        base = pair_density(col, RED, classes[i], classes[j])
        worst = 0.0
        for pa in probe_sets(i):
            for pb in probe_sets(j):
                worst = max(worst, abs(pair_density(col, RED, pa, pb) - base))
        return worst

    score = {}
    for i in range(m):
        for j in range(i + 1, m):
            score[(i, j)] = pair_score(i, j)
    initial = total = sum(score.values())

    for _ in range(steps):
        if m < 2:
            break
        i, j = (int(x) for x in rng.choice(m, 2, replace=False))
        ui = int(rng.integers(len(classes[i])))
        vj = int(rng.integers(len(classes[j])))
        u, v = classes[i][ui], classes[j][vj]
        classes[i].remove(u)
        classes[i].append(v)
        classes[i].sort()
        classes[j].remove(v)
        classes[j].append(u)
        classes[j].sort()
        delta = 0.0
        new_vals = {}
        for key in score:
            if i in key or j in key:
                nv = pair_score(*key)
                new_vals[key] = nv
                delta += nv - score[key]
        if delta < -_FUZZ:
            score.update(new_vals)
            total += delta
        else:
            classes[i].remove(v)
            classes[i].append(u)
            classes[i].sort()
            classes[j].remove(u)
            classes[j].append(v)
            classes[j].sort()
    return classes, initial, total


def make_partition(
    col: Colouring,
    m: int,
    seed: int,
    steps: int,
    eta: float = 0.05,
    subset_trials: int = 12,
) -> EquitablePartition:
    """Equitable partition by balanced_swap_search, with the per-class
    subsets chosen by pick_regular_subset (a singleton class is its own
    subset)."""
    classes, _, _ = balanced_swap_search(col, m, seed, steps)
    subsets = []
    for idx, cl in enumerate(classes):
        if len(cl) < 2:
            subsets.append(tuple(cl))
        else:
            subsets.append(
                pick_regular_subset(
                    col, tuple(cl), eta, subset_trials, seed=_derive_seed(seed, idx)
                )
            )
    return EquitablePartition(
        tuple(tuple(cl) for cl in classes), tuple(subsets), eta
    )


def _derive_seed(seed: int, *parts: int):
    return [seed, 7919, *parts]


@dataclass(frozen=True)
class ReducedGraph:
    """One vertex per class: vertex colours by majority inside the chosen
    subset, edge colours by red-density threshold, gated by sampled
    regularity; high uncoloured-degree vertices are deleted greedily."""

    partition: EquitablePartition
    eta: float
    delta: float
    vertex_colours: tuple[int, ...]
    edge_colours: tuple[tuple[int | None, ...], ...]
    d_vv: tuple[tuple[float, ...], ...]
    d_wv: tuple[tuple[float, ...], ...]
    d_ww: tuple[tuple[float, ...], ...]
    deleted: frozenset[int]

    @property
    def m(self) -> int:
        return self.partition.m

    def survivors(self) -> list[int]:
        return [i for i in range(self.m) if i not in self.deleted]

    def coloured_degree(self, i: int, colour: int) -> int:
        return sum(
            1
            for j in self.survivors()
            if j != i and self.edge_colours[i][j] == colour
        )


def build_reduced(
    col: Colouring,
    partition: EquitablePartition,
    eta: float,
    delta: float,
    trials: int = 120,
    seed: int = 0,
) -> ReducedGraph:
    """Colour the reduced graph of a partition.

    An edge (i, j) stays uncoloured unless the sampled regularity checks for
    (V_i, V_j), (W_i, V_j), (W_j, V_i) and (W_i, W_j) all pass and the stored
    red densities agree within eta.  Coloured edges are red when the red
    density is at least 1 - delta (ties red) and blue otherwise.  Vertices
    with more than sqrt(eta) * m uncoloured incident edges are deleted
    greedily, worst degree first, lowest index on ties.
    """
    if col.q != 2:
        raise ValueError("the reduced-graph pipeline is two-colour only")
    m = partition.m
    classes, subsets = partition.classes, partition.subsets
    d_vv = [[0.0] * m for _ in range(m)]
    d_wv = [[0.0] * m for _ in range(m)]
    d_ww = [[0.0] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            if i == j:
                d_vv[i][j] = pair_density(col, RED, classes[i], classes[i])
                d_wv[i][j] = pair_density(col, RED, subsets[i], classes[i])
                d_ww[i][j] = pair_density(col, RED, subsets[i], subsets[i])
            else:
                d_vv[i][j] = pair_density(col, RED, classes[i], classes[j])
                d_wv[i][j] = pair_density(col, RED, subsets[i], classes[j])
                d_ww[i][j] = pair_density(col, RED, subsets[i], subsets[j])

    vcols = []
    for i in range(m):
        red_inside = d_ww[i][i]
        blue_inside = pair_density(col, BLUE, subsets[i], subsets[i])
        vcols.append(RED if red_inside >= blue_inside else BLUE)

    states: list[list[int | None]] = [[None] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            agree = (
                abs(d_wv[i][j] - d_vv[i][j]) <= eta + _FUZZ
                and abs(d_wv[j][i] - d_vv[i][j]) <= eta + _FUZZ
                and abs(d_ww[i][j] - d_vv[i][j]) <= eta + _FUZZ
            )
            regular = agree
            if agree:
                pairs = (
                    (classes[i], classes[j]),
                    (subsets[i], classes[j]),
                    (subsets[j], classes[i]),
                    (subsets[i], subsets[j]),
                )
                for idx, (x, y) in enumerate(pairs):
                    verdict = eps_regular_check(
                        col,
                        RED,
                        x,
                        y,
                        eta,
                        mode="sampled",
                        trials=trials,
                        seed=_derive_seed(seed, i, j, idx),
                    )
                    if not verdict.regular:
                        regular = False
                        break
            if regular:
                colour = RED if d_vv[i][j] >= 1.0 - delta - _FUZZ else BLUE
                states[i][j] = states[j][i] = colour

    deleted: set[int] = set()
    threshold = math.sqrt(eta) * m
    while True:
        worst_deg, worst_vertex = -1, None
        for i in range(m):
            if i in deleted:
                continue
            deg = sum(
                1
                for j in range(m)
                if j != i and j not in deleted and states[i][j] is None
            )
            if deg > worst_deg:
                worst_deg, worst_vertex = deg, i
        if worst_vertex is None or worst_deg <= threshold + _FUZZ:
            break
        deleted.add(worst_vertex)

    return ReducedGraph(
        partition=partition,
        eta=eta,
        delta=delta,
        vertex_colours=tuple(vcols),
        edge_colours=tuple(tuple(row) for row in states),
        d_vv=tuple(tuple(r) for r in d_vv),
        d_wv=tuple(tuple(r) for r in d_wv),
        d_ww=tuple(tuple(r) for r in d_ww),
        deleted=frozenset(deleted),
    )


def _transversal_scan(col: Colouring, colour: int, spine_parts, page_mask: int):
    """Enumerate colour-c cliques with the i-th vertex drawn from the i-th
    part (parts may repeat, vertices stay distinct).  Returns
    (best, count, total_pages) where best is (pages, spine) or None."""
    part_masks = [mask_of(p) for p in spine_parts]
    k = len(part_masks)
    adjc = col.adj[colour]
    full = col.full_mask()
    seen: set[frozenset[int]] = set()
    chosen: list[int] = []
    best: tuple[int, tuple[int, ...]] | None = None
    count = 0
    total = 0

    def rec(pos: int, used: int, inter: int):
        nonlocal best, count, total
        if pos == k:
            key = frozenset(chosen)
            if key in seen:
                return
            seen.add(key)
            pages = (inter & page_mask).bit_count()
            spine = tuple(sorted(chosen))
            count += 1
            total += pages
            if best is None or pages > best[0] or (pages == best[0] and spine < best[1]):
                best = (pages, spine)
            return
        for v in bits(part_masks[pos] & inter & ~used):
            chosen.append(v)
            rec(pos + 1, used | (1 << v), inter & adjc[v])
            chosen.pop()

    rec(0, 0, full)
    return best, count, total


def transversal_best_spine(
    col: Colouring, colour: int, spine_parts, page_parts
) -> BookCertificate | None:
    """Best book over cliques with one spine vertex per given part, pages
    counted inside the union of the page parts.

    The winner's page count is at least the exact average over all such
    cliques; ties go to the lexicographically smallest spine.  No transversal
    clique at all gives None.
    """
    page_mask = 0
    for p in page_parts:
        page_mask |= mask_of(p)
    best, count, total = _transversal_scan(col, colour, spine_parts, page_mask)
    if best is None:
        return None
    pages, spine = best
    if pages * count < total:
        raise RuntimeError("maximum fell below the average; enumeration is broken")
    mask = common_pages(col, colour, spine) & page_mask
    return BookCertificate(colour, spine, tuple(bits(mask)))


def transversal_page_stats(col: Colouring, colour: int, spine_parts, page_parts):
    """(number of transversal cliques, total page count) for the averaging
    identity checks."""
    page_mask = 0
    for p in page_parts:
        page_mask |= mask_of(p)
    _, count, total = _transversal_scan(col, colour, spine_parts, page_mask)
    return count, total


@dataclass(frozen=True)
class CandidateRecord:
    """One spine prescription tried by the extraction case analysis."""

    index: int
    case: str
    role_red: int
    colour: int
    spine_label: str
    page_label: str
    pages: int | None
    spine: tuple[int, ...] | None


@dataclass(frozen=True)
class ExtractionTrace:
    lines: tuple[str, ...]
    candidates: tuple[CandidateRecord, ...]
    winner: int | None

    def render(self) -> str:
        return "\n".join(self.lines) + "\n"


def _find_blowup(reduced: ReducedGraph, verts: list[int], k: int, t_max: int, blue: int):
    """Largest t <= t_max admitting k disjoint t-subsets of ``verts``, each a
    monochromatic clique in the reduced edge colouring, pairwise joined
    entirely in ``blue``.  Deterministic lexicographic search; parts are
    ordered by their smallest element."""
    states = reduced.edge_colours

    def internal_colour(part):
        if len(part) == 1:
            return "vacuous"
        colours = {states[u][v] for u, v in itertools.combinations(part, 2)}
        if len(colours) == 1 and None not in colours:
            return colours.pop()
        return "mixed"

    def cross_blue(pa, pb):
        return all(states[u][v] == blue for u in pa for v in pb)

    for t in range(min(t_max, len(verts) // k if k else 0), 0, -1):
        parts: list[tuple[int, ...]] = []

        def rec(pool: list[int]) -> bool:
            if len(parts) == k:
                return True
            floor = parts[-1][0] if parts else -1
            for cand in itertools.combinations(pool, t):
                if cand[0] <= floor:
                    continue
                if internal_colour(cand) == "mixed":
                    continue
                if any(not cross_blue(cand, p) for p in parts):
                    continue
                parts.append(cand)
                if rec([v for v in pool if v not in cand]):
                    return True
                parts.pop()
            return False

        if k >= 1 and rec(list(verts)):
            return t, tuple(parts)
    return None


def extract_book(
    col: Colouring, reduced: ReducedGraph, k: int, t_max: int = 3
) -> tuple[BookCertificate | None, ExtractionTrace]:
    """Run the case analysis on the reduced graph and realise every
    applicable spine prescription exactly.

    Both colour roles are tried.  A "red" vertex of high red degree
    prescribes spines inside its subset with pages over its own class and its
    red-neighbour classes; a blue blow-up with monochromatic parts triggers
    the blue-clique subcases (including the high red-density-sum escape) or,
    when all parts are red, the dichotomy endgame, choosing vertex tuples
    that maximise the exact density-product sums.  Every candidate
    certificate is re-verified; the best page count wins, earliest candidate
    on ties.
    """
    if k < 1:
        raise ValueError("spine size must be at least 1")
    part = reduced.partition
    classes, subsets = part.classes, part.subsets
    m = part.m
    eta, delta = reduced.eta, reduced.delta
    surv = reduced.survivors()
    ell = m / 2.0**k
    m_prime = (1.0 - math.sqrt(eta)) * m
    s_min = math.ceil((0.5 - math.sqrt(eta)) * m)
    states = reduced.edge_colours

    lines: list[str] = []
    records: list[CandidateRecord] = []
    out = lines.append
    out(
        f"extract\tk={k}\teta={eta:.6f}\tdelta={delta:.6f}\tm={m}\tell={ell:.6f}"
        f"\tm_prime={m_prime:.6f}\ts_min={s_min}\tt_max={t_max}"
    )
    for i, cl in enumerate(classes):
        out(f"class\t{i}\t" + " ".join(str(v + 1) for v in cl))
    for i, w in enumerate(subsets):
        out(f"subset\t{i}\t" + " ".join(str(v + 1) for v in w))
    for i in range(m):
        out("dvv\t" + "\t".join(f"{reduced.d_vv[i][j]:.6f}" for j in range(m)))
    rows = []
    for i in range(m):
        row = []
        for j in range(m):
            if i == j:
                row.append("-")
            else:
                st = states[i][j]
                row.append("." if st is None else ("r" if st == RED else "b"))
        rows.append("".join(row))
    for i, r in enumerate(rows):
        out(f"edges\t{i}\t{r}")
    out("vertex_colours\t" + "".join("r" if c == RED else "b" for c in reduced.vertex_colours))
    out("deleted\t" + (" ".join(str(i) for i in sorted(reduced.deleted)) or "-"))

    def dens_wv(colour: int, i: int, j: int) -> float:
        base = reduced.d_wv[i][j]
        return base if colour == RED else 1.0 - base

    def coloured(i: int, j: int) -> bool:
        return states[i][j] is not None

    def add_candidate(case, role_red, colour, spine_parts, spine_label, page_idx):
        page_parts = [classes[j] for j in page_idx]
        page_label = " ".join(f"V{j}" for j in page_idx) or "-"
        cert = transversal_best_spine(col, colour, spine_parts, page_parts)
        pages = None
        spine = None
        if cert is not None:
            verdict = verify_certificate(col, cert, 0)
            if not verdict.ok:
                raise RuntimeError(f"extraction produced a bad certificate: {verdict}")
            pages, spine = cert.page_count, cert.spine
        idx = len(records)
        records.append(
            CandidateRecord(idx, case, role_red, colour, spine_label, page_label, pages, spine)
        )
        out(
            f"candidate\t{idx}\t{case}\trole_red={role_red}\tcolour={colour}"
            f"\tspine={spine_label}\tpages={page_label}\t"
            + ("nospine" if pages is None else f"got={pages}")
        )
        return cert

    certs: dict[int, BookCertificate] = {}

    for role_red in (0, 1):
        role_blue = 1 - role_red
        out(f"role\tred={role_red}")
        fired_a = False
        for a in surv:
            if reduced.vertex_colours[a] != role_red:
                continue
            deg = reduced.coloured_degree(a, role_red)
            if deg + _FUZZ >= ell:
                fired_a = True
                out(f"caseA\tvertex={a}\tred_degree={deg}\tell={ell:.6f}")
                page_idx = [a] + [
                    j for j in surv if j != a and states[a][j] == role_red
                ]
                cert = add_candidate(
                    "A",
                    role_red,
                    role_red,
                    [subsets[a]] * k,
                    f"W{a}^{k}",
                    page_idx,
                )
                if cert is not None:
                    certs[len(records) - 1] = cert
        if not fired_a:
            out("caseA\tnone")

        red_verts = [v for v in surv if reduced.vertex_colours[v] == role_red]
        blow = _find_blowup(reduced, red_verts, k, t_max, role_blue)
        if blow is None:
            out("blowup\tnone")
            continue
        t, parts = blow
        out(
            "blowup\tt=%d\tparts=%s"
            % (t, ";".join(",".join(str(v) for v in p) for p in parts))
        )

        def part_colour(p):
            if len(p) == 1:
                return role_red  # vacuous clique counts as red
            return states[p[0]][p[1]]

        all_red = True
        for pi, p in enumerate(parts):
            pc = part_colour(p)
            out(f"part\t{pi}\tinternal={'r' if pc == role_red else 'b'}")
            if pc != role_red:
                all_red = False
                for a in p:
                    total = sum(
                        dens_wv(role_red, a, j)
                        for j in surv
                        if j != a and coloured(a, j)
                    )
                    escaped = total + _FUZZ >= m / 2.0
                    out(
                        f"escape\tvertex={a}\tsum={total:.6f}\tthreshold={m / 2.0:.6f}"
                        f"\tfired={'y' if escaped else 'n'}"
                    )
                    if escaped:
                        page_idx = [a] + [j for j in surv if j != a and coloured(a, j)]
                        cert = add_candidate(
                            "B-escape",
                            role_red,
                            role_red,
                            [subsets[a]] * k,
                            f"W{a}^{k}",
                            page_idx,
                        )
                        if cert is not None:
                            certs[len(records) - 1] = cert
                if t >= k:
                    tup = _best_tuple(
                        reduced,
                        [list(p)] * k,
                        role_blue,
                        surv,
                        distinct=True,
                    )
                    if tup is not None:
                        chosen, page_idx = tup
                        cert = add_candidate(
                            "B-blue",
                            role_red,
                            role_blue,
                            [subsets[a] for a in chosen],
                            " ".join(f"W{a}" for a in chosen),
                            page_idx,
                        )
                        if cert is not None:
                            certs[len(records) - 1] = cert
                else:
                    out(f"subcase\tblue-part-too-small\tt={t}\tk={k}")

        if all_red:
            etab = {
                v: [
                    sum(dens_wv(role_blue, w, v) for w in parts[i])
                    for i in range(k)
                ]
                for v in surv
            }
            for v in surv:
                out(
                    f"etable\tv={v}\t"
                    + "\t".join(f"{etab[v][i]:.6f}" for i in range(k))
                )
            lhs_red = sum(sum((t - e) ** k for e in etab[v]) for v in surv)
            lhs_blue = sum(math.prod(etab[v]) for v in surv)
            thr_red = (t / 2.0) ** k * k * m_prime
            thr_blue = (t / 2.0) ** k * m_prime
            out(
                f"dichotomy\tlhs_red={lhs_red:.6f}\tthr_red={thr_red:.6f}"
                f"\tfired={'y' if lhs_red + _FUZZ >= thr_red else 'n'}"
            )
            out(
                f"dichotomy\tlhs_blue={lhs_blue:.6f}\tthr_blue={thr_blue:.6f}"
                f"\tfired={'y' if lhs_blue + _FUZZ >= thr_blue else 'n'}"
            )
            tup = _best_tuple(
                reduced, [list(p) for p in parts], role_blue, surv, distinct=True
            )
            if tup is not None:
                chosen, page_idx = tup
                cert = add_candidate(
                    "end-blue",
                    role_red,
                    role_blue,
                    [subsets[a] for a in chosen],
                    " ".join(f"W{a}" for a in chosen),
                    page_idx,
                )
                if cert is not None:
                    certs[len(records) - 1] = cert
            for r in range(k):
                tup = _best_tuple(
                    reduced, [list(parts[r])] * k, role_red, surv, distinct=False
                )
                if tup is not None:
                    chosen, page_idx = tup
                    cert = add_candidate(
                        f"end-red-{r}",
                        role_red,
                        role_red,
                        [subsets[a] for a in chosen],
                        " ".join(f"W{a}" for a in chosen),
                        page_idx,
                    )
                    if cert is not None:
                        certs[len(records) - 1] = cert

    winner = None
    for idx, cert in certs.items():
        if winner is None or cert.page_count > certs[winner].page_count:
            winner = idx
    if winner is None:
        out("winner\tnone")
        result = None
    else:
        result = certs[winner]
        out(f"winner\t{winner}\tpages={result.page_count}")
        out(
            "certificate\tBOOK %d %d %d\t%s\t%s"
            % (
                result.colour,
                result.k,
                result.page_count,
                " ".join(str(v + 1) for v in result.spine),
                " ".join(str(v + 1) for v in result.pages),
            )
        )
    trace = ExtractionTrace(tuple(lines), tuple(records), winner)
    return result, trace


def _best_tuple(reduced, pools, colour, surv, distinct):
    """Vertex tuple (one from each pool) maximising the exact sum over
    admissible classes of the product of subset-to-class densities in
    ``colour``.  Admissible classes survive deletion, avoid the tuple, and
    have coloured edges to every tuple member."""
    states = reduced.edge_colours

    def dens(i, j):
        base = reduced.d_wv[i][j]
        return base if colour == RED else 1.0 - base

    k = len(pools)
    if distinct:
        if len(pools[0]) < k and all(p == pools[0] for p in pools):
            return None
        combos = (
            itertools.combinations(sorted(pools[0]), k)
            if all(p == pools[0] for p in pools)
            else itertools.product(*pools)
        )
    else:
        combos = itertools.combinations_with_replacement(sorted(pools[0]), k)
    best = None
    for tup in combos:
        if distinct and len(set(tup)) != k:
            continue
        chosen = set(tup)
        page_idx = [
            j
            for j in surv
            if j not in chosen and all(states[a][j] is not None for a in tup)
        ]
        value = sum(math.prod(dens(a, j) for a in tup) for j in page_idx)
        if best is None or value > best[0] + _FUZZ:
            best = (value, tuple(tup), page_idx)
    if best is None:
        return None
    return best[1], best[2]
