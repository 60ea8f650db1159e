"""Coloured complete graphs and hypergraphs with bitset adjacency, plus file IO.

Vertices are 0-based in memory and 1-based in files (the file is authoritative).
An edge colouring of K_N with q colours is stored as q lists of N bitmasks:
bit v of ``adj[c][u]`` is set iff edge (u, v) carries colour c.  Colour 0 is
red and colour 1 is blue.  Masks are plain Python ints, so all the usual
tricks (``&``, ``bit_count``) apply at any N.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

RED = 0
BLUE = 1

#: Dense hypergraph colourings refuse to materialise more than this many edges.
HYPER_ENTRY_CAP = 1 << 22


class FormatError(ValueError):
    """Malformed KNC / KNSC / BOOK input; remembers the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


def bits(mask: int):
    """Iterate the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices) -> int:
    """Bitmask with the given vertex positions set."""
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Colouring:
    """A q-colouring of the edges of K_n, immutable after construction.

    Invariants: every unordered pair carries exactly one colour, each
    per-colour matrix is symmetric with a clear diagonal.
    """

    n: int
    q: int
    adj: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_edge_colours(n: int, q: int, colour_of) -> "Colouring":
        """Build from a callable mapping each pair u < v to a colour."""
        rows = [[0] * n for _ in range(q)]
        for u in range(n):
            for v in range(u + 1, n):
                c = colour_of(u, v)
                if not 0 <= c < q:
                    raise ValueError(f"colour {c} out of range for q={q}")
                rows[c][u] |= 1 << v
                rows[c][v] |= 1 << u
        return Colouring(n, q, tuple(tuple(r) for r in rows))

    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def colour_of(self, u: int, v: int) -> int:
        if u == v or not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"no edge ({u}, {v})")
        for c in range(self.q):
            if (self.adj[c][u] >> v) & 1:
                return c
        raise ValueError(f"edge ({u}, {v}) carries no colour")

    def edge_count(self, c: int) -> int:
        return sum(row.bit_count() for row in self.adj[c]) // 2

    def validate(self) -> None:
        """Check the colour-partition, symmetry and diagonal invariants."""
        if self.n < 1:
            raise ValueError("vertex count must be at least 1")
        if self.q < 2:
            raise ValueError("colour count must be at least 2")
        if len(self.adj) != self.q or any(len(rows) != self.n for rows in self.adj):
            raise ValueError("adjacency shape does not match (q, n)")
        full = self.full_mask()
        for v in range(self.n):
            union = 0
            for c in range(self.q):
                row = self.adj[c][v]
                if row >> self.n:
                    raise ValueError(f"colour {c} row {v} has bits beyond n")
                if (row >> v) & 1:
                    raise ValueError(f"colour {c} has a loop at {v}")
                if row & union:
                    raise ValueError(f"vertex {v} has a doubly coloured edge")
                union |= row
            if union != full & ~(1 << v):
                raise ValueError(f"vertex {v} has an uncoloured edge")
        for c in range(self.q):
            rows = self.adj[c]
            for u in range(self.n):
                for v in bits(rows[u]):
                    if not (rows[v] >> u) & 1:
                        raise ValueError(f"colour {c} not symmetric at ({u}, {v})")


def parse_colouring(text: str) -> Colouring:
    """Parse the KNC format.

    Line 1 is ``KNC 1 <N> <q>``; then N-1 data lines, the i-th (1-based)
    holding N-i digits, digit j giving the colour of edge (i, i+j).  Lines
    starting with ``#`` are comments.
    """
    n = q = None
    rows_seen = 0
    rows: list[list[int]] = []
    header_done = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if raw.startswith("#"):
            continue
        if not header_done:
            parts = raw.split()
            if len(parts) != 4 or parts[0] != "KNC" or parts[1] != "1":
                raise FormatError("expected header 'KNC 1 <N> <q>'", lineno)
            try:
                n, q = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormatError("non-integer N or q in header", lineno) from None
            if n < 1:
                raise FormatError(f"vertex count {n} < 1", lineno)
            if not 2 <= q <= 10:
                raise FormatError(f"colour count {q} outside 2..10", lineno)
            rows = [[0] * n for _ in range(q)]
            header_done = True
            continue
        if rows_seen >= n - 1:
            raise FormatError("unexpected extra data line", lineno)
        i = rows_seen
        row = raw.strip()
        if len(row) != n - 1 - i:
            raise FormatError(
                f"row for vertex {i + 1} has {len(row)} digits, expected {n - 1 - i}",
                lineno,
            )
        for j, ch in enumerate(row):
            if not ch.isdigit() or int(ch) >= q:
                raise FormatError(f"bad colour digit {ch!r} for q={q}", lineno)
            c = int(ch)
            v = i + 1 + j
            rows[c][i] |= 1 << v
            rows[c][v] |= 1 << i
        rows_seen += 1
    if not header_done:
        raise FormatError("missing KNC header", 1)
    if rows_seen != n - 1:
        raise FormatError(f"expected {n - 1} data rows, found {rows_seen}")
    return Colouring(n, q, tuple(tuple(r) for r in rows))


def emit_colouring(col: Colouring) -> str:
    """Canonical KNC text: no comments, single spaces, LF endings."""
    out = [f"KNC 1 {col.n} {col.q}"]
    for i in range(col.n - 1):
        out.append("".join(str(col.colour_of(i, v)) for v in range(i + 1, col.n)))
    return "\n".join(out) + "\n"


def mono_cliques(col: Colouring, c: int, k: int):
    """Yield the k-sets that are cliques in colour c, in lexicographic order.

    Every vertex is vacuously a 1-clique in every colour.  k > n yields
    nothing.
    """
    if k < 1:
        raise ValueError("clique size must be at least 1")
    if k > col.n:
        return
    adjc = col.adj[c]
    prefix: list[int] = []

    def extend(candidates: int, remaining: int):
        if remaining == 0:
            yield tuple(prefix)
            return
        for v in bits(candidates):
            prefix.append(v)
            yield from extend(candidates & adjc[v] & ~((1 << (v + 1)) - 1), remaining - 1)
            prefix.pop()

    yield from extend(col.full_mask(), k)


def common_pages(col: Colouring, c: int, spine) -> int:
    """Bitmask of vertices joined in colour c to every vertex of ``spine``.

    Spine members are excluded automatically (no vertex neighbours itself).
    """
    it = iter(spine)
    try:
        first = next(it)
    except StopIteration:
        raise ValueError("spine must be nonempty") from None
    m = col.adj[c][first]
    for v in it:
        m &= col.adj[c][v]
    return m


def count_mono_cliques(col: Colouring, k: int) -> tuple[int, ...]:
    """Exact number of k-cliques per colour.

    For k = 1 every vertex counts once in every colour (a single vertex is
    monochromatic vacuously); for k >= 2 the per-colour counts sum to at most
    C(n, k).
    """
    if k < 1:
        raise ValueError("clique size must be at least 1")
    if k > col.n:
        return (0,) * col.q
    full = col.full_mask()
    counts = []
    for c in range(col.q):
        adjc = col.adj[c]

        def count(candidates: int, remaining: int) -> int:
            if remaining == 1:
                return candidates.bit_count()
            total = 0
            for v in bits(candidates):
                total += count(candidates & adjc[v] & ~((1 << (v + 1)) - 1), remaining - 1)
            return total

        counts.append(count(full, k))
    return tuple(counts)


@dataclass(frozen=True)
class HyperColouring:
    """A 2-colouring of the complete s-uniform hypergraph, fully materialised.

    ``colours[r]`` is the colour of the r-th s-subset of [n] in lexicographic
    order.  Refuses instances with more than HYPER_ENTRY_CAP edges.
    """

    n: int
    s: int
    colours: tuple[int, ...]

    def __post_init__(self):
        if self.s < 3:
            raise ValueError("uniformity must be at least 3")
        if self.n < self.s:
            raise ValueError("need at least s vertices")
        total = comb(self.n, self.s)
        if total > HYPER_ENTRY_CAP:
            raise ValueError(f"C({self.n},{self.s}) = {total} exceeds cap {HYPER_ENTRY_CAP}")
        if len(self.colours) != total:
            raise ValueError("colour table has wrong length")
        if any(c not in (0, 1) for c in self.colours):
            raise ValueError("hypergraph colours must be 0 or 1")

    @staticmethod
    def from_edge_colours(n: int, s: int, colour_of) -> "HyperColouring":
        cols = tuple(colour_of(e) for e in itertools.combinations(range(n), s))
        return HyperColouring(n, s, cols)

    def colour_of(self, edge) -> int:
        t = tuple(edge)
        return self.colours[_subset_rank(t, self.n, self.s)]


def _subset_rank(t: tuple[int, ...], n: int, s: int) -> int:
    """Lexicographic rank of a strictly increasing s-tuple over range(n)."""
    if len(t) != s or any(t[i] >= t[i + 1] for i in range(s - 1)):
        raise ValueError(f"not a sorted {s}-subset: {t}")
    if t[0] < 0 or t[-1] >= n:
        raise ValueError(f"subset {t} out of range(n={n})")
    rank = 0
    prev = -1
    for i, v in enumerate(t):
        for w in range(prev + 1, v):
            rank += comb(n - 1 - w, s - 1 - i)
        prev = v
    return rank


def parse_hypercolouring(text: str) -> HyperColouring:
    """Parse the KNSC format: header ``KNSC 1 <N> <s>`` then one line per
    s-set in lexicographic order, ``v1 v2 ... vs c`` with 1-based vertices."""
    n = s = None
    header_done = False
    expected = None
    colours: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if raw.startswith("#"):
            continue
        parts = raw.split()
        if not header_done:
            if len(parts) != 4 or parts[0] != "KNSC" or parts[1] != "1":
                raise FormatError("expected header 'KNSC 1 <N> <s>'", lineno)
            try:
                n, s = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormatError("non-integer N or s in header", lineno) from None
            if s < 3:
                raise FormatError(f"uniformity {s} < 3", lineno)
            if n < s:
                raise FormatError(f"vertex count {n} < s", lineno)
            if comb(n, s) > HYPER_ENTRY_CAP:
                raise FormatError(f"C({n},{s}) exceeds cap {HYPER_ENTRY_CAP}", lineno)
            expected = itertools.combinations(range(n), s)
            header_done = True
            continue
        if len(parts) != s + 1:
            raise FormatError(f"expected {s} vertices and a colour", lineno)
        try:
            verts = tuple(int(p) - 1 for p in parts[:-1])
            c = int(parts[-1])
        except ValueError:
            raise FormatError("non-integer field", lineno) from None
        want = next(expected, None)
        if want is None:
            raise FormatError("unexpected extra edge line", lineno)
        if verts != want:
            raise FormatError(
                f"edge out of lexicographic order: got {verts}, expected {want}", lineno
            )
        if c not in (0, 1):
            raise FormatError(f"hypergraph colour {c} not in {{0,1}}", lineno)
        colours.append(c)
    if not header_done:
        raise FormatError("missing KNSC header", 1)
    if len(colours) != comb(n, s):
        raise FormatError(f"expected {comb(n, s)} edge lines, found {len(colours)}")
    return HyperColouring(n, s, tuple(colours))


def emit_hypercolouring(h: HyperColouring) -> str:
    out = [f"KNSC 1 {h.n} {h.s}"]
    for e, c in zip(itertools.combinations(range(h.n), h.s), h.colours):
        out.append(" ".join(str(v + 1) for v in e) + f" {c}")
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class BookCertificate:
    """Claim of a monochromatic book: colour, spine clique, page vertices."""

    colour: int
    spine: tuple[int, ...]
    pages: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.spine)

    @property
    def page_count(self) -> int:
        return len(self.pages)


def parse_certificate(text: str) -> BookCertificate:
    """Parse a BOOK file: ``BOOK <colour> <k> <pages>``, then the spine line
    and the page line (vertices ascending, 1-based; page line may be empty)."""
    lines = [l for l in text.splitlines() if not l.startswith("#")]
    if not lines:
        raise FormatError("empty certificate", 1)
    parts = lines[0].split()
    if len(parts) != 4 or parts[0] != "BOOK":
        raise FormatError("expected header 'BOOK <colour> <k> <pages>'", 1)
    try:
        colour, k, npages = int(parts[1]), int(parts[2]), int(parts[3])
    except ValueError:
        raise FormatError("non-integer header field", 1) from None
    if len(lines) < 2:
        raise FormatError("missing spine line", 2)
    try:
        spine = tuple(int(p) - 1 for p in lines[1].split())
    except ValueError:
        raise FormatError("non-integer spine vertex", 2) from None
    pages_line = lines[2] if len(lines) >= 3 else ""
    try:
        pages = tuple(int(p) - 1 for p in pages_line.split())
    except ValueError:
        raise FormatError("non-integer page vertex", 3) from None
    if len(spine) != k:
        raise FormatError(f"header says k={k} but spine has {len(spine)} vertices", 2)
    if len(pages) != npages:
        raise FormatError(f"header says {npages} pages but found {len(pages)}", 3)
    if any(spine[i] >= spine[i + 1] for i in range(len(spine) - 1)):
        raise FormatError("spine vertices must be strictly ascending", 2)
    if any(pages[i] >= pages[i + 1] for i in range(len(pages) - 1)):
        raise FormatError("page vertices must be strictly ascending", 3)
    return BookCertificate(colour, spine, pages)


def emit_certificate(cert: BookCertificate) -> str:
    return (
        f"BOOK {cert.colour} {cert.k} {cert.page_count}\n"
        + " ".join(str(v + 1) for v in cert.spine)
        + "\n"
        + " ".join(str(v + 1) for v in cert.pages)
        + "\n"
    )
