"""Lower-bound colouring generators paired with exact verifiers.

Covers seeded random colourings, the multicolour blow-up (template colouring
on t parts, internal edges get a fresh colour), and the s-uniform hypergraph
blow-up with its three-case edge rule, plus maximum-book analysis for
hypergraphs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .books import max_book
from .colouring import (
    BookCertificate,
    Colouring,
    HyperColouring,
)


def pentagon_colouring() -> Colouring:
    """The bundled blow-up base: red 5-cycle 0-1-2-3-4-0, blue complement.

    Self-complementary and triangle-free in both colours.
    """
    return Colouring.from_edge_colours(
        5, 2, lambda u, v: 0 if (v - u) in (1, 4) else 1
    )


def random_colouring(size: int, seed: int) -> Colouring:
    """Each edge independently red or blue with probability 1/2, drawn from a
    seeded PCG64 stream; identical (size, seed) gives identical bytes."""
    if size < 1:
        raise ValueError("need at least one vertex")
    rng = np.random.default_rng(seed)
    m = rng.integers(0, 2, size=(size, size), dtype=np.uint8)
    blue = np.triu(m, 1)
    blue = blue | blue.T
    red = np.triu(m ^ 1, 1)
    red = red | red.T
    return Colouring(size, 2, (_pack_rows(red), _pack_rows(blue)))


def _pack_rows(matrix: np.ndarray) -> tuple[int, ...]:
    packed = np.packbits(matrix, axis=1, bitorder="little")
    return tuple(int.from_bytes(row.tobytes(), "little") for row in packed)


@dataclass(frozen=True)
class BlowupSpec:
    """Blow-up bookkeeping: template colouring, part size, and the part map
    (vertex v lives in part v // part_size; parts are contiguous blocks)."""

    base: Colouring
    part_size: int

    @property
    def total(self) -> int:
        return self.base.n * self.part_size

    def part_of(self, v: int) -> int:
        return v // self.part_size


def multicolour_blowup(base: Colouring, part_size: int) -> Colouring:
    """Replace every template vertex by a block of ``part_size`` vertices.

    Edges between blocks i != j inherit the template colour of (i, j); edges
    inside a block all get the fresh colour ``base.q``.
    """
    if part_size < 1:
        raise ValueError("part size must be at least 1")
    spec = BlowupSpec(base, part_size)
    total, q_out = spec.total, base.q + 1

    part_masks = []
    block = (1 << part_size) - 1
    for i in range(base.n):
        part_masks.append(block << (i * part_size))

    rows = [[0] * total for _ in range(q_out)]
    for v in range(total):
        pv = spec.part_of(v)
        rows[base.q][v] = part_masks[pv] & ~(1 << v)
        for c in range(base.q):
            acc = 0
            for j in range(base.n):
                if j != pv and base.colour_of(pv, j) == c:
                    acc |= part_masks[j]
            rows[c][v] = acc
    return Colouring(total, q_out, tuple(tuple(r) for r in rows))


@dataclass(frozen=True)
class BlowupVerdict:
    """Accepts iff no colour admits a spine with ``page_bound`` pages or
    more; a rejection carries the offending certificate."""

    ok: bool
    certificate: BookCertificate | None


def verify_no_book_multicolour(col: Colouring, k: int, page_bound: int) -> BlowupVerdict:
    """Exact check that every colour's maximum book has fewer than
    ``page_bound`` pages (q >= 2 colours supported)."""
    if k > col.n:
        return BlowupVerdict(True, None)
    cert = max_book(col, k)
    if cert is None or cert.page_count < page_bound:
        return BlowupVerdict(True, None)
    return BlowupVerdict(False, cert)


def hypergraph_blowup(base: HyperColouring, part_size: int, k: int) -> HyperColouring:
    """s-uniform blow-up: an edge meeting s distinct parts inherits the base
    colour of those parts, an edge inside one part is red, anything else is
    blue.  The spine size ``k`` the construction targets must be a multiple
    of the uniformity."""
    if part_size < 1:
        raise ValueError("part size must be at least 1")
    if k % base.s != 0:
        raise ValueError(f"spine size {k} is not a multiple of uniformity {base.s}")
    total = base.n * part_size

    def colour_of(edge) -> int:
        parts = tuple(v // part_size for v in edge)
        distinct = set(parts)
        if len(distinct) == base.s:
            return base.colour_of(sorted(distinct))
        if len(distinct) == 1:
            return 0
        return 1

    return HyperColouring.from_edge_colours(total, base.s, colour_of)


@dataclass(frozen=True)
class HyperBookCertificate:
    """Monochromatic hypergraph book: colour, spine K_k^(s), page vertices."""

    colour: int
    spine: tuple[int, ...]
    pages: tuple[int, ...]

    @property
    def page_count(self) -> int:
        return len(self.pages)


def _spine_is_mono(h: HyperColouring, spine, colour: int) -> bool:
    return all(
        h.colour_of(e) == colour for e in itertools.combinations(spine, h.s)
    )


def _hyper_pages(h: HyperColouring, spine, colour: int) -> tuple[int, ...]:
    spine_set = set(spine)
    pages = []
    for v in range(h.n):
        if v in spine_set:
            continue
        ok = True
        for sub in itertools.combinations(spine, h.s - 1):
            if h.colour_of(sorted(sub + (v,))) != colour:
                ok = False
                break
        if ok:
            pages.append(v)
    return tuple(pages)


def hyper_max_book(h: HyperColouring, k: int) -> HyperBookCertificate | None:
    """Best page count over all monochromatic K_k^(s) spines; a spine with
    fewer than s vertices is vacuously monochromatic in both colours.
    Tie-break: smaller colour, then lexicographically smallest spine."""
    if k < h.s - 1:
        raise ValueError(f"spine size {k} below s-1 = {h.s - 1}")
    if k > h.n:
        return None
    best = None
    for colour in (0, 1):
        for spine in itertools.combinations(range(h.n), k):
            if not _spine_is_mono(h, spine, colour):
                continue
            pages = _hyper_pages(h, spine, colour)
            if best is None or len(pages) > best[0]:
                best = (len(pages), colour, spine, pages)
    if best is None:
        return None
    return HyperBookCertificate(best[1], best[2], best[3])


def search_hypergraph_base(
    size: int, s: int, forbid: int, seed: int, max_tries: int = 100_000
) -> HyperColouring:
    """Random search for a 2-colouring of the complete s-uniform hypergraph
    on ``size`` vertices with no monochromatic K_forbid^(s)."""
    if forbid < s:
        raise ValueError("forbidden clique must have at least s vertices")
    rng = np.random.default_rng(seed)
    edges = list(itertools.combinations(range(size), s))
    index = {e: i for i, e in enumerate(edges)}
    cliques = [
        [index[e] for e in itertools.combinations(block, s)]
        for block in itertools.combinations(range(size), forbid)
    ]
    for _ in range(max_tries):
        cols = rng.integers(0, 2, size=len(edges))
        ok = True
        for ids in cliques:
            first = cols[ids[0]]
            if all(cols[i] == first for i in ids[1:]):
                ok = False
                break
        if ok:
            return HyperColouring(size, s, tuple(int(c) for c in cols))
    raise RuntimeError(
        f"no K_{forbid}^({s})-free colouring found on {size} vertices in {max_tries} tries"
    )
