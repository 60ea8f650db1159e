"""Maximum monochromatic book extraction, certificate checking, and the
spine/page profile of a colouring.

A book with spine size k is a monochromatic K_k together with the vertices
joined to all of it in the same colour (its pages).  ``max_book`` reports the
best spine over all colours with deterministic tie-breaking: smaller colour
index first, then lexicographically smallest spine.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .colouring import (
    BookCertificate,
    Colouring,
    bits,
    common_pages,
    mono_cliques,
)

#: Above this vertex count, k in {2, 3} uses the dense matrix path.
DENSE_MIN_VERTICES = 192


@dataclass(frozen=True)
class Verdict:
    """Outcome of a certificate check; on rejection, ``reason`` names the
    first violated condition and ``witness`` the offending vertices."""

    ok: bool
    reason: str | None = None
    witness: tuple | None = None


@dataclass(frozen=True)
class BookProfile:
    """Per-colour histogram of page counts over all spines of size k."""

    k: int
    histograms: tuple[dict[int, int], ...]
    best: BookCertificate | None


def _better(pages: int, colour: int, spine: tuple[int, ...], best) -> bool:
    """Strict improvement under (pages desc, colour asc, spine lex asc)."""
    if best is None:
        return True
    bpages, bcolour, bspine = best
    if pages != bpages:
        return pages > bpages
    if colour != bcolour:
        return colour < bcolour
    return spine < bspine


def max_book(col: Colouring, k: int, threads: int = 1) -> BookCertificate | None:
    """Certificate with the maximum page count over all colours and all
    monochromatic k-clique spines, or None when no spine exists at all.

    "No spine" is distinct from a 0-page certificate.
    """
    if k < 1:
        raise ValueError("spine size must be at least 1")
    if k > col.n:
        return None
    if k in (2, 3) and col.n >= DENSE_MIN_VERTICES:
        found = _max_book_dense(col, k)
    elif threads > 1 and col.n >= 32:
        found = _max_book_parallel(col, k, threads)
    else:
        found = _max_book_bitset(col, k)
    if found is None:
        return None
    _, colour, spine = found
    mask = common_pages(col, colour, spine)
    return BookCertificate(colour, spine, tuple(bits(mask)))


def _max_book_bitset(col: Colouring, k: int, first_range=None):
    """Clique-extension search; pages are popcounts of the running
    neighbourhood intersection.  Returns (pages, colour, spine) or None."""
    best = None
    full = col.full_mask()
    prefix: list[int] = []
    for c in range(col.q):
        adjc = col.adj[c]

        def walk(candidates: int, inter: int, remaining: int):
            nonlocal best
            if remaining == 0:
                pages = inter.bit_count()
                if best is None or pages > best[0]:
                    best = (pages, c, tuple(prefix))
                return
            # inter minus the remaining spine picks bounds the final page count
            if best is not None and inter.bit_count() - remaining <= best[0]:
                return
            for v in bits(candidates):
                prefix.append(v)
                walk(
                    candidates & adjc[v] & ~((1 << (v + 1)) - 1),
                    inter & adjc[v],
                    remaining - 1,
                )
                prefix.pop()

        if first_range is None:
            walk(full, full, k)
        else:
            for v in first_range:
                prefix.append(v)
                walk(
                    full & adjc[v] & ~((1 << (v + 1)) - 1),
                    full & adjc[v],
                    k - 1,
                )
                prefix.pop()
    return best


def _chunk_worker(args):
    col, k, first_range = args
    return _max_book_bitset(col, k, first_range)


def _max_book_parallel(col: Colouring, k: int, threads: int):
    """Partition the spine search by first spine vertex across processes and
    merge deterministically in chunk order."""
    chunk = max(1, -(-col.n // threads))
    ranges = [range(lo, min(lo + chunk, col.n)) for lo in range(0, col.n, chunk)]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(_chunk_worker, [(col, k, r) for r in ranges]))
    best = None
    for found in results:
        if found is not None and _better(found[0], found[1], found[2], best):
            best = found
    return best


def _dense_matrix(col: Colouring, c: int) -> np.ndarray:
    rows = np.zeros((col.n, col.n), dtype=np.float32)
    nbytes = (col.n + 7) // 8
    for u, mask in enumerate(col.adj[c]):
        raw = np.frombuffer(mask.to_bytes(nbytes, "little"), dtype=np.uint8)
        rows[u] = np.unpackbits(raw, bitorder="little", count=col.n)
    return rows


def _max_book_dense(col: Colouring, k: int):
    """Matrix path for k in {2, 3}: page counts via exact float32 matmuls.

    Tie-breaking matches the bitset path: colours ascending, first row-major
    argmax inside a colour is the lexicographically smallest spine.
    """
    best = None
    for c in range(col.q):
        a = _dense_matrix(col, c)
        if k == 2:
            codeg = a @ a
            masked = np.where(a > 0, codeg, -1.0)
            m = int(masked.max())
            if m >= 0 and (best is None or m > best[0]):
                u, v = np.unravel_index(int(masked.argmax()), masked.shape)
                best = (m, c, (int(u), int(v)))
        else:
            for u in range(col.n - 2):
                row = a[u]
                nbrs = np.nonzero(row)[0]
                cand = nbrs[nbrs > u]
                if cand.size < 2:
                    continue
                if best is not None and nbrs.size - 2 <= best[0]:
                    continue  # pages of any triangle through u are <= deg - 2
                sub = a[np.ix_(cand, nbrs)]
                pages = sub @ sub.T
                edge = a[np.ix_(cand, cand)]
                masked = np.where(edge > 0, pages, -1.0)
                m = int(masked.max())
                if m >= 0 and (best is None or m > best[0]):
                    i, j = np.unravel_index(int(masked.argmax()), masked.shape)
                    best = (m, c, (u, int(cand[i]), int(cand[j])))
    return best


def has_mono_book(col: Colouring, k: int, n: int) -> bool:
    """True iff some monochromatic spine of size k has at least n pages.

    Short-circuits on the first witness; agrees with
    ``max_book(col, k).page_count >= n``.
    """
    if k < 1 or n < 1:
        raise ValueError("spine size and page bound must be at least 1")
    if k > col.n:
        return False
    full = col.full_mask()
    for c in range(col.q):
        adjc = col.adj[c]

        def walk(candidates: int, inter: int, remaining: int) -> bool:
            if remaining == 0:
                return inter.bit_count() >= n
            if inter.bit_count() - remaining < n:
                return False
            for v in bits(candidates):
                if walk(
                    candidates & adjc[v] & ~((1 << (v + 1)) - 1),
                    inter & adjc[v],
                    remaining - 1,
                ):
                    return True
            return False

        if walk(full, full, k):
            return True
    return False


def verify_certificate(col: Colouring, cert: BookCertificate, n: int) -> Verdict:
    """Accept iff the spine is a clique in the claimed colour, pages are
    disjoint from the spine and joined to all of it in that colour, and there
    are at least n pages.

    Checks run in a fixed order (colour, range, duplicates, spine clique,
    overlap, page joins, page count) and the first failure is reported.
    """
    if not 0 <= cert.colour < col.q:
        return Verdict(False, "colour", (cert.colour,))
    for v in cert.spine + cert.pages:
        if not 0 <= v < col.n:
            return Verdict(False, "range", (v,))
    if not cert.spine:
        return Verdict(False, "empty-spine", ())
    if len(set(cert.spine)) != len(cert.spine):
        return Verdict(False, "spine-duplicate", (cert.spine,))
    if len(set(cert.pages)) != len(cert.pages):
        return Verdict(False, "page-duplicate", (cert.pages,))
    adjc = col.adj[cert.colour]
    for i, u in enumerate(cert.spine):
        for v in cert.spine[i + 1 :]:
            if not (adjc[u] >> v) & 1:
                return Verdict(False, "spine-not-clique", (u, v))
    spine_set = set(cert.spine)
    for p in cert.pages:
        if p in spine_set:
            return Verdict(False, "page-overlaps-spine", (p,))
    for p in cert.pages:
        for u in cert.spine:
            if not (adjc[p] >> u) & 1:
                return Verdict(False, "page-not-joined", (p, u))
    if cert.page_count < n:
        return Verdict(False, "too-few-pages", (cert.page_count, n))
    return Verdict(True)


def local_profile(col: Colouring, k: int) -> BookProfile:
    """Exact per-colour histogram of page counts over all size-k spines,
    together with the best certificate (same tie rules as ``max_book``)."""
    if k < 1:
        raise ValueError("spine size must be at least 1")
    histograms: list[dict[int, int]] = []
    best = None
    for c in range(col.q):
        hist: dict[int, int] = {}
        for spine in mono_cliques(col, c, k):
            pages = common_pages(col, c, spine).bit_count()
            hist[pages] = hist.get(pages, 0) + 1
            if best is None or pages > best[0]:
                best = (pages, c, spine)
        histograms.append(hist)
    cert = None
    if best is not None:
        mask = common_pages(col, best[1], best[2])
        cert = BookCertificate(best[1], best[2], tuple(bits(mask)))
    return BookProfile(k, tuple(histograms), cert)


def profile_tsv(profile: BookProfile) -> str:
    """Render a profile as TSV, one ``pages<TAB>count`` row per entry,
    grouped in per-colour sections."""
    out = []
    for c, hist in enumerate(profile.histograms):
        out.append(f"colour\t{c}")
        for pages in sorted(hist):
            out.append(f"{pages}\t{hist[pages]}")
    return "\n".join(out) + "\n"


def spine_page_totals(col: Colouring, k: int) -> tuple[int, ...]:
    """Per colour, the sum of page counts over all size-k spines.

    Equals (k+1) times the number of monochromatic (k+1)-cliques of that
    colour: each such clique is counted once per choice of page vertex.
    """
    totals = []
    for c in range(col.q):
        totals.append(
            sum(common_pages(col, c, s).bit_count() for s in mono_cliques(col, c, k))
        )
    return tuple(totals)
