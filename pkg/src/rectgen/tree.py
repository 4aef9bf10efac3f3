"""Insertion points, parent/child moves, patterns, and brute-force search.

Everything here is the slow, obviously-correct side of the system: it is
used to enumerate ground truth for the generation engine and to answer
global pattern-containment queries.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, List, NamedTuple, Sequence, Tuple

import numpy as np

from .core import (BOTTOM_T, CORNER, HOR, LEFT_T, RIGHT_T, TOP_T, VER,
                   Rectangulation, canonical_code, reflect, unit_square)

GENERIC = "generic"
DIAGONAL = "diagonal"
BLOCK_ALIGNED = "block"

ALL_PATTERNS = frozenset(range(1, 9))
# reflection at the main diagonal pairs the patterns up
PATTERN_MIRROR = {1: 2, 2: 1, 3: 4, 4: 3, 5: 6, 6: 5, 7: 8, 8: 7}


@dataclass(frozen=True)
class ClassSpec:
    """A generation target: base class plus forbidden wall patterns."""

    base: str = GENERIC
    avoid: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.base not in (GENERIC, DIAGONAL, BLOCK_ALIGNED):
            raise ValueError(f"unknown base class {self.base!r}")
        object.__setattr__(self, "avoid", frozenset(self.avoid))
        if not self.avoid <= ALL_PATTERNS:
            raise ValueError("avoid set must be within P1..P8")
        if self.base == BLOCK_ALIGNED and not self.avoid <= {1, 2}:
            raise ValueError(
                "block-aligned base supports only windmill avoidance (P1, P2)")

    @property
    def symmetric(self) -> bool:
        return self.avoid == {PATTERN_MIRROR[p] for p in self.avoid}


class InsertionPoint(NamedTuple):
    kind: int    # VER or HOR
    edge: int    # edge of R whose interior carries the point
    group: int   # wall id: points of one group are consecutive in I(R)
    rect: int    # the rectangle whose left/top side carries the point


def insertion_points(R: Rectangulation) -> List[InsertionPoint]:
    """The ordered sequence I(R): vertical points first, then horizontal."""
    pts: List[InsertionPoint] = []
    # bottom-touching rectangles west to east, left-side edges bottom-up
    for r in _rects_along(R, R.BOTTOM_WALL):
        e = int(R.vn[R.rsw[r]])
        top = int(R.rnw[r])
        while True:
            pts.append(InsertionPoint(VER, e, int(R.ewall[e]), r))
            if int(R.ehead[e]) == top:
                break
            e = int(R.enext[e])
    # right-touching rectangles bottom to top, top-side edges west-east
    for r in _rects_along(R, R.RIGHT_WALL):
        e = int(R.ve[R.rnw[r]])
        end = int(R.rne[r])
        while True:
            pts.append(InsertionPoint(HOR, e, int(R.ewall[e]), r))
            if int(R.ehead[e]) == end:
                break
            e = int(R.enext[e])
    return pts


def _rects_along(R: Rectangulation, wall: int) -> Iterable[int]:
    e = _first_wall_edge(R, wall)
    while e:
        yield int(R.eleft[e])
        e = int(R.enext[e])


def _first_wall_edge(R: Rectangulation, w: int) -> int:
    v = int(R.wfirst[w])
    for e in (int(R.vn[v]), int(R.ve[v])):
        if e and int(R.ewall[e]) == w:
            return e
    raise AssertionError(f"wall {w} has no first edge")


def wall_edges(R: Rectangulation, w: int) -> List[int]:
    out = []
    e = _first_wall_edge(R, w)
    while e:
        out.append(e)
        e = int(R.enext[e])
    return out


def insert_at(R: Rectangulation, i: int) -> Rectangulation:
    """The child c_i(R): a new bottom-right rectangle at insertion point i."""
    pts = insertion_points(R)
    if not 1 <= i <= len(pts):
        raise ValueError(f"insertion index {i} out of range 1..{len(pts)}")
    p = pts[i - 1]
    if p.kind == VER:
        return _insert_vertical(R, p.edge)
    # a horizontal insertion is the mirror image of a vertical one
    S = reflect(R)
    mirrored = insertion_points(S)[len(pts) - i]
    assert mirrored.kind == VER
    return reflect(_insert_vertical(S, mirrored.edge))


def _insert_vertical(R: Rectangulation, alpha: int) -> Rectangulation:
    n = R.n
    S = R.grown(1)
    S.n = n + 1
    new = n + 1
    a, b = 2 * n + 3, 2 * n + 4
    nlo, nb, rlo = 3 * n + 2, 3 * n + 3, 3 * n + 4
    wnew = n + 4

    vprime = int(S.eright[alpha])     # rectangle whose left side carries q
    v0 = int(S.rsw[vprime])           # foot of that wall on the bottom
    # split e_alpha at the new vertex a; the lower piece is the new edge
    t0 = int(S.etail[alpha])
    S.edir[nlo], S.etail[nlo], S.ehead[nlo] = VER, t0, a
    S.eprev[nlo], S.enext[nlo] = int(S.eprev[alpha]), alpha
    S.eleft[nlo], S.ewall[nlo] = int(S.eleft[alpha]), int(S.ewall[alpha])
    if S.eprev[alpha]:
        S.enext[S.eprev[alpha]] = nlo
    S.etail[alpha], S.eprev[alpha] = a, nlo
    S.vn[t0] = nlo

    # the bottom edges east of the wall move up and become the top of r_new
    ms = []
    e = int(S.ve[v0])
    while e:
        ms.append(e)
        e = int(S.enext[e])
    br = int(S.ehead[ms[-1]])         # old bottom-right corner vertex
    for m in ms:
        S.ewall[m] = wnew
        S.eright[m] = new
    old_prev = int(S.eprev[ms[0]])
    S.etail[ms[0]], S.eprev[ms[0]] = a, 0
    S.ehead[ms[-1]] = b
    S.wfirst[wnew], S.wlast[wnew] = a, b

    # fresh bottom edge under the new rectangle
    S.edir[nb], S.etail[nb], S.ehead[nb] = HOR, v0, br
    S.eprev[nb], S.enext[nb] = old_prev, 0
    S.eleft[nb], S.eright[nb], S.ewall[nb] = new, 0, R.BOTTOM_WALL
    if old_prev:
        S.enext[old_prev] = nb
    S.ve[v0] = nb
    S.vw[br] = nb

    # split the lowest right-boundary edge at the new vertex b
    eR = int(S.vn[br])
    S.edir[rlo], S.etail[rlo], S.ehead[rlo] = VER, br, b
    S.eprev[rlo], S.enext[rlo] = 0, eR
    S.eleft[rlo], S.eright[rlo], S.ewall[rlo] = new, 0, R.RIGHT_WALL
    S.etail[eR], S.eprev[eR] = b, rlo
    S.vn[br] = rlo

    S.vn[a], S.ve[a], S.vs[a], S.vw[a], S.vty[a] = alpha, ms[0], nlo, 0, RIGHT_T
    S.vn[b], S.ve[b], S.vs[b], S.vw[b], S.vty[b] = eR, 0, rlo, ms[-1], LEFT_T

    # everything on the wall below a now borders the new rectangle
    e = int(S.vn[v0])
    while e != alpha:
        S.eright[e] = new
        e = int(S.enext[e])

    S.rne[new], S.rse[new], S.rsw[new], S.rnw[new] = b, br, v0, a
    S.rsw[S.eleft[ms[0]]] = a
    S.rse[S.eleft[ms[-1]]] = b
    return S


def delete(R: Rectangulation) -> Rectangulation:
    """The parent p(R): contract the bottom-right rectangle."""
    return delete_traced(R)[0]


def delete_traced(R: Rectangulation) -> Tuple[Rectangulation, int, int]:
    """delete(R) plus the insertion point (kind, parent edge) it undoes."""
    if R.n < 2:
        raise ValueError("cannot delete from a single rectangle")
    a = int(R.rnw[R.n])
    ty = int(R.vty[a])
    if ty == RIGHT_T:
        return _delete_vertical(R)
    assert ty == BOTTOM_T
    S, kind, edge = _delete_vertical(reflect(R))
    return reflect(S), HOR, edge


def _delete_vertical(R: Rectangulation) -> Tuple[Rectangulation, int, int]:
    S = R.copy()
    n = S.n
    a = int(S.rnw[n])
    alpha_hi, alpha_lo = int(S.vn[a]), int(S.vs[a])
    v0, br, b = int(S.rsw[n]), int(S.rse[n]), int(S.rne[n])
    nb = int(S.ve[v0])
    rlo, eR = int(S.vs[b]), int(S.vn[b])
    ms = []
    e = int(S.ve[a])
    while e:
        ms.append(e)
        e = int(S.enext[e])
    wnew = int(S.ewall[ms[0]])
    v1 = int(S.eleft[ms[0]])          # leftmost rectangle above r_n
    bk = int(S.eleft[ms[-1]])

    # the wall segment that was r_n's left side reverts to v1
    e = int(S.vn[v0])
    while e != alpha_hi:
        nxt = int(S.enext[e])
        if e != alpha_lo:
            S.eright[e] = v1
        e = nxt
    # merge the two pieces of the split edge
    t0 = int(S.etail[alpha_lo])
    S.etail[alpha_hi] = t0
    S.eprev[alpha_hi] = int(S.eprev[alpha_lo])
    if S.eprev[alpha_lo]:
        S.enext[S.eprev[alpha_lo]] = alpha_hi
    S.vn[t0] = alpha_hi

    # drop the top side of r_n onto the bottom boundary
    for m in ms:
        S.ewall[m] = R.BOTTOM_WALL
        S.eright[m] = 0
    S.etail[ms[0]], S.eprev[ms[0]] = v0, int(S.eprev[nb])
    if S.eprev[nb]:
        S.enext[S.eprev[nb]] = ms[0]
    S.ehead[ms[-1]] = br
    S.ve[v0] = ms[0]
    S.vw[br] = ms[-1]

    # merge the right boundary across the removed corner b
    S.etail[eR], S.eprev[eR] = br, 0
    S.vn[br] = eR

    S.rsw[v1] = v0
    S.rse[bk] = br

    S.n = n - 1
    edge_map = _renumber(S, freed_v=(a, b), freed_e=(alpha_lo, nb, rlo),
                         freed_w=(wnew,))
    return S, VER, edge_map[alpha_hi]


def _renumber(S: Rectangulation, freed_v, freed_e, freed_w):
    """Compact indices after a deletion; returns the edge relabeling map."""
    n = S.n
    vmap = _compact_map(2 * n + 4, freed_v)
    emap = _compact_map(3 * n + 4, freed_e)
    wmap = _compact_map(n + 4, freed_w)
    for name in ("rne", "rse", "rsw", "rnw"):
        arr = getattr(S, name)
        for r in range(1, n + 1):
            arr[r] = vmap[arr[r]]
    old_nv, old_ne = 2 * n + 4, 3 * n + 4
    for name in ("vn", "ve", "vs", "vw"):
        arr = getattr(S, name)
        for v in range(1, old_nv + 1):
            arr[v] = emap[arr[v]]
    _apply_perm(S, "vn", vmap, old_nv)
    _apply_perm(S, "ve", vmap, old_nv)
    _apply_perm(S, "vs", vmap, old_nv)
    _apply_perm(S, "vw", vmap, old_nv)
    _apply_perm(S, "vty", vmap, old_nv)
    for name in ("etail", "ehead"):
        arr = getattr(S, name)
        for e in range(1, old_ne + 1):
            arr[e] = vmap[arr[e]]
    for name in ("eprev", "enext"):
        arr = getattr(S, name)
        for e in range(1, old_ne + 1):
            arr[e] = emap[arr[e]]
    for e in range(1, old_ne + 1):
        S.ewall[e] = wmap[S.ewall[e]]
    for name in ("edir", "etail", "ehead", "eprev", "enext",
                 "eleft", "eright", "ewall"):
        _apply_perm(S, name, emap, old_ne)
    old_nw = n + 4
    for w in range(1, old_nw + 1):
        S.wfirst[w] = vmap[S.wfirst[w]]
        S.wlast[w] = vmap[S.wlast[w]]
    _apply_perm(S, "wfirst", wmap, old_nw)
    _apply_perm(S, "wlast", wmap, old_nw)
    return emap


def _compact_map(count: int, freed) -> np.ndarray:
    m = np.zeros(count + 1, dtype=np.int32)
    nxt = 1
    freed = set(freed)
    for old in range(1, count + 1):
        if old in freed:
            continue
        m[old] = nxt
        nxt += 1
    return m


def _apply_perm(S: Rectangulation, name: str, idmap: np.ndarray, old_count: int):
    arr = getattr(S, name)
    out = np.zeros_like(arr)
    for old in range(1, old_count + 1):
        new = idmap[old]
        if new:
            out[new] = arr[old]
    out[0] = 0
    arr[:] = out


# -- global pattern containment ---------------------------------------------

def _interior_walls(R: Rectangulation):
    return range(5, R.num_walls + 1)


def _interior_types(R: Rectangulation, w: int) -> List[int]:
    edges = wall_edges(R, w)
    return [int(R.vty[R.ehead[e]]) for e in edges[:-1]]


def _contains_zv(R: Rectangulation, lower: int, upper: int) -> bool:
    for w in _interior_walls(R):
        e0 = _first_wall_edge(R, w)
        if int(R.edir[e0]) != VER:
            continue
        ts = _interior_types(R, w)
        for lo, hi in zip(ts, ts[1:]):
            if lo == lower and hi == upper:
                return True
    return False


def _contains_millr(R: Rectangulation) -> bool:
    for wa in _interior_walls(R):
        e0 = _first_wall_edge(R, wa)
        if int(R.edir[e0]) != VER:
            continue
        b = int(R.wlast[wa])
        if int(R.vty[b]) != BOTTOM_T:
            continue
        wb = int(R.ewall[R.ve[b]])
        c = int(R.wlast[wb])
        if int(R.vty[c]) != LEFT_T:
            continue
        wc = int(R.ewall[R.vs[c]])
        d = int(R.wfirst[wc])
        if int(R.vty[d]) != TOP_T:
            continue
        wd = int(R.ewall[R.vw[d]])
        v = int(R.wfirst[wd])
        if int(R.vty[v]) != RIGHT_T:
            continue
        if int(R.ewall[R.vn[v]]) == wa:
            return True
    return False


def _contains_h(R: Rectangulation, p: int) -> bool:
    """H-pattern containment by replaying the insertion path.

    The H patterns are given in the source material only as drawings plus
    localized after-jump tests; those tests are exact on any child of an
    avoider, and containment is preserved by insertion, so testing every
    prefix of the insertion path decides global containment.
    """
    import numpy as np

    from . import _kernels as K
    from .core import canonical_code, unit_square

    ops = np.zeros(1, dtype=np.int64)
    S = unit_square()
    for k in canonical_code(R):
        S = insert_at(S, k)
        if K.contains_incremental(S.arrays(), S.n, p, ops):
            return True
    return False


def contains_pattern_full(R: Rectangulation, p: int) -> bool:
    """Global containment of pattern P1..P8, by exhaustive search."""
    if p == 1:
        return _contains_millr(R)
    if p == 3:
        return _contains_zv(R, LEFT_T, RIGHT_T)
    if p == 5:
        return _contains_zv(R, RIGHT_T, LEFT_T)
    if p in (7, 8):
        return _contains_h(R, p)
    if p in (2, 4, 6):
        return contains_pattern_full(reflect(R), PATTERN_MIRROR[p])
    raise ValueError(f"unknown pattern {p}")


def is_diagonal(R: Rectangulation) -> bool:
    return not (contains_pattern_full(R, 3) or contains_pattern_full(R, 4))


# -- brute-force enumeration -------------------------------------------------

def member_filter(spec: ClassSpec):
    """Level filter used during the tree search (block test applied last)."""
    def ok(R: Rectangulation) -> bool:
        if spec.base in (DIAGONAL, BLOCK_ALIGNED) and not is_diagonal(R):
            return False
        return not any(contains_pattern_full(R, p) for p in spec.avoid)
    return ok


def enumerate_brute(spec: ClassSpec, n: int, as_codes: bool = True):
    """The exact class C_n as a set of canonical codes (ground truth)."""
    ok = member_filter(spec)
    level = [unit_square()]
    for _ in range(n - 1):
        nxt = []
        for R in level:
            for i in range(1, len(insertion_points(R)) + 1):
                child = insert_at(R, i)
                if ok(child):
                    nxt.append(child)
        level = nxt
    if spec.base == BLOCK_ALIGNED:
        from .oracles import is_block_aligned
        level = [R for R in level if is_block_aligned(R)]
    if not as_codes:
        return level
    return {canonical_code(R) for R in level}


def is_zigzag(levels: Sequence[Iterable[tuple]]) -> bool:
    """Definition check on a family given as code sets for n' = 1..n."""
    from .core import from_code

    sets = [set(level) for level in levels]
    if not sets or sets[0] != {()}:
        return False
    for i in range(1, len(sets)):
        if {c[:-1] for c in sets[i]} != sets[i - 1]:
            return False
        for p in sets[i - 1]:
            nu = len(insertion_points(from_code(p)))
            if p + (1,) not in sets[i] or p + (nu,) not in sets[i]:
                return False
    return True


# -- combinatorial embedding --------------------------------------------------

def embed(R: Rectangulation):
    """Unit-grid coordinates (x1, y1, x2, y2) per rectangle, y growing down.

    x ranks order the vertical walls left to right, y ranks the horizontal
    walls top to bottom; any valid embedding supports the block tests.
    """
    n = R.n
    lw = [0] * (n + 1)
    rw = [0] * (n + 1)
    tw = [0] * (n + 1)
    bw = [0] * (n + 1)
    for r in range(1, n + 1):
        lw[r] = int(R.ewall[R.vn[R.rsw[r]]])
        rw[r] = int(R.ewall[R.vn[R.rse[r]]])
        tw[r] = int(R.ewall[R.ve[R.rnw[r]]])
        bw[r] = int(R.ewall[R.ve[R.rsw[r]]])
    xrank = _ranks(R, zip(lw[1:], rw[1:]), R.LEFT_WALL)
    yrank = _ranks(R, zip(tw[1:], bw[1:]), R.TOP_WALL)
    return [None] + [(xrank[lw[r]], yrank[tw[r]], xrank[rw[r]], yrank[bw[r]])
                     for r in range(1, n + 1)]


def _ranks(R: Rectangulation, pairs, source: int):
    succ = {}
    for a, b in pairs:
        succ.setdefault(a, set()).add(b)
        succ.setdefault(b, set())
    rank = {w: 0 for w in succ}
    rank[source] = 0
    changed = True
    while changed:
        changed = False
        for a, nbrs in succ.items():
            for b in nbrs:
                if rank[b] < rank[a] + 1:
                    rank[b] = rank[a] + 1
                    changed = True
    return rank
