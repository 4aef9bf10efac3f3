"""Incidence data structure for generic rectangulations.

A rectangulation with n rectangles is stored in flat 1-based int32 index
arrays (slot 0 is the null sentinel):

  rectangles r_1..r_n      corner vertices ne/se/sw/nw
  vertices   v_1..v_{2n+2} incident edges north/east/south/west + type
  edges      e_1..e_{3n+1} dir, tail/head, prev/next chain links,
                           left/right rectangles, owning wall
  walls      w_1..w_{n+3}  first/last vertex (default orientation)

Horizontal edges are oriented west->east, vertical edges south->north.
For an edge, `left`/`right` are the side rectangles seen when walking along
its orientation (left = above for horizontal edges, = west for vertical
ones); 0 means the outer face.  Rectangles are numbered in reverse deletion
order: r_n is the rectangle in the bottom-right corner.
"""

from __future__ import annotations

import numpy as np

# vertex types: which edge slots are present at a T-joint
CORNER = 0   # two slots, corner of the outer rectangle
BOTTOM_T = 1  # west, east, south   (wall above, stem hanging down)
RIGHT_T = 2   # north, south, east  (wall on the left, stem to the right)
TOP_T = 3     # west, east, north   (wall below, stem going up)
LEFT_T = 4    # north, south, west  (wall on the right, stem to the left)

# edge orientations
HOR = 0  # west -> east
VER = 1  # south -> north

# jump directions
LEFT = 0
RIGHT = 1

VTYPE_NAMES = {CORNER: "corner", BOTTOM_T: "bottom", RIGHT_T: "right",
               TOP_T: "top", LEFT_T: "left"}

# reflection at the main (top-left to bottom-right) diagonal swaps these
_REFLECT_TYPE = {CORNER: CORNER, BOTTOM_T: RIGHT_T, RIGHT_T: BOTTOM_T,
                 TOP_T: LEFT_T, LEFT_T: TOP_T}

_FIELDS = ("rne", "rse", "rsw", "rnw",
           "vn", "ve", "vs", "vw", "vty",
           "edir", "etail", "ehead", "eprev", "enext",
           "eleft", "eright", "ewall",
           "wfirst", "wlast")


class Rectangulation:
    """Mutable rectangulation; one owner, no internal sharing."""

    __slots__ = ("n",) + _FIELDS

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("need at least one rectangle")
        self.n = n
        nv = 2 * n + 2
        ne = 3 * n + 1
        nw = n + 3
        for name, size in (("rne", n), ("rse", n), ("rsw", n), ("rnw", n)):
            setattr(self, name, np.zeros(size + 1, dtype=np.int32))
        for name in ("vn", "ve", "vs", "vw", "vty"):
            setattr(self, name, np.zeros(nv + 1, dtype=np.int32))
        for name in ("edir", "etail", "ehead", "eprev", "enext",
                     "eleft", "eright", "ewall"):
            setattr(self, name, np.zeros(ne + 1, dtype=np.int32))
        for name in ("wfirst", "wlast"):
            setattr(self, name, np.zeros(nw + 1, dtype=np.int32))

    # counts of live objects
    @property
    def num_vertices(self) -> int:
        return 2 * self.n + 2

    @property
    def num_edges(self) -> int:
        return 3 * self.n + 1

    @property
    def num_walls(self) -> int:
        return self.n + 3

    def arrays(self):
        """The flat array bundle consumed by the edit/oracle kernels."""
        return tuple(getattr(self, f) for f in _FIELDS)

    def copy(self) -> "Rectangulation":
        other = Rectangulation.__new__(Rectangulation)
        other.n = self.n
        for f in _FIELDS:
            setattr(other, f, getattr(self, f).copy())
        return other

    def grown(self, extra: int = 1) -> "Rectangulation":
        """Copy with array capacity for n+extra rectangles (n unchanged)."""
        other = Rectangulation(self.n + extra)
        other.n = self.n
        for f in _FIELDS:
            src = getattr(self, f)
            dst = getattr(other, f)
            m = min(len(src), len(dst))
            dst[:m] = src[:m]
        return other

    # boundary wall ids are fixed by the constructors below
    # (1 = bottom, 2 = top, 3 = left, 4 = right); interior walls follow.
    BOTTOM_WALL = 1
    TOP_WALL = 2
    LEFT_WALL = 3
    RIGHT_WALL = 4

    def __repr__(self):
        return f"Rectangulation(n={self.n}, code={canonical_code(self)})"

    def __eq__(self, other):
        if not isinstance(other, Rectangulation):
            return NotImplemented
        return canonical_code(self) == canonical_code(other)

    def __hash__(self):
        return hash(canonical_code(self))


def unit_square() -> Rectangulation:
    """The rectangulation with a single rectangle."""
    R = Rectangulation(1)
    # vertices: 1=SW 2=SE 3=NW 4=NE; edges: 1 bottom, 2 top, 3 left, 4 right
    R.rne[1], R.rse[1], R.rsw[1], R.rnw[1] = 4, 2, 1, 3
    # v1 SW: north=left edge, east=bottom edge
    R.vn[1], R.ve[1] = 3, 1
    # v2 SE: north=right edge, west=bottom edge
    R.vn[2], R.vw[2] = 4, 1
    # v3 NW: south=left edge, east=top edge
    R.vs[3], R.ve[3] = 3, 2
    # v4 NE: south=right edge, west=top edge
    R.vs[4], R.vw[4] = 4, 2
    for e, (d, t, h, lf, rt, w) in {
        1: (HOR, 1, 2, 1, 0, Rectangulation.BOTTOM_WALL),
        2: (HOR, 3, 4, 0, 1, Rectangulation.TOP_WALL),
        3: (VER, 1, 3, 0, 1, Rectangulation.LEFT_WALL),
        4: (VER, 2, 4, 1, 0, Rectangulation.RIGHT_WALL),
    }.items():
        R.edir[e], R.etail[e], R.ehead[e] = d, t, h
        R.eleft[e], R.eright[e], R.ewall[e] = lf, rt, w
    R.wfirst[1], R.wlast[1] = 1, 2
    R.wfirst[2], R.wlast[2] = 3, 4
    R.wfirst[3], R.wlast[3] = 1, 3
    R.wfirst[4], R.wlast[4] = 2, 4
    return R


def make_row(n: int) -> Rectangulation:
    """The initial rectangulation: n rectangles side by side, r_1 leftmost.

    Every prefix is right-based, so this is where every generation run
    starts.
    """
    if n < 1:
        raise ValueError("need at least one rectangle")
    from . import tree

    R = unit_square()
    for _ in range(n - 1):
        pts = tree.insertion_points(R)
        R = tree.insert_at(R, len(pts))
    return R


def reflect(R: Rectangulation) -> Rectangulation:
    """Reflection at the main diagonal (top-left to bottom-right).

    Rectangle labels are preserved; vertex types swap bottom<->right and
    top<->left; horizontal and vertical walls exchange roles.
    """
    S = Rectangulation(R.n)
    S.rne[1:R.n + 1] = R.rsw[1:R.n + 1]
    S.rsw[1:R.n + 1] = R.rne[1:R.n + 1]
    S.rse[1:R.n + 1] = R.rse[1:R.n + 1]
    S.rnw[1:R.n + 1] = R.rnw[1:R.n + 1]
    nv = R.num_vertices
    S.vn[1:nv + 1] = R.vw[1:nv + 1]
    S.vw[1:nv + 1] = R.vn[1:nv + 1]
    S.ve[1:nv + 1] = R.vs[1:nv + 1]
    S.vs[1:nv + 1] = R.ve[1:nv + 1]
    for v in range(1, nv + 1):
        S.vty[v] = _REFLECT_TYPE[int(R.vty[v])]
    ne = R.num_edges
    for e in range(1, ne + 1):
        S.edir[e] = VER if R.edir[e] == HOR else HOR
        S.etail[e] = R.ehead[e]
        S.ehead[e] = R.etail[e]
        S.eprev[e] = R.enext[e]
        S.enext[e] = R.eprev[e]
        S.eleft[e] = R.eleft[e]
        S.eright[e] = R.eright[e]
        S.ewall[e] = R.ewall[e]
    nw = R.num_walls
    S.wfirst[1:nw + 1] = R.wlast[1:nw + 1]
    S.wlast[1:nw + 1] = R.wfirst[1:nw + 1]
    # boundary wall ids: bottom<->right, top<->left
    _swap_wall(S, Rectangulation.BOTTOM_WALL, Rectangulation.RIGHT_WALL)
    _swap_wall(S, Rectangulation.TOP_WALL, Rectangulation.LEFT_WALL)
    return S


def _swap_wall(R: Rectangulation, wa: int, wb: int) -> None:
    R.wfirst[wa], R.wfirst[wb] = R.wfirst[wb], int(R.wfirst[wa])
    R.wlast[wa], R.wlast[wb] = R.wlast[wb], int(R.wlast[wa])
    ne = R.num_edges
    for e in range(1, ne + 1):
        if R.ewall[e] == wa:
            R.ewall[e] = wb
        elif R.ewall[e] == wb:
            R.ewall[e] = wa


def canonical_code(R: Rectangulation) -> tuple:
    """Insertion-index path (k_2,...,k_n) from the single rectangle to R.

    Two rectangulations are combinatorially equal iff their codes agree.
    """
    from . import tree

    code = []
    S = R.copy()
    while S.n > 1:
        S, kind, edge = tree.delete_traced(S)
        pts = tree.insertion_points(S)
        idx = next(i for i, p in enumerate(pts, start=1)
                   if p.kind == kind and p.edge == edge)
        code.append(idx)
    return tuple(reversed(code))


def from_code(code) -> Rectangulation:
    """Rebuild a rectangulation from its canonical code."""
    from . import tree

    R = unit_square()
    for k in code:
        R = tree.insert_at(R, k)
    return R


class Violation(Exception):
    """Raised by validate() internals; carried in the report."""


def validate(R: Rectangulation, deep: bool = True):
    """Check the structural invariants; return None or a violation string."""
    try:
        _validate(R, deep)
    except Violation as exc:
        return str(exc)
    return None


def _req(cond, msg, *args):
    if not cond:
        raise Violation(msg % args if args else msg)


def _validate(R: Rectangulation, deep: bool) -> None:
    n, nv, ne, nw = R.n, R.num_vertices, R.num_edges, R.num_walls
    _req(len(R.rne) >= n + 1 and len(R.vn) >= nv + 1
         and len(R.edir) >= ne + 1 and len(R.wfirst) >= nw + 1,
         "arrays too small for n=%d", n)

    corners = 0
    for v in range(1, nv + 1):
        slots = (int(R.vn[v]), int(R.ve[v]), int(R.vs[v]), int(R.vw[v]))
        present = tuple(s != 0 for s in slots)
        ty = int(R.vty[v])
        expect = {
            BOTTOM_T: (False, True, True, True),
            RIGHT_T: (True, True, True, False),
            TOP_T: (True, True, False, True),
            LEFT_T: (True, False, True, True),
        }
        if ty == CORNER:
            _req(sum(present) == 2, "vertex %d: corner needs 2 edges", v)
            corners += 1
        else:
            _req(ty in expect and present == expect[ty],
                 "vertex %d: type/slots mismatch", v)
        for slot, e in enumerate(slots):
            if e == 0:
                continue
            _req(1 <= e <= ne, "vertex %d: edge index out of range", v)
            # slot 0=N,1=E,2=S,3=W: N means e vertical with tail v, etc.
            if slot == 0:
                ok = R.edir[e] == VER and R.etail[e] == v
            elif slot == 1:
                ok = R.edir[e] == HOR and R.etail[e] == v
            elif slot == 2:
                ok = R.edir[e] == VER and R.ehead[e] == v
            else:
                ok = R.edir[e] == HOR and R.ehead[e] == v
            _req(ok, "vertex %d: slot %d and edge %d disagree", v, slot, e)
    _req(corners == 4, "expected 4 corner vertices, found %d", corners)

    for e in range(1, ne + 1):
        _req(R.etail[e] != 0 and R.ehead[e] != 0, "edge %d: missing end", e)
        for f, link in ((int(R.eprev[e]), "prev"), (int(R.enext[e]), "next")):
            if f == 0:
                continue
            _req(R.ewall[f] == R.ewall[e] and R.edir[f] == R.edir[e],
                 "edge %d: %s link crosses walls", e, link)
        if R.eprev[e]:
            _req(R.enext[R.eprev[e]] == e, "edge %d: prev/next broken", e)
            _req(R.ehead[R.eprev[e]] == R.etail[e],
                 "edge %d: chain not vertex-contiguous", e)

    wall_edges = {}
    for e in range(1, ne + 1):
        wall_edges.setdefault(int(R.ewall[e]), []).append(e)
    _req(len(wall_edges) == nw, "expected %d walls, found %d live",
         nw, len(wall_edges))
    for w, edges in wall_edges.items():
        _req(1 <= w <= nw, "edge wall index %d out of range", w)
        first = [e for e in edges if R.eprev[e] == 0]
        _req(len(first) == 1, "wall %d: chain has %d heads", w, len(first))
        e = first[0]
        _req(R.wfirst[w] == R.etail[e], "wall %d: first vertex wrong", w)
        seen = 0
        while True:
            seen += 1
            nxt = int(R.enext[e])
            if nxt == 0:
                break
            e = nxt
        _req(seen == len(edges), "wall %d: chain disconnected", w)
        _req(R.wlast[w] == R.ehead[e], "wall %d: last vertex wrong", w)

    if deep:
        for r in range(1, n + 1):
            _walk_rect(R, r)
        _req(R.rse[n] != 0 and int(R.vty[R.rse[n]]) == CORNER
             and R.vn[R.rse[n]] != 0 and R.vw[R.rse[n]] != 0,
             "rectangle %d is not in the bottom-right corner", n)


def _walk_rect(R: Rectangulation, r: int) -> None:
    sw, se, ne_, nw_ = (int(R.rsw[r]), int(R.rse[r]),
                        int(R.rne[r]), int(R.rnw[r]))
    _req(len({sw, se, ne_, nw_}) == 4, "rectangle %d: corners collide", r)
    # bottom side sw->se, r above
    for start, stop, slot, side, want in (
        (sw, se, "ve", "eleft", "bottom"),
        (nw_, ne_, "ve", "eright", "top"),
        (sw, nw_, "vn", "eright", "left"),
        (se, ne_, "vn", "eleft", "right"),
    ):
        v = start
        steps = 0
        while v != stop:
            e = int(getattr(R, slot)[v])
            _req(e != 0, "rectangle %d: %s side breaks at vertex %d",
                 r, want, v)
            _req(int(getattr(R, side)[e]) == r,
                 "rectangle %d: edge %d not flanked on %s side", r, e, want)
            v = int(R.ehead[e])
            steps += 1
            _req(steps <= R.num_edges, "rectangle %d: %s side loops", r, want)
