"""Permutation side of the framework: jumps, vincular patterns, 2-clumped
permutations, the memoryless generator for zigzag languages, and the maps
rho and gamma onto rectangulations.  Used as the independent cross-check
oracle for the rectangulation engine and for human-readable output."""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import _kernels as K
from .core import (BOTTOM_T, HOR, LEFT, LEFT_T, RIGHT, RIGHT_T, TOP_T, VER,
                   Rectangulation, canonical_code, from_code, unit_square)
from .tree import delete_traced, insert_at, insertion_points, wall_edges

Perm = Tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def perm_delete(pi: Perm) -> Perm:
    """Remove the largest value."""
    n = len(pi)
    return tuple(a for a in pi if a != n)


def perm_insert(pi: Perm, i: int) -> Perm:
    """Insert the new largest value at position i (1-based)."""
    if not 1 <= i <= len(pi) + 1:
        raise ValueError("insertion position out of range")
    n = len(pi) + 1
    return pi[: i - 1] + (n,) + pi[i - 1:]


def perm_jump(pi: Perm, value: int, d: int, steps: int) -> Perm:
    """Jump `value` left or right by `steps` positions over smaller values."""
    if steps < 1:
        raise ValueError("steps must be positive")
    p = pi.index(value)
    lst = list(pi)
    if d == RIGHT:
        if p + steps >= len(lst) or any(lst[q] > value
                                        for q in range(p + 1, p + steps + 1)):
            raise ValueError("blocked: skipped entries must be smaller")
        seg = lst[p: p + steps + 1]
        lst[p: p + steps + 1] = seg[1:] + seg[:1]
    else:
        if p - steps < 0 or any(lst[q] > value
                                for q in range(p - steps, p)):
            raise ValueError("blocked: skipped entries must be smaller")
        seg = lst[p - steps: p + 1]
        lst[p - steps: p + 1] = seg[-1:] + seg[:-1]
    return tuple(lst)


def contains_vincular(pi: Perm, pattern: Sequence[int],
                      bond: Optional[Tuple[int, int]] = None) -> bool:
    """Classical pattern containment; `bond` names two consecutive pattern
    positions (0-based) that must match adjacent positions of pi."""
    from itertools import combinations

    k = len(pattern)
    n = len(pi)
    if bond is None:
        for pos in combinations(range(n), k):
            if _order_iso([pi[p] for p in pos], pattern):
                return True
        return False
    b0, b1 = bond
    if b1 != b0 + 1:
        raise ValueError("bond must name consecutive pattern positions")
    for p in range(n - 1):
        left_need, right_need = b0, k - b1 - 1
        if p < left_need or n - (p + 2) < right_need:
            continue
        for lpos in combinations(range(p), left_need):
            for rpos in combinations(range(p + 2, n), right_need):
                vals = ([pi[q] for q in lpos] + [pi[p], pi[p + 1]]
                        + [pi[q] for q in rpos])
                if _order_iso(vals, pattern):
                    return True
    return False


def _order_iso(vals, pattern) -> bool:
    rank = sorted(vals)
    return all(rank[q - 1] == v
               for q, v in zip(pattern, vals))


TWO_CLUMPED_PATTERNS = (
    ((3, 5, 1, 2, 4), (1, 2)),
    ((3, 5, 1, 4, 2), (1, 2)),
    ((2, 4, 5, 1, 3), (2, 3)),
    ((4, 2, 5, 1, 3), (2, 3)),
)


def is_two_clumped(pi: Perm) -> bool:
    """Avoidance of the four vincular patterns characterizing the class
    in bijection with generic rectangulations (fast specialized scan)."""
    n = len(pi)
    for i in range(n - 1):
        b, c = pi[i], pi[i + 1]
        if b < c:
            continue
        before = pi[:i]
        after = pi[i + 2:]
        # 3 51 24: a before the bond, d then e after, c<d<a<e<b
        for a in before:
            if not c < a < b:
                continue
            found_d = False
            for x in after:
                if c < x < a:
                    found_d = True
                elif found_d and a < x < b:
                    return False
        # 3 51 42: a before, d then e after, c<e<a<d<b
        for a in before:
            if not c < a < b:
                continue
            found_d = False
            for x in after:
                if a < x < b:
                    found_d = True
                elif found_d and c < x < a:
                    return False
        # 24 51 3 and 42 51 3: a then d before the bond, e after
        after_sorted = sorted(x for x in after if c < x < b)
        for q in range(len(before)):
            a = before[q]
            if not c < a < b:
                continue
            for d in before[q + 1:]:
                if not c < d < b:
                    continue
                lo, hi = (a, d) if a < d else (d, a)
                # need e strictly between the two earlier entries
                if bisect_left(after_sorted, hi) > bisect_right(after_sorted, lo):
                    return False
    return True


def two_clumped_set(n: int):
    from itertools import permutations

    return [p for p in permutations(range(1, n + 1)) if is_two_clumped(p)]


# -- generation of zigzag languages ------------------------------------------

def _min_jump(pi: Perm, j: int, d: int, member: Callable[[Perm], bool]):
    p = pi.index(j)
    steps = 0
    lst = list(pi)
    rng = range(p + 1, len(pi)) if d == RIGHT else range(p - 1, -1, -1)
    for q in rng:
        if lst[q] > j:
            break
        steps += 1
        cand = perm_jump(pi, j, d, steps)
        if member(cand):
            return cand
    return None


def perm_run_memoryless(n: int, member: Callable[[Perm], bool],
                        visitor: Optional[Callable[[Perm], None]] = None):
    """Generate a zigzag language by minimal jumps; returns the visit list."""
    pi = identity(n)
    o = [LEFT] * (n + 1)
    s = list(range(n + 1))
    out = [pi]
    if visitor:
        visitor(pi)
    while True:
        j = s[n]
        if j == 1:
            break
        nxt = _min_jump(pi, j, o[j], member)
        if nxt is None:
            raise AssertionError("no minimal jump; language is not zigzag")
        pi = nxt
        out.append(pi)
        if visitor:
            visitor(pi)
        s[n] = n
        p = pi.index(j)
        if o[j] == LEFT and (p == 0 or pi[p - 1] > j):
            o[j] = RIGHT
            s[j] = s[j - 1]
            s[j - 1] = j - 1
        elif o[j] == RIGHT and (p == len(pi) - 1 or pi[p + 1] > j):
            o[j] = LEFT
            s[j] = s[j - 1]
            s[j - 1] = j - 1
    return out


def perm_run_greedy(members: Iterable[Perm], start: Perm):
    """Greedy minimal jumps of the largest possible value (Algorithm J)."""
    members = set(members)
    if start not in members:
        raise ValueError("start permutation not in the language")
    member = members.__contains__
    visited = [start]
    seen = {start}
    pi = start
    n = len(start)
    while len(seen) < len(members):
        chosen = []
        for j in range(n, 1, -1):
            for d in (LEFT, RIGHT):
                cand = _min_jump(pi, j, d, member)
                if cand is not None and cand not in seen:
                    chosen.append(cand)
            if chosen:
                break
        if not chosen:
            return visited, "stuck"
        if len(chosen) > 1:
            return visited, "ambiguous"
        pi = chosen[0]
        visited.append(pi)
        seen.add(pi)
    return visited, "success"


# -- the maps rho and gamma ---------------------------------------------------

def rho_geometry(pi: Perm):
    """Axis-aligned boxes (x1, y1, x2, y2), y growing downward, realizing
    the staircase insertion along the main diagonal; box i holds value i."""
    n = len(pi)
    geo = {}
    for a in pi:
        west = max([geo[b][2] for b in geo if b < a and geo[b][3] >= a],
                   default=0)
        north = max([geo[b][3] for b in geo if b < a and geo[b][2] >= a],
                    default=0)
        if west < a - 1:
            x1, y1 = west, a - 1
        else:
            x1, y1 = a - 1, north
        south = min([geo[b][1] for b in geo if b > a and geo[b][0] <= a - 1],
                    default=n)
        east = min([geo[b][0] for b in geo if b > a and geo[b][1] <= a - 1],
                   default=n)
        if south > a:
            x2, y2 = a, south
        else:
            x2, y2 = east, a
        geo[a] = (x1, y1, x2, y2)
    return [geo[i] for i in range(1, n + 1)]


def _geo_code(boxes: List[tuple]) -> tuple:
    """Canonical insertion code of a diagonal rectangulation given as boxes."""
    boxes = {i + 1: b for i, b in enumerate(boxes)}
    n = len(boxes)
    code = []
    for m in range(n, 1, -1):
        x1, y1, x2, y2 = boxes[m]
        xmax = max(b[2] for b in boxes.values())
        ymax = max(b[3] for b in boxes.values())
        assert x2 == xmax and y2 == ymax, "value m is not bottom-right"
        north = any((b[2] == x1 or b[0] == x1) and b[1] < y1 <= b[3]
                    for v, b in boxes.items() if v != m)
        del boxes[m]
        if north:
            kind = VER
            for v, b in list(boxes.items()):
                if b[3] == y1 and b[0] >= x1:
                    boxes[v] = (b[0], b[1], b[2], ymax)
        else:
            kind = HOR
            for v, b in list(boxes.items()):
                if b[2] == x1 and b[1] >= y1:
                    boxes[v] = (b[0], b[1], xmax, b[3])
        code.append(_geo_point_index(boxes, kind, x1, y1))
    return tuple(reversed(code))


def _geo_point_index(boxes, kind, px, py) -> int:
    """Position of the insertion point at (px, py) in the geometric I(R)."""
    n = len(boxes)
    xmax = max(b[2] for b in boxes.values())
    ymax = max(b[3] for b in boxes.values())
    idx = 0
    bottom = sorted((b for b in boxes.values() if b[3] == ymax),
                    key=lambda b: b[0])
    for b in bottom:
        cuts = sorted({b[1], b[3]} | {
            o[1] for o in boxes.values() if o[2] == b[0]
            and b[1] < o[1] < b[3]} | {
            o[3] for o in boxes.values() if o[2] == b[0]
            and b[1] < o[3] < b[3]})
        for lo, hi in zip(cuts[-2::-1], cuts[::-1]):
            idx += 1
            if kind == VER and b[0] == px and lo < py < hi:
                return idx
    rights = sorted((b for b in boxes.values() if b[2] == xmax),
                    key=lambda b: -b[1])
    for b in rights:
        cuts = sorted({b[0], b[2]} | {
            o[0] for o in boxes.values() if o[3] == b[1]
            and b[0] < o[0] < b[2]} | {
            o[2] for o in boxes.values() if o[3] == b[1]
            and b[0] < o[2] < b[2]})
        for lo, hi in zip(cuts, cuts[1:]):
            idx += 1
            if kind == HOR and b[1] == py and lo < px < hi:
                return idx
    raise AssertionError("insertion point not found in the parent")


def rho(pi: Perm) -> Rectangulation:
    """The diagonal rectangulation of the staircase construction."""
    return from_code(_geo_code(rho_geometry(pi)))


def _wall_events(R: Rectangulation, w: int):
    """Interior vertices of a wall with the rectangle each one records."""
    edges = wall_edges(R, w)
    horizontal = int(R.edir[edges[0]]) == HOR
    events = []
    for e in edges[:-1]:
        v = int(R.ehead[e])
        ty = int(R.vty[v])
        if horizontal:
            rec = (int(R.eright[R.ve[v]]) if ty == BOTTOM_T
                   else int(R.eleft[R.vw[v]]))
        else:
            rec = (int(R.eright[R.vs[v]]) if ty == RIGHT_T
                   else int(R.eleft[R.vn[v]]))
        events.append((v, ty, rec))
    return horizontal, events


def gamma(pi: Perm) -> Rectangulation:
    """rho(pi) adjusted by wall slides so every wall shuffle follows pi."""
    R = rho(pi)
    st = R.arrays()
    ops = np.zeros(1, dtype=np.int64)
    pos = {v: i for i, v in enumerate(pi)}
    for w in range(5, R.num_walls + 1):
        while True:
            horizontal, events = _wall_events(R, w)
            swap = None
            for (vu, tu, ru), (vv, tv, rv) in zip(events, events[1:]):
                if pos[ru] > pos[rv]:
                    swap = (vu, tu, vv, tv)
                    break
            if swap is None:
                break
            vu, tu, vv, tv = swap
            if horizontal:
                if tu == TOP_T and tv == BOTTOM_T:
                    K.wjump_h(st, int(R.eright[R.ve[vv]]), LEFT,
                              int(R.vw[vu]), ops)
                elif tu == BOTTOM_T and tv == TOP_T:
                    K.wjump_h(st, int(R.eright[R.ve[vu]]), RIGHT,
                              int(R.ve[vv]), ops)
                else:
                    raise AssertionError("unslidable wall shuffle inversion")
            else:
                if tu == LEFT_T and tv == RIGHT_T:
                    K.wjump_v(st, int(R.eright[R.vs[vv]]), LEFT,
                              int(R.vs[vu]), ops)
                elif tu == RIGHT_T and tv == LEFT_T:
                    K.wjump_v(st, int(R.eright[R.vs[vu]]), RIGHT,
                              int(R.vn[vv]), ops)
                else:
                    raise AssertionError("unslidable wall shuffle inversion")
    return R


def gamma_inverse(R: Rectangulation, _cache=None) -> Perm:
    """The unique 2-clumped preimage of R under gamma."""
    code = canonical_code(R)
    if _cache is None:
        _cache = {}
    return _gamma_inverse_code(code, _cache)


def _gamma_inverse_code(code: tuple, cache: dict) -> Perm:
    if code in cache:
        return cache[code]
    if not code:
        pi = (1,)
    else:
        parent = _gamma_inverse_code(code[:-1], cache)
        m = len(parent) + 1
        pi = None
        for i in range(1, m + 1):
            cand = perm_insert(parent, i)
            if not is_two_clumped(cand):
                continue
            if canonical_code(gamma(cand)) == code:
                pi = cand
                break
        if pi is None:
            raise AssertionError("no 2-clumped preimage found")
    cache[code] = pi
    return pi
