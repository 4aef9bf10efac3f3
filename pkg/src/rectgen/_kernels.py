"""Hot-path kernels: edge edits, local jumps, and minimal-jump oracles.

Every function here operates on the flat array bundle of a Rectangulation
(see core._FIELDS) plus an int64 ops[] counter and is numba-compilable; when
numba is unavailable the same code runs as plain Python.  The left/horizontal
variants follow the published pseudocode; right/vertical variants are their
systematic mirror transcriptions (swap north<->west, south<->east,
tail<->head, prev<->next, ne<->sw, first<->last, left<->right jump
direction), verified against the brute-force child oracle in the tests.

ops[0] counts primitive structure operations: one unit per edit-function
call, per loop iteration, and per oracle dispatch.
"""

import os

import numpy as np

# mirror of core constants (kept plain for numba)
CORNER = 0
BOTTOM_T = 1
RIGHT_T = 2
TOP_T = 3
LEFT_T = 4
HOR = 0
VER = 1
LEFT = 0
RIGHT = 1

BOTTOM_WALL = 1
TOP_WALL = 2
LEFT_WALL = 3
RIGHT_WALL = 4

# move tags recorded by the oracles
MV_W = 1
MV_S = 2
MV_T = 3

if os.environ.get("RECTGEN_NO_JIT"):
    njit = lambda f: f  # noqa: E731
else:
    try:
        from numba import njit as _numba_njit

        def njit(f):
            return _numba_njit(cache=True)(f)
    except ImportError:  # pragma: no cover
        njit = lambda f: f  # noqa: E731

# st layout indices
RNE, RSE, RSW, RNW = 0, 1, 2, 3
VN, VE, VS, VW, VTY = 4, 5, 6, 7, 8
EDIR, ETAIL, EHEAD, EPREV, ENEXT, ELEFT, ERIGHT, EWALL = 9, 10, 11, 12, 13, 14, 15, 16
WFIRST, WLAST = 17, 18


@njit
def eremove_head(st, b, ops):
    """Remove e_b together with its head vertex; the tail keeps the chain."""
    ops[0] += 1
    al = st[EPREV][b]
    ga = st[ENEXT][b]
    a = st[ETAIL][b]
    if al != 0:
        st[ENEXT][al] = ga
    if ga != 0:
        st[EPREV][ga] = al
        st[ETAIL][ga] = a
    if st[EDIR][b] == HOR:
        st[VE][a] = ga
    else:
        st[VN][a] = ga
    x = st[EWALL][b]
    if st[EHEAD][b] == st[WLAST][x]:
        st[WLAST][x] = a


@njit
def eremove_tail(st, b, ops):
    """Remove e_b together with its tail vertex; mirror of eremove_head."""
    ops[0] += 1
    al = st[EPREV][b]
    ga = st[ENEXT][b]
    h = st[EHEAD][b]
    if ga != 0:
        st[EPREV][ga] = al
    if al != 0:
        st[ENEXT][al] = ga
        st[EHEAD][al] = h
    if st[EDIR][b] == HOR:
        st[VW][h] = al
    else:
        st[VS][h] = al
    x = st[EWALL][b]
    if st[ETAIL][b] == st[WFIRST][x]:
        st[WFIRST][x] = h


@njit
def einsert_before(st, b, a, g, ops):
    """Insert e_b with head v_a before e_g (same wall, same orientation)."""
    ops[0] += 1
    al = st[EPREV][g]
    t = st[ETAIL][g]
    st[ETAIL][b] = t
    st[EHEAD][b] = a
    st[EPREV][b] = al
    st[ENEXT][b] = g
    st[ETAIL][g] = a
    st[EPREV][g] = b
    if al != 0:
        st[ENEXT][al] = b
    if st[EDIR][g] == HOR:
        st[EDIR][b] = HOR
        st[VW][a] = b
        st[VE][a] = g
        st[VE][t] = b
    else:
        st[EDIR][b] = VER
        st[VS][a] = b
        st[VN][a] = g
        st[VN][t] = b
    st[EWALL][b] = st[EWALL][g]


@njit
def einsert_after(st, al, a, b, ops):
    """Insert e_b with tail v_a after e_al (same wall, same orientation)."""
    ops[0] += 1
    g = st[ENEXT][al]
    h = st[EHEAD][al]
    st[ETAIL][b] = a
    st[EHEAD][b] = h
    st[EPREV][b] = al
    st[ENEXT][b] = g
    st[EHEAD][al] = a
    st[ENEXT][al] = b
    if g != 0:
        st[EPREV][g] = b
    if st[EDIR][al] == HOR:
        st[EDIR][b] = HOR
        st[VW][a] = al
        st[VE][a] = b
        st[VW][h] = b
    else:
        st[EDIR][b] = VER
        st[VS][a] = al
        st[VN][a] = b
        st[VS][h] = b
    st[EWALL][b] = st[EWALL][al]


@njit
def wjump_h(st, j, d, al, ops):
    """Horizontal W-jump: slide the top-left corner of r_j along its wall."""
    ops[0] += 1
    a = st[RNW][j]
    k = st[ELEFT][al]
    if d == LEFT:
        b = st[VW][a]
        eremove_head(st, b, ops)
        einsert_after(st, al, a, b, ops)
        rt = j
    else:
        # sliding east hands the crossed segment to the left neighbour
        rt = st[ERIGHT][st[VW][a]]
        b = st[VE][a]
        eremove_tail(st, b, ops)
        einsert_before(st, b, a, al, ops)
    st[ELEFT][b] = k
    st[ERIGHT][b] = rt


@njit
def wjump_v(st, j, d, al, ops):
    """Vertical W-jump; mirror transcription of wjump_h."""
    ops[0] += 1
    a = st[RNW][j]
    k = st[ELEFT][al]
    if d == LEFT:
        # sliding down hands the crossed segment to the neighbour above
        rt = st[ERIGHT][st[VN][a]]
        b = st[VS][a]
        eremove_head(st, b, ops)
        einsert_after(st, al, a, b, ops)
    else:
        b = st[VN][a]
        eremove_tail(st, b, ops)
        einsert_before(st, b, a, al, ops)
        rt = j
    st[ELEFT][b] = k
    st[ERIGHT][b] = rt


@njit
def sjump(st, j, d, al, ops):
    """S-jump: flip the wall between r_j and r_{j-1}."""
    ops[0] += 1
    jm = j - 1
    if d == LEFT:
        a = st[RNW][j]
        b = st[RSW][j]
        c = st[RNE][j]
        alp = st[VW][a]
        be = st[VE][a]
        bep = st[VW][b]
        ga = st[VS][c]
        de = st[VS][a]
        cp = st[ETAIL][bep]
        k = st[ELEFT][al]
        l = st[ERIGHT][ga]
        x = st[EWALL][de]
        eremove_tail(st, be, ops)
        eremove_head(st, bep, ops)
        einsert_before(st, be, a, al, ops)
        einsert_after(st, ga, b, bep, ops)
        st[EDIR][de] = HOR
        st[ETAIL][de] = a
        st[EHEAD][de] = b
        st[VE][a] = de
        st[VW][a] = 0
        st[VTY][a] = RIGHT_T
        st[VE][b] = 0
        st[VW][b] = de
        st[VTY][b] = LEFT_T
        st[WFIRST][x] = a
        st[WLAST][x] = b
        st[RNE][j] = b
        st[RSW][j] = cp
        st[RNE][jm] = c
        st[RSW][jm] = a
        nu = st[VW][c]
        while nu != alp:
            ops[0] += 1
            st[ERIGHT][nu] = jm
            nu = st[EPREV][nu]
        nu = st[VN][cp]
        while nu != al:
            ops[0] += 1
            st[ERIGHT][nu] = j
            nu = st[ENEXT][nu]
        st[ELEFT][be] = k
        st[ERIGHT][be] = j
        st[ELEFT][bep] = jm
        st[ERIGHT][bep] = l
    else:
        a = st[RNW][j]
        b = st[RNE][j]
        c = st[RSW][j]
        alp = st[VN][a]
        be = st[VS][a]
        bep = st[VN][b]
        ga = st[VE][c]
        de = st[VE][a]
        cp = st[EHEAD][bep]
        k = st[ELEFT][al]
        l = st[ERIGHT][ga]
        x = st[EWALL][de]
        eremove_head(st, be, ops)
        eremove_tail(st, bep, ops)
        einsert_after(st, al, a, be, ops)
        einsert_before(st, bep, b, ga, ops)
        st[EDIR][de] = VER
        st[EHEAD][de] = a
        st[ETAIL][de] = b
        st[VS][a] = de
        st[VN][a] = 0
        st[VTY][a] = BOTTOM_T
        st[VS][b] = 0
        st[VN][b] = de
        st[VTY][b] = TOP_T
        st[WLAST][x] = a
        st[WFIRST][x] = b
        st[RSW][j] = b
        st[RNE][j] = cp
        st[RSW][jm] = c
        st[RNE][jm] = a
        nu = st[VN][c]
        while nu != alp:
            ops[0] += 1
            st[ERIGHT][nu] = jm
            nu = st[ENEXT][nu]
        nu = st[VW][cp]
        while nu != al:
            ops[0] += 1
            st[ERIGHT][nu] = j
            nu = st[EPREV][nu]
        st[ELEFT][be] = k
        st[ERIGHT][be] = j
        st[ELEFT][bep] = jm
        st[ERIGHT][bep] = l


@njit
def tjump_h(st, j, d, al, ops):
    """Horizontal T-jump of r_j between adjacent horizontal groups."""
    ops[0] += 1
    if d == LEFT:
        a = st[RNW][j]
        b = st[EHEAD][al]
        c = st[RNE][j]
        alp = st[VW][a]
        be = st[VE][a]
        bep = st[VS][a]
        ga = st[VS][c]
        gap = st[VS][b]
        k = st[ELEFT][bep]
        l = st[ERIGHT][ga]
        m = st[ERIGHT][al]
        x = st[EWALL][al]
        y = st[EWALL][gap]
        eremove_tail(st, be, ops)
        eremove_tail(st, bep, ops)
        einsert_after(st, al, a, be, ops)
        einsert_after(st, ga, b, bep, ops)
        st[EHEAD][be] = b
        st[EHEAD][gap] = a
        st[VS][a] = gap
        st[VW][b] = be
        st[WLAST][x] = b
        st[WLAST][y] = a
        st[RNE][j] = b
        st[RNE][k] = c
        st[RNE][m] = a
        nu = st[VW][c]
        while nu != alp:
            ops[0] += 1
            st[ERIGHT][nu] = k
            nu = st[EPREV][nu]
        st[ELEFT][be] = k
        st[ERIGHT][bep] = l
    else:
        a = st[RNW][j]
        be = st[VE][a]
        b = st[EHEAD][be]
        gap = st[VS][a]
        bep = st[VN][b]
        c = st[EHEAD][bep]
        kw = st[ELEFT][al]
        kv = st[ELEFT][be]
        m = st[ELEFT][gap]
        eremove_tail(st, be, ops)
        eremove_tail(st, bep, ops)
        einsert_after(st, al, a, be, ops)
        einsert_after(st, gap, b, bep, ops)
        st[ELEFT][be] = kw
        st[ERIGHT][bep] = j
        nu = st[VW][c]
        while nu != al:
            ops[0] += 1
            st[ERIGHT][nu] = j
            nu = st[EPREV][nu]
        st[RNE][j] = c
        st[RNE][kv] = a
        st[RNE][m] = b


@njit
def tjump_v(st, j, d, al, ops):
    """Vertical T-jump; mirror transcription of tjump_h."""
    ops[0] += 1
    if d == RIGHT:
        a = st[RNW][j]
        b = st[ETAIL][al]
        c = st[RSW][j]
        alp = st[VN][a]
        be = st[VS][a]
        bep = st[VE][a]
        ga = st[VE][c]
        gap = st[VE][b]
        k = st[ELEFT][bep]
        l = st[ERIGHT][ga]
        m = st[ERIGHT][al]
        x = st[EWALL][al]
        y = st[EWALL][gap]
        eremove_head(st, be, ops)
        eremove_head(st, bep, ops)
        einsert_before(st, be, a, al, ops)
        einsert_before(st, bep, b, ga, ops)
        st[ETAIL][be] = b
        st[ETAIL][gap] = a
        st[VE][a] = gap
        st[VN][b] = be
        st[WFIRST][x] = b
        st[WFIRST][y] = a
        st[RSW][j] = b
        st[RSW][k] = c
        st[RSW][m] = a
        nu = st[VN][c]
        while nu != alp:
            ops[0] += 1
            st[ERIGHT][nu] = k
            nu = st[ENEXT][nu]
        st[ELEFT][be] = k
        st[ERIGHT][bep] = l
    else:
        a = st[RNW][j]
        be = st[VS][a]
        b = st[ETAIL][be]
        gap = st[VE][a]
        bep = st[VW][b]
        c = st[ETAIL][bep]
        kw = st[ELEFT][al]
        kv = st[ELEFT][be]
        m = st[ELEFT][gap]
        eremove_head(st, be, ops)
        eremove_head(st, bep, ops)
        einsert_before(st, be, a, al, ops)
        einsert_before(st, bep, b, gap, ops)
        st[ELEFT][be] = kw
        st[ERIGHT][bep] = j
        nu = st[VN][c]
        while nu != al:
            ops[0] += 1
            st[ERIGHT][nu] = j
            nu = st[ENEXT][nu]
        st[RSW][j] = c
        st[RSW][kv] = a
        st[RSW][m] = b


@njit
def next_generic(st, j, d, ops):
    """Minimal jump of r_j for the full class: use every insertion point."""
    ops[0] += 1
    a = st[RNW][j]
    ty = st[VTY][a]
    if d == LEFT and ty == BOTTOM_T:
        al = st[VW][a]
        be = st[VS][a]
        b = st[ETAIL][be]
        c = st[ETAIL][al]
        if st[VTY][c] == TOP_T:
            wjump_h(st, j, LEFT, st[VW][c], ops)
            return MV_W
        if st[VTY][b] == LEFT_T:
            tjump_h(st, j, LEFT, st[VW][b], ops)
            return MV_T
        sjump(st, j, LEFT, st[VS][c], ops)
        return MV_S
    if d == RIGHT and ty == BOTTOM_T:
        al = st[VE][a]
        b = st[EHEAD][al]
        if st[VTY][b] == TOP_T:
            wjump_h(st, j, RIGHT, st[VE][b], ops)
            return MV_W
        k = st[ELEFT][al]
        c = st[RNW][k]
        tjump_h(st, j, RIGHT, st[VE][c], ops)
        return MV_T
    if d == RIGHT and ty == RIGHT_T:
        al = st[VN][a]
        be = st[VE][a]
        b = st[EHEAD][be]
        c = st[EHEAD][al]
        if st[VTY][c] == LEFT_T:
            wjump_v(st, j, RIGHT, st[VN][c], ops)
            return MV_W
        if st[VTY][b] == TOP_T:
            tjump_v(st, j, RIGHT, st[VN][b], ops)
            return MV_T
        sjump(st, j, RIGHT, st[VE][c], ops)
        return MV_S
    # d == LEFT and ty == RIGHT_T
    al = st[VS][a]
    b = st[ETAIL][al]
    if st[VTY][b] == LEFT_T:
        wjump_v(st, j, LEFT, st[VS][b], ops)
        return MV_W
    k = st[ELEFT][al]
    c = st[RNW][k]
    tjump_v(st, j, LEFT, st[VS][c], ops)
    return MV_T


@njit
def next_diagonal(st, j, d, ops):
    """Minimal jump of r_j within diagonal rectangulations (no wall slides)."""
    ops[0] += 1
    a = st[RNW][j]
    ty = st[VTY][a]
    if d == LEFT and ty == BOTTOM_T:
        al = st[VS][a]
        b = st[ETAIL][al]
        if st[VTY][b] == LEFT_T:
            tjump_h(st, j, LEFT, st[VW][b], ops)
            return MV_T
        c = st[RSW][j - 1]
        sjump(st, j, LEFT, st[VN][c], ops)
        return MV_S
    if d == RIGHT and ty == BOTTOM_T:
        al = st[VE][a]
        k = st[ELEFT][al]
        b = st[RNE][k]
        tjump_h(st, j, RIGHT, st[VW][b], ops)
        return MV_T
    if d == RIGHT and ty == RIGHT_T:
        al = st[VE][a]
        b = st[EHEAD][al]
        if st[VTY][b] == TOP_T:
            tjump_v(st, j, RIGHT, st[VN][b], ops)
            return MV_T
        c = st[RNE][j - 1]
        sjump(st, j, RIGHT, st[VW][c], ops)
        return MV_S
    # d == LEFT and ty == RIGHT_T
    al = st[VS][a]
    k = st[ELEFT][al]
    b = st[RSW][k]
    tjump_v(st, j, LEFT, st[VN][b], ops)
    return MV_T


@njit
def contains_windmill_cw(st, j, ops):
    """Clockwise windmill involving r_j, after a jump of r_j."""
    ops[0] += 1
    a = st[RNW][j]
    if st[VTY][a] == BOTTOM_T:
        return False
    al = st[VN][a]
    x = st[EWALL][al]
    b = st[WLAST][x]
    be = st[VE][b]
    y = st[EWALL][be]
    c = st[WLAST][y]
    ga = st[VS][c]
    z = st[EWALL][ga]
    dd = st[WFIRST][z]
    de = st[VW][dd]
    return st[ERIGHT][de] == j


@njit
def contains_windmill_ccw(st, j, ops):
    """Counterclockwise windmill involving r_j; mirror transcription."""
    ops[0] += 1
    a = st[RNW][j]
    if st[VTY][a] == RIGHT_T:
        return False
    al = st[VW][a]
    x = st[EWALL][al]
    b = st[WFIRST][x]
    be = st[VS][b]
    y = st[EWALL][be]
    c = st[WFIRST][y]
    ga = st[VE][c]
    z = st[EWALL][ga]
    dd = st[WLAST][z]
    de = st[VN][dd]
    return st[ERIGHT][de] == j


@njit
def contains_zvu(st, j, ops):
    ops[0] += 1
    a = st[RNW][j]
    if st[VTY][a] == BOTTOM_T:
        return False
    b = st[ETAIL][st[VS][a]]
    return st[VTY][b] == LEFT_T


@njit
def contains_zvd(st, j, ops):
    ops[0] += 1
    a = st[RNW][j]
    if st[VTY][a] == BOTTOM_T:
        return False
    b = st[EHEAD][st[VN][a]]
    return st[VTY][b] == LEFT_T


@njit
def contains_zhr(st, j, ops):
    ops[0] += 1
    a = st[RNW][j]
    if st[VTY][a] == RIGHT_T:
        return False
    b = st[EHEAD][st[VE][a]]
    return st[VTY][b] == TOP_T


@njit
def contains_zhl(st, j, ops):
    ops[0] += 1
    a = st[RNW][j]
    if st[VTY][a] == RIGHT_T:
        return False
    b = st[ETAIL][st[VW][a]]
    return st[VTY][b] == TOP_T


@njit
def contains_hvert(st, j, ops):
    """H-pattern (vertical flavor) involving r_j: triply nested wall walk."""
    ops[0] += 1
    a = st[RNW][j]
    if st[VTY][a] == BOTTOM_T:
        return False
    b = st[RSW][j]
    while st[VTY][b] != BOTTOM_T and st[VTY][b] != CORNER:
        ops[0] += 1
        c = b
        while st[VTY][c] != RIGHT_T and st[VTY][c] != CORNER:
            ops[0] += 1
            if st[VTY][c] == TOP_T:
                d = c
                while d != b and st[VTY][d] != BOTTOM_T and st[VTY][d] != CORNER:
                    ops[0] += 1
                    if st[VTY][d] == LEFT_T:
                        return True
                    d = st[EHEAD][st[VN][d]]
            c = st[ETAIL][st[VW][c]]
        b = st[EHEAD][st[VN][b]]
    return False


@njit
def contains_hhor(st, j, ops):
    """H-pattern (horizontal flavor); mirror transcription of contains_hvert."""
    ops[0] += 1
    a = st[RNW][j]
    if st[VTY][a] == RIGHT_T:
        return False
    b = st[RNE][j]
    while st[VTY][b] != RIGHT_T and st[VTY][b] != CORNER:
        ops[0] += 1
        c = b
        while st[VTY][c] != BOTTOM_T and st[VTY][c] != CORNER:
            ops[0] += 1
            if st[VTY][c] == LEFT_T:
                d = c
                while d != b and st[VTY][d] != RIGHT_T and st[VTY][d] != CORNER:
                    ops[0] += 1
                    if st[VTY][d] == TOP_T:
                        return True
                    d = st[ETAIL][st[VW][d]]
            c = st[EHEAD][st[VN][c]]
        b = st[ETAIL][st[VW][b]]
    return False


@njit
def contains_incremental(st, j, p, ops):
    """contains(R, j, P_p) for p in 1..8, valid after jumps of r_j."""
    if p == 1:
        return contains_windmill_cw(st, j, ops)
    if p == 2:
        return contains_windmill_ccw(st, j, ops)
    if p == 3:
        return contains_zvu(st, j, ops)
    if p == 4:
        return contains_zhr(st, j, ops)
    if p == 5:
        return contains_zvd(st, j, ops)
    if p == 6:
        return contains_zhl(st, j, ops)
    if p == 7:
        return contains_hvert(st, j, ops)
    return contains_hhor(st, j, ops)


@njit
def bottom_based(st, m):
    """Is the prefix sub-rectangulation with m rectangles bottom-based?"""
    a = st[RNW][m]
    return st[VTY][a] == RIGHT_T and st[ELEFT][st[VN][a]] == 0


@njit
def right_based(st, m):
    a = st[RNW][m]
    return st[VTY][a] == BOTTOM_T and st[ELEFT][st[VE][a]] == 0


# -- block-aligned machinery --------------------------------------------------

LK_R = 0  # lock/unlock in the horizontal sense (H-aligned blocks)
LK_U = 1  # vertical sense (V-aligned blocks)


@njit
def lock_block(st, j, sense, ops, mv):
    """Re-impose the AH/AV shape on a locked block after a jump of r_j."""
    ops[0] += 1
    if sense == LK_R:
        a = st[RNE][j]
        b = st[RSW][j]
        c = st[RSE][j]
        al = st[VW][a]
        be = st[VE][b]
        if st[VTY][b] != RIGHT_T or st[VTY][c] != LEFT_T or st[EHEAD][be] != c:
            return
        d = st[RSE][j + 1]
        if st[VTY][d] == TOP_T:
            sjump(st, j + 1, RIGHT, al, ops)
            mv[1] += 1
    else:
        a = st[RSW][j]
        b = st[RNE][j]
        c = st[RSE][j]
        al = st[VN][a]
        be = st[VS][b]
        if st[VTY][b] != BOTTOM_T or st[VTY][c] != TOP_T or st[ETAIL][be] != c:
            return
        d = st[RSE][j + 1]
        if st[VTY][d] == LEFT_T:
            sjump(st, j + 1, LEFT, al, ops)
            mv[1] += 1


@njit
def unlock_block(st, j, d, ops, mv):
    """Undo the AH/AV shape before jumping r_j in direction d."""
    ops[0] += 1
    if d == RIGHT:
        a = st[RNE][j]
        b = st[RSE][j]
        c = st[RSW][j]
        g = st[VN][c]
        if st[VTY][a] == BOTTOM_T and st[VTY][b] == TOP_T:
            sjump(st, j + 1, LEFT, g, ops)
            mv[1] += 1
    else:
        a = st[RSW][j]
        b = st[RSE][j]
        c = st[RNE][j]
        g = st[VW][c]
        if st[VTY][a] == RIGHT_T and st[VTY][b] == LEFT_T:
            sjump(st, j + 1, RIGHT, g, ops)
            mv[1] += 1


@njit
def next_block(st, n, j, d, ops, mv):
    """Next-oracle step for block-aligned rectangulations.

    mv accumulates [W, S, T, D] move counts for the Gray-code property
    checks; the D entry marks the simple+T(+simple) composite.
    """
    ops[0] += 1
    a = st[RNW][j]
    unlock_block(st, j, d, ops, mv)
    ty = st[VTY][a]
    if d == LEFT and ty == BOTTOM_T:
        al = st[VS][a]
        b = st[ETAIL][al]
        if st[VTY][b] == LEFT_T:
            # N2: horizontal left jump (T, possibly TS)
            tjump_h(st, j, LEFT, st[VW][b], ops)
            mv[2] += 1
            a = st[RNW][j]
            al = st[VS][a]
            b = st[ETAIL][al]
            c = st[RSW][j - 1]
            g = st[VN][c]
            cp = st[RSE][j]
            if st[VTY][b] == TOP_T and (
                    st[VTY][cp] == LEFT_T or (j == n and st[ELEFT][g] == 0)):
                sjump(st, j, LEFT, g, ops)
                mv[1] += 1
            lock_block(st, j, LK_R, ops, mv)
        else:
            # N3: horizontal left jump (ST, forming a D-flip)
            c = st[RSW][j - 1]
            g = st[VN][c]
            sjump(st, j, LEFT, g, ops)
            g = st[VN][c]
            k = st[ELEFT][g]
            cp = st[RSW][k]
            gp = st[VN][cp]
            tjump_v(st, j, LEFT, gp, ops)
            mv[3] += 1
            c = st[RSW][j - 1]
            g = st[VN][c]
            a2 = st[EHEAD][g]
            if st[VTY][a2] == BOTTOM_T:
                cp = st[RSW][j - 2]
                gp = st[VN][cp]
                sjump(st, j - 1, LEFT, gp, ops)
                mv[1] += 1
            lock_block(st, j - 1, LK_R, ops, mv)
        return
    if d == RIGHT and ty == BOTTOM_T:
        # N4: horizontal right jump (T, possibly TS)
        al = st[VE][a]
        k = st[ELEFT][al]
        b = st[RNE][k]
        tjump_h(st, j, RIGHT, st[VW][b], ops)
        mv[2] += 1
        a = st[RNW][j]
        al = st[VS][a]
        b = st[ETAIL][al]
        be = st[VS][b]
        g = st[VW][b]
        c = st[ETAIL][be]
        cp = st[ETAIL][g]
        if st[VTY][c] == TOP_T and st[VTY][cp] == RIGHT_T:
            gp = st[VW][a]
            sjump(st, j - 1, RIGHT, gp, ops)
            mv[1] += 1
        lock_block(st, j, LK_U, ops, mv)
        return
    if d == RIGHT and ty == RIGHT_T:
        al = st[VE][a]
        b = st[EHEAD][al]
        if st[VTY][b] == TOP_T:
            # N5: vertical right jump (T, possibly TS)
            tjump_v(st, j, RIGHT, st[VN][b], ops)
            mv[2] += 1
            a = st[RNW][j]
            al = st[VE][a]
            b = st[EHEAD][al]
            c = st[RNE][j - 1]
            g = st[VW][c]
            cp = st[RSE][j]
            e = st[RNW][j - 1]
            if st[VTY][b] == LEFT_T and (
                    st[VTY][cp] == TOP_T or (
                        j == n and not (st[VTY][e] == RIGHT_T
                                        and st[ETAIL][g] == e))):
                sjump(st, j, RIGHT, g, ops)
                mv[1] += 1
            lock_block(st, j, LK_U, ops, mv)
        else:
            # N6: vertical right jump (ST, forming a D-flip)
            c = st[RNE][j - 1]
            g = st[VW][c]
            sjump(st, j, RIGHT, g, ops)
            g = st[VW][c]
            k = st[ELEFT][g]
            cp = st[RNE][k]
            gp = st[VW][cp]
            tjump_h(st, j, RIGHT, gp, ops)
            mv[3] += 1
            c = st[RNE][j - 1]
            g = st[VW][c]
            a2 = st[ETAIL][g]
            if st[VTY][a2] == RIGHT_T:
                cp = st[RNE][j - 2]
                gp = st[VW][cp]
                sjump(st, j - 1, RIGHT, gp, ops)
                mv[1] += 1
            lock_block(st, j - 1, LK_U, ops, mv)
        return
    # N7: vertical left jump (T, possibly TS)
    al = st[VS][a]
    k = st[ELEFT][al]
    b = st[RSW][k]
    tjump_v(st, j, LEFT, st[VN][b], ops)
    mv[2] += 1
    a = st[RNW][j]
    al = st[VE][a]
    b = st[EHEAD][al]
    be = st[VE][b]
    g = st[VN][b]
    c = st[EHEAD][be]
    cp = st[EHEAD][g]
    if st[VTY][c] == LEFT_T and st[VTY][cp] == BOTTOM_T:
        gp = st[VN][a]
        sjump(st, j - 1, LEFT, gp, ops)
        mv[1] += 1
    lock_block(st, j, LK_R, ops, mv)


@njit
def flipped_pair_bottom_based(st, m):
    """Would flipping the wall between r_m and r_{m-1} make R^[m] bottom-based?"""
    if m < 2:
        return False
    a = st[RNW][m]
    if st[VTY][a] != BOTTOM_T:
        return False
    z = st[VS][a]
    if st[ETAIL][z] != st[RSW][m] or st[ELEFT][z] != m - 1:
        return False
    if st[RNE][m - 1] != a or st[RSE][m - 1] != st[RSW][m]:
        return False
    e = st[VN][st[RSW][m - 1]]
    return e != 0 and st[ELEFT][e] == 0


@njit
def flipped_pair_right_based(st, m):
    if m < 2:
        return False
    a = st[RNW][m]
    if st[VTY][a] != RIGHT_T:
        return False
    t = st[VE][a]
    if st[EHEAD][t] != st[RNE][m] or st[ELEFT][t] != m - 1:
        return False
    if st[RSW][m - 1] != a or st[RSE][m - 1] != st[RNE][m]:
        return False
    e = st[VE][st[RNE][m - 1]]
    return e != 0 and st[ELEFT][e] == 0


@njit
def bottom_based_block(st, j):
    return bottom_based(st, j) or flipped_pair_bottom_based(st, j)


@njit
def right_based_block(st, j):
    return right_based(st, j) or flipped_pair_right_based(st, j)


# -- class dispatch and the memoryless driver --------------------------------

CLS_GENERIC = 0
CLS_DIAGONAL = 1
CLS_BLOCK = 2


@njit
def _contains_any(st, n, j, avoid_mask, block_base, ops):
    lo = j
    hi = j
    if block_base:
        if j > 2:
            lo = j - 1
        if j < n:
            hi = j + 1
    for jj in range(lo, hi + 1):
        for p in range(1, 9):
            if avoid_mask & (1 << p):
                if contains_incremental(st, jj, p, ops):
                    return True
    return False


@njit
def class_jump(st, n, j, d, class_id, avoid_mask, windmill_opt, ops, mv):
    """One minimal jump of r_j w.r.t. the configured class (line M4)."""
    if class_id == CLS_GENERIC:
        kind = next_generic(st, j, d, ops)
        mv[kind - 1] += 1
    elif class_id == CLS_DIAGONAL:
        kind = next_diagonal(st, j, d, ops)
        mv[kind - 1] += 1
    else:
        next_block(st, n, j, d, ops, mv)
        kind = MV_T
    if avoid_mask == 0:
        return
    block_base = class_id == CLS_BLOCK
    wm_mask = avoid_mask & 0b110
    other_mask = avoid_mask & ~0b110
    wm = _contains_any(st, n, j, wm_mask, block_base, ops) if wm_mask else False
    while wm or _contains_any(st, n, j, other_mask, block_base, ops):
        if class_id == CLS_GENERIC:
            kind = next_generic(st, j, d, ops)
            mv[kind - 1] += 1
        elif class_id == CLS_DIAGONAL:
            kind = next_diagonal(st, j, d, ops)
            mv[kind - 1] += 1
        else:
            next_block(st, n, j, d, ops, mv)
            kind = MV_T
        if wm_mask and (not windmill_opt or kind == MV_T or block_base):
            wm = _contains_any(st, n, j, wm_mask, block_base, ops)


@njit
def step_m(st, n, o, s, class_id, avoid_mask, windmill_opt, ops, mv):
    """Lines M3-M5 of the memoryless driver; returns the jumped index or 0."""
    j = s[n]
    if class_id == CLS_BLOCK:
        # a block move of r_k also flips rectangles k-1 and k+1, which can
        # silently finish their sweeps; when such a rectangle surfaces as
        # the next jumper it is popped without jumping (the R^[j-1] side of
        # the extended basedness checks)
        while j > 1:
            d = o[j]
            if d == LEFT and bottom_based_block(st, j):
                o[j] = RIGHT
            elif d == RIGHT and right_based_block(st, j):
                o[j] = LEFT
            else:
                break
            s[n] = s[j - 1]
            s[j - 1] = j - 1
            j = s[n]
    if j == 1:
        return 0
    d = o[j]
    mv[0] = 0
    mv[1] = 0
    mv[2] = 0
    mv[3] = 0
    class_jump(st, n, j, d, class_id, avoid_mask, windmill_opt, ops, mv)
    s[n] = n
    ops[0] += 1
    if class_id == CLS_BLOCK:
        bb = bottom_based_block(st, j)
        rb = right_based_block(st, j)
    else:
        bb = bottom_based(st, j)
        rb = right_based(st, j)
    if d == LEFT and bb:
        o[j] = RIGHT
        s[j] = s[j - 1]
        s[j - 1] = j - 1
    elif d == RIGHT and rb:
        o[j] = LEFT
        s[j] = s[j - 1]
        s[j - 1] = j - 1
    return j


@njit
def run_count(st, n, class_id, avoid_mask, windmill_opt, stats):
    """Full memoryless run without callbacks; returns the visit count.

    stats[0] = total primitive ops, stats[1] = max ops between visits.
    """
    o = np.zeros(n + 1, dtype=np.int32)
    s = np.zeros(n + 1, dtype=np.int32)
    for i in range(1, n + 1):
        o[i] = LEFT
        s[i] = i
    ops = np.zeros(1, dtype=np.int64)
    mv = np.zeros(4, dtype=np.int64)
    count = 1
    stats[0] = 0
    stats[1] = 0
    prev = ops[0]
    while step_m(st, n, o, s, class_id, avoid_mask, windmill_opt, ops, mv) != 0:
        count += 1
        delta = ops[0] - prev
        if delta > stats[1]:
            stats[1] = delta
        prev = ops[0]
    stats[0] = ops[0]
    return count
