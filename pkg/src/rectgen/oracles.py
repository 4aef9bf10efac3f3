"""Minimal-jump oracles and the block-aligned support machinery.

The hot implementations live in _kernels; this module provides the typed
surface used by the driver and the tests, plus the block partition needed
to recognize block-aligned rectangulations independently of the generator.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np

from . import _kernels as K
from .core import LEFT, RIGHT, Rectangulation
from .tree import embed, is_diagonal


@dataclass(frozen=True)
class JumpRequest:
    j: int
    d: int  # LEFT or RIGHT

    def __post_init__(self):
        if self.j < 2:
            raise ValueError("only rectangles with index >= 2 can jump")
        if self.d not in (LEFT, RIGHT):
            raise ValueError("direction must be LEFT or RIGHT")


class WorkCounter:
    """Counts constant-time structure operations of the enclosing calls."""

    def __init__(self):
        self._ops = np.zeros(1, dtype=np.int64)

    @property
    def array(self):
        return self._ops

    @property
    def total(self) -> int:
        return int(self._ops[0])

    def reset(self) -> None:
        self._ops[0] = 0


def _ops(counter: Optional[WorkCounter]):
    return counter.array if counter is not None else np.zeros(1, dtype=np.int64)


def next_generic(R: Rectangulation, req: JumpRequest,
                 counter: Optional[WorkCounter] = None) -> int:
    """Advance r_j to the adjacent insertion point; returns the move kind."""
    return K.next_generic(R.arrays(), req.j, req.d, _ops(counter))


def next_diagonal(R: Rectangulation, req: JumpRequest,
                  counter: Optional[WorkCounter] = None) -> int:
    return K.next_diagonal(R.arrays(), req.j, req.d, _ops(counter))


def next_block(R: Rectangulation, req: JumpRequest,
               counter: Optional[WorkCounter] = None):
    """One block-aligned step; returns the [W, S, T, D] move counts."""
    mv = np.zeros(4, dtype=np.int64)
    K.next_block(R.arrays(), R.n, req.j, req.d, _ops(counter), mv)
    return mv


def next_pattern_avoiding(R: Rectangulation, req: JumpRequest, spec,
                          counter: Optional[WorkCounter] = None,
                          windmill_opt: bool = True):
    """Fast-forward the base-class oracle until all avoided patterns vanish."""
    from .driver import _class_id  # late import to keep modules acyclic

    mv = np.zeros(4, dtype=np.int64)
    mask = 0
    for p in spec.avoid:
        mask |= 1 << p
    K.class_jump(R.arrays(), R.n, req.j, req.d, _class_id(spec.base), mask,
                 windmill_opt, _ops(counter), mv)
    return mv


def contains_incremental(R: Rectangulation, j: int, p: int,
                         counter: Optional[WorkCounter] = None) -> bool:
    """contains(R, j, P_p): containment involving r_j after jumps of r_j."""
    if not 1 <= p <= 8:
        raise ValueError("pattern index must be in 1..8")
    return bool(K.contains_incremental(R.arrays(), j, p, _ops(counter)))


# -- blocks -------------------------------------------------------------------

H = "H"
V = "V"
BOTH = "BOTH"


@dataclass
class Block:
    lo: int                  # smallest rectangle index in the block
    hi: int                  # largest index; r_hi is the bottom-right one
    kind: str                # H, V, or BOTH (only size <= 2)
    h_aligned: bool
    ah_aligned: bool
    v_aligned: bool
    av_aligned: bool
    free_h: Optional[bool]   # None when not H-alignable
    free_v: Optional[bool]
    base: bool               # contains the bottom boundary

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1


@dataclass
class BlockInfo:
    blocks: List[Block]
    member: Dict[int, int]   # rectangle -> index into blocks


def _layers(emb, lo, hi, horizontal: bool):
    """Split block rectangles into same-extent layers along one axis."""
    key = (lambda e: (e[1], e[3])) if horizontal else (lambda e: (e[0], e[2]))
    groups: Dict[tuple, list] = {}
    for r in range(lo, hi + 1):
        groups.setdefault(key(emb[r]), []).append(r)
    return [groups[k] for k in sorted(groups)]


def _alignable(emb, lo, hi, horizontal: bool) -> bool:
    bx1 = min(emb[r][0] for r in range(lo, hi + 1))
    bx2 = max(emb[r][2] for r in range(lo, hi + 1))
    by1 = min(emb[r][1] for r in range(lo, hi + 1))
    by2 = max(emb[r][3] for r in range(lo, hi + 1))
    lay = _layers(emb, lo, hi, horizontal)
    span = (bx1, bx2) if horizontal else (by1, by2)
    for group in lay:
        if len(group) > 2:
            return False
        if horizontal:
            ivs = sorted((emb[r][0], emb[r][2]) for r in group)
        else:
            ivs = sorted((emb[r][1], emb[r][3]) for r in group)
        if ivs[0][0] != span[0] or ivs[-1][1] != span[1]:
            return False
        for (a, b), (c, d) in zip(ivs, ivs[1:]):
            if b != c:
                return False
    return True


def _is_rectangle(emb, lo, hi) -> bool:
    bx1 = min(emb[r][0] for r in range(lo, hi + 1))
    bx2 = max(emb[r][2] for r in range(lo, hi + 1))
    by1 = min(emb[r][1] for r in range(lo, hi + 1))
    by2 = max(emb[r][3] for r in range(lo, hi + 1))
    area = sum((emb[r][2] - emb[r][0]) * (emb[r][3] - emb[r][1])
               for r in range(lo, hi + 1))
    return area == (bx2 - bx1) * (by2 - by1)


def block_partition(R: Rectangulation) -> BlockInfo:
    """The unique partition of a diagonal rectangulation into maximal
    alignable blocks, with kind, alignment state and free/locked flags."""
    if not is_diagonal(R):
        raise ValueError("block partition is defined for diagonal "
                         "rectangulations only")
    n = R.n
    emb = embed(R)
    xmax = max(emb[r][2] for r in range(1, n + 1))
    ymax = max(emb[r][3] for r in range(1, n + 1))
    blocks: List[Block] = []
    member: Dict[int, int] = {}
    lo = 1
    while lo <= n:
        hi = lo
        for cand in range(n, lo, -1):
            if _is_rectangle(emb, lo, cand) and (
                    _alignable(emb, lo, cand, True)
                    or _alignable(emb, lo, cand, False)):
                hi = cand
                break
        h_ok = _alignable(emb, lo, hi, True)
        v_ok = _alignable(emb, lo, hi, False)
        kind = BOTH if (h_ok and v_ok) else (H if h_ok else V)
        hl = _layers(emb, lo, hi, True)
        vl = _layers(emb, lo, hi, False)
        h_aligned = h_ok and all(len(g) == 1 for g in hl)
        ah_aligned = (h_ok and len(hl[-1]) == 2
                      and all(len(g) == 1 for g in hl[:-1]))
        v_aligned = v_ok and all(len(g) == 1 for g in vl)
        av_aligned = (v_ok and len(vl[-1]) == 2
                      and all(len(g) == 1 for g in vl[:-1]))
        free_h = free_v = None
        if hi < n:
            below = emb[hi + 1][1] == emb[hi][3]
            if h_ok:
                free_h = below
            if v_ok:
                free_v = not below
        else:
            free_h = True if h_ok else None
            free_v = True if v_ok else None
        bx1 = min(emb[r][0] for r in range(lo, hi + 1))
        bx2 = max(emb[r][2] for r in range(lo, hi + 1))
        by2 = max(emb[r][3] for r in range(lo, hi + 1))
        base = bx1 == 0 and bx2 == xmax and by2 == ymax
        blocks.append(Block(lo, hi, kind, h_aligned, ah_aligned,
                            v_aligned, av_aligned, free_h, free_v, base))
        for r in range(lo, hi + 1):
            member[r] = len(blocks) - 1
        lo = hi + 1
    return BlockInfo(blocks, member)


def is_block_aligned(R: Rectangulation) -> bool:
    """Membership test derived from the block partition (oracle-independent)."""
    info = block_partition(R)
    n = R.n
    for b in info.blocks:
        if b.size == 1:
            continue
        if b.size == 2 and b.hi == n:
            # the block of r_n must be vertically aligned unless it is the
            # base block, which must be horizontally aligned
            if b.base:
                if not b.h_aligned:
                    return False
            elif not b.v_aligned:
                return False
            continue
        if b.kind in (H, BOTH) and b.free_h is not None:
            ok = b.h_aligned if b.free_h else b.ah_aligned
        else:
            ok = b.v_aligned if b.free_v else b.av_aligned
        if not ok:
            return False
    return True
