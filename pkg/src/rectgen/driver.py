"""Generation drivers: the memoryless production loop and the greedy
reference, plus the Gray-property checker used by the verification suite."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from . import _kernels as K
from .core import (HOR, LEFT, RIGHT, VER, Rectangulation, canonical_code,
                   from_code, make_row, unit_square, validate)
from .tree import (BLOCK_ALIGNED, DIAGONAL, GENERIC, ClassSpec, insert_at,
                   insertion_points)

_CLASS_IDS = {GENERIC: K.CLS_GENERIC, DIAGONAL: K.CLS_DIAGONAL,
              BLOCK_ALIGNED: K.CLS_BLOCK}


def _class_id(base: str) -> int:
    return _CLASS_IDS[base]


def _avoid_mask(spec: ClassSpec) -> int:
    mask = 0
    for p in spec.avoid:
        mask |= 1 << p
    return mask


@dataclass
class GenState:
    """Algorithm state for one memoryless run: R plus the o and s arrays."""

    R: Rectangulation
    o: np.ndarray
    s: np.ndarray
    spec: ClassSpec
    windmill_opt: bool = True
    counter: np.ndarray = field(
        default_factory=lambda: np.zeros(1, dtype=np.int64))
    moves: np.ndarray = field(
        default_factory=lambda: np.zeros(4, dtype=np.int64))
    last_jump: Optional[Tuple[int, int]] = None  # (j, direction)

    @classmethod
    def start(cls, spec: ClassSpec, n: int, windmill_opt: bool = True):
        R = make_row(n)
        o = np.full(n + 1, LEFT, dtype=np.int32)
        s = np.arange(n + 1, dtype=np.int32)
        return cls(R, o, s, spec, windmill_opt)

    def step(self) -> bool:
        """Advance to the next rectangulation; False once the run is done."""
        j = K.step_m(self.R.arrays(), self.R.n, self.o, self.s,
                     _class_id(self.spec.base), _avoid_mask(self.spec),
                     self.windmill_opt, self.counter, self.moves)
        if j == 0:
            self.last_jump = None
            return False
        # o[j] was flipped after the jump when an end was reached, so the
        # executed direction is recovered from the move bookkeeping
        self.last_jump = (int(j), None)
        return True


def _block_small(n: int) -> List[Rectangulation]:
    if n == 1:
        return [unit_square()]
    return [from_code((1,))]  # the horizontally split pair


def run_memoryless(spec: ClassSpec, n: int,
                   visitor: Optional[Callable[[Rectangulation], None]] = None,
                   validate_every: int = 0,
                   collect_codes: bool = False,
                   collect_trace: bool = False,
                   windmill_opt: bool = True):
    """Generate all of C_n by minimal jumps; returns a run report.

    The visitor sees the live rectangulation (zero copy); it must not
    mutate it.  With collect_trace the per-step jump bookkeeping needed by
    trace printing and the Gray checks is recorded.
    """
    if n < 1:
        raise ValueError("n must be positive")
    report = RunReport(spec=spec, n=n)
    if spec.base == BLOCK_ALIGNED and n <= 2:
        for R in _block_small(n):
            report.count += 1
            if visitor is not None:
                visitor(R)
            if collect_codes:
                report.codes.append(canonical_code(R))
            if collect_trace:
                report.trace.append(TraceStep(report.count, None, None,
                                              (LEFT,) * n,
                                              tuple(range(1, n + 1)),
                                              np.zeros(4, dtype=np.int64)))
        return report

    st = GenState.start(spec, n, windmill_opt)
    ops_prev = 0
    while True:
        report.count += 1
        if visitor is not None:
            visitor(st.R)
        if collect_codes:
            report.codes.append(canonical_code(st.R))
        if validate_every and report.count % validate_every == 0:
            err = validate(st.R)
            if err:
                raise AssertionError(
                    f"validate failed at visit {report.count}: {err}")
        o_before = tuple(int(x) for x in st.o[1:]) if collect_trace else None
        s_before = tuple(int(x) for x in st.s[1:]) if collect_trace else None
        j_next = int(st.s[n])
        d_next = int(st.o[j_next]) if j_next >= 1 else None
        if not st.step():
            if collect_trace:
                report.trace.append(TraceStep(report.count, None, None,
                                              o_before, s_before,
                                              st.moves.copy()))
            break
        delta = int(st.counter[0]) - ops_prev
        ops_prev = int(st.counter[0])
        report.max_step_ops = max(report.max_step_ops, delta)
        if collect_trace:
            report.trace.append(TraceStep(report.count, j_next, d_next,
                                          o_before, s_before,
                                          st.moves.copy()))
    report.total_ops = int(st.counter[0])
    return report


@dataclass
class TraceStep:
    ordinal: int
    j: Optional[int]          # rectangle jumped after this visit
    d: Optional[int]          # direction of that jump
    o: Optional[tuple]        # o array at the start of the iteration
    s: Optional[tuple]        # s array at the start of the iteration
    moves: np.ndarray         # (W, S, T, D) counts of the jump


@dataclass
class RunReport:
    spec: ClassSpec
    n: int
    count: int = 0
    total_ops: int = 0
    max_step_ops: int = 0
    codes: List[tuple] = field(default_factory=list)
    trace: List[TraceStep] = field(default_factory=list)


def run_fast(spec: ClassSpec, n: int, windmill_opt: bool = True):
    """Count-only run through the compiled loop; returns a RunReport."""
    report = RunReport(spec=spec, n=n)
    if spec.base == BLOCK_ALIGNED and n <= 2:
        report.count = len(_block_small(n))
        return report
    R = make_row(n)
    stats = np.zeros(2, dtype=np.int64)
    report.count = int(K.run_count(R.arrays(), n, _class_id(spec.base),
                                   _avoid_mask(spec), windmill_opt, stats))
    report.total_ops = int(stats[0])
    report.max_step_ops = int(stats[1])
    return report


# -- greedy reference ---------------------------------------------------------

def _prefix_nus(code: tuple) -> List[int]:
    """nu(R^[m-1]) for m = 2..n along the insertion path of `code`."""
    out = []
    R = unit_square()
    for k in code:
        out.append(len(insertion_points(R)))
        R = insert_at(R, k)
    return out


def assemble_jump(code: tuple, j: int, ell: int) -> tuple:
    """The code after moving r_j to insertion index ell, keeping the
    basedness kind (first/last) of every rectangle above it."""
    n = len(code) + 1
    kinds = []
    nus = _prefix_nus(code)
    for m in range(j + 1, n + 1):
        k = code[m - 2]
        if k == 1:
            kinds.append(1)
        elif k == nus[m - 2]:
            kinds.append(-1)
        else:
            raise ValueError("suffix rectangle not at an extreme point")
    R = unit_square()
    for k in code[: j - 2]:
        R = insert_at(R, k)
    new_code = list(code[: j - 2])
    R = insert_at(R, ell)
    new_code.append(ell)
    for kind in kinds:
        nu = len(insertion_points(R))
        k = 1 if kind == 1 else nu
        R = insert_at(R, k)
        new_code.append(k)
    return tuple(new_code)


def _jump_targets(code: tuple, j: int, d: int, members: set):
    """Minimal-jump target of r_j in direction d, or None; second result
    tells whether the minimal member target was already visited."""
    n = len(code) + 1
    nus = _prefix_nus(code)
    for m in range(j + 1, n + 1):
        if code[m - 2] not in (1, nus[m - 2]):
            return None
    k = code[j - 2]
    rng = range(k - 1, 0, -1) if d == LEFT else range(k + 1, nus[j - 2] + 1)
    for ell in rng:
        cand = assemble_jump(code, j, ell)
        if cand in members:
            return cand
    return None


def run_greedy_reference(members, start: Rectangulation):
    """Greedy minimal jumps of the maximum-index rectangle (reference).

    Returns (visited codes, status) with status one of "success",
    "stuck" (no jump to an unvisited member) or "ambiguous".
    """
    members = {tuple(c) for c in members}
    code = canonical_code(start)
    if code not in members:
        raise ValueError("start rectangulation not in the class")
    n = len(code) + 1
    visited = [code]
    seen = {code}
    while len(seen) < len(members):
        chosen = []
        for j in range(n, 1, -1):
            for d in (LEFT, RIGHT):
                cand = _jump_targets(code, j, d, members)
                if cand is not None and cand not in seen:
                    chosen.append(cand)
            if chosen:
                break
        if not chosen:
            return visited, "stuck"
        if len(chosen) > 1:
            return visited, "ambiguous"
        code = chosen[0]
        visited.append(code)
        seen.add(code)
    return visited, "success"


# -- Gray-code property checks ------------------------------------------------

@dataclass
class GrayReport:
    ok: bool = True
    problems: List[str] = field(default_factory=list)
    transitions: List[tuple] = field(default_factory=list)  # (j, d, dist)
    kinds: List[str] = field(default_factory=list)
    cyclic: Optional[bool] = None

    def fail(self, msg: str):
        self.ok = False
        self.problems.append(msg)


def classify_transition(a: tuple, b: tuple):
    """(j, direction, distance) of the single-rectangle jump from a to b."""
    n = len(a) + 1
    diff = [m for m in range(2, n + 1) if a[m - 2] != b[m - 2]]
    if not diff:
        return None
    j = diff[0]
    # positions above j may renumber while staying at their extreme point,
    # which is part of the same jump; positions must keep their kind
    nus_a, nus_b = _prefix_nus(a), _prefix_nus(b)
    for m in range(j + 1, n + 1):
        ka, kb = a[m - 2], b[m - 2]
        kind_a = 1 if ka == 1 else (-1 if ka == nus_a[m - 2] else 0)
        kind_b = 1 if kb == 1 else (-1 if kb == nus_b[m - 2] else 0)
        if kind_a == 0 or kind_a != kind_b:
            return None
    d = RIGHT if b[j - 2] > a[j - 2] else LEFT
    return j, d, abs(b[j - 2] - a[j - 2])


def _move_kind(a: tuple, b: tuple, j: int) -> str:
    """W/S/T classification of a distance-1 jump via the insertion points."""
    P = from_code(a[: j - 2])
    pts = insertion_points(P)
    pa, pb = pts[a[j - 2] - 1], pts[b[j - 2] - 1]
    if pa.kind != pb.kind:
        return "S"
    if pa.group == pb.group:
        return "W"
    return "T"


def check_gray(codes: Sequence[tuple], spec: ClassSpec,
               members: Optional[set] = None,
               check_minimal: bool = False,
               moves: Optional[Sequence[np.ndarray]] = None) -> GrayReport:
    """Verify the structural Gray-code properties of a visit list."""
    rep = GrayReport()
    if len(set(codes)) != len(codes):
        rep.fail("repeated rectangulation in the listing")
    if members is not None and set(codes) != set(members):
        rep.fail("visited set differs from the class")
    pairs = list(zip(codes, codes[1:]))
    closing = None
    if spec.symmetric and len(codes) > 2:
        closing = (codes[-1], codes[0])
    if spec.base == BLOCK_ALIGNED:
        # steps are one T- or D-flip plus at most three simple flips
        if moves is not None:
            for i, mv in enumerate(moves):
                w, s, t, dd = (int(x) for x in mv)
                if w != 0:
                    rep.fail(f"step {i}: wall slide in a block-aligned run")
                if t + dd != 1:
                    rep.fail(f"step {i}: {t} T-flips and {dd} D-flips")
                if s > 3:
                    rep.fail(f"step {i}: {s} simple flips")
        return rep
    for i, (a, b) in enumerate(pairs + ([closing] if closing else [])):
        tr = classify_transition(a, b)
        if tr is None:
            rep.fail(f"step {i}: not a jump of a single rectangle")
            continue
        j, d, dist = tr
        if i < len(pairs):
            rep.transitions.append(tr)
            rep.kinds.append(_move_kind(a, b, j) if dist == 1 else "J")
        if check_minimal and members is not None:
            k0, k1 = a[j - 2], b[j - 2]
            lo, hi = min(k0, k1), max(k0, k1)
            for ell in range(lo + 1, hi):
                if assemble_jump(a, j, ell) in members:
                    rep.fail(f"step {i}: jump of r_{j} skips a class member")
                    break
    if closing is not None:
        rep.cyclic = rep.ok or all("not a jump" not in p or
                                   not p.startswith(f"step {len(pairs)}")
                                   for p in rep.problems)
        rep.cyclic = classify_transition(*closing) is not None
    return rep
