"""Bit-vector filter deciding whether a reference prefix can still reach quorum.

For an ordered pair (x, y), positions of S_y that share nothing with S_x are
trivial indels; the maximal runs between them (split at contig breaks) are the
*ridges* of S_y. Any interval of S_y pairing with a reference interval under
budget `delta` must live inside a window of at most delta+1 consecutive
ridges, so each reference position is tagged with the ridges it can reach:
the ridges its hit positions lie on, dilated to all ridges at most `delta`
trivial indels away. A reference position that reaches no ridge of a window
is necessarily an indel for every candidate interval inside that window,
which is what makes the per-ridge miss counters below a sound lower bound.

Ridges are mapped to bit slots; a slot is recycled once its ridge has not
been observed within `delta` trivial indels of the current reference
position, which keeps the vectors narrow without aliasing inside any window
the sweep can compare.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from heapq import heappop, heappush

from .model import AwciError, SearchParams
from .tables import PairTables


class RidgeT:
    """Per reference position, the bit set of reachable ridges of one trans string."""

    __slots__ = ("vec", "width", "slot_ridges")

    def __init__(self, vec: list[int], width: int,
                 slot_ridges: list[dict[int, int]] | None) -> None:
        self.vec = vec          # index 0 unused; vec[j] for 1 <= j <= |S_x|
        self.width = width      # bits per vector (max slots ever live)
        self.slot_ridges = slot_ridges  # per-j slot -> ridge map when tracking


def ridge_levels(tables: PairTables, y: int, x: int) -> list[int | None]:
    """Ridge id of every position of S_y w.r.t. S_x (None for trivial indels).

    The id is the trivial-indel prefix count at the position; contig breaks
    produce huge jumps, so ids are unique per (ridge, contig).
    """
    rc = tables.ridge_c[y][x]
    pos = tables.pos[y][x]
    out: list[int | None] = [None]
    for k in range(1, len(rc)):
        out.append(rc[k] if pos[k] else None)
    return out


def build_ridge_t(tables: PairTables, x: int, y: int, delta: int,
                  track_slots: bool = False) -> RidgeT:
    """Left-to-right construction with slot reuse outside the delta window."""
    levels = ridge_levels(tables, y, x)
    existing = sorted({lv for lv in levels if lv is not None})
    # dilation: every existing ridge at most delta trivial indels away
    neighbors: dict[int, tuple[int, ...]] = {}
    for lv in existing:
        lo = bisect_left(existing, lv - delta)
        hi = bisect_right(existing, lv + delta)
        neighbors[lv] = tuple(existing[lo:hi])

    pos_xy = tables.pos[x][y]
    rc_xy = tables.ridge_c[x][y]
    n_x = len(pos_xy) - 1

    slot_of: dict[int, int] = {}   # ridge level -> live slot
    last_seen: dict[int, int] = {}  # ridge level -> rc_xy level at last observation
    free: list[int] = []
    width = 0
    vec: list[int] = [0]
    slot_ridges: list[dict[int, int]] | None = [{}] if track_slots else None

    for j in range(1, n_x + 1):
        level_j = rc_xy[j]
        # recycle slots whose ridges fell out of the reuse window
        for lv in [lv for lv, seen in last_seen.items() if level_j - seen > delta]:
            heappush(free, slot_of.pop(lv))
            del last_seen[lv]

        reached: set[int] = set()
        for k in pos_xy[j]:
            lv = levels[k]
            assert lv is not None
            reached.update(neighbors[lv])

        bits = 0
        j_map: dict[int, int] = {}
        for lv in sorted(reached):
            slot = slot_of.get(lv)
            if slot is None:
                slot = heappop(free) if free else width
                if slot == width:
                    width += 1
                slot_of[lv] = slot
            last_seen[lv] = level_j
            bits |= 1 << slot
            j_map[slot] = lv
        vec.append(bits)
        if slot_ridges is not None:
            slot_ridges.append(j_map)

    return RidgeT(vec, width, slot_ridges)


def build_all_ridge_t(tables: PairTables, delta: int,
                      track_slots: bool = False) -> list[list[RidgeT | None]]:
    m = len(tables.dataset)
    out: list[list[RidgeT | None]] = [[None] * m for _ in range(m)]
    for x in range(m):
        for y in range(m):
            if x != y:
                out[x][y] = build_ridge_t(tables, x, y, delta, track_slots)
    return out


class FilterState:
    """Per-sweep scratch state: Active and Delta vectors for every trans string.

    Strictly private to one (reference, left bound) unit of work. `reset`
    must be called whenever the left bound advances; positions must then be
    fed with strictly increasing j.
    """

    def __init__(self, m: int, x: int, delta: int) -> None:
        self.m = m
        self.x = x
        self.delta = delta
        self.left = 0
        self.j_prev = 0
        self.active = [0] * m
        self.deltas = [[0] * (delta + 1) for _ in range(m)]
        self.dead = [False] * m
        self.calls = 0  # benchmark hook

    def reset(self, i: int) -> None:
        self.left = i
        self.j_prev = 0
        for y in range(self.m):
            self.active[y] = 0
            self.dead[y] = y == self.x
            dv = self.deltas[y]
            for d in range(len(dv)):
                dv[d] = 0


def filter_position(tables: PairTables, ridge_t: list[list[RidgeT | None]],
                    x: int, i: int, j: int, state: FilterState,
                    params: SearchParams, q_eff: int | None = None) -> bool:
    """Advance the sweep to position j; True iff quorum is still reachable.

    For each live trans string the per-ridge miss counters are updated from
    the position's bit vector; a string still counts as a candidate when some
    active ridge has accumulated at most `delta` misses. Requires q_eff - 1
    candidate strings (q_eff defaults to the params quorum).
    """
    if state.left != i or j <= state.j_prev:
        raise AwciError("filter state out of sync: reset at each left bound, "
                        "then call with strictly increasing j")
    state.j_prev = j
    state.calls += 1
    delta = params.delta
    if q_eff is None:
        q_eff = params.quorum
    charge = min(j - i, delta + 1)
    candidates = 0
    for y in range(state.m):
        if state.dead[y]:
            continue
        rc = tables.ridge_c[x][y]
        if rc[j] - rc[i] > delta:
            state.dead[y] = True
            continue
        rv = ridge_t[x][y].vec[j]  # type: ignore[union-attr]
        active = state.active[y]
        dv = state.deltas[y]
        a_off = active & ~rv
        if a_off:
            # unary saturating increment of every active-but-absent ridge
            for d in range(delta + 1):
                if not a_off:
                    break
                carried = dv[d] & a_off
                dv[d] |= a_off
                a_off = carried
        if charge:
            a_new = rv & ~active
            if a_new:
                # ridges first seen now missed every position since the left bound
                for d in range(min(charge, delta + 1)):
                    dv[d] |= a_new
        active |= rv
        state.active[y] = active
        if active & ~dv[delta]:
            candidates += 1
    return candidates >= q_eff - 1
