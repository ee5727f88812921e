"""Shadows: crossing pairings with over/under information forgotten.

A shadow keeps only which passages meet at each crossing.  It is generated
by a permutation f of 1..n: crossing visited as the 2k-1-st passage is
revisited as passage 2*f(k).  Shadows are enumerated through such
permutations; a shadow is canonical when its generating permutation is
lexicographically minimal among all <= 4n relabelings.

``simple_loops`` and ``is_drawable`` implement the planarity criterion for
a pairing: assign each crossing either "vertex" (the loop turns there,
entering on the even passage and leaving on the odd one, in direction +1
or -1) or "pass through"; a simple loop visits every one of its vertices
exactly once and never crosses itself.  A pairing can be drawn in the
plane iff every two simple loops either share a segment of the curve
(tangency) or cross each other an even number of times.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterator

from .codes import RawName, canonical_raw


@dataclass(frozen=True, slots=True)
class Shadow:
    """evens[k] is the even label paired with odd label 2k+1 (0-based)."""

    evens: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.evens)

    def generating_permutation(self) -> tuple[int, ...]:
        """f with f(k) = evens[k]/2, the permutation generating the pairing."""
        return tuple(e // 2 for e in self.evens)

    def partner(self) -> list[int]:
        """1-indexed passage partner table."""
        n = len(self.evens)
        p = [0] * (2 * n + 1)
        for k in range(n):
            o = 2 * k + 1
            p[o] = self.evens[k]
            p[self.evens[k]] = o
        return p


def shadow_of_permutation(f: tuple[int, ...]) -> Shadow:
    """Shadow generated by a permutation of 1..n."""
    return Shadow(tuple(2 * j for j in f))


def permutations_in_order(n: int) -> Iterator[tuple[int, ...]]:
    """All permutations of 1..n in lexicographic order."""
    return permutations(range(1, n + 1))


# ----------------------------------------------------------------------
# canonical shadows
# ----------------------------------------------------------------------

def canonical_shadow_raw(evens: tuple[int, ...]) -> tuple[int, ...]:
    """Minimal pairing among the <= 4n relabelings (roles ignored)."""
    ev, _ = canonical_raw(evens, (True,) * len(evens))
    return ev


def is_shadow_canonical(sh: Shadow) -> bool:
    """True iff sh's pairing is its own relabeling minimum."""
    return canonical_shadow_raw(sh.evens) == sh.evens


def canonical_shadow(sh: Shadow) -> Shadow:
    return Shadow(canonical_shadow_raw(sh.evens))


# ----------------------------------------------------------------------
# simple loops
# ----------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Loop:
    """A simple closed subloop of a shadow's curve.

    assignment: per-crossing value in {-1, 0, +1}; nonzero entries are the
    loop's vertices (corners) with their turn direction, zero means the
    loop either passes straight through or misses the crossing.
    segments: indices t of traversal segments (t, t+1 mod 2n) the loop uses.
    odd_through / even_through: crossings passed transversally via their
    odd / even passage (vertices excluded).
    """

    assignment: tuple[int, ...]
    segments: frozenset[int]
    vertices: frozenset[int]
    odd_through: frozenset[int]
    even_through: frozenset[int]


def simple_loops(sh: Shadow) -> list[Loop]:
    """Enumerate every simple loop of the shadow, one per valid assignment.

    A loop is traced from its lowest-numbered vertex.  Travelling along
    the curve, a vertex is entered on its even passage and exited from its
    odd passage in the direction given by the assignment; any other
    crossing met on the way must be passed through on one passage only
    (meeting both passages of a pass-through crossing means the loop
    crosses itself, which is excluded).  Reversed traversals are not
    generated, so each geometric loop appears exactly once.
    """
    n = sh.n
    if n == 0:
        return []
    m = 2 * n
    partner = sh.partner()
    crossing_of = [0] * (m + 1)
    for k in range(1, n + 1):
        crossing_of[2 * k - 1] = k
        crossing_of[partner[2 * k - 1]] = k
    loops: list[Loop] = []

    def wrap(x: int) -> int:
        return (x - 1) % m + 1

    def seg(pos: int, d: int) -> int:
        # segment index t for the step pos -> pos+d, t joining (t, t+1)
        return pos if d == 1 else wrap(pos - 1)

    def trace(j0: int, d0: int) -> None:
        # assignment state: 0 undetermined here is None; committed 0 is 0
        state: list[int | None] = [None] * (n + 1)
        state[j0] = d0

        def walk(pos: int, d: int, segs: list[int], used_passage: list[int]) -> None:
            # advance one step from pos in direction d
            segs.append(seg(pos, d))
            cur = wrap(pos + d)
            c = crossing_of[cur]
            odd_passage = cur % 2 == 1
            if c == j0 and not odd_passage:
                # back at the start vertex: loop closes
                assignment = tuple((state[k] or 0) for k in range(1, n + 1))
                vertices = frozenset(k for k in range(1, n + 1) if state[k])
                odd_t = frozenset(crossing_of[p] for p in used_passage if p % 2 == 1)
                even_t = frozenset(crossing_of[p] for p in used_passage if p % 2 == 0)
                loops.append(Loop(assignment, frozenset(segs), vertices, odd_t, even_t))
                segs.pop()
                return
            st = state[c]
            if st is None:
                if odd_passage:
                    # cannot be a vertex (its odd passage is the exit); pass through
                    state[c] = 0
                    used_passage.append(cur)
                    walk(cur, d, segs, used_passage)
                    state[c] = None
                    used_passage.pop()
                else:
                    # branch: pass through, or turn here in either direction
                    state[c] = 0
                    used_passage.append(cur)
                    walk(cur, d, segs, used_passage)
                    used_passage.pop()
                    if c > j0:  # keep j0 the minimal vertex
                        exit_pos = 2 * c - 1
                        for turn in (1, -1):
                            state[c] = turn
                            walk(exit_pos, turn, segs, used_passage)
                    state[c] = None
            # st == 0: second contact with a pass-through crossing -> the
            # loop would cross itself; st == +-1: second arrival at a
            # vertex -> revisit.  Both invalid: abandon the branch.
            segs.pop()

        walk(2 * j0 - 1, d0, [], [])

    for j0 in range(1, n + 1):
        for d0 in (1, -1):
            trace(j0, d0)
    return loops


# ----------------------------------------------------------------------
# drawability
# ----------------------------------------------------------------------

def _loop_masks(loops: list[Loop]) -> list[tuple[int, int, int]]:
    masks = []
    for lp in loops:
        s = 0
        for t in lp.segments:
            s |= 1 << t
        o = 0
        for c in lp.odd_through:
            o |= 1 << c
        e = 0
        for c in lp.even_through:
            e |= 1 << c
        masks.append((s, o, e))
    return masks


def is_drawable(sh: Shadow) -> bool:
    """Planarity test: every two simple loops are tangent or cross evenly.

    Two loops are tangent when they share a traversal segment.  Loops that
    are not tangent can only meet at crossings passed transversally by
    both on opposite strands; the pairing is drawable iff every such
    intersection count is even.
    """
    if sh.n == 0:
        return True
    loops = simple_loops(sh)
    masks = _loop_masks(loops)
    for i in range(len(loops)):
        si, oi, ei = masks[i]
        for j in range(i + 1, len(loops)):
            sj, oj, ej = masks[j]
            if si & sj:
                continue
            crossings = (oi & ej) | (ei & oj)
            if crossings.bit_count() & 1:
                return False
    return True
