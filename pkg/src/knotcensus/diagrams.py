"""Planar embeddings, crossing signs, over/under assignments, strands.

A shadow is embeddable in the plane iff its 4-valent traversal graph has
a rotation system (a cyclic order of edge-ends at every crossing, with
the two strands interleaved) whose face count satisfies Euler's formula
F = n + 2.  Each crossing admits exactly two interleaved rotations, so
realizability is decided by a backtracking search over those choices,
prefiltered by the parity condition that every chord of the pairing must
interlace an even number of other chords.

Darts: passage label l contributes an incoming dart 2*(l-1) and an
outgoing dart 2*(l-1)+1.  The outgoing dart of l and the incoming dart of
l+1 are the two halves of traversal segment l.

Crossing signs: with both strand directions given by the traversal, a
crossing is positive when the under strand's outgoing direction is a
quarter turn counterclockwise from the over strand's outgoing direction.
The global plane orientation is fixed so that crossing 1 is positive.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterator

from .codes import Name, RawName
from .shadows import Shadow


class NotRealizable(ValueError):
    """Raised by embed() when a shadow admits no planar rotation system."""


# ----------------------------------------------------------------------
# realizability and embedding
# ----------------------------------------------------------------------

def _interlacement_even(evens: tuple[int, ...]) -> bool:
    """Necessary planarity condition: every chord interlaces evenly many."""
    n = len(evens)
    chords = [(2 * k + 1, evens[k]) for k in range(n)]
    spans = [(min(a, b), max(a, b)) for a, b in chords]
    for i in range(n):
        lo, hi = spans[i]
        deg = 0
        for j in range(n):
            if j == i:
                continue
            a, b = spans[j]
            if (lo < a < hi) != (lo < b < hi):
                deg += 1
        if deg & 1:
            return False
    return True


def _face_count(evens: tuple[int, ...], chi: list[int]) -> int:
    """Number of orbits of (rotation o alpha) for rotation choices chi."""
    n = len(evens)
    m = 2 * n
    # alpha: dart of segment half <-> other half
    alpha = [0] * (2 * m)
    for lab in range(1, m + 1):
        nxt = lab % m + 1
        alpha[2 * (lab - 1) + 1] = 2 * (nxt - 1)
        alpha[2 * (nxt - 1)] = 2 * (lab - 1) + 1
    sigma = [0] * (2 * m)
    for k in range(n):
        o = 2 * k + 1
        e = evens[k]
        o_in, o_out = 2 * (o - 1), 2 * (o - 1) + 1
        e_in, e_out = 2 * (e - 1), 2 * (e - 1) + 1
        if chi[k] == 0:
            cyc = (o_in, e_in, o_out, e_out)
        else:
            cyc = (o_in, e_out, o_out, e_in)
        for idx in range(4):
            sigma[cyc[idx]] = cyc[(idx + 1) % 4]
    seen = [False] * (2 * m)
    faces = 0
    for d0 in range(2 * m):
        if seen[d0]:
            continue
        faces += 1
        d = d0
        while not seen[d]:
            seen[d] = True
            d = sigma[alpha[d]]
    return faces


def _search_planar(evens: tuple[int, ...]) -> list[int] | None:
    """First rotation assignment with F = n + 2, or None.

    chi[0] is fixed to 0: reversing the plane orientation flips every
    chi, so realizability is unaffected and crossing 1 comes out positive.
    """
    n = len(evens)
    if n == 0:
        return []
    if not _interlacement_even(evens):
        return None
    chi = [0] * n
    target = n + 2
    while True:
        if _face_count(evens, chi) == target:
            return chi
        # advance chi[1:] as a binary counter
        k = n - 1
        while k >= 1 and chi[k] == 1:
            chi[k] = 0
            k -= 1
        if k < 1:
            return None
        chi[k] = 1


def is_realizable(sh: Shadow) -> bool:
    """True iff the shadow embeds in the plane (rotation-system search)."""
    return _search_planar(sh.evens) is not None


@dataclass(frozen=True, slots=True)
class Embedding:
    """A planar rotation system for a shadow.

    rotations[k] selects the interleaving at crossing k: 0 means the even
    strand's outgoing dart follows the odd strand's outgoing dart
    counterclockwise, 1 the reverse.
    shadow_signs[k] is the crossing sign under the convention that the
    odd passage is the over one; the true sign for a Name flips it where
    the even passage is over.
    faces: the face count (== n + 2).
    """

    shadow: Shadow
    rotations: tuple[int, ...]
    shadow_signs: tuple[int, ...]
    faces: int

    def face_cycles(self) -> list[list[int]]:
        """Faces as dart cycles, for inspection and tests."""
        evens = self.shadow.evens
        n = len(evens)
        m = 2 * n
        alpha = [0] * (2 * m)
        for lab in range(1, m + 1):
            nxt = lab % m + 1
            alpha[2 * (lab - 1) + 1] = 2 * (nxt - 1)
            alpha[2 * (nxt - 1)] = 2 * (lab - 1) + 1
        sigma = [0] * (2 * m)
        for k in range(n):
            o = 2 * k + 1
            e = evens[k]
            o_in, o_out = 2 * (o - 1), 2 * (o - 1) + 1
            e_in, e_out = 2 * (e - 1), 2 * (e - 1) + 1
            cyc = (o_in, e_in, o_out, e_out) if self.rotations[k] == 0 else (o_in, e_out, o_out, e_in)
            for idx in range(4):
                sigma[cyc[idx]] = cyc[(idx + 1) % 4]
        seen = [False] * (2 * m)
        cycles = []
        for d0 in range(2 * m):
            if seen[d0]:
                continue
            cyc_l = []
            d = d0
            while not seen[d]:
                seen[d] = True
                cyc_l.append(d)
                d = sigma[alpha[d]]
            cycles.append(cyc_l)
        return cycles


def embed(sh: Shadow) -> Embedding:
    """A planar embedding of sh; raises NotRealizable if none exists."""
    chi = _search_planar(sh.evens)
    if chi is None:
        raise NotRealizable(f"shadow {sh.evens} has no planar embedding")
    n = sh.n
    signs = tuple(1 if c == 0 else -1 for c in chi)
    return Embedding(sh, tuple(chi), signs, n + 2)


def crossing_signs(nm: Name, emb: Embedding | None = None) -> tuple[int, ...]:
    """Per-crossing signs of the diagram nm, crossing 1 positive.

    Label 1 is always an over passage, and embed() orients the plane so
    that crossing 1 is positive, so no further normalization is needed.
    """
    if nm.n == 0:
        return ()
    if emb is None:
        emb = embed(Shadow(nm.evens))
    return tuple(s if ov else -s for s, ov in zip(emb.shadow_signs, nm.over))


# ----------------------------------------------------------------------
# over/under assignments of a shadow
# ----------------------------------------------------------------------

def _pairing_stabilizer(evens: tuple[int, ...]) -> list[tuple[bool, int]]:
    """Relabelings (reversal?, offset) that map the pairing to itself."""
    n = len(evens)
    m = 2 * n
    partner = [0] * (m + 1)
    for k in range(n):
        o = 2 * k + 1
        partner[o] = evens[k]
        partner[evens[k]] = o
    stab = []
    for rev in (False, True):
        for k in range(m):
            ok = True
            for t in range(n):
                if rev:
                    src = (k - (2 * t + 1) - 1) % m + 1
                    e = (k - partner[src] - 1) % m + 1
                else:
                    src = (2 * t + 1 - k - 1) % m + 1
                    e = (partner[src] + k - 1) % m + 1
                if e != evens[t]:
                    ok = False
                    break
            if ok:
                stab.append((rev, k))
    return stab


def diagrams_of(sh: Shadow) -> Iterator[Name]:
    """All inequivalent over/under assignments of a canonical shadow.

    Assignments with label 1 over are scanned in preference order of the
    role tuple; two assignments related by a relabeling that fixes the
    pairing (with the label-1-over flip applied) describe the same
    diagram, and only the preferred orbit representative is emitted.
    Every emitted Name is canonical when sh itself is canonical.
    """
    evens = sh.evens
    n = sh.n
    if n == 0:
        yield Name((), ())
        return
    m = 2 * n
    partner = sh.partner()
    stab = _pairing_stabilizer(evens)
    nontrivial = [s for s in stab if s != (False, 0)]

    def act(rev: bool, k: int, over_at: list[bool]) -> tuple[bool, ...]:
        ov = [False] * n
        for t in range(n):
            if rev:
                src = (k - (2 * t + 1) - 1) % m + 1
            else:
                src = (2 * t + 1 - k - 1) % m + 1
            ov[t] = over_at[src]
        if not ov[0]:
            ov = [not o for o in ov]
        return tuple(ov)

    for bits in range(1 << (n - 1)):
        over = (True,) + tuple(not (bits >> (n - 2 - i)) & 1 for i in range(n - 1))
        if nontrivial:
            over_at = [False] * (m + 1)
            for t in range(n):
                o = 2 * t + 1
                over_at[o] = over[t]
                over_at[partner[o]] = not over[t]
            key = tuple(not o for o in over)
            minimal = True
            for rev, k in nontrivial:
                other = act(rev, k, over_at)
                if tuple(not o for o in other) < key:
                    minimal = False
                    break
            if not minimal:
                continue
        yield Name(evens, over)


# ----------------------------------------------------------------------
# strands
# ----------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class StrandPartition:
    """The n over-strands of a diagram, cut at its under passages.

    Strand i (1-based) ends at the i-th under label in traversal order
    and strand 1 contains label 1.  crossing_strands[k] gives, for
    crossing k+1, the strands coming in under, going out under, and
    passing over.
    """

    n_strands: int
    under_labels: tuple[int, ...]  # sorted; strand i ends at under_labels[i-1]
    strand_of_label: tuple[int, ...]  # 1-based strand per label 1..2n
    crossing_strands: tuple[tuple[int, int, int], ...]  # (in, out, over)


def strands_of(nm: Name) -> StrandPartition:
    """Partition the traversal of nm into its n strands."""
    n = nm.n
    if n == 0:
        return StrandPartition(0, (), (), ())
    unders = []
    overs = []
    for k in range(n):
        o = 2 * k + 1
        e = nm.evens[k]
        if nm.over[k]:
            overs.append(o)
            unders.append(e)
        else:
            overs.append(e)
            unders.append(o)
    order = sorted(unders)
    strand_of = [0] * (2 * n + 1)
    for lab in range(1, 2 * n + 1):
        i = bisect_left(order, lab)
        strand_of[lab] = i + 1 if i < n else 1
    cs = []
    for k in range(n):
        i = order.index(unders[k]) + 1
        out = i % n + 1
        cs.append((i, out, strand_of[overs[k]]))
    return StrandPartition(n, tuple(order), tuple(strand_of[1:]), tuple(cs))
