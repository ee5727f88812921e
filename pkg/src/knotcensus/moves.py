"""Reidemeister rewrites on names and reduction to irreducible names.

All three moves are label rewrites followed by renumbering and
canonicalization:

* R1 removes a curl: a crossing whose two passages carry cyclically
  consecutive labels.
* R2 removes a bigon: two crossings joined by two crossing-free segments,
  the moving strand passing over at both its ends (the other strand then
  passes under at both of its own).
* R3 slides a strand across a triangle: three crossings pairwise joined
  by three segments with six distinct labels, at least one side having
  both endpoints on top (all three sides mixed admits no slide).  The
  rewrite exchanges the two endpoint labels of every side, roles
  travelling with the passages.

R1 and R2 strictly reduce the crossing count; R3 preserves it.  reduce()
explores the move graph from a starting name: from every discovered name
it follows one crossing-removing move when available plus every triangle
slide, and returns the discovered names admitting no preferred move.

Triangle slides are expected to stay inside the drawable names; when
verification is on, any result failing that check is collected in the
flagged-slides list (see flagged_slides()) and dropped from the output,
loudly signalling a site-detection bug rather than a property of the
input.
"""

from __future__ import annotations

from itertools import combinations

from .codes import Name, RawName, canonical_raw
from .diagrams import is_realizable
from .shadows import Shadow

# (input name, site, produced raw name) for every slide that left the
# drawable names; always empty unless something is wrong.
_flagged_slides: list[tuple[Name, tuple[int, int, int], RawName]] = []

# drawability answers per pairing; slides revisit few distinct pairings,
# so the recheck is cached
_drawable_cache: dict[tuple[int, ...], bool] = {}


def flagged_slides() -> list[tuple[Name, tuple[int, int, int], RawName]]:
    """Triangle slides whose results failed the drawability recheck."""
    return list(_flagged_slides)


def _drawable(evens: tuple[int, ...]) -> bool:
    r = _drawable_cache.get(evens)
    if r is None:
        r = is_realizable(Shadow(evens))
        _drawable_cache[evens] = r
    return r


# ----------------------------------------------------------------------
# raw helpers
# ----------------------------------------------------------------------

def _tables(evens: tuple[int, ...], over: tuple[bool, ...]):
    n = len(evens)
    partner = [0] * (2 * n + 1)
    over_at = [False] * (2 * n + 1)
    for k in range(n):
        o = 2 * k + 1
        e = evens[k]
        partner[o] = e
        partner[e] = o
        over_at[o] = over[k]
        over_at[e] = not over[k]
    return partner, over_at


def _crossing_of(evens: tuple[int, ...]) -> list[int]:
    n = len(evens)
    cross = [0] * (2 * n + 1)
    for k in range(n):
        cross[2 * k + 1] = k
        cross[evens[k]] = k
    return cross


def _delete_and_rebuild(evens: tuple[int, ...], over_at: list[bool],
                        removed: set[int]) -> RawName:
    """Drop the removed labels, renumber the rest in order, rebuild."""
    n = len(evens)
    m = 2 * n
    relabel = {}
    new = 0
    for lab in range(1, m + 1):
        if lab not in removed:
            new += 1
            relabel[lab] = new
    n2 = (m - len(removed)) // 2
    ev2 = [0] * n2
    ov2 = [False] * n2
    for k in range(n):
        o = 2 * k + 1
        if o in removed:
            continue
        a, b = relabel[o], relabel[evens[k]]
        odd, even = (a, b) if a % 2 == 1 else (b, a)
        t = (odd - 1) // 2
        ev2[t] = even
        ov2[t] = over_at[o] if odd == a else over_at[evens[k]]
    if ov2 and not ov2[0]:
        ov2 = [not o for o in ov2]
    return canonical_raw(tuple(ev2), tuple(ov2))


# ----------------------------------------------------------------------
# R1: curls
# ----------------------------------------------------------------------

def r1_sites_raw(evens: tuple[int, ...], over: tuple[bool, ...]) -> list[int]:
    """Labels l whose partner is l+1 cyclically; one entry per curl."""
    n = len(evens)
    if n == 0:
        return []
    m = 2 * n
    partner, _ = _tables(evens, over)
    sites = []
    seen_crossing = set()
    for l in range(1, m + 1):
        if partner[l] == l % m + 1:
            k = (l - 1) // 2 if l % 2 == 1 else (partner[l] - 1) // 2
            if k not in seen_crossing:
                seen_crossing.add(k)
                sites.append(l)
    return sites


def r1_apply_raw(evens: tuple[int, ...], over: tuple[bool, ...], site: int) -> RawName:
    m = 2 * len(evens)
    _, over_at = _tables(evens, over)
    return _delete_and_rebuild(evens, over_at, {site, site % m + 1})


# ----------------------------------------------------------------------
# R2: bigons
# ----------------------------------------------------------------------

def r2_sites_raw(evens: tuple[int, ...], over: tuple[bool, ...]) -> list[tuple[int, int]]:
    """Segment index pairs (t, u), t < u, bounding a removable bigon.

    Segment t joins labels t and t+1 cyclically.  A site needs two
    segments with four distinct labels joining the same two distinct
    crossings, one strand passing over at both of its ends; the
    complementary roles at the two crossings put the other strand under
    at both automatically."""
    n = len(evens)
    if n < 2:
        return []
    m = 2 * n
    _, over_at = _tables(evens, over)
    cross = _crossing_of(evens)
    by_pair: dict[frozenset[int], list[int]] = {}
    for t in range(1, m + 1):
        a, b = cross[t], cross[t % m + 1]
        if a != b:
            by_pair.setdefault(frozenset((a, b)), []).append(t)
    sites = []
    for segs in by_pair.values():
        for i in range(len(segs)):
            t = segs[i]
            if over_at[t] != over_at[t % m + 1]:
                continue
            for j in range(i + 1, len(segs)):
                u = segs[j]
                if len({t, t % m + 1, u, u % m + 1}) == 4:
                    sites.append((t, u))
    return sorted(sites)


def r2_apply_raw(evens: tuple[int, ...], over: tuple[bool, ...], site: tuple[int, int]) -> RawName:
    m = 2 * len(evens)
    _, over_at = _tables(evens, over)
    cross = _crossing_of(evens)
    t = site[0]
    removed = set()
    for k in (cross[t], cross[t % m + 1]):
        o = 2 * k + 1
        removed.add(o)
        removed.add(evens[k])
    return _delete_and_rebuild(evens, over_at, removed)


# ----------------------------------------------------------------------
# R3: triangles
# ----------------------------------------------------------------------

def r3_sites_raw(evens: tuple[int, ...], over: tuple[bool, ...]) -> list[tuple[int, int, int]]:
    """Segment triples (t, u, v) forming a slideable triangle.

    Three distinct crossings pairwise joined by the three segments with
    six distinct labels; the labels then cover all six passages of the
    three crossings, so the corners are automatically consistent.  The
    slide needs a side with both endpoints over (equivalently, not all
    three sides of mixed role)."""
    n = len(evens)
    if n < 3:
        return []
    m = 2 * n
    _, over_at = _tables(evens, over)
    cross = _crossing_of(evens)
    by_pair: dict[frozenset[int], list[int]] = {}
    for t in range(1, m + 1):
        a, b = cross[t], cross[t % m + 1]
        if a != b:
            by_pair.setdefault(frozenset((a, b)), []).append(t)
    sites: set[tuple[int, int, int]] = set()
    crossings_seen = sorted({k for pr in by_pair for k in pr})
    for x, y, z in combinations(crossings_seen, 3):
        group = []
        for pr in (frozenset((x, y)), frozenset((x, z)), frozenset((y, z))):
            segs = by_pair.get(pr)
            if not segs:
                break
            group.append(segs)
        else:
            for t in group[0]:
                for u in group[1]:
                    for v in group[2]:
                        labs = {t, t % m + 1, u, u % m + 1, v, v % m + 1}
                        if len(labs) != 6:
                            continue
                        if any(over_at[s] and over_at[s % m + 1] for s in (t, u, v)):
                            sites.add(tuple(sorted((t, u, v))))
    return sorted(sites)


def r3_apply_raw(evens: tuple[int, ...], over: tuple[bool, ...], site: tuple[int, int, int]) -> RawName:
    n = len(evens)
    m = 2 * n
    _, over_at = _tables(evens, over)
    tau = list(range(m + 1))
    for s in site:
        s2 = s % m + 1
        tau[s], tau[s2] = tau[s2], tau[s]
    ev2 = [0] * n
    ov2 = [False] * n
    for k in range(n):
        a, b = tau[2 * k + 1], tau[evens[k]]
        odd, even = (a, b) if a % 2 == 1 else (b, a)
        t = (odd - 1) // 2
        ev2[t] = even
        ov2[t] = over_at[2 * k + 1] if odd == a else over_at[evens[k]]
    if not ov2[0]:
        ov2 = [not o for o in ov2]
    return canonical_raw(tuple(ev2), tuple(ov2))


# ----------------------------------------------------------------------
# public single-move interfaces
# ----------------------------------------------------------------------

def r1_variants(nm: Name) -> list[Name]:
    """Names obtained by removing one curl, canonicalized."""
    return [Name(*r1_apply_raw(nm.evens, nm.over, s))
            for s in r1_sites_raw(nm.evens, nm.over)]


def r2_variants(nm: Name) -> list[Name]:
    """Names obtained by removing one bigon, canonicalized."""
    return [Name(*r2_apply_raw(nm.evens, nm.over, s))
            for s in r2_sites_raw(nm.evens, nm.over)]


def r3_variants(nm: Name, verify: bool = True) -> list[Name]:
    """Names obtained by one triangle slide, canonicalized.

    With verify=True, results are rechecked for drawability; failures go
    to flagged_slides() and are left out of the returned list."""
    out = []
    for s in r3_sites_raw(nm.evens, nm.over):
        ev, ov = r3_apply_raw(nm.evens, nm.over, s)
        if verify and not _drawable(ev):
            _flagged_slides.append((nm, s, (ev, ov)))
            continue
        out.append(Name(ev, ov))
    return out


# ----------------------------------------------------------------------
# reduction
# ----------------------------------------------------------------------

def explore_raw(key: RawName, verify: bool = False) -> tuple[list[RawName], bool]:
    """Successors of a name in the reduction graph and its irreducibility.

    Successors: the result of one curl removal if a curl exists, else one
    bigon removal if a bigon exists, plus all triangle slides.  The name
    is irreducible when it has no curl, no bigon and no slide to a
    preference-smaller name."""
    evens, over = key
    succ: list[RawName] = []
    removing = False
    r1 = r1_sites_raw(evens, over)
    if r1:
        removing = True
        succ.append(r1_apply_raw(evens, over, r1[0]))
    else:
        r2 = r2_sites_raw(evens, over)
        if r2:
            removing = True
            succ.append(r2_apply_raw(evens, over, r2[0]))
    own = (len(evens), evens, tuple(not o for o in over))
    improving = False
    for s in r3_sites_raw(evens, over):
        ev, ov = r3_apply_raw(evens, over, s)
        if verify and not _drawable(ev):
            _flagged_slides.append((Name(evens, over), s, (ev, ov)))
            continue
        succ.append((ev, ov))
        if (len(ev), ev, tuple(not o for o in ov)) < own:
            improving = True
    return succ, not removing and not improving


def reduce_name(nm: Name, verify: bool = True) -> set[Name]:
    """All irreducible names discovered from nm by the reduction search.

    Every name on the way is canonical; the returned set holds the
    visited names with no curl, no bigon and no preference-improving
    slide.  An irreducible name reduces to itself."""
    start = canonical_raw(nm.evens, nm.over)
    visited: set[RawName] = set()
    stack = [start]
    result: set[Name] = set()
    while stack:
        key = stack.pop()
        if key in visited:
            continue
        visited.add(key)
        succ, irreducible = explore_raw(key, verify)
        if irreducible:
            result.add(Name(*key))
        for s in succ:
            if s not in visited:
                stack.append(s)
    return result
