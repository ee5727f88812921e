"""Combinatorial names for knot projections.

A projection of a knot with n crossings is traversed once, numbering the
2n crossing passages 1..2n in visit order.  Each crossing is visited twice,
once on the strand that passes over and once on the strand that passes
under, and odd visit numbers always meet even ones.  The projection is
encoded as n pairs, written ``{(o,u),...}`` with the over passage first in
each pair.  Internally the k-th record stores the even label paired with
odd label 2k-1 plus a flag saying whether the odd passage is the over one.
The unknot is the empty name ``{}``.

Mirror images receive the same name: whenever a relabeling leaves label 1
on the under strand, every crossing's roles are flipped so that label 1 is
always an overcrossing.

Names are totally ordered ("preference"): fewer pairs first, then the even
partners of 1, 3, 5, ... lexicographically, then -- for identical pairings
-- the first position where the odd passage is over beats under.

The functions suffixed ``_raw`` operate on plain ``(evens, over)`` tuple
pairs; they are the hot path for the census and avoid object overhead.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterator

RawName = tuple[tuple[int, ...], tuple[bool, ...]]


class NameError_(ValueError):
    """Raised for malformed name text or invalid pair structure."""


@total_ordering
@dataclass(frozen=True, slots=True)
class Name:
    """A canonical-or-not projection name.

    evens[k] is the even label paired with odd label 2k+1 (0-based k);
    over[k] is True iff that odd label is the over passage.
    """

    evens: tuple[int, ...]
    over: tuple[bool, ...]

    @property
    def n(self) -> int:
        return len(self.evens)

    def key(self) -> tuple:
        """Sort key realizing the preference order (smaller = preferred)."""
        return (len(self.evens), self.evens, tuple(not o for o in self.over))

    def __lt__(self, other: "Name") -> bool:
        return self.key() < other.key()

    def raw(self) -> RawName:
        return (self.evens, self.over)

    def text(self) -> str:
        return format_name(self)

    def __str__(self) -> str:
        return format_name(self)


def _validate_raw(evens: tuple[int, ...], over: tuple[bool, ...]) -> None:
    n = len(evens)
    if len(over) != n:
        raise NameError_("evens/over length mismatch")
    if n == 0:
        return
    if sorted(evens) != list(range(2, 2 * n + 1, 2)):
        raise NameError_(f"even partners {evens} are not a permutation of the even labels")
    if not over[0]:
        raise NameError_("label 1 must be an overcrossing")


def make_name(evens: tuple[int, ...], over: tuple[bool, ...]) -> Name:
    """Validated Name constructor."""
    _validate_raw(evens, over)
    return Name(evens, over)


# ----------------------------------------------------------------------
# text format
# ----------------------------------------------------------------------

_PAIR_RE = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)")


def parse_name(text: str) -> Name:
    """Parse ``{(o,u),(o,u),...}`` (over label printed first) into a Name.

    Whitespace is tolerated anywhere.  Raises NameError_ on malformed
    syntax, duplicate or out-of-range labels, odd-odd or even-even pairs,
    or a label-1 pair with 1 on the under side.
    """
    stripped = re.sub(r"\s+", "", text)
    if not (stripped.startswith("{") and stripped.endswith("}")):
        raise NameError_(f"name must be brace-delimited: {text!r}")
    body = stripped[1:-1]
    if body == "":
        return Name((), ())
    consumed = _PAIR_RE.sub("", body)
    if consumed.strip(",") != "":
        raise NameError_(f"unparseable name fragment {consumed!r} in {text!r}")
    pairs = [(int(a), int(b)) for a, b in _PAIR_RE.findall(body)]
    n = len(pairs)
    evens = [0] * n
    over = [False] * n
    seen: set[int] = set()
    for o_lab, u_lab in pairs:
        for lab in (o_lab, u_lab):
            if not 1 <= lab <= 2 * n:
                raise NameError_(f"label {lab} out of range 1..{2 * n}")
            if lab in seen:
                raise NameError_(f"duplicate label {lab}")
            seen.add(lab)
        if (o_lab + u_lab) % 2 == 0:
            raise NameError_(f"pair ({o_lab},{u_lab}) does not join an odd and an even label")
        odd, even = (o_lab, u_lab) if o_lab % 2 == 1 else (u_lab, o_lab)
        k = (odd - 1) // 2
        evens[k] = even
        over[k] = odd == o_lab
    if n >= 1 and not over[0]:
        raise NameError_("label 1 must be an overcrossing")
    return Name(tuple(evens), tuple(over))


def format_name(nm: Name) -> str:
    """Render a Name in the table text format, over label first per pair."""
    if nm.n == 0:
        return "{}"
    cells = []
    for k, (e, ov) in enumerate(zip(nm.evens, nm.over)):
        o = 2 * k + 1
        cells.append(f"({o},{e})" if ov else f"({e},{o})")
    return "{" + ",".join(cells) + "}"


# ----------------------------------------------------------------------
# preference order
# ----------------------------------------------------------------------

def compare_names(n1: Name, n2: Name) -> int:
    """Total preference order: -1 if n1 is preferred, 0 if equal, +1 otherwise."""
    k1, k2 = n1.key(), n2.key()
    if k1 < k2:
        return -1
    if k1 > k2:
        return 1
    return 0


# ----------------------------------------------------------------------
# renaming variants and canonical form
# ----------------------------------------------------------------------
#
# Relabelings: the traversal may start at any of the 2n passages (label
# shift by k) and may run in either direction (reversal through k); roles
# travel with passages.  After a relabeling, if label 1 ended up on the
# under strand, all roles are flipped (the mirror image has the same name).
# That gives at most 4n variants of a name.


def _tables(evens: tuple[int, ...], over: tuple[bool, ...]):
    """1-indexed partner and over-role lookups by label."""
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


def variants_raw(evens: tuple[int, ...], over: tuple[bool, ...]) -> Iterator[RawName]:
    """Yield all <= 4n relabeled variants (with duplicates) of a raw name."""
    n = len(evens)
    if n == 0:
        yield ((), ())
        return
    m = 2 * n
    partner, over_at = _tables(evens, over)
    for rev in (False, True):
        for k in range(m):
            ev = [0] * n
            ov = [False] * n
            if rev:
                # sigma(l) = k - l mod, its own inverse
                for t in range(n):
                    src = (k - (2 * t + 1) - 1) % m + 1
                    ev[t] = (k - partner[src] - 1) % m + 1
                    ov[t] = over_at[src]
            else:
                # sigma(l) = l + k mod, inverse subtracts k
                for t in range(n):
                    src = (2 * t + 1 - k - 1) % m + 1
                    ev[t] = (partner[src] + k - 1) % m + 1
                    ov[t] = over_at[src]
            if not ov[0]:
                ov = [not o for o in ov]
            yield (tuple(ev), tuple(ov))


def canonical_raw(evens: tuple[int, ...], over: tuple[bool, ...]) -> RawName:
    """The preference-minimal variant of a raw name (hot path).

    Equivalent to min(variants_raw(...)) but with a cheap first-element
    prefilter and early-abort comparisons.
    """
    n = len(evens)
    if n == 0:
        return ((), ())
    m = 2 * n
    partner, over_at = _tables(evens, over)

    # First pass: the leading even partner each transform would produce.
    # Only transforms achieving the minimum can yield the canonical form.
    firsts: list[tuple[int, bool, int]] = []  # (first_even, rev, k)
    best_first = m + 1
    for k in range(m):
        src = (-k) % m + 1 if k else 1
        f = (partner[src] + k - 1) % m + 1
        if f < best_first:
            best_first = f
        firsts.append((f, False, k))
    for k in range(m):
        src = (k - 2) % m + 1
        f = (k - partner[src] - 1) % m + 1
        if f < best_first:
            best_first = f
        firsts.append((f, True, k))

    best_ev: tuple[int, ...] | None = None
    best_ov: tuple[bool, ...] | None = None
    for f, rev, k in firsts:
        if f != best_first:
            continue
        ev = [0] * n
        if rev:
            for t in range(n):
                src = (k - (2 * t + 1) - 1) % m + 1
                ev[t] = (k - partner[src] - 1) % m + 1
        else:
            for t in range(n):
                src = (2 * t + 1 - k - 1) % m + 1
                ev[t] = (partner[src] + k - 1) % m + 1
        tev = tuple(ev)
        if best_ev is not None and tev > best_ev:
            continue
        if rev:
            ov = [over_at[(k - (2 * t + 1) - 1) % m + 1] for t in range(n)]
        else:
            ov = [over_at[(2 * t + 1 - k - 1) % m + 1] for t in range(n)]
        if not ov[0]:
            ov = [not o for o in ov]
        tov = tuple(ov)
        if best_ev is None or tev < best_ev or (tev == best_ev and _role_key(tov) < _role_key(best_ov)):
            best_ev, best_ov = tev, tov
    assert best_ev is not None and best_ov is not None
    return (best_ev, best_ov)


def _role_key(ov: tuple[bool, ...]) -> tuple[bool, ...]:
    # over=True is preferred, so invert for min-comparison
    return tuple(not o for o in ov)


def name_variants(nm: Name) -> set[Name]:
    """All distinct relabeled variants of nm (<= 4n of them)."""
    if nm.n == 0:
        return {nm}
    return {Name(ev, ov) for ev, ov in variants_raw(nm.evens, nm.over)}


def canonicalize(nm: Name) -> Name:
    """The preference-minimum of name_variants(nm); idempotent."""
    ev, ov = canonical_raw(nm.evens, nm.over)
    return Name(ev, ov)


# ----------------------------------------------------------------------
# structural predicates
# ----------------------------------------------------------------------

def connected_sum_raw(evens: tuple[int, ...]) -> bool:
    """True iff the pairing splits over a proper label interval.

    A name is a connected sum when some interval [k,l] of labels, other
    than the whole range, contains between 2 and n-2 complete pairs and no
    half-pairs: the knot then factors into the two closed-up sides.
    Single-pair intervals are curls, not sums, and are excluded.
    """
    n = len(evens)
    if n < 4:
        return False
    m = 2 * n
    partner = [0] * (m + 1)
    for k in range(n):
        o = 2 * k + 1
        partner[o] = evens[k]
        partner[evens[k]] = o
    for k in range(1, m + 1):
        hi = k
        for t in range(k, m + 1):
            if t > hi:
                hi = t
            p = partner[t]
            if p < k:
                break  # pairs below k: no interval starting at k closes at or past t
            if p > hi:
                hi = p
            if t == hi:
                # [k, t] contains complete pairs only
                inside = (t - k + 1) // 2
                if 2 <= inside <= n - 2 and not (k == 1 and t == m):
                    return True
    return False


def is_connected_sum(nm: Name) -> bool:
    """True iff nm's pairing splits over a proper label interval (see above)."""
    return connected_sum_raw(nm.evens)


def to_gauss_word(nm: Name) -> tuple[int, ...]:
    """Signed crossing sequence: position t holds the 1-based crossing
    index of label t, positive iff t is the over passage."""
    n = nm.n
    word = [0] * (2 * n)
    for k in range(n):
        o = 2 * k + 1
        e = nm.evens[k]
        if nm.over[k]:
            word[o - 1] = k + 1
            word[e - 1] = -(k + 1)
        else:
            word[o - 1] = -(k + 1)
            word[e - 1] = k + 1
    return tuple(word)
