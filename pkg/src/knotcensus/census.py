"""Census engine: sweep shadows, reduce diagrams, classify knots.

The census walks crossing levels 3..cutoff.  At each level it enumerates
canonical drawable shadows in lexicographic order of their generating
permutations, skipping two kinds:

* shadows containing a curl (two consecutive passages paired) — their
  canonical permutation has f(1) = 1 and every diagram over them can be
  reduced by a curl removal, so they add nothing that curl-free shadows
  do not;
* at the top two levels only, pairings that split over a proper label
  interval (diagram connected sums).  Lower-level split names are kept
  because they may be equivalent to names without the split property;
  at the last two levels they only cost time.

Each kept shadow is expanded into its essentially different diagrams and
every diagram is driven through the reduction search.  All irreducible
names discovered from one diagram belong to the same knot: fresh ones are
appended to the registry under the next free number, and the classes of
all of them are merged by projecting their class numbers onto the
smallest one.

Reduction graphs of different diagrams overlap heavily, so the engine
keeps one shared map of every name it has expanded.  A finished search
leaves behind a successor-closed region; a later diagram that touches the
region adopts its component — and the component's irreducible names —
without walking it again.  Worker processes trade that sharing for
parallelism, each keeping a private map; either way a diagram always
contributes the complete irreducible set of its component, so registry,
projections and journal come out identical.

A run can journal its progress: one record per registered name, per
effective merge and per finished shadow.  Replaying the journal restores
the state bit-exactly, and a resumed run continues after the last
finished shadow.
"""

from __future__ import annotations

from bisect import bisect_left, insort
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .codes import (Name, NameError_, RawName, connected_sum_raw, format_name,
                    parse_name)
from .diagrams import diagrams_of
from .moves import explore_raw
from .shadows import (Shadow, is_drawable, is_shadow_canonical,
                      permutations_in_order, shadow_of_permutation)


class CensusError(Exception):
    """Invalid census request or corrupt journal file."""


# ----------------------------------------------------------------------
# shadow sweep
# ----------------------------------------------------------------------

def _curl_free(f: tuple[int, ...]) -> bool:
    """True when no pairing of the shadow joins consecutive passages."""
    n = len(f)
    m = 2 * n
    for k, fk in enumerate(f):
        d = (2 * fk - 2 * k - 1) % m
        if d == 1 or d == m - 1:
            return False
    return True


def level_shadows(n: int, skip_split: bool) -> Iterator[tuple[tuple[int, ...], Shadow]]:
    """Kept shadows of n crossings, in generating-permutation order.

    Yields (f, shadow) for every canonical drawable curl-free shadow;
    skip_split additionally drops interval-split pairings (the rule for
    the top two levels of a run).
    """
    for f in permutations_in_order(n):
        if f[0] == 1 or not _curl_free(f):
            continue
        sh = shadow_of_permutation(f)
        if not is_shadow_canonical(sh):
            continue
        if skip_split and connected_sum_raw(sh.evens):
            continue
        if not is_drawable(sh):
            continue
        yield f, sh


# ----------------------------------------------------------------------
# census state
# ----------------------------------------------------------------------

@dataclass
class CensusState:
    """Registry of irreducible names with their equivalence bookkeeping.

    registry[k] is the name assigned number k; number 0 is the unknot {}.
    projection[k] points toward the smallest number shown equivalent to
    k (following it until it stabilizes identifies the class); marks[k]
    is True exactly when k has been superseded by a smaller number.
    cutoff is the run's crossing limit, progress the last finished
    shadow as (level, generating permutation).
    """

    registry: list[Name] = field(default_factory=list)
    projection: list[int] = field(default_factory=list)
    marks: list[bool] = field(default_factory=list)
    cutoff: int = 0
    progress: tuple[int, tuple[int, ...]] | None = None
    _index: dict[RawName, int] = field(init=False, repr=False)
    _order: list[tuple[tuple, int]] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self._index = {nm.raw(): k for k, nm in enumerate(self.registry)}
        self._order = sorted((nm.key(), k) for k, nm in enumerate(self.registry))

    @classmethod
    def initial(cls, cutoff: int = 0) -> "CensusState":
        """State holding only the unknot under number 0."""
        st = cls(cutoff=cutoff)
        st._register(Name((), ()))
        return st

    def project(self, k: int) -> int:
        """Class number of k: follow projections to the root, compressing."""
        p = self.projection
        while p[k] != k:
            p[k] = p[p[k]]
            k = p[k]
        return k

    def _register(self, nm: Name) -> int:
        k = len(self.registry)
        self.registry.append(nm)
        self.projection.append(k)
        self.marks.append(False)
        self._index[nm.raw()] = k
        insort(self._order, (nm.key(), k))
        return k

    def survivor_numbers(self) -> list[int]:
        """Unmarked self-projecting numbers of non-split names.

        Ordered by (crossing count, number); these are the distinct knot
        classes the run could not reduce or merge away.
        """
        out = [k for k, nm in enumerate(self.registry)
               if not self.marks[k] and self.projection[k] == k
               and not connected_sum_raw(nm.evens)]
        out.sort(key=lambda k: (self.registry[k].n, k))
        return out

    def survivor_counts(self) -> dict[int, int]:
        """Survivor class totals per crossing count."""
        counts: dict[int, int] = {}
        for k in self.survivor_numbers():
            c = self.registry[k].n
            counts[c] = counts.get(c, 0) + 1
        return counts

    def survivor_names(self) -> list[Name]:
        """Survivor names in preference order (crossing count first)."""
        return sorted((self.registry[k] for k in self.survivor_numbers()),
                      key=Name.key)


def registry_lookup(st: CensusState, nm: Name) -> int | None:
    """Number assigned to nm, or None when nm was never registered.

    Binary search over the preference order of the registered names.
    """
    key = nm.key()
    i = bisect_left(st._order, (key,))
    if i < len(st._order) and st._order[i][0] == key:
        return st._order[i][1]
    return None


def class_merge(st: CensusState, numbers) -> CensusState:
    """Merge the classes of the given registered numbers onto the smallest.

    Every number's current projection is re-pointed to the minimum of
    those projections; superseded roots are marked.  Updates st in place
    and returns it.
    """
    nums = list(numbers)
    if not nums:
        raise CensusError("class_merge needs at least one number")
    for k in nums:
        if not 0 <= k < len(st.registry):
            raise CensusError(f"unregistered number {k}")
    _merge_effect(st, nums)
    return st


def _merge_effect(st: CensusState, numbers) -> tuple[int, list[int]]:
    """Apply a merge and report (target, re-pointed roots)."""
    roots = sorted({st.project(k) for k in numbers})
    tgt = roots[0]
    for r in roots[1:]:
        st.projection[r] = tgt
        st.marks[r] = True
    return tgt, roots[1:]


# ----------------------------------------------------------------------
# shared reduction search
# ----------------------------------------------------------------------

def _pref(raw: RawName) -> tuple:
    ev, ov = raw
    return (len(ev), ev, tuple(not o for o in ov))


class _Explorer:
    """Walker over the move graph with one shared visited map.

    Every expanded name is mapped to a group; groups touching each other
    are unioned.  After a component has been drained its region is
    successor-closed, so any later search stops at its border and adopts
    the component wholesale.
    """

    def __init__(self) -> None:
        self.seen: dict[bytes, int] = {}
        self.parent: list[int] = []
        self.irr: dict[int, set[RawName]] = {}

    def _find(self, g: int) -> int:
        p = self.parent
        while p[g] != g:
            p[g] = p[p[g]]
            g = p[g]
        return g

    def _union(self, a: int, b: int) -> int:
        ra, rb = self._find(a), self._find(b)
        if ra == rb:
            return ra
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        merged = self.irr.pop(rb, None)
        if merged:
            self.irr.setdefault(ra, set()).update(merged)
        return ra

    def component(self, raw: RawName) -> list[RawName]:
        """Irreducible names of raw's move component, preference-sorted."""
        key = bytes(raw[0] + raw[1])
        g = self.seen.get(key)
        if g is None:
            g = self._explore(raw, key)
        else:
            g = self._find(g)
        return sorted(self.irr.get(g, ()), key=_pref)

    def _explore(self, raw: RawName, key: bytes) -> int:
        seen = self.seen
        gid = len(self.parent)
        self.parent.append(gid)
        seen[key] = gid
        stack = [raw]
        while stack:
            node = stack.pop()
            succ, irreducible = explore_raw(node, True)
            if irreducible:
                self.irr.setdefault(self._find(gid), set()).add(node)
            for s in succ:
                k2 = bytes(s[0] + s[1])
                g2 = seen.get(k2)
                if g2 is None:
                    seen[k2] = gid
                    stack.append(s)
                else:
                    self._union(gid, g2)
        return self._find(gid)


# ----------------------------------------------------------------------
# journal
# ----------------------------------------------------------------------

def _format_shadow(f: tuple[int, ...]) -> str:
    return ",".join(map(str, f))


def replay_journal(path: str) -> CensusState:
    """Rebuild a CensusState from its journal, validating every record."""
    st: CensusState | None = None
    with open(path, encoding="ascii") as fh:
        for lineno, line in enumerate(fh, 1):
            parts = line.split()
            if not parts:
                continue
            try:
                tag = parts[0]
                if tag == "C":
                    if st is not None:
                        raise CensusError("repeated C record")
                    st = CensusState.initial(cutoff=int(parts[1]))
                elif st is None:
                    raise CensusError("journal must open with a C record")
                elif tag == "N":
                    num = int(parts[1])
                    if num != len(st.registry):
                        raise CensusError(f"number {num} out of sequence")
                    st._register(parse_name(parts[2]))
                elif tag == "M":
                    tgt = int(parts[1])
                    losers = [int(x) for x in parts[2:]]
                    if not losers:
                        raise CensusError("merge without superseded numbers")
                    for r in losers:
                        if not tgt < r < len(st.registry):
                            raise CensusError(f"bad merge target {tgt} <- {r}")
                        st.projection[r] = tgt
                        st.marks[r] = True
                elif tag == "S":
                    level = int(parts[1])
                    f = tuple(int(x) for x in parts[2].split(","))
                    if len(f) != level or sorted(f) != list(range(1, level + 1)):
                        raise CensusError("malformed shadow record")
                    st.progress = (level, f)
                else:
                    raise CensusError(f"unknown record {tag!r}")
            except CensusError as exc:
                raise CensusError(f"{path}:{lineno}: {exc}") from None
            except (ValueError, IndexError, NameError_) as exc:
                raise CensusError(f"{path}:{lineno}: corrupt record "
                                  f"{line.strip()!r}") from exc
    if st is None:
        raise CensusError(f"{path}: empty journal")
    return st


# ----------------------------------------------------------------------
# the run
# ----------------------------------------------------------------------

_worker_explorer: _Explorer | None = None


def _expand_shadow_job(f: tuple[int, ...]):
    """Worker body: expand one shadow with the process-local explorer."""
    global _worker_explorer
    if _worker_explorer is None:
        _worker_explorer = _Explorer()
    ex = _worker_explorer
    sh = shadow_of_permutation(f)
    return f, [ex.component(nm.raw()) for nm in diagrams_of(sh)]


def _apply_shadow(st: CensusState, level: int, f: tuple[int, ...],
                  seed_lists, out) -> None:
    """Register and merge one shadow's reduction results, then journal it."""
    for names in seed_lists:
        nums = []
        for raw in names:
            k = st._index.get(raw)
            if k is None:
                nm = Name(*raw)
                k = st._register(nm)
                if out:
                    out.write(f"N {k} {format_name(nm)}\n")
            nums.append(k)
        if nums:
            tgt, losers = _merge_effect(st, nums)
            if losers and out:
                out.write(f"M {tgt} {' '.join(map(str, losers))}\n")
    st.progress = (level, f)
    if out:
        out.write(f"S {level} {_format_shadow(f)}\n")
        out.flush()


def run_census(cutoff: int, *, journal: str | None = None, resume: bool = False,
               workers: int = 1,
               progress: Callable[[int, int, int], None] | None = None,
               ) -> CensusState:
    """Run the census up to the given crossing cutoff.

    journal names an optional record file for the run; with resume=True
    it is replayed first and the run continues after its last finished
    shadow (the journalled cutoff must match).  workers > 1 expands
    shadows on a process pool; the resulting state and journal are
    identical to a sequential run.  progress, when given, is called as
    progress(level, done, total) after every shadow of a level.
    """
    if cutoff < 0:
        raise CensusError("cutoff must be >= 0")
    if workers < 1:
        raise CensusError("workers must be >= 1")
    if resume:
        if journal is None:
            raise CensusError("resume needs a journal path")
        st = replay_journal(journal)
        if st.cutoff != cutoff:
            raise CensusError(
                f"journal belongs to cutoff {st.cutoff}, not {cutoff}")
    else:
        st = CensusState.initial(cutoff=cutoff)
    out = open(journal, "a" if resume else "w", encoding="ascii") if journal else None
    try:
        if out and not resume:
            out.write(f"C {cutoff}\n")
            out.flush()
        _sweep(st, cutoff, workers, out, progress)
    finally:
        if out:
            out.close()
    return st


def _sweep(st: CensusState, cutoff: int, workers: int, out, progress) -> None:
    start_level, after = 3, None
    if st.progress is not None:
        start_level, after = st.progress
    explorer = _Explorer()
    pool = None
    try:
        for level in range(start_level, cutoff + 1):
            skip_split = level >= cutoff - 1
            shadows = list(level_shadows(level, skip_split))
            if after is not None:
                shadows = [(f, sh) for f, sh in shadows if f > after]
                after = None
            total = len(shadows)
            if workers > 1 and total:
                if pool is None:
                    from multiprocessing import Pool
                    pool = Pool(workers)
                jobs = pool.imap(_expand_shadow_job,
                                 [f for f, _ in shadows], chunksize=1)
            else:
                jobs = ((f, [explorer.component(nm.raw())
                             for nm in diagrams_of(sh)])
                        for f, sh in shadows)
            for done, (f, seed_lists) in enumerate(jobs, 1):
                _apply_shadow(st, level, f, seed_lists, out)
                if progress is not None:
                    progress(level, done, total)
    finally:
        if pool is not None:
            pool.terminate()
            pool.join()
