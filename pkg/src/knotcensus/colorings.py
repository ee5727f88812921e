"""Color tests: explicit color tables and the linear [k, s] family.

A color test assigns one of finitely many "colors" to every strand of a
diagram, subject to a rule at each crossing that relates the incoming
under strand, the outgoing under strand, and the over strand.  A test is
passed when some assignment satisfies every crossing without using the
same color everywhere.  Both flavours below are invariant under the
three diagram moves, so the response is a property of the knot class.

Two families are provided:

* ``ColorTable`` — an explicit r x r table M, where M[i][j] is the color
  emerging when color i passes under color j.  Valid tables satisfy four
  rules (diagonal fixpoints, column bijectivity, a triangle-compatibility
  rule, and irreducibility); see ``validate_table``.

* ``LinearTest`` — the arithmetic family [k, s] over Z_k: the emerging
  color is (s+1)*over - s*in mod k.  Moduli are odd prime powers and the
  multiplier is normalized so that s <= s^-1 mod k (the inverse pair
  tests the mirror image and is dropped as redundant).
"""

from __future__ import annotations

# ---------------------------------------------------------------------------
# imports
# ---------------------------------------------------------------------------

from dataclasses import dataclass
from importlib import resources
from itertools import permutations
from math import gcd

from .codes import Name
from .diagrams import Embedding, crossing_signs, strands_of

# ---------------------------------------------------------------------------
# color tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ColorTable:
    """An explicit color test: rows[i-1][j-1] = color of i after passing
    under j.  ``label`` is a short display name ("T1" ... for the built-in
    tables, "" for generated ones)."""

    rows: tuple[tuple[int, ...], ...]
    label: str = ""

    @property
    def r(self) -> int:
        return len(self.rows)

    def apply(self, under: int, over: int) -> int:
        """Color emerging when ``under`` passes under ``over`` (1-based)."""
        return self.rows[under - 1][over - 1]

    def columns_inverted(self) -> "ColorTable":
        """The companion table with every column inverted.

        It answers "which color went in, given what came out": if
        M[i][j] = k then the inverted table maps (k, j) back to i.  The
        companion of a valid table is valid, and responds to a knot the
        way the original responds to its mirror image."""
        r = self.r
        inv = [[0] * r for _ in range(r)]
        for j in range(r):
            for i in range(r):
                inv[self.rows[i][j] - 1][j] = i + 1
        return ColorTable(tuple(tuple(row) for row in inv), self.label)


def validate_table(M) -> str | None:
    """Return None when M is a valid irreducible color table, else a
    description of the first violation.

    Checks, in order: the diagonal rule M[i][i] = i (move-1 coherence);
    column bijectivity (move-2 coherence); the triangle rule
    M[i][j]=k, M[l][j]=m, M[l][i]=n  =>  M[m][k] = M[n][j] (move-3
    coherence); and irreducibility (no proper non-empty subset of colors
    closed under passing beneath every color)."""
    rows = tuple(tuple(int(x) for x in row) for row in M)
    r = len(rows)
    if r == 0:
        return "empty table"
    for i, row in enumerate(rows):
        if len(row) != r:
            return f"not square: row {i + 1} has {len(row)} entries"
        for x in row:
            if not 1 <= x <= r:
                return f"entry {x} out of range 1..{r} in row {i + 1}"
    for i in range(r):
        if rows[i][i] != i + 1:
            return f"diagonal rule fails at color {i + 1}"
    for j in range(r):
        if sorted(rows[i][j] for i in range(r)) != list(range(1, r + 1)):
            return f"column {j + 1} is not a bijection"
    for j in range(r):
        for i in range(r):
            for l in range(r):
                k = rows[i][j]
                m = rows[l][j]
                n = rows[l][i]
                if rows[m - 1][k - 1] != rows[n - 1][j]:
                    return (f"triangle rule fails at i={i + 1}, j={j + 1}, "
                            f"l={l + 1}")
    reach = {1}
    frontier = [1]
    while frontier:
        c = frontier.pop()
        for j in range(r):
            nxt = rows[c - 1][j]
            if nxt not in reach:
                reach.add(nxt)
                frontier.append(nxt)
    if len(reach) != r:
        return f"reducible: colors {sorted(reach)} form a closed subset"
    return None


# ---------------------------------------------------------------------------
# built-in tables
# ---------------------------------------------------------------------------

_BUILTIN: tuple[ColorTable, ...] | None = None


def builtin_tables() -> tuple[ColorTable, ...]:
    """The eleven shipped color tests (3,4,5,5,6,6,7,7,7,8,8 colors),
    loaded from the package data file and validated."""
    global _BUILTIN
    if _BUILTIN is None:
        text = (resources.files("knotcensus") / "data" / "builtin_tables.txt"
                ).read_text(encoding="ascii")
        tables: list[ColorTable] = []
        label = ""
        r = 0
        rows: list[tuple[int, ...]] = []

        def flush() -> None:
            if not rows:
                return
            if len(rows) != r:
                raise ValueError(f"table {label}: expected {r} rows")
            t = ColorTable(tuple(rows), label)
            bad = validate_table(t.rows)
            if bad is not None:
                raise ValueError(f"table {label}: {bad}")
            tables.append(t)
            rows.clear()

        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("test "):
                flush()
                parts = line.split()
                label = "T" + parts[1]
                r = int(parts[3])
            else:
                rows.append(tuple(int(x) for x in line.split()))
        flush()
        _BUILTIN = tuple(tables)
    return _BUILTIN


# ---------------------------------------------------------------------------
# table generation
# ---------------------------------------------------------------------------


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    # (p o q)(x) = p(q(x)), 0-based tuples
    return tuple(p[x] for x in q)


def _inverse(p: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def _perm_key(rows: tuple[tuple[int, ...], ...]) -> tuple[int, ...]:
    """Lexicographically-minimal flattening of the table over all color
    relabelings: the canonical form of its color-permutation orbit."""
    r = len(rows)
    best: tuple[int, ...] | None = None
    for s in permutations(range(r)):
        inv = _inverse(s)
        flat = tuple(s[rows[inv[i]][inv[j]] - 1] + 1
                     for i in range(r) for j in range(r))
        if best is None or flat < best:
            best = flat
    assert best is not None
    return best


def table_key(t: ColorTable) -> tuple[int, ...]:
    """Canonical form of t's orbit under color relabeling and column
    inversion; two tables test the same thing (up to mirror image) iff
    their keys are equal."""
    return min(_perm_key(t.rows), _perm_key(t.columns_inverted().rows))


def generate_tables(r: int) -> tuple[ColorTable, ...]:
    """All valid irreducible r-color tables, one representative per orbit
    under color relabeling and column inversion, sorted by canonical key.

    The search assigns the r columns (each a permutation fixing its own
    index) with constraint propagation: once columns p_i and p_j are
    chosen, the triangle rule forces column p_j(i) to equal
    p_j o p_i o p_j^-1, which prunes the naive ((r-1)!)^r space to
    seconds for r <= 6.  Larger r is allowed but time grows quickly."""
    if r < 2:
        return ()
    fixing: dict[int, list[tuple[int, ...]]] = {}
    for j in range(r):
        cands = []
        for p in permutations(range(r)):
            if p[j] == j:
                cands.append(p)
        fixing[j] = cands

    found: list[tuple[tuple[int, ...], ...]] = []

    def propagate(cols: dict[int, tuple[int, ...]]) -> bool:
        """Close cols under the conjugation consequence of the triangle
        rule; return False on contradiction."""
        queue = list(cols)
        while queue:
            b = queue.pop()
            for a in list(cols):
                for x, y in ((a, b), (b, a)):
                    px, py = cols[x], cols[y]
                    target = py[x]
                    derived = _compose(py, _compose(px, _inverse(py)))
                    old = cols.get(target)
                    if old is None:
                        cols[target] = derived
                        queue.append(target)
                    elif old != derived:
                        return False
        return True

    def extend(cols: dict[int, tuple[int, ...]]) -> None:
        missing = [j for j in range(r) if j not in cols]
        if not missing:
            rows = tuple(tuple(cols[j][i] + 1 for j in range(r))
                         for i in range(r))
            if validate_table(rows) is None:
                found.append(rows)
            return
        j = missing[0]
        for p in fixing[j]:
            trial = dict(cols)
            trial[j] = p
            if propagate(trial):
                extend(trial)

    extend({})

    by_key: dict[tuple[int, ...], tuple[tuple[int, ...], ...]] = {}
    for rows in found:
        k = min(_perm_key(rows),
                _perm_key(ColorTable(rows).columns_inverted().rows))
        if k not in by_key or rows < by_key[k]:
            by_key[k] = rows
    return tuple(ColorTable(by_key[k]) for k in sorted(by_key))


# ---------------------------------------------------------------------------
# linear tests
# ---------------------------------------------------------------------------


def _is_odd_prime_power(k: int) -> bool:
    if k < 3 or k % 2 == 0:
        return False
    p = 3
    while p * p <= k:
        if k % p == 0:
            break
        p += 2
    else:
        return True  # k itself prime
    while k % p == 0:
        k //= p
    return k == 1


@dataclass(frozen=True)
class LinearTest:
    """The arithmetic color test [k, s]: colors live in Z_k and the
    emerging color is (s+1)*over - s*in mod k.  k must be an odd prime
    power; s and s+1 must be invertible mod k; s is normalized to the
    smaller of the pair {s, s^-1 mod k} (the other member tests the
    mirror image)."""

    k: int
    s: int

    def __post_init__(self) -> None:
        if not _is_odd_prime_power(self.k):
            raise ValueError(f"modulus {self.k} is not an odd prime power")
        if not 1 <= self.s <= self.k - 2:
            raise ValueError(f"multiplier {self.s} out of range")
        if gcd(self.s, self.k) != 1 or gcd(self.s + 1, self.k) != 1:
            raise ValueError(f"[{self.k},{self.s}]: s and s+1 must be units")

    @property
    def label(self) -> str:
        return f"[{self.k},{self.s}]"


def linear_tests(k_max: int) -> tuple[LinearTest, ...]:
    """All normalized [k, s] with 3 <= k <= k_max, ordered by (k, s)."""
    out: list[LinearTest] = []
    for k in range(3, k_max + 1, 2):
        if not _is_odd_prime_power(k):
            continue
        for s in range(1, k - 1):
            if gcd(s, k) != 1 or gcd(s + 1, k) != 1:
                continue
            if s <= pow(s, -1, k):
                out.append(LinearTest(k, s))
    return tuple(out)


# ---------------------------------------------------------------------------
# responses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Response:
    """Number of essentially distinct successful colorings (0 = fail)."""

    count: int

    def __int__(self) -> int:
        return self.count

    def __bool__(self) -> bool:
        return self.count > 0


def response(nm: Name, test: "ColorTable | LinearTest",
             emb: Embedding | None = None,
             signs: tuple[int, ...] | None = None,
             *, raw_counts: bool = False) -> Response:
    """Apply one color test to a knot diagram.

    The count is the number of essentially distinct successful colorings:
    colorings related by a symmetry of the test itself are counted once,
    and unicolor colorings are dropped.  For a ColorTable the symmetries
    are the color permutations generated by its columns (for an
    irreducible table they act transitively, which is why one strand's
    color may be normalized); for a LinearTest they are the affine maps
    a -> c1 + c2*a with c2 a unit mod k.  With ``raw_counts`` the
    unnormalized total number of valid colorings is returned instead.

    The unknot has no crossings and only unicolor assignments, so its
    response is 0 for every test."""
    if nm.n == 0:
        return Response(0)
    if signs is None:
        signs = crossing_signs(nm, emb)
    if isinstance(test, ColorTable):
        return Response(_table_count(nm, test, signs, raw_counts))
    if isinstance(test, LinearTest):
        return Response(_linear_count(nm, test, signs, raw_counts))
    raise TypeError(f"not a color test: {test!r}")


# -- explicit tables: backtracking with propagation -------------------------


def _inner_group(rows: tuple[tuple[int, ...], ...]) -> list[tuple[int, ...]]:
    """The color-permutation group generated by the table's columns
    (0-based permutation tuples).  Applying any member to every strand
    color maps valid colorings to valid colorings."""
    r = len(rows)
    gens = {tuple(rows[i][j] - 1 for i in range(r)) for j in range(r)}
    identity = tuple(range(r))
    group = {identity}
    frontier = [identity]
    while frontier:
        g = frontier.pop()
        for h in gens:
            c = _compose(h, g)
            if c not in group:
                group.add(c)
                frontier.append(c)
    return sorted(group)


def _table_count(nm: Name, table: ColorTable, signs: tuple[int, ...],
                 raw: bool) -> int:
    n = nm.n
    r = table.r
    sp = strands_of(nm)
    fwd = table.rows                       # fwd[i][j]: i under j -> out
    bwd = table.columns_inverted().rows    # bwd[o][j]: out o under j -> in
    # crossing records (in, out, over, positive?) as 0-based strand indices
    cross = [(i - 1, o - 1, j - 1, signs[k] > 0)
             for k, (i, o, j) in enumerate(sp.crossing_strands)]
    incident: list[list[int]] = [[] for _ in range(n)]
    for c, (i, o, j, _) in enumerate(cross):
        for t in {i, o, j}:
            incident[t].append(c)

    def propagate(color: list[int], seed: int) -> bool:
        stack = [seed]
        while stack:
            t = stack.pop()
            for c in incident[t]:
                i, o, j, pos = cross[c]
                ci, co, cj = color[i], color[o], color[j]
                if cj == 0:
                    # over color is not derivable in general: checked once
                    # the assignment is complete
                    continue
                rule = fwd if pos else bwd
                if ci and not co:
                    color[o] = rule[ci - 1][cj - 1]
                    stack.append(o)
                elif co and not ci:
                    # invert the (bijective) column: swap rule direction
                    inv = bwd if pos else fwd
                    color[i] = inv[co - 1][cj - 1]
                    stack.append(i)
                elif ci and co:
                    if rule[ci - 1][cj - 1] != co:
                        return False
        return True

    def complete_ok(color: list[int]) -> bool:
        return all(
            (fwd if pos else bwd)[color[i] - 1][color[j] - 1] == color[o]
            for i, o, j, pos in cross)

    solutions: list[tuple[int, ...]] = []

    def search(color: list[int]) -> None:
        try:
            t = color.index(0)
        except ValueError:
            if complete_ok(color):
                solutions.append(tuple(color))
            return
        for c in range(1, r + 1):
            trial = color[:]
            trial[t] = c
            if propagate(trial, t):
                search(trial)

    search([0] * n)
    if raw:
        return len(solutions)
    # one count per orbit under the table's own symmetries, unicolor dropped
    group = _inner_group(table.rows)
    seen: set[tuple[int, ...]] = {(c,) * n for c in range(1, r + 1)}
    count = 0
    for a in solutions:
        if a in seen:
            continue
        count += 1
        for g in group:
            seen.add(tuple(g[x - 1] + 1 for x in a))
    return count


# -- linear tests: Smith-form solution counting -----------------------------


def _diagonalize_mod(mat: list[list[int]], k: int,
                     p: int) -> tuple[list[int], list[list[int]]]:
    """Diagonalize a square matrix over Z_k, k a power of the prime p.

    Returns (diagonal entries, V) with A congruent to U*D*V^-1 for
    invertible U, V over Z_k, so solutions of A a = 0 (mod k) are exactly
    a = V y with d_t y_t = 0 (mod k) coordinate-wise.  Over Z_{p^e} the
    entry of minimal p-valuation divides every other entry, so one exact
    clearing pass per pivot suffices and entries never leave [0, k)."""
    n = len(mat)
    m = [[x % k for x in row] for row in mat]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def val(x: int) -> int:
        if x == 0:
            return 10 ** 9
        v = 0
        while x % p == 0:
            x //= p
            v += 1
        return v

    diag: list[int] = []
    for top in range(n):
        piv = None
        best = 10 ** 9
        for i in range(top, n):
            for j in range(top, n):
                v = val(m[i][j])
                if v < best:
                    best = v
                    piv = (i, j)
                    if v == 0:
                        break
            if best == 0:
                break
        if piv is None or m[piv[0]][piv[1]] == 0:
            diag.extend([0] * (n - top))
            break
        pi, pj = piv
        m[top], m[pi] = m[pi], m[top]
        if pj != top:
            for row in m:
                row[top], row[pj] = row[pj], row[top]
            for row in V:
                row[top], row[pj] = row[pj], row[top]
        # scale the pivot row by the inverse of the pivot's unit part
        pw = p ** best
        u_inv = pow(m[top][top] // pw, -1, k)
        m[top] = [x * u_inv % k for x in m[top]]
        for i in range(top + 1, n):
            if m[i][top]:
                f = m[i][top] // pw
                m[i] = [(x - f * y) % k for x, y in zip(m[i], m[top])]
        for j in range(top + 1, n):
            if m[top][j]:
                g = m[top][j] // pw
                for i in range(n):
                    m[i][j] = (m[i][j] - g * m[i][top]) % k
                    V[i][j] = (V[i][j] - g * V[i][top]) % k
        diag.append(pw)
    return diag, V

_ENUM_LIMIT = 500000


def _linear_count(nm: Name, test: LinearTest, signs: tuple[int, ...],
                  raw: bool) -> int:
    n = nm.n
    k, s = test.k, test.s
    s_inv = pow(s, -1, k)
    sp = strands_of(nm)
    mat = [[0] * n for _ in range(n)]
    for c, (i, o, j) in enumerate(sp.crossing_strands):
        mult = s if signs[c] > 0 else s_inv
        # (mult+1)*over - mult*in - out = 0 (mod k)
        mat[c][j - 1] += mult + 1
        mat[c][i - 1] -= mult
        mat[c][o - 1] -= 1
    p = 3
    while k % p:
        p += 2
    diag, V = _diagonalize_mod(mat, k, p)
    gs = [gcd(d, k) if d else k for d in diag]
    total = 1
    for g in gs:
        total *= g
    if raw:
        return total
    # quotient out the affine re-colorings a -> c1 + c2*a (c2 a unit)
    units = [u for u in range(1, k) if gcd(u, k) == 1]
    stab_free = all(gcd(u - 1, k) == 1 for u in units if u != 1)
    if stab_free:
        # the affine group acts freely on non-unicolor solutions
        orbit = k * len(units)
        assert (total - k) % orbit == 0
        return (total - k) // orbit
    # prime-power modulus: enumerate the solution set and count orbits
    if total > _ENUM_LIMIT:
        raise RuntimeError(
            f"solution space of size {total} too large to enumerate")
    free = [(t, g) for t, g in enumerate(gs) if g > 1]
    sols: set[tuple[int, ...]] = set()
    idx = [0] * len(free)
    while True:
        y = [0] * n
        for (t, g), v in zip(free, idx):
            y[t] = v * (k // g)
        a = tuple(sum(V[i][t] * y[t] for t in range(n)) % k
                  for i in range(n))
        sols.add(a)
        pos = 0
        while pos < len(free) and idx[pos] + 1 == free[pos][1]:
            idx[pos] = 0
            pos += 1
        if pos == len(free):
            break
        idx[pos] += 1
    count = 0
    seen: set[tuple[int, ...]] = set(
        tuple((c % k,) * n for c in range(k)))  # unicolor orbit, dropped
    for a in sols:
        if a in seen:
            continue
        count += 1
        for c2 in units:
            for c1 in range(k):
                seen.add(tuple((c1 + c2 * x) % k for x in a))
    return count
