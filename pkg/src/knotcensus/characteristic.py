"""The knot characteristic: a normalized determinant in one variable s.

Each crossing of a diagram relates the colors of the three strands that
meet there; writing the relations on the successive differences
x_i = a_{i+1} - a_i of strand colors gives n linear equations in n
unknowns with coefficients in Z[s].  For a crossing whose under strand i
ends beneath over strand j the row is

    x_i + (s+1) * (x_j + x_{j+1} + ... + x_{i-1}) = 0    (positive)
    x_i - (s+1) * (x_j + x_{j+1} + ... + x_i)     = 0    (negative)

with cyclic strand indices; the sums expand the color difference between
strands j and i (respectively i+1) and are empty when they start where
they end.  The determinant of the system, divided by (s+1)^c for a
diagram with c crossings, depends only on the knot up to the
normalizations below, and is reported as a pair: numerator polynomial
and the exponent nu of the denominator (s+1)^nu.

Normalization: factors of (s+1) are cancelled into the denominator
exponent while the numerator vanishes at s = -1; unit factors +-s^m are
stripped; the leading coefficient is made positive; and of the numerator
and its reversal (the mirror image's numerator) the lexicographically
smaller coefficient sequence is kept.
"""

from __future__ import annotations

from dataclasses import dataclass

from .codes import Name
from .diagrams import Embedding, crossing_signs, embed, strands_of
from .shadows import Shadow

Poly = list[int]  # coefficients, lowest degree first


# ----------------------------------------------------------------------
# integer polynomial helpers
# ----------------------------------------------------------------------

def _trim(p: Poly) -> Poly:
    while p and p[-1] == 0:
        p.pop()
    return p


def _add(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                  for i in range(n)])


def _sub(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)
                  for i in range(n)])


def _mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim(out)


def _divexact(a: Poly, b: Poly) -> Poly:
    """Exact polynomial division; raises if the remainder is nonzero."""
    if not a:
        return []
    rem = list(a)
    out = [0] * (len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        q, r = divmod(rem[i + len(b) - 1], lead)
        if r:
            raise ArithmeticError("inexact polynomial division")
        out[i] = q
        if q:
            for j, bj in enumerate(b):
                rem[i + j] -= q * bj
    if any(rem):
        raise ArithmeticError("inexact polynomial division")
    return _trim(out)


def poly_determinant(mat: list[list[Poly]]) -> Poly:
    """Fraction-free (Bareiss) determinant of a matrix of polynomials."""
    n = len(mat)
    if n == 0:
        return [1]
    m = [[list(p) for p in row] for row in mat]
    sign = 1
    prev: Poly = [1]
    for r in range(n - 1):
        if not m[r][r]:
            for rr in range(r + 1, n):
                if m[rr][r]:
                    m[r], m[rr] = m[rr], m[r]
                    sign = -sign
                    break
            else:
                return []
        for i in range(r + 1, n):
            for j in range(r + 1, n):
                num = _sub(_mul(m[r][r], m[i][j]), _mul(m[i][r], m[r][j]))
                m[i][j] = _divexact(num, prev) if num else []
            m[i][r] = []
        prev = m[r][r]
    det = m[n - 1][n - 1]
    return [-c for c in det] if sign < 0 else det


# ----------------------------------------------------------------------
# the characteristic
# ----------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class CharPoly:
    """Numerator coefficients (highest degree first) over (s+1)^nu."""

    coeffs: tuple[int, ...]
    nu: int

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_palindromic(self) -> bool:
        return self.coeffs == tuple(reversed(self.coeffs))

    def __str__(self) -> str:
        return format_characteristic(self)


def coloring_system(nm: Name, signs: tuple[int, ...]) -> list[list[Poly]]:
    """The n x n strand-difference system of nm with the given signs.

    Row k comes from crossing k+1; column t is the coefficient of x_{t+1}
    as a polynomial in s.  A crossing with over strand j and under-in
    strand i contributes (s+1) on x_j plus a weight on every x_t for t in
    the cyclic strand range (j..i]: weight 1 at a positive crossing, s at
    a negative one.  When i == j (a curl) only the (s+1) term remains, so
    each curl multiplies the determinant by exactly (s+1)."""
    n = nm.n
    sp = strands_of(nm)
    s_plus_1: Poly = [1, 1]
    rows: list[list[Poly]] = []
    for k in range(n):
        i, _, j = sp.crossing_strands[k]
        row: list[Poly] = [[] for _ in range(n)]
        row[j - 1] = _add(row[j - 1], s_plus_1)
        # weight 1 on the range for a positive crossing, s for a negative
        step: Poly = [1] if signs[k] > 0 else [0, 1]
        if i != j:
            t = j % n + 1
            while True:
                row[t - 1] = _add(row[t - 1], step)
                if t == i:
                    break
                t = t % n + 1
        rows.append(row)
    return rows


def characteristic_of(nm: Name, emb: Embedding | None = None) -> CharPoly:
    """The characteristic of the diagram nm.

    The unknot name gives CharPoly((1,), 0).  Raises ArithmeticError if
    the determinant vanishes identically, which no knot diagram
    produces."""
    n = nm.n
    if n == 0:
        return CharPoly((1,), 0)
    signs = crossing_signs(nm, emb)
    det = poly_determinant(coloring_system(nm, signs))
    if not det:
        raise ArithmeticError(f"vanishing determinant for {nm}")
    return normalize_characteristic(det, n)


def normalize_characteristic(det: Poly, crossings: int) -> CharPoly:
    """Apply the unit and mirror normalizations to det / (s+1)^crossings."""
    p = list(det)
    nu = crossings
    s_plus_1: Poly = [1, 1]
    while nu > 0 and _eval_at(p, -1) == 0:
        p = _divexact(p, s_plus_1)
        nu -= 1
    # strip units +-s^m
    m = 0
    while p[m] == 0:
        m += 1
    p = p[m:]
    if p[-1] < 0:
        p = [-c for c in p]
    high_first = tuple(reversed(p))
    mirrored = tuple(p)  # reversal of high_first
    if mirrored[0] < 0:
        mirrored = tuple(-c for c in mirrored)
    return CharPoly(min(high_first, mirrored), nu)


def _eval_at(p: Poly, x: int) -> int:
    v = 0
    for c in reversed(p):
        v = v * x + c
    return v


def chirality_check(cp: CharPoly) -> bool:
    """True when the characteristic certifies chirality (no mirror
    symmetry): a palindromic numerator is compatible with amphichirality,
    a non-palindromic one rules it out."""
    return not cp.is_palindromic()


def crossing_bound(cp: CharPoly) -> int:
    """Lower bound for the crossing number of any diagram of the knot."""
    return cp.nu


# ----------------------------------------------------------------------
# text format
# ----------------------------------------------------------------------

def format_characteristic(cp: CharPoly) -> str:
    """Render as (c_r s^r + ... + c_0)(s+1)^-nu, e.g.
    ``(s^3+3s^2+3s+2)(s+1)^-3``; the unknot's value prints as ``1``."""
    if cp.coeffs == (1,) and cp.nu == 0:
        return "1"
    terms = []
    r = len(cp.coeffs) - 1
    for idx, c in enumerate(cp.coeffs):
        e = r - idx
        if c == 0:
            continue
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            var = "s" if e == 1 else f"s^{e}"
            body = var if mag == 1 else f"{mag}{var}"
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(("+" if c > 0 else "-") + body)
    num = "".join(terms) if terms else "0"
    if cp.nu == 0:
        return f"({num})"
    return f"({num})(s+1)^-{cp.nu}"


def parse_characteristic(text: str) -> CharPoly:
    """Parse the text format back (tolerating TeX-style ^{-k} braces)."""
    import re

    t = text.replace(" ", "").replace("{", "").replace("}", "")
    if t == "1":
        return CharPoly((1,), 0)
    m = re.fullmatch(r"\((?P<num>[^()]+)\)(?:\(s\+1\)\^-(?P<nu>\d+))?", t)
    if not m:
        raise ValueError(f"unparseable characteristic {text!r}")
    nu = int(m.group("nu") or 0)
    coeffs: dict[int, int] = {}
    for sign, mag, var, exp in re.findall(r"([+-]?)(\d*)(s?)(?:\^(\d+))?", m.group("num")):
        if not mag and not var:
            continue
        e = int(exp) if exp else (1 if var else 0)
        c = int(mag) if mag else 1
        if sign == "-":
            c = -c
        coeffs[e] = coeffs.get(e, 0) + c
    r = max(coeffs)
    return CharPoly(tuple(coeffs.get(e, 0) for e in range(r, -1, -1)), nu)
