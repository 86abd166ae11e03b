"""Lattice paths, LGV determinants and rhombus tilings of notched regions.

Triangular-lattice geometry uses doubled horizontal coordinates so that
everything stays integral: a point is (x2, y) with real abscissa x2/2
and y the row height.  A cell is ('U', x2, y) for an up-pointing unit
triangle with bottom-left corner (x2, y), or ('D', x2, y) for a
down-pointing one with top-left corner (x2, y+1); both occupy row y.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

from .codec import conjugate, contained, diagram_dcode, fits, normalize

# unit moves in doubled coordinates
E0, E60, E120, E180, E240, E300 = (2, 0), (1, 1), (-1, 1), (-2, 0), (-1, -1), (1, -1)


class DomainError(ValueError):
    pass


class SizeError(ValueError):
    pass


def binomial(n, k):
    if n < 0:
        raise DomainError(f"binomial with negative upper index {n}")
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def path_count(A, E):
    dx, dy = E[0] - A[0], E[1] - A[1]
    if dx < 0 or dy < 0:
        return 0
    return comb(dx + dy, dx)


def bareiss_det(M):
    """Fraction-free determinant of an integer matrix."""
    M = [list(map(int, row)) for row in M]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for r in range(k + 1, n):
                if M[r][k] != 0:
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def _south_east_ordered(pts):
    return all(pts[i][0] >= pts[i + 1][0] and pts[i][1] <= pts[i + 1][1]
               for i in range(len(pts) - 1))


def lgv_count(starts, ends):
    """Number of non-intersecting path families A_i -> E_i (LGV)."""
    if len(starts) != len(ends):
        raise DomainError("need as many end points as starting points")
    if not (_south_east_ordered(starts) and _south_east_ordered(ends)):
        raise DomainError("points are not in south-east order")
    return bareiss_det([[path_count(A, E) for E in ends] for A in starts])


def _se_sort(pts):
    return sorted(pts, key=lambda p: (-p[0], p[1]))


def _checked_det(starts, ends):
    ends = _se_sort(ends)
    if not _south_east_ordered(ends):
        raise DomainError(f"end points {ends} cannot be put in south-east order")
    val = bareiss_det([[path_count(A, E) for E in ends] for A in starts])
    if val < 0:
        raise AssertionError(f"negative LGV determinant {val}")
    return val


def r_points(lam, mu, d, e, h, k):
    lam = normalize(lam)
    mu = normalize(mu)
    if not fits(lam, d) or not fits(mu, e):
        raise DomainError(f"containment violated: {lam} in ({d}^{d}), {mu} in ({e}^{e})")
    lam = lam + (0,) * (d - len(lam))
    mu = mu + (0,) * (e - len(mu))
    starts = [(-i, i) for i in range(1, d + e + 1)]
    ends = [(lam[j - 1] - j - e, h + d + e) for j in range(1, d + 1)]
    ends += [(k - 1, mu[j - 1] + e - j + 1) for j in range(1, e + 1)]
    return starts, ends


def count_r(lam, mu, d, e, h, k):
    """Rhombus tilings of the V-shaped region R(lam, mu, d, e, h, k)."""
    if h < 0 or k < 1:
        raise DomainError("need h >= 0 and k >= 1")
    starts, ends = r_points(lam, mu, d, e, h, k)
    return _checked_det(starts, ends)


def n_points(E, F, m, d):
    E, F = set(E), set(F)
    if len(F) != len(E) + 1:
        raise DomainError(f"|F| = {len(F)} must equal |E| + 1 = {len(E) + 1}")
    if not E <= set(range(1, d - 1)) or not F <= set(range(1, d + 1)):
        raise DomainError("E must lie in 1..d-2 and F in 1..d")
    starts = [(-i, i) for i in range(1, d)]
    ends = [(-d + j, m + 1) for j in sorted(E)]
    ends += [(d - j - 1, m - d + j + 1) for j in range(1, d + 1) if j not in F]
    return starts, ends


def count_N(E, F, m, d):
    """Tilings of the notched hexagon; notches at e_j (j in E) and f_j (j in F).

    Paths end at the top notches E_j and at the un-notched slots F_j of the
    upper-right side.  F normally avoids d (so F_d is an end point); a
    notch at f_d is accepted too, the corner expansion needs it.
    """
    starts, ends = n_points(E, F, m, d)
    return _checked_det(starts, ends)


def corner_pairs(d, with_fd=True):
    """All (E, F) with E in 1..d-2, F in 1..d (or 1..d-1), |F| = |E| + 1."""
    from itertools import combinations

    top = d if with_fd else d - 1
    out = []
    for s in range(0, d - 1):
        for E in combinations(range(1, d - 1), s):
            for F in combinations(range(1, top + 1), s + 1):
                out.append((frozenset(E), frozenset(F)))
    return out


def entry_r(lam_j, j, i, d, e, h):
    return binomial(lam_j - j + h + d, lam_j - j - e + i)


# ---------------------------------------------------------------- regions

@dataclass
class Region:
    kind: str
    params: dict
    cells: list = field(default_factory=list)

    def __post_init__(self):
        self.index = {c: t for t, c in enumerate(self.cells)}

    def neighbours(self, c):
        o, x2, y = c
        if o == "U":
            cand = [("D", x2 + 1, y), ("D", x2 - 1, y), ("D", x2, y - 1)]
        else:
            cand = [("U", x2 - 1, y), ("U", x2 + 1, y), ("U", x2, y + 1)]
        return [q for q in cand if q in self.index]

    def counts(self):
        up = sum(1 for c in self.cells if c[0] == "U")
        return up, len(self.cells) - up

    def to_json(self):
        return [[y, x2, o] for o, x2, y in self.cells]


def _walk(start, moves):
    pts = [start]
    for dx, dy in moves:
        x, y = pts[-1]
        pts.append((x + dx, y + dy))
    if pts[-1] != pts[0]:
        raise AssertionError(f"boundary walk does not close: {pts[0]} -> {pts[-1]}")
    return pts


def _inside(poly, px, py):
    # even-odd rule; centroids never lie on lattice lines
    inside = False
    n = len(poly) - 1
    for t in range(n):
        (x1, y1), (x2, y2) = poly[t], poly[t + 1]
        if (y1 > py) != (y2 > py):
            xc = x1 + (py - y1) * (x2 - x1) / (y2 - y1)
            if xc > px:
                inside = not inside
    return inside


def _cells_of(poly):
    ys = [p[1] for p in poly]
    xs = [p[0] for p in poly]
    cells = []
    for y in range(min(ys), max(ys)):
        for x2 in range(min(xs) - 2, max(xs) + 2):
            # up triangle with bottom-left corner (x2, y): centroid (x2+1, y+1/3)
            if (x2 - poly[0][0] - y) % 2 == 0 and _inside(poly, x2 + 1, y + 1 / 3):
                cells.append(("U", x2, y))
            # down triangle with top-left corner (x2, y+1)
            if (x2 - poly[0][0] - y - 1) % 2 == 0 and _inside(poly, x2 + 1, y + 2 / 3):
                cells.append(("D", x2, y))
    return cells


def single_walk(lam, d, h):
    code = diagram_dcode(lam, d)
    moves = [E0] * d + [E60] * (d + h)
    for t in reversed(range(2 * d)):
        moves += [E180] if code[t] == 1 else [E240, E120]
    moves += [E240] * h + [E300] * d
    return _walk((0, 0), moves)


def double_walk(lam, mu, d, e, h, k):
    a, b = h + d - e, k + e - d
    if a < 0 or b < 0:
        raise DomainError(f"valley sides negative (need h+d >= e and k+e >= d)")
    dc = diagram_dcode(lam, d)
    ec = diagram_dcode(mu, e)
    moves = [E180] * (d + e) + [E120] * h
    for t in range(2 * d):
        moves += [E60] if dc[t] == 1 else [E0, E120]
    moves += [E300] * a + [E60] * b
    for s in reversed(range(2 * e)):
        moves += [E300] if ec[s] == 1 else [E240, E0]
    moves += [E240] * k
    return _walk((-1, 0), moves)


def build_region(kind, lam, d, h, mu=None, e=None, k=None):
    """R(lam,d,h) ('single') or R(lam,mu,d,e,h,k) ('double') as a cell complex."""
    lam = normalize(lam)
    if kind == "single":
        poly = single_walk(lam, d, h)
        params = dict(lam=lam, d=d, h=h)
    elif kind == "double":
        mu = normalize(mu or ())
        poly = double_walk(lam, mu, d, e, h, k)
        params = dict(lam=lam, mu=mu, d=d, e=e, h=h, k=k)
    else:
        raise ValueError(kind)
    return Region(kind, params, _cells_of(poly))


MAX_CELLS = 400


def tilings_bruteforce(region, max_cells=MAX_CELLS):
    """Count perfect matchings of the cell adjacency graph."""
    n = len(region.cells)
    if n > max_cells:
        raise SizeError(f"{n} cells exceeds the guard {max_cells}")
    up, down = region.counts()
    if up != down:
        return 0
    # order cells bottom row first, left to right: the first uncovered cell
    # then only has partners to its right or above
    order = sorted(range(n), key=lambda t: (region.cells[t][2], region.cells[t][1], region.cells[t][0]))
    pos = {t: q for q, t in enumerate(order)}
    nb = [0] * n
    for t, c in enumerate(region.cells):
        for q in region.neighbours(c):
            nb[pos[t]] |= 1 << pos[region.index[q]]
    full = (1 << n) - 1

    @lru_cache(maxsize=None)
    def rec(covered):
        if covered == full:
            return 1
        free = ~covered & full
        i = (free & -free).bit_length() - 1
        opts = nb[i] & free
        total = 0
        while opts:
            b = opts & -opts
            total += rec(covered | (1 << i) | b)
            opts ^= b
        return total

    res = rec(0)
    rec.cache_clear()
    return res


def hexagon_walk(E, F, m, d):
    """Notched hexagon of count_N, drawn with the path-carrying edges horizontal.

    Clockwise from the left end of the base (the d-1 starting edges): the
    long left side, the e-side (notch j in E exposes the end E_j), the top
    side with slots f_d..f_1 (notch j in F hides F_j), then back down.
    """
    E, F = set(E), set(F)
    moves = [E120] * (m - d + 2)
    for j in range(1, d - 1):
        moves += [E0, E120] if j in E else [E60]
    for j in range(d, 0, -1):
        moves += [E300, E60] if j in F else [E0]
    moves += [E300] * (m - d + 1) + [E240] * (d - 1) + [E180] * (d - 1)
    return _walk((0, 0), moves)


def build_hexagon(E, F, m, d):
    return Region("hexagon", dict(E=sorted(E), F=sorted(F), m=m, d=d),
                  _cells_of(hexagon_walk(E, F, m, d)))
