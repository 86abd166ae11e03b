"""Matchings, 0-1 words, Ferrers diagrams, step paths and their counts."""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial, prod


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class Matching:
    """Non-crossing perfect matching of {1..2d}; ``pairs`` sorted, i<j."""

    pairs: tuple

    def __post_init__(self):
        seen = {}
        for i, j in self.pairs:
            if not (1 <= i < j):
                raise ParseError(f"bad arc {i}-{j}")
            for x in (i, j):
                if x in seen:
                    raise ParseError(f"repeated endpoint at index {x}")
                seen[x] = True
        n = len(seen)
        if sorted(seen) != list(range(1, n + 1)):
            missing = min(set(range(1, n + 1)) - set(seen)) if seen else 1
            raise ParseError(f"endpoints are not 1..{n}; missing index {missing}")
        for a, c in self.pairs:
            for b, e in self.pairs:
                if a < b < c < e:
                    raise ParseError(f"arcs {a}-{c} and {b}-{e} cross at index {b}")
        object.__setattr__(self, "pairs", tuple(sorted(tuple(p) for p in self.pairs)))

    @property
    def d(self):
        return len(self.pairs)

    def partner_map(self):
        m = {}
        for i, j in self.pairs:
            m[i], m[j] = j, i
        return m

    def __call__(self, i):
        return self.partner_map()[i]

    def parens(self):
        return "".join("(" if b == 0 else ")" for b in matching_to_word(self))

    def __str__(self):
        return self.parens()


def matching_from_partner(partner):
    """Build from a 0-based partner list."""
    return Matching(tuple((i + 1, j + 1) for i, j in enumerate(partner) if i < j))


def parse_matching(text):
    text = text.strip()
    if text == "" or set(text) <= set("()"):
        stack, pairs = [], []
        for pos, ch in enumerate(text, start=1):
            if ch == "(":
                stack.append(pos)
            else:
                if not stack:
                    raise ParseError(f"unbalanced word: unmatched ')' at index {pos}")
                pairs.append((stack.pop(), pos))
        if stack:
            raise ParseError(f"unbalanced word: unmatched '(' at index {stack[-1]}")
        return Matching(tuple(pairs))
    pairs = []
    for tok in text.split(","):
        try:
            a, b = tok.split("-")
            a, b = int(a), int(b)
        except ValueError:
            raise ParseError(f"cannot parse arc {tok!r}") from None
        pairs.append((min(a, b), max(a, b)))
    return Matching(tuple(pairs))


def word_to_matching(w):
    """Inverse of matching_to_word (0 opens, 1 closes)."""
    return parse_matching("".join("(" if int(b) == 0 else ")" for b in w))


def matching_to_word(X):
    p = X.partner_map()
    return tuple(0 if p[i] > i else 1 for i in range(1, 2 * X.d + 1))


def word_str(w):
    return "".join(str(int(b)) for b in w)


def word_to_diagram(w):
    """Column j of the diagram has as many cells as 0s after the j-th 1."""
    w = [int(b) for b in w]
    cols = []
    zeros_after = sum(1 for b in w if b == 0)
    for b in w:
        if b == 0:
            zeros_after -= 1
        else:
            cols.append(zeros_after)
    cols = [c for c in cols if c > 0]
    return conjugate(tuple(sorted(cols, reverse=True)))


def conjugate(lam):
    lam = tuple(lam)
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > j) for j in range(lam[0]))


def normalize(lam):
    lam = tuple(int(p) for p in lam if int(p) > 0)
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise ValueError(f"not a partition: {lam}")
    return lam


def fits(lam, d, rows=None):
    rows = d if rows is None else rows
    return len(lam) <= rows and all(p <= d for p in lam)


def contained(lam, mu):
    """lam ⊆ mu as diagrams."""
    return len(lam) <= len(mu) and all(a <= b for a, b in zip(lam, mu))


def diagram_dcode(lam, d):
    lam = normalize(lam)
    if not fits(lam, d):
        raise ValueError(f"{lam} does not fit in the {d}x{d} square")
    lamc = conjugate(lam)
    w = [None] * (2 * d)
    for j in range(1, d + 1):
        lj = lam[j - 1] if j <= len(lam) else 0
        w[lj + d - j] = 0
        cj = lamc[j - 1] if j <= len(lamc) else 0
        w[j - 1 + d - cj] = 1
    return tuple(w)


def lambda_of_matching(X):
    return word_to_diagram(matching_to_word(X))


def reverse_matching(X):
    n = 2 * X.d
    return Matching(tuple(sorted((n + 1 - j, n + 1 - i) for i, j in X.pairs)))


def word_path(w):
    """0 -> up-step (+1), 1 -> down-step (-1)."""
    return tuple(1 if int(b) == 0 else -1 for b in w)


def heights(steps):
    y = [0]
    for s in steps:
        y.append(y[-1] + s)
    return tuple(y)


def path_of_matching(X):
    return word_path(matching_to_word(X))


def boundary_word(E, d):
    E = set(E)
    if not E <= set(range(1, 2 * d - 1)):
        raise ValueError(f"boundary set {sorted(E)} not inside 1..{2 * d - 2}")
    return tuple(0 if i in E else 1 for i in range(1, 2 * d - 1))


def boundary_shape(E, d):
    c = boundary_word(E, d)
    return word_to_diagram(c), word_path((0,) + c + (1,))


def cells(lam):
    return [(i, j) for i, p in enumerate(lam, start=1) for j in range(1, p + 1)]


def hook(lam, i, j):
    lamc = conjugate(lam)
    return lam[i - 1] + lamc[j - 1] - i - j + 1


def hook_product(lam):
    return prod(hook(lam, i, j) for i, j in cells(lam))


def dim_of(lam):
    lam = normalize(lam)
    return factorial(sum(lam)) // hook_product(lam)


def ssyt_count(lam, N):
    lam = normalize(lam)
    num = prod(Fraction(j - i + N) for i, j in cells(lam))
    return Fraction(num, hook_product(lam))


def compose(X, m, Y=None):
    d = X.d
    pairs = [(i + m, j + m) for i, j in X.pairs] if Y is None else list(X.pairs)
    if Y is None:
        pairs += [(i, 2 * d + 2 * m + 1 - i) for i in range(1, m + 1)]
        return Matching(tuple(pairs))
    e = Y.d
    off = 2 * d + m
    pairs += [(i + off, j + off) for i, j in Y.pairs]
    pairs += [(2 * d + i, 2 * d + 2 * m + 2 * e + 1 - i) for i in range(1, m + 1)]
    return Matching(tuple(pairs))


def rotate_labels(pairs, n, k=1):
    """Shift external-link labels by k modulo the identification 2n+1 = -2n+1."""
    def sh(L):
        return (L + 2 * n - 1 + k) % (4 * n) - 2 * n + 1
    return tuple(sorted(tuple(sorted((sh(a), sh(b)))) for a, b in pairs))


def rotate(X, n, parity="even", k=1):
    """Rotate an abstract matching of the parity-links of Q_n by k label steps.

    X indexes the occupied links in increasing label order.  The result
    lives on the opposite parity when k is odd; it is returned abstractly.
    """
    labels = parity_labels(n, parity)
    lab = [(labels[i - 1], labels[j - 1]) for i, j in X.pairs]
    rot = rotate_labels(lab, n, k)
    new_par = parity if k % 2 == 0 else ("odd" if parity == "even" else "even")
    new_labels = parity_labels(n, new_par)
    pos = {L: t + 1 for t, L in enumerate(new_labels)}
    return Matching(tuple(sorted(tuple(sorted((pos[a], pos[b]))) for a, b in rot)))


def parity_labels(n, parity):
    r = 0 if parity == "even" else 1
    return [L for L in range(-2 * n + 1, 2 * n + 1) if L % 2 == r]


def enumerate_matchings(d):
    out = []

    def rec(w, opened, closed):
        if len(w) == 2 * d:
            out.append(word_to_matching(w))
            return
        if opened < d:
            rec(w + (0,), opened + 1, closed)
        if closed < opened:
            rec(w + (1,), opened, closed + 1)

    rec((), 0, 0)
    return out


def enumerate_boundaries(d, lam_max=None):
    lam_max = normalize(lam_max) if lam_max is not None else tuple([d - 1] * (d - 1))
    out = []
    for E in combinations(range(1, 2 * d - 1), d - 1):
        if contained(boundary_shape(E, d)[0], lam_max):
            out.append(frozenset(E))
    return out


def format_partition(lam):
    return ",".join(map(str, lam)) if lam else "-"


def parse_partition(text):
    text = text.strip()
    if text in ("-", "", "∅"):
        return ()
    return normalize(int(t) for t in text.split(","))


def parse_set(text):
    text = text.strip().strip("{}")
    if text in ("", "-"):
        return frozenset()
    return frozenset(int(t) for t in text.split(","))
