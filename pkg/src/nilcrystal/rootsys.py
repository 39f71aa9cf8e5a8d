"""Cartan graphs, roots, weights, reduced words and braid combinatorics.

Conventions: vertices are 1-based. Words are stored in application order,
so word[0] is the first reflection applied; serialized lists follow the
same order.
"""

import json
from dataclasses import dataclass

from .errors import CapExceeded, InvalidVertex, LengthMismatch, NonReducedWord


@dataclass(frozen=True)
class CartanGraph:
    """Loop-free multigraph with a chosen orientation per edge.

    `edges` stores oriented pairs (u, v); the orientation only fixes signs
    in the preprojective relations and never affects root combinatorics.
    """

    n: int
    edges: tuple = ()

    def __post_init__(self):
        for (u, v) in self.edges:
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise InvalidVertex(f"edge ({u},{v}) outside 1..{self.n}")
            if u == v:
                raise ValueError(f"loop at vertex {u} is not allowed")
        object.__setattr__(self, "edges", tuple((u, v) for (u, v) in self.edges))

    def check_vertex(self, i):
        if not (1 <= i <= self.n):
            raise InvalidVertex(f"vertex {i} outside 1..{self.n}")

    def edge_count(self, i, j):
        return sum(1 for (u, v) in self.edges if {u, v} == {i, j})

    def cartan(self):
        """The derived symmetric Cartan matrix as nested lists (0-indexed)."""
        a = [[0] * self.n for _ in range(self.n)]
        for i in range(self.n):
            a[i][i] = 2
        for (u, v) in self.edges:
            a[u - 1][v - 1] -= 1
            a[v - 1][u - 1] -= 1
        return a

    def vertices(self):
        return range(1, self.n + 1)

    @staticmethod
    def from_dict(data):
        n = data["vertices"]
        edges = [tuple(e) for e in data.get("edges", [])]
        orient = data.get("orientation")
        if orient is not None:
            oriented = [tuple(e) for e in orient]
            if sorted(frozenset(e) for e in oriented) != sorted(frozenset(e) for e in edges):
                raise ValueError("orientation does not match the edge multiset")
            edges = oriented
        else:
            edges = [(min(u, v), max(u, v)) for (u, v) in edges]
        return CartanGraph(n, tuple(edges))

    @staticmethod
    def from_file(path):
        with open(path) as fh:
            return CartanGraph.from_dict(json.load(fh))

    def to_dict(self):
        return {"vertices": self.n, "edges": [list(e) for e in self.edges]}


# Stock graphs used throughout the test suites.
def a_n(n):
    return CartanGraph(n, tuple((i, i + 1) for i in range(1, n)))


def d4(center=2):
    others = [i for i in range(1, 5) if i != center]
    return CartanGraph(4, tuple((min(o, center), max(o, center)) for o in others))


def affine_a1():
    return CartanGraph(2, ((1, 2), (1, 2)))


@dataclass(frozen=True)
class RootVec:
    """Integer vector in the simple-root basis."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    def __add__(self, other):
        return RootVec(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return RootVec(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def scaled(self, k):
        return RootVec(tuple(k * c for c in self.coeffs))

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def is_positive(self):
        return all(c >= 0 for c in self.coeffs) and not self.is_zero()

    @staticmethod
    def zero(n):
        return RootVec((0,) * n)

    @staticmethod
    def simple(n, i):
        return RootVec(tuple(1 if j == i else 0 for j in range(1, n + 1)))


@dataclass(frozen=True)
class Weight:
    """Integer vector in the fundamental-weight basis."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    def __sub__(self, other):
        return Weight(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    @staticmethod
    def zero(n):
        return Weight((0,) * n)

    @staticmethod
    def fundamental(n, i):
        return Weight(tuple(1 if j == i else 0 for j in range(1, n + 1)))


@dataclass(frozen=True)
class WeylWord:
    """Reflection word in application order: letters[0] acts first."""

    letters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(i) for i in self.letters))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, k):
        return self.letters[k]

    def validate(self, g):
        for i in self.letters:
            g.check_vertex(i)

    def prefix(self, k):
        return WeylWord(self.letters[:k])

    def drop_first(self):
        return WeylWord(self.letters[1:])

    def prepend(self, i):
        return WeylWord((i,) + self.letters)


def reflect_root(g, i, v):
    """Simple reflection on a root-basis vector: v - <v, alpha_i^vee> alpha_i."""
    g.check_vertex(i)
    a = g.cartan()
    pairing = sum(a[i - 1][j] * v.coeffs[j] for j in range(g.n))
    out = list(v.coeffs)
    out[i - 1] -= pairing
    return RootVec(tuple(out))


def reflect_weight(g, i, lam):
    """Simple reflection on a weight-basis vector: lam - lam_i alpha_i."""
    g.check_vertex(i)
    a = g.cartan()
    c = lam.coeffs[i - 1]
    # alpha_i in the weight basis is the i-th row of the Cartan matrix.
    return Weight(tuple(lam.coeffs[j] - c * a[i - 1][j] for j in range(g.n)))


def apply_word_to_root(g, w, v):
    for i in w:
        v = reflect_root(g, i, v)
    return v


def apply_word_to_weight(g, w, lam):
    for i in w:
        lam = reflect_weight(g, i, lam)
    return lam


def beta_sequence(g, w):
    """The positive roots attached to a reduced word.

    Entry k is the image of alpha_{w[k]} under the first k reflections
    (k = 0 gives the bare simple root). Raises NonReducedWord as soon as
    a negative root appears.
    """
    w.validate(g)
    betas = []
    for k, i in enumerate(w):
        b = RootVec.simple(g.n, i)
        for j in reversed(w.letters[:k]):
            b = reflect_root(g, j, b)
        if not b.is_positive():
            raise NonReducedWord(f"word {w.letters} is not reduced (step {k + 1})")
        betas.append(b)
    return betas


def is_reduced(g, w):
    try:
        beta_sequence(g, w)
        return True
    except NonReducedWord:
        return False


def mu(g, w, a):
    """Weighted sum of the beta-sequence: the stratum dimension vector."""
    if len(a) != len(w):
        raise LengthMismatch(f"|a|={len(a)} but word length is {len(w)}")
    betas = beta_sequence(g, w)
    out = RootVec.zero(g.n)
    for ak, bk in zip(a, betas):
        out = out + bk.scaled(ak)
    return out


def braid_moves(g, w):
    """All Tits moves applicable to a reduced word.

    Returns a list of (position, kind, moved_word) with kind in
    {"2-move", "3-move"}; positions are 0-based in application order.
    """
    if not is_reduced(g, w):
        raise NonReducedWord(f"word {w.letters} is not reduced")
    a = g.cartan()
    out = []
    ls = w.letters
    for p in range(len(ls) - 1):
        i, j = ls[p], ls[p + 1]
        if i != j and a[i - 1][j - 1] == 0:
            moved = ls[:p] + (j, i) + ls[p + 2:]
            out.append((p, "2-move", WeylWord(moved)))
    for p in range(len(ls) - 2):
        i, j, k = ls[p], ls[p + 1], ls[p + 2]
        if i == k and i != j and a[i - 1][j - 1] == -1:
            moved = ls[:p] + (j, i, j) + ls[p + 3:]
            out.append((p, "3-move", WeylWord(moved)))
    return out


def reduced_words(g, w, cap=10000):
    """Braid-closure of a reduced word, capped."""
    if not is_reduced(g, w):
        raise NonReducedWord(f"word {w.letters} is not reduced")
    seen = {w.letters}
    queue = [w]
    while queue:
        cur = queue.pop()
        for _, _, moved in braid_moves(g, cur):
            if moved.letters not in seen:
                seen.add(moved.letters)
                if len(seen) > cap:
                    raise CapExceeded(f"braid closure exceeds cap {cap}")
                queue.append(moved)
    return {WeylWord(ls) for ls in seen}


def weyl_action_matrix(g, w):
    """The word's action on the weight lattice, as integer rows (0-indexed).

    Column j is the image of the j-th fundamental weight; two words act
    identically iff they represent the same Weyl element.
    """
    cols = []
    for j in g.vertices():
        cols.append(apply_word_to_weight(g, w, Weight.fundamental(g.n, j)).coeffs)
    return tuple(zip(*cols))


def all_reduced_words_upto(g, maxlen):
    """Every reduced word of length <= maxlen, grouped by length.

    Uses plain extension search, so it also works for infinite Weyl groups.
    """
    by_len = {0: [WeylWord()]}
    for l in range(1, maxlen + 1):
        cur = []
        for w in by_len[l - 1]:
            for i in g.vertices():
                cand = WeylWord(w.letters + (i,))
                if is_reduced(g, cand):
                    cur.append(cand)
        by_len[l] = cur
    return by_len
