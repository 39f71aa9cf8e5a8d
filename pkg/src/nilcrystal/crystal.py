"""Combinatorial datum model for crystal elements attached to a Weyl word.

An element is named by a reduced word plus a tuple of naturals in
application order. First-entry statistics, the reflection that strips the
first letter, rank-2 transition maps across braid moves, and the full
extraction chain live here; equality across different words goes through
braid-path transport.
"""

from dataclasses import dataclass

from .errors import (
    CapExceeded,
    DifferentWeylElement,
    InvalidMovePosition,
    LengthMismatch,
    NonReducedWord,
    PreconditionViolated,
)
from .rootsys import (
    WeylWord,
    braid_moves,
    is_reduced,
    mu,
    weyl_action_matrix,
)

CONVENTION = "application-order; first letter acts first"


@dataclass(frozen=True)
class LusztigDatum:
    word: WeylWord
    a: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))

    @property
    def r(self):
        return len(self.word)

    def to_dict(self):
        return {
            "convention": CONVENTION,
            "word": list(self.word.letters),
            "a": list(self.a),
        }

    @staticmethod
    def from_dict(g, data):
        return datum(g, WeylWord(tuple(data["word"])), tuple(data["a"]))


def datum(g, word, a):
    """Validated datum: reduced word, matching tuple length."""
    if not is_reduced(g, word):
        raise NonReducedWord(f"word {word.letters} is not reduced")
    if len(a) != len(word):
        raise LengthMismatch(f"|a|={len(a)} but word length is {len(word)}")
    if any(x < 0 for x in a):
        raise ValueError("datum entries must be nonnegative")
    return LusztigDatum(word, tuple(a))


def eps_star(d):
    """First-letter statistic: the first entry of the datum."""
    if d.r == 0:
        raise PreconditionViolated("empty word has no first entry")
    return d.a[0]


def e_star_max(d):
    """Zero out the first entry; idempotent."""
    if d.r == 0:
        raise PreconditionViolated("empty word has no first entry")
    return LusztigDatum(d.word, (0,) + d.a[1:])


def saito_T(g, d):
    """Strip the first letter and entry; requires a vanishing first entry."""
    if d.r == 0:
        raise PreconditionViolated("empty word cannot be shortened")
    if d.a[0] != 0:
        raise PreconditionViolated("first entry must be zero before the reflection")
    return LusztigDatum(d.word.drop_first(), d.a[1:])


def saito_T_inv(g, i, d):
    """Prepend a letter with entry zero; must keep the word reduced."""
    new_word = d.word.prepend(i)
    if not is_reduced(g, new_word):
        raise NonReducedWord(f"prepending {i} makes {new_word.letters} non-reduced")
    return LusztigDatum(new_word, (0,) + d.a)


def _move_at(g, d, pos, kind):
    for p, k, moved in braid_moves(g, d.word):
        if p == pos and k == kind:
            return moved
    raise InvalidMovePosition(f"no {kind} at position {pos} of {d.word.letters}")


def transition_2move(g, d, pos):
    """Swap the entries across a commuting pair."""
    moved = _move_at(g, d, pos, "2-move")
    a = list(d.a)
    a[pos], a[pos + 1] = a[pos + 1], a[pos]
    return LusztigDatum(moved, tuple(a))


def transition_3move(g, d, pos):
    """Piecewise-linear transport across a single-edge braid triple.

    On consecutive entries (x, y, z) in application order, with
    p = min(x, z): (x, y, z) -> (y + z - p, p, x + y - p). Involutive and
    weight-preserving.
    """
    moved = _move_at(g, d, pos, "3-move")
    x, y, z = d.a[pos], d.a[pos + 1], d.a[pos + 2]
    p = min(x, z)
    a = list(d.a)
    a[pos], a[pos + 1], a[pos + 2] = y + z - p, p, x + y - p
    return LusztigDatum(moved, tuple(a))


def transition(g, d, pos, kind):
    if kind == "2-move":
        return transition_2move(g, d, pos)
    if kind == "3-move":
        return transition_3move(g, d, pos)
    raise InvalidMovePosition(f"unknown move kind {kind!r}")


def neighbors(g, d):
    """All one-move transports of a datum."""
    return [transition(g, d, p, k) for p, k, _ in braid_moves(g, d.word)]


def transport(g, d, target_word, cap=10000):
    """Transport a datum to another reduced word of the same Weyl element."""
    if weyl_action_matrix(g, d.word) != weyl_action_matrix(g, target_word):
        raise DifferentWeylElement(
            f"{d.word.letters} and {target_word.letters} differ as Weyl elements"
        )
    seen = {d.word.letters: d}
    queue = [d]
    while queue:
        cur = queue.pop()
        if cur.word.letters == target_word.letters:
            return cur
        for nxt in neighbors(g, cur):
            if nxt.word.letters not in seen:
                seen[nxt.word.letters] = nxt
                if len(seen) > cap:
                    raise CapExceeded(f"braid transport exceeds cap {cap}")
                queue.append(nxt)
    if target_word.letters in seen:
        return seen[target_word.letters]
    raise CapExceeded(
        f"word {target_word.letters} not reached by braid moves (cap {cap})"
    )


def equal(g, d1, d2, cap=10000):
    """Whether two data name the same element, across reduced words."""
    moved = transport(g, d1, d2.word, cap=cap)
    return moved.a == d2.a


def weight(g, d):
    """Root-basis weight of the datum (sign convention: positive sum)."""
    return mu(g, d.word, d.a)


@dataclass(frozen=True)
class ExtractionCertificate:
    """Replayable record of the alternating strip-and-reflect chain."""

    word: WeylWord
    a: tuple
    exponents: tuple  # a_k read off at each step, in application order

    def __post_init__(self):
        if self.exponents != self.a:
            raise ValueError("certificate exponents must reproduce the datum")


def extraction_chain(g, d):
    """Alternate first-entry strips with word-shortening reflections.

    Terminates after exactly r reflection steps at the empty datum and
    records the removed exponents, which reproduce the datum.
    """
    exps = []
    cur = d
    while cur.r > 0:
        exps.append(eps_star(cur))
        cur = saito_T(g, e_star_max(cur))
    return ExtractionCertificate(d.word, d.a, tuple(exps))
