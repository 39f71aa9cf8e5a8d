"""The module families built from reflections over the hatted graph.

The hatted graph doubles the vertex set: each original vertex i gains a
primed partner n + i joined to it by one new edge. Reflecting a semisimple
module supported on the primed part along a reduced word, then dividing out
the primed part, produces the submodule/quotient families whose dimension
vectors realize the beta-sequence of the word.
"""

from ..errors import InvalidVertex, NoEmbeddingFound, NonReducedWord
from ..fields import default_field
from ..linalg import Mat
from ..rootsys import (
    CartanGraph,
    Weight,
    WeylWord,
    apply_word_to_weight,
    is_reduced,
)
from .hom import find_injective_hom
from .module import PModule, Submodule, arrows_of, quotient, semisimple, simple, zero_module
from .functors import sigma_word


def hat_graph(g):
    """Extend g by one primed vertex per original vertex."""
    extra = tuple((i, g.n + i) for i in g.vertices())
    return CartanGraph(2 * g.n, g.edges + extra)


def semisimple_primed(g, lam, field=None):
    """The hat-graph module with multiplicity lam_i at vertex i', zero maps."""
    if any(c < 0 for c in lam.coeffs):
        raise ValueError("weight must be dominant (nonnegative coefficients)")
    gh = hat_graph(g)
    dims = (0,) * g.n + lam.coeffs
    return semisimple(gh, dims, field=field)


def n_hat(g, w, lam, field=None):
    """Reflect the primed semisimple along the word, first letter first."""
    if not is_reduced(g, w):
        raise NonReducedWord(f"word {w.letters} is not reduced")
    m = semisimple_primed(g, lam, field=field)
    return sigma_word(w, m)


def _primed_part(m, g):
    """The full primed-vertex subspace as a submodule of a hat-graph module."""
    f = m.field
    bases = []
    for j in range(1, 2 * g.n + 1):
        d = m.dim_at(j)
        bases.append(Mat.identity(f, d) if j > g.n else Mat.zero(f, d, 0))
    return Submodule(m, bases)


def restrict_to_unprimed(m, g):
    """Reinterpret a hat-graph module with zero primed dims over g itself."""
    assert all(m.dim_at(g.n + i) == 0 for i in g.vertices())
    maps = {}
    for a in arrows_of(g):
        maps[(a.edge, a.dir)] = m.maps[(a.edge, a.dir)]
    return PModule(g, m.field, m.dims[: g.n], maps, check=False)


def n_module(g, w, lam, field=None):
    """Quotient of the hatted reflection module by its primed part."""
    nh = n_hat(g, w, lam, field=field)
    q, _ = quotient(nh, _primed_part(nh, g))
    return restrict_to_unprimed(q, g)


def v_module(g, w, k, field=None):
    """The k-th submodule-family member attached to a reduced word.

    Built by reflecting along the reversed length-k prefix; its dimension
    vector is the k-step weight drop of the k-th letter's fundamental
    weight. k = 0 gives the zero module.
    """
    if not is_reduced(g, w):
        raise NonReducedWord(f"word {w.letters} is not reduced")
    if k == 0:
        return zero_module(g, field or default_field())
    if not 1 <= k <= len(w):
        raise InvalidVertex(f"index k={k} outside 1..{len(w)}")
    i_k = w[k - 1]
    rev_prefix = WeylWord(tuple(reversed(w.letters[:k])))
    return n_module(g, rev_prefix, Weight.fundamental(g.n, i_k), field=field)


def v_dim_weight(g, w, k):
    """Expected weight-basis dimension data: varpi_{i_k} - s_{i_1}..s_{i_k} varpi_{i_k}."""
    i_k = w[k - 1]
    lam = Weight.fundamental(g.n, i_k)
    rev_prefix = WeylWord(tuple(reversed(w.letters[:k])))
    return lam - apply_word_to_weight(g, rev_prefix, lam)


def weight_to_root(g, lam):
    """Convert a weight-basis vector that lies in the root lattice."""
    a = g.cartan()
    n = g.n
    # Solve A^T x = lam over the rationals; entries must come out integral.
    from fractions import Fraction

    rows = [[Fraction(a[j][i]) for j in range(n)] for i in range(n)]
    rhs = [Fraction(c) for c in lam.coeffs]
    # Gaussian elimination; the Cartan matrix of our graphs is invertible in
    # the finite cases used here. (Affine graphs route around this helper.)
    aug = [rows[i] + [rhs[i]] for i in range(n)]
    piv = 0
    for col in range(n):
        sel = next((r for r in range(piv, n) if aug[r][col] != 0), None)
        if sel is None:
            continue
        aug[piv], aug[sel] = aug[sel], aug[piv]
        aug[piv] = [x / aug[piv][col] for x in aug[piv]]
        for r in range(n):
            if r != piv and aug[r][col] != 0:
                c = aug[r][col]
                aug[r] = [x - c * y for x, y in zip(aug[r], aug[piv])]
        piv += 1
    if piv != n:
        raise ValueError("Cartan matrix is singular; cannot convert basis")
    sol = [aug[i][n] for i in range(n)]
    if any(s.denominator != 1 for s in sol):
        raise ValueError("weight vector is not in the root lattice")
    from ..rootsys import RootVec

    return RootVec(tuple(int(s) for s in sol))


def k_minus(w, k):
    """Previous occurrence of the k-th letter, or 0."""
    i_k = w[k - 1]
    for s in range(k - 1, 0, -1):
        if w[s - 1] == i_k:
            return s
    return 0


def m_module(g, w, k, route="reflection", field=None, rng=None, retries=8):
    """The k-th subquotient layer, by either construction route.

    route="reflection": reflect the k-th letter's simple along the reversed
    strict prefix. route="cokernel": embed the previous same-letter
    submodule-family member into the k-th one and take the cokernel.
    """
    if not is_reduced(g, w):
        raise NonReducedWord(f"word {w.letters} is not reduced")
    if not 1 <= k <= len(w):
        raise InvalidVertex(f"index k={k} outside 1..{len(w)}")
    field = field or default_field()
    if route == "reflection":
        s = simple(g, w[k - 1], field=field)
        rev = WeylWord(tuple(reversed(w.letters[: k - 1])))
        return sigma_word(rev, s)
    if route == "cokernel":
        km = k_minus(w, k)
        vk = v_module(g, w, k, field=field)
        if km == 0:
            return vk
        vkm = v_module(g, w, km, field=field)
        emb = find_injective_hom(vkm, vk, rng=rng, retries=retries)
        if emb is None:
            raise NoEmbeddingFound(
                f"no injective morphism for layer k={k} of word {w.letters}"
            )
        q, _ = quotient(vk, emb.image())
        return q
    raise ValueError(f"unknown route {route!r}")
