"""Random extensions, stratum sampling, and datum extraction on modules.

A point of the stratum attached to (word, a) is sampled by stacking random
extensions layer by layer; extraction reads the sample back by alternating
socle-dimension reads with backward reflections.
"""

import random

from ..errors import LengthMismatch, NonReducedWord, NotInGenericStratum
from ..fields import default_field
from ..linalg import Mat, nullspace
from ..rootsys import is_reduced
from .functors import sigma_star
from .module import (
    ModuleMap,
    PModule,
    arrows_of,
    direct_power,
    reverse_arrow,
    soc_i,
    top_i_dim,
    zero_module,
)
from .families import m_module


def random_extension(sub, quot, rng):
    """A random module extension of `quot` by `sub`.

    Returns (X, inclusion, projection) where `sub` embeds as the first
    block and X/sub is the given quotient. The unknown off-diagonal blocks
    form the solution space of an exact linear system; a uniformly random
    solution is drawn (zero gives the direct sum).
    """
    if sub.graph != quot.graph or sub.field != quot.field:
        raise ValueError("extension pieces need matching graph and field")
    g, f = sub.graph, sub.field
    arr = arrows_of(g)
    offsets = {}
    total = 0
    for a in arr:
        offsets[(a.edge, a.dir)] = total
        total += sub.dim_at(a.tgt) * quot.dim_at(a.src)

    def var(a, r, c):
        return offsets[(a.edge, a.dir)] + r * quot.dim_at(a.src) + c

    # Relation at vertex v, top-right block:
    #   sum over arrows h into v of sign(h) (S_h B_hbar + B_h Q_hbar) = 0.
    rows = []
    for v in g.vertices():
        for r in range(sub.dim_at(v)):
            for c in range(quot.dim_at(v)):
                row = [f.zero] * total
                for a in arr:
                    if a.tgt != v:
                        continue
                    ra = reverse_arrow(a)
                    s_h = sub.arrow_map(a)
                    q_rb = quot.arrow_map(ra)
                    sgn = a.sign
                    # (S_h B_hbar)[r][c] = sum_k S_h[r][k] * B_hbar[k][c]
                    for k in range(sub.dim_at(a.src)):
                        val = s_h.rows[r][k] if sgn > 0 else f.neg(s_h.rows[r][k])
                        idx = var(ra, k, c)
                        row[idx] = f.add(row[idx], val)
                    # (B_h Q_hbar)[r][c] = sum_k B_h[r][k] * Q_hbar[k][c]
                    for k in range(quot.dim_at(a.src)):
                        val = q_rb.rows[k][c] if sgn > 0 else f.neg(q_rb.rows[k][c])
                        idx = var(a, r, k)
                        row[idx] = f.add(row[idx], val)
                rows.append(row)
    system = Mat(f, len(rows), total, rows)
    basis = nullspace(system)
    coeffs = [f.random(rng) for _ in range(basis.ncols)]
    sol = [f.zero] * total
    for j, cf in enumerate(coeffs):
        for idx in range(total):
            sol[idx] = f.add(sol[idx], f.mul(cf, basis.rows[idx][j]))

    dims = tuple(s + q for s, q in zip(sub.dims, quot.dims))
    maps = {}
    for a in arr:
        sr, qr = sub.dim_at(a.tgt), quot.dim_at(a.tgt)
        sc, qc = sub.dim_at(a.src), quot.dim_at(a.src)
        b = Mat(
            f, sr, qc, [[sol[var(a, r, c)] for c in range(qc)] for r in range(sr)]
        )
        top = sub.arrow_map(a).hstack(b)
        bot = Mat.zero(f, qr, sc).hstack(quot.arrow_map(a))
        maps[(a.edge, a.dir)] = top.vstack(bot)
    x = PModule(g, f, dims, maps)
    incl_mats = [
        Mat.identity(f, sub.dim_at(i)).vstack(Mat.zero(f, quot.dim_at(i), sub.dim_at(i)))
        for i in g.vertices()
    ]
    proj_mats = [
        Mat.zero(f, quot.dim_at(i), sub.dim_at(i)).hstack(Mat.identity(f, quot.dim_at(i)))
        for i in g.vertices()
    ]
    incl = ModuleMap(sub, x, incl_mats, check=False)
    proj = ModuleMap(x, quot, proj_mats, check=False)
    return x, incl, proj


def build_filtered(g, w, a, rng, field=None):
    """A random sample of the stratum attached to (word, a)."""
    if not is_reduced(g, w):
        raise NonReducedWord(f"word {w.letters} is not reduced")
    if len(a) != len(w):
        raise LengthMismatch(f"|a|={len(a)} but word length is {len(w)}")
    field = field or default_field()
    x = zero_module(g, field)
    layers = [
        direct_power(m_module(g, w, k, route="reflection", field=field), a[k - 1])
        for k in range(1, len(w) + 1)
    ]
    for layer in layers:
        x, _, _ = random_extension(x, layer, rng)
    return x


def eps_star_mod(i, x):
    """Socle multiplicity of the i-th simple."""
    return soc_i(x, i).dim_at(i)


def eps_mod(i, x):
    """Top multiplicity of the i-th simple (dual statistic)."""
    return top_i_dim(x, i)


def extract_datum(g, w, x, trace=None):
    """Read off the datum of a module by socle reads and backward reflections.

    Appends (a_k, residual_dims_after_step) records to `trace` when given.
    Raises NotInGenericStratum when the residual after the last step is
    nonzero.
    """
    if not is_reduced(g, w):
        raise NonReducedWord(f"word {w.letters} is not reduced")
    out = []
    for i in w:
        a_k = eps_star_mod(i, x)
        x = sigma_star(i, x)
        out.append(a_k)
        if trace is not None:
            trace.append((a_k, x.dims))
    if x.total_dim != 0:
        raise NotInGenericStratum(
            f"residual module has dims {x.dims} after the word", residual_dims=x.dims
        )
    return tuple(out)
