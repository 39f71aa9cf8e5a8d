"""Reflection functors at a vertex, on modules and on morphisms.

At vertex i, write `in` for the signed incoming assembly and `out` for the
unsigned outgoing assembly; the defining relation says in . out = 0. The
forward functor replaces the space at i by ker(in), the backward one by
coker(out), each with a twisted structure map built from -(out . in).
The twist sign is a parameter only so the harness can demonstrate that the
flipped convention breaks the contracts; production code never passes it.
"""

from ..errors import InternalRelationFailure
from ..linalg import Mat, col_basis, extend_to_basis, nullspace, solve
from .module import PModule, arrows_into


def sigma(i, m, twist=1):
    """Forward reflection at i: new space ker(in), outgoing = inclusion."""
    g, f = m.graph, m.field
    in_i = m.in_map(i)
    out_i = m.out_map(i)
    slices = m.in_block_slices(i)
    k = nullspace(in_i)  # total-in x newdim, columns span ker(in)
    new_dim = k.ncols
    # incl . c = twist * out . in, well-defined since in . out = 0.
    rhs = (out_i @ in_i).scale(f.of_int(twist))
    c = solve(k, rhs)
    if c is None:
        raise InternalRelationFailure("twisted map does not land in the kernel")
    maps = dict(m.maps)
    dims = list(m.dims)
    dims[i - 1] = new_dim
    for a in arrows_into(g, i):
        lo, hi = slices[(a.edge, a.dir)]
        # New incoming component carries the sign back out of the assembly.
        blk_in = c.col_slice(lo, hi)
        maps[(a.edge, a.dir)] = blk_in if a.sign > 0 else blk_in.neg()
        # New outgoing component is the inclusion block.
        maps[(a.edge, -a.dir)] = k.row_slice(lo, hi)
    try:
        return PModule(g, f, dims, maps)
    except InternalRelationFailure as exc:
        raise InternalRelationFailure(f"forward reflection at {i} broke relations: {exc}") from exc


def sigma_star(i, m, twist=1):
    """Backward reflection at i: new space coker(out), incoming = projection."""
    g, f = m.graph, m.field
    in_i = m.in_map(i)
    out_i = m.out_map(i)
    slices = m.in_block_slices(i)
    b = col_basis(out_i)  # image of out inside the incoming assembly
    e, t_inv = extend_to_basis(b)
    proj = t_inv.row_slice(b.ncols, out_i.nrows)  # total-in -> coker
    new_dim = proj.nrows
    # Induced map coker -> total-in from twist * out . in (kills image(out)).
    induced = (out_i @ in_i).scale(f.of_int(twist)) @ e
    maps = dict(m.maps)
    dims = list(m.dims)
    dims[i - 1] = new_dim
    for a in arrows_into(g, i):
        lo, hi = slices[(a.edge, a.dir)]
        blk_in = proj.col_slice(lo, hi)
        maps[(a.edge, a.dir)] = blk_in if a.sign > 0 else blk_in.neg()
        maps[(a.edge, -a.dir)] = induced.row_slice(lo, hi)
    try:
        return PModule(g, f, dims, maps)
    except InternalRelationFailure as exc:
        raise InternalRelationFailure(f"backward reflection at {i} broke relations: {exc}") from exc


def sigma_word(word, m, twist=1):
    """Apply forward reflections along a word, first letter first."""
    for i in word:
        m = sigma(i, m, twist=twist)
    return m


def sigma_star_word(word, m, twist=1):
    for i in word:
        m = sigma_star(i, m, twist=twist)
    return m


def _kernel_inclusion(i, m):
    return nullspace(m.in_map(i))


def _assembled_block_diag(i, f_map, total_src):
    """Block-diagonal action of a morphism on the incoming assembly at i."""
    m, n = f_map.source, f_map.target
    slices_m = m.in_block_slices(i)
    big_rows = sum(n.dims[a.src - 1] for a in arrows_into(n.graph, i))
    big = Mat.zero(m.field, big_rows, total_src)
    off = 0
    for a in arrows_into(m.graph, i):
        lo, _hi = slices_m[(a.edge, a.dir)]
        fa = f_map.mat_at(a.src)
        for r in range(fa.nrows):
            for cidx in range(fa.ncols):
                big.rows[off + r][lo + cidx] = fa.rows[r][cidx]
        off += fa.nrows
    return big


def sigma_on_map(i, f_map, twist=1):
    """The forward functor applied to a morphism."""
    from .module import ModuleMap

    m, n = f_map.source, f_map.target
    sm, sn = sigma(i, m, twist=twist), sigma(i, n, twist=twist)
    fld = m.field
    km, kn = _kernel_inclusion(i, m), _kernel_inclusion(i, n)
    # Block-diagonal action on the incoming assemblies restricts to kernels.
    big = _assembled_block_diag(i, f_map, km.nrows)
    restricted = solve(kn, big @ km)
    if restricted is None:
        raise InternalRelationFailure("morphism does not restrict to kernels")
    mats = list(f_map.mats)
    mats[i - 1] = restricted
    return ModuleMap(sm, sn, mats)


def sigma_star_on_map(i, f_map, twist=1):
    """The backward functor applied to a morphism."""
    from .module import ModuleMap

    m, n = f_map.source, f_map.target
    sm, sn = sigma_star(i, m, twist=twist), sigma_star(i, n, twist=twist)
    fld = m.field
    out_m, out_n = m.out_map(i), n.out_map(i)
    bm = col_basis(out_m)
    em, tm_inv = extend_to_basis(bm)
    proj_m = tm_inv.row_slice(bm.ncols, out_m.nrows)
    bn = col_basis(out_n)
    _en, tn_inv = extend_to_basis(bn)
    proj_n = tn_inv.row_slice(bn.ncols, out_n.nrows)
    big = _assembled_block_diag(i, f_map, out_m.nrows)
    induced = proj_n @ big @ em
    mats = list(f_map.mats)
    mats[i - 1] = induced
    return ModuleMap(sm, sn, mats)
