"""Nilpotent modules over the preprojective algebra of a Cartan graph.

A module assigns a vector space to each vertex and one matrix to each arrow
of the double quiver. Each edge (u, v), stored in orientation order,
contributes the arrow (e, +1): u -> v with sign +1 and the reverse arrow
(e, -1): v -> u with sign -1. The defining relation at a vertex is the
signed sum of round trips through its incident edges.
"""

import json
from collections import namedtuple

from ..errors import InternalRelationFailure, InvalidModuleFile
from ..fields import PrimeField, RationalField, default_field
from ..linalg import (
    Mat,
    col_basis,
    extend_to_basis,
    hstack_all,
    nullspace,
    rank,
    solve,
    vstack_all,
)
from ..rootsys import CartanGraph, RootVec

Arrow = namedtuple("Arrow", "edge dir src tgt sign")


def arrows_of(g):
    out = []
    for e, (u, v) in enumerate(g.edges):
        out.append(Arrow(e, +1, u, v, +1))
        out.append(Arrow(e, -1, v, u, -1))
    return out


def arrows_into(g, i):
    return [a for a in arrows_of(g) if a.tgt == i]


def arrows_out_of(g, i):
    return [a for a in arrows_of(g) if a.src == i]


def reverse_arrow(a):
    src, tgt = a.tgt, a.src
    return Arrow(a.edge, -a.dir, src, tgt, -a.sign)


class PModule:
    """A representation of the double quiver satisfying the signed relations.

    Immutable after construction. `dims` is a tuple indexed by vertex - 1;
    `maps` is keyed by (edge_index, direction).
    """

    def __init__(self, graph, field, dims, maps, check=True):
        self.graph = graph
        self.field = field
        self.dims = tuple(int(d) for d in dims)
        self.maps = dict(maps)
        for a in arrows_of(graph):
            key = (a.edge, a.dir)
            if key not in self.maps:
                self.maps[key] = Mat.zero(field, self.dims[a.tgt - 1], self.dims[a.src - 1])
        if check:
            self.validate()

    def arrow_map(self, a):
        return self.maps[(a.edge, a.dir)]

    def dim_at(self, i):
        return self.dims[i - 1]

    @property
    def total_dim(self):
        return sum(self.dims)

    def dim_vector(self):
        return RootVec(self.dims)

    def relation_at(self, i):
        """Signed sum of round trips into vertex i; zero on valid modules."""
        d = self.dims[i - 1]
        acc = Mat.zero(self.field, d, d)
        for a in arrows_into(self.graph, i):
            term = self.arrow_map(a) @ self.arrow_map(reverse_arrow(a))
            acc = acc.add(term if a.sign > 0 else term.neg())
        return acc

    def validate(self):
        for a in arrows_of(self.graph):
            m = self.arrow_map(a)
            want = (self.dims[a.tgt - 1], self.dims[a.src - 1])
            if (m.nrows, m.ncols) != want:
                raise InternalRelationFailure(
                    f"arrow {a} has shape {(m.nrows, m.ncols)}, expected {want}"
                )
        for i in self.graph.vertices():
            if not self.relation_at(i).is_zero():
                raise InternalRelationFailure(f"relation fails at vertex {i}")
        if not self.is_nilpotent():
            raise InternalRelationFailure("module is not nilpotent")

    def is_nilpotent(self):
        """Radical-series descent must reach zero within total-dim steps."""
        spaces = [Mat.identity(self.field, d) for d in self.dims]
        for _ in range(self.total_dim + 1):
            if all(s.ncols == 0 for s in spaces):
                return True
            nxt = []
            for i in self.graph.vertices():
                imgs = [
                    self.arrow_map(a) @ spaces[a.src - 1] for a in arrows_into(self.graph, i)
                ]
                stacked = hstack_all(self.field, imgs, self.dims[i - 1])
                nxt.append(col_basis(stacked))
            if [s.ncols for s in nxt] == [s.ncols for s in spaces]:
                return False
            spaces = nxt
        return all(s.ncols == 0 for s in spaces)

    # -- assembled boundary maps at a vertex ---------------------------

    def in_map(self, i, signed=True):
        """Signed block row (sum of incoming spaces) -> M_i.

        Block order follows arrows_into; the relation says this composed
        with out_map is zero.
        """
        blocks = []
        for a in arrows_into(self.graph, i):
            m = self.arrow_map(a)
            blocks.append(m if (a.sign > 0 or not signed) else m.neg())
        return hstack_all(self.field, blocks, self.dims[i - 1])

    def out_map(self, i):
        """Unsigned block column M_i -> (sum of incoming spaces)."""
        blocks = [self.arrow_map(reverse_arrow(a)) for a in arrows_into(self.graph, i)]
        return vstack_all(self.field, blocks, self.dims[i - 1])

    def in_block_slices(self, i):
        """Row/column offsets of each incoming arrow's block."""
        slices = {}
        off = 0
        for a in arrows_into(self.graph, i):
            d = self.dims[a.src - 1]
            slices[(a.edge, a.dir)] = (off, off + d)
            off += d
        return slices

    # -- serialization --------------------------------------------------

    def to_dict(self):
        fld = self.field
        if isinstance(fld, PrimeField):
            field_info = {"kind": "prime", "p": fld.p}
        else:
            field_info = {"kind": "rational"}
        arrows = []
        for a in arrows_of(self.graph):
            m = self.arrow_map(a)
            arrows.append(
                {
                    "edge": a.edge,
                    "dir": a.dir,
                    "entries": [fld.to_str(x) for row in m.rows for x in row],
                }
            )
        return {
            "graph": self.graph.to_dict(),
            "field": field_info,
            "dims": list(self.dims),
            "arrows": arrows,
        }

    @staticmethod
    def from_dict(data):
        try:
            return PModule._from_dict_unchecked(data)
        except InvalidModuleFile:
            raise
        except (KeyError, TypeError, ValueError, StopIteration) as exc:
            raise InvalidModuleFile(f"malformed module data: {exc}") from exc

    @staticmethod
    def _from_dict_unchecked(data):
        g = CartanGraph.from_dict(data["graph"])
        fi = data["field"]
        fld = PrimeField(fi["p"]) if fi["kind"] == "prime" else RationalField()
        dims = data["dims"]
        maps = {}
        for rec in data["arrows"]:
            a = next(
                x for x in arrows_of(g) if x.edge == rec["edge"] and x.dir == rec["dir"]
            )
            nr, nc = dims[a.tgt - 1], dims[a.src - 1]
            vals = [fld.from_str(s) for s in rec["entries"]]
            if len(vals) != nr * nc:
                raise InvalidModuleFile("entry count does not match dims")
            rows = [vals[r * nc:(r + 1) * nc] for r in range(nr)]
            maps[(a.edge, a.dir)] = Mat(fld, nr, nc, rows)
        try:
            return PModule(g, fld, dims, maps)
        except InternalRelationFailure as exc:
            raise InvalidModuleFile(str(exc)) from exc

    def dump(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=1)

    @staticmethod
    def load(path):
        with open(path) as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise InvalidModuleFile(f"not valid JSON: {exc}") from exc
        return PModule.from_dict(data)


class ModuleMap:
    """A morphism of modules: one matrix per vertex, commuting with arrows."""

    def __init__(self, source, target, mats, check=True):
        self.source = source
        self.target = target
        self.mats = tuple(mats)
        if check:
            self.validate()

    def mat_at(self, i):
        return self.mats[i - 1]

    def validate(self):
        if self.source.graph != self.target.graph:
            raise ValueError("morphism endpoints live over different graphs")
        for a in arrows_of(self.source.graph):
            lhs = self.mat_at(a.tgt) @ self.source.arrow_map(a)
            rhs = self.target.arrow_map(a) @ self.mat_at(a.src)
            if not lhs.add(rhs.neg()).is_zero():
                raise ValueError(f"morphism fails to commute with arrow {a}")

    def is_injective(self):
        return all(rank(m) == m.ncols for m in self.mats)

    def is_surjective(self):
        return all(rank(m) == m.nrows for m in self.mats)

    def is_isomorphism(self):
        return all(m.nrows == m.ncols and rank(m) == m.nrows for m in self.mats)

    def image(self):
        return Submodule(self.target, [col_basis(m) for m in self.mats])

    def kernel(self):
        return Submodule(self.source, [nullspace(m) for m in self.mats])

    @staticmethod
    def identity(m):
        return ModuleMap(m, m, [Mat.identity(m.field, d) for d in m.dims], check=False)


class Submodule:
    """Per-vertex subspace bases (columns), closed under every arrow."""

    def __init__(self, parent, bases, check=True):
        self.parent = parent
        self.bases = tuple(bases)
        if check:
            self.validate()

    def dim_at(self, i):
        return self.bases[i - 1].ncols

    def dims(self):
        return tuple(b.ncols for b in self.bases)

    @property
    def total_dim(self):
        return sum(self.dims())

    def validate(self):
        for i in self.parent.graph.vertices():
            b = self.bases[i - 1]
            if b.nrows != self.parent.dim_at(i):
                raise ValueError(f"basis at vertex {i} has wrong ambient dimension")
            if rank(b) != b.ncols:
                raise ValueError(f"basis at vertex {i} is not full column rank")
        for a in arrows_of(self.parent.graph):
            img = self.parent.arrow_map(a) @ self.bases[a.src - 1]
            if solve(self.bases[a.tgt - 1], img) is None:
                raise ValueError(f"subspace is not closed under arrow {a}")

    def as_module(self):
        """The submodule as a PModule, with its inclusion morphism."""
        g = self.parent.graph
        f = self.parent.field
        maps = {}
        for a in arrows_of(g):
            img = self.parent.arrow_map(a) @ self.bases[a.src - 1]
            restricted = solve(self.bases[a.tgt - 1], img)
            if restricted is None:
                raise ValueError(f"subspace is not closed under arrow {a}")
            maps[(a.edge, a.dir)] = restricted
        sub = PModule(g, f, self.dims(), maps)
        incl = ModuleMap(sub, self.parent, list(self.bases), check=False)
        return sub, incl

    @staticmethod
    def zero(parent):
        f = parent.field
        return Submodule(
            parent, [Mat.zero(f, d, 0) for d in parent.dims], check=False
        )

    @staticmethod
    def full(parent):
        f = parent.field
        return Submodule(
            parent, [Mat.identity(f, d) for d in parent.dims], check=False
        )


def zero_module(g, field=None):
    field = field or default_field()
    return PModule(g, field, (0,) * g.n, {}, check=False)


def simple(g, i, field=None):
    """The one-dimensional module concentrated at vertex i."""
    g.check_vertex(i)
    field = field or default_field()
    dims = tuple(1 if j == i else 0 for j in g.vertices())
    return PModule(g, field, dims, {}, check=False)


def semisimple(g, mults, field=None):
    """Direct sum of vertex simples with the given multiplicities."""
    field = field or default_field()
    if any(m < 0 for m in mults):
        raise ValueError("multiplicities must be nonnegative")
    return PModule(g, field, tuple(mults), {}, check=False)


def direct_sum(m, n):
    if m.graph != n.graph or m.field != n.field:
        raise ValueError("direct sum needs matching graph and field")
    f = m.field
    dims = tuple(a + b for a, b in zip(m.dims, n.dims))
    maps = {}
    for a in arrows_of(m.graph):
        mm, nn = m.arrow_map(a), n.arrow_map(a)
        top = mm.hstack(Mat.zero(f, mm.nrows, nn.ncols))
        bot = Mat.zero(f, nn.nrows, mm.ncols).hstack(nn)
        maps[(a.edge, a.dir)] = top.vstack(bot)
    return PModule(m.graph, f, dims, maps, check=False)


def direct_power(m, k):
    out = zero_module(m.graph, m.field)
    for _ in range(k):
        out = direct_sum(out, m)
    return out


def soc_i(m, i):
    """The S_i-isotypic socle component, as a submodule at vertex i."""
    m.graph.check_vertex(i)
    f = m.field
    ker = nullspace(m.out_map(i))
    bases = []
    for j in m.graph.vertices():
        bases.append(ker if j == i else Mat.zero(f, m.dim_at(j), 0))
    return Submodule(m, bases, check=False)


def top_i_dim(m, i):
    """Multiplicity of S_i in the top: corank of the incoming assembly."""
    m.graph.check_vertex(i)
    return m.dim_at(i) - rank(m.in_map(i, signed=False))


def socle_dims(m):
    """Socle multiplicities (dim soc_i) for every vertex."""
    return tuple(soc_i(m, i).dim_at(i) for i in m.graph.vertices())


def quotient(m, u):
    """Quotient by a submodule, with the projection morphism."""
    g, f = m.graph, m.field
    sections = []
    projs = []
    for i in g.vertices():
        b = u.bases[i - 1]
        e, t_inv = extend_to_basis(b)
        sections.append(e)
        projs.append(t_inv.row_slice(b.ncols, m.dim_at(i)))
    maps = {}
    for a in arrows_of(g):
        maps[(a.edge, a.dir)] = projs[a.tgt - 1] @ m.arrow_map(a) @ sections[a.src - 1]
    q = PModule(g, f, tuple(p.nrows for p in projs), maps)
    proj = ModuleMap(m, q, projs)
    return q, proj


def preimage_submodule(proj, u):
    """Preimage under a surjective morphism of a submodule of its target."""
    m = proj.source
    bases = []
    for i in m.graph.vertices():
        # x is in the preimage iff proj(x) lies in span(u at i).
        b = u.bases[i - 1]
        _, t_inv = extend_to_basis(b)
        comp_proj = t_inv.row_slice(b.ncols, b.nrows)
        bases.append(nullspace(comp_proj @ proj.mat_at(i)))
    return Submodule(m, bases, check=False)


def soc_chain(m, seq):
    """Iterated socle along a vertex sequence; seq[0] is peeled first."""
    u = Submodule.zero(m)
    for j in seq:
        m.graph.check_vertex(j)
        q, proj = quotient(m, u)
        s = soc_i(q, j)
        u = preimage_submodule(proj, s)
    return u
