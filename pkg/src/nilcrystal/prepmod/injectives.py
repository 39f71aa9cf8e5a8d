"""Indecomposable injective modules, for finite-type cross-checks.

The algebra is built degree by degree as the path space of the double
quiver modulo the (homogeneous, degree-two) signed relations; in finite
ADE type the graded pieces vanish eventually. The injective with a given
simple socle is the dual of the corresponding right projective, realized
by transposing the left-multiplication matrices on paths.
"""

from ..errors import CapExceeded
from ..linalg import Mat, rref
from .module import PModule, arrows_of

MAX_DEGREE = 64
# Walk counts in finite type stay far below this before the basis empties;
# outside finite type they double per degree, so this triggers fast.
MAX_RAW_PATHS = 200


class _GradedQuotient:
    """Per-degree path bases of the quotient algebra, with reduction maps."""

    def __init__(self, g, field):
        self.g = g
        self.field = field
        self.arrows = arrows_of(g)
        # degree -> (paths, index_of, reducer); a path is (start, arrows...)
        self.degrees = []
        self._build()

    def _paths_of_degree(self, d):
        if d == 0:
            return [(v,) for v in self.g.vertices()]
        out = []
        for p in self.degrees[d - 1][0]:
            end = self._path_end(p)
            for a in self.arrows:
                if a.src == end:
                    out.append(p + ((a.edge, a.dir),))
        return out

    def _path_end(self, p):
        if len(p) == 1:
            return p[0]
        e, dr = p[-1]
        a = next(x for x in self.arrows if x.edge == e and x.dir == dr)
        return a.tgt

    def _path_start(self, p):
        return p[0]

    def _raw_paths(self, d):
        cur = [(v,) for v in self.g.vertices()]
        for _ in range(d):
            nxt = []
            for p in cur:
                end = self._path_end(p)
                for a in self.arrows:
                    if a.src == end:
                        nxt.append(p + ((a.edge, a.dir),))
            cur = nxt
        return cur

    def _build(self):
        f = self.field
        for d in range(MAX_DEGREE + 1):
            paths = self._raw_paths(d)
            # Raw path counts explode on non-finite-type graphs long before
            # the degree cap; bail out by size as well.
            if len(paths) > MAX_RAW_PATHS:
                raise CapExceeded(
                    "path space too large; graph is not of finite type"
                )
            index_of = {p: i for i, p in enumerate(paths)}
            if d < 2:
                reducer = []
                basis = list(range(len(paths)))
            else:
                gens = []
                for base in self._raw_paths(d - 2):
                    for cut in range(len(base)):
                        # base = prefix + suffix arrows; insert round trips at
                        # the vertex reached after `cut` arrows.
                        at = self._prefix_end(base, cut)
                        vec = [f.zero] * len(paths)
                        any_term = False
                        for a in self.arrows:
                            if a.tgt != at:
                                continue
                            ins = ((a.edge, -a.dir), (a.edge, a.dir))
                            cand = (base[0],) + base[1 : cut + 1] + ins + base[cut + 1 :]
                            if cand in index_of:
                                idx = index_of[cand]
                                one = f.one if a.sign > 0 else f.neg(f.one)
                                vec[idx] = f.add(vec[idx], one)
                                any_term = True
                        if any_term:
                            gens.append(vec)
                if gens:
                    mat = Mat(f, len(gens), len(paths), gens)
                    red, pivots = rref(mat)
                    reducer = [(pivots[r], red.rows[r]) for r in range(len(pivots))]
                    basis = [j for j in range(len(paths)) if j not in set(pivots)]
                else:
                    reducer = []
                    basis = list(range(len(paths)))
            self.degrees.append((paths, index_of, reducer, basis))
            if len(basis) == 0:
                return
        raise CapExceeded(
            "graded algebra did not terminate; graph is not of finite type"
        )

    def _prefix_end(self, base, cut):
        if cut == 0:
            return base[0]
        e, dr = base[cut]
        a = next(x for x in self.arrows if x.edge == e and x.dir == dr)
        return a.tgt

    def reduce(self, d, vec):
        """Reduce a raw path-space vector to quotient coordinates."""
        f = self.field
        paths, _, reducer, basis = self.degrees[d]
        v = list(vec)
        for pivcol, row in reducer:
            c = v[pivcol]
            if not f.is_zero(c):
                for j in range(len(v)):
                    v[j] = f.sub(v[j], f.mul(c, row[j]))
        return [v[j] for j in basis]

    def max_degree(self):
        return len(self.degrees) - 1


def injective_module(g, i, field):
    """The injective envelope of the i-th simple (finite type only)."""
    alg = _GradedQuotient(g, field)
    f = field
    # Quotient basis paths ending at i, grouped by start vertex.
    basis_paths = []  # list of (degree, path)
    for d, (paths, _, _, basis) in enumerate(alg.degrees):
        for j in basis:
            p = paths[j]
            if alg._path_end(p) == i:
                basis_paths.append((d, p))
    by_vertex = {v: [] for v in g.vertices()}
    for d, p in basis_paths:
        by_vertex[p[0]].append((d, p))
    index = {}
    for v in g.vertices():
        for loc, (d, p) in enumerate(by_vertex[v]):
            index[p] = loc
    dims = tuple(len(by_vertex[v]) for v in g.vertices())

    maps = {}
    for a in arrows_of(g):
        src, tgt = a.src, a.tgt
        # psi_a : paths (tgt -> i) -> paths (src -> i), p |-> reduce(p . a);
        # the dual module's arrow matrix is its transpose.
        nr, nc = len(by_vertex[tgt]), len(by_vertex[src])
        psi = Mat.zero(f, nc, nr)
        for col, (d, p) in enumerate(by_vertex[tgt]):
            new_path = (src,) + ((a.edge, a.dir),) + p[1:]
            paths_d1 = alg.degrees[d + 1][0] if d + 1 < len(alg.degrees) else []
            idx_map = alg.degrees[d + 1][1] if d + 1 < len(alg.degrees) else {}
            vec = [f.zero] * len(paths_d1)
            if new_path in idx_map:
                vec[idx_map[new_path]] = f.one
                coords = alg.reduce(d + 1, vec)
            else:
                coords = []
            # Express in the (src -> i) slice of the degree-(d+1) basis.
            if coords:
                basis_d1 = alg.degrees[d + 1][3]
                for bloc, j in enumerate(basis_d1):
                    bp = paths_d1[j]
                    if f.is_zero(coords[bloc]):
                        continue
                    if alg._path_end(bp) != i or bp[0] != src:
                        continue
                    psi.rows[index[bp]][col] = f.add(
                        psi.rows[index[bp]][col], coords[bloc]
                    )
        maps[(a.edge, a.dir)] = psi.transpose()
    return PModule(g, f, dims, maps)
