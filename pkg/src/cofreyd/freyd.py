"""Morphism category of finite-dimensional comodules and its two stable
quotients.

An object is a comodule map u: M -> N tagged with a flavor:
  B: morphisms (f, g) are congruent to zero when f factors as alpha u'
     for a comodule map alpha out of the source's N';
  A: morphisms are congruent to zero when g factors as u beta.
Zero tests, the three-term-complex completion with its null-homotopy
solver, the componentwise duality that swaps the flavors, and the
equivalence with comodules over the 3x upper-triangular matrix coalgebra
are all exact linear solves.
"""
from __future__ import annotations

from dataclasses import dataclass

from .linalg import Matrix, Subspace, SpanCoords, kernel_basis, rref_solve
from .coalgebra import matrix2_coalgebra
from .comodule import (Comodule, ComoduleMap, ComoduleError, dual_comodule, dual_map,
                       find_isomorphism, identity_map, intertwines, quotient_comodule,
                       zero_comodule)


class FreydError(ValueError):
    pass


class FreydObject:
    """An object (M, u, N) of the morphism category with a flavor tag."""

    def __init__(self, u, flavor="B"):
        if flavor not in ("B", "A"):
            raise FreydError("flavor must be 'B' or 'A'")
        self.u = u
        self.m = u.source
        self.n = u.target
        self.flavor = flavor

    @classmethod
    def from_parts(cls, m, umatrix, n, flavor="B"):
        return cls(ComoduleMap(m, n, umatrix), flavor=flavor)

    def __repr__(self):
        br = "[{} -> {}]" if self.flavor == "B" else "{{{} -> {}}}"
        return "Freyd" + br.format(self.m.dim, self.n.dim)

    def to_json(self):
        return {
            "schema": "cofreyd/freyd-object-1",
            "flavor": self.flavor,
            "M": self.m.to_json(),
            "u": self.u.matrix.to_json(),
            "N": self.n.to_json(),
        }

    @classmethod
    def from_json(cls, obj, parent):
        m = Comodule.from_json(obj["M"], parent)
        n = Comodule.from_json(obj["N"], parent)
        u = ComoduleMap(m, n, Matrix.from_json(obj["u"], parent.field))
        return cls(u, flavor=obj.get("flavor", "B"))


class FreydMap:
    """A commuting square (f, g): (M', u', N') -> (M, u, N); uf = gu'."""

    def __init__(self, source, target, f, g, _trusted=False):
        if source.flavor != target.flavor:
            raise FreydError("mixed flavors in a morphism")
        self.source = source
        self.target = target
        self.f = f
        self.g = g
        if not _trusted:
            if f.source is not source.m or f.target is not target.m:
                raise FreydError("f has wrong endpoints")
            if g.source is not source.n or g.target is not target.n:
                raise FreydError("g has wrong endpoints")
            if target.u.matrix.mul(f.matrix) != g.matrix.mul(source.u.matrix):
                raise FreydError("square does not commute")
        self.flavor = source.flavor

    def __repr__(self):
        return f"FreydMap({self.source!r} -> {self.target!r})"


def identity_square(o):
    return FreydMap(o, o, identity_map(o.m), identity_map(o.n), _trusted=True)


def compose_freyd(a, b):
    """The composite a after b (b.target must be a.source); the square
    condition is re-verified on the composite."""
    if b.target is not a.source:
        raise FreydError("squares not composable")
    f = a.f.compose(b.f)
    g = a.g.compose(b.g)
    return FreydMap(b.source, a.target, f, g)


def square_space(source, target):
    """Canonical basis of all commuting squares source -> target."""
    ms, ns = source.m, source.n
    mt, nt = target.m, target.n
    field = ms.field
    nf = mt.dim * ms.dim
    ng = nt.dim * ns.dim
    unknowns = nf + ng
    if unknowns == 0:
        return []
    rows = []
    # intertwining conditions for f and for g
    rows.extend(_intertwine_rows(ms, mt, 0, unknowns))
    rows.extend(_intertwine_rows(ns, nt, nf, unknowns))
    # commuting square: u_t f - g u_s = 0
    ut = target.u.matrix
    us = source.u.matrix
    for x in range(nt.dim):
        for s in range(ms.dim):
            row = [field.zero] * unknowns
            nz = False
            # f part: sum_b ut[x][b] f[b][s]
            for b in range(mt.dim):
                v = ut.data[x][b]
                if v:
                    row[b * ms.dim + s] = field.add(row[b * ms.dim + s], v)
                    nz = True
            # g part: - sum_c g[x][c] us[c][s]
            for c in range(ns.dim):
                v = us.data[c][s]
                if v:
                    idx = nf + x * ns.dim + c
                    row[idx] = field.sub(row[idx], v)
                    nz = True
            if nz:
                rows.append(row)
    if rows:
        basis = kernel_basis(Matrix(len(rows), unknowns, rows, field, _canonical=True))
    else:
        basis = [[field.zero] * unknowns for _ in range(unknowns)]
        for i in range(unknowns):
            basis[i][i] = field.one
    out = []
    for v in basis:
        fmat = Matrix(mt.dim, ms.dim, [v[i * ms.dim:(i + 1) * ms.dim] for i in range(mt.dim)], field, _canonical=True)
        gmat = Matrix(nt.dim, ns.dim, [v[nf + i * ns.dim: nf + (i + 1) * ns.dim] for i in range(nt.dim)], field, _canonical=True)
        out.append(FreydMap(source, target,
                            ComoduleMap(ms, mt, fmat, _trusted=True),
                            ComoduleMap(ns, nt, gmat, _trusted=True), _trusted=True))
    return out


def _intertwine_rows(src, tgt, offset, width):
    """Homogeneous rows forcing the (tgt.dim x src.dim) block at `offset`
    to intertwine the coactions."""
    field = src.field
    rows = []
    for k in range(src.parent.dim):
        a = src.slices()[k]
        b = tgt.slices()[k]
        if a.is_zero() and b.is_zero():
            continue
        for x in range(tgt.dim):
            for s in range(src.dim):
                row = [field.zero] * width
                nz = False
                for bi in range(src.dim):
                    v = a.data[bi][s]
                    if v:
                        idx = offset + x * src.dim + bi
                        row[idx] = field.add(row[idx], v)
                        nz = True
                for c in range(tgt.dim):
                    v = b.data[x][c]
                    if v:
                        idx = offset + c * src.dim + s
                        row[idx] = field.sub(row[idx], v)
                        nz = True
                if nz:
                    rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# zero tests


@dataclass
class ZeroMorphismResult:
    is_zero: bool
    witness: ComoduleMap | None = None      # alpha (B) or beta (A)
    split: tuple | None = None              # ((alpha u', u alpha), (0, g - u alpha))


def is_zero_morphism(fm):
    """Congruence-zero test for a square.

    flavor B: zero iff some comodule map alpha: N' -> M satisfies
    alpha u' = f; flavor A: zero iff some beta: N' -> M satisfies u beta = g.
    When zero in flavor B the explicit congruence split
    (f, g) = (alpha u', u alpha) + (0, g - u alpha) is returned.
    """
    src, tgt = fm.source, fm.target
    if fm.flavor == "B":
        alpha = _solve_factor(src.n, tgt.m, right=src.u.matrix, value=fm.f.matrix)
        if alpha is None:
            return ZeroMorphismResult(False)
        u = tgt.u.matrix
        first = (alpha.matrix.mul(src.u.matrix), u.mul(alpha.matrix))
        second = (Matrix.zero(tgt.m.dim, src.m.dim, src.m.field),
                  fm.g.matrix.sub(u.mul(alpha.matrix)))
        return ZeroMorphismResult(True, witness=alpha, split=(first, second))
    beta = _solve_factor(src.n, tgt.m, left=tgt.u.matrix, value=fm.g.matrix)
    if beta is None:
        return ZeroMorphismResult(False)
    return ZeroMorphismResult(True, witness=beta)


def _solve_factor(src, tgt, value, right=None, left=None):
    """A comodule map phi: src -> tgt with phi*right = value or left*phi = value."""
    field = src.field
    unknowns = tgt.dim * src.dim
    if unknowns == 0:
        target_zero = value.is_zero()
        return ComoduleMap(src, tgt, Matrix.zero(tgt.dim, src.dim, field), _trusted=True) if target_zero else None
    rows = _intertwine_rows(src, tgt, 0, unknowns)
    rhs = [field.zero] * len(rows)
    if right is not None:
        # (phi right)[x][s] = sum_c phi[x][c] right[c][s] = value[x][s]
        for x in range(tgt.dim):
            for s in range(right.cols):
                row = [field.zero] * unknowns
                for c in range(src.dim):
                    v = right.data[c][s]
                    if v:
                        row[x * src.dim + c] = v
                rows.append(row)
                rhs.append(value.data[x][s])
    if left is not None:
        # (left phi)[x][s] = sum_c left[x][c] phi[c][s] = value[x][s]
        for x in range(left.rows):
            for s in range(src.dim):
                row = [field.zero] * unknowns
                for c in range(tgt.dim):
                    v = left.data[x][c]
                    if v:
                        row[c * src.dim + s] = v
                rows.append(row)
                rhs.append(value.data[x][s])
    mat = Matrix(len(rows), unknowns, rows, field, _canonical=True)
    _, _, sol = rref_solve(mat, rhs)
    if sol is None:
        return None
    data = [sol.particular[i * src.dim:(i + 1) * src.dim] for i in range(tgt.dim)]
    return ComoduleMap(src, tgt, Matrix(tgt.dim, src.dim, data, field, _canonical=True))


def is_zero_object(o):
    """A flavor-B object is zero iff u is a split monomorphism, i.e. there is
    a comodule retraction r with r u = id.  Returns (flag, retraction)."""
    if o.flavor != "B":
        raise FreydError("zero-object test is defined on flavor B")
    r = _solve_factor(o.n, o.m, right=o.u.matrix, value=Matrix.identity(o.m.dim, o.m.field))
    return (r is not None), r


def zero_morphism_subspace_dim(source, target, flavor=None):
    """Dimension of the congruence-zero subgroup of squares source -> target."""
    flavor = flavor or source.flavor
    field = source.m.field
    squares = square_space(source, target)
    if not squares:
        return 0, 0
    width = target.m.dim * source.m.dim + target.n.dim * source.n.dim
    span = SpanCoords(field, width)
    if flavor == "B":
        # pairs (alpha u', u alpha + g0) with g0 u' = 0
        from .comodule import hom_space
        alphas = hom_space(source.n, target.m)
        u = target.u.matrix
        us = source.u.matrix
        for a in alphas:
            f = a.matrix.mul(us)
            g = u.mul(a.matrix)
            span.add(_flat_pair(f, g))
        for g0 in _maps_killing(source, target):
            span.add(_flat_pair(Matrix.zero(target.m.dim, source.m.dim, field), g0))
    else:
        # pairs (beta u' + f0, u beta) with u f0 = 0
        from .comodule import hom_space
        betas = hom_space(source.n, target.m)
        u = target.u.matrix
        us = source.u.matrix
        for b in betas:
            span.add(_flat_pair(b.matrix.mul(us), u.mul(b.matrix)))
        for f0 in _maps_killed_by(source, target):
            span.add(_flat_pair(f0, Matrix.zero(target.n.dim, source.n.dim, field)))
    return len(squares), span.dim


def _maps_killing(source, target):
    """Comodule maps g0: N' -> N with g0 u' = 0 (a linear condition on the
    hom-space coordinates)."""
    from .comodule import hom_space
    field = source.m.field
    us = source.u.matrix
    basis = hom_space(source.n, target.n)
    if not basis:
        return []
    rows = []
    for x in range(target.n.dim):
        for s in range(source.m.dim):
            rows.append([h.matrix.mul(us).data[x][s] for h in basis])
    mat = Matrix(len(rows), len(basis), rows, field, _canonical=True)
    coeffs = kernel_basis(mat) if rows else []
    outs = []
    for co in coeffs:
        m = Matrix.zero(target.n.dim, source.n.dim, field)
        for c, h in zip(co, basis):
            if c:
                m = m.add(h.matrix.scale(c))
        outs.append(m)
    return outs


def _maps_killed_by(source, target):
    """Comodule maps f0: M' -> M with u f0 = 0."""
    from .comodule import hom_space
    field = source.m.field
    basis = hom_space(source.m, target.m)
    if not basis:
        return []
    u = target.u.matrix
    rows = []
    for x in range(target.n.dim):
        for s in range(source.m.dim):
            rows.append([u.mul(h.matrix).data[x][s] for h in basis])
    mat = Matrix(len(rows), len(basis), rows, field, _canonical=True)
    coeffs = kernel_basis(mat)
    outs = []
    for co in coeffs:
        m = Matrix.zero(target.m.dim, source.m.dim, field)
        for c, h in zip(co, basis):
            if c:
                m = m.add(h.matrix.scale(c))
        outs.append(m)
    return outs


def freyd_hom_dim(source, target):
    """dim of Hom in the stable quotient: squares modulo congruence-zero."""
    total, zero = zero_morphism_subspace_dim(source, target)
    return total - zero


def _flat_pair(f, g):
    return [x for row in f.data for x in row] + [x for row in g.data for x in row]


# ---------------------------------------------------------------------------
# three-term complexes and null homotopy


@dataclass
class ThreeTermComplex:
    m: Comodule
    n: Comodule
    p: Comodule
    u: ComoduleMap
    proj: ComoduleMap
    exact: bool = True


def complete_to_complex(o):
    """Complete (M, u, N) to the exact complex M -> N -> coker(u) -> 0."""
    field = o.m.field
    image = Subspace.from_vectors(
        [o.u.matrix.col(j) for j in range(o.m.dim)], o.n.dim, field)
    coker, proj = quotient_comodule(o.n, image, name=(o.n.name or "N") + "/im")
    comp = ThreeTermComplex(o.m, o.n, coker, o.u, proj)
    if not proj.matrix.mul(o.u.matrix).is_zero():
        raise FreydError("completion is not a complex")
    return comp


@dataclass
class ChainMap3:
    source: ThreeTermComplex
    target: ThreeTermComplex
    f: ComoduleMap
    g: ComoduleMap
    h: ComoduleMap


def complete_map(fm):
    """Extend a square to a chain map between the completed complexes."""
    src = complete_to_complex(fm.source)
    tgt = complete_to_complex(fm.target)
    field = fm.f.matrix.field
    # h( [n'] ) = [ g(n') ]: lift complement coordinates, push through g, project
    lift_cols = []
    qdim = src.p.dim
    # complement coordinates of the source image
    image = Subspace.from_vectors(
        [fm.source.u.matrix.col(j) for j in range(fm.source.m.dim)], fm.source.n.dim, field)
    piv = set()
    for row in image.basis.data:
        piv.add(next(j for j, x in enumerate(row) if x))
    keep = [j for j in range(fm.source.n.dim) if j not in piv]
    lift = Matrix.zero(fm.source.n.dim, qdim, field)
    for a, j in enumerate(keep):
        lift.data[j][a] = field.one
    hmat = tgt.proj.matrix.mul(fm.g.matrix).mul(lift)
    h = ComoduleMap(src.p, tgt.p, hmat)
    if h.matrix.mul(src.proj.matrix) != tgt.proj.matrix.mul(fm.g.matrix):
        raise FreydError("induced map on cokernels does not commute")
    return ChainMap3(src, tgt, fm.f, fm.g, h)


def null_homotopy(cm_or_fm):
    """Homotopy data (alpha: N' -> M, alpha': Coker(u') -> N) with
    alpha u' = f and u alpha + alpha' p' = g; returns (flag, data)."""
    cm = cm_or_fm if isinstance(cm_or_fm, ChainMap3) else complete_map(cm_or_fm)
    src, tgt = cm.source, cm.target
    field = cm.f.matrix.field
    na = tgt.m.dim * src.n.dim          # alpha unknowns
    nb = tgt.n.dim * src.p.dim          # alpha' unknowns
    unknowns = na + nb
    rows = _intertwine_rows(src.n, tgt.m, 0, unknowns)
    rows += _intertwine_rows(src.p, tgt.n, na, unknowns)
    rhs = [field.zero] * len(rows)
    ups = src.u.matrix      # u'
    ut = tgt.u.matrix       # u
    pps = src.proj.matrix   # p'
    # alpha u' = f
    for x in range(tgt.m.dim):
        for s in range(src.m.dim):
            row = [field.zero] * unknowns
            for c in range(src.n.dim):
                v = ups.data[c][s]
                if v:
                    row[x * src.n.dim + c] = v
            rows.append(row)
            rhs.append(cm.f.matrix.data[x][s])
    # u alpha + alpha' p' = g
    for x in range(tgt.n.dim):
        for s in range(src.n.dim):
            row = [field.zero] * unknowns
            for c in range(tgt.m.dim):
                v = ut.data[x][c]
                if v:
                    row[c * src.n.dim + s] = field.add(row[c * src.n.dim + s], v)
            for c in range(src.p.dim):
                v = pps.data[c][s]
                if v:
                    idx = na + x * src.p.dim + c
                    row[idx] = field.add(row[idx], v)
            rows.append(row)
            rhs.append(cm.g.matrix.data[x][s])
    mat = Matrix(len(rows), unknowns, rows, field, _canonical=True)
    _, _, sol = rref_solve(mat, rhs)
    if sol is None:
        return False, None
    av = sol.particular[:na]
    bv = sol.particular[na:]
    alpha = ComoduleMap(src.n, tgt.m,
                        Matrix(tgt.m.dim, src.n.dim,
                               [av[i * src.n.dim:(i + 1) * src.n.dim] for i in range(tgt.m.dim)],
                               field, _canonical=True))
    aprime = ComoduleMap(src.p, tgt.n,
                         Matrix(tgt.n.dim, src.p.dim,
                                [bv[i * src.p.dim:(i + 1) * src.p.dim] for i in range(tgt.n.dim)],
                                field, _canonical=True))
    # p alpha' = h comes for free; keep it as a consistency assertion
    if cm.target.proj.matrix.mul(aprime.matrix) != cm.h.matrix:
        raise FreydError("homotopy data inconsistent with the induced map")
    return True, (alpha, aprime)


# ---------------------------------------------------------------------------
# duality (flavor flip)


def dual_freyd_object(o):
    """(M, u, N) -> (N*, u*, M*) on the opposite side with flipped flavor."""
    nd = dual_comodule(o.n)
    md = dual_comodule(o.m)
    ud = dual_map(o.u, dual_source=nd, dual_target=md)
    return FreydObject(ud, flavor="A" if o.flavor == "B" else "B")


def dual_freyd_map(fm, dual_src=None, dual_tgt=None):
    """Dual of (f, g): o' -> o is (g*, f*): dual(o) -> dual(o')."""
    dsrc = dual_src or dual_freyd_object(fm.target)
    dtgt = dual_tgt or dual_freyd_object(fm.source)
    f2 = ComoduleMap(dsrc.m, dtgt.m, fm.g.matrix.transpose(), _trusted=False)
    g2 = ComoduleMap(dsrc.n, dtgt.n, fm.f.matrix.transpose(), _trusted=False)
    return FreydMap(dsrc, dtgt, f2, g2)


# ---------------------------------------------------------------------------
# equivalence with comodules over the matrix coalgebra


def matrix_comodule_equivalence(o, m2=None):
    """The comodule over matrix2_coalgebra(C) attached to u: M -> N.

    Underlying space M + N (M block first).  The N block coacts into the
    (1,1) block; the M block coacts into the (2,2) block plus, twisted
    through u, into the (1,2) block.  The printed one-line formula this
    corrects mixes the two blocks' indices and fails the counit axiom; the
    version here is forced by coassociativity, which is re-verified on
    every output.
    """
    if o.m.side != "right":
        raise FreydError("the matrix-comodule equivalence is stated for right comodules")
    c = o.m.parent
    m2 = m2 or matrix2_coalgebra(c)
    if m2.dim != 3 * c.dim:
        raise FreydError("matrix coalgebra does not match the parent")
    field = c.field
    n = c.dim
    mm, mn = o.m.dim, o.n.dim
    u = o.u.matrix
    coaction = {}
    for (s, t, k), v in o.m.coaction.items():
        # m-part into the (2,2) block
        coaction[(s, t, 2 * n + k)] = v
        # u-twisted part into the (1,2) block
        for a in range(mn):
            w = u.data[a][t]
            if w:
                key = (s, mm + a, n + k)
                cur = field.add(coaction.get(key, field.zero), field.mul(v, w))
                if cur:
                    coaction[key] = cur
                else:
                    coaction.pop(key, None)
    for (s, t, k), v in o.n.coaction.items():
        coaction[(mm + s, mm + t, k)] = v
    t = Comodule("right", mm + mn, coaction, m2,
                 name=f"pair({o.m.name or 'M'},{o.n.name or 'N'})")
    return t


def inverse_matrix_comodule(t, c):
    """Recover (E-part -> F-part) from a comodule over matrix2_coalgebra(C).

    The two corner counit functionals of the matrix coalgebra act as
    complementary idempotent projections; the middle-block counit functional
    acts as the connecting morphism.
    """
    field = c.field
    n = c.dim
    if t.parent.dim != 3 * n:
        raise FreydError("comodule is not over the matrix coalgebra of C")
    slices = t.slices()
    pf = Matrix.zero(t.dim, t.dim, field)
    pe = Matrix.zero(t.dim, t.dim, field)
    ucon = Matrix.zero(t.dim, t.dim, field)
    for k in range(n):
        e = c.epsilon[k]
        if not e:
            continue
        pf = pf.add(slices[k].scale(e))
        ucon = ucon.add(slices[n + k].scale(e))
        pe = pe.add(slices[2 * n + k].scale(e))
    if pf.mul(pf) != pf or pe.mul(pe) != pe:
        raise FreydError("corner functionals do not act idempotently")
    if pf.add(pe) != Matrix.identity(t.dim, field):
        raise FreydError("corner projections do not decompose the comodule")
    w = Subspace.from_vectors([pe.col(j) for j in range(t.dim)], t.dim, field)
    v = Subspace.from_vectors([pf.col(j) for j in range(t.dim)], t.dim, field)
    wcom = _corner_comodule(t, w, c, block=2, name="E-part")
    vcom = _corner_comodule(t, v, c, block=0, name="F-part")
    # connecting morphism: left action of the middle-block counit functional
    data = []
    for bvec in w.basis.data:
        img = ucon.apply(bvec)
        coords = v.coords(img)
        if coords is None:
            raise FreydError("connecting action leaves the F-part")
        data.append(coords)
    umat = Matrix(v.dim, w.dim, [list(col) for col in zip(*data)] if data else [[] for _ in range(v.dim)], field)
    u = ComoduleMap(wcom, vcom, umat)
    return FreydObject(u, flavor="B")


def _corner_comodule(t, sub, c, block, name):
    """Corestrict a matrix-coalgebra comodule to a corner subspace, reading
    coalgebra indices from the given block."""
    field = c.field
    n = c.dim
    lo, hi = block * n, (block + 1) * n
    coaction = {}
    by_source = t.coaction_by_source()
    for s, bvec in enumerate(sub.basis.data):
        acc = {}
        for idx, x in enumerate(bvec):
            if not x:
                continue
            for tt, kk, v in by_source[idx]:
                key = (tt, kk)
                acc[key] = field.add(acc.get(key, field.zero), field.mul(x, v))
        bycol = {}
        for (tt, kk), v in acc.items():
            if v:
                bycol.setdefault(kk, [field.zero] * t.dim)[tt] = v
        for kk, col in bycol.items():
            if lo <= kk < hi:
                coords = sub.coords(col)
                if coords is None:
                    raise FreydError("corner coaction leaves the corner")
                for a, cc in enumerate(coords):
                    if cc:
                        coaction[(s, a, kk - lo)] = cc
            else:
                # off-corner terms must pair the other corner with the
                # middle block (the u-twist); anything else is invalid
                if not (n <= kk < 2 * n):
                    raise FreydError("unexpected coaction block")
    return Comodule(t.side, sub.dim, coaction, c, name=name)


def freyd_isomorphism(o1, o2, rng=None, tries=64):
    """An invertible square o1 -> o2 (both components invertible), or None."""
    if (o1.m.dim, o1.n.dim) != (o2.m.dim, o2.n.dim):
        return None
    basis = square_space(o1, o2)
    if not basis and (o1.m.dim + o1.n.dim) == 0:
        return identity_square(o1) if (o2.m.dim + o2.n.dim) == 0 else None
    for sq in basis:
        if _pair_invertible(sq):
            return sq
    field = o1.m.field
    import random
    r = rng or random.Random(11)
    for _ in range(tries):
        f = Matrix.zero(o2.m.dim, o1.m.dim, field)
        g = Matrix.zero(o2.n.dim, o1.n.dim, field)
        for sq in basis:
            cval = field.of(r.randint(-3, 3)) if field.char == 0 else field.of(r.randrange(field.char))
            if cval:
                f = f.add(sq.f.matrix.scale(cval))
                g = g.add(sq.g.matrix.scale(cval))
        try:
            cand = FreydMap(o1, o2, ComoduleMap(o1.m, o2.m, f, _trusted=True),
                            ComoduleMap(o1.n, o2.n, g, _trusted=True), _trusted=True)
        except FreydError:
            continue
        if _pair_invertible(cand):
            return cand
    return None


def _pair_invertible(sq):
    from .comodule import _is_invertible
    fok = sq.f.matrix.rows == sq.f.matrix.cols and (sq.f.matrix.rows == 0 or _is_invertible(sq.f.matrix))
    gok = sq.g.matrix.rows == sq.g.matrix.cols and (sq.g.matrix.rows == 0 or _is_invertible(sq.g.matrix))
    return fok and gok
