"""Finite-dimensional left/right comodules over a coalgebra.

A comodule stores a sparse coaction tensor coaction[(s, t, k)]:
  right side: rho(e_s)   = sum e_t (x) b_k,
  left side:  lambda(e_s) = sum b_k (x) e_t.
Slice k of the tensor is the matrix of the rational action of the k-th dual
basis functional; comodule maps are exactly the joint intertwiners of the
slices, so hom spaces, socles, spinning and splittings are all plain exact
linear algebra.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .linalg import (LinalgError, Matrix, MultTable, SpanCoords, Subspace,
                     kernel_basis, rref_solve, subspace_sum, trace_form_radical)
from .coalgebra import coradical


class ComoduleError(ValueError):
    pass


# ---------------------------------------------------------------------------
# raw coaction axioms (shared with Bicomodule validation)


def coaction_axiom_defects(coaction, dim, parent, side):
    """Indices s where the counit or coassociativity axiom fails."""
    field = parent.field
    by_s = [[] for _ in range(dim)]
    for (s, t, k), v in sorted(coaction.items()):
        by_s[s].append((t, k, v))
    bad = set()
    for s in range(dim):
        # counit: sum_k coaction[(s,t,k)] eps(b_k) = delta_{ts}
        acc = {}
        for t, k, v in by_s[s]:
            e = parent.epsilon[k]
            if e:
                acc[t] = field.add(acc.get(t, field.zero), field.mul(e, v))
        acc = {t: v for t, v in acc.items() if v}
        if acc != {s: field.one}:
            bad.add(s)
            continue
        # coassociativity, expanded on triples
        lhs = {}
        rhs = {}
        if side == "right":
            # (rho (x) id) rho = (id (x) Delta) rho
            for t, k, v in by_s[s]:
                for a, i, w in by_s[t]:
                    key = (a, i, k)
                    _acc(lhs, key, field.mul(v, w), field)
            for t, k, v in by_s[s]:
                for i, j, w in parent.delta_of(k):
                    key = (t, i, j)
                    _acc(rhs, key, field.mul(v, w), field)
        else:
            # (Delta (x) id) lambda = (id (x) lambda) lambda
            for t, k, v in by_s[s]:
                for i, j, w in parent.delta_of(k):
                    key = (i, j, t)
                    _acc(lhs, key, field.mul(v, w), field)
            for t, k, v in by_s[s]:
                for a, j, w in by_s[t]:
                    key = (k, j, a)
                    _acc(rhs, key, field.mul(v, w), field)
        if lhs != rhs:
            bad.add(s)
    return sorted(bad)


def _acc(d, key, val, field):
    s = field.add(d.get(key, field.zero), val)
    if s:
        d[key] = s
    else:
        d.pop(key, None)


# ---------------------------------------------------------------------------
# comodules


class Comodule:
    def __init__(self, side, dim, coaction, parent, name=None, _trusted=False):
        if side not in ("left", "right"):
            raise ComoduleError("side must be 'left' or 'right'")
        self.side = side
        self.dim = dim
        self.parent = parent
        self.name = name
        of = parent.field.of
        self.coaction = {}
        for (s, t, k), v in coaction.items():
            v = of(v)
            if v:
                self.coaction[(s, t, k)] = v
        self._slices = None
        self._sparse_slices = None
        self._by_source = None
        if not _trusted:
            bad = coaction_axiom_defects(self.coaction, dim, parent, side)
            if bad:
                raise ComoduleError(f"coaction fails the comodule axioms at {bad}")

    @property
    def field(self):
        return self.parent.field

    def slices(self):
        """slices()[k] = matrix of the k-th dual basis functional acting."""
        if self._slices is None:
            n = self.parent.dim
            mats = [Matrix.zero(self.dim, self.dim, self.field) for _ in range(n)]
            for (s, t, k), v in self.coaction.items():
                mats[k].data[t][s] = v
            self._slices = mats
        return self._slices

    def sparse_slices(self):
        """sparse_slices()[k] = list of (source, target, value) triples."""
        if self._sparse_slices is None:
            sl = [[] for _ in range(self.parent.dim)]
            for (s, t, k), v in sorted(self.coaction.items()):
                sl[k].append((s, t, v))
            self._sparse_slices = sl
        return self._sparse_slices

    def coaction_by_source(self):
        """coaction_by_source()[s] = list of (target, k, value) triples."""
        if self._by_source is None:
            by_s = [[] for _ in range(self.dim)]
            for (s, t, k), v in sorted(self.coaction.items()):
                by_s[s].append((t, k, v))
            self._by_source = by_s
        return self._by_source

    def apply_slice(self, k, vec):
        field = self.field
        out = [field.zero] * self.dim
        for s, t, v in self.sparse_slices()[k]:
            if vec[s]:
                out[t] = field.add(out[t], field.mul(v, vec[s]))
        return out

    def act(self, functional, vec):
        """Rational action of a dual-space coordinate vector on `vec`."""
        field = self.field
        out = [field.zero] * self.dim
        for k, c in enumerate(functional):
            if not c:
                continue
            a = self.apply_slice(k, vec)
            out = [field.add(x, field.mul(c, y)) for x, y in zip(out, a)]
        return out

    def coaction_matrix(self):
        """Matrix of the coaction with Kronecker-flattened target.

        right: M -> M (x) C with row (t, k) -> t*n + k;
        left:  M -> C (x) M with row (k, t) -> k*m + t.
        """
        field = self.field
        n = self.parent.dim
        m = Matrix.zero(self.dim * n, self.dim, field)
        for (s, t, k), v in self.coaction.items():
            r = t * n + k if self.side == "right" else k * self.dim + t
            m.data[r][s] = v
        return m

    def validate(self):
        return coaction_axiom_defects(self.coaction, self.dim, self.parent, self.side)

    def __repr__(self):
        nm = self.name or "comodule"
        return f"Comodule({nm}, {self.side}, dim {self.dim})"

    def to_json(self):
        f = self.field
        return {
            "schema": "cofreyd/comodule-1",
            "name": self.name,
            "side": self.side,
            "dim": self.dim,
            "coaction": [[s, t, k, f.fmt(v)] for (s, t, k), v in sorted(self.coaction.items())],
        }

    @classmethod
    def from_json(cls, obj, parent):
        f = parent.field
        coaction = {}
        for s, t, k, v in obj["coaction"]:
            coaction[(int(s), int(t), int(k))] = f.parse(v)
        return cls(obj["side"], int(obj["dim"]), coaction, parent, name=obj.get("name"))


def zero_comodule(parent, side):
    return Comodule(side, 0, {}, parent, name="0")


def regular_comodule(c, side, name=None):
    """C as a comodule over itself via its comultiplication."""
    if side == "right":
        coaction = {(k, i, j): v for (k, i, j), v in c.delta.items()}
    else:
        coaction = {(k, j, i): v for (k, i, j), v in c.delta.items()}
    return Comodule(side, c.dim, coaction, c, name=name or f"{c.name or 'C'}:{side}")


def direct_sum(ms, name=None):
    if not ms:
        raise ComoduleError("empty direct sum")
    side, parent = ms[0].side, ms[0].parent
    for m in ms:
        if m.side != side or m.parent is not parent:
            raise ComoduleError("direct sum needs one side and one parent")
    coaction = {}
    off = 0
    for m in ms:
        for (s, t, k), v in m.coaction.items():
            coaction[(off + s, off + t, k)] = v
        off += m.dim
    return Comodule(side, off, coaction, parent, name=name or "+".join(m.name or "?" for m in ms),
                    _trusted=True)


class ComoduleMap:
    """A linear map intertwining two coactions (column convention)."""

    def __init__(self, source, target, matrix, _trusted=False):
        if source.side != target.side or source.parent is not target.parent:
            raise ComoduleError("comodule map needs matching side and parent")
        if matrix.rows != target.dim or matrix.cols != source.dim:
            raise ComoduleError("comodule map matrix has wrong shape")
        self.source = source
        self.target = target
        self.matrix = matrix
        if not _trusted and not intertwines(source, target, matrix):
            raise ComoduleError("matrix does not intertwine the coactions")

    def compose(self, other):
        """self after other."""
        if other.target is not self.source:
            raise ComoduleError("maps not composable")
        return ComoduleMap(other.source, self.target, self.matrix.mul(other.matrix), _trusted=True)

    def is_zero(self):
        return self.matrix.is_zero()

    def __repr__(self):
        return f"ComoduleMap({self.source.dim}->{self.target.dim})"


def intertwines(source, target, matrix):
    field = source.field
    data = matrix.data
    tdim = matrix.rows
    sdim = matrix.cols
    for k in range(source.parent.dim):
        a = source.sparse_slices()[k]
        b = target.sparse_slices()[k]
        if not a and not b:
            continue
        lhs = {}
        for s, t, v in a:
            # (phi A_k)[x][s] += phi[x][t] * v
            for x in range(tdim):
                mv = data[x][t]
                if mv:
                    key = (x, s)
                    val = field.add(lhs.get(key, field.zero), field.mul(mv, v))
                    if val:
                        lhs[key] = val
                    else:
                        lhs.pop(key, None)
        for s, t, w in b:
            # (B_k phi)[t][y] += w * phi[s][y]
            row = data[s]
            for y in range(sdim):
                if row[y]:
                    key = (t, y)
                    val = field.sub(lhs.get(key, field.zero), field.mul(w, row[y]))
                    if val:
                        lhs[key] = val
                    else:
                        lhs.pop(key, None)
        if lhs:
            return False
    return True


def identity_map(m):
    return ComoduleMap(m, m, Matrix.identity(m.dim, m.field), _trusted=True)


# ---------------------------------------------------------------------------
# hom spaces


def hom_space(m, n):
    """Canonical basis of the space of comodule maps m -> n.

    Solves the joint intertwining system phi A_k = B_k phi over all slices;
    the basis is the RREF-canonical kernel basis, reshaped.
    """
    if m.side != n.side or m.parent is not n.parent:
        raise ComoduleError("hom space needs matching side and parent")
    field = m.field
    dm, dn = m.dim, n.dim
    if dm == 0 or dn == 0:
        return []
    unknowns = dn * dm   # phi[a][b], row-major
    rows = []
    for k in range(m.parent.dim):
        a = m.slices()[k]
        b = n.slices()[k]
        acols = [set() for _ in range(dm)]
        for t in range(dm):
            for s in range(dm):
                if a.data[t][s]:
                    acols[s].add(t)
        brows = [set() for _ in range(dn)]
        for t in range(dn):
            for s in range(dn):
                if b.data[t][s]:
                    brows[t].add(s)
        scols = [s for s in range(dm) if acols[s]]
        trows = [t for t in range(dn) if brows[t]]
        if not scols and not trows:
            continue
        # equation (x, s): sum_b phi[x][b] A[b][s] - sum_c B[x][c] phi[c][s] = 0
        seen = set()
        for x in range(dn):
            for s in scols:
                seen.add((x, s))
        for x in trows:
            for s in range(dm):
                seen.add((x, s))
        for (x, s) in sorted(seen):
            row = [field.zero] * unknowns
            any_nz = False
            for b_i in acols[s]:
                row[x * dm + b_i] = field.add(row[x * dm + b_i], a.data[b_i][s])
                any_nz = True
            for c in brows[x]:
                row[c * dm + s] = field.sub(row[c * dm + s], b.data[x][c])
                any_nz = True
            if any_nz:
                rows.append(row)
    if not rows:
        basis = []
        for idx in range(unknowns):
            v = [field.zero] * unknowns
            v[idx] = field.one
            basis.append(v)
    else:
        mat = Matrix(len(rows), unknowns, rows, field, _canonical=True)
        basis = kernel_basis(mat)
    out = []
    for v in basis:
        data = [v[x * dm:(x + 1) * dm] for x in range(dn)]
        out.append(ComoduleMap(m, n, Matrix(dn, dm, data, field, _canonical=True), _trusted=True))
    return out


def hom_dim(m, n):
    return len(hom_space(m, n))


def find_isomorphism(m, n, rng=None, tries=64):
    """An invertible comodule map m -> n, or None.

    Tries basis elements of the hom space, then deterministic small
    combinations (seeded when rng is given).
    """
    if m.dim != n.dim:
        return None
    if m.dim == 0:
        return identity_map(m) if n.dim == 0 else None
    basis = hom_space(m, n)
    if not basis:
        return None
    for h in basis:
        if _is_invertible(h.matrix):
            return h
    field = m.field
    import random
    r = rng or random.Random(7)
    for _ in range(tries):
        coeffs = [field.of(r.randint(-3, 3)) if field.char == 0 else field.of(r.randrange(field.char))
                  for _ in basis]
        mat = Matrix.zero(n.dim, m.dim, field)
        for c, h in zip(coeffs, basis):
            if c:
                mat = mat.add(h.matrix.scale(c))
        if _is_invertible(mat):
            return ComoduleMap(m, n, mat, _trusted=True)
    return None


def _is_invertible(mat):
    if mat.rows != mat.cols:
        return False
    _, piv, _ = rref_solve(mat)
    return len(piv) == mat.rows


def inverse_matrix(mat):
    field = mat.field
    n = mat.rows
    aug = [row[:] + Matrix.identity(n, field).data[i] for i, row in enumerate(mat.data)]
    from .linalg import _rref_in_place
    piv = _rref_in_place(aug, 2 * n, field, no_pivot_from=n)
    if len(piv) != n:
        raise LinalgError("matrix not invertible")
    return Matrix(n, n, [row[n:] for row in aug], field, _canonical=True)


# ---------------------------------------------------------------------------
# subobjects and quotients


def spin_subcomodule(m, vectors):
    """Smallest coaction-stable subspace containing the given vectors."""
    field = m.field
    span = SpanCoords(field, m.dim)
    work = []
    for v in vectors:
        v = [field.of(x) for x in v]
        if span.add(v):
            work.append(v)
    nonzero = [k for k, sl in enumerate(m.sparse_slices()) if sl]
    while work:
        v = work.pop()
        for k in nonzero:
            w = m.apply_slice(k, v)
            if any(w) and span.add(w):
                work.append(w)
    sub = Subspace.from_vectors(span.rows, m.dim, field)
    if not is_stable_subspace(m, sub):
        raise ComoduleError("spin produced an unstable subspace")
    return sub


def subcomodule_generated(m, v):
    return spin_subcomodule(m, [v])


def is_stable_subspace(m, sub):
    nonzero = [k for k, sl in enumerate(m.sparse_slices()) if sl]
    return all(sub.contains_vector(m.apply_slice(k, v))
               for v in sub.basis.data for k in nonzero)


def sub_comodule(m, sub, name=None):
    """Restrict the coaction to a stable subspace; returns (comodule, inclusion)."""
    field = m.field
    if not is_stable_subspace(m, sub):
        raise ComoduleError("subspace is not a subcomodule")
    d = sub.dim
    coaction = {}
    by_source = m.coaction_by_source()
    for s, vec in enumerate(sub.basis.data):
        acc = {}
        for idx, x in enumerate(vec):
            if not x:
                continue
            for t, k, v in by_source[idx]:
                key = (t, k)
                acc[key] = field.add(acc.get(key, field.zero), field.mul(x, v))
        bycol = {}
        for (t, k), v in acc.items():
            if v:
                bycol.setdefault(k, [field.zero] * m.dim)[t] = v
        for k, col in bycol.items():
            coords = sub.coords(col)
            if coords is None:
                raise ComoduleError("subspace is not a subcomodule")
            for t, cc in enumerate(coords):
                if cc:
                    coaction[(s, t, k)] = cc
    sm = Comodule(m.side, d, coaction, m.parent, name=name)
    inc = ComoduleMap(sm, m, Matrix(m.dim, d, [list(col) for col in zip(*sub.basis.data)] if d else [[] for _ in range(m.dim)], field), _trusted=False)
    return sm, inc


def quotient_comodule(m, sub, name=None):
    """Quotient by a subcomodule on the complement coordinates of its echelon
    basis; returns (comodule, projection)."""
    field = m.field
    if not is_stable_subspace(m, sub):
        raise ComoduleError("subspace is not a subcomodule")
    piv = set()
    for row in sub.basis.data:
        piv.add(next(j for j, x in enumerate(row) if x))
    keep = [j for j in range(m.dim) if j not in piv]
    q = len(keep)
    pos = {j: a for a, j in enumerate(keep)}
    # projection matrix (q x dim): e_j -> residue coordinates
    unit = []
    for j in range(m.dim):
        v = [field.zero] * m.dim
        v[j] = field.one
        unit.append(v)
    red = [sub.reduce(unit[j]) for j in range(m.dim)]
    proj = Matrix(q, m.dim, [[red[j][keep[a]] for j in range(m.dim)] for a in range(q)], field, _canonical=True)
    coaction = {}
    for (s, t, k), v in m.coaction.items():
        if s in piv:
            continue
        # project the target factor
        r = red[t]
        for a in range(q):
            x = r[keep[a]]
            if x:
                key = (pos[s], a, k)
                cur = field.add(coaction.get(key, field.zero), field.mul(v, x))
                if cur:
                    coaction[key] = cur
                else:
                    coaction.pop(key, None)
    # classes of the complement coordinates represent the quotient, so sources
    # at pivot coordinates contribute nothing
    qm = Comodule(m.side, q, coaction, m.parent, name=name)
    prj = ComoduleMap(m, qm, proj, _trusted=False)
    return qm, prj


# ---------------------------------------------------------------------------
# socle and Loewy structure


@dataclass
class StructureReport:
    socle: Subspace
    loewy: list
    flags: dict = dc_field(default_factory=dict)

    def to_json(self):
        return {
            "socle": self.socle.to_json(),
            "loewy": [t.to_json() for t in self.loewy],
            "loewy_dims": [t.dim for t in self.loewy],
            "flags": dict(sorted(self.flags.items())),
        }


def socle(m):
    """Largest subspace V with coaction(V) inside V (x) C_0 (resp. C_0 (x) V):
    computed as the preimage of M (x) C_0 under the coaction."""
    field = m.field
    c0 = coradical(m.parent)
    if m.dim == 0:
        return Subspace.zero(0, field)
    n = m.parent.dim
    unit = []
    for i in range(n):
        v = [field.zero] * n
        v[i] = field.one
        unit.append(v)
    red = [c0.reduce(unit[k]) for k in range(n)]
    keep = [j for j in range(n) if not c0.contains_vector(unit[j])]
    # rows: for source s, the reduced-k components per target t
    rows_by_pair = {}
    for (s, t, k), v in m.coaction.items():
        r = red[k]
        for j in keep:
            x = r[j]
            if x:
                key = (t, j)
                row = rows_by_pair.setdefault(key, [field.zero] * m.dim)
                row[s] = field.add(row[s], field.mul(v, x))
    rows = [row for key, row in sorted(rows_by_pair.items())]
    if not rows:
        return Subspace.full(m.dim, field)
    mat = Matrix(len(rows), m.dim, rows, field, _canonical=True)
    return Subspace.from_vectors(kernel_basis(mat), m.dim, field)


def socle_and_loewy(m):
    """Socle and the ascending Loewy chain (strictly increasing up to M)."""
    field = m.field
    chain = [socle(m)]
    while chain[-1].dim < m.dim:
        prev = chain[-1]
        qm, prj = quotient_comodule(m, prev)
        s = socle(qm)
        # pull back: preimage of s under the projection
        vecs = [list(v) for v in prev.basis.data]
        for row in s.basis.data:
            # lift quotient coordinates back to M
            piv = set()
            for r in prev.basis.data:
                piv.add(next(j for j, x in enumerate(r) if x))
            keep = [j for j in range(m.dim) if j not in piv]
            lift = [field.zero] * m.dim
            for a, x in enumerate(row):
                lift[keep[a]] = x
            vecs.append(lift)
        nxt = Subspace.from_vectors(vecs, m.dim, field)
        if nxt.dim <= prev.dim:
            raise ComoduleError("Loewy chain failed to ascend")
        chain.append(nxt)
    return StructureReport(socle=chain[0] if chain else Subspace.zero(m.dim, field), loewy=chain)


def loewy_layers(m, report=None):
    """The subquotient comodules L_{i+1}/L_i of the Loewy chain."""
    rep = report or socle_and_loewy(m)
    layers = []
    prev = None
    for term in rep.loewy:
        if prev is None:
            sm, _ = sub_comodule(m, term)
            layers.append(sm)
        else:
            sm, _ = sub_comodule(m, term)
            inner = Subspace.from_vectors([sm_coords for sm_coords in _coords_in(term, prev)], sm.dim, m.field)
            qm, _ = quotient_comodule(sm, inner)
            layers.append(qm)
        prev = term
    return layers


def _coords_in(big, small):
    out = []
    for v in small.basis.data:
        c = big.coords(v)
        if c is None:
            raise ComoduleError("chain terms not nested")
        out.append(c)
    return out


# ---------------------------------------------------------------------------
# injectivity


def is_injective(m):
    """Cofree-splitting test: does the coaction rho: M -> M (x) C admit a
    comodule retraction sigma with sigma rho = id?

    Comodule maps out of the cofree comodule correspond to linear families
    of comodule maps C -> M indexed by M, so the solve happens in
    M* (x) Hom(C, M), and the witness is verified against the raw
    definition before it is returned.  Returns (flag, witness or None).
    """
    if m.dim == 0:
        return True, Matrix.zero(0, 0, m.field)
    field = m.field
    c = m.parent
    reg = regular_comodule(c, m.side)
    taus = hom_space(reg, m)
    h = len(taus)
    if h == 0:
        return False, None
    # unknowns lam[t][a] with sigma(e_t (x) b_k) = sum_a lam[t][a] tau_a(b_k)
    # retraction condition on basis e_s: sum_{(t,k)} rho_{s,t,k} tau_a(b_k) lam[t][a] = e_s
    unknowns = m.dim * h
    rows = []
    rhs = []
    tau_cols = [[tau.matrix.col(k) for k in range(c.dim)] for tau in taus]
    coeff = {}
    for (s, t, k), v in m.coaction.items():
        for a in range(h):
            col = tau_cols[a][k]
            for x in range(m.dim):
                if col[x]:
                    key = (s, x, t * h + a)
                    coeff[key] = field.add(coeff.get(key, field.zero), field.mul(v, col[x]))
    for s in range(m.dim):
        for x in range(m.dim):
            row = [field.zero] * unknowns
            for (s0, x0, u), v in coeff.items():
                if s0 == s and x0 == x:
                    row[u] = v
            rows.append(row)
            rhs.append(field.one if x == s else field.zero)
    mat = Matrix(len(rows), unknowns, rows, field, _canonical=True)
    _, _, sol = rref_solve(mat, rhs)
    if sol is None:
        return False, None
    lam = sol.particular
    # assemble sigma: M (x) C -> M, columns indexed Kronecker (t, k) or (k, t)
    n = c.dim
    sigma = Matrix.zero(m.dim, m.dim * n, field)
    for t in range(m.dim):
        for a in range(h):
            lv = lam[t * h + a]
            if not lv:
                continue
            for k in range(n):
                col = tau_cols[a][k]
                ci = t * n + k if m.side == "right" else k * m.dim + t
                for x in range(m.dim):
                    if col[x]:
                        sigma.data[x][ci] = field.add(sigma.data[x][ci], field.mul(lv, col[x]))
    _verify_retraction(m, sigma)
    return True, sigma


def _verify_retraction(m, sigma):
    # sigma rho = id, and sigma is a comodule map from the cofree comodule
    rho = m.coaction_matrix()
    if sigma.mul(rho) != Matrix.identity(m.dim, m.field):
        raise ComoduleError("retraction witness fails sigma rho = id")
    cof = cofree_comodule(m)
    if not intertwines(cof, m, sigma):
        raise ComoduleError("retraction witness is not a comodule map")


def cofree_comodule(m):
    """M (x) C (right) or C (x) M (left) with the coaction on the C factor."""
    c = m.parent
    field = m.field
    n = c.dim
    coaction = {}
    if m.side == "right":
        for t in range(m.dim):
            for (k, i, j), v in c.delta.items():
                coaction[(t * n + k, t * n + i, j)] = v
    else:
        for t in range(m.dim):
            for (k, i, j), v in c.delta.items():
                coaction[(k * m.dim + t, j * m.dim + t, i)] = v
    return Comodule(m.side, m.dim * n, coaction, c, name="cofree", _trusted=True)


# ---------------------------------------------------------------------------
# endomorphism structure: indecomposability, simplicity, uniseriality


def endomorphism_table(m):
    """Multiplication table of End(M) on its canonical hom basis."""
    basis = hom_space(m, m)
    field = m.field
    span = SpanCoords(field, m.dim * m.dim)
    for h in basis:
        span.add(_flatten(h.matrix))
    table = {}
    for i, hi in enumerate(basis):
        for j, hj in enumerate(basis):
            prod = hi.matrix.mul(hj.matrix)
            coords = span.coords(_flatten(prod))
            if coords is None:
                raise ComoduleError("endomorphism composition left the span")
            cell = {k: v for k, v in enumerate(coords) if v}
            if cell:
                table[(i, j)] = cell
    unit = span.coords(_flatten(Matrix.identity(m.dim, field))) if m.dim else None
    return MultTable(len(basis), table, field, unit=unit), basis


def _flatten(mat):
    return [x for row in mat.data for x in row]


@dataclass
class IndecomposabilityReport:
    status: str                   # "yes" | "no" | "unknown"
    end_dim: int = 0
    radical_dim: int = 0
    idempotent: Matrix | None = None


def is_indecomposable(m, search_budget=1 << 20):
    """Three-valued indecomposability test.

    yes: End(M)/J(End(M)) is one-dimensional (local with residue field F);
    no: a nontrivial idempotent endomorphism was found (Fitting on the End
    basis, exhaustive coefficient search over small prime fields);
    unknown: otherwise.
    """
    if m.dim == 0:
        return IndecomposabilityReport(status="no", idempotent=None)
    table, basis = endomorphism_table(m)
    j = trace_form_radical(table)
    if table.dim - j.dim == 1:
        return IndecomposabilityReport(status="yes", end_dim=table.dim, radical_dim=j.dim)
    # Fitting splitting on basis elements
    for h in basis:
        e = _fitting_idempotent(m, h.matrix)
        if e is not None:
            return IndecomposabilityReport(status="no", end_dim=table.dim,
                                           radical_dim=j.dim, idempotent=e)
    field = m.field
    if field.char and field.char ** table.dim <= search_budget:
        ident = Matrix.identity(m.dim, field)
        for coeffs in _all_vectors(field.char, table.dim):
            e = Matrix.zero(m.dim, m.dim, field)
            for c, h in zip(coeffs, basis):
                if c:
                    e = e.add(h.matrix.scale(c))
            if e.is_zero() or e == ident:
                continue
            if e.mul(e) == e:
                return IndecomposabilityReport(status="no", end_dim=table.dim,
                                               radical_dim=j.dim, idempotent=e)
        return IndecomposabilityReport(status="yes" if table.dim - j.dim == 1 else "unknown",
                                       end_dim=table.dim, radical_dim=j.dim)
    return IndecomposabilityReport(status="unknown", end_dim=table.dim, radical_dim=j.dim)


def _all_vectors(p, length):
    total = p ** length
    for idx in range(total):
        v = []
        x = idx
        for _ in range(length):
            v.append(x % p)
            x //= p
        yield v


def _fitting_idempotent(m, endo):
    """Projection onto the Fitting image of an endomorphism when it splits
    M nontrivially, else None."""
    field = m.field
    power = endo.power(max(1, m.dim))
    image = Subspace.from_vectors([power.col(j) for j in range(m.dim)], m.dim, field)
    if image.dim == 0 or image.dim == m.dim:
        return None
    kern = Subspace.from_vectors(kernel_basis(power), m.dim, field)
    if image.dim + kern.dim != m.dim:
        raise ComoduleError("Fitting power did not stabilize")
    # projection onto image along kernel
    cols = []
    basis_vectors = image.vectors() + kern.vectors()
    change = Matrix(m.dim, m.dim, [list(col) for col in zip(*basis_vectors)], field)
    inv = inverse_matrix(change)
    proj_diag = Matrix.zero(m.dim, m.dim, field)
    for i in range(image.dim):
        proj_diag.data[i][i] = field.one
    e = change.mul(proj_diag).mul(inv)
    if e.mul(e) != e:
        raise ComoduleError("Fitting projection is not idempotent")
    if not intertwines(m, m, e):
        raise ComoduleError("Fitting projection is not a comodule map")
    return e


def is_simple(m):
    """Simple = socle is everything and the comodule is certified
    indecomposable; the zero comodule is not simple."""
    if m.dim == 0:
        return False
    if socle(m).dim != m.dim:
        return False
    return is_indecomposable(m).status == "yes"


def is_uniserial(m, report=None):
    """Chain comodule test: every Loewy layer is simple (or the comodule is
    zero, which counts as uniserial)."""
    if m.dim == 0:
        return True
    layers = loewy_layers(m, report=report)
    return all(is_simple(layer) for layer in layers)


def enumerate_subcomodules(m, budget=1 << 14):
    """All subcomodules, exactly: spans of spun vectors closed under sums.

    Exhaustive over prime fields when p^dim is small; used as an independent
    chain-ness oracle for uniseriality at tiny sizes.
    """
    field = m.field
    if field.char == 0:
        raise ComoduleError("exhaustive subcomodule enumeration needs a prime field")
    if field.char ** m.dim > budget:
        raise ComoduleError("enumeration budget exceeded")
    subs = {}
    cyclic = []
    for vec in _all_vectors(field.char, m.dim):
        if not any(vec):
            continue
        s = subcomodule_generated(m, [field.of(x) for x in vec])
        key = tuple(tuple(r) for r in s.basis.data)
        if key not in subs:
            subs[key] = s
            cyclic.append(s)
    # close under sums
    frontier = list(subs.values())
    while frontier:
        nxt = []
        for a in frontier:
            for b in cyclic:
                s = subspace_sum(a, b)
                key = tuple(tuple(r) for r in s.basis.data)
                if key not in subs:
                    subs[key] = s
                    nxt.append(s)
        frontier = nxt
    zero = Subspace.zero(m.dim, field)
    subs[tuple()] = zero
    return sorted(subs.values(), key=lambda s: (s.dim, tuple(tuple(r) for r in s.basis.data)))


# ---------------------------------------------------------------------------
# decomposition of the regular comodule into indecomposable injectives


@dataclass
class Summand:
    comodule: Comodule
    include: ComoduleMap      # into the regular comodule
    subspace: Subspace        # inside C
    socle_subspace: Subspace  # inside C


class DecompositionError(ComoduleError):
    pass


def regular_endomorphisms(c, side):
    """The n-dimensional family of comodule endomorphisms of the regular
    comodule: hit the comultiplication with each dual basis functional on
    the outer tensor factor."""
    field = c.field
    mats = [Matrix.zero(c.dim, c.dim, field) for _ in range(c.dim)]
    for (s, i, j), v in c.delta.items():
        if side == "right":
            # e_f(b_s) = f(b_i) b_j
            mats[i].data[j][s] = field.add(mats[i].data[j][s], v)
        else:
            # e_f(b_s) = b_i f(b_j)
            mats[j].data[i][s] = field.add(mats[j].data[i][s], v)
    return mats


def decompose_injectives(c, side):
    """Indecomposable injective summands of C as a one-sided comodule.

    Splits the socle into simples, extends each socle projection to a
    comodule endomorphism of C (always solvable since C is injective), and
    takes Fitting images.  The direct sum of the outputs is verified to be
    all of C and every summand is verified to have simple socle.
    """
    field = c.field
    reg = regular_comodule(c, side)
    soc = socle(reg)
    simples = _split_semisimple_socle(reg, soc)
    summands = []
    total = 0
    stack_rows = []
    for comp in simples:
        proj = _socle_projection(soc, simples, comp)
        e = _extend_socle_endomorphism(c, side, soc, proj)
        image = _fitting_image(e, field)
        sm, inc = sub_comodule(reg, image, name=f"E{len(summands)}({c.name or 'C'}:{side})")
        ssoc = socle(sm)
        if not _is_simple_socle(sm, ssoc):
            raise DecompositionError("summand socle failed the simplicity certificate")
        summands.append(Summand(comodule=sm, include=inc, subspace=image, socle_subspace=comp))
        total += image.dim
        stack_rows.extend(image.vectors())
    if total != c.dim or Subspace.from_vectors(stack_rows, c.dim, field).dim != c.dim:
        raise DecompositionError("summands do not reconstruct the regular comodule")
    return summands


def _split_semisimple_socle(reg, soc):
    """Decompose the socle into simple subcomodules, in socle pivot order
    (status unknown -> raise)."""
    from .linalg import subspace_intersection
    field = reg.field
    comps = []
    covered = Subspace.zero(reg.dim, field)
    for v in soc.basis.data:
        if covered.contains_vector(v):
            continue
        cand = subcomodule_generated(reg, v)
        if subspace_intersection(covered, cand).dim:
            raise DecompositionError("socle spins overlap; cannot certify simple split")
        comps.append(cand)
        covered = subspace_sum(covered, cand)
    if covered.dim != soc.dim:
        raise DecompositionError("socle did not split into spun simple components")
    for comp in comps:
        sm, _ = sub_comodule(reg, comp)
        if len(hom_space(sm, sm)) != 1:
            raise DecompositionError("socle component has endomorphism field larger than F")
        if not _no_proper_spin(sm):
            raise DecompositionError("socle component is not simple")
    return comps


def _is_simple_socle(m, soc_sub):
    if soc_sub.dim == 0:
        return False
    sm, _ = sub_comodule(m, soc_sub)
    return len(hom_space(sm, sm)) == 1 and is_stable_subspace(m, soc_sub) and _no_proper_spin(sm)


def _no_proper_spin(sm):
    for v in _unit_vectors(sm):
        s = subcomodule_generated(sm, v)
        if s.dim != sm.dim:
            return False
    return True


def _unit_vectors(m):
    field = m.field
    out = []
    for i in range(m.dim):
        v = [field.zero] * m.dim
        v[i] = field.one
        out.append(v)
    return out


def _fitting_image(e, field):
    """Stabilized image of the iterated endomorphism (the Fitting image)."""
    n = e.rows
    entries = [(r, cc, v) for r, row in enumerate(e.data) for cc, v in enumerate(row) if v]

    def app(vec):
        out = [field.zero] * n
        for r, cc, v in entries:
            if vec[cc]:
                out[r] = field.add(out[r], field.mul(v, vec[cc]))
        return out

    cur = Subspace.from_vectors([e.col(j) for j in range(n)], n, field)
    while True:
        nxt = Subspace.from_vectors([app(v) for v in cur.basis.data], n, field)
        if nxt.dim == cur.dim:
            return cur
        cur = nxt


def _socle_projection(soc, comps, target):
    """Matrix of the projection soc -> soc with image `target`, written on the
    ambient coordinates (dim x dim is not needed: returns pairs of socle basis
    vector -> image vector in ambient coordinates)."""
    field = soc.field
    coords = SpanCoords(field, soc.basis.cols)
    order = []
    for comp in comps:
        for v in comp.basis.data:
            coords.add(v)
            order.append(comp)
    images = []
    for v in soc.basis.data:
        cc = coords.coords(v)
        if cc is None:
            raise DecompositionError("socle components do not span the socle")
        img = [field.zero] * soc.basis.cols
        idx = 0
        for comp in comps:
            for w in comp.basis.data:
                if cc[idx] and comp is target:
                    img = [field.add(a, field.mul(cc[idx], b)) for a, b in zip(img, w)]
                idx += 1
        images.append(img)
    return images


def _extend_socle_endomorphism(c, side, soc, images):
    """Solve for a comodule endomorphism of C restricting to the given map on
    the socle, inside the dual-functional endomorphism family."""
    field = c.field
    n = c.dim
    rows = []
    rhs = []
    for v, img in zip(soc.basis.data, images):
        # cols[k] = value of the k-th family endomorphism on v
        cols = [[field.zero] * n for _ in range(n)]
        for (s, i, j), val in c.delta.items():
            if v[s]:
                if side == "right":
                    cols[i][j] = field.add(cols[i][j], field.mul(val, v[s]))
                else:
                    cols[j][i] = field.add(cols[j][i], field.mul(val, v[s]))
        for coordinate in range(n):
            rows.append([cols[k][coordinate] for k in range(n)])
            rhs.append(img[coordinate])
    mat = Matrix(len(rows), n, rows, field, _canonical=True)
    _, _, sol = rref_solve(mat, rhs)
    if sol is None:
        raise DecompositionError("socle projection does not extend (C not injective?)")
    lam = sol.particular
    e = Matrix.zero(n, n, field)
    for (s, i, j), val in c.delta.items():
        if side == "right":
            if lam[i]:
                e.data[j][s] = field.add(e.data[j][s], field.mul(lam[i], val))
        else:
            if lam[j]:
                e.data[i][s] = field.add(e.data[i][s], field.mul(lam[j], val))
    return e


# ---------------------------------------------------------------------------
# duality


def dual_comodule(m, name=None):
    """The dual space as a comodule on the opposite side (coaction tensor
    transposed in the comodule indices).  Double dual is literally the
    identity on this representation."""
    coaction = {(t, s, k): v for (s, t, k), v in m.coaction.items()}
    side = "left" if m.side == "right" else "right"
    return Comodule(side, m.dim, coaction, m.parent,
                    name=name or ((m.name or "M") + "*"))


def dual_map(f, dual_source=None, dual_target=None):
    """(f: M -> N)* = transpose: N* -> M*; contravariant on composition."""
    ds = dual_source if dual_source is not None else dual_comodule(f.target)
    dt = dual_target if dual_target is not None else dual_comodule(f.source)
    return ComoduleMap(ds, dt, f.matrix.transpose())


def double_dual_isomorphism(m):
    """The natural identification M ~ M**: the identity matrix here."""
    return Matrix.identity(m.dim, m.field)


# ---------------------------------------------------------------------------
# families


def indecomposable_family(c, side):
    """Summands of the regular comodule together with all their socle-series
    terms, deduplicated up to isomorphism.  For coalgebras whose injective
    indecomposables are uniserial this is a complete list of indecomposables.
    """
    reps = []
    for summand in decompose_injectives(c, side):
        m = summand.comodule
        rep = socle_and_loewy(m)
        for term in rep.loewy:
            sm, _ = sub_comodule(m, term, name=f"{m.name}|{term.dim}")
            _family_add(reps, sm)
    reps.sort(key=lambda x: (x.dim, x.name or ""))
    return reps


def witness_family(c, side):
    """Injective summands of C plus their socle quotients, deduplicated;
    the smallest family over which the simple-witness presentations live."""
    reps = []
    for summand in decompose_injectives(c, side):
        m = summand.comodule
        _family_add(reps, m)
        soc_sub = socle(m)
        if soc_sub.dim < m.dim:
            qm, _ = quotient_comodule(m, soc_sub, name=f"{m.name}/soc")
            _family_add(reps, qm)
    reps.sort(key=lambda x: (x.dim, x.name or ""))
    return reps


def _family_add(reps, m):
    if m.dim == 0:
        return
    for r in reps:
        if r.dim == m.dim and find_isomorphism(r, m) is not None:
            return
    reps.append(m)
