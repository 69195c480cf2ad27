"""Functor rings of finite comodule families and their finitely presented
modules.

The ring of a family (U_i) has basis the union of hom-space bases
Hom(U_i, U_j), multiplication by composition (zero on non-composable
pairs), and one idempotent per member; a finitely presented module is the
cokernel of precomposition Hom(N, U) -> Hom(M, U) for a comodule map
u: M -> N, with the ring acting by postcomposition.  Simplicity of a
module over a prime field is decided exactly: radical of the generated
action algebra, then block splitting by idempotents.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .fields import PrimeField
from .linalg import Matrix, MultTable, SpanCoords, Subspace, kernel_basis, trace_form_radical
from .comodule import (Comodule, ComoduleMap, hom_space, identity_map, socle,
                       sub_comodule, quotient_comodule, decompose_injectives,
                       dual_comodule, find_isomorphism, zero_comodule, _is_invertible)
from .freyd import FreydObject, freyd_hom_dim


class FunctorRingError(ValueError):
    pass


# ---------------------------------------------------------------------------
# the ring


class FunctorRing:
    def __init__(self, members, hom_bases, basis, table, idempotents):
        self.members = members          # list of Comodule
        self.hom_bases = hom_bases      # (i, j) -> list of ComoduleMap
        self.basis = basis              # list of (i, j, r)
        self.table = table              # MultTable with unit = sum of idempotents
        self.idempotents = idempotents  # coordinate vectors, one per member

    @property
    def dim(self):
        return len(self.basis)

    @property
    def field(self):
        return self.table.field

    def basis_map(self, g):
        i, j, r = self.basis[g]
        return self.hom_bases[(i, j)][r]

    def block_of(self, g):
        i, j, _ = self.basis[g]
        return (i, j)

    def __repr__(self):
        return f"FunctorRing(dim {self.dim}, {len(self.members)} members)"


def build_functor_ring(family):
    """Functor ring of a finite comodule family.

    Ring axioms (associativity, orthogonal idempotents summing to the unit,
    block spans) are verified exactly on the constructed table.
    """
    if not family:
        raise FunctorRingError("empty family")
    side, parent = family[0].side, family[0].parent
    field = family[0].field
    for m in family:
        if m.side != side or m.parent is not parent:
            raise FunctorRingError("family must share one side and one parent")
    k = len(family)
    hom_bases = {}
    coords = {}
    basis = []
    offsets = {}
    for i in range(k):
        for j in range(k):
            hb = hom_space(family[i], family[j])
            hom_bases[(i, j)] = hb
            span = SpanCoords(field, family[j].dim * family[i].dim)
            for h in hb:
                span.add(_flatten(h.matrix))
            coords[(i, j)] = span
            offsets[(i, j)] = len(basis)
            basis.extend((i, j, r) for r in range(len(hb)))
    dim = len(basis)
    table = {}
    for gx, (i, j, r) in enumerate(basis):
        x = hom_bases[(i, j)][r]
        for gy, (kk, ll, s) in enumerate(basis):
            if ll != i:
                continue
            y = hom_bases[(kk, ll)][s]
            comp = x.matrix.mul(y.matrix)
            cc = coords[(kk, j)].coords(_flatten(comp))
            if cc is None:
                raise FunctorRingError("composite leaves the hom-space span")
            cell = {offsets[(kk, j)] + t: v for t, v in enumerate(cc) if v}
            if cell:
                table[(gx, gy)] = cell
    idempotents = []
    unit = [field.zero] * dim
    for i in range(k):
        ident = Matrix.identity(family[i].dim, field)
        cc = coords[(i, i)].coords(_flatten(ident))
        if cc is None:
            raise FunctorRingError("identity map missing from an endomorphism block")
        e = [field.zero] * dim
        for t, v in enumerate(cc):
            e[offsets[(i, i)] + t] = v
        idempotents.append(e)
        unit = [field.add(a, b) for a, b in zip(unit, e)]
    t = MultTable(dim, table, field, unit=unit)
    ring = FunctorRing(family, hom_bases, basis, t, idempotents)
    _verify_ring(ring)
    return ring


def _verify_ring(ring):
    t = ring.table
    if not t.is_associative():
        raise FunctorRingError("functor ring table is not associative")
    if not t.check_unital():
        raise FunctorRingError("sum of idempotents is not the unit")
    field = t.field
    for i, ei in enumerate(ring.idempotents):
        for j, ej in enumerate(ring.idempotents):
            p = t.product_vec(ei, ej)
            expect = ei if i == j else [field.zero] * t.dim
            if p != expect:
                raise FunctorRingError("idempotents are not orthogonal idempotents")
    # e_j (block i->j basis) e_i reproduces the block exactly
    for g, (i, j, r) in enumerate(ring.basis):
        v = t.basis_vector(g)
        w = t.product_vec(ring.idempotents[j], t.product_vec(v, ring.idempotents[i]))
        if w != v:
            raise FunctorRingError("idempotents do not carve out the hom blocks")


def _flatten(mat):
    return [x for row in mat.data for x in row]


# ---------------------------------------------------------------------------
# the opposite duality


def opposite_duality_check(c, family, dual_family=None, rng=None):
    """Build R from a family and L from the dualized family (possibly given
    in another order) and check that transposition is an anti-isomorphism:
    the map matches R's table entry by entry against L's reversed table.
    """
    ring_r = build_functor_ring(family)
    duals = [dual_comodule(u) for u in family]
    if dual_family is None:
        dual_family = duals
    ring_l = build_functor_ring(dual_family)
    field = ring_r.field
    k = len(family)
    # match each dual to a member of the L family by explicit isomorphism
    perm = []
    isos = []
    for i, d in enumerate(duals):
        found = None
        for j, m in enumerate(dual_family):
            if m.dim != d.dim:
                continue
            iso = find_isomorphism(d, m, rng=rng)
            if iso is not None:
                found = (j, iso)
                break
        if found is None:
            return {"iso": False, "reason": f"no match for dual member {i}", "map": None}
        perm.append(found[0])
        isos.append(found[1])
    inv_isos = [ _inverse_map(iso) for iso in isos ]
    # transport: phi in Hom(U_i, U_j) -> psi_i . phi* . psi_j^{-1} in L
    lcoords = {}
    loffsets = {}
    pos = 0
    for (i, j), hb in sorted(ring_l.hom_bases.items()):
        span = SpanCoords(field, ring_l.members[j].dim * ring_l.members[i].dim)
        for h in hb:
            span.add(_flatten(h.matrix))
        lcoords[(i, j)] = span
    g = 0
    for idx, (i, j, r) in enumerate(ring_l.basis):
        if (i, j) not in loffsets:
            loffsets[(i, j)] = idx
    phi_mat = Matrix.zero(ring_l.dim, ring_r.dim, field)
    for g, (i, j, r) in enumerate(ring_r.basis):
        h = ring_r.hom_bases[(i, j)][r]
        transported = isos[i].matrix.mul(h.matrix.transpose()).mul(inv_isos[j].matrix)
        block = (perm[j], perm[i])
        cc = lcoords[block].coords(_flatten(transported))
        if cc is None:
            return {"iso": False, "reason": "transported map outside hom block", "map": None}
        for t, v in enumerate(cc):
            phi_mat.data[loffsets[block] + t][g] = v
    if not _is_invertible(phi_mat):
        return {"iso": False, "reason": "transport not bijective", "map": phi_mat}
    # anti-homomorphism entry by entry: Phi(x y) = Phi(y) Phi(x)
    tr, tl = ring_r.table, ring_l.table
    for gx in range(ring_r.dim):
        vx = tr.basis_vector(gx)
        px = phi_mat.apply(vx)
        for gy in range(ring_r.dim):
            vy = tr.basis_vector(gy)
            prod = tr.product_vec(vx, vy)
            lhs = phi_mat.apply(prod)
            rhs = tl.product_vec(phi_mat.apply(vy), px)
            if lhs != rhs:
                return {"iso": False, "reason": f"multiplication not reversed at ({gx},{gy})",
                        "map": phi_mat}
    return {"iso": True, "map": phi_mat, "perm": perm,
            "dim_r": ring_r.dim, "dim_l": ring_l.dim}


def _inverse_map(cm):
    from .comodule import inverse_matrix
    return ComoduleMap(cm.target, cm.source, inverse_matrix(cm.matrix), _trusted=True)


# ---------------------------------------------------------------------------
# modules over the ring


class RingModule:
    """A unitary left module over a functor ring: one action matrix per ring
    basis element."""

    def __init__(self, ring, dim, actions, presentation=None, _verify=True):
        self.ring = ring
        self.dim = dim
        self.actions = actions
        self.presentation = presentation
        if _verify:
            self.verify()

    @property
    def field(self):
        return self.ring.field

    def act_element(self, coords):
        field = self.field
        out = Matrix.zero(self.dim, self.dim, field)
        for g, cval in enumerate(coords):
            if cval:
                out = out.add(self.actions[g].scale(cval))
        return out

    def verify(self):
        t = self.ring.table
        field = self.field
        if self.dim == 0:
            return
        for gx in range(self.ring.dim):
            for gy in range(self.ring.dim):
                prod = t.table.get((gx, gy), {})
                expect = Matrix.zero(self.dim, self.dim, field)
                for k, v in prod.items():
                    expect = expect.add(self.actions[k].scale(v))
                if self.actions[gx].mul(self.actions[gy]) != expect:
                    raise FunctorRingError("module action violates the multiplication table")
        if self.act_element(self.ring.table.unit) != Matrix.identity(self.dim, field):
            raise FunctorRingError("module is not unitary")

    def support(self):
        """Per-idempotent dimensions: rank of each e_i acting."""
        from .linalg import rref_solve
        out = {}
        for i, e in enumerate(self.ring.idempotents):
            m = self.act_element(e)
            _, piv, _ = rref_solve(m)
            out[i] = len(piv)
        return out

    def __repr__(self):
        return f"RingModule(dim {self.dim} over ring dim {self.ring.dim})"


def fp_module_from_freyd(o, ring):
    """The finitely presented module of u: M -> N over the ring:
    cokernel of precomposition Hom(N, U) -> Hom(M, U), U = direct sum of
    the family, with the ring acting by postcomposition."""
    field = ring.field
    members = ring.members
    hom_m = [hom_space(o.m, u) for u in members]
    hom_n = [hom_space(o.n, u) for u in members]
    dims = [len(b) for b in hom_m]
    offsets = []
    total = 0
    for d in dims:
        offsets.append(total)
        total += d
    spans = []
    for i, u in enumerate(members):
        span = SpanCoords(field, u.dim * o.m.dim)
        for h in hom_m[i]:
            span.add(_flatten(h.matrix))
        spans.append(span)
    image_vectors = []
    for i, u in enumerate(members):
        for eta in hom_n[i]:
            comp = eta.matrix.mul(o.u.matrix)
            cc = spans[i].coords(_flatten(comp))
            if cc is None:
                raise FunctorRingError("precomposition leaves the hom span")
            vec = [field.zero] * total
            for t, v in enumerate(cc):
                vec[offsets[i] + t] = v
            image_vectors.append(vec)
    image = Subspace.from_vectors(image_vectors, total, field)
    # full action matrices on Hom(M, U)
    big_actions = []
    for g, (i, j, r) in enumerate(ring.basis):
        phi = ring.hom_bases[(i, j)][r]
        mat = Matrix.zero(total, total, field)
        for t, xi in enumerate(hom_m[i]):
            comp = phi.matrix.mul(xi.matrix)
            cc = spans[j].coords(_flatten(comp))
            if cc is None:
                raise FunctorRingError("postcomposition leaves the hom span")
            for s, v in enumerate(cc):
                if v:
                    mat.data[offsets[j] + s][offsets[i] + t] = v
        big_actions.append(mat)
    # the image is stable under every action (postcomposition commutes with
    # precomposition); verified here
    for mat in big_actions:
        for v in image.basis.data:
            if not image.contains_vector(mat.apply(v)):
                raise FunctorRingError("presentation image is not action stable")
    # quotient coordinates
    piv = set()
    for row in image.basis.data:
        piv.add(next(jj for jj, x in enumerate(row) if x))
    keep = [jj for jj in range(total) if jj not in piv]
    q = len(keep)
    actions = []
    for mat in big_actions:
        qmat = Matrix.zero(q, q, field)
        for b, col in enumerate(keep):
            vec = [field.zero] * total
            vec[col] = field.one
            w = image.reduce(mat.apply(vec))
            for a, row in enumerate(keep):
                qmat.data[a][b] = w[row]
        actions.append(qmat)
    return RingModule(ring, q, actions, presentation=o)


def module_hom_space(x, y):
    """Basis of ring-linear maps x -> y (intertwiners of all basis actions)."""
    if x.ring is not y.ring:
        raise FunctorRingError("modules over different rings")
    field = x.field
    if x.dim == 0 or y.dim == 0:
        return []
    unknowns = y.dim * x.dim
    rows = []
    for g in range(x.ring.dim):
        a = x.actions[g]
        b = y.actions[g]
        if a.is_zero() and b.is_zero():
            continue
        for xx in range(y.dim):
            for s in range(x.dim):
                row = [field.zero] * unknowns
                nz = False
                for bi in range(x.dim):
                    v = a.data[bi][s]
                    if v:
                        row[xx * x.dim + bi] = field.add(row[xx * x.dim + bi], v)
                        nz = True
                for cdx in range(y.dim):
                    v = b.data[xx][cdx]
                    if v:
                        row[cdx * x.dim + s] = field.sub(row[cdx * x.dim + s], v)
                        nz = True
                if nz:
                    rows.append(row)
    if not rows:
        basis = []
        for i in range(unknowns):
            v = [field.zero] * unknowns
            v[i] = field.one
            basis.append(v)
    else:
        basis = kernel_basis(Matrix(len(rows), unknowns, rows, field, _canonical=True))
    return [Matrix(y.dim, x.dim, [v[i * x.dim:(i + 1) * x.dim] for i in range(y.dim)], field, _canonical=True)
            for v in basis]


def modules_isomorphic(x, y, rng=None, budget=1 << 20):
    """Decide ring-module isomorphism; exhaustive over the hom-space
    coefficients for prime fields within budget, else seeded search."""
    if x.dim != y.dim:
        return False, None
    if x.dim == 0:
        return True, Matrix.zero(0, 0, x.field)
    basis = module_hom_space(x, y)
    if not basis:
        return False, None
    for m in basis:
        if _is_invertible(m):
            return True, m
    field = x.field
    if field.char and field.char ** len(basis) <= budget:
        for co in _all_coeff_vectors(field.char, len(basis)):
            m = Matrix.zero(y.dim, x.dim, field)
            for cval, b in zip(co, basis):
                if cval:
                    m = m.add(b.scale(cval))
            if _is_invertible(m):
                return True, m
        return False, None
    r = rng or random.Random(13)
    for _ in range(256):
        m = Matrix.zero(y.dim, x.dim, field)
        for b in basis:
            cval = field.of(r.randint(-3, 3)) if field.char == 0 else field.of(r.randrange(field.char))
            if cval:
                m = m.add(b.scale(cval))
        if _is_invertible(m):
            return True, m
    return False, None


def _all_coeff_vectors(p, length):
    total = p ** length
    for idx in range(total):
        v = []
        x = idx
        for _ in range(length):
            v.append(x % p)
            x //= p
        yield v


def module_spin(x, vec):
    """Submodule generated by a vector (closure under the basis actions)."""
    field = x.field
    span = SpanCoords(field, x.dim)
    work = []
    vec = [field.of(v) for v in vec]
    if span.add(vec):
        work.append(vec)
    mats = [m for m in x.actions if not m.is_zero()]
    while work:
        v = work.pop()
        for m in mats:
            w = m.apply(v)
            if any(w) and span.add(w):
                work.append(w)
    return Subspace.from_vectors(span.rows, x.dim, field)


def simple_by_exhaustive_spinning(x, budget=1 << 16):
    """Independent simplicity oracle: spin every nonzero vector (prime
    fields, budget-guarded)."""
    field = x.field
    if field.char == 0:
        raise FunctorRingError("exhaustive spinning needs a prime field")
    if x.dim == 0:
        return False
    if field.char ** x.dim > budget:
        raise FunctorRingError("spinning budget exceeded")
    for co in _all_coeff_vectors(field.char, x.dim):
        if not any(co):
            continue
        if module_spin(x, co).dim != x.dim:
            return False
    return True


# ---------------------------------------------------------------------------
# exact simplicity over prime fields


class OracleError(ValueError):
    pass


def _poly_trim(a, p):
    a = [x % p for x in a]
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _poly_trim(out, p)


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out, p)


def _poly_divmod(a, b, p):
    a = list(a)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    binv = pow(b[-1], -1, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and a:
        coef = a[-1] * binv % p
        deg = len(a) - len(b)
        q[deg] = coef
        for i, bi in enumerate(b):
            a[deg + i] = (a[deg + i] - coef * bi) % p
        a = _poly_trim(a, p)
    return _poly_trim(q, p), a


def _poly_gcd(a, b, p):
    a, b = _poly_trim(a, p), _poly_trim(b, p)
    while b:
        a, b = b, _poly_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [x * inv % p for x in a]
    return a


def _poly_xgcd(a, b, p):
    # returns (g, s, t) with s a + t b = g, g monic
    r0, r1 = _poly_trim(a, p), _poly_trim(b, p)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1, p), p)
        t0, t1 = t1, _poly_sub(t0, _poly_mul(q, t1, p), p)
    if r0:
        inv = pow(r0[-1], -1, p)
        r0 = [x * inv % p for x in r0]
        s0 = [x * inv % p for x in s0]
        t0 = [x * inv % p for x in t0]
    return r0, s0, t0


def _poly_powmod(base, e, mod, p):
    result = [1]
    base = _poly_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _poly_divmod(_poly_mul(result, base, p), mod, p)[1]
        base = _poly_divmod(_poly_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def _split_squarefree(mu, p):
    """Nontrivial coprime factorization (f1, f2) of a squarefree monic
    polynomial, or None when irreducible (distinct-degree sieve)."""
    d = len(mu) - 1
    if d <= 1:
        return None
    x = [0, 1]
    frob = x
    for k in range(1, d // 2 + 1):
        frob = _poly_powmod(frob, p, mu, p)
        g = _poly_gcd(_poly_sub(frob, x, p), mu, p)
        if 0 < len(g) - 1 < d:
            return g, _poly_divmod(mu, g, p)[0]
        if len(g) - 1 == d:
            # all factors have degree dividing k; if k < d it still splits
            if k < d:
                # equal-degree case: all irreducible factors have degree k
                f = _equal_degree_split(mu, k, p)
                if f is not None:
                    return f, _poly_divmod(mu, f, p)[0]
            return None
    return None


def _equal_degree_split(mu, k, p, tries=64):
    """Cantor-Zassenhaus-style split of a squarefree product of
    degree-k irreducibles (deterministically seeded)."""
    d = len(mu) - 1
    rng = random.Random(10007 + d)
    e = (p ** k - 1) // 2
    for _ in range(tries):
        a = [rng.randrange(p) for _ in range(d)]
        a = _poly_trim(a, p)
        if len(a) - 1 < 1:
            continue
        g = _poly_gcd(a, mu, p)
        if 0 < len(g) - 1 < d:
            return g
        b = _poly_powmod(a, e, mu, p)
        g = _poly_gcd(_poly_sub(b, [1], p), mu, p)
        if 0 < len(g) - 1 < d:
            return g
    return None


class AlgebraView:
    """A unital subalgebra of an ambient multiplication table, carried by a
    basis of ambient coordinate vectors and its own unit."""

    def __init__(self, ambient, basis_vectors, unit):
        self.ambient = ambient
        self.span = SpanCoords(ambient.field, ambient.dim)
        self.basis = []
        for v in basis_vectors:
            if self.span.add(v):
                self.basis.append(self.span.rows[-1])
        # keep the echelon rows as the canonical basis
        self.basis = [row[:] for row in self.span.rows]
        self.unit = unit

    @property
    def dim(self):
        return len(self.basis)

    def product(self, x, y):
        return self.ambient.product_vec(x, y)

    def min_poly(self, z):
        """Monic minimal polynomial of z relative to the view's unit."""
        p = self.ambient.field.char
        span = SpanCoords(self.ambient.field, self.ambient.dim)
        powers = [self.unit]
        span.add(self.unit)
        cur = self.unit
        while True:
            cur = self.product(cur, z)
            cc = span.coords(cur)
            if cc is not None:
                mu = [(-c) % p for c in cc] + [1]
                return _poly_trim(mu, p) if mu[-1] else mu
            span.add(cur)
            powers.append(cur)

    def evaluate(self, poly, z):
        """poly(z) with the constant term on the view's unit."""
        field = self.ambient.field
        acc = [field.zero] * self.ambient.dim
        for coef in reversed(poly):
            acc = self.product(acc, z)
            if coef % field.char:
                acc = [field.add(a, field.mul(field.of(coef), u)) for a, u in zip(acc, self.unit)]
        return acc

    def corner(self, e):
        """The corner algebra e * A * e with unit e."""
        vecs = [self.product(e, self.product(b, e)) for b in self.basis]
        return AlgebraView(self.ambient, vecs, e)

    def probes(self, rng):
        for b in self.basis:
            yield b
        n = len(self.basis)
        for i in range(n):
            for j in range(i + 1, n):
                yield [self.ambient.field.add(a, c) for a, c in zip(self.basis[i], self.basis[j])]
        p = self.ambient.field.char
        for _ in range(64):
            coeffs = [rng.randrange(p) for _ in range(n)]
            v = [self.ambient.field.zero] * self.ambient.dim
            for cval, b in zip(coeffs, self.basis):
                if cval:
                    v = [self.ambient.field.add(a, self.ambient.field.mul(cval, c)) for a, c in zip(v, b)]
            yield v

    def is_commutative(self):
        for i, x in enumerate(self.basis):
            for y in self.basis[i + 1:]:
                if self.product(x, y) != self.product(y, x):
                    return False
        return True


def _splitting_idempotent(view, rng):
    """A nontrivial idempotent of the view, or None when the view is
    certified to be a field (or simple with no split found)."""
    p = view.ambient.field.char
    field = view.ambient.field
    certified_field = False
    for z in view.probes(rng):
        mu = view.min_poly(z)
        if len(mu) - 1 < 2:
            continue
        fs = _split_squarefree(mu, p)
        if fs is None:
            if len(mu) - 1 == view.dim and view.is_commutative():
                certified_field = True
            continue
        f1, f2 = fs
        g, s, t = _poly_xgcd(f1, f2, p)
        if len(g) - 1 != 0:
            continue
        # e = (t f2)(z) is 1 on the f1 component and 0 on the f2 component
        e = view.evaluate(_poly_mul(t, f2, p), z)
        ee = view.product(e, e)
        if ee != e or not any(e) or e == view.unit:
            continue
        return e
    if certified_field or view.is_commutative():
        return None
    raise OracleError("could not split a noncommutative block (probe budget exceeded)")


def _primitive_idempotent(view, rng):
    if view.dim == 1:
        return view.unit
    e = _splitting_idempotent(view, rng)
    if e is None:
        return view.unit
    return _primitive_idempotent(view.corner(e), rng)


def _split_commutative(view, rng):
    """Orthogonal primitive idempotents of a commutative semisimple view."""
    if view.dim == 1:
        return [view.unit]
    e = _splitting_idempotent(view, rng)
    if e is None:
        return [view.unit]
    field = view.ambient.field
    cmpl = [field.sub(a, b) for a, b in zip(view.unit, e)]
    return _split_commutative(view.corner(e), rng) + _split_commutative(view.corner(cmpl), rng)


def split_semisimple(t, rng=None):
    """Simple blocks of a semisimple unital table: list of
    (central idempotent, block view, primitive idempotent, simple dim)."""
    rng = rng or random.Random(101)
    field = t.field
    if t.unit is None:
        raise OracleError("need a unital table")
    # center: z with z b_i = b_i z for all i
    rows = []
    for i in range(t.dim):
        e = t.basis_vector(i)
        left = t.left_mult_matrix(e)
        # right multiplication matrix
        right = Matrix.zero(t.dim, t.dim, field)
        for j in range(t.dim):
            cell = t.table.get((j, i))
            if cell:
                for k, v in cell.items():
                    right.data[k][j] = field.add(right.data[k][j], v)
        diff = left.sub(right)
        rows.extend(diff.data)
    center_basis = kernel_basis(Matrix(len(rows), t.dim, rows, field, _canonical=True)) if rows else []
    center = AlgebraView(t, center_basis or [t.unit], t.unit)
    centrals = _split_commutative(center, rng)
    blocks = []
    for z in centrals:
        vecs = [t.product_vec(z, t.basis_vector(i)) for i in range(t.dim)]
        block = AlgebraView(t, vecs, z)
        e = _primitive_idempotent(block, rng)
        # simple module: the left ideal (whole table) * e
        cols = [t.product_vec(t.basis_vector(i), e) for i in range(t.dim)]
        simple_dim = Subspace.from_vectors(cols, t.dim, field).dim
        blocks.append({"central": z, "block_dim": block.dim, "primitive": e,
                       "simple_dim": simple_dim})
    total = sum(b["block_dim"] for b in blocks)
    if total != t.dim:
        raise OracleError("block dimensions do not add up (table not semisimple?)")
    return blocks


def action_algebra(x):
    """Multiplication table of the matrix algebra generated by the module's
    action matrices together with the identity."""
    field = x.field
    width = x.dim * x.dim
    span = SpanCoords(field, width)
    mats = []
    ident = Matrix.identity(x.dim, field)
    if span.add(_flatten(ident)):
        mats.append(ident)
    for m in x.actions:
        if span.add(_flatten(m)):
            mats.append(m)
    # close under products
    frontier = list(mats)
    while frontier:
        nxt = []
        for a in list(mats):
            for b in frontier:
                for prod in (a.mul(b), b.mul(a)):
                    if span.add(_flatten(prod)):
                        m2 = prod
                        mats.append(m2)
                        nxt.append(m2)
        frontier = nxt
    # canonical basis = echelon rows
    basis_mats = [Matrix(x.dim, x.dim, [row[i * x.dim:(i + 1) * x.dim] for i in range(x.dim)], field, _canonical=True)
                  for row in span.rows]
    cspan = SpanCoords(field, width)
    for m in basis_mats:
        cspan.add(_flatten(m))
    table = {}
    for i, a in enumerate(basis_mats):
        for j, b in enumerate(basis_mats):
            cc = cspan.coords(_flatten(a.mul(b)))
            if cc is None:
                raise OracleError("action algebra is not multiplicatively closed")
            cell = {k: v for k, v in enumerate(cc) if v}
            if cell:
                table[(i, j)] = cell
    unit = cspan.coords(_flatten(ident))
    return MultTable(len(basis_mats), table, field, unit=unit), basis_mats


def is_simple_module(x, rng=None):
    """Exact simplicity test for a unitary module over a prime field.

    Radical of the generated action algebra must vanish, the semisimple
    action algebra must be a single block, and the module dimension must
    equal that block's simple-module dimension.  Over the rationals only
    the one-dimensional shortcut certifies.
    """
    if x.dim == 0:
        return False
    if x.dim == 1:
        return True
    field = x.field
    if not isinstance(field, PrimeField):
        raise FunctorRingError("simplicity beyond dimension one needs a prime field")
    t, _ = action_algebra(x)
    j = trace_form_radical(t)
    if j.dim:
        return False
    blocks = split_semisimple(t, rng=rng)
    if len(blocks) != 1:
        return False
    return x.dim == blocks[0]["simple_dim"]


# ---------------------------------------------------------------------------
# the radical-quotient oracle for simple modules


@dataclass
class OracleReport:
    ring_dim: int
    radical_dim: int
    semisimple_dim: int
    simples: list                 # RingModules
    block_dims: list


def enumerate_simples_oracle(ring, rng=None):
    """Complete irredundant list of simple left modules over the ring.

    Radical by the trace form, quotient split into simple blocks by
    iterated idempotent splitting; completeness is certified by the block
    dimensions summing to the semisimple quotient's dimension.
    """
    field = ring.field
    if not isinstance(field, PrimeField):
        raise FunctorRingError("the oracle runs over a prime field")
    if field.char <= ring.dim:
        raise FunctorRingError("characteristic too small: need p > ring dimension")
    rng = rng or random.Random(101)
    t = ring.table
    j = trace_form_radical(t)
    if j.dim:
        tq, proj, keep = t.quotient_by_ideal(j)
    else:
        tq, proj = t, Matrix.identity(t.dim, field)
    blocks = split_semisimple(tq, rng=rng)
    simples = []
    for blk in blocks:
        e = blk["primitive"]
        cols = [tq.product_vec(tq.basis_vector(i), e) for i in range(tq.dim)]
        sub = Subspace.from_vectors(cols, tq.dim, field)
        actions = []
        for g in range(ring.dim):
            img = proj.apply(t.basis_vector(g))
            mat = Matrix.zero(sub.dim, sub.dim, field)
            for b, v in enumerate(sub.basis.data):
                w = tq.product_vec(img, list(v))
                cc = sub.coords(w)
                if cc is None:
                    raise OracleError("left ideal not stable under the ring")
                for a, val in enumerate(cc):
                    mat.data[a][b] = val
            actions.append(mat)
        simples.append(RingModule(ring, sub.dim, actions))
    # irredundancy: pairwise non-isomorphic
    for i in range(len(simples)):
        for k in range(i + 1, len(simples)):
            iso, _ = modules_isomorphic(simples[i], simples[k], rng=rng)
            if iso:
                raise OracleError("oracle produced isomorphic simples")
    return OracleReport(ring_dim=ring.dim, radical_dim=j.dim,
                        semisimple_dim=tq.dim, simples=simples,
                        block_dims=[b["block_dim"] for b in blocks])


# ---------------------------------------------------------------------------
# simple witnesses and the probe


@dataclass
class Witness:
    injective: Comodule
    object: FreydObject
    module: RingModule
    verified_simple: bool


def witness_objects(c, side):
    """One object M -> M / soc(M) per indecomposable injective summand of C
    (the quotient is zero when the summand is itself simple)."""
    out = []
    for summand in decompose_injectives(c, side):
        m = summand.comodule
        soc_sub = socle(m)
        if soc_sub.dim == m.dim:
            z = zero_comodule(c, side)
            u = ComoduleMap(m, z, Matrix.zero(0, m.dim, c.field), _trusted=True)
        else:
            _, u = quotient_comodule(m, soc_sub, name=(m.name or "E") + "/soc")
        out.append((m, FreydObject(u, flavor="B")))
    return out


def simple_witnesses(c, side, ring, rng=None):
    """Witness fp modules from the indecomposable injective summands; each
    verified simple over prime fields and pairwise non-isomorphic."""
    out = []
    for m, o in witness_objects(c, side):
        x = fp_module_from_freyd(o, ring)
        if isinstance(ring.field, PrimeField):
            verified = is_simple_module(x, rng=rng)
        else:
            verified = x.dim == 1
        out.append(Witness(injective=m, object=o, module=x, verified_simple=verified))
    # pairwise non-isomorphic: distinct supports, else a failed iso search
    for i in range(len(out)):
        for k in range(i + 1, len(out)):
            xi, xk = out[i].module, out[k].module
            if xi.support() != xk.support():
                continue
            iso, _ = modules_isomorphic(xi, xk, rng=rng)
            if iso:
                raise FunctorRingError("witness modules are isomorphic")
    return out


def socle_inclusion_objects(c, side):
    """The non-split monomorphisms soc(M) -> M for every non-simple
    indecomposable injective summand (presentations of the extra simples
    seen by the oracle in the truncated setting)."""
    out = []
    for summand in decompose_injectives(c, side):
        m = summand.comodule
        soc_sub = socle(m)
        if soc_sub.dim == m.dim:
            continue
        _, inc = sub_comodule(m, soc_sub, name="soc(" + (m.name or "E") + ")")
        out.append(FreydObject(inc, flavor="B"))
    return out


@dataclass
class ProbeSide:
    summand_dims: list
    simple_flags: list
    min_dim: int
    witness_count: int

    def to_json(self):
        return {
            "summand_dims": self.summand_dims,
            "simple_flags": self.simple_flags,
            "min_dim": self.min_dim,
            "witness_count": self.witness_count,
        }


@dataclass
class ProbeReport:
    example: str
    orders: list
    field_json: dict
    rows: list = dc_field(default_factory=list)
    verdicts: dict = dc_field(default_factory=dict)

    def to_json(self):
        return {
            "example": self.example,
            "orders": self.orders,
            "field": self.field_json,
            "rows": self.rows,
            "verdicts": dict(sorted(self.verdicts.items())),
        }


def _probe_side(c, side):
    summands = decompose_injectives(c, side)
    dims = [s.comodule.dim for s in summands]
    flags = [socle(s.comodule).dim == s.comodule.dim for s in summands]
    return ProbeSide(summand_dims=dims, simple_flags=flags,
                     min_dim=min(dims), witness_count=len(summands))


def symmetry_probe(builder, orders, field):
    """Both-sided injective decompositions across truncation orders with
    growth verdicts for the minimal indecomposable-injective dimensions."""
    from .coalgebra import chain_coalgebra, divided_power_truncated, triangular_divided_power
    builders = {
        "incidence-chain": lambda d: chain_coalgebra(d, field),
        "dividedpower": lambda d: divided_power_truncated(d, field),
        "H": lambda d: triangular_divided_power(d, field),
    }
    if builder not in builders:
        raise FunctorRingError(f"unknown example builder {builder!r}")
    rep = ProbeReport(example=builder, orders=list(orders), field_json=field.to_json())
    left_mins = []
    right_mins = []
    for d in orders:
        c = builders[builder](d)
        left = _probe_side(c, "left")
        right = _probe_side(c, "right")
        rep.rows.append({"order": d, "dim": c.dim,
                         "left": left.to_json(), "right": right.to_json()})
        left_mins.append(left.min_dim)
        right_mins.append(right.min_dim)
    rep.verdicts = {
        "left_min_dims": left_mins,
        "right_min_dims": right_mins,
        "left_min_growth": _growth_verdict(left_mins),
        "right_min_growth": _growth_verdict(right_mins),
        "witnesses_on_both_sides": all(
            row["left"]["witness_count"] > 0 and row["right"]["witness_count"] > 0
            for row in rep.rows),
    }
    return rep


def _growth_verdict(vals):
    if len(vals) <= 1:
        return "single-order"
    if all(b > a for a, b in zip(vals, vals[1:])):
        return "strictly-increasing"
    if all(b == a for a, b in zip(vals, vals[1:])):
        return "constant"
    return "mixed"
