"""Coalgebras by structure constants.

A coalgebra is a basis b_0..b_{n-1}, a sparse comultiplication tensor
delta[(k, i, j)] = coefficient of b_i (x) b_j in Delta(b_k), and a counit
vector.  Constructors: incidence coalgebras of finite posets, truncated
divided powers, triangular glueings along a bicomodule, and the 3x-size
upper-triangular matrix coalgebra.  The dual algebra, the coradical and
the coradical filtration are computed exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .linalg import Matrix, MultTable, Subspace, kernel_basis, trace_form_radical


class CoalgebraError(ValueError):
    pass


# ---------------------------------------------------------------------------
# posets


class Poset:
    """A finite poset given by its full order relation table."""

    def __init__(self, size, leq):
        self.size = size
        self.leq = [[bool(x) for x in row] for row in leq]
        self._validate()

    def _validate(self):
        n = self.size
        if len(self.leq) != n or any(len(r) != n for r in self.leq):
            raise CoalgebraError("relation table has wrong shape")
        for x in range(n):
            if not self.leq[x][x]:
                raise CoalgebraError(f"not reflexive at {x}")
        for x in range(n):
            for y in range(n):
                if x != y and self.leq[x][y] and self.leq[y][x]:
                    raise CoalgebraError(f"not antisymmetric at ({x},{y})")
                if self.leq[x][y]:
                    for z in range(n):
                        if self.leq[y][z] and not self.leq[x][z]:
                            raise CoalgebraError(f"not transitive at ({x},{y},{z})")

    def intervals(self):
        """All pairs x <= y in lexicographic order."""
        return [(x, y) for x in range(self.size) for y in range(self.size) if self.leq[x][y]]

    def between(self, x, y):
        return [z for z in range(self.size) if self.leq[x][z] and self.leq[z][y]]


def chain_poset(n):
    """The chain 0 < 1 < ... < n-1."""
    return Poset(n, [[x <= y for y in range(n)] for x in range(n)])


def antichain_poset(n):
    return Poset(n, [[x == y for y in range(n)] for x in range(n)])


# ---------------------------------------------------------------------------
# coalgebras


class Coalgebra:
    def __init__(self, dim, labels, delta, epsilon, field, name=None):
        self.dim = dim
        self.labels = list(labels)
        if len(self.labels) != dim:
            raise CoalgebraError("label count differs from dimension")
        of = field.of
        self.delta = {}
        for (k, i, j), v in delta.items():
            v = of(v)
            if v:
                self.delta[(k, i, j)] = v
        self.epsilon = [of(x) for x in epsilon]
        if len(self.epsilon) != dim:
            raise CoalgebraError("counit vector has wrong length")
        self.field = field
        self.name = name
        # optional left/right comodule decomposition tags set by constructors
        self.left_tags = None
        self.right_tags = None
        self._delta_by_k = None
        self._coradical = None

    def delta_of(self, k):
        """Terms (i, j, value) of Delta(b_k)."""
        if self._delta_by_k is None:
            by_k = [[] for _ in range(self.dim)]
            for (k0, i, j), v in sorted(self.delta.items()):
                by_k[k0].append((i, j, v))
            self._delta_by_k = by_k
        return self._delta_by_k[k]

    def label_index(self, label):
        return self.labels.index(label)

    def span_of_labels(self, labels):
        field = self.field
        vecs = []
        for lab in labels:
            v = [field.zero] * self.dim
            v[self.label_index(lab)] = field.one
            vecs.append(v)
        return Subspace.from_vectors(vecs, self.dim, field)

    def __repr__(self):
        name = self.name or "coalgebra"
        return f"Coalgebra({name}, dim {self.dim} over {self.field!r})"

    def to_json(self):
        f = self.field
        return {
            "schema": "cofreyd/coalgebra-1",
            "name": self.name,
            "field": f.to_json(),
            "dim": self.dim,
            "labels": self.labels,
            "delta": [[k, i, j, f.fmt(v)] for (k, i, j), v in sorted(self.delta.items())],
            "epsilon": [f.fmt(x) for x in self.epsilon],
        }

    @classmethod
    def from_json(cls, obj, field=None):
        from .fields import field_from_json
        f = field if field is not None else field_from_json(obj["field"])
        delta = {}
        for k, i, j, s in obj["delta"]:
            delta[(int(k), int(i), int(j))] = f.parse(s)
        return cls(int(obj["dim"]), obj["labels"], delta,
                   [f.parse(x) for x in obj["epsilon"]], f, name=obj.get("name"))


@dataclass
class ValidationReport:
    ok: bool
    defect_locations: list = dc_field(default_factory=list)


def validate_coalgebra(c):
    """Check coassociativity and the counit axiom exactly.

    Reports the basis indices k where either identity fails.
    """
    field = c.field
    bad = set()
    for k in range(c.dim):
        terms = c.delta_of(k)
        # counit: (eps (x) id) Delta = id = (id (x) eps) Delta
        left = {}
        right = {}
        for i, j, v in terms:
            e_i = c.epsilon[i]
            if e_i:
                left[j] = field.add(left.get(j, field.zero), field.mul(e_i, v))
            e_j = c.epsilon[j]
            if e_j:
                right[i] = field.add(right.get(i, field.zero), field.mul(e_j, v))
        left = {a: v for a, v in left.items() if v}
        right = {a: v for a, v in right.items() if v}
        if left != {k: field.one} or right != {k: field.one}:
            bad.add(k)
            continue
        # coassociativity: (Delta (x) id) Delta = (id (x) Delta) Delta
        lhs = {}
        for i, j, v in terms:
            for p, q, w in c.delta_of(i):
                key = (p, q, j)
                s = field.add(lhs.get(key, field.zero), field.mul(v, w))
                if s:
                    lhs[key] = s
                elif key in lhs:
                    del lhs[key]
        rhs = {}
        for i, j, v in terms:
            for q, r, w in c.delta_of(j):
                key = (i, q, r)
                s = field.add(rhs.get(key, field.zero), field.mul(v, w))
                if s:
                    rhs[key] = s
                elif key in rhs:
                    del rhs[key]
        if lhs != rhs:
            bad.add(k)
    return ValidationReport(ok=not bad, defect_locations=sorted(bad))


def coassociativity_defect_matrix(c):
    """Matrix of (Delta(x)id)Delta - (id(x)Delta)Delta : C -> C^(x)3.

    Zero exactly when the comultiplication is coassociative; its kernel is
    the set of basis vectors on which the two expansions agree.
    """
    field = c.field
    n = c.dim
    m = Matrix.zero(n * n * n, n, field)
    for k in range(n):
        for i, j, v in c.delta_of(k):
            for p, q, w in c.delta_of(i):
                r = (p * n + q) * n + j
                m.data[r][k] = field.add(m.data[r][k], field.mul(v, w))
            for q, r2, w in c.delta_of(j):
                r = (i * n + q) * n + r2
                m.data[r][k] = field.sub(m.data[r][k], field.mul(v, w))
    return m


# ---------------------------------------------------------------------------
# constructors


def incidence_coalgebra(p, field, name=None):
    """Incidence coalgebra of a finite poset: basis = intervals (x, y),
    Delta((x,y)) = sum over x <= z <= y of (x,z) (x) (z,y), counit = delta_{x,y}.
    """
    pairs = p.intervals()
    index = {pair: i for i, pair in enumerate(pairs)}
    delta = {}
    for (x, y), k in index.items():
        for z in p.between(x, y):
            delta[(k, index[(x, z)], index[(z, y)])] = field.one
    epsilon = [field.one if x == y else field.zero for (x, y) in pairs]
    c = Coalgebra(len(pairs), [f"({x},{y})" for (x, y) in pairs], delta, epsilon, field,
                  name=name or f"incidence[{p.size}]")
    _require_valid(c)
    return c


def chain_coalgebra(d, field):
    """Incidence coalgebra of the chain 0 <= 1 <= ... <= d."""
    return incidence_coalgebra(chain_poset(d + 1), field, name=f"chain[0..{d}]")


def grouplike_coalgebra(labels, field, name=None):
    """Span of grouplikes: Delta(g) = g (x) g, eps(g) = 1."""
    n = len(labels)
    delta = {(k, k, k): field.one for k in range(n)}
    c = Coalgebra(n, labels, delta, [field.one] * n, field, name=name or f"grouplike[{n}]")
    _require_valid(c)
    return c


def divided_power_truncated(d, field, labels=None):
    """Truncated divided power coalgebra: basis c_0..c_d,
    Delta(c_n) = sum_{i+j=n} c_i (x) c_j, eps(c_n) = delta_{0n}.
    """
    if d < 0:
        raise CoalgebraError("order must be nonnegative")
    n = d + 1
    delta = {}
    for k in range(n):
        for i in range(k + 1):
            delta[(k, i, k - i)] = field.one
    epsilon = [field.one] + [field.zero] * d
    c = Coalgebra(n, labels or [f"c{i}" for i in range(n)], delta, epsilon, field,
                  name=f"dividedpower[{d}]")
    _require_valid(c)
    return c


class Bicomodule:
    """A space with a left coaction over C and a right coaction over D.

    left[(s, t, k)]  = coefficient of b_k (x) e_t in lambda(e_s)  (b_k in C)
    right[(s, t, k)] = coefficient of e_t (x) b_k in rho(e_s)     (b_k in D)
    """

    def __init__(self, dim, labels, left, right, left_parent, right_parent):
        self.dim = dim
        self.labels = list(labels)
        self.left_parent = left_parent
        self.right_parent = right_parent
        fl = left_parent.field
        self.left = {key: fl.of(v) for key, v in left.items() if fl.of(v)}
        self.right = {key: fl.of(v) for key, v in right.items() if fl.of(v)}
        self.validate()

    def validate(self):
        from .comodule import coaction_axiom_defects
        if self.left_parent.field != self.right_parent.field:
            raise CoalgebraError("bicomodule parents over different fields")
        if coaction_axiom_defects(self.left, self.dim, self.left_parent, "left"):
            raise CoalgebraError("left coaction fails the comodule axioms")
        if coaction_axiom_defects(self.right, self.dim, self.right_parent, "right"):
            raise CoalgebraError("right coaction fails the comodule axioms")
        # the two coactions commute: coacting left then right = right then left
        field = self.left_parent.field
        lhs = {}
        for (s, t, k), v in sorted(self.left.items()):
            for (t2, a, k2), w in sorted(self.right.items()):
                if t2 == t:
                    key = (s, k, a, k2)
                    val = field.add(lhs.get(key, field.zero), field.mul(v, w))
                    if val:
                        lhs[key] = val
                    else:
                        lhs.pop(key, None)
        rhs = {}
        for (s, t, k2), v in sorted(self.right.items()):
            for (t2, a, k), w in sorted(self.left.items()):
                if t2 == t:
                    key = (s, k, a, k2)
                    val = field.add(rhs.get(key, field.zero), field.mul(v, w))
                    if val:
                        rhs[key] = val
                    else:
                        rhs.pop(key, None)
        if lhs != rhs:
            raise CoalgebraError("bicomodule coactions do not commute")


def regular_bicomodule(c):
    """C as a C-C bicomodule with both coactions given by Delta."""
    left = {(k, j, i): v for (k, i, j), v in c.delta.items()}
    right = {(k, i, j): v for (k, i, j), v in c.delta.items()}
    return Bicomodule(c.dim, c.labels, left, right, c, c)


def counit_right_bicomodule(c, d_label="t", m_labels=None):
    """C as a C-F bicomodule: left coaction Delta, right coaction induced by
    the counit morphism to the one-dimensional coalgebra F."""
    d = grouplike_coalgebra([d_label], c.field)
    left = {(k, j, i): v for (k, i, j), v in c.delta.items()}
    right = {(s, s, 0): c.field.one for s in range(c.dim)}
    labels = m_labels or [f"m{i}" for i in range(c.dim)]
    return Bicomodule(c.dim, labels, left, right, c, d), d


def triangular_coalgebra(c, d, m, name=None):
    """Coalgebra on C + M + D glueing C and D along the C-D bicomodule M.

    Basis order: C block, M block, D block.  Delta restricts to Delta_C and
    Delta_D on the outer blocks; on M it is the sum of the two coactions.
    The counit is eps_C on C, zero on M, eps_D on D.  The two block
    decompositions are exposed as left/right comodule tags.
    """
    if m.left_parent is not c or m.right_parent is not d:
        raise CoalgebraError("bicomodule parents do not match C and D")
    field = c.field
    nc, nm, nd = c.dim, m.dim, d.dim
    off_m = nc
    off_d = nc + nm
    delta = {}
    for (k, i, j), v in c.delta.items():
        delta[(k, i, j)] = v
    for (s, t, k), v in m.left.items():
        delta[(off_m + s, k, off_m + t)] = v
    for (s, t, k), v in m.right.items():
        delta[(off_m + s, off_m + t, off_d + k)] = v
    for (k, i, j), v in d.delta.items():
        delta[(off_d + k, off_d + i, off_d + j)] = v
    epsilon = list(c.epsilon) + [field.zero] * nm + list(d.epsilon)
    labels = list(c.labels) + list(m.labels) + list(d.labels)
    h = Coalgebra(nc + nm + nd, labels, delta, epsilon, field, name=name or "triangular")
    _require_valid(h)
    n = h.dim
    h.left_tags = (
        _coordinate_span(range(0, nc), n, field),
        _coordinate_span(range(off_m, n), n, field),
    )
    h.right_tags = (
        _coordinate_span(range(0, off_d), n, field),
        _coordinate_span(range(off_d, n), n, field),
    )
    return h


def triangular_divided_power(d, field):
    """The triangular coalgebra glueing the order-d truncated divided power
    coalgebra to F along its counit: basis c_0..c_d, x_0..x_d, t."""
    c = divided_power_truncated(d, field)
    m, one = counit_right_bicomodule(c, d_label="t", m_labels=[f"x{i}" for i in range(d + 1)])
    return triangular_coalgebra(c, one, m, name=f"H[{d}]")


def matrix2_coalgebra(c):
    """Upper-triangular 2x2 matrix coalgebra on C + C + C.

    Blocks: position (1,1), position (1,2), position (2,2); equals the
    triangular coalgebra of C with itself along the regular bicomodule.
    """
    m = regular_bicomodule(c)
    labels_a = [f"11:{lab}" for lab in c.labels]
    labels_b = [f"12:{lab}" for lab in c.labels]
    labels_z = [f"22:{lab}" for lab in c.labels]
    c11 = Coalgebra(c.dim, labels_a, dict(c.delta), list(c.epsilon), c.field, name=c.name)
    c22 = Coalgebra(c.dim, labels_z, dict(c.delta), list(c.epsilon), c.field, name=c.name)
    m = Bicomodule(c.dim, labels_b, m.left, m.right, c11, c22)
    # rebuild with the relabelled parents so the blocks carry matrix positions
    h = triangular_coalgebra(c11, c22, m, name=f"matrix2({c.name or 'C'})")
    return h


def _coordinate_span(indices, n, field):
    vecs = []
    for i in indices:
        v = [field.zero] * n
        v[i] = field.one
        vecs.append(v)
    return Subspace.from_vectors(vecs, n, field)


def _require_valid(c):
    rep = validate_coalgebra(c)
    if not rep.ok:
        raise CoalgebraError(f"constructed coalgebra fails validation at {rep.defect_locations}")


# ---------------------------------------------------------------------------
# dual algebra, coradical, coradical filtration


def dual_algebra(c):
    """Convolution algebra on the dual basis: (b_i* b_j*)(b_k) = delta-coefficient
    c^{ij}_k, with unit the counit vector.  Associativity and unitality are
    verified exactly."""
    table = {}
    for (k, i, j), v in c.delta.items():
        table.setdefault((i, j), {})[k] = v
    t = MultTable(c.dim, table, c.field, unit=list(c.epsilon), labels=[lab + "*" for lab in c.labels])
    if not t.is_associative():
        raise CoalgebraError("dual table not associative (invalid coalgebra input)")
    if not t.check_unital():
        raise CoalgebraError("counit is not a unit of the dual table")
    return t


def coradical(c):
    """C_0: the annihilator in C of the Jacobson radical of the dual algebra.

    Verified to be a subcoalgebra.  Needs characteristic 0 or p > dim C.
    """
    if c._coradical is not None:
        return c._coradical
    t = dual_algebra(c)
    j = trace_form_radical(t)
    if j.dim == 0:
        c0 = Subspace.full(c.dim, c.field)
    else:
        c0 = Subspace.from_vectors(kernel_basis(j.basis), c.dim, c.field)
    if not is_subcoalgebra(c, c0):
        raise CoalgebraError("coradical candidate is not a subcoalgebra")
    c._coradical = c0
    return c0


def is_subcoalgebra(c, v):
    """Delta(V) <= V (x) V, checked slice-wise: V(x)V = (V(x)C) cap (C(x)V)."""
    field = c.field
    for vec in v.basis.data:
        by_second = {}
        by_first = {}
        for k, x in enumerate(vec):
            if not x:
                continue
            for i, j, w in c.delta_of(k):
                val = field.mul(x, w)
                row = by_second.setdefault(j, [field.zero] * c.dim)
                row[i] = field.add(row[i], val)
                row = by_first.setdefault(i, [field.zero] * c.dim)
                row[j] = field.add(row[j], val)
        for row in by_second.values():
            if not v.contains_vector(row):
                return False
        for row in by_first.values():
            if not v.contains_vector(row):
                return False
    return True


def coradical_filtration(c):
    """Ascending chain C_0 <= C_1 <= ... = C with
    C_{i+1} = Delta^{-1}(C (x) C_i + C_0 (x) C); every term is verified to be
    a subcoalgebra."""
    field = c.field
    c0 = coradical(c)
    chain = [c0]
    while chain[-1].dim < c.dim:
        prev = chain[-1]
        nxt = _wedge_preimage(c, c0, prev)
        if not is_subcoalgebra(c, nxt):
            raise CoalgebraError("filtration term is not a subcoalgebra")
        if nxt.dim <= prev.dim:
            raise CoalgebraError("coradical filtration failed to ascend")
        chain.append(nxt)
    return chain


def _wedge_preimage(c, c0, ci):
    # kernel of (q0 (x) qi) Delta, where q0, qi are the quotient projections
    field = c.field
    keep0 = _complement_coords(c0, c.dim)
    keepi = _complement_coords(ci, c.dim)
    unit = []
    for i in range(c.dim):
        v = [field.zero] * c.dim
        v[i] = field.one
        unit.append(v)
    red0 = [c0.reduce(unit[i]) for i in range(c.dim)]
    redi = [ci.reduce(unit[i]) for i in range(c.dim)]
    rows = []
    for s in range(c.dim):
        # Delta(e_s) with both factors reduced modulo the subspaces
        acc = {}
        for i, j, v in c.delta_of(s):
            ri = red0[i]
            rj = redi[j]
            for a, x in enumerate(ri):
                if not x:
                    continue
                for b, y in enumerate(rj):
                    if not y:
                        continue
                    key = (a, b)
                    acc[key] = field.add(acc.get(key, field.zero), field.mul(v, field.mul(x, y)))
        row = []
        for a in keep0:
            for b in keepi:
                row.append(acc.get((a, b), field.zero))
        rows.append(row)
    m = Matrix(c.dim, len(keep0) * len(keepi), rows, field, _canonical=True).transpose()
    return Subspace.from_vectors(kernel_basis(m), c.dim, field)


def _complement_coords(v, n):
    piv = set()
    for row in v.basis.data:
        piv.add(next(j for j, x in enumerate(row) if x))
    return [j for j in range(n) if j not in piv]
