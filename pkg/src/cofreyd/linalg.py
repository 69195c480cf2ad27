"""Exact linear algebra kernel: matrices, reduced echelon forms, subspaces,
and the trace-form radical of a finite-dimensional associative algebra.

Maps use the column convention: an (r x c) matrix sends length-c vectors to
length-r vectors, and composition is the ordinary matrix product.
Subspaces are stored by a reduced-row-echelon basis, which is unique, so
subspace equality is bit-exact.
"""
from __future__ import annotations

from dataclasses import dataclass


class LinalgError(ValueError):
    pass


# ---------------------------------------------------------------------------
# matrices


class Matrix:
    __slots__ = ("rows", "cols", "data", "field")

    def __init__(self, rows, cols, data, field, _canonical=False):
        self.rows = rows
        self.cols = cols
        self.field = field
        if _canonical:
            self.data = data
        else:
            of = field.of
            if len(data) != rows or any(len(r) != cols for r in data):
                raise LinalgError("matrix data has wrong shape")
            self.data = [[of(x) for x in row] for row in data]

    @classmethod
    def zero(cls, rows, cols, field):
        z = field.zero
        return cls(rows, cols, [[z] * cols for _ in range(rows)], field, _canonical=True)

    @classmethod
    def identity(cls, n, field):
        m = cls.zero(n, n, field)
        one = field.one
        for i in range(n):
            m.data[i][i] = one
        return m

    @classmethod
    def from_rows(cls, rows_list, cols, field):
        return cls(len(rows_list), cols, [list(r) for r in rows_list], field)

    def copy(self):
        return Matrix(self.rows, self.cols, [row[:] for row in self.data], self.field, _canonical=True)

    def row(self, i):
        return self.data[i][:]

    def col(self, j):
        return [self.data[i][j] for i in range(self.rows)]

    def transpose(self):
        return Matrix(self.cols, self.rows, [list(col) for col in zip(*self.data)] if self.rows else [[] for _ in range(self.cols)], self.field, _canonical=True)

    def is_zero(self):
        z = self.field.zero
        return all(x == z for row in self.data for x in row)

    def mul(self, other):
        if self.cols != other.rows:
            raise LinalgError("dimension mismatch in matrix product")
        if self.field != other.field:
            raise LinalgError("mixed fields in matrix product")
        f = self.field
        if self.cols == 0:
            return Matrix.zero(self.rows, other.cols, f)
        z, mul, add = f.zero, f.mul, f.add
        ot = list(zip(*other.data)) if other.rows else []
        out = []
        for arow in self.data:
            orow = []
            for j in range(other.cols):
                s = z
                bcol = ot[j]
                for a, b in zip(arow, bcol):
                    if a and b:
                        s = add(s, mul(a, b))
                orow.append(s)
            out.append(orow)
        return Matrix(self.rows, other.cols, out, f, _canonical=True)

    def add(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise LinalgError("dimension mismatch in matrix sum")
        f = self.field
        return Matrix(self.rows, self.cols,
                      [[f.add(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)],
                      f, _canonical=True)

    def sub(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise LinalgError("dimension mismatch in matrix difference")
        f = self.field
        return Matrix(self.rows, self.cols,
                      [[f.sub(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)],
                      f, _canonical=True)

    def scale(self, c):
        f = self.field
        c = f.of(c)
        return Matrix(self.rows, self.cols, [[f.mul(c, x) for x in row] for row in self.data], f, _canonical=True)

    def apply(self, vec):
        """Apply to a length-cols vector, returning a length-rows vector."""
        if len(vec) != self.cols:
            raise LinalgError("vector length mismatch")
        f = self.field
        z, mul, add = f.zero, f.mul, f.add
        out = []
        for row in self.data:
            s = z
            for a, v in zip(row, vec):
                if a and v:
                    s = add(s, mul(a, v))
            out.append(s)
        return out

    def power(self, k):
        if self.rows != self.cols:
            raise LinalgError("power of a non-square matrix")
        result = Matrix.identity(self.rows, self.field)
        base = self
        while k:
            if k & 1:
                result = result.mul(base)
            base = base.mul(base)
            k >>= 1
        return result

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.rows == other.rows
                and self.cols == other.cols and self.field == other.field
                and self.data == other.data)

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols} over {self.field!r})"

    def to_json(self):
        f = self.field
        entries = []
        for i in range(self.rows):
            for j in range(self.cols):
                x = self.data[i][j]
                if x:
                    entries.append([i, j, f.fmt(x)])
        return {"rows": self.rows, "cols": self.cols, "entries": entries}

    @classmethod
    def from_json(cls, obj, field):
        m = cls.zero(int(obj["rows"]), int(obj["cols"]), field)
        for i, j, s in obj.get("entries", []):
            m.data[int(i)][int(j)] = field.parse(s)
        return m


# ---------------------------------------------------------------------------
# echelon forms and solving


def _rref_in_place(rows, ncols, field, no_pivot_from=None):
    """Reduce `rows` (list of lists, modified) to RREF; return pivot columns.

    Columns >= no_pivot_from never yield pivots (used for augmented systems).
    """
    limit = ncols if no_pivot_from is None else no_pivot_from
    pivots = []
    r = 0
    nrows = len(rows)
    one = field.one
    for c in range(limit):
        pr = None
        for i in range(r, nrows):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        if rows[r][c] != one:
            inv = field.inv(rows[r][c])
            rows[r] = [field.mul(inv, x) for x in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i != r and rows[i][c]:
                rows[i] = field.row_sub_scaled(rows[i], rows[i][c], prow)
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


@dataclass
class SolveResult:
    particular: list | None   # None when no right-hand side was given
    kernel: list              # RREF-canonical basis of the null space


def rref_solve(a, b=None):
    """Reduced row echelon form of `a`, with optional linear solve.

    Returns (rref, pivots, solution).  When `b` is given, `solution` is a
    SolveResult if a x = b is consistent and None otherwise; when `b` is
    absent, `solution` carries the kernel basis with particular=None.
    """
    if not isinstance(a, Matrix):
        raise LinalgError("rref_solve expects a Matrix")
    field = a.field
    if b is not None:
        if len(b) != a.rows:
            raise LinalgError("right-hand side has wrong length")
        b = [field.of(x) for x in b]
        rows = [row[:] + [bv] for row, bv in zip(a.data, b)]
        pivots = _rref_in_place(rows, a.cols + 1, field, no_pivot_from=a.cols)
        consistent = all(not row[a.cols] for row in rows[len(pivots):])
        rref = Matrix(a.rows, a.cols, [row[: a.cols] for row in rows], field, _canonical=True)
        kernel = _kernel_from_rref(rref.data, pivots, a.cols, field)
        if not consistent:
            return rref, pivots, None
        particular = [field.zero] * a.cols
        for r, c in enumerate(pivots):
            particular[c] = rows[r][a.cols]
        return rref, pivots, SolveResult(particular, kernel)
    rows = [row[:] for row in a.data]
    pivots = _rref_in_place(rows, a.cols, field)
    rref = Matrix(a.rows, a.cols, rows, field, _canonical=True)
    kernel = _kernel_from_rref(rows, pivots, a.cols, field)
    return rref, pivots, SolveResult(None, kernel)


def _kernel_from_rref(rows, pivots, ncols, field):
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for r, pc in enumerate(pivots):
            coef = rows[r][fc]
            if coef:
                v[pc] = field.neg(coef)
        basis.append(v)
    return basis


def kernel_basis(a):
    """Null-space basis of the matrix `a` (canonical RREF construction)."""
    return rref_solve(a)[2].kernel


class SpanCoords:
    """Incremental echelon of a list of vectors remembering how each echelon
    row is expressed in the input vectors; supports membership with coords."""

    def __init__(self, field, width):
        self.field = field
        self.width = width
        self.rows = []        # echelon rows (leading coefficient 1)
        self.pivots = []      # pivot column per row
        self.combos = []      # expression of each row in the original inputs
        self.count = 0        # number of vectors fed in

    def add(self, vec):
        """Feed one vector; return True if it enlarged the span."""
        field = self.field
        vec = list(vec)
        combo = [field.zero] * self.count + [field.one]
        for c in self.combos:
            c.append(field.zero)
        self.count += 1
        for i, p in enumerate(self.pivots):
            if vec[p]:
                f = vec[p]
                vec = field.row_sub_scaled(vec, f, self.rows[i])
                combo = field.row_sub_scaled(combo, f, self.combos[i])
        piv = next((j for j, x in enumerate(vec) if x), None)
        if piv is None:
            return False
        inv = field.inv(vec[piv])
        vec = [field.mul(inv, x) for x in vec]
        combo = [field.mul(inv, x) for x in combo]
        # keep rows sorted by pivot and fully reduced
        pos = 0
        while pos < len(self.pivots) and self.pivots[pos] < piv:
            pos += 1
        self.rows.insert(pos, vec)
        self.pivots.insert(pos, piv)
        self.combos.insert(pos, combo)
        for i in range(len(self.rows)):
            if i != pos and self.rows[i][piv]:
                f = self.rows[i][piv]
                self.rows[i] = field.row_sub_scaled(self.rows[i], f, vec)
                self.combos[i] = field.row_sub_scaled(self.combos[i], f, combo)
        return True

    @property
    def dim(self):
        return len(self.rows)

    def coords(self, vec):
        """Coefficients expressing `vec` in the input vectors, or None."""
        field = self.field
        vec = list(vec)
        combo = [field.zero] * self.count
        for i, p in enumerate(self.pivots):
            if vec[p]:
                f = vec[p]
                vec = field.row_sub_scaled(vec, f, self.rows[i])
                combo = [field.add(x, field.mul(f, y)) for x, y in zip(combo, self.combos[i])]
        if any(vec):
            return None
        return combo

    def contains(self, vec):
        field = self.field
        vec = list(vec)
        for i, p in enumerate(self.pivots):
            if vec[p]:
                vec = field.row_sub_scaled(vec, vec[p], self.rows[i])
        return not any(vec)


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """A subspace of F^n held by its unique reduced-echelon basis."""

    __slots__ = ("ambient_dim", "basis", "field")

    def __init__(self, ambient_dim, basis, field):
        self.ambient_dim = ambient_dim
        self.basis = basis          # Matrix in RREF, no zero rows
        self.field = field

    @classmethod
    def from_vectors(cls, vectors, ambient_dim, field):
        rows = [[field.of(x) for x in v] for v in vectors]
        for v in rows:
            if len(v) != ambient_dim:
                raise LinalgError("vector length differs from ambient dimension")
        pivots = _rref_in_place(rows, ambient_dim, field)
        rows = rows[: len(pivots)]
        return cls(ambient_dim, Matrix(len(rows), ambient_dim, rows, field, _canonical=True), field)

    @classmethod
    def zero(cls, ambient_dim, field):
        return cls.from_vectors([], ambient_dim, field)

    @classmethod
    def full(cls, ambient_dim, field):
        return cls(ambient_dim, Matrix.identity(ambient_dim, field), field)

    @property
    def dim(self):
        return self.basis.rows

    def vectors(self):
        return [row[:] for row in self.basis.data]

    def reduce(self, vec):
        """Residue of `vec` after elimination against the basis."""
        field = self.field
        vec = [field.of(x) for x in vec]
        data = self.basis.data
        # pivot of row i is its first nonzero column
        for row in data:
            p = next(j for j, x in enumerate(row) if x)
            if vec[p]:
                vec = field.row_sub_scaled(vec, vec[p], row)
        return vec

    def contains_vector(self, vec):
        return not any(self.reduce(vec))

    def contains(self, other):
        if other.ambient_dim != self.ambient_dim:
            raise LinalgError("ambient dimension mismatch")
        return all(self.contains_vector(v) for v in other.basis.data)

    def coords(self, vec):
        """Coefficients of `vec` on the echelon basis rows, or None."""
        field = self.field
        vec = [field.of(x) for x in vec]
        out = []
        for row in self.basis.data:
            p = next(j for j, x in enumerate(row) if x)
            c = vec[p]
            out.append(c)
            if c:
                vec = field.row_sub_scaled(vec, c, row)
        if any(vec):
            return None
        return out

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim
                and self.field == other.field and self.basis.data == other.basis.data)

    def __repr__(self):
        return f"Subspace(dim {self.dim} of F^{self.ambient_dim})"

    def to_json(self):
        return {"ambient_dim": self.ambient_dim, "basis": self.basis.to_json()}


def subspace_sum(u, v):
    _check_pair(u, v)
    return Subspace.from_vectors(u.vectors() + v.vectors(), u.ambient_dim, u.field)


def subspace_intersection(u, v):
    _check_pair(u, v)
    if u.dim == 0 or v.dim == 0:
        return Subspace.zero(u.ambient_dim, u.field)
    # x = a·U = b·V  <=>  (a, b) in the kernel of [U^T | -V^T]
    field = u.field
    n = u.ambient_dim
    cols = u.dim + v.dim
    data = []
    for i in range(n):
        row = [u.basis.data[r][i] for r in range(u.dim)]
        row += [field.neg(v.basis.data[r][i]) for r in range(v.dim)]
        data.append(row)
    ker = kernel_basis(Matrix(n, cols, data, field, _canonical=True))
    vecs = []
    for k in ker:
        x = [field.zero] * n
        for r in range(u.dim):
            if k[r]:
                x = [field.add(a, field.mul(k[r], b)) for a, b in zip(x, u.basis.data[r])]
        vecs.append(x)
    return Subspace.from_vectors(vecs, n, field)


def subspace_ops(u, v):
    """Sum, intersection, quotient dimension dim((U+V)/V), and V <= U test."""
    _check_pair(u, v)
    s = subspace_sum(u, v)
    i = subspace_intersection(u, v)
    return {
        "sum": s,
        "intersection": i,
        "quotient_dim": s.dim - v.dim,
        "contains": u.contains(v),
    }


def _check_pair(u, v):
    if u.ambient_dim != v.ambient_dim:
        raise LinalgError("ambient dimension mismatch")
    if u.field != v.field:
        raise LinalgError("mixed fields")


# ---------------------------------------------------------------------------
# multiplication tables and the trace-form radical


class MultTable:
    """Structure constants of a finite-dimensional associative algebra.

    table[(i, j)] maps k to the coefficient of e_k in e_i * e_j (zero
    products omitted).  `unit`, when present, is the coordinate vector of a
    two-sided identity.
    """

    def __init__(self, dim, table, field, unit=None, labels=None):
        self.dim = dim
        self.field = field
        self.table = {}
        for (i, j), vec in table.items():
            clean = {k: field.of(x) for k, x in vec.items() if field.of(x)}
            if clean:
                self.table[(i, j)] = clean
        self.unit = None if unit is None else [field.of(x) for x in unit]
        self.labels = labels

    def product_vec(self, x, y):
        field = self.field
        out = [field.zero] * self.dim
        xs = [(i, xi) for i, xi in enumerate(x) if xi]
        ys = [(j, yj) for j, yj in enumerate(y) if yj]
        table = self.table
        for i, xi in xs:
            for j, yj in ys:
                cell = table.get((i, j))
                if cell:
                    c = field.mul(xi, yj)
                    for k, v in cell.items():
                        out[k] = field.add(out[k], field.mul(c, v))
        return out

    def left_mult_matrix(self, x):
        """Matrix of left multiplication by the coordinate vector x."""
        field = self.field
        m = Matrix.zero(self.dim, self.dim, field)
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j in range(self.dim):
                cell = self.table.get((i, j))
                if cell:
                    for k, v in cell.items():
                        m.data[k][j] = field.add(m.data[k][j], field.mul(xi, v))
        return m

    def basis_vector(self, i):
        v = [self.field.zero] * self.dim
        v[i] = self.field.one
        return v

    def associativity_defects(self, limit=None):
        """List of basis triples (i, j, k) where (e_i e_j) e_k != e_i (e_j e_k),
        computed on the sparse table directly."""
        field = self.field
        defects = []
        table = self.table
        for i in range(self.dim):
            for j in range(self.dim):
                cell_ij = table.get((i, j))
                for k in range(self.dim):
                    left = {}
                    if cell_ij:
                        for m, v in cell_ij.items():
                            cmk = table.get((m, k))
                            if cmk:
                                for t, w in cmk.items():
                                    s = field.add(left.get(t, field.zero), field.mul(v, w))
                                    if s:
                                        left[t] = s
                                    else:
                                        left.pop(t, None)
                    right = {}
                    cell_jk = table.get((j, k))
                    if cell_jk:
                        for m, v in cell_jk.items():
                            cim = table.get((i, m))
                            if cim:
                                for t, w in cim.items():
                                    s = field.add(right.get(t, field.zero), field.mul(v, w))
                                    if s:
                                        right[t] = s
                                    else:
                                        right.pop(t, None)
                    if left != right:
                        defects.append((i, j, k))
                        if limit and len(defects) >= limit:
                            return defects
        return defects

    def is_associative(self):
        return not self.associativity_defects(limit=1)

    def check_unital(self):
        if self.unit is None:
            return False
        basis = [self.basis_vector(i) for i in range(self.dim)]
        for b in basis:
            if self.product_vec(self.unit, b) != b or self.product_vec(b, self.unit) != b:
                return False
        return True

    def subalgebra_product_span(self, u, v):
        """Span of all products x*y with x in u, y in v (Subspaces)."""
        vecs = [self.product_vec(x, y) for x in u.vectors() for y in v.vectors()]
        return Subspace.from_vectors(vecs, self.dim, self.field)

    def quotient_by_ideal(self, ideal):
        """Structure constants on the complement coordinates of an ideal.

        Returns (MultTable, projection Matrix (q x dim), lift columns).
        """
        field = self.field
        piv = []
        for row in ideal.basis.data:
            piv.append(next(j for j, x in enumerate(row) if x))
        keep = [j for j in range(self.dim) if j not in set(piv)]
        q = len(keep)

        def project(vec):
            res = ideal.reduce(vec)
            return [res[j] for j in keep]

        table = {}
        for a in range(q):
            ea = [field.zero] * self.dim
            ea[keep[a]] = field.one
            for b in range(q):
                eb = [field.zero] * self.dim
                eb[keep[b]] = field.one
                pv = project(self.product_vec(ea, eb))
                cell = {k: v for k, v in enumerate(pv) if v}
                if cell:
                    table[(a, b)] = cell
        unit = None
        if self.unit is not None:
            unit = project(self.unit)
        proj = Matrix.zero(q, self.dim, field)
        for j in range(self.dim):
            ej = [field.zero] * self.dim
            ej[j] = field.one
            pj = project(ej)
            for r in range(q):
                proj.data[r][j] = pj[r]
        return MultTable(q, table, field, unit=unit), proj, keep


class RadicalError(ValueError):
    pass


def trace_form_radical(t, _verify=True):
    """Jacobson radical of an associative table via the trace bilinear form
    of the left regular representation.

    Valid in characteristic 0 or p > dim; raises RadicalError otherwise.
    The returned ideal is verified two-sided and nilpotent, and the quotient
    is verified semisimple by recomputation.
    """
    field = t.field
    if field.char != 0 and field.char <= t.dim:
        raise RadicalError(f"characteristic too small: need char 0 or p > {t.dim}")
    if not t.is_associative():
        raise RadicalError("multiplication table is not associative")
    j = _trace_radical_raw(t)
    if _verify:
        _verify_radical(t, j)
    return j


def _trace_radical_raw(t):
    field = t.field
    n = t.dim
    lmats = [t.left_mult_matrix(t.basis_vector(i)) for i in range(n)]
    gram = Matrix.zero(n, n, field)
    for a in range(n):
        la = lmats[a].data
        for b in range(a, n):
            lb = lmats[b].data
            s = field.zero
            for x in range(n):
                lax = la[x]
                for y in range(n):
                    if lax[y] and lb[y][x]:
                        s = field.add(s, field.mul(lax[y], lb[y][x]))
            gram.data[a][b] = s
            gram.data[b][a] = s
    return Subspace.from_vectors(kernel_basis(gram), n, field)


def _verify_radical(t, j):
    field = t.field
    n = t.dim
    # two-sided ideal
    for v in j.basis.data:
        for i in range(n):
            e = t.basis_vector(i)
            if not j.contains_vector(t.product_vec(e, v)):
                raise RadicalError("radical candidate is not a left ideal")
            if not j.contains_vector(t.product_vec(v, e)):
                raise RadicalError("radical candidate is not a right ideal")
    # nilpotent: J^dim = 0
    power = j
    for _ in range(n):
        if power.dim == 0:
            break
        power = t.subalgebra_product_span(power, j)
    if power.dim != 0:
        raise RadicalError("radical candidate is not nilpotent")
    # semisimple quotient
    if j.dim:
        quo, _, _ = t.quotient_by_ideal(j)
        if _trace_radical_raw(quo).dim != 0:
            raise RadicalError("quotient by radical candidate is not semisimple")
