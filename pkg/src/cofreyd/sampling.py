"""Seeded deterministic generators for property suites.

Everything is driven by an explicit random.Random instance so that a fixed
seed reproduces every sampled object bit for bit.
"""
from __future__ import annotations

import random

from .linalg import Matrix
from .comodule import Comodule, ComoduleMap, direct_sum, hom_space, _is_invertible
from .freyd import FreydObject, FreydMap, square_space


def rng_from_seed(seed):
    return random.Random(seed)


def rand_scalar(field, rng, small=3):
    if field.char == 0:
        return field.of(rng.randint(-small, small))
    return field.of(rng.randrange(field.char))


def rand_invertible(n, field, rng, tries=64):
    if n == 0:
        return Matrix.zero(0, 0, field)
    for _ in range(tries):
        m = Matrix(n, n, [[rand_scalar(field, rng) for _ in range(n)] for _ in range(n)], field)
        if _is_invertible(m):
            return m
    return Matrix.identity(n, field)


def conjugate_comodule(m, p, name=None):
    """Transport the coaction along an invertible change of basis."""
    from .comodule import inverse_matrix
    field = m.field
    pinv = inverse_matrix(p)
    coaction = {}
    n = m.parent.dim
    slices = m.slices()
    for k in range(n):
        a = p.mul(slices[k]).mul(pinv)
        for t in range(m.dim):
            for s in range(m.dim):
                if a.data[t][s]:
                    coaction[(s, t, k)] = a.data[t][s]
    return Comodule(m.side, m.dim, coaction, m.parent, name=name or (m.name or "M") + "~")


def rand_comodule(family, rng, max_summands=2, conjugate=True, max_dim=6):
    """A direct sum of 1..max_summands family members in a scrambled basis."""
    k = rng.randint(1, max_summands)
    parts = []
    dim = 0
    for _ in range(k):
        m = family[rng.randrange(len(family))]
        if dim + m.dim > max_dim and parts:
            break
        parts.append(m)
        dim += m.dim
    s = direct_sum(parts) if len(parts) > 1 else parts[0]
    if not conjugate or s.dim == 0:
        return s
    p = rand_invertible(s.dim, s.field, rng)
    return conjugate_comodule(s, p)


def rand_hom(m, n, rng):
    basis = hom_space(m, n)
    field = m.field
    mat = Matrix.zero(n.dim, m.dim, field)
    for h in basis:
        c = rand_scalar(field, rng)
        if c:
            mat = mat.add(h.matrix.scale(c))
    return ComoduleMap(m, n, mat, _trusted=True)


def rand_freyd_object(family, rng, flavor="B", max_summands=2):
    m = rand_comodule(family, rng, max_summands=max_summands)
    n = rand_comodule(family, rng, max_summands=max_summands)
    return FreydObject(rand_hom(m, n, rng), flavor=flavor)


def rand_square(source, target, rng):
    """A random morphism in the square space (may be zero)."""
    basis = square_space(source, target)
    field = source.m.field
    f = Matrix.zero(target.m.dim, source.m.dim, field)
    g = Matrix.zero(target.n.dim, source.n.dim, field)
    for sq in basis:
        c = rand_scalar(field, rng)
        if c:
            f = f.add(sq.f.matrix.scale(c))
            g = g.add(sq.g.matrix.scale(c))
    return FreydMap(source, target,
                    ComoduleMap(source.m, target.m, f, _trusted=True),
                    ComoduleMap(source.n, target.n, g, _trusted=True), _trusted=True)
