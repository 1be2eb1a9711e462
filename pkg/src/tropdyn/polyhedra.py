"""Exact rational polyhedral geometry: cones, fans, cells, weighted complexes.

All combinatorics run over exact arithmetic (Python ints plus Fractions for
vertices), so tie decisions never depend on rounding.  V- and H-descriptions
are kept canonical: extreme rays are primitive and reduced modulo the
lineality space by orthogonal projection, lineality lattices are stored in
Hermite normal form, vertices are sorted Fractions.  Equal sets therefore
compare equal as tuples.

Conversions between descriptions use brute-force extreme-ray enumeration
(kernels of row subsets via signed maximal minors), exact and comfortably
fast for the ambient dimensions this engine supports (<= MAX_AMBIENT_DIM;
affine cells are homogenised one dimension higher internally).
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .lattice import (
    LatticeError,
    dot,
    integer_kernel,
    is_zero_vector,
    primitive,
    rank_int,
    saturate_and_complete,
    smith_normal_form,
    solve_rational,
    quotient_outward_generator,
    vec_neg,
    vec_sub,
)

MAX_AMBIENT_DIM = 4


class PolyhedralError(ValueError):
    """Raised on invalid polyhedral input (dimension caps, non-fans, ...)."""


# ---------------------------------------------------------------------------
# small exact kernels


def _det(rows):
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        total += (-1) ** j * rows[0][j] * _det(minor)
    return total


def _cross_kernel(rows, d):
    """Kernel direction of (d-1) x d integer rows via signed maximal minors.

    Returns None when the rows are rank-deficient (kernel not 1-dimensional).
    """
    v = []
    for i in range(d):
        minor = [row[:i] + row[i + 1:] for row in rows]
        v.append((-1) ** i * _det(minor))
    if all(x == 0 for x in v):
        return None
    return primitive(v)[0]


def hnf_basis(vectors):
    """Canonical (row-Hermite) basis of the integer lattice spanned by vectors."""
    mat = [list(v) for v in vectors if not is_zero_vector(v)]
    if not mat:
        return ()
    n = len(mat[0])
    pivot_row = 0
    for col in range(n):
        while True:
            nz = [i for i in range(pivot_row, len(mat)) if mat[i][col] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(mat[i][col]))
            mat[pivot_row], mat[i0] = mat[i0], mat[pivot_row]
            p = mat[pivot_row][col]
            for i in range(pivot_row + 1, len(mat)):
                if mat[i][col] != 0:
                    q = mat[i][col] // p
                    mat[i] = [a - q * b for a, b in zip(mat[i], mat[pivot_row])]
            if not any(mat[i][col] for i in range(pivot_row + 1, len(mat))):
                break
        if pivot_row < len(mat) and mat[pivot_row][col] != 0:
            if mat[pivot_row][col] < 0:
                mat[pivot_row] = [-a for a in mat[pivot_row]]
            pivot_row += 1
            if pivot_row == len(mat):
                break
    mat = [row for row in mat[:pivot_row]]
    pivots = []
    r = 0
    for col in range(n):
        if r < len(mat) and mat[r][col] != 0:
            pivots.append((r, col))
            r += 1
    for r, col in pivots:
        p = mat[r][col]
        for i in range(r):
            q = mat[i][col] // p
            if q:
                mat[i] = [a - q * b for a, b in zip(mat[i], mat[r])]
    return tuple(tuple(row) for row in mat)


def _project_off(v, lin):
    """Orthogonal projection of v onto the rational complement of span(lin)."""
    if not lin:
        return tuple(Fraction(x) for x in v)
    gram = [[dot(a, b) for b in lin] for a in lin]
    rhs = tuple(sum(Fraction(l[i]) * Fraction(v[i]) for i in range(len(v))) for l in lin)
    y = solve_rational(gram, rhs)
    return tuple(
        Fraction(v[i]) - sum(y[j] * lin[j][i] for j in range(len(lin)))
        for i in range(len(v))
    )


def _frac_primitive(v):
    """Primitive integer vector with the direction of a rational vector."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // math.gcd(den, Fraction(x).denominator)
    return primitive(tuple(int(Fraction(x) * den) for x in v))[0]


def _pointed_extreme_rays(rows, d):
    """Extreme rays of the pointed cone {y in R^d : r . y >= 0 for r in rows}."""
    if d == 0:
        return []
    if d == 1:
        vals = [r[0] for r in rows]
        out = []
        if all(v >= 0 for v in vals):
            out.append((1,))
        if all(v <= 0 for v in vals):
            out.append((-1,))
        return out
    found = {}
    for S in itertools.combinations(range(len(rows)), d - 1):
        v = _cross_kernel([rows[i] for i in S], d)
        if v is None or v in found or vec_neg(v) in found:
            continue
        prods = [dot(r, v) for r in rows]
        if all(p >= 0 for p in prods):
            found[v] = True
        elif all(p <= 0 for p in prods):
            found[vec_neg(v)] = True
    return sorted(found)


def _h_cone_generators(normals, dim):
    """Canonical extreme rays and lineality of {x : a . x >= 0 for a in normals}.

    With no normals the whole space comes back as pure lineality.  Rays are
    primitive and reduced modulo the lineality space; the lineality basis is
    in Hermite normal form.
    """
    seen = {}
    for a in normals:
        if not is_zero_vector(a):
            seen[primitive(a)[0]] = True
    normals = list(seen)
    if not normals:
        ident = tuple(tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim))
        return (), ident
    try:
        lin = integer_kernel(normals)
    except LatticeError:
        lin = ()
    lin = hnf_basis(lin)
    if lin:
        W = saturate_and_complete(lin).complement_basis
    else:
        W = tuple(tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim))
    d2 = len(W)
    if d2 == 0:
        return (), lin
    proj_rows = [tuple(dot(a, w) for w in W) for a in normals]
    rays2 = _pointed_extreme_rays(proj_rows, d2)
    rays = []
    for y in rays2:
        x = tuple(sum(y[j] * W[j][i] for j in range(d2)) for i in range(dim))
        rays.append(_frac_primitive(_project_off(x, lin)))
    return tuple(sorted(set(rays))), lin


def _vrep_dim(vertices, rays, lineality):
    if not vertices and not rays and not lineality:
        return -1
    vecs = list(rays) + list(lineality)
    if vertices:
        v0 = vertices[0]
        vecs += [vec_sub(v, v0) for v in vertices[1:]]
    if not vecs:
        return 0
    return rank_int(vecs)


def _vrep_relint(vertices, rays):
    n = len(vertices[0]) if vertices else len(rays[0])
    pt = [Fraction(0)] * n
    for v in vertices:
        for i in range(n):
            pt[i] += Fraction(v[i])
    k = len(vertices) if vertices else 1
    pt = [x / k for x in pt]
    for r in rays:
        for i in range(n):
            pt[i] += r[i]
    return tuple(pt)


def _vrep_direction_basis(vertices, rays, lineality):
    vecs = [tuple(r) for r in rays] + [tuple(l) for l in lineality]
    if vertices:
        v0 = vertices[0]
        for v in vertices[1:]:
            diff = vec_sub(v, v0)
            if not is_zero_vector(diff):
                vecs.append(_frac_primitive(diff))
    vecs = [v for v in vecs if not is_zero_vector(v)]
    if not vecs:
        return ()
    return saturate_and_complete(vecs).sublattice_basis


# ---------------------------------------------------------------------------
# cones and fans


class Cone:
    """Rational polyhedral cone with canonical generator and facet data."""

    def __init__(self, ambient_dim, rays, lineality, ineq_normals, eq_normals):
        self.ambient_dim = ambient_dim
        self.rays = rays
        self.lineality = lineality
        self.ineq_normals = ineq_normals
        self.eq_normals = eq_normals
        self.key = (ambient_dim, rays, lineality)
        self._dim = None
        self._facets = None

    @classmethod
    def from_generators(cls, generators, ambient_dim=None, lineality=()):
        gens = []
        for g in generators:
            g = tuple(int(x) for x in g)
            if not is_zero_vector(g):
                gens.append(primitive(g)[0])
        for l in lineality:
            l = tuple(int(x) for x in l)
            if not is_zero_vector(l):
                gens.append(primitive(l)[0])
                gens.append(primitive(vec_neg(l))[0])
        if ambient_dim is None:
            if not gens:
                raise PolyhedralError("ambient dimension required for the zero cone")
            ambient_dim = len(gens[0])
        if any(len(g) != ambient_dim for g in gens):
            raise PolyhedralError("mixed ambient dimensions")
        ineqs, eqs = _h_cone_generators(gens, ambient_dim)
        normals = list(ineqs) + list(eqs) + [vec_neg(e) for e in eqs]
        rays, lin = _h_cone_generators(normals, ambient_dim)
        return cls(ambient_dim, rays, lin, ineqs, eqs)

    @classmethod
    def from_constraints(cls, ineq_normals, eq_normals, ambient_dim):
        normals = list(ineq_normals) + list(eq_normals) + [vec_neg(e) for e in eq_normals]
        rays, lin = _h_cone_generators(normals, ambient_dim)
        return cls.from_generators(rays, ambient_dim, lineality=lin)

    @property
    def dim(self):
        if self._dim is None:
            vecs = list(self.rays) + list(self.lineality)
            self._dim = rank_int(vecs) if vecs else 0
        return self._dim

    @property
    def is_pointed(self):
        return not self.lineality

    def contains(self, v):
        return all(dot(e, v) == 0 for e in self.eq_normals) and all(
            dot(a, v) >= 0 for a in self.ineq_normals
        )

    def relint_point(self):
        n = self.ambient_dim
        pt = [0] * n
        for r in self.rays:
            for i in range(n):
                pt[i] += r[i]
        return tuple(pt)

    def facets(self):
        """Codimension-one faces; the rays of a facet are the inactive rays dropped."""
        if self._facets is None:
            out = {}
            for a in self.ineq_normals:
                sub = [r for r in self.rays if dot(a, r) == 0]
                f = Cone.from_generators(sub, self.ambient_dim, lineality=self.lineality)
                if f.dim == self.dim - 1:
                    out[f.key] = f
            self._facets = tuple(out.values())
        return self._facets

    def facet_keys(self):
        return {f.key for f in self.facets()}

    def faces(self):
        """All faces including the cone itself (and its minimal face)."""
        seen = {self.key: self}
        frontier = [self]
        while frontier:
            nxt = []
            for c in frontier:
                for f in c.facets():
                    if f.key not in seen:
                        seen[f.key] = f
                        nxt.append(f)
            frontier = nxt
        return sorted(seen.values(), key=lambda c: (-c.dim, c.key))

    def contains_cone(self, other):
        gens = list(other.rays) + list(other.lineality) + [vec_neg(l) for l in other.lineality]
        return all(self.contains(g) for g in gens)

    def __eq__(self, other):
        return isinstance(other, Cone) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"Cone(rays={list(self.rays)}, lineality={list(self.lineality)})"


def dual_description(generators, ambient_dim=None) -> Cone:
    """Cone spanned by the generators, with both descriptions computed.

    The inequality description has primitive integer normals; a line among the
    generators shows up as lineality plus an equation pair.
    """
    gens = [tuple(int(x) for x in g) for g in generators]
    if ambient_dim is None:
        if not gens:
            raise PolyhedralError("ambient dimension required")
        ambient_dim = len(gens[0])
    if ambient_dim > MAX_AMBIENT_DIM:
        raise PolyhedralError("ambient dimension unsupported")
    return Cone.from_generators(gens, ambient_dim)


class Fan:
    """Finite collection of cones closed under faces with face-compatible intersections.

    Only maximal cones are stored; faces are generated on demand.
    """

    def __init__(self, maximal_cones, ambient_dim, validate=True):
        self.ambient_dim = ambient_dim
        self.maximal_cones = tuple(sorted(maximal_cones, key=lambda c: c.key))
        if validate:
            self._validate()

    @classmethod
    def from_cones(cls, cones, ambient_dim=None, validate=True):
        cones = list(cones)
        if not cones:
            raise PolyhedralError("a fan needs at least one cone")
        if ambient_dim is None:
            ambient_dim = cones[0].ambient_dim
        if any(c.ambient_dim != ambient_dim for c in cones):
            raise PolyhedralError("mixed ambient dimensions")
        dedup = {c.key: c for c in cones}
        cones = list(dedup.values())
        maximal = [
            c
            for c in cones
            if not any(o is not c and o.contains_cone(c) for o in cones)
        ]
        return cls(maximal, ambient_dim, validate=validate)

    def _validate(self):
        for c1, c2 in itertools.combinations(self.maximal_cones, 2):
            inter = Cone.from_constraints(
                tuple(c1.ineq_normals) + tuple(c2.ineq_normals),
                tuple(c1.eq_normals) + tuple(c2.eq_normals),
                self.ambient_dim,
            )
            keys1 = {f.key for f in c1.faces()}
            keys2 = {f.key for f in c2.faces()}
            if inter.key not in keys1 or inter.key not in keys2:
                raise PolyhedralError("cones do not intersect in a common face")

    def all_cones(self):
        """Face closure, sorted by decreasing dimension then key."""
        seen = {}
        for c in self.maximal_cones:
            for f in c.faces():
                seen[f.key] = f
        return sorted(seen.values(), key=lambda c: (-c.dim, c.key))

    def cones_of_dim(self, d):
        return [c for c in self.all_cones() if c.dim == d]

    def support_contains(self, v):
        return any(c.contains(v) for c in self.maximal_cones)

    def __eq__(self, other):
        return (
            isinstance(other, Fan)
            and self.ambient_dim == other.ambient_dim
            and tuple(c.key for c in self.maximal_cones) == tuple(c.key for c in other.maximal_cones)
        )

    def __repr__(self):
        return f"Fan({len(self.maximal_cones)} maximal cones in R^{self.ambient_dim})"


def common_refinement(A: Fan, B: Fan) -> Fan:
    """Fan of all pairwise intersections; its support is |A| intersect |B|."""
    if A.ambient_dim != B.ambient_dim:
        raise PolyhedralError("mismatched ambient dimensions")
    if A.ambient_dim > MAX_AMBIENT_DIM:
        raise PolyhedralError("ambient dimension unsupported")
    pieces = []
    for c1 in A.maximal_cones:
        for c2 in B.maximal_cones:
            pieces.append(
                Cone.from_constraints(
                    tuple(c1.ineq_normals) + tuple(c2.ineq_normals),
                    tuple(c1.eq_normals) + tuple(c2.eq_normals),
                    A.ambient_dim,
                )
            )
    return Fan.from_cones(pieces, A.ambient_dim, validate=False)


def is_unimodular(x) -> bool:
    """Whether the cone's rays (or all cones of a fan) extend to a Z-basis."""
    if isinstance(x, Fan):
        return all(is_unimodular(c) for c in x.all_cones())
    if not isinstance(x, Cone):
        raise PolyhedralError("expected a Cone or Fan")
    if not x.is_pointed:
        raise PolyhedralError("unimodularity is defined for pointed cones")
    if not x.rays:
        return True
    snf = smith_normal_form(list(x.rays))
    factors = snf.invariant_factors
    return len(factors) == len(x.rays) and all(f == 1 for f in factors)


def is_complete(F: Fan) -> bool:
    """Support = R^n test via ridge pairing.

    A fan is complete iff it has a full-dimensional cone, every
    codimension-one cone is a facet of exactly two full-dimensional cones,
    and the full-dimensional cones are facet-connected.
    """
    n = F.ambient_dim
    if n > MAX_AMBIENT_DIM:
        raise PolyhedralError("ambient dimension unsupported")
    full = [c for c in F.maximal_cones if c.dim == n]
    if not full:
        return False
    owners = {}
    for idx, c in enumerate(full):
        for f in c.facets():
            owners.setdefault(f.key, []).append(idx)
    for c in F.all_cones():
        if c.dim == n - 1 and len(owners.get(c.key, ())) != 2:
            return False
    if any(len(v) != 2 for v in owners.values()):
        return False
    # facet connectivity
    adj = {i: set() for i in range(len(full))}
    for a, b in owners.values():
        adj[a].add(b)
        adj[b].add(a)
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for i in frontier:
            for j in adj[i]:
                if j not in seen:
                    seen.add(j)
                    nxt.append(j)
        frontier = nxt
    return len(seen) == len(full)


# ---------------------------------------------------------------------------
# general rational polyhedra (cells of weighted complexes)


class Polyhedron:
    """Rational polyhedron with canonical H- and V-descriptions.

    eqs and ineqs are (normal, rhs) pairs of integers meaning a.x = b and
    a.x >= b.  vertices are Fraction tuples; rays and lineality are primitive
    integer tuples, rays reduced modulo the lineality space.
    """

    def __init__(self, ambient_dim, eqs, ineqs, vertices, rays, lineality):
        self.ambient_dim = ambient_dim
        self.eqs = eqs
        self.ineqs = ineqs
        self.vertices = vertices
        self.rays = rays
        self.lineality = lineality
        self.key = (ambient_dim, vertices, rays, lineality)
        self._dim = None
        self._dirs = None
        self._faces = None

    # -- construction

    @staticmethod
    def _homogenize(a, b):
        """(a, b) with rational entries -> primitive integer row (a | -b)."""

        row = [Fraction(x) for x in a] + [-Fraction(b)]
        den = 1
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
        return primitive(tuple(int(x * den) for x in row))[0]

    @classmethod
    def from_constraints(cls, ambient_dim, eqs=(), ineqs=()):
        if ambient_dim > MAX_AMBIENT_DIM:
            raise PolyhedralError("ambient dimension unsupported")
        rows = []
        for a, b in eqs:
            r = cls._homogenize(a, b)
            rows.append(r)
            rows.append(vec_neg(r))
        for a, b in ineqs:
            rows.append(cls._homogenize(a, b))
        return cls._from_hrows(ambient_dim, rows)

    @classmethod
    def from_generators(cls, ambient_dim, vertices=(), rays=(), lineality=()):
        if ambient_dim > MAX_AMBIENT_DIM:
            raise PolyhedralError("ambient dimension unsupported")

        gens = []
        for v in vertices:
            row = [Fraction(x) for x in v] + [Fraction(1)]
            den = 1
            for x in row:
                den = den * x.denominator // math.gcd(den, x.denominator)
            gens.append(tuple(int(x * den) for x in row))
        for r in rays:
            gens.append(tuple(int(x) for x in r) + (0,))
        for l in lineality:
            row = tuple(int(x) for x in l) + (0,)
            gens.append(row)
            gens.append(vec_neg(row))
        if not gens:
            return cls._empty(ambient_dim)
        ineq_h, eq_h = _h_cone_generators(gens, ambient_dim + 1)
        rows = list(ineq_h) + list(eq_h) + [vec_neg(e) for e in eq_h]
        return cls._from_hrows(ambient_dim, rows)

    @classmethod
    def _empty(cls, ambient_dim):
        zero = tuple([0] * ambient_dim)
        return cls(ambient_dim, ((zero, 1),), (), (), (), ())

    @classmethod
    def _from_hrows(cls, n, rows):
        t_row = tuple([0] * n + [1])
        rays_h, lin_h = _h_cone_generators(list(rows) + [t_row], n + 1)
        vertices = []
        rec_rays = []
        for r in rays_h:
            if r[n] > 0:
                vertices.append(tuple(Fraction(x, r[n]) for x in r[:n]))
            elif r[n] == 0:
                rec_rays.append(r[:n])
            else:  # pragma: no cover - t >= 0 is enforced above
                raise PolyhedralError("negative homogenising coordinate")
        if not vertices:
            return cls._empty(n)
        lineality = []
        for l in lin_h:
            if l[n] != 0:
                raise PolyhedralError("unbounded homogenising coordinate")
            lineality.append(l[:n])
        lineality = hnf_basis(lineality)
        vertices = tuple(sorted(vertices))
        rec_rays = tuple(sorted(rec_rays))
        # canonical H-description from the canonical generators

        gens = []
        for v in vertices:
            row = list(v) + [Fraction(1)]
            den = 1
            for x in row:
                den = den * Fraction(x).denominator // math.gcd(den, Fraction(x).denominator)
            gens.append(tuple(int(Fraction(x) * den) for x in row))
        for r in rec_rays:
            gens.append(tuple(r) + (0,))
        for l in lineality:
            gens.append(tuple(l) + (0,))
            gens.append(vec_neg(tuple(l) + (0,)))
        ineq_h, eq_h = _h_cone_generators(gens, n + 1)
        eqs = []
        ineqs = []
        for a in ineq_h:
            head, c = a[:n], a[n]
            if is_zero_vector(head):
                continue  # the t >= 0 facet
            ineqs.append((head, -c))
        for a in eq_h:
            head, c = a[:n], a[n]
            if is_zero_vector(head):
                if c != 0:
                    raise PolyhedralError("inconsistent homogenisation")
                continue
            eqs.append((head, -c))
        return cls(n, tuple(sorted(eqs)), tuple(sorted(ineqs)), vertices, rec_rays, lineality)

    @classmethod
    def cone_cell(cls, rays, ambient_dim, lineality=()):
        """Cone through the origin as a cell (single zero vertex)."""
        zero = tuple([Fraction(0)] * ambient_dim)
        return cls.from_generators(ambient_dim, vertices=(zero,), rays=rays, lineality=lineality)

    @classmethod
    def from_cone(cls, cone: Cone):
        return cls.cone_cell(cone.rays, cone.ambient_dim, lineality=cone.lineality)

    # -- queries

    @property
    def is_empty(self):
        return not self.vertices

    @property
    def dim(self):
        if self._dim is None:
            self._dim = _vrep_dim(self.vertices, self.rays, self.lineality)
        return self._dim

    def direction_basis(self):
        """Saturated integer basis of the linear space parallel to aff(P)."""
        if self._dirs is None:
            self._dirs = _vrep_direction_basis(self.vertices, self.rays, self.lineality)
        return self._dirs

    def relint_point(self):
        if self.is_empty:
            raise PolyhedralError("empty polyhedron has no relative interior")
        return _vrep_relint(self.vertices, self.rays)

    def contains(self, x):
        return all(dot(a, x) == b for a, b in self.eqs) and all(
            dot(a, x) >= b for a, b in self.ineqs
        )

    def facet_data(self):
        """V-data (vertices, rays) of each codimension-one face, without building it."""
        out = {}
        p = self.dim
        for a, b in self.ineqs:
            verts = tuple(v for v in self.vertices if dot(a, v) == b)
            rays = tuple(r for r in self.rays if dot(a, r) == 0)
            if not verts:
                continue
            if _vrep_dim(verts, rays, self.lineality) != p - 1:
                continue
            out[(verts, rays, self.lineality)] = (verts, rays)
        return out

    def facets(self):
        return [
            Polyhedron.from_generators(self.ambient_dim, vertices=v, rays=r, lineality=self.lineality)
            for v, r in self.facet_data().values()
        ]

    def face_vkeys(self):
        """V-data keys of all faces (the polyhedron itself included)."""
        if self._faces is None:
            seen = {(self.vertices, self.rays, self.lineality)}
            frontier = [(self.vertices, self.rays)]
            while frontier:
                nxt = []
                for verts, rays in frontier:
                    sub = _face_data_of(verts, rays, self.lineality, self.ineqs)
                    for k, vr in sub.items():
                        if k not in seen:
                            seen.add(k)
                            nxt.append(vr)
                frontier = nxt
            self._faces = seen
        return self._faces

    def vkey(self):
        return (self.vertices, self.rays, self.lineality)

    def intersect(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise PolyhedralError("mixed ambient dimensions")
        return Polyhedron.from_constraints(
            self.ambient_dim,
            eqs=tuple(self.eqs) + tuple(other.eqs),
            ineqs=tuple(self.ineqs) + tuple(other.ineqs),
        )

    def __eq__(self, other):
        return isinstance(other, Polyhedron) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        if self.is_empty:
            return "Polyhedron(empty)"
        return (
            f"Polyhedron(vertices={list(self.vertices)}, rays={list(self.rays)},"
            f" lineality={list(self.lineality)})"
        )


def _face_data_of(vertices, rays, lineality, parent_ineqs):
    """Codim-one faces of a face given by active V-data, cut by the parent's inequalities."""
    out = {}
    p = _vrep_dim(vertices, rays, lineality)
    for a, b in parent_ineqs:
        verts = tuple(v for v in vertices if dot(a, v) == b)
        rs = tuple(r for r in rays if dot(a, r) == 0)
        if not verts or (verts, rs) == (vertices, rays):
            continue
        if _vrep_dim(verts, rs, lineality) != p - 1:
            continue
        out[(verts, rs, lineality)] = (verts, rs)
    return out


# ---------------------------------------------------------------------------
# weighted complexes and balancing


class WeightedComplex:
    """Pure-dimensional rational cells with nonzero integer weights.

    Only maximal cells are stored; codimension-one faces are generated on
    demand.  Cells must pairwise intersect in common faces.
    """

    def __init__(self, ambient_dim, dim, cells, validate=True):
        kept = []
        for cell, w in cells:
            w = int(w)
            if w == 0 or cell.is_empty:
                continue
            if cell.ambient_dim != ambient_dim:
                raise PolyhedralError("mixed ambient dimensions")
            if cell.dim != dim:
                raise PolyhedralError("complex is not pure-dimensional")
            kept.append((cell, w))
        kept.sort(key=lambda cw: cw[0].key)
        self.ambient_dim = ambient_dim
        self.dim = dim
        self.cells = tuple(kept)
        if validate:
            self._validate()

    @classmethod
    def from_cone_cells(cls, ambient_dim, dim, ray_weight_pairs, validate=True):
        cells = [
            (Polyhedron.cone_cell(rays, ambient_dim), w) for rays, w in ray_weight_pairs
        ]
        return cls(ambient_dim, dim, cells, validate=validate)

    def _validate(self):
        for (c1, _), (c2, _) in itertools.combinations(self.cells, 2):
            inter = c1.intersect(c2)
            if inter.is_empty:
                continue
            k = inter.vkey()
            if k not in c1.face_vkeys() or k not in c2.face_vkeys():
                raise PolyhedralError("cells do not intersect in a common face")

    @property
    def is_empty(self):
        return not self.cells

    def support_contains(self, x):
        return any(c.contains(x) for c, _ in self.cells)

    def scale(self, k):
        k = int(k)
        return WeightedComplex(
            self.ambient_dim, self.dim, [(c, k * w) for c, w in self.cells], validate=False
        )

    def __eq__(self, other):
        return (
            isinstance(other, WeightedComplex)
            and self.ambient_dim == other.ambient_dim
            and self.dim == other.dim
            and tuple((c.key, w) for c, w in self.cells)
            == tuple((c.key, w) for c, w in other.cells)
        )

    def __repr__(self):
        return f"WeightedComplex(dim={self.dim}, cells={len(self.cells)})"


class BalancingReport:
    """Outcome of the balancing check: balanced iff violations is empty."""

    def __init__(self, violations):
        self.violations = tuple(violations)
        self.balanced = not self.violations

    def __repr__(self):
        state = "balanced" if self.balanced else f"{len(self.violations)} violations"
        return f"BalancingReport({state})"


def check_balancing(C: WeightedComplex) -> BalancingReport:
    """Check sum_{sigma > tau} w_sigma u_{sigma/tau} = 0 in Z^n/(H_tau cap Z^n).

    Runs at every codimension-one cell tau of the complex; each violation
    carries tau and the residual class in quotient coordinates.
    """
    if not isinstance(C, WeightedComplex):
        raise PolyhedralError("expected a WeightedComplex")
    groups = {}
    for cell, w in C.cells:
        for k, (verts, rays) in cell.facet_data().items():
            groups.setdefault(k, []).append((cell, w, verts, rays))
    violations = []
    n = C.ambient_dim
    for (verts, rays, lin), incident in sorted(groups.items()):
        tau_dirs = _vrep_direction_basis(verts, rays, lin)
        tau_pt = _vrep_relint(verts, rays)
        total = [0] * n
        for cell, w, _, _ in incident:
            sample = vec_sub(cell.relint_point(), tau_pt)
            u = quotient_outward_generator(tau_dirs, cell.direction_basis(), sample)
            for i in range(n):
                total[i] += w * u[i]
        total = tuple(total)
        if tau_dirs:
            residual = saturate_and_complete(tau_dirs).quotient_coords(total)
        else:
            residual = total
        if any(residual):
            tau = Polyhedron.from_generators(n, vertices=verts, rays=rays, lineality=lin)
            violations.append((tau, residual))
    return BalancingReport(violations)


def _hull_key(cell: Polyhedron):
    """Canonical identifier of the affine hull: direction lattice + foot point."""
    dirs = hnf_basis(cell.direction_basis())
    foot = _project_off(cell.relint_point(), dirs) if dirs else cell.relint_point()
    return (dirs, tuple(Fraction(x) for x in foot))


def _split_cell(cell, halfspaces, p):
    """Refine a cell by halfspaces (a, b); keep the dimension-p fragments."""
    frags = [cell]
    for a, b in halfspaces:
        nxt = []
        for f in frags:
            vals = [dot(a, v) - b for v in f.vertices]
            dirvals = [dot(a, r) for r in f.rays] + [dot(a, l) for l in f.lineality] + [
                dot(a, vec_neg(l)) for l in f.lineality
            ]
            has_above = any(x > 0 for x in vals) or any(x > 0 for x in dirvals)
            has_below = any(x < 0 for x in vals) or any(x < 0 for x in dirvals)
            if not (has_above and has_below):
                nxt.append(f)
                continue
            for side in (1, -1):
                piece = Polyhedron.from_constraints(
                    f.ambient_dim,
                    eqs=f.eqs,
                    ineqs=tuple(f.ineqs) + ((tuple(side * x for x in a), side * b),),
                )
                if not piece.is_empty and piece.dim == p:
                    nxt.append(piece)
        frags = nxt
    return frags


def add_cycles(C1: WeightedComplex, C2: WeightedComplex) -> WeightedComplex:
    """Sum of weighted complexes on a common refinement of their supports."""
    if C1.ambient_dim != C2.ambient_dim:
        raise PolyhedralError("dimension mismatch")
    if not C1.is_empty and not C2.is_empty and C1.dim != C2.dim:
        raise PolyhedralError("dimension mismatch")
    if C1.is_empty:
        return C2
    if C2.is_empty:
        return C1
    n, p = C1.ambient_dim, C1.dim
    hulls1 = [(_hull_key(c), c, w) for c, w in C1.cells]
    hulls2 = [(_hull_key(c), c, w) for c, w in C2.cells]

    def cuts_for(cell_hull, others):
        cuts = []
        for hk, other, _ in others:
            if hk == cell_hull:
                cuts.extend(other.ineqs)
            else:
                for a, b in other.eqs:
                    cuts.append((a, b))
                    cuts.append((vec_neg(a), -b))
        return cuts

    out = []
    for hk, c1, w1 in hulls1:
        for frag in _split_cell(c1, cuts_for(hk, hulls2), p):
            pt = frag.relint_point()
            w = w1 + sum(w2 for hk2, c2, w2 in hulls2 if hk2 == hk and c2.contains(pt))
            out.append((frag, w))
    for hk, c2, w2 in hulls2:
        for frag in _split_cell(c2, cuts_for(hk, hulls1), p):
            pt = frag.relint_point()
            if any(hk1 == hk and c1.contains(pt) for hk1, c1, _ in hulls1):
                continue  # already counted from the C1 side
            out.append((frag, w2))
    return WeightedComplex(n, p, out)
