"""Exact integer-lattice linear algebra.

Everything here works over arbitrary-precision Python ints (and Fractions for
the few rational solves), so determinants and lattice indices never overflow.
Vectors are tuples of ints; matrices are tuples of row tuples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

IntVector = tuple[int, ...]
IntMatrix = tuple[IntVector, ...]


class LatticeError(ValueError):
    """Raised on invalid lattice-level input (zero vectors, non-faces, ...)."""


def _as_int_vector(v) -> IntVector:
    return tuple(int(c) for c in v)


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(k, a):
    return tuple(k * x for x in a)


def vec_neg(a):
    return tuple(-x for x in a)


def is_zero_vector(v) -> bool:
    return all(x == 0 for x in v)


def primitive(v) -> tuple[IntVector, int]:
    """Write ``v = length * prim`` with gcd(prim) = 1 and length >= 1.

    The primitive vector keeps the direction of ``v``.  Raises LatticeError on
    the zero vector, which has no direction.
    """
    v = _as_int_vector(v)
    g = 0
    for c in v:
        g = math.gcd(g, c)
    if g == 0:
        raise LatticeError("no primitive direction")
    return tuple(c // g for c in v), g


def _identity(n) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class SmithDecomposition:
    """U * M * V = D with U, V unimodular and D diagonal, d_i | d_{i+1} >= 0."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix
    V_inv: IntMatrix

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        k = min(len(self.D), len(self.D[0]) if self.D else 0)
        return tuple(self.D[i][i] for i in range(k) if self.D[i][i] != 0)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def smith_normal_form(M) -> SmithDecomposition:
    """Smith normal form by elementary row/column reduction.

    Pivots on the minimal nonzero absolute value, which keeps intermediate
    entries small for the n <= 8 matrices this engine sees.
    """
    A = [list(_as_int_vector(row)) for row in M]
    r = len(A)
    c = len(A[0]) if r else 0
    if any(len(row) != c for row in A):
        raise LatticeError("ragged matrix")
    U, Ui = _identity(r), _identity(r)
    V, Vi = _identity(c), _identity(c)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for row in Ui:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, k):
        # row dst += k * row src
        A[dst] = [x + k * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]
        for row in Ui:
            row[src] -= k * row[dst]

    def add_col(dst, src, k):
        for row in A:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]
        Vi[src] = [x - k * y for x, y in zip(Vi[src], Vi[dst])]

    def negate_row(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]
        for row in Ui:
            row[i] = -row[i]

    t = 0
    while t < min(r, c):
        pivot = None
        for i in range(t, r):
            for j in range(t, c):
                if A[i][j] != 0 and (pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        if pivot[0] != t:
            swap_rows(t, pivot[0])
        if pivot[1] != t:
            swap_cols(t, pivot[1])
        while True:
            col = [i for i in range(t + 1, r) if A[i][t] != 0]
            if col:
                i0 = min([t] + col, key=lambda i: abs(A[i][t]))
                if i0 != t:
                    swap_rows(t, i0)
                for i in range(t + 1, r):
                    if A[i][t] != 0:
                        add_row(i, t, -(A[i][t] // A[t][t]))
                if any(A[i][t] for i in range(t + 1, r)):
                    continue
            row = [j for j in range(t + 1, c) if A[t][j] != 0]
            if row:
                j0 = min([t] + row, key=lambda j: abs(A[t][j]))
                if j0 != t:
                    swap_cols(t, j0)
                for j in range(t + 1, c):
                    if A[t][j] != 0:
                        add_col(j, t, -(A[t][j] // A[t][t]))
                if any(A[t][j] for j in range(t + 1, c)):
                    continue
            if not any(A[i][t] for i in range(t + 1, r)) and not any(
                A[t][j] for j in range(t + 1, c)
            ):
                # divisibility fix-up: the pivot must divide the whole block
                bad = None
                for i in range(t + 1, r):
                    for j in range(t + 1, c):
                        if A[i][j] % A[t][t] != 0:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                add_row(t, bad, 1)
        if A[t][t] < 0:
            negate_row(t)
        t += 1

    freeze = lambda m: tuple(tuple(row) for row in m)
    return SmithDecomposition(freeze(U), freeze(A), freeze(V), freeze(Ui), freeze(Vi))


@dataclass(frozen=True)
class QuotientLattice:
    """Z^n = (H cap Z^n) + complement, presenting Z^n / (H cap Z^n).

    ``sublattice_basis`` is a saturated basis of H cap Z^n (so the quotient is
    torsion-free) and together with ``complement_basis`` it forms a Z-basis of
    Z^n (determinant +-1).
    """

    ambient_dim: int
    sublattice_basis: tuple[IntVector, ...]
    complement_basis: tuple[IntVector, ...]

    @property
    def rank(self) -> int:
        return len(self.sublattice_basis)

    @property
    def quotient_rank(self) -> int:
        return len(self.complement_basis)

    def quotient_coords(self, v) -> IntVector:
        """Coordinates of the class of ``v`` in Z^n/(H cap Z^n)."""
        v = _as_int_vector(v)
        basis = list(self.sublattice_basis) + list(self.complement_basis)
        coeffs = solve_rational([list(col) for col in zip(*basis)], v)
        out = []
        for x in coeffs[self.rank:]:
            if x.denominator != 1:
                raise LatticeError("vector not integral in the chosen basis")
            out.append(int(x))
        return tuple(out)


def saturate_and_complete(spanning) -> QuotientLattice:
    """Saturated basis of span(spanning) cap Z^n plus a complement to Z^n.

    Rank-deficient inputs are silently reduced to their rank.  The assembled
    n x n matrix of (sublattice basis, complement basis) has determinant +-1.
    """
    vecs = [_as_int_vector(v) for v in spanning]
    if not vecs or all(is_zero_vector(v) for v in vecs):
        raise LatticeError("need at least one nonzero spanning vector")
    n = len(vecs[0])
    if any(len(v) != n for v in vecs):
        raise LatticeError("mixed ambient dimensions")
    # columns of M are the spanning vectors; U M V = D means M = U^-1 D V^-1,
    # so the first rank columns of U^-1 span the saturation and the rest
    # complete it to a Z-basis.
    M = [[v[i] for v in vecs] for i in range(n)]
    snf = smith_normal_form(M)
    rank = snf.rank
    cols = [tuple(snf.U_inv[i][j] for i in range(n)) for j in range(n)]
    return QuotientLattice(n, tuple(cols[:rank]), tuple(cols[rank:]))


def integer_kernel(rows) -> tuple[IntVector, ...]:
    """Saturated basis of {x in Z^n : A x = 0} for A with the given rows."""
    rows = [_as_int_vector(r) for r in rows]
    rows = [r for r in rows if not is_zero_vector(r)]
    if not rows:
        raise LatticeError("kernel of an empty system is everything; handle upstream")
    n = len(rows[0])
    snf = smith_normal_form(rows)
    rank = snf.rank
    # A x = 0 iff x lies in the span of the last n-rank columns of V
    return tuple(tuple(snf.V[i][j] for i in range(n)) for j in range(rank, n))


def rank_int(rows) -> int:
    """Rank over Q of an integer (or Fraction) matrix, by exact elimination."""
    mat = [list(map(Fraction, r)) for r in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(mat)) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = mat[rank][col]
        for i in range(len(mat)):
            if i != rank and mat[i][col] != 0:
                f = mat[i][col] / inv
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[rank])]
        rank += 1
        if rank == len(mat):
            break
    return rank


def solve_rational(columns, target) -> tuple[Fraction, ...]:
    """Solve sum_j x_j * columns[j] = target exactly; unique solution required.

    ``columns`` is given as a matrix whose rows are coordinates (column-major
    input: columns[i][j] = i-th coordinate of the j-th basis vector).
    """
    nrows = len(columns)
    ncols = len(columns[0]) if nrows else 0
    aug = [[Fraction(columns[i][j]) for j in range(ncols)] + [Fraction(target[i])] for i in range(nrows)]
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, nrows) if aug[i][col] != 0), None)
        if piv is None:
            continue
        aug[rank], aug[piv] = aug[piv], aug[rank]
        inv = aug[rank][col]
        aug[rank] = [a / inv for a in aug[rank]]
        for i in range(nrows):
            if i != rank and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[rank])]
        pivots.append(col)
        rank += 1
    if any(aug[i][ncols] != 0 for i in range(rank, nrows)):
        raise LatticeError("inconsistent linear system")
    sol = [Fraction(0)] * ncols
    for row, col in enumerate(pivots):
        sol[col] = aug[row][ncols]
    return tuple(sol)


def quotient_outward_generator(tau_basis, sigma_basis, direction_sample) -> IntVector:
    """Representative generating (Z^n cap H_sigma)/(Z^n cap H_tau), signed.

    ``tau_basis``/``sigma_basis`` are saturated integer bases of the direction
    spaces, with rank(sigma) = rank(tau) + 1.  ``direction_sample`` is any
    rational vector in H_sigma minus H_tau pointing to the sigma side (for
    cells: relint(sigma) - relint(tau)); the returned vector pairs positively
    with a functional vanishing on H_tau that is positive on that sample.
    """
    sigma_basis = [_as_int_vector(b) for b in sigma_basis]
    tau_basis = [_as_int_vector(b) for b in tau_basis]
    p = len(sigma_basis)
    if p != len(tau_basis) + 1:
        raise LatticeError("sigma must have direction rank one more than tau")
    n = len(sigma_basis[0])
    if p == 1:
        u = sigma_basis[0]
    else:
        cols = [list(col) for col in zip(*sigma_basis)]
        coords = []
        for b in tau_basis:
            x = solve_rational(cols, b)
            if any(c.denominator != 1 for c in x):
                raise LatticeError("tau lattice not contained in sigma lattice")
            coords.append(tuple(int(c) for c in x))
        ql = saturate_and_complete(coords)
        if ql.quotient_rank != 1:
            raise LatticeError("tau is not of codimension one in sigma")
        comp = ql.complement_basis[0]
        u = tuple(sum(comp[j] * sigma_basis[j][i] for j in range(p)) for i in range(n))
    # orient: pick a functional vanishing on H_tau and not on u
    if tau_basis:
        functionals = integer_kernel(tau_basis)
    else:
        functionals = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    ell = next((f for f in functionals if dot(f, u) != 0), None)
    if ell is None:
        raise LatticeError("degenerate quotient: u lies in H_tau")
    side = sum(Fraction(ell[i]) * Fraction(direction_sample[i]) for i in range(n))
    if side == 0:
        raise LatticeError("direction sample lies in H_tau")
    if (dot(ell, u) > 0) != (side > 0):
        u = vec_neg(u)
    return u


def outward_generator(tau, sigma) -> IntVector:
    """Outward generator u_{sigma/tau} for a codimension-one face tau of sigma.

    ``tau`` and ``sigma`` are cones (any objects exposing ``rays``,
    ``lineality``, ``dim``, ``relint_point()`` and ``facet_keys()``/``key`` as
    the polyhedra module's Cone does).  The class of the returned integer
    vector generates (Z^n cap H_sigma)/(Z^n cap H_tau) and points from H_tau
    into sigma.
    """
    if tau.dim != sigma.dim - 1:
        raise LatticeError("tau is not a codimension-one face of sigma")
    if tau.key not in sigma.facet_keys():
        raise LatticeError("tau is not a face of sigma")
    sigma_dirs = list(sigma.rays) + list(sigma.lineality)
    tau_dirs = list(tau.rays) + list(tau.lineality)
    sigma_basis = saturate_and_complete(sigma_dirs).sublattice_basis
    tau_basis = saturate_and_complete(tau_dirs).sublattice_basis if tau_dirs else ()
    sample = vec_sub(sigma.relint_point(), tau.relint_point())
    return quotient_outward_generator(tau_basis, sigma_basis, sample)
