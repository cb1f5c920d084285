"""Exact arithmetic over Q(sqrt(D)) and integer-lattice linear algebra.

Scalars are elements a + b*sqrt(D) with a, b rational and D a fixed
square-free integer (D = 1 collapses to plain Q).  All comparisons are
decided exactly; no floating point enters any computation.  Integer
vectors and matrices are plain tuples; the normal-form routines
(Hermite-style column echelon, Smith-style diagonalization) return the
unimodular transforms needed for kernels, basis extension and integer
linear solving.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DimensionMismatch, NotPrimitive, RankNotOne, ZeroVector


def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return True


_ZERO_FRACTION = Fraction(0)
_VALID_DISCS = {1}


class ExactScalar:
    """An element of Q(sqrt(D)) with exact total order.

    Invariants: fractions in lowest terms (guaranteed by Fraction),
    quad == 0 forces D == 1, so equal numbers have equal representations
    and hash consistently.
    """

    __slots__ = ("rat", "quad", "D", "_hash")

    def __init__(self, rat=0, quad=0, D=1):
        if type(rat) is not Fraction:
            rat = Fraction(rat)
        if type(quad) is not Fraction:
            quad = Fraction(quad)
        if D not in _VALID_DISCS:
            if D == 0:
                quad, D = _ZERO_FRACTION, 1
            elif not is_squarefree(D):
                raise ValueError(
                    f"field discriminant must be square-free, got {D}"
                )
            else:
                _VALID_DISCS.add(D)
        if D == 1:
            # sqrt(1) = 1: fold into the rational part
            if quad:
                rat, quad = rat + quad, _ZERO_FRACTION
        elif not quad:
            D = 1
        self.rat = rat
        self.quad = quad
        self.D = D
        self._hash = None

    # -- coercion ----------------------------------------------------------

    @staticmethod
    def of(value) -> "ExactScalar":
        if type(value) is ExactScalar:
            return value
        return ExactScalar(Fraction(value))

    def _pair(self, other):
        other = ExactScalar.of(other)
        if self.D == 1 or other.D == 1 or self.D == other.D:
            return other, max(self.D, other.D) if 1 in (self.D, other.D) else self.D
        raise ValueError(f"mixed quadratic fields sqrt({self.D}) and sqrt({other.D})")

    # -- field operations ----------------------------------------------------

    def __add__(self, other):
        o, D = self._pair(other)
        return ExactScalar(self.rat + o.rat, self.quad + o.quad, D)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar(-self.rat, -self.quad, self.D)

    def __sub__(self, other):
        return self + (-ExactScalar.of(other))

    def __rsub__(self, other):
        return ExactScalar.of(other) + (-self)

    def __mul__(self, other):
        o, D = self._pair(other)
        if not self.quad and not o.quad:
            return ExactScalar(self.rat * o.rat)
        return ExactScalar(
            self.rat * o.rat + self.quad * o.quad * D,
            self.rat * o.quad + self.quad * o.rat,
            D,
        )

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        if self.rat == 0 and self.quad == 0:
            raise ZeroDivisionError("division by zero scalar")
        # (a + b sqrt D)^-1 = (a - b sqrt D) / (a^2 - b^2 D); the norm is
        # nonzero because D is square-free.
        norm = self.rat * self.rat - self.quad * self.quad * self.D
        return ExactScalar(self.rat / norm, -self.quad / norm, self.D)

    def __truediv__(self, other):
        return self * ExactScalar.of(other).inverse()

    def __rtruediv__(self, other):
        return ExactScalar.of(other) * self.inverse()

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- order ---------------------------------------------------------------

    def sign(self) -> int:
        a, b = self.rat, self.quad
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if (a > 0) == (b > 0):
            return 1 if a > 0 else -1
        # Opposite signs: |a| vs |b| sqrt(D) decided by squaring.
        t = a * a - b * b * self.D
        assert t != 0, "square-free D cannot make a + b*sqrt(D) vanish"
        s = 1 if t > 0 else -1
        return s if a > 0 else -s

    def _cmp(self, other):
        return (self - other).sign()

    def __eq__(self, other):
        if isinstance(other, (ExactScalar, int, Fraction)):
            o = ExactScalar.of(other)
            return self.rat == o.rat and self.quad == o.quad and self.D == o.D
        return NotImplemented

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rat, self.quad, self.D))
        return self._hash

    def __bool__(self):
        return self.rat != 0 or self.quad != 0

    # -- conversions -----------------------------------------------------------

    def __float__(self):
        return float(self.rat) + float(self.quad) * math.sqrt(self.D)

    def __floor__(self):
        if self.quad == 0:
            return math.floor(self.rat)
        n = math.floor(float(self))
        while (self - n).sign() < 0:
            n -= 1
        while (self - (n + 1)).sign() >= 0:
            n += 1
        return n

    def __ceil__(self):
        return -math.floor(-self)

    def __str__(self):
        if self.quad == 0:
            return str(self.rat)
        sign = "+" if self.quad > 0 else "-"
        return f"{self.rat}{sign}{abs(self.quad)}√{self.D}"

    def __repr__(self):
        return f"ExactScalar({self})"


ZERO = ExactScalar(0)
ONE = ExactScalar(1)


def scalar(rat, quad=0, D=1) -> ExactScalar:
    """Convenience constructor, accepting ints, Fractions or '1/2' strings."""
    return ExactScalar(Fraction(rat), Fraction(quad), D)


# ---------------------------------------------------------------------------
# Integer vectors and matrices (plain tuples; rows for matrices).
# ---------------------------------------------------------------------------


def dot(u, v):
    if len(u) != len(v):
        raise DimensionMismatch(f"dot of lengths {len(u)} and {len(v)}")
    if not u:
        return 0
    total = u[0] * v[0]
    for a, b in zip(u[1:], v[1:]):
        total = total + a * b
    return total


def mat_vec(M, v):
    return tuple(dot(row, v) for row in M)


def mat_mul(A, B):
    Bt = transpose(B)
    return tuple(tuple(dot(row, col) for col in Bt) for row in A)


def transpose(M):
    return tuple(zip(*M)) if M else ()


def identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_det(M) -> int:
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(M)
    if n == 0:
        return 1
    a = [list(row) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def unimodular_inverse(M):
    """Exact inverse of an integer matrix with det +-1."""
    n = len(M)
    d = mat_det(M)
    if d not in (1, -1):
        from .errors import NotUnimodular

        raise NotUnimodular(f"determinant {d}")
    inv = field_inverse(tuple(tuple(Fraction(x) for x in row) for row in M))
    return tuple(tuple(int(x) for x in row) for row in inv)


def primitive_part(v):
    """Split v = g*w with w primitive, g = gcd of the entries (g > 0)."""
    if not any(v):
        raise ZeroVector("primitive part of the zero vector")
    g = 0
    for x in v:
        g = math.gcd(g, abs(x))
    return tuple(x // g for x in v), g


def is_primitive(v) -> bool:
    return any(v) and primitive_part(v)[1] == 1


def _exgcd(a: int, b: int):
    """(g, p, q) with p*a + q*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def row_hnf(M):
    """Row echelon Hermite form.

    Returns (H, U) with U unimodular, U*M = H, pivots positive and the
    entries above each pivot reduced into [0, pivot).
    """
    m = len(M)
    k = len(M[0]) if m else 0
    H = [list(row) for row in M]
    U = [list(row) for row in identity(m)]
    pr = 0
    for c in range(k):
        piv = None
        for r in range(pr, m):
            if H[r][c] != 0:
                piv = r
                break
        if piv is None:
            continue
        if piv != pr:
            H[pr], H[piv] = H[piv], H[pr]
            U[pr], U[piv] = U[piv], U[pr]
        for r in range(pr + 1, m):
            if H[r][c] == 0:
                continue
            g, p, q = _exgcd(H[pr][c], H[r][c])
            x, y = H[pr][c] // g, H[r][c] // g
            H[pr], H[r] = (
                [p * a + q * b for a, b in zip(H[pr], H[r])],
                [-y * a + x * b for a, b in zip(H[pr], H[r])],
            )
            U[pr], U[r] = (
                [p * a + q * b for a, b in zip(U[pr], U[r])],
                [-y * a + x * b for a, b in zip(U[pr], U[r])],
            )
        if H[pr][c] < 0:
            H[pr] = [-a for a in H[pr]]
            U[pr] = [-a for a in U[pr]]
        for r in range(pr):
            q = H[r][c] // H[pr][c]
            if q:
                H[r] = [a - q * b for a, b in zip(H[r], H[pr])]
                U[r] = [a - q * b for a, b in zip(U[r], U[pr])]
        pr += 1
        if pr == m:
            break
    return tuple(map(tuple, H)), tuple(map(tuple, U))


def column_hnf(M):
    """Column-style Hermite form: (H, U) with M*U = H lower echelon,
    positive pivots, entries left of a pivot reduced mod the pivot."""
    Ht, Ut = row_hnf(transpose(M))
    return transpose(Ht), transpose(Ut)


def hnf_basis(vectors):
    """Canonical ordered basis of the lattice generated by the vectors.

    Columns of the column Hermite form with zero columns dropped; used as
    the one canonical form for lattice dedup and equality everywhere.
    """
    vecs = [v for v in vectors if any(v)]
    if not vecs:
        return []
    M = transpose(tuple(vecs))  # vectors as columns
    H, _ = column_hnf(M)
    cols = transpose(H)
    return [c for c in cols if any(c)]


def kernel_lattice(M):
    """Basis of the integer kernel {r : M r = 0}, HNF-canonical order."""
    if not M or not M[0]:
        n = len(M[0]) if M else 0
        return [tuple(identity(n)[i]) for i in range(n)]
    H, U = column_hnf(M)
    cols = transpose(H)
    ker = [u for u, h in zip(transpose(U), cols) if not any(h)]
    return hnf_basis(ker)


def extend_to_basis(v):
    """A unimodular matrix whose first column is the primitive vector v."""
    if not is_primitive(v):
        raise NotPrimitive(f"{v} is not primitive")
    col = tuple((x,) for x in v)
    H, U = row_hnf(col)
    assert H[0][0] == 1
    B = unimodular_inverse(U)
    assert tuple(row[0] for row in B) == tuple(v)
    return B


def generates_full_lattice(vectors) -> bool:
    """True iff the vectors generate all of Z^n."""
    vectors = list(vectors)
    if not vectors:
        return False
    n = len(vectors[0])
    if any(len(v) != n for v in vectors):
        raise DimensionMismatch("vectors of differing lengths")
    basis = hnf_basis(vectors)
    return basis == [tuple(identity(n)[i]) for i in range(n)]


class IntegerInfeasible:
    """Certificate that M z = b has no integer solution.

    Carries a rational row vector u with u*M integral but u*b not an
    integer; checking those two facts verifies the certificate.
    """

    def __init__(self, u, M, b):
        self.u = tuple(u)
        self.M = M
        self.b = tuple(b)

    def verify(self) -> bool:
        uM = [sum(ui * self.M[i][j] for i, ui in enumerate(self.u))
              for j in range(len(self.M[0]))] if self.M and self.M[0] else []
        ub = sum(ui * bi for ui, bi in zip(self.u, self.b))
        return all(x.denominator == 1 for x in map(Fraction, uM)) and Fraction(
            ub
        ).denominator != 1

    def to_json(self):
        return {"witness": [str(Fraction(x)) for x in self.u]}


def solve_integer(M, b):
    """All integer solutions of M z = b.

    Returns (z0, kernel_basis, None) on success, where the solution set is
    z0 + Z-span(kernel_basis), or (None, kernel_basis, certificate) when no
    integer solution exists.  Works on the column Hermite form M*U = H: the
    echelon system H w = b has a unique rational solution on pivot
    coordinates, and divisibility failures translate into certificate
    functionals because U is unimodular.
    """
    m = len(M)
    k = len(M[0]) if m else 0
    if len(b) != m:
        raise DimensionMismatch("rhs length does not match row count")
    if m == 0 or k == 0:
        kernel = [tuple(identity(k)[i]) for i in range(k)]
        if any(b):
            r = next(i for i, v in enumerate(b) if v)
            u = tuple(Fraction(int(i == r), 2 * b[r]) for i in range(m))
            return None, kernel, IntegerInfeasible(u, M, b)
        return (0,) * k, kernel, None
    H, U = column_hnf(M)
    cols = transpose(H)
    kernel = [tuple(u) for u, h in zip(transpose(U), cols) if not any(h)]
    pivots = []  # (row, column), increasing in both
    for j, col in enumerate(cols):
        r = next((i for i, v in enumerate(col) if v), None)
        if r is not None:
            pivots.append((r, j))
    w = [0] * k
    funcs = {}  # column -> functional in Q^m computing w_j from the rhs
    for r, j in pivots:
        p = H[r][j]
        val = Fraction(b[r])
        func = [Fraction(0)] * m
        func[r] = Fraction(1)
        for r2, j2 in pivots:
            if j2 >= j:
                break
            h = H[r][j2]
            if h:
                val -= h * w[j2]
                func = [a - h * c for a, c in zip(func, funcs[j2])]
        val = val / p
        funcs[j] = tuple(f / p for f in func)
        if val.denominator != 1:
            return None, kernel, IntegerInfeasible(funcs[j], M, b)
        w[j] = int(val)
    pivot_rows = {r for r, _ in pivots}
    for r in range(m):
        if r in pivot_rows:
            continue
        residual = Fraction(b[r]) - sum(
            Fraction(H[r][j] * w[j]) for _, j in pivots
        )
        if residual:
            psi = [Fraction(0)] * m
            psi[r] = Fraction(1)
            for _, j in pivots:
                if H[r][j]:
                    psi = [a - H[r][j] * c for a, c in zip(psi, funcs[j])]
            u = tuple(a / (2 * residual) for a in psi)
            return None, kernel, IntegerInfeasible(u, M, b)
    z0 = tuple(sum(U[row][j] * w[j] for j in range(k)) for row in range(k))
    return z0, kernel, None


# ---------------------------------------------------------------------------
# Linear algebra over the scalar field (Gaussian elimination).
# ---------------------------------------------------------------------------


def field_solve(A, b):
    """Solve the square system A x = b over the scalar field.

    Entries may be ints, Fractions or ExactScalars.  Returns None when A is
    singular.
    """
    n = len(A)
    M = [[ExactScalar.of(x) for x in row] + [ExactScalar.of(b[i])]
         for i, row in enumerate(A)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if M[r][col]:
                piv = r
                break
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        inv = M[col][col].inverse()
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return tuple(M[i][n] for i in range(n))


def field_inverse(A):
    """Inverse of a square matrix over Fractions (raises on singular)."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        M[col], M[piv] = M[piv], M[col]
        f = M[col][col]
        M[col] = [x / f for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                g = M[r][col]
                M[r] = [x - g * y for x, y in zip(M[r], M[col])]
    return tuple(tuple(row[n:]) for row in M)


# ---------------------------------------------------------------------------
# Finitely generated subgroups of Q(sqrt(D)) as lattices in Q^2.
# ---------------------------------------------------------------------------


class GammaLattice:
    """The subgroup of R generated by finitely many scalars.

    Viewed as a lattice in Q^2 over the basis {1, sqrt(D)} and stored in
    the canonical form (den, basis): basis is the integer column HNF of
    den * G and gcd(den, entries) = 1, so equal subgroups compare equal.
    """

    __slots__ = ("den", "basis", "D")

    def __init__(self, generators):
        gens = [ExactScalar.of(g) for g in generators]
        D = 1
        for g in gens:
            if g.D != 1:
                if D != 1 and g.D != D:
                    raise ValueError("mixed quadratic fields in one subgroup")
                D = g.D
        self.D = D
        den = 1
        for g in gens:
            den = den * g.rat.denominator // math.gcd(den, g.rat.denominator)
            den = den * g.quad.denominator // math.gcd(den, g.quad.denominator)
        vecs = [(int(g.rat * den), int(g.quad * den)) for g in gens]
        basis = hnf_basis(vecs)
        g = den
        for v in basis:
            for x in v:
                g = math.gcd(g, abs(x))
        if basis and g > 1:
            den //= g
            basis = [tuple(x // g for x in v) for v in basis]
        if not basis:
            den = 1
        self.den = den
        self.basis = tuple(basis)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __eq__(self, other):
        if not isinstance(other, GammaLattice):
            return NotImplemented
        return (self.den, self.basis, self.D if self.basis else 1) == (
            other.den,
            other.basis,
            other.D if other.basis else 1,
        )

    def __hash__(self):
        return hash((self.den, self.basis))

    def contains(self, value) -> bool:
        v = ExactScalar.of(value)
        if v.D != 1 and self.D != 1 and v.D != self.D:
            return False
        a = Fraction(v.rat) * self.den
        b = Fraction(v.quad) * self.den
        if a.denominator != 1 or b.denominator != 1:
            return False
        target = (int(a), int(b))
        sol, _, cert = solve_integer(transpose(self.basis) if self.basis else ((),),
                                     target) if self.basis else (None, None, None)
        if not self.basis:
            return target == (0, 0)
        return cert is None and sol is not None

    def generator(self) -> ExactScalar:
        """Positive generator in the rank-one case."""
        if self.rank != 1:
            raise RankNotOne(f"lattice has rank {self.rank}")
        a, b = self.basis[0]
        g = ExactScalar(Fraction(a, self.den), Fraction(b, self.den), self.D)
        return abs(g)

    def scalars(self):
        return [
            ExactScalar(Fraction(a, self.den), Fraction(b, self.den), self.D)
            for a, b in self.basis
        ]

    def to_json(self):
        return {"den": self.den, "basis": [list(v) for v in self.basis], "D": self.D}

    def __repr__(self):
        gens = ", ".join(str(s) for s in self.scalars()) or "0"
        return f"GammaLattice<{gens}>"


# ---------------------------------------------------------------------------
# Strict/weak linear feasibility by Fourier-Motzkin elimination.
# ---------------------------------------------------------------------------


def fm_witness(constraints, nvars):
    """A point satisfying all constraints, or None.

    Each constraint is (coeffs, const, strict) and states
    sum(coeffs[i] * x[i]) + const >= 0 (or > 0 when strict).  Handles
    unbounded directions and lineality exactly; used for interior
    nonemptiness and face membership at desk scale.
    """
    rows = [
        (tuple(ExactScalar.of(c) for c in coeffs), ExactScalar.of(const), strict)
        for coeffs, const, strict in constraints
    ]
    levels = []
    for var in range(nvars - 1, -1, -1):
        lowers, uppers, rest = [], [], []
        for coeffs, const, strict in rows:
            c = coeffs[var]
            head = coeffs[:var]
            if c.sign() > 0:
                lowers.append((head, const, c, strict))
            elif c.sign() < 0:
                uppers.append((head, const, c, strict))
            else:
                rest.append((head, const, strict))
        levels.append((var, lowers, uppers))
        for lh, lc, lcoef, ls in lowers:
            for uh, uc, ucoef, us in uppers:
                # x >= -(lh.x + lc)/lcoef and x <= -(uh.x + uc)/ucoef combine.
                coeffs = tuple(
                    a * (-ucoef) + b * lcoef for a, b in zip(lh, uh)
                )
                const = lc * (-ucoef) + uc * lcoef
                rest.append((coeffs, const, ls or us))
        rows = rest
    for _, const, strict in rows:
        s = const.sign()
        if s < 0 or (strict and s == 0):
            return None
    point = [ZERO] * nvars
    for var, lowers, uppers in reversed(levels):
        lo = None
        lo_strict = False
        for head, const, coef, strict in lowers:
            val = -(dot(head, point[:var]) + const) / coef
            if lo is None or val > lo or (val == lo and strict):
                lo, lo_strict = val, strict
        hi = None
        hi_strict = False
        for head, const, coef, strict in uppers:
            val = -(dot(head, point[:var]) + const) / coef
            if hi is None or val < hi or (val == hi and strict):
                hi, hi_strict = val, strict
        if lo is not None and hi is not None:
            point[var] = (lo + hi) / 2 if lo != hi else lo
        elif lo is not None:
            point[var] = lo + 1
        elif hi is not None:
            point[var] = hi - 1
        else:
            point[var] = ZERO
    return tuple(point)
