"""Holonomy groups of orbit graphs and the ambient monodromy solver.

Holonomy generators come from probe involutions composed around cycles of
an orbit graph (plus midpoint self-loops); closure is enumerated up to a
cap since infinite groups occur.  The ambient solver sets up the integer
constraints a Hamiltonian diffeomorphism imposes on the canonical disk
basis: distinguished classes permute, columns have Maslov index two, disk
areas transform to disk areas, and the second homology is fixed.  Integer
infeasibility is certified exactly; when the solution lattice is nonempty
the remaining determinant condition is decided exactly in the affine case
and by bounded enumeration otherwise.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import lattice
from .errors import BaseNotInGraph, DimensionMismatch, NotReductionType
from .lattice import ExactScalar
from .orbit import OrbitGraph
from .polytope import DelzantPolytope


@dataclass(frozen=True)
class MatrixGroup:
    generators: tuple
    elements: tuple          # closure, complete iff not truncated
    truncated: bool
    cap: int

    @property
    def order(self) -> Optional[int]:
        return None if self.truncated else len(self.elements)

    def to_json(self):
        return {
            "generators": [[list(r) for r in g] for g in self.generators],
            "elements": [[list(r) for r in g] for g in self.elements],
            "truncated": self.truncated,
            "cap": self.cap,
        }


def mulclose(generators, cap: int) -> MatrixGroup:
    """Close a set of +-1-determinant integer matrices under products."""
    gens = []
    for g in generators:
        g = tuple(tuple(int(c) for c in row) for row in g)
        if g not in gens:
            gens.append(g)
    n = len(gens[0]) if gens else 0
    ident = lattice.identity(n) if n else ()
    seed = set(gens) | {ident} | {lattice.unimodular_inverse(g) for g in gens}
    elements = set(seed)
    frontier = list(seed)
    truncated = False
    while frontier and not truncated:
        new = []
        for a in gens:
            for b in frontier:
                c = lattice.mat_mul(a, b)
                if c not in elements:
                    elements.add(c)
                    new.append(c)
                    if len(elements) >= cap:
                        truncated = True
                        break
            if truncated:
                break
        frontier = new
    # listed elements stay inverse-closed even when truncated
    for g in list(elements):
        elements.add(lattice.unimodular_inverse(g))
    return MatrixGroup(
        tuple(sorted(gens)), tuple(sorted(elements)), truncated, cap
    )


def holonomy_group(graph: OrbitGraph, base, cap: int = 256) -> MatrixGroup:
    """The subgroup of Aut H_1 generated by probe transports around cycles.

    Builds a spanning tree of the orbit graph from the base point; each
    non-tree edge (self-loops included) contributes the transport product
    around its fundamental cycle.
    """
    from .polytope import as_point

    base = as_point(base)
    node_set = set(graph.nodes)
    if base not in node_set:
        raise BaseNotInGraph(f"base point is not a stored node of the graph")
    n = len(base)
    adjacency = {}
    selfloops = []
    for move in graph.edges:
        if move.source == move.target:
            selfloops.append(move)
            continue
        adjacency.setdefault(move.source, []).append(move)
        adjacency.setdefault(move.target, []).append(move.reversed())
    transport = {base: lattice.identity(n)}
    tree_edges = set()
    order = [base]
    queue = [base]
    while queue:
        u = queue.pop(0)
        for move in adjacency.get(u, []):
            v = move.target
            if v not in transport:
                transport[v] = lattice.mat_mul(move.transport, transport[u])
                tree_edges.add(_edge_key(move))
                order.append(v)
                queue.append(v)
    generators = []
    for move in graph.edges:
        if move.source == move.target:
            u = move.source
            if u not in transport:
                continue
            p = transport[u]
            g = lattice.mat_mul(
                lattice.unimodular_inverse(p), lattice.mat_mul(move.transport, p)
            )
            generators.append(g)
        elif _edge_key(move) not in tree_edges:
            if move.source not in transport or move.target not in transport:
                continue
            g = lattice.mat_mul(
                lattice.unimodular_inverse(transport[move.target]),
                lattice.mat_mul(move.transport, transport[move.source]),
            )
            generators.append(g)
    ident = lattice.identity(n)
    generators = [g for g in generators if g != ident]
    if not generators:
        return MatrixGroup((), (ident,), False, cap)
    return mulclose(generators, cap)


def _edge_key(move):
    a, b = sorted([move.source, move.target])
    return (a, b, move.probe.direction, move.probe.entry_facet, move.probe.exit_facet)


# ---------------------------------------------------------------------------
# Ambient monodromy constraints.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AmbientSolution:
    A: tuple          # N x N integer matrix, columns = images of the disk basis
    induced: tuple    # n x n map on H_1
    perm: tuple       # pairs (i, pi(i)) on the distinguished indices

    def to_json(self):
        return {
            "A": [list(r) for r in self.A],
            "induced": [list(r) for r in self.induced],
            "perm": [list(p) for p in self.perm],
        }


@dataclass(frozen=True)
class AmbientOutcome:
    kind: str                 # "solutions" | "infeasible" | "inconclusive"
    solutions: tuple = ()
    certificates: tuple = ()  # one entry per distinguished bijection
    bound: int = 0

    def to_json(self):
        return {
            "kind": self.kind,
            "bound": self.bound,
            "solutions": [s.to_json() for s in self.solutions],
            "certificates": [
                c.to_json() if hasattr(c, "to_json") else c
                for c in self.certificates
            ],
        }


# sparse multivariate integer polynomials: {sorted var tuple: coeff}

def _poly_add(p, q):
    out = dict(p)
    for k, c in q.items():
        c2 = out.get(k, 0) + c
        if c2:
            out[k] = c2
        elif k in out:
            del out[k]
    return out


def _poly_mul(p, q):
    out = {}
    for k1, c1 in p.items():
        for k2, c2 in q.items():
            k = tuple(sorted(k1 + k2))
            c = out.get(k, 0) + c1 * c2
            if c:
                out[k] = c
            elif k in out:
                del out[k]
    return out


def _poly_det(M):
    n = len(M)
    if n == 0:
        return {(): 1}
    if n == 1:
        return dict(M[0][0])
    out = {}
    for j in range(n):
        if not M[0][j]:
            continue
        minor = [
            [M[r][c] for c in range(n) if c != j] for r in range(1, n)
        ]
        term = _poly_mul(M[0][j], _poly_det(minor))
        if j % 2:
            term = {k: -c for k, c in term.items()}
        out = _poly_add(out, term)
    return out


def _poly_eval(p, t):
    total = 0
    for mono, c in p.items():
        v = c
        for var in mono:
            v *= t[var]
        total += v
    return total


def solve_ambient(poly: DelzantPolytope, x, y, bound: int) -> AmbientOutcome:
    """Integer matrices realizing the ambient monodromy constraints x -> y.

    For every bijection of distinguished indices the remaining entries form
    an integer affine system (Maslov rows, area rows split over {1, sqrt D},
    fixed second homology).  The answer is a list of solutions (free lattice
    parameters enumerated in [-bound, bound], invertibility filtered), an
    exact infeasibility certificate, or "inconclusive" when only the
    nonlinear determinant condition is left undecided within the bound.
    """
    if not poly.normals_span():
        raise NotReductionType("facet normals do not span R^n")
    x = poly._require_interior(x)
    y = poly._require_interior(y)
    N = poly.nfacets
    n = poly.dim
    lx, ly = poly.ell(x), poly.ell(y)
    dx, dy = min(lx), min(ly)
    I_x = [i for i, v in enumerate(lx) if v == dx]
    I_y = [i for i, v in enumerate(ly) if v == dy]
    if dx != dy or len(I_x) != len(I_y):
        return AmbientOutcome(
            "infeasible",
            certificates=(
                {
                    "kind": "invariants",
                    "d": [str(dx), str(dy)],
                    "count": [len(I_x), len(I_y)],
                },
            ),
            bound=bound,
        )
    xi = lattice.transpose(tuple(f.normal for f in poly.facets))  # n x N
    _, h2 = poly.boundary_data()
    det_S, J, S_inv = _induced_frame(xi, n, N)
    free = [i for i in range(N) if i not in I_x]
    f = len(free)
    solutions = []
    certificates = []
    inconclusive = False
    for images in itertools.permutations(I_y):
        perm = tuple(zip(I_x, images))
        fixed_cols = {i: j for i, j in perm}
        rows, rhs = _ambient_system(poly, lx, ly, h2, free, fixed_cols, N)
        z0, kernel, cert = lattice.solve_integer(rows, rhs) if rows else (
            (0,) * (f * N), [tuple(lattice.identity(f * N)[i]) for i in range(f * N)],
            None,
        )
        if cert is not None:
            certificates.append({"kind": "linear", "perm": perm, **cert.to_json()})
            continue
        if x == y and all(i == j for i, j in perm):
            # recenter on the identity so t = 0 always recovers it
            z0 = tuple(
                1 if j == free[s] else 0
                for s in range(f)
                for j in range(N)
            )
            assert all(
                lattice.dot(row, z0) == b for row, b in zip(rows, rhs)
            ), "the identity must solve its own constraint system"
        # determinant condition det(induced) = +-1, i.e. det B(t) = +-det S
        B0, Bk = _induced_blocks(xi, J, z0, kernel, free, fixed_cols, N, n)
        detpoly = _poly_det(
            [
                [
                    _poly_add(
                        {(): B0[r][c]} if B0[r][c] else {},
                        {
                            (k,): Bk[k][r][c]
                            for k in range(len(Bk))
                            if Bk[k][r][c]
                        },
                    )
                    for c in range(n)
                ]
                for r in range(n)
            ]
        )
        degree = max((len(m) for m in detpoly), default=0)
        found = []
        box = (2 * bound + 1) ** len(kernel)
        if box <= 200_000:
            for t in itertools.product(range(-bound, bound + 1), repeat=len(kernel)):
                if _poly_eval(detpoly, t) in (det_S, -det_S):
                    A = _assemble(z0, kernel, t, free, fixed_cols, N)
                    induced = _induced_matrix(xi, A, J, S_inv, n)
                    if induced is not None:
                        found.append(AmbientSolution(A, induced, perm))
        elif _poly_eval(detpoly, (0,) * len(kernel)) in (det_S, -det_S):
            # the box is too large to sweep; still report the centre point
            A = _assemble(z0, kernel, (0,) * len(kernel), free, fixed_cols, N)
            induced = _induced_matrix(xi, A, J, S_inv, n)
            if induced is not None:
                found.append(AmbientSolution(A, induced, perm))
        if found:
            solutions.extend(found)
            continue
        if degree <= 1:
            g0 = detpoly.get((), 0)
            gs = [detpoly.get((k,), 0) for k in range(len(kernel))]
            gcd_all = 0
            for g in gs:
                gcd_all = math.gcd(gcd_all, abs(g))
            solvable = False
            for c in (det_S, -det_S):
                if gcd_all == 0:
                    solvable = solvable or (g0 == c)
                else:
                    solvable = solvable or ((c - g0) % gcd_all == 0)
            if not solvable:
                certificates.append(
                    {
                        "kind": "determinant",
                        "perm": perm,
                        "det_affine": {"const": g0, "coeffs": gs},
                        "targets": [det_S, -det_S],
                        "gcd": gcd_all,
                    }
                )
                continue
        inconclusive = True
    if solutions:
        solutions.sort(key=lambda s: s.A)
        return AmbientOutcome("solutions", tuple(solutions), tuple(certificates), bound)
    if inconclusive:
        return AmbientOutcome("inconclusive", (), tuple(certificates), bound)
    return AmbientOutcome("infeasible", (), tuple(certificates), bound)


def _scale_to_int(coeff_rows, rhs_fracs):
    """Clear denominators row by row, returning integer rows."""
    out_rows, out_rhs = [], []
    for row, b in zip(coeff_rows, rhs_fracs):
        den = b.denominator
        for c in row:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in row]
        bi = int(b * den)
        if any(ints) or bi:
            out_rows.append(tuple(ints))
            out_rhs.append(bi)
    return out_rows, out_rhs


def _ambient_system(poly, lx, ly, h2, free, fixed_cols, N):
    """Integer rows/rhs of the affine system in the free column entries."""
    f = len(free)
    slot = {i: s for s, i in enumerate(free)}
    coeff_rows, rhs = [], []

    def var(i, j):
        return slot[i] * N + j

    for i in free:
        row = [Fraction(0)] * (f * N)
        for j in range(N):
            row[var(i, j)] = Fraction(1)
        coeff_rows.append(row)
        rhs.append(Fraction(1))
        for part in ("rat", "quad"):
            row = [Fraction(0)] * (f * N)
            for j in range(N):
                row[var(i, j)] = getattr(ly[j], part)
            coeff_rows.append(row)
            rhs.append(getattr(lx[i], part))
    for r in h2:
        for j in range(N):
            row = [Fraction(0)] * (f * N)
            for i in free:
                if r[i]:
                    row[var(i, j)] = Fraction(r[i])
            fixed_part = sum(r[i] for i, tgt in fixed_cols.items() if tgt == j)
            coeff_rows.append(row)
            rhs.append(Fraction(r[j] - fixed_part))
    return _scale_to_int(coeff_rows, rhs)


def _assemble(z0, kernel, t, free, fixed_cols, N):
    z = list(z0)
    for coeff, k in zip(t, kernel):
        z = [a + coeff * b for a, b in zip(z, k)]
    A = [[0] * N for _ in range(N)]
    for i, tgt in fixed_cols.items():
        A[tgt][i] = 1
    for s, i in enumerate(free):
        for j in range(N):
            A[j][i] = z[s * N + j]
    return tuple(map(tuple, A))


def _induced_frame(xi, n, N):
    """A column subset J of the normal matrix with invertible n x n block."""
    for J in itertools.combinations(range(N), n):
        S = tuple(tuple(xi[r][c] for c in J) for r in range(n))
        d = lattice.mat_det(S)
        if d != 0:
            return d, J, lattice.field_inverse(S)
    raise NotReductionType("facet normals do not span R^n")


def _induced_blocks(xi, J, z0, kernel, free, fixed_cols, N, n):
    """(Xi * A)[:, J] as an affine family B0 + sum t_k Bk."""

    def block(A):
        XA = lattice.mat_mul(xi, A)
        return tuple(tuple(XA[r][c] for c in J) for r in range(n))

    B0 = block(_assemble(z0, kernel, (0,) * len(kernel), free, fixed_cols, N))
    Bk = []
    for k in kernel:
        Ak = [[0] * N for _ in range(N)]
        for s, i in enumerate(free):
            for j in range(N):
                Ak[j][i] = k[s * N + j]
        Bk.append(block(tuple(map(tuple, Ak))))
    return B0, Bk


def _induced_matrix(xi, A, J, S_inv, n):
    """The induced n x n map on H_1, or None when it is not integral."""
    XA = lattice.mat_mul(xi, A)
    B = tuple(tuple(Fraction(XA[r][c]) for c in J) for r in range(n))
    ind = lattice.mat_mul(B, S_inv)
    out = []
    for row in ind:
        ints = []
        for v in row:
            v = Fraction(v)
            if v.denominator != 1:
                return None
            ints.append(int(v))
        out.append(tuple(ints))
    # consistency on all columns (A must preserve the kernel of Xi)
    if lattice.mat_mul(out, xi) != XA:
        return None
    return tuple(out)


@dataclass(frozen=True)
class AmbientReport:
    distinguished: bool
    maslov: bool
    area: bool
    h2: bool
    induced: Optional[tuple]

    @property
    def all_pass(self):
        return self.distinguished and self.maslov and self.area and self.h2

    def to_json(self):
        return {
            "distinguished": self.distinguished,
            "maslov": self.maslov,
            "area": self.area,
            "h2": self.h2,
            "induced": None if self.induced is None else [list(r) for r in self.induced],
            "all_pass": self.all_pass,
        }


def check_ambient(poly: DelzantPolytope, x, y, A) -> AmbientReport:
    """Evaluate the four ambient constraints independently for a given A."""
    A = tuple(tuple(int(c) for c in row) for row in A)
    N = poly.nfacets
    if len(A) != N or any(len(r) != N for r in A):
        raise DimensionMismatch(f"expected a {N}x{N} matrix")
    x = poly._require_interior(x)
    y = poly._require_interior(y)
    lx, ly = poly.ell(x), poly.ell(y)
    dx, dy = min(lx), min(ly)
    I_x = {i for i, v in enumerate(lx) if v == dx}
    I_y = {i for i, v in enumerate(ly) if v == dy}
    cols = lattice.transpose(A)
    images = set()
    distinguished = True
    for i in I_x:
        col = cols[i]
        ones = [j for j, c in enumerate(col) if c != 0]
        if len(ones) == 1 and col[ones[0]] == 1 and ones[0] in I_y:
            images.add(ones[0])
        else:
            distinguished = False
    distinguished = distinguished and images == I_y
    maslov = all(sum(col) == 1 for col in cols)
    area = all(
        sum((ly[j] * A[j][i] for j in range(N)), ExactScalar.of(0)) == lx[i]
        for i in range(N)
    )
    _, h2 = poly.boundary_data()
    h2_ok = all(lattice.mat_vec(A, r) == tuple(r) for r in h2)
    induced = None
    if poly.normals_span():
        xi = lattice.transpose(tuple(f.normal for f in poly.facets))
        _, J, S_inv = _induced_frame(xi, poly.dim, N)
        induced = _induced_matrix(xi, A, J, S_inv, poly.dim)
    return AmbientReport(distinguished, maslov, area, h2_ok, induced)
