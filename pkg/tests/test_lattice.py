"""Scalar field and integer-lattice algebra, checked against brute force."""

import itertools
import math
import random
from fractions import Fraction

import pytest

from delzant import lattice
from delzant.errors import NotPrimitive, ZeroVector
from delzant.lattice import (
    GammaLattice,
    extend_to_basis,
    fm_witness,
    generates_full_lattice,
    hnf_basis,
    kernel_lattice,
    mat_det,
    mat_mul,
    mat_vec,
    primitive_part,
    row_hnf,
    scalar,
    solve_integer,
    transpose,
    unimodular_inverse,
)


# -- brute-force oracles -----------------------------------------------------


def brute_kernel_vectors(M, radius=2):
    """All kernel vectors with entries in [-radius, radius], by enumeration."""
    k = len(M[0])
    out = []
    for cand in itertools.product(range(-radius, radius + 1), repeat=k):
        if any(cand) and not any(mat_vec(M, cand)):
            out.append(cand)
    return out


def in_span(basis, v):
    """Exact membership of v in the integer span of the basis."""
    if not basis:
        return not any(v)
    sol, _, cert = solve_integer(transpose(basis), v)
    return cert is None


# -- scalars -----------------------------------------------------------------


class TestExactScalar:
    def test_field_axioms_random(self):
        rng = random.Random(7)
        for _ in range(200):
            D = rng.choice([1, 2, 3, 5])
            a = scalar(Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
                       Fraction(rng.randint(-9, 9), rng.randint(1, 9)), D)
            b = scalar(Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
                       Fraction(rng.randint(-9, 9), rng.randint(1, 9)), D)
            assert (a + b) - b == a
            assert a * b == b * a
            if b:
                assert (a / b) * b == a

    def test_trichotomy(self):
        rng = random.Random(11)
        for _ in range(300):
            D = rng.choice([2, 3, 5])
            a = scalar(Fraction(rng.randint(-8, 8), rng.randint(1, 5)),
                       Fraction(rng.randint(-8, 8), rng.randint(1, 5)), D)
            b = scalar(Fraction(rng.randint(-8, 8), rng.randint(1, 5)),
                       Fraction(rng.randint(-8, 8), rng.randint(1, 5)), D)
            assert (a < b) + (a == b) + (a > b) == 1

    def test_sign_vs_float(self):
        # high-precision numeric evaluation agrees with the exact sign
        rng = random.Random(3)
        for _ in range(1000):
            D = rng.choice([2, 3, 5, 7])
            a = scalar(Fraction(rng.randint(-50, 50), rng.randint(1, 20)),
                       Fraction(rng.randint(-50, 50), rng.randint(1, 20)), D)
            approx = float(a)
            if abs(approx) > 1e-9:
                assert a.sign() == (1 if approx > 0 else -1)
            else:
                assert (a.sign() == 0) == (a.rat == 0 and a.quad == 0)

    def test_collapse_to_rationals(self):
        assert scalar(1, 2, 1) == scalar(3)
        assert scalar(Fraction(1, 2), 0, 5).D == 1

    def test_mixed_fields_rejected(self):
        with pytest.raises(ValueError):
            scalar(1, 1, 2) + scalar(0, 1, 3)

    def test_non_squarefree_rejected(self):
        with pytest.raises(ValueError):
            scalar(1, 1, 12)

    def test_floor(self):
        assert math.floor(scalar(0, 1, 2)) == 1
        assert math.floor(scalar(0, -1, 2)) == -2
        assert math.floor(scalar(Fraction(7, 2))) == 3
        assert math.ceil(scalar(0, 1, 2)) == 2

    def test_string_roundtrip(self):
        from delzant.cli import parse_scalar

        for s in (scalar(Fraction(3, 4)), scalar(-2), scalar(1, Fraction(-1, 2), 2),
                  scalar(0, 1, 5)):
            assert parse_scalar(str(s), s.D) == s


# -- primitive vectors ---------------------------------------------------------


class TestPrimitivePart:
    def test_examples(self):
        assert primitive_part((2, 4, -6)) == ((1, 2, -3), 2)
        assert primitive_part((1, 0)) == ((1, 0), 1)
        # sign convention preserved: g * w == v
        w, g = primitive_part((-3, -6))
        assert (w, g) == ((-1, -2), 3)
        assert tuple(g * c for c in w) == (-3, -6)

    def test_zero_rejected(self):
        with pytest.raises(ZeroVector):
            primitive_part((0, 0))

    def test_idempotent(self):
        rng = random.Random(5)
        for _ in range(100):
            v = tuple(rng.randint(-20, 20) for _ in range(rng.randint(1, 4)))
            if not any(v):
                continue
            w, g = primitive_part(v)
            assert primitive_part(w) == (w, 1)
            assert tuple(g * c for c in w) == v


# -- Hermite forms and kernels --------------------------------------------------


class TestHermite:
    def test_row_hnf_properties(self):
        rng = random.Random(13)
        for _ in range(50):
            m, k = rng.randint(1, 4), rng.randint(1, 5)
            M = tuple(tuple(rng.randint(-4, 4) for _ in range(k)) for _ in range(m))
            H, U = row_hnf(M)
            assert mat_mul(U, M) == H
            assert mat_det(U) in (1, -1)

    def test_kernel_examples(self):
        # the three-facet simplex relation
        assert kernel_lattice(((1, 0, -1), (0, 1, -1))) == [(1, 1, 1)]
        assert kernel_lattice(((1, 0), (0, 1))) == []
        assert kernel_lattice(((1, 0, 1, 0), (0, 1, 0, 1))) == [
            (1, 0, -1, 0),
            (0, 1, 0, -1),
        ]

    def test_kernel_against_enumeration(self):
        rng = random.Random(17)
        for _ in range(60):
            m, k = rng.randint(1, 3), rng.randint(1, 4)
            M = tuple(tuple(rng.randint(-2, 2) for _ in range(k)) for _ in range(m))
            basis = kernel_lattice(M)
            for v in basis:
                assert not any(mat_vec(M, v))
                assert lattice.is_primitive(v)
            for v in brute_kernel_vectors(M):
                assert in_span(basis, v), (M, basis, v)

    def test_extend_to_basis(self):
        for v in ((1, 0), (2, 3), (1, 1, -1), (3, 5, 7), (0, 1, 0, 0)):
            B = extend_to_basis(v)
            assert mat_det(B) in (1, -1)
            assert tuple(row[0] for row in B) == v
            assert extend_to_basis(v) == B  # deterministic

    def test_extend_requires_primitive(self):
        with pytest.raises(NotPrimitive):
            extend_to_basis((2, 4))

    def test_generates_full_lattice(self):
        assert generates_full_lattice([(1, 0), (0, 1)])
        assert not generates_full_lattice([(2, 0), (0, 1)])
        assert generates_full_lattice([(1, 1), (1, -1), (0, 1)])


class TestSolveInteger:
    def test_solutions_and_kernels(self):
        rng = random.Random(23)
        for _ in range(120):
            m, k = rng.randint(1, 4), rng.randint(1, 4)
            M = tuple(tuple(rng.randint(-3, 3) for _ in range(k)) for _ in range(m))
            z = tuple(rng.randint(-3, 3) for _ in range(k))
            b = mat_vec(M, z)
            z0, kernel, cert = solve_integer(M, b)
            assert cert is None
            assert mat_vec(M, z0) == tuple(b)
            for kv in kernel:
                assert not any(mat_vec(M, kv))
            # the constructed solution is in the affine lattice
            assert in_span(kernel, tuple(a - c for a, c in zip(z, z0)))

    def test_certificates_verify(self):
        rng = random.Random(29)
        found = 0
        for _ in range(300):
            m, k = rng.randint(1, 3), rng.randint(1, 3)
            M = tuple(tuple(rng.randint(-3, 3) for _ in range(k)) for _ in range(m))
            b = tuple(rng.randint(-5, 5) for _ in range(m))
            z0, kernel, cert = solve_integer(M, b)
            if cert is not None:
                found += 1
                assert cert.verify()
            else:
                assert mat_vec(M, z0) == b
        assert found > 20

    def test_parity_system(self):
        z0, _, cert = solve_integer(((2,),), (3,))
        assert z0 is None and cert is not None and cert.verify()


class TestGammaLattice:
    def test_rational_lattices(self):
        g1 = GammaLattice([Fraction(3, 10), Fraction(6, 5)])
        g2 = GammaLattice([Fraction(3, 10)])
        assert g1 == g2
        assert g1.generator() == scalar(Fraction(3, 10))
        assert GammaLattice([1, 2, 3]) == GammaLattice([1])
        assert GammaLattice([2, 4]) != GammaLattice([1])

    def test_permutation_invariance(self):
        rng = random.Random(31)
        for _ in range(50):
            gens = [Fraction(rng.randint(0, 10), rng.randint(1, 6)) for _ in range(4)]
            shuffled = list(gens)
            rng.shuffle(shuffled)
            assert GammaLattice(gens) == GammaLattice(shuffled)

    def test_quadratic_lattices(self):
        a = GammaLattice([scalar(0, 1, 2), scalar(1)])
        b = GammaLattice([scalar(1), scalar(1, 1, 2)])
        assert a == b and a.rank == 2
        c = GammaLattice([scalar(0, 1, 2), scalar(0, 2, 2)])
        assert c.rank == 1 and c.generator() == scalar(0, 1, 2)
        assert a != c

    def test_contains(self):
        g = GammaLattice([Fraction(3, 10)])
        assert g.contains(Fraction(9, 10))
        assert not g.contains(Fraction(1, 10))
        h = GammaLattice([scalar(1, 1, 2)])
        assert h.contains(scalar(2, 2, 2))
        assert not h.contains(scalar(1))

    def test_invariant_under_recombination(self):
        # integer row operations on the generators fix the subgroup
        rng = random.Random(107)
        for _ in range(40):
            D = rng.choice([1, 2, 5])
            gens = [
                scalar(Fraction(rng.randint(-6, 6), rng.randint(1, 4)),
                       Fraction(rng.randint(-6, 6), rng.randint(1, 4)), D)
                for _ in range(3)
            ]
            mixed = list(gens)
            for _ in range(6):
                i, j = rng.randrange(3), rng.randrange(3)
                k = rng.randint(-2, 2)
                if i != j:
                    mixed[i] = mixed[i] + k * mixed[j]
            assert GammaLattice(gens) == GammaLattice(mixed + gens)


class TestFourierMotzkin:
    def test_square(self):
        cons = [((1, 0), 1, True), ((0, 1), 1, True), ((-1, 0), 1, True),
                ((0, -1), 1, True)]
        w = fm_witness(cons, 2)
        assert w is not None
        for coeffs, const, _ in cons:
            assert (lattice.dot(coeffs, w) + const).sign() > 0

    def test_strip_and_empty(self):
        assert fm_witness([((0, 1), 1, True), ((0, -1), 1, True)], 2) is not None
        assert fm_witness([((1,), 0, True), ((-1,), 0, True)], 1) is None
        # closed degenerate point is feasible weakly, not strictly
        assert fm_witness([((1,), 0, False), ((-1,), 0, False)], 1) is not None
        assert fm_witness([((1,), 0, True), ((-1,), 0, False)], 1) is None

    def test_unbounded_witness(self):
        w = fm_witness([((1, 0), -10, True), ((0, 1), 1, True), ((0, -1), 1, True)], 2)
        assert w is not None and w[0] > 10


def test_unimodular_inverse():
    rng = random.Random(37)
    count = 0
    while count < 30:
        n = rng.randint(1, 4)
        M = tuple(tuple(rng.randint(-3, 3) for _ in range(n)) for _ in range(n))
        if mat_det(M) not in (1, -1):
            continue
        count += 1
        assert mat_mul(M, unimodular_inverse(M)) == lattice.identity(n)


def test_hnf_canonical_for_equal_lattices():
    rng = random.Random(41)
    for _ in range(40):
        n = rng.randint(2, 4)
        vecs = [tuple(rng.randint(-3, 3) for _ in range(n)) for _ in range(n)]
        basis = hnf_basis(vecs)
        # applying a random unimodular recombination does not change the form
        mixed = list(vecs)
        for _ in range(5):
            i, j = rng.randrange(len(mixed)), rng.randrange(len(mixed))
            k = rng.randint(-2, 2)
            if i != j:
                mixed[i] = tuple(a + k * b for a, b in zip(mixed[i], mixed[j]))
        assert hnf_basis(mixed + vecs) == basis
