"""Symmetric probes: construction, partner points and monodromy involutions.

A probe is an oriented segment through the polytope whose two endpoints
hit facet interiors with pairing +1 (entry) and -1 (exit) against the
primitive direction.  Orientation is fixed at construction, so the
involution I + (xi' - xi) v^T is well defined.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import lattice
from .errors import (
    HitsLowerFace,
    NotOnProbe,
    NotPrimitive,
    NotTransverse,
    UnboundedRay,
)
from .lattice import ExactScalar
from .polytope import DelzantPolytope, as_point, point_str


@dataclass(frozen=True)
class SymmetricProbe:
    direction: tuple        # primitive v, points from entry facet to exit facet
    entry_facet: int
    exit_facet: int
    entry_point: tuple      # on the entry facet interior
    length: ExactScalar     # integral affine length T
    entry_normal: tuple     # xi  (pairing <v, xi>  = +1)
    exit_normal: tuple      # xi' (pairing <v, xi'> = -1)

    @property
    def exit_point(self):
        return tuple(p + self.length * c for p, c in zip(self.entry_point, self.direction))

    def at(self, t):
        """The point entry + t * v."""
        t = ExactScalar.of(t)
        return tuple(p + t * c for p, c in zip(self.entry_point, self.direction))

    @property
    def midpoint(self):
        return self.at(self.length / 2)

    def to_json(self):
        return {
            "direction": list(self.direction),
            "entry_facet": self.entry_facet,
            "exit_facet": self.exit_facet,
            "entry_point": [str(c) for c in self.entry_point],
            "length": str(self.length),
        }


def shoot(poly: DelzantPolytope, x, v) -> SymmetricProbe:
    """The symmetric probe through the interior point x in direction v.

    Walks the ray both ways: the first facet hit must be unique (else the
    endpoint lies on a lower-dimensional face) and must pair to +-1 with v
    (integral transversality).
    """
    x = poly._require_interior(x)
    v = tuple(int(c) for c in v)
    if not lattice.is_primitive(v):
        raise NotPrimitive(f"direction {v} is not primitive")
    values = poly.ell(x)

    def first_hit(forward: bool):
        best_t = None
        best = []
        for i, f in enumerate(poly.facets):
            pairing = lattice.dot(v, f.normal)
            p = pairing if not forward else -pairing
            if p <= 0:
                continue
            t = values[i] / p
            if best_t is None or t < best_t:
                best_t, best = t, [i]
            elif t == best_t:
                best.append(i)
        if best_t is None:
            side = "+v" if forward else "-v"
            raise UnboundedRay(f"ray {side} from {point_str(x)} never exits")
        if len(best) > 1:
            raise HitsLowerFace(
                f"probe endpoint lies on facets {best} simultaneously"
            )
        i = best[0]
        pairing = lattice.dot(v, poly.facets[i].normal)
        if abs(pairing) != 1:
            raise NotTransverse(
                f"pairing <v, xi_{i}> = {pairing} at the hit facet"
            )
        return best_t, i

    t_plus, exit_idx = first_hit(forward=True)
    t_minus, entry_idx = first_hit(forward=False)
    entry = tuple(c - t_minus * vc for c, vc in zip(x, v))
    return SymmetricProbe(
        direction=v,
        entry_facet=entry_idx,
        exit_facet=exit_idx,
        entry_point=entry,
        length=t_minus + t_plus,
        entry_normal=poly.facets[entry_idx].normal,
        exit_normal=poly.facets[exit_idx].normal,
    )


def probe_parameter(sigma: SymmetricProbe, x):
    """The t with x = entry + t*v, requiring x strictly inside the probe."""
    x = as_point(x)
    t = None
    for c, p, vc in zip(x, sigma.entry_point, sigma.direction):
        if vc != 0:
            t = (c - p) / vc
            break
    if t is None or sigma.at(t) != tuple(x):
        raise NotOnProbe(f"{point_str(x)} is not on the probe line")
    if not (ExactScalar.of(0) < t < sigma.length):
        raise NotOnProbe(f"{point_str(x)} is not strictly between the endpoints")
    return t


def partner(sigma: SymmetricProbe, x):
    """The point of the probe at equal boundary distance on the other side.

    An involution; the midpoint is its fixed point.
    """
    t = probe_parameter(sigma, x)
    return sigma.at(sigma.length - t)


def involution(sigma: SymmetricProbe):
    """The homology involution a -> a + <v, a>(xi' - xi) as a matrix.

    Squares to the identity, has det -1, swaps xi and xi' and fixes the
    hyperplane <v, .> = 0 pointwise.
    """
    n = len(sigma.direction)
    delta = tuple(a - b for a, b in zip(sigma.exit_normal, sigma.entry_normal))
    return tuple(
        tuple((1 if i == j else 0) + delta[i] * sigma.direction[j] for j in range(n))
        for i in range(n)
    )


def canonical_directions(dim: int, max_norm: int):
    """Primitive directions of sup-norm <= max_norm, one per +-v pair.

    Canonical sign: first nonzero entry positive.  Deterministic
    lexicographic order.
    """
    out = []
    for v in itertools.product(range(-max_norm, max_norm + 1), repeat=dim):
        if not any(v):
            continue
        first = next(c for c in v if c)
        if first < 0:
            continue
        if lattice.is_primitive(v):
            out.append(v)
    return out


def enumerate_probes(poly: DelzantPolytope, x, max_norm: int):
    """All symmetric probes through x with direction sup-norm <= max_norm."""
    x = poly._require_interior(x)
    probes = []
    for v in canonical_directions(poly.dim, max_norm):
        try:
            probes.append(shoot(poly, x, v))
        except (UnboundedRay, HitsLowerFace, NotTransverse):
            continue
    return probes
