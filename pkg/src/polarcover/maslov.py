"""Pairwise and triple sign invariants on generators, and the two-graph.

For generators X, Y at distance k we pick bases (x_1..x_n), (y_1..y_n) with
a common tail x_i = y_i (k < i <= n) spanning the intersection, and set

    sigma(X, Y) = chi(delta_X(x_1..x_n) * delta_Y(y_1..y_n) * det[B(x_i, y_j)])

where the determinant runs over i, j <= k and delta_X is the determinant of
coordinates with respect to X's canonical RREF basis.  For q = 1 mod 4 this
is symmetric and independent of the basis choice; the coherent triples
(sigma(X,Y)sigma(Y,Z)sigma(Z,X) = +1) form a two-graph.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

from .errors import QNotOneModFour
from .symplectic import (
    Generator,
    SymplecticSpace,
    distance,
    intersect,
    rref,
    rank_of,
)

__all__ = ["CoherenceTable", "sigma_pair", "sigma_triple", "verify_two_graph",
           "verify_invariance", "coherent_split_count"]


def _require_q1mod4(spec):
    if spec.q % 4 != 1:
        raise QNotOneModFour(spec.q)


def field_det(spec, rows):
    """Determinant of a square matrix over F_q by Gaussian elimination."""
    rows = [list(r) for r in rows]
    m = len(rows)
    det = 1
    for col in range(m):
        pivot = next((r for r in range(col, m) if rows[r][col]), None)
        if pivot is None:
            return 0
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = spec.neg(det)
        det = spec.mul(det, rows[col][col])
        inv = spec.inv(rows[col][col])
        for r in range(col + 1, m):
            if rows[r][col]:
                f = spec.mul(rows[r][col], inv)
                rows[r] = [spec.sub(x, spec.mul(f, p)) for x, p in zip(rows[r], rows[col])]
    return det


def solve_coordinates(spec, basis, v):
    """Coordinates of v in the row space spanned by an RREF basis."""
    coords = []
    w = list(v)
    for row in basis:
        p = next(j for j, x in enumerate(row) if x)
        c = w[p]
        coords.append(c)
        if c:
            w = [spec.sub(x, spec.mul(c, y)) for x, y in zip(w, row)]
    if any(w):
        raise ValueError("vector not in subspace")
    return coords


def _extend_basis(spec, gen_basis, tail):
    """Rows of gen_basis independent of the span of tail, greedily chosen.

    Returns the chosen head rows; head + tail is a basis of the generator.
    """
    head = []
    current = list(tail)
    r = len(rref(spec, current)[0]) if current else 0
    for row in gen_basis:
        if rank_of(spec, current + [row]) > r:
            head.append(row)
            current.append(row)
            r += 1
    return head


def _sigma_from_bases(space, X, Y, x_head, y_head, tail):
    """sigma value for explicit head/tail basis choices."""
    spec = space.spec
    k = len(x_head)
    x_basis = list(x_head) + list(tail)
    y_basis = list(y_head) + list(tail)
    coords_x = [solve_coordinates(spec, X.sub.basis, v) for v in x_basis]
    coords_y = [solve_coordinates(spec, Y.sub.basis, v) for v in y_basis]
    delta_x = field_det(spec, coords_x)
    delta_y = field_det(spec, coords_y)
    gram = [[space.bform(x_head[i], y_head[j]) for j in range(k)] for i in range(k)]
    g = field_det(spec, gram) if k else 1
    return spec.chi_code(spec.mul(spec.mul(delta_x, delta_y), g))


def sigma_pair(space: SymplecticSpace, X: Generator, Y: Generator, rng=None) -> int:
    """The pair sign in {+1, -1}; X = Y is rejected.

    With rng given, the deterministic basis extension is replaced by a random
    one (used to property-test basis independence); the value never changes.
    """
    _require_q1mod4(space.spec)
    if X.id == Y.id:
        raise ValueError("sigma_pair requires distinct generators")
    spec = space.spec
    meet = intersect(space, X.sub, Y.sub)
    tail = list(meet.basis)
    if rng is None:
        x_head = _extend_basis(spec, X.sub.basis, tail)
        y_head = _extend_basis(spec, Y.sub.basis, tail)
    else:
        x_head = _random_extension(space, X, tail, rng)
        y_head = _random_extension(space, Y, tail, rng)
    return _sigma_from_bases(space, X, Y, x_head, y_head, tail)


def _random_extension(space, G, tail, rng):
    """Random head completing tail to a basis of G (for gauge testing)."""
    spec = space.spec
    from .symplectic import mat_vec

    head = []
    current = list(tail)
    r = len(rref(spec, current)[0]) if current else 0
    while r < G.sub.dim:
        coeffs = [rng.randrange(spec.q) for _ in range(G.sub.dim)]
        v = mat_vec(spec, G.sub.basis, coeffs)
        if not any(v):
            continue
        if rank_of(spec, current + [v]) > r:
            head.append(v)
            current.append(v)
            r += 1
    return head


class CoherenceTable:
    """Memoized sigma values keyed by unordered generator-id pairs."""

    def __init__(self, space: SymplecticSpace):
        _require_q1mod4(space.spec)
        self.space = space
        self._cache = {}

    def sigma(self, X: Generator, Y: Generator) -> int:
        key = (X.id, Y.id) if X.id < Y.id else (Y.id, X.id)
        v = self._cache.get(key)
        if v is None:
            v = sigma_pair(self.space, X, Y)
            self._cache[key] = v
        return v

    def warm_fill(self):
        gens = self.space.generators()
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                self.sigma(gens[i], gens[j])
        return self

    def sigma_matrix(self):
        """Full symmetric matrix of sigma values, diagonal 0 (numpy int8)."""
        import numpy as np

        gens = self.space.generators()
        m = len(gens)
        S = np.zeros((m, m), dtype=np.int8)
        for i in range(m):
            for j in range(i + 1, m):
                s = self.sigma(gens[i], gens[j])
                S[i, j] = S[j, i] = s
        return S


def sigma_triple(table: CoherenceTable, X, Y, Z) -> int:
    if len({X.id, Y.id, Z.id}) != 3:
        raise ValueError("sigma_triple requires three distinct generators")
    return table.sigma(X, Y) * table.sigma(Y, Z) * table.sigma(Z, X)


@dataclass
class TwoGraphReport:
    ok: bool
    four_sets_checked: int
    coherent_triples: int = 0
    triples_total: int = 0
    witness: tuple = None


def verify_two_graph(table: CoherenceTable, trials=10**4, seed=0) -> TwoGraphReport:
    """Even-parity check of coherent triples over 4-subsets.

    Exhaustive when the number of 4-subsets is at most 10^5, else sampled.
    The parity condition is equivalent to: for fixed {X, Y}, the sign
    sigma(X,Z)sigma(Y,Z) patterns over Z come from a switching class, and a
    4-set {X,Y,Z,W} has evenly many coherent triples.
    """
    import numpy as np
    from math import comb

    space = table.space
    gens = space.generators()
    m = len(gens)
    S = table.sigma_matrix().astype(np.int64)

    coherent = 0
    total = comb(m, 3)
    for a in range(m):
        for b in range(a + 1, m):
            prods = S[a, b] * S[a, b + 1:] * S[b, b + 1:]
            coherent += int((prods == 1).sum())

    checked = 0
    if comb(m, 4) <= 10**5:
        for quad in combinations(range(m), 4):
            checked += 1
            bad = _odd_coherent_count(S, quad)
            if bad:
                return TwoGraphReport(False, checked, coherent, total, quad)
    else:
        rng = random.Random(seed)
        for _ in range(trials):
            quad = tuple(rng.sample(range(m), 4))
            checked += 1
            if _odd_coherent_count(S, quad):
                return TwoGraphReport(False, checked, coherent, total, quad)
    return TwoGraphReport(True, checked, coherent, total)


def _odd_coherent_count(S, quad):
    count = 0
    for a, b, c in combinations(quad, 3):
        if S[a, b] * S[b, c] * S[c, a] == 1:
            count += 1
    return count % 2 == 1


@dataclass
class InvarianceReport:
    ok: bool
    triples_checked: int
    failures: list = field(default_factory=list)


def verify_invariance(table: CoherenceTable, elements, trials=500, seed=0) -> InvarianceReport:
    """Transformation law sigma(Xg,Yg,Zg) = chi(mu)^(perimeter) sigma(X,Y,Z).

    For isometries (mu = 1) this is strict invariance; for a similarity with
    nonsquare multiplier the sign flips exactly when the distance sum
    d(X,Y) + d(Y,Z) + d(Z,X) is odd.
    """
    space = table.space
    spec = space.spec
    gens = space.generators()
    rng = random.Random(seed)
    failures = []
    checked = 0
    for iso in elements:
        chi_mu = spec.chi_code(iso.multiplier)
        for _ in range(max(1, trials // max(1, len(elements)))):
            X, Y, Z = rng.sample(gens, 3)
            perim = (distance(space, X, Y) + distance(space, Y, Z)
                     + distance(space, Z, X))
            lhs = sigma_triple(
                table,
                space.generator_image(X, iso),
                space.generator_image(Y, iso),
                space.generator_image(Z, iso),
            )
            rhs = (chi_mu**perim) * sigma_triple(table, X, Y, Z)
            checked += 1
            if lhs != rhs:
                failures.append((iso, X.id, Y.id, Z.id, lhs, rhs))
    return InvarianceReport(not failures, checked, failures)


def coherent_split_count(table: CoherenceTable, X: Generator, Y: Generator):
    """Counts of coherent/incoherent Z with d(X,Z) = d(X,Y), d(Y,Z) = 1."""
    space = table.space
    if X.id == Y.id:
        raise ValueError("distinct generators required")
    k = distance(space, X, Y)
    coherent = incoherent = 0
    for Z in space.generators():
        if Z.id in (X.id, Y.id):
            continue
        if distance(space, Y, Z) != 1 or distance(space, X, Z) != k:
            continue
        if sigma_triple(table, X, Y, Z) == 1:
            coherent += 1
        else:
            incoherent += 1
    return coherent, incoherent


def coherent_triples(table: CoherenceTable):
    """All coherent triples as sorted id tuples (export helper)."""
    gens = table.space.generators()
    out = []
    for X, Y, Z in combinations(gens, 3):
        if sigma_triple(table, X, Y, Z) == 1:
            out.append((X.id, Y.id, Z.id))
    return out
