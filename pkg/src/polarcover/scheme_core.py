"""Generic association-scheme engine.

Takes a relation function on ordered pairs of points, verifies the scheme
axioms exhaustively, and computes the intersection tensor, the exact
eigenmatrices P and Q over Q(r), Krein parameters, and the Q-polynomial
orderings.  All results are exact; numpy float64 appears only as a carrier
for integer matrix products, guarded against exceeding 2^53.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np

from .errors import (
    EigenvalueOutsideField,
    IdentityNotR0,
    NonConstant,
    NotAPartition,
    NotSymmetric,
    RepeatedEigenvalue,
)
from .exact_algebra import QuadExt, mat_charpoly, mat_inverse, mat_kernel

__all__ = [
    "SchemeInstance",
    "IntersectionTensor",
    "SpectralData",
    "KreinTensor",
    "verify_scheme",
    "intersection_matrix",
    "spectral_data",
    "krein",
    "q_poly_orderings",
    "q_bipartite_check",
    "verify_idempotents",
    "export_scheme",
]

_EXACT_FLOAT_BOUND = 2.0**53


def _exact_int_product(A, B):
    """Integer matrix product via float64 BLAS, verified exact."""
    M = A.astype(np.float64) @ B.astype(np.float64)
    if np.abs(M).max(initial=0.0) >= _EXACT_FLOAT_BOUND:
        raise OverflowError("matrix product exceeds float64 exact range")
    return M.astype(np.int64)


@dataclass
class SchemeInstance:
    """Point set {0..N-1} with a relation index on ordered pairs."""

    N: int
    d: int
    relation: object            # callable (x, y) -> index, or None
    field_q: int = None         # base of the splitting field Q(sqrt(q))
    _matrix: np.ndarray = None

    @staticmethod
    def from_matrix(R, d, field_q=None):
        R = np.asarray(R)
        inst = SchemeInstance(R.shape[0], d, None, field_q)
        inst._matrix = R
        return inst

    @staticmethod
    def from_cover(cover):
        return SchemeInstance.from_matrix(
            cover.relation_matrix_index(), 2 * cover.n + 1,
            field_q=cover.space.spec.q,
        )

    def relation_matrix(self):
        if self._matrix is None:
            R = np.empty((self.N, self.N), dtype=np.int16)
            for x in range(self.N):
                for y in range(self.N):
                    R[x, y] = self.relation(x, y)
            self._matrix = R
        return self._matrix


@dataclass
class IntersectionTensor:
    d: int
    N: int
    p: list                     # p[i][j][k], nonnegative ints
    valencies: list             # k_i
    field_q: int = None


def verify_scheme(instance: SchemeInstance) -> IntersectionTensor:
    """Exhaustive axiom check; every ordered pair contributes.

    Verifies the partition, identity, symmetry and constancy axioms, then
    returns the intersection tensor (with the standard identities checked).
    """
    N, d = instance.N, instance.d
    R = instance.relation_matrix()

    if R.min() < 0 or R.max() > d:
        bad = np.argwhere((R < 0) | (R > d))[0]
        raise NotAPartition(f"relation index out of range at pair {tuple(bad)}")
    present = set(np.unique(R).tolist())
    if present != set(range(d + 1)):
        raise NotAPartition(f"relations {sorted(set(range(d+1)) - present)} are empty")

    diag = np.diagonal(R)
    if (diag != 0).any():
        x = int(np.flatnonzero(diag != 0)[0])
        raise IdentityNotR0(f"({x},{x}) has relation {int(R[x, x])}, not 0")
    offdiag_zero = (R == 0) & ~np.eye(N, dtype=bool)
    if offdiag_zero.any():
        x, y = map(int, np.argwhere(offdiag_zero)[0])
        raise IdentityNotR0(f"distinct pair ({x},{y}) assigned relation 0")

    asym = R != R.T
    if asym.any():
        x, y = map(int, np.argwhere(asym)[0])
        raise NotSymmetric(int(R[x, y]), (x, y))

    A = [(R == i).astype(np.int64) for i in range(d + 1)]
    valencies = []
    for i in range(d + 1):
        sums = A[i].sum(axis=1)
        if not (sums == sums[0]).all():
            x = int(np.flatnonzero(sums != sums[0])[0])
            raise NonConstant(i, i, 0, (x, x))
        valencies.append(int(sums[0]))

    masks = [R == k for k in range(d + 1)]
    p = [[[0] * (d + 1) for _ in range(d + 1)] for _ in range(d + 1)]
    for i in range(d + 1):
        for j in range(i, d + 1):
            M = _exact_int_product(A[i], A[j])
            for k in range(d + 1):
                vals = M[masks[k]]
                v0 = int(vals[0])
                if (vals != v0).any():
                    flat = np.flatnonzero(masks[k] & (M != v0))
                    x, y = divmod(int(flat[0]), N)
                    raise NonConstant(i, j, k, (x, y))
                p[i][j][k] = v0
                p[j][i][k] = v0

    for i in range(d + 1):
        for k in range(d + 1):
            if sum(p[i][j][k] for j in range(d + 1)) != valencies[i]:
                raise AssertionError(f"row-sum identity fails at (i={i}, k={k})")
            for j in range(d + 1):
                if valencies[k] * p[i][j][k] != valencies[i] * p[k][j][i]:
                    raise AssertionError(f"counting identity fails at ({i},{j},{k})")

    return IntersectionTensor(d, N, p, valencies, instance.field_q)


def intersection_matrix(t: IntersectionTensor, i: int):
    """The matrix L_i with (L_i)[k][j] = p_ij^k, as exact rationals."""
    if not 0 <= i <= t.d:
        raise IndexError(f"relation index {i} out of range")
    return [[Fraction(t.p[i][j][k]) for j in range(t.d + 1)] for k in range(t.d + 1)]


@dataclass
class SpectralData:
    N: int
    d: int
    q: int                      # base of Q(sqrt(q))
    P: list                     # (d+1)x(d+1) QuadExt
    Q: list
    valencies: list             # QuadExt, row 0 of P
    multiplicities: list        # QuadExt, row 0 of Q
    eigenvalues: list           # of A_1, per row of P


def _quadext_roots(coeffs, q):
    """Roots of a monic rational polynomial, all required to lie in Q(r).

    coeffs are low degree first over Fraction.  Uses sympy to factor over Q,
    then resolves linear and quadratic factors exactly.
    """
    import sympy

    x = sympy.Symbol("x")
    poly = sum(sympy.Rational(c.numerator, c.denominator) * x**i
               for i, c in enumerate(coeffs))
    _, factors = sympy.factor_list(sympy.Poly(poly, x, domain="QQ"))
    roots = []
    for fac, mult in factors:
        if mult != 1:
            raise RepeatedEigenvalue(f"factor {fac} has multiplicity {mult}")
        fc = sympy.Poly(fac, x).all_coeffs()  # high degree first
        fc = [Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1]))
              for c in fc]
        lead = fc[0]
        fc = [c / lead for c in fc]
        if len(fc) == 2:
            roots.append(QuadExt(-fc[1], 0, q))
        elif len(fc) == 3:
            b, c = fc[1], fc[2]
            disc = b * b - 4 * c
            t2 = disc / q
            num, den = t2.numerator, t2.denominator
            rn = _sqrt_if_perfect(num)
            rd = _sqrt_if_perfect(den)
            if t2 <= 0 or rn is None or rd is None:
                raise EigenvalueOutsideField(f"factor {fac} does not split in Q(r)")
            t = Fraction(rn, rd)
            roots.append(QuadExt(-b / 2, t / 2, q))
            roots.append(QuadExt(-b / 2, -t / 2, q))
        else:
            raise EigenvalueOutsideField(f"irreducible factor {fac} of degree > 2")
    if len(set(roots)) != len(roots):
        raise RepeatedEigenvalue("duplicate eigenvalues after resolution")
    return roots


def _sqrt_if_perfect(n):
    if n < 0:
        return None
    r = int(n**0.5)
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand * cand == n:
            return cand
    return None


def spectral_data(t: IntersectionTensor, N: int, q: int = None) -> SpectralData:
    """Exact eigenmatrices from the intersection tensor.

    Rows of P are the left eigenvectors of L_1 normalized to first entry 1,
    sorted by eigenvalue in decreasing order (the valency row comes first);
    Q = N * P^(-1).  All SpectralData invariants are verified before return.
    """
    if q is None:
        q = t.field_q
    if q is None:
        raise ValueError("field base q is required to express eigenvalues")
    d = t.d
    L1 = intersection_matrix(t, 1)
    coeffs = mat_charpoly(L1)
    eigs = _quadext_roots(coeffs, q)
    if len(eigs) != d + 1:
        raise RepeatedEigenvalue(
            f"expected {d + 1} distinct eigenvalues, found {len(eigs)}")
    eigs.sort(reverse=True)

    L1q = [[QuadExt(x, 0, q) for x in row] for row in L1]
    L1T = [[L1q[j][i] for j in range(d + 1)] for i in range(d + 1)]
    P = []
    for theta in eigs:
        B = [[L1T[i][j] - (theta if i == j else 0) for j in range(d + 1)]
             for i in range(d + 1)]
        kern = mat_kernel(B)
        if len(kern) != 1:
            raise RepeatedEigenvalue(f"eigenspace of {theta} has dimension {len(kern)}")
        u = kern[0]
        if not u[0]:
            raise AssertionError("left eigenvector has zero first entry")
        inv = u[0].inverse()
        P.append([x * inv for x in u])

    Pinv = mat_inverse(P)
    Qm = [[N * x for x in row] for row in Pinv]

    one = QuadExt(1, 0, q)
    for i in range(d + 1):
        if P[i][0] != one:
            raise AssertionError("column 0 of P is not all ones")
        if Qm[i][0] != one:
            raise AssertionError("column 0 of Q is not all ones")
    valencies = list(P[0])
    for i, k in enumerate(t.valencies):
        if valencies[i] != QuadExt(k, 0, q):
            raise AssertionError(
                f"P row 0 entry {i} = {valencies[i]} differs from valency {k}")
    mults = [Qm[0][j] for j in range(d + 1)]
    total = QuadExt(0, 0, q)
    for m in mults:
        if m.sign() <= 0:
            raise AssertionError(f"nonpositive multiplicity {m}")
        total = total + m
    if total != QuadExt(N, 0, q):
        raise AssertionError("multiplicities do not sum to N")
    return SpectralData(N, d, q, P, Qm, valencies, mults, [row[1] for row in P])


@dataclass
class KreinTensor:
    d: int
    N: int
    q: int
    qk: list                    # qk[i][j][k], QuadExt
    multiplicities: list


def krein(sd: SpectralData) -> KreinTensor:
    """Krein parameters q_ij^k = (m_i m_j / N) sum_l P_il P_jl P_kl / k_l^2."""
    d, N, q = sd.d, sd.N, sd.q
    P, m, k = sd.P, sd.multiplicities, sd.valencies
    inv_k2 = [(kv * kv).inverse() for kv in k]
    invN = QuadExt(Fraction(1, N), 0, q)
    qk = [[[None] * (d + 1) for _ in range(d + 1)] for _ in range(d + 1)]
    for i in range(d + 1):
        for j in range(i, d + 1):
            coeff = m[i] * m[j] * invN
            for kk in range(d + 1):
                acc = QuadExt(0, 0, q)
                for ell in range(d + 1):
                    acc = acc + P[i][ell] * P[j][ell] * P[kk][ell] * inv_k2[ell]
                v = coeff * acc
                qk[i][j][kk] = v
                qk[j][i][kk] = v
    for i in range(d + 1):
        for kk in range(d + 1):
            acc = QuadExt(0, 0, q)
            for j in range(d + 1):
                acc = acc + qk[i][j][kk]
            if acc != m[i]:
                raise AssertionError(f"Krein row sum fails at (i={i}, k={kk})")
    return KreinTensor(d, N, q, qk, list(m))


def q_poly_orderings(kt: KreinTensor):
    """All idempotent orderings making the dual L*_1 tridiagonal.

    Returns full orderings (0, e_1, .., e_d).  A tridiagonal ordering is a
    forced chain: from e_j the next index is the unique unused k with
    q_{e_1, e_j}^k nonzero, so the search is linear per starting idempotent.
    """
    d = kt.d
    if d > 12:
        raise ValueError("class-count guard exceeded (d > 12)")
    if d == 1:
        return [(0, 1)]
    out = []
    for c in range(1, d + 1):
        e = [0, c]
        used = {0, c}
        ok = True
        while ok and len(e) <= d:
            cands = [k for k in range(d + 1)
                     if k not in used and kt.qk[c][e[-1]][k]]
            if len(cands) != 1:
                ok = False
            else:
                e.append(cands[0])
                used.add(cands[0])
        if ok and _is_tridiagonal_ordering(kt, e):
            out.append(tuple(e))
    return out


def _is_tridiagonal_ordering(kt, e):
    d = kt.d
    c = e[1]
    for k in range(d + 1):
        for j in range(d + 1):
            v = kt.qk[c][e[j]][e[k]]
            if abs(k - j) >= 2 and v:
                return False
            if abs(k - j) == 1 and not v:
                return False
    return True


def q_bipartite_check(kt: KreinTensor, ordering) -> bool:
    """True iff all dual a*_j = q_{1j}^j vanish in the given ordering."""
    c = ordering[1]
    return all(not kt.qk[c][ordering[j]][ordering[j]]
               for j in range(1, kt.d + 1))


@dataclass
class IdempotentReport:
    ok: bool
    checks: dict = field(default_factory=dict)
    failure: str = ""


def verify_idempotents(sd: SpectralData, A_list) -> IdempotentReport:
    """Exact check of E_jE_j = E_j, E_iE_j = 0, sum E_j = I, A_1E_j = P_j1 E_j.

    E_j = (1/N) sum_i Q_ij A_i.  Internally the idempotents are carried as
    scaled integer matrices S_j = D*N*E_j = Sa + Sb*r with D clearing all
    Q-entry denominators, so every identity becomes integer matrix algebra.
    """
    N, d, q = sd.N, sd.d, sd.q
    D = 1
    for row in sd.Q:
        for x in row:
            D = lcm(D, x.a.denominator, x.b.denominator)
    S = []
    for j in range(d + 1):
        Sa = np.zeros((N, N), dtype=np.int64)
        Sb = np.zeros((N, N), dtype=np.int64)
        for i in range(d + 1):
            ca = int(sd.Q[i][j].a * D)
            cb = int(sd.Q[i][j].b * D)
            if ca:
                Sa += ca * A_list[i]
            if cb:
                Sb += cb * A_list[i]
        S.append((Sa, Sb))
    DN = D * N

    def product(si, sj):
        a1, b1 = si
        a2, b2 = sj
        pa = _exact_int_product(a1, a2) + q * _exact_int_product(b1, b2)
        pb = _exact_int_product(a1, b2) + _exact_int_product(b1, a2)
        return pa, pb

    checks = {}
    for i in range(d + 1):
        for j in range(i, d + 1):
            pa, pb = product(S[i], S[j])
            if i == j:
                ok = (pa == DN * S[i][0]).all() and (pb == DN * S[i][1]).all()
                checks[f"E{i}E{i}=E{i}"] = ok
            else:
                ok = not pa.any() and not pb.any()
                checks[f"E{i}E{j}=0"] = ok
            if not ok:
                return IdempotentReport(False, checks, f"pair ({i},{j})")
    suma = sum(s[0] for s in S)
    sumb = sum(s[1] for s in S)
    ok = (suma == DN * np.eye(N, dtype=np.int64)).all() and not sumb.any()
    checks["sum E_j = I"] = ok
    if not ok:
        return IdempotentReport(False, checks, "completeness")
    A1 = A_list[1]
    for j in range(d + 1):
        ev = sd.P[j][1]
        den = lcm(ev.a.denominator, ev.b.denominator)
        na, nb = int(ev.a * den), int(ev.b * den)
        Sa, Sb = S[j]
        la = den * _exact_int_product(A1, Sa)
        lb = den * _exact_int_product(A1, Sb)
        ra = na * Sa + q * nb * Sb
        rb = na * Sb + nb * Sa
        ok = (la == ra).all() and (lb == rb).all()
        checks[f"A1E{j} = P[{j}][1] E{j}"] = ok
        if not ok:
            return IdempotentReport(False, checks, f"eigen identity j={j}")
    return IdempotentReport(True, checks)


def export_scheme(sd: SpectralData, t: IntersectionTensor, kt: KreinTensor,
                  orderings) -> dict:
    """JSON-ready scheme summary with exact Q(r) entries."""
    return {
        "N": sd.N,
        "d": sd.d,
        "valencies": [v.to_json() for v in sd.valencies],
        "multiplicities": [m.to_json() for m in sd.multiplicities],
        "P": [[x.to_json() for x in row] for row in sd.P],
        "Q": [[x.to_json() for x in row] for row in sd.Q],
        "p_tensor": t.p,
        "krein_tensor": [[[x.to_json() for x in row] for row in plane]
                         for plane in kt.qk],
        "q_poly_orderings": [list(o) for o in orderings],
    }
