"""Feasibility checking for hypothetical scheme parameters.

The 4-class candidate parameter tables are stored once as rational
expressions in r and evaluated exactly at any requested r (an integer or a
square root of a nonsquare).  A generic checker then applies the standard
necessary conditions: eigenmatrix inversion, positive integral valencies
and multiplicities, nonnegative integral intersection numbers recovered
from P and Q, Krein nonnegativity, and the handshake parity.  Failures are
report entries, never exceptions, so parameter sweeps can collect them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exact_algebra import QuadExt

__all__ = [
    "ParameterSet",
    "FeasibilityReport",
    "section9_parameters",
    "candidate_parameters",
    "check_feasibility",
    "verify_Lstar",
    "lstar1_is_tridiagonal",
    "sweep",
    "parse_r",
]

# Candidate 4-class parameter tables as expressions in r.  The scheme would
# have N = (r^2 + 1)(r^6 + r^2) / ... = sum of the Q row-0 entries points.
_P_TEMPLATE = [
    ["1", "(r**4 + r**3 + r**2 + r)/2", "(r**4 - r**3 + r**2 - r)/2",
     "(r**6 + r**4)/2", "(r**6 - r**4)/2"],
    ["1", "(r**3 + r**2 + r - 1)/2", "(-r**3 + r**2 - r - 1)/2",
     "(r**4 - r**2)/2", "(-r**4 - r**2)/2"],
    ["1", "(r**2 - 1)/2", "(r**2 - 1)/2", "-r**2", "0"],
    ["1", "(-r**2 - 1)/2", "(-r**2 - 1)/2", "0", "r**2"],
    ["1", "(-r**3 - r**2 - r - 1)/2", "(r**3 - r**2 + r - 1)/2",
     "(r**4 + r**2)/2", "(-r**4 + r**2)/2"],
]

_Q_TEMPLATE = [
    ["1", "(r**4 - 1)/2", "(r**6 + r**4 + r**2 + 1)/2",
     "(r**6 - r**4 + r**2 - 1)/2", "(r**4 + 1)/2"],
    ["1", "(r**4 - 2*r + 1)/(2*r)", "(r**5 - r**4 + r - 1)/(2*r)",
     "(-r**5 + r**4 - r + 1)/(2*r)", "(-r**4 - 1)/(2*r)"],
    ["1", "(-r**4 - 2*r - 1)/(2*r)", "(r**5 + r**4 + r + 1)/(2*r)",
     "(-r**5 - r**4 - r - 1)/(2*r)", "(r**4 + 1)/(2*r)"],
    ["1", "(r**4 - 2*r**2 + 1)/(2*r**2)", "(-r**4 - 1)/r**2", "0",
     "(r**4 + 1)/(2*r**2)"],
    ["1", "(-r**4 - 2*r**2 - 1)/(2*r**2)", "0", "(r**4 + 1)/r**2",
     "(-r**4 - 1)/(2*r**2)"],
]

_L_TEMPLATES = [
    [["1", "0", "0", "0", "0"],
     ["0", "1", "0", "0", "0"],
     ["0", "0", "1", "0", "0"],
     ["0", "0", "0", "1", "0"],
     ["0", "0", "0", "0", "1"]],
    [["0", "(r**4 + r**3 + r**2 + r)/2", "0", "0", "0"],
     ["1", "(r**2 + 2*r - 3)/4", "(r**2 - 1)/4", "(r**4 + r**3)/2", "0"],
     ["0", "(r**2 + 2*r + 1)/4", "(r**2 - 1)/4", "0", "(r**4 + r**3)/2"],
     ["0", "(r**2 + 2*r + 1)/2", "0", "(r**4 + r**3 + r**2 - r - 2)/4",
      "(r**4 + r**3 - r**2 - r)/4"],
     ["0", "0", "(r**2 + 1)/2", "(r**4 + r**3 + r**2 + r)/4",
      "(r**4 + r**3 - r**2 + r - 2)/4"]],
    [["0", "0", "(r**4 - r**3 + r**2 - r)/2", "0", "0"],
     ["0", "(r**2 - 1)/4", "(r**2 - 2*r + 1)/4", "0", "(r**4 - r**3)/2"],
     ["1", "(r**2 - 1)/4", "(r**2 - 2*r - 3)/4", "(r**4 - r**3)/2", "0"],
     ["0", "0", "(r**2 - 2*r + 1)/2", "(r**4 - r**3 + r**2 + r - 2)/4",
      "(r**4 - r**3 - r**2 + r)/4"],
     ["0", "(r**2 + 1)/2", "0", "(r**4 - r**3 + r**2 - r)/4",
      "(r**4 - r**3 - r**2 - r - 2)/4"]],
    [["0", "0", "0", "(r**6 + r**4)/2", "0"],
     ["0", "(r**4 + r**3)/2", "0", "(r**6 + r**4 - 2*r**3)/4",
      "(r**6 - r**4)/4"],
     ["0", "0", "(r**4 - r**3)/2", "(r**6 + r**4 + 2*r**3)/4",
      "(r**6 - r**4)/4"],
     ["1", "(r**4 + r**3 + r**2 - r - 2)/4", "(r**4 - r**3 + r**2 + r - 2)/4",
      "(r**6 + 2*r**4 - 3*r**2)/4", "(r**6 - 2*r**4 + r**2)/4"],
     ["0", "(r**4 + r**3 + r**2 + r)/4", "(r**4 - r**3 + r**2 - r)/4",
      "(r**6 - r**2)/4", "(r**6 - r**2)/4"]],
    [["0", "0", "0", "0", "(r**6 - r**4)/2"],
     ["0", "0", "(r**4 - r**3)/2", "(r**6 - r**4)/4",
      "(r**6 - 3*r**4 + 2*r**3)/4"],
     ["0", "(r**4 + r**3)/2", "0", "(r**6 - r**4)/4",
      "(r**6 - 3*r**4 - 2*r**3)/4"],
     ["0", "(r**4 + r**3 - r**2 - r)/4", "(r**4 - r**3 - r**2 + r)/4",
      "(r**6 - 2*r**4 + r**2)/4", "(r**6 - 2*r**4 + r**2)/4"],
     ["1", "(r**4 + r**3 - r**2 + r - 2)/4", "(r**4 - r**3 - r**2 - r - 2)/4",
      "(r**6 - r**2)/4", "(r**6 - 4*r**4 + 3*r**2)/4"]],
]

_LSTAR_TEMPLATES = [
    [["1", "0", "0", "0", "0"],
     ["0", "1", "0", "0", "0"],
     ["0", "0", "1", "0", "0"],
     ["0", "0", "0", "1", "0"],
     ["0", "0", "0", "0", "1"]],
    [["0", "(r**4 - 1)/2", "0", "0", "0"],
     ["1", "(r**6 - 5*r**4 - 3*r**2 - 1)/(2*(r**4 + r**2))",
      "(r**8 + 2*r**4 + 1)/(2*(r**4 + r**2))", "0", "0"],
     ["0", "(r**6 - r**4 + r**2 - 1)/(2*(r**4 + r**2))",
      "(r**8 - 4*r**2 + 3)/(4*(r**4 + r**2))",
      "(r**6 - r**4 + r**2 - 1)/(4*r**2)", "0"],
     ["0", "0", "(r**6 + r**4 + r**2 + 1)/(4*r**2)",
      "(r**6 - 3*r**4 - 3*r**2 - 3)/(4*r**2)", "(r**4 + 1)/(2*r**2)"],
     ["0", "0", "0", "(r**6 - r**4 + r**2 - 1)/(2*r**2)",
      "(r**4 - 2*r**2 + 1)/(2*r**2)"]],
    [["0", "0", "(r**6 + r**4 + r**2 + 1)/2", "0", "0"],
     ["0", "(r**8 + 2*r**4 + 1)/(2*(r**4 + r**2))",
      "(r**10 + r**8 + 2*r**6 - 2*r**4 + r**2 - 3)/(4*(r**4 + r**2))",
      "(r**8 + 2*r**4 + 1)/(4*r**2)", "0"],
     ["1", "(r**8 - 4*r**2 + 3)/(4*(r**4 + r**2))",
      "(r**10 + 3*r**8 + 2*r**6 - 2*r**4 + r**2 - 5)/(4*(r**4 + r**2))",
      "(r**8 - 2*r**6 + 2*r**4 - 2*r**2 + 1)/(4*r**2)",
      "(r**6 + r**4 + r**2 + 1)/(4*r**2)"],
     ["0", "(r**6 + r**4 + r**2 + 1)/(4*r**2)", "(r**8 - 1)/(4*r**2)",
      "(r**8 + 2*r**4 + 1)/(4*r**2)",
      "(r**6 - r**4 + r**2 - 1)/(4*r**2)"],
     ["0", "0", "(r**8 + 2*r**6 + 2*r**4 + 2*r**2 + 1)/(4*r**2)",
      "(r**8 - 2*r**6 + 2*r**4 - 2*r**2 + 1)/(4*r**2)",
      "(r**6 - r**4 + r**2 - 1)/(2*r**2)"]],
    [["0", "0", "0", "(r**6 - r**4 + r**2 - 1)/2", "0"],
     ["0", "0", "(r**8 + 2*r**4 + 1)/(4*r**2)",
      "(r**10 - 3*r**8 - 2*r**6 - 6*r**4 - 3*r**2 - 3)/(4*(r**4 + r**2))",
      "(r**8 + 2*r**4 + 1)/(2*(r**4 + r**2))"],
     ["0", "(r**6 - r**4 + r**2 - 1)/(4*r**2)",
      "(r**8 - 2*r**6 + 2*r**4 - 2*r**2 + 1)/(4*r**2)",
      "(r**10 - r**8 + 2*r**6 - 2*r**4 + r**2 - 1)/(4*(r**4 + r**2))",
      "(r**8 - 2*r**6 + 2*r**4 - 2*r**2 + 1)/(4*(r**4 + r**2))"],
     ["1", "(r**6 - 3*r**4 - 3*r**2 - 3)/(4*r**2)",
      "(r**8 + 2*r**4 + 1)/(4*r**2)",
      "(r**8 - 4*r**6 + 4*r**4 - 4*r**2 + 3)/(4*r**2)",
      "(r**6 - r**4 + r**2 - 1)/(4*r**2)"],
     ["0", "(r**6 - r**4 + r**2 - 1)/(2*r**2)",
      "(r**8 - 2*r**6 + 2*r**4 - 2*r**2 + 1)/(4*r**2)",
      "(r**8 - 2*r**6 + 2*r**4 - 2*r**2 + 1)/(4*r**2)", "0"]],
    [["0", "0", "0", "0", "(r**4 + 1)/2"],
     ["0", "0", "0", "(r**8 + 2*r**4 + 1)/(2*(r**4 + r**2))",
      "(r**6 - r**4 + r**2 - 1)/(2*(r**4 + r**2))"],
     ["0", "0", "(r**6 + r**4 + r**2 + 1)/(4*r**2)",
      "(r**8 - 2*r**6 + 2*r**4 - 2*r**2 + 1)/(4*(r**4 + r**2))",
      "(r**6 - r**4 + r**2 - 1)/(2*(r**4 + r**2))"],
     ["0", "(r**4 + 1)/(2*r**2)", "(r**6 - r**4 + r**2 - 1)/(4*r**2)",
      "(r**6 - r**4 + r**2 - 1)/(4*r**2)", "0"],
     ["1", "(r**4 - 2*r**2 + 1)/(2*r**2)",
      "(r**6 - r**4 + r**2 - 1)/(2*r**2)", "0", "0"]],
]


def _eval_template(expr: str, r: QuadExt) -> QuadExt:
    """Evaluate a rational expression in r exactly (no builtins exposed)."""
    value = eval(expr, {"__builtins__": {}}, {"r": r})
    if isinstance(value, QuadExt):
        return value
    return QuadExt(value, 0, r.q)


def parse_r(text: str) -> QuadExt:
    """CLI form of r: a plain integer, or "sqrt:<q>" for an irrational root."""
    if text.startswith("sqrt:"):
        q = int(text[len("sqrt:"):])
        if q <= 1:
            raise ValueError("sqrt base must exceed 1")
        return QuadExt.root(q)
    v = int(text)
    return QuadExt(v, 0, v * v if v != 0 else 1)


@dataclass
class ParameterSet:
    d: int
    r: QuadExt
    P: list
    Q: list
    L: list = None              # optional L_0..L_d templates, evaluated
    Lstar: list = None          # optional dual templates, evaluated

    @property
    def N(self):
        acc = self.Q[0][0]
        for x in self.Q[0][1:]:
            acc = acc + x
        return acc


def candidate_parameters(r_value: QuadExt) -> ParameterSet:
    """The stored 4-class candidate tables evaluated at r."""
    if not r_value or r_value in (QuadExt(1, 0, r_value.q),
                                  QuadExt(-1, 0, r_value.q)):
        raise ZeroDivisionError("templates are singular at r = 0, 1, -1")
    ev = lambda m: [[_eval_template(x, r_value) for x in row] for row in m]
    return ParameterSet(
        4, r_value, ev(_P_TEMPLATE), ev(_Q_TEMPLATE),
        [ev(m) for m in _L_TEMPLATES], [ev(m) for m in _LSTAR_TEMPLATES],
    )


section9_parameters = candidate_parameters


def _is_positive_integer(x: QuadExt):
    return x.is_rational() and x.a.denominator == 1 and x.a > 0


def _is_nonneg_integer(x: QuadExt):
    return x.is_rational() and x.a.denominator == 1 and x.a >= 0


def _p_from_eigenmatrices(P, Q, N, i, j, m):
    """p_ij^m = (1/N) sum_l P[l][i] P[l][j] Q[m][l]."""
    acc = P[0][i] * P[0][j] * Q[m][0]
    for ell in range(1, len(P)):
        acc = acc + P[ell][i] * P[ell][j] * Q[m][ell]
    return acc / N


def _q_from_eigenmatrices(P, Q, N, i, j, ell):
    """q_ij^l = (1/N) sum_m Q[m][i] Q[m][j] P[l][m]."""
    acc = Q[0][i] * Q[0][j] * P[ell][0]
    for m in range(1, len(Q)):
        acc = acc + Q[m][i] * Q[m][j] * P[ell][m]
    return acc / N


@dataclass
class FeasibilityReport:
    checks: list = field(default_factory=list)  # (name, ok, witness)

    def add(self, name, ok, witness=""):
        self.checks.append((name, bool(ok), witness))

    @property
    def ok(self):
        return all(ok for _, ok, _ in self.checks)

    @property
    def first_failure(self):
        for name, ok, _ in self.checks:
            if not ok:
                return name
        return ""

    def as_dict(self):
        return {
            "ok": self.ok,
            "checks": [{"name": n, "ok": ok, "witness": str(w)}
                       for n, ok, w in self.checks],
        }


def check_feasibility(ps: ParameterSet) -> FeasibilityReport:
    """All standard necessary conditions; failures are recorded, not raised."""
    rep = FeasibilityReport()
    d = ps.d
    P, Q = ps.P, ps.Q
    N = ps.N
    qbase = ps.r.q

    ok, witness = True, ""
    for i in range(d + 1):
        for j in range(d + 1):
            acc = P[i][0] * Q[0][j]
            for ell in range(1, d + 1):
                acc = acc + P[i][ell] * Q[ell][j]
            want = N if i == j else QuadExt(0, 0, qbase)
            if acc != want:
                ok, witness = False, f"(PQ)[{i}][{j}] = {acc}"
                break
        if not ok:
            break
    rep.add("pq_identity", ok, witness)

    bad = [str(P[0][j]) for j in range(d + 1) if not _is_positive_integer(P[0][j])]
    rep.add("valencies_positive_integral", not bad, ", ".join(bad))
    bad = [str(Q[0][j]) for j in range(d + 1) if not _is_positive_integer(Q[0][j])]
    rep.add("multiplicities_positive_integral", not bad, ", ".join(bad))

    ok, witness = True, ""
    for i in range(d + 1):
        for j in range(d + 1):
            for m in range(d + 1):
                v = _p_from_eigenmatrices(P, Q, N, i, j, m)
                if not _is_nonneg_integer(v):
                    ok, witness = False, f"p[{i}][{j}]^{m} = {v}"
                    break
            if not ok:
                break
        if not ok:
            break
    rep.add("p_tensor_nonneg_integral", ok, witness)

    ok, witness = True, ""
    for i in range(d + 1):
        for j in range(d + 1):
            for ell in range(d + 1):
                v = _q_from_eigenmatrices(P, Q, N, i, j, ell)
                if v.sign() < 0:
                    ok, witness = False, f"q[{i}][{j}]^{ell} = {v}"
                    break
            if not ok:
                break
        if not ok:
            break
    rep.add("krein_nonneg", ok, witness)

    ok, witness = True, ""
    for i in range(1, d + 1):
        edges2 = P[0][i] * N
        if not (edges2.is_rational() and edges2.a.denominator == 1
                and edges2.a % 2 == 0):
            ok, witness = False, f"k_{i} * N = {edges2}"
            break
    rep.add("handshake", ok, witness)

    if ps.L is not None:
        ok, witness = True, ""
        for i in range(d + 1):
            for k in range(d + 1):
                for j in range(d + 1):
                    v = _p_from_eigenmatrices(P, Q, N, i, j, k)
                    if ps.L[i][k][j] != v:
                        ok, witness = False, f"L_{i}[{k}][{j}]"
                        break
                if not ok:
                    break
            if not ok:
                break
        rep.add("L_consistency", ok, witness)

    if ps.Lstar is not None:
        lrep = verify_Lstar(ps)
        rep.add("Lstar_consistency", lrep.ok, lrep.first_failure)
    return rep


def verify_Lstar(ps: ParameterSet) -> FeasibilityReport:
    """Dual intersection matrices recomputed from (P, Q) vs the templates."""
    rep = FeasibilityReport()
    d = ps.d
    N = ps.N
    ok, witness = True, ""
    for i in range(d + 1):
        for k in range(d + 1):
            for j in range(d + 1):
                v = _q_from_eigenmatrices(ps.P, ps.Q, N, i, j, k)
                if ps.Lstar[i][k][j] != v:
                    ok, witness = False, (
                        f"L*_{i}[{k}][{j}]: template {ps.Lstar[i][k][j]}, "
                        f"computed {v}")
                    break
            if not ok:
                break
        if not ok:
            break
    rep.add("Lstar_match", ok, witness)
    return rep


def lstar1_is_tridiagonal(ps: ParameterSet) -> bool:
    M = ps.Lstar[1]
    d = ps.d
    for k in range(d + 1):
        for j in range(d + 1):
            if abs(k - j) >= 2 and M[k][j]:
                return False
            if abs(k - j) == 1 and not M[k][j]:
                return False
    return True


def sweep(r_values, parameters=candidate_parameters):
    """One (r, q, N, verdict, first_failing_check) row per requested r."""
    rows = []
    for r in r_values:
        ps = parameters(r)
        rep = check_feasibility(ps)
        nval = ps.N
        rows.append({
            "r": str(r),
            "q": r.q,
            "N": str(nval.a if nval.is_rational() else nval),
            "verdict": "pass" if rep.ok else "fail",
            "first_failing_check": rep.first_failure,
        })
    return rows
