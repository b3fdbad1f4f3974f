"""Scheme axioms, exact eigenmatrices, Krein parameters, idempotents."""

import json

import numpy as np
import pytest

from polarcover.errors import (
    IdentityNotR0,
    NonConstant,
    NotAPartition,
    NotSymmetric,
)
from polarcover.exact_algebra import QuadExt, mat_mul
from polarcover.scheme_core import (
    KreinTensor,
    SchemeInstance,
    export_scheme,
    intersection_matrix,
    krein,
    q_bipartite_check,
    q_poly_orderings,
    spectral_data,
    verify_idempotents,
    verify_scheme,
)


def pentagon_instance():
    """C5 distance scheme: a clean 2-class scheme over Q(sqrt(5))."""
    R = np.zeros((5, 5), dtype=np.int8)
    for x in range(5):
        for y in range(5):
            if x != y:
                R[x, y] = 1 if (x - y) % 5 in (1, 4) else 2
    return SchemeInstance.from_matrix(R, 2, field_q=5)


class TestFaultInjection:
    def test_not_a_partition_out_of_range(self):
        R = np.array([[0, 5], [5, 0]])
        with pytest.raises(NotAPartition):
            verify_scheme(SchemeInstance.from_matrix(R, 1, field_q=5))

    def test_not_a_partition_empty_relation(self):
        R = np.array([[0, 1], [1, 0]])
        with pytest.raises(NotAPartition):
            verify_scheme(SchemeInstance.from_matrix(R, 2, field_q=5))

    def test_identity_not_r0_diagonal(self):
        R = np.array([[1, 1], [1, 0]])
        with pytest.raises(IdentityNotR0):
            verify_scheme(SchemeInstance.from_matrix(R, 1, field_q=5))

    def test_identity_not_r0_offdiagonal(self):
        R = np.array([[0, 0, 1], [0, 0, 1], [1, 1, 0]])
        with pytest.raises(IdentityNotR0):
            verify_scheme(SchemeInstance.from_matrix(R, 1, field_q=5))

    def test_not_symmetric(self):
        R = np.array([[0, 1, 2], [2, 0, 1], [1, 2, 0]])
        with pytest.raises(NotSymmetric) as exc:
            verify_scheme(SchemeInstance.from_matrix(R, 2, field_q=5))
        assert exc.value.witness is not None

    def test_nonconstant_valency(self):
        # path on 3 points graded by distance: relation 1 has valency 1 or 2
        R = np.array([[0, 1, 2], [1, 0, 1], [2, 1, 0]])
        with pytest.raises(NonConstant):
            verify_scheme(SchemeInstance.from_matrix(R, 2, field_q=5))

    def test_nonconstant_p_tensor(self):
        # 6-cycle with "adjacent" vs "everything else": valencies are
        # constant (2 and 3) but p_{11}^2 is not.
        R = np.zeros((6, 6), dtype=np.int8)
        for x in range(6):
            for y in range(6):
                if x != y:
                    R[x, y] = 1 if (x - y) % 6 in (1, 5) else 2
        with pytest.raises(NonConstant) as exc:
            verify_scheme(SchemeInstance.from_matrix(R, 2, field_q=5))
        assert exc.value.witness is not None


class TestPentagon:
    def test_tensor(self):
        t = verify_scheme(pentagon_instance())
        assert t.valencies == [1, 2, 2]
        assert t.p[1][1][2] == 1
        assert t.p[1][2][1] == 1
        assert intersection_matrix(t, 1)[0][1] == 2

    def test_spectral(self):
        t = verify_scheme(pentagon_instance())
        sd = spectral_data(t, 5)
        r = QuadExt.root(5)
        two = QuadExt(2, 0, 5)
        # eigenvalues of C5: 2, (-1+sqrt5)/2, (-1-sqrt5)/2
        assert sd.eigenvalues[0] == two
        assert sd.eigenvalues[1] == (r - 1) / 2
        assert sd.eigenvalues[2] == (-r - 1) / 2
        assert sd.multiplicities == [QuadExt(1, 0, 5), two, two]

    def test_pq_identity(self):
        t = verify_scheme(pentagon_instance())
        sd = spectral_data(t, 5)
        prod = mat_mul(sd.P, sd.Q)
        for i in range(3):
            for j in range(3):
                want = QuadExt(5 if i == j else 0, 0, 5)
                assert prod[i][j] == want


class TestCoverScheme:
    def test_valencies_q5n2(self, q5n2_scheme):
        t = q5n2_scheme["tensor"]
        assert t.valencies == [1, 30, 125, 125, 30, 1]
        assert t.N == 312

    def test_pq_identity(self, q5n2_scheme):
        sd = q5n2_scheme["sd"]
        prod = mat_mul(sd.P, sd.Q)
        N = sd.N
        for i in range(sd.d + 1):
            for j in range(sd.d + 1):
                assert prod[i][j] == QuadExt(N if i == j else 0, 0, sd.q)

    def test_eigenvalues_strictly_decreasing(self, q5n2_scheme, q5n1_scheme):
        for bundle in (q5n2_scheme, q5n1_scheme):
            ev = bundle["sd"].eigenvalues
            assert all(a > b for a, b in zip(ev, ev[1:]))
            assert ev[0] == bundle["sd"].valencies[1]

    def test_multiplicities_sum(self, q5n2_scheme):
        sd = q5n2_scheme["sd"]
        total = sd.multiplicities[0]
        for m in sd.multiplicities[1:]:
            total = total + m
        assert total == QuadExt(sd.N, 0, sd.q)

    def test_splitting_field_usage(self, q5n1_scheme, q9n1, q13n1):
        # q = 5, 13: genuinely irrational entries.  q = 9: r = 3 rational.
        sd5 = q5n1_scheme["sd"]
        assert any(x.b for row in sd5.P for x in row)
        t13 = verify_scheme(q13n1["instance"])
        sd13 = spectral_data(t13, q13n1["instance"].N)
        assert any(x.b for row in sd13.P for x in row)
        t9 = verify_scheme(q9n1["instance"])
        sd9 = spectral_data(t9, q9n1["instance"].N)
        assert all(not x.b for row in sd9.P for x in row)

    def test_conjugation_permutes_p_rows(self, q5n2_scheme):
        # The Galois map r -> -r permutes the rows of P.
        sd = q5n2_scheme["sd"]
        rows = [tuple(x for x in row) for row in sd.P]
        conj = [tuple(x.conjugate() for x in row) for row in sd.P]
        assert sorted(map(str, rows)) == sorted(map(str, conj))
        # and the permutation is not the identity (irrational rows move)
        assert rows != conj


class TestKreinAndOrderings:
    def test_krein_nonnegative(self, q5n2_scheme):
        kt = krein(q5n2_scheme["sd"])
        for plane in kt.qk:
            for row in plane:
                for v in row:
                    assert v.sign() >= 0

    def test_two_q_poly_orderings(self, q5n2_scheme):
        kt = krein(q5n2_scheme["sd"])
        orderings = q_poly_orderings(kt)
        assert sorted(orderings) == [(0, 1, 2, 3, 4, 5), (0, 5, 2, 3, 4, 1)]
        for o in orderings:
            assert q_bipartite_check(kt, o)

    def test_orderings_icosahedron(self, q5n1_scheme):
        kt = krein(q5n1_scheme["sd"])
        orderings = q_poly_orderings(kt)
        assert len(orderings) == 2
        for o in orderings:
            assert o[0] == 0
            assert q_bipartite_check(kt, o)

    def test_conjugate_orderings_swap(self, q5n2_scheme):
        # The two orderings are exchanged by the Galois row permutation of P
        # (r -> -r swaps one conjugate pair of eigenspaces, fixes the rest).
        sd = q5n2_scheme["sd"]
        kt = krein(sd)
        o1, o2 = sorted(q_poly_orderings(kt))
        index_of = {tuple(map(str, row)): i for i, row in enumerate(sd.P)}
        pi = {i: index_of[tuple(str(x.conjugate()) for x in row)]
              for i, row in enumerate(sd.P)}
        assert tuple(pi[j] for j in o1) == o2
        # exactly one transposition
        moved = [i for i in pi if pi[i] != i]
        assert len(moved) == 2 and pi[moved[0]] == moved[1]

    def test_trivial_rank_one_scheme(self):
        # complete graph on 3 points: d = 1, unique ordering (0, 1)
        R = np.array([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
        t = verify_scheme(SchemeInstance.from_matrix(R, 1, field_q=5))
        sd = spectral_data(t, 3)
        kt = krein(sd)
        assert q_poly_orderings(kt) == [(0, 1)]


class TestIdempotents:
    def _a_list(self, instance):
        R = instance.relation_matrix()
        return [(R == i).astype(np.int64) for i in range(instance.d + 1)]

    def test_icosahedron(self, q5n1_scheme):
        sd = q5n1_scheme["sd"]
        report = verify_idempotents(sd, self._a_list(q5n1_scheme["instance"]))
        assert report.ok, report.failure
        assert all(report.checks.values())

    def test_pentagon(self):
        inst = pentagon_instance()
        t = verify_scheme(inst)
        sd = spectral_data(t, 5)
        report = verify_idempotents(sd, self._a_list(inst))
        assert report.ok, report.failure


class TestExport:
    def test_json_serializable(self, q5n1_scheme):
        sd = q5n1_scheme["sd"]
        t = q5n1_scheme["tensor"]
        kt = krein(sd)
        blob = export_scheme(sd, t, kt, q_poly_orderings(kt))
        text = json.dumps(blob, sort_keys=True)
        back = json.loads(text)
        assert back["N"] == 12
        assert back["d"] == 3
        assert len(back["P"]) == 4
