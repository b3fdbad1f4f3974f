"""Symplectic space, generator enumeration, dual polar graph metrics."""

import pytest

from polarcover.errors import ResourceCapExceeded
from polarcover.finite_field import construct_field
from polarcover.symplectic import (
    SymplecticSpace,
    distance,
    distance_profile,
    enumerate_generators,
    intersect,
    nonsquare_similarity,
    sp_sample_elements,
    verify_drg_parameters,
    verify_similarity,
)


def predicted(q, n):
    out = 1
    for i in range(1, n + 1):
        out *= q**i + 1
    return out


class TestEnumeration:
    @pytest.mark.parametrize("p,e,n", [(5, 1, 1), (5, 1, 2), (3, 2, 1), (13, 1, 1)])
    def test_generator_count(self, p, e, n):
        space = SymplecticSpace(construct_field(p, e), n)
        gens = space.generators()
        assert len(gens) == predicted(p**e, n)

    def test_generators_are_maximal_isotropic(self, q5n2):
        space = q5n2["space"]
        for g in space.generators():
            assert g.sub.dim == space.n
            assert space.is_isotropic(g.sub.basis)

    def test_enumeration_is_sorted_and_stable(self, q5n1):
        space = q5n1["space"]
        gens = space.generators()
        bases = [g.sub.basis for g in gens]
        assert bases == sorted(bases)
        assert [g.id for g in gens] == list(range(len(gens)))
        again = enumerate_generators(space)
        assert [g.sub.basis for g in again] == bases

    def test_resource_cap(self):
        space = SymplecticSpace(construct_field(5, 1), 9)
        with pytest.raises(ResourceCapExceeded) as exc:
            enumerate_generators(space, cap=10**6)
        assert exc.value.predicted > exc.value.cap

    def test_bform_alternating(self, q5n2):
        space = q5n2["space"]
        import random

        rng = random.Random(3)
        for _ in range(100):
            u = tuple(rng.randrange(5) for _ in range(4))
            v = tuple(rng.randrange(5) for _ in range(4))
            assert space.bform(u, u) == 0
            assert space.bform(u, v) == space.spec.neg(space.bform(v, u))


class TestMetrics:
    def test_distance_profile_q5n2(self, q5n2):
        space = q5n2["space"]
        profile = distance_profile(space, space.generators()[0])
        assert profile == {0: 1, 1: 30, 2: 125}

    def test_distance_profile_counts(self, q5n1, q9n1):
        # At distance k there are q^C(k+1,2) [n choose k] generators.
        for bundle in (q5n1, q9n1):
            space = bundle["space"]
            q = space.spec.q
            profile = distance_profile(space, space.generators()[0])
            assert profile == {0: 1, 1: q * 1}  # n = 1: q * [1 choose 1]

    def test_distance_symmetric_and_metric(self, q5n2):
        space = q5n2["space"]
        gens = space.generators()
        D = space.distance_matrix()
        assert (D == D.T).all()
        X, Y = gens[0], gens[17]
        assert distance(space, X, Y) == int(D[0, 17])

    def test_intersection_dimension(self, q5n2):
        space = q5n2["space"]
        gens = space.generators()
        for Y in gens[:20]:
            X = gens[0]
            k = distance(space, X, Y)
            meet = intersect(space, X.sub, Y.sub)
            assert meet.dim == space.n - k
            for v in meet.basis:
                assert X.sub.contains_vector(space.spec, v)
                assert Y.sub.contains_vector(space.spec, v)

    @pytest.mark.parametrize("bundle", ["q5n1", "q5n2", "q9n1"])
    def test_drg_parameters(self, bundle, request):
        space = request.getfixturevalue(bundle)["space"]
        q, n = space.spec.q, space.n
        report = verify_drg_parameters(space)
        assert report.ok, report.failure
        from polarcover.closed_form import drg_abc

        for k, (c, a, b) in report.parameters.items():
            ak, bk, ck = drg_abc(n, q, k)
            assert (c, a, b) == (int(ck) if k else 0, int(ak), int(bk))


class TestIsometries:
    def test_sampled_isometries_preserve_form(self, q5n2):
        space = q5n2["space"]
        for iso in sp_sample_elements(space, 10, seed=42):
            assert iso.multiplier == 1
            assert verify_similarity(space, iso.matrix, 1)

    def test_sampling_is_seeded(self, q5n2):
        space = q5n2["space"]
        a = sp_sample_elements(space, 5, seed=1)
        b = sp_sample_elements(space, 5, seed=1)
        c = sp_sample_elements(space, 5, seed=2)
        assert [x.matrix for x in a] == [x.matrix for x in b]
        assert [x.matrix for x in a] != [x.matrix for x in c]

    def test_nonsquare_similarity(self, q5n2):
        space = q5n2["space"]
        iso = nonsquare_similarity(space)
        assert space.spec.chi_code(iso.multiplier) == -1
        assert verify_similarity(space, iso.matrix, iso.multiplier)

    def test_isometries_permute_generators(self, q5n1):
        space = q5n1["space"]
        gens = space.generators()
        for iso in sp_sample_elements(space, 5, seed=9):
            images = {space.generator_image(g, iso).id for g in gens}
            assert images == set(range(len(gens)))
