"""Association scheme axioms, eigenstructure, orderings, embeddings."""

import json

import numpy as np
import pytest

from excesskit import (
    NotAPartitionError,
    RankDeficientError,
    as_class_matrix,
    bose_mesner_eigenstructure,
    check_two_design,
    cube,
    harmonic_decomposition,
    inner_product_profile,
    krein_parameters,
    load_scheme,
    octahedron,
    qpoly_ordering,
    relation_matrices,
    relations_from_profile,
    spherical_embedding,
    verify_scheme,
)


def octahedron_classes() -> np.ndarray:
    return relations_from_profile(inner_product_profile(octahedron()))


def cube_classes() -> np.ndarray:
    return relations_from_profile(inner_product_profile(cube()))


def cyclic_classes(n: int) -> np.ndarray:
    """Distance classes of the n-cycle: class min(|x-y|, n-|x-y|)."""
    idx = np.arange(n)
    diff = np.abs(idx[:, None] - idx[None, :])
    return np.minimum(diff, n - diff).astype(np.int64)


class TestClassMatrixValidation:
    def test_round_trip_from_float(self):
        R = as_class_matrix(cyclic_classes(5).astype(float))
        assert R.dtype == np.int64

    def test_non_square_rejected(self):
        with pytest.raises(NotAPartitionError):
            as_class_matrix(np.zeros((2, 3), dtype=int))

    def test_fractional_rejected(self):
        with pytest.raises(NotAPartitionError):
            as_class_matrix(np.array([[0.0, 0.5], [0.5, 0.0]]))

    def test_negative_rejected(self):
        with pytest.raises(NotAPartitionError):
            as_class_matrix(np.array([[0, -1], [-1, 0]]))

    def test_skipped_class_rejected(self):
        with pytest.raises(NotAPartitionError):
            as_class_matrix(np.array([[0, 3], [3, 0]]))

    def test_load_scheme_forms(self, tmp_path):
        R = cyclic_classes(4)
        doc = {"type": "scheme", "n": 4, "relations": R.tolist()}
        path = tmp_path / "c4.json"
        path.write_text(json.dumps(doc))
        assert np.array_equal(load_scheme(doc), R)
        assert np.array_equal(load_scheme(path), R)
        assert np.array_equal(load_scheme(json.dumps(doc)), R)

    def test_load_scheme_shape_mismatch(self):
        with pytest.raises(NotAPartitionError):
            load_scheme({"type": "scheme", "n": 3, "relations": [[0, 1], [1, 0]]})

    def test_load_scheme_wrong_type(self):
        with pytest.raises(ValueError):
            load_scheme({"type": "pointset", "n": 2, "relations": [[0, 1], [1, 0]]})


class TestVerifyScheme:
    @pytest.mark.parametrize(
        "classes, d",
        [
            (octahedron_classes(), 2),
            (cube_classes(), 3),
            (cyclic_classes(5), 2),
            (cyclic_classes(6), 3),
        ],
    )
    def test_schemes_verified(self, classes, d):
        report = verify_scheme(classes)
        assert report.passed
        assert report.verdict == "scheme-verified"
        assert report.d == d
        assert report.witness is None
        assert report.valencies is not None
        assert int(report.valencies.sum()) == report.n
        assert report.valencies[0] == 1

    def test_octahedron_valencies(self):
        report = verify_scheme(octahedron_classes())
        assert report.valencies.tolist() == [1, 4, 1]

    def test_octahedron_intersection_number(self):
        # Two orthogonal neighbors of a point share p^1_11 = 2 common
        # orthogonal neighbors.
        report = verify_scheme(octahedron_classes())
        assert report.intersection_numbers[1, 1, 1] == 2

    def test_wrong_diagonal_witnessed(self):
        R = octahedron_classes().copy()
        R[0, 0] = 1
        report = verify_scheme(R)
        assert not report.passed
        assert not report.axioms["identity"]
        assert "class 0" in report.witness
        assert report.verdict == "scheme-refuted"
        assert report.valencies is None

    def test_symmetry_break_witnessed(self):
        R = cyclic_classes(5).copy()
        R[0, 1] = 2
        report = verify_scheme(R)
        assert not report.axioms["symmetry"]
        assert "class" in report.witness

    def test_closure_failure_witnessed(self):
        # A path-like split of the 4-cycle pairs is symmetric with the
        # right diagonal but not closed.
        R = np.array(
            [
                [0, 1, 2, 1],
                [1, 0, 1, 2],
                [2, 1, 0, 2],
                [1, 2, 2, 0],
            ]
        )
        report = verify_scheme(R)
        assert report.axioms["identity"]
        assert report.axioms["symmetry"]
        assert not report.axioms["closure"]
        assert "A_" in report.witness

    def test_generic_partition_refuted(self):
        rng = np.random.default_rng(7)
        n = 8
        U = rng.integers(1, 3, size=(n, n))
        R = np.triu(U, 1)
        R = R + R.T
        report = verify_scheme(R)
        assert not report.passed
        assert report.witness is not None


class TestRelationsFromProfile:
    def test_octahedron_layout(self):
        R = octahedron_classes()
        assert np.array_equal(np.diag(R), np.zeros(6, dtype=np.int64))
        # class 1 = closest pairs (product 0), class 2 = antipodal (-3)
        counts = [(R == k).sum() for k in range(3)]
        assert counts == [6, 24, 6]

    def test_matches_relation_matrices(self):
        profile = inner_product_profile(cube())
        R = relations_from_profile(profile)
        mats = relation_matrices(R)
        assert len(mats) == 4
        assert np.array_equal(mats[0], np.eye(8, dtype=np.int64))
        total = sum(mats)
        assert np.array_equal(total, np.ones((8, 8), dtype=np.int64))


class TestEigenstructure:
    def test_octahedron_frozen(self):
        eig = bose_mesner_eigenstructure(octahedron_classes())
        assert eig.multiplicities == (1, 3, 2)
        expected_P = np.array(
            [
                [1.0, 4.0, 1.0],
                [1.0, 0.0, -1.0],
                [1.0, -2.0, 1.0],
            ]
        )
        assert np.allclose(eig.P, expected_P, atol=1e-8)

    def test_P_Q_inverse_pair(self):
        for classes in (octahedron_classes(), cube_classes(), cyclic_classes(6)):
            eig = bose_mesner_eigenstructure(classes)
            assert np.allclose(eig.P @ eig.Q, eig.n * np.eye(eig.d + 1), atol=1e-8)

    def test_first_row_is_valencies(self):
        eig = bose_mesner_eigenstructure(cube_classes())
        report = verify_scheme(cube_classes())
        assert np.allclose(eig.P[0], report.valencies)

    def test_multiplicities_sum_to_n(self):
        eig = bose_mesner_eigenstructure(cyclic_classes(7))
        assert sum(eig.multiplicities) == 7
        assert eig.multiplicities[0] == 1

    def test_idempotent_identities(self):
        eig = bose_mesner_eigenstructure(octahedron_classes())
        E = eig.idempotents
        n = eig.n
        assert np.allclose(E[0], np.ones((n, n)) / n, atol=1e-10)
        assert np.allclose(sum(E), np.eye(n), atol=1e-10)
        for i, Ei in enumerate(E):
            assert np.allclose(Ei @ Ei, Ei, atol=1e-10)
            for Ej in E[i + 1 :]:
                assert np.allclose(Ei @ Ej, 0.0, atol=1e-10)

    def test_relations_reconstruct_from_P(self):
        eig = bose_mesner_eigenstructure(cube_classes())
        A = relation_matrices(eig.relations)
        for i in range(eig.d + 1):
            rebuilt = sum(
                eig.P[j, i] * eig.idempotents[j] for j in range(eig.d + 1)
            )
            assert np.allclose(rebuilt, A[i], atol=1e-8)

    def test_refuted_partition_raises(self):
        R = cyclic_classes(5).copy()
        R[0, 1] = 2
        with pytest.raises(NotAPartitionError):
            bose_mesner_eigenstructure(R)


class TestKreinParameters:
    @pytest.mark.parametrize(
        "classes",
        [octahedron_classes(), cube_classes(), cyclic_classes(5), cyclic_classes(6)],
    )
    def test_nonnegative(self, classes):
        eig = bose_mesner_eigenstructure(classes)
        q = krein_parameters(eig)
        assert q.min() >= -1e-10

    def test_entrywise_product_expansion(self):
        # E_i o E_j = (1/n) sum_k q^k_ij E_k is the defining identity.
        eig = bose_mesner_eigenstructure(octahedron_classes())
        q = krein_parameters(eig)
        for i in range(eig.d + 1):
            for j in range(eig.d + 1):
                H = eig.idempotents[i] * eig.idempotents[j]
                rebuilt = sum(
                    q[k, i, j] * eig.idempotents[k] for k in range(eig.d + 1)
                ) / eig.n
                assert np.allclose(H, rebuilt, atol=1e-10)


class TestQPolyOrdering:
    def test_index_zero_never_generates(self):
        eig = bose_mesner_eigenstructure(octahedron_classes())
        result = qpoly_ordering(eig, 0)
        assert not result.exists
        assert "all-ones" in result.reason

    def test_octahedron_index_one_generates(self):
        eig = bose_mesner_eigenstructure(octahedron_classes())
        result = qpoly_ordering(eig, 1)
        assert result.exists
        assert result.order == (0, 1, 2)
        assert sorted(result.degrees) == [0, 1, 2]

    def test_octahedron_index_two_fails(self):
        # Q column 2 repeats a value on two classes, so no ordering.
        eig = bose_mesner_eigenstructure(octahedron_classes())
        result = qpoly_ordering(eig, 2)
        assert not result.exists
        assert "equal values" in result.reason

    def test_cube_index_one_generates(self):
        eig = bose_mesner_eigenstructure(cube_classes())
        result = qpoly_ordering(eig, 1)
        assert result.exists
        assert result.order == (0, 1, 2, 3)

    def test_out_of_range_index(self):
        eig = bose_mesner_eigenstructure(octahedron_classes())
        with pytest.raises(ValueError):
            qpoly_ordering(eig, 5)

    def test_result_dict(self):
        eig = bose_mesner_eigenstructure(octahedron_classes())
        d = qpoly_ordering(eig, 1).as_dict()
        assert d["exists"] is True
        assert d["order"] == [0, 1, 2]


class TestSphericalEmbedding:
    @pytest.mark.parametrize("classes", [octahedron_classes(), cube_classes()])
    def test_embedding_is_design(self, classes):
        eig = bose_mesner_eigenstructure(classes)
        X = spherical_embedding(eig, 1)
        assert X.shape == (eig.n, eig.multiplicities[1])
        report = check_two_design(X)
        assert report.passed

    def test_embedding_constant_on_classes(self):
        eig = bose_mesner_eigenstructure(octahedron_classes())
        X = spherical_embedding(eig, 1)
        P = X @ X.T
        for k in range(eig.d + 1):
            vals = P[eig.relations == k]
            assert np.allclose(vals, vals[0], atol=1e-8)

    def test_round_trip_recovers_relations(self):
        eig = bose_mesner_eigenstructure(cube_classes())
        X = spherical_embedding(eig, 1)
        profile = inner_product_profile(X)
        R = relations_from_profile(profile)
        # Same partition up to class numbering: compare as products.
        assert profile.s == eig.d
        decomp = harmonic_decomposition(X)
        assert decomp.degree == profile.s

    def test_index_zero_refused(self):
        eig = bose_mesner_eigenstructure(octahedron_classes())
        with pytest.raises(RankDeficientError):
            spherical_embedding(eig, 0)

    def test_out_of_range_refused(self):
        eig = bose_mesner_eigenstructure(octahedron_classes())
        with pytest.raises(ValueError):
            spherical_embedding(eig, 9)
