"""Point set loading, inner-product profiles, and the 2-design check."""

import json

import numpy as np
import pytest

from excesskit import (
    AmbiguousClusteringError,
    DuplicatePointError,
    NonRectangularError,
    RadiusViolationError,
    ToleranceConfig,
    UnknownValueError,
    ZeroRowError,
    check_two_design,
    cross_polytope,
    cube,
    icosahedron,
    inner_product_profile,
    load_pointset,
    normalized_gram,
    octahedron,
    relation_matrix,
    simplex,
)
from excesskit.validation import as_point_matrix, rescale_rows

from conftest import oracle_profile, random_rotation


class TestTolerances:
    def test_defaults(self):
        tol = ToleranceConfig()
        assert (tol.cluster, tol.rank, tol.cert) == (1e-8, 1e-9, 1e-8)

    @pytest.mark.parametrize("bad", [0.0, -1e-9])
    def test_positivity_enforced(self, bad):
        with pytest.raises(ValueError):
            ToleranceConfig(cluster=bad)
        with pytest.raises(ValueError):
            ToleranceConfig(rank=bad)
        with pytest.raises(ValueError):
            ToleranceConfig(cert=bad)

    def test_scaled_cluster_floors_at_one(self):
        tol = ToleranceConfig(cluster=1e-8)
        assert tol.scaled_cluster(0.5) == 1e-8
        assert tol.scaled_cluster(3.0) == pytest.approx(3e-8)


class TestValidationHelpers:
    def test_ragged_rows_rejected(self):
        with pytest.raises(NonRectangularError):
            as_point_matrix([[1.0, 2.0], [3.0]])

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            as_point_matrix([[1.0, np.nan]])

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            as_point_matrix(np.empty((0, 3)))

    def test_rescale_rows(self):
        X = rescale_rows(np.array([[3.0, 4.0], [1.0, 0.0]]), 2.0)
        assert np.allclose((X**2).sum(axis=1), 2.0)

    def test_rescale_zero_row(self):
        with pytest.raises(ZeroRowError):
            rescale_rows(np.array([[0.0, 0.0]]), 2.0)


class TestLoadPointset:
    def doc(self, X, **extra):
        X = np.asarray(X, dtype=float)
        base = {
            "type": "pointset",
            "dimension": int(X.shape[1]),
            "points": X.tolist(),
        }
        base.update(extra)
        return base

    def test_mapping_file_and_text_sources_agree(self, tmp_path):
        doc = self.doc(octahedron())
        path = tmp_path / "octa.json"
        path.write_text(json.dumps(doc))
        from_map = load_pointset(doc)
        from_file = load_pointset(path)
        from_text = load_pointset(json.dumps(doc))
        assert np.array_equal(from_map, from_file)
        assert np.array_equal(from_map, from_text)

    def test_type_and_fields_required(self):
        with pytest.raises(ValueError):
            load_pointset({"type": "graph", "dimension": 2, "points": []})
        with pytest.raises(ValueError):
            load_pointset({"type": "pointset", "dimension": 2})

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            load_pointset(self.doc(octahedron(), dimension=4))

    def test_off_sphere_rejected(self):
        with pytest.raises(RadiusViolationError):
            load_pointset(self.doc(0.9 * octahedron()))

    def test_normalize_rescales_instead(self):
        X = load_pointset(self.doc(0.9 * octahedron(), normalize=True))
        assert np.allclose((X**2).sum(axis=1), 3.0)

    def test_normalize_argument_overrides_document(self):
        X = load_pointset(self.doc(0.9 * octahedron()), normalize=True)
        assert np.allclose((X**2).sum(axis=1), 3.0)

    def test_duplicate_rows_rejected(self):
        X = np.vstack([octahedron(), octahedron()[:1]])
        with pytest.raises(DuplicatePointError):
            load_pointset(self.doc(X))

    def test_verify_false_admits_anything(self):
        X = load_pointset(self.doc(0.5 * octahedron()), verify=False)
        assert X.shape == (6, 3)


class TestProfileOracles:
    """Clustered profiles against per-pair enumeration."""

    @pytest.mark.parametrize(
        "name, builder",
        [
            ("octahedron", octahedron),
            ("cube", cube),
            ("icosahedron", icosahedron),
            ("simplex-3", lambda: simplex(3)),
            ("cross-5", lambda: cross_polytope(5)),
        ],
    )
    def test_matches_pair_enumeration(self, name, builder):
        X = builder()
        profile = inner_product_profile(X)
        values, counts = oracle_profile(X)
        assert profile.s == values.size
        assert np.allclose(profile.values, values, atol=1e-9)
        assert np.array_equal(profile.counts, counts)

    def test_octahedron_frozen(self):
        profile = inner_product_profile(octahedron())
        assert profile.values.tolist() == pytest.approx([-3.0, 0.0], abs=1e-12)
        assert profile.counts.tolist() == [6, 24]
        assert profile.radius_sq == pytest.approx(3.0, abs=1e-12)

    def test_cube_frozen(self):
        profile = inner_product_profile(cube())
        assert profile.values.tolist() == [-3.0, -1.0, 1.0]
        assert profile.counts.tolist() == [8, 24, 24]

    def test_icosahedron_irrational_values(self):
        profile = inner_product_profile(icosahedron())
        r5 = 3.0 / np.sqrt(5.0)
        assert profile.s == 3
        assert np.allclose(profile.values, [-3.0, -r5, r5])
        assert profile.counts.tolist() == [12, 60, 60]

    @pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
    def test_simplex_single_value(self, m):
        profile = inner_product_profile(simplex(m))
        assert profile.values.tolist() == pytest.approx([-1.0])
        assert profile.counts.tolist() == [m * (m + 1)]


class TestProfileStructure:
    def test_snapped_products_uses_representatives(self):
        rng = np.random.default_rng(3)
        Q = random_rotation(rng, 3)
        X = octahedron() @ Q + rng.normal(scale=1e-12, size=(6, 3))
        profile = inner_product_profile(X)
        N = profile.snapped_products()
        assert set(np.round(np.unique(N), 9)) == {-3.0, 0.0, 3.0}
        assert np.allclose(N, X @ X.T, atol=1e-10)

    def test_relations_partition_everything(self):
        profile = inner_product_profile(cube())
        total = sum(profile.all_relations())
        assert np.array_equal(total, np.ones((8, 8), dtype=np.int64))
        assert np.array_equal(
            profile.relation(profile.s), np.eye(8, dtype=np.int64)
        )

    def test_relation_matrix_by_value(self):
        profile = inner_product_profile(octahedron())
        antipodal = relation_matrix(profile, -3.0)
        assert antipodal.sum() == 6
        assert np.array_equal(
            relation_matrix(profile, 3.0), np.eye(6, dtype=np.int64)
        )
        with pytest.raises(UnknownValueError):
            relation_matrix(profile, 1.5)

    def test_value_index_unknown(self):
        profile = inner_product_profile(octahedron())
        with pytest.raises(UnknownValueError):
            profile.value_index(-1.0)

    def test_duplicate_points_raise(self):
        X = np.vstack([octahedron(), octahedron()[:1]])
        with pytest.raises(DuplicatePointError):
            inner_product_profile(X)

    def test_ambiguous_gap_raises(self):
        # Two product values separated by 1.5 * eps: too close to split,
        # too far to merge.
        tol = ToleranceConfig(cluster=1e-3)
        eps = tol.scaled_cluster(2.0)
        base = np.pi / 2
        shift = base + 0.75 * eps  # inner products differ by ~1.5 eps
        X = np.sqrt(2.0) * np.array(
            [
                [1.0, 0.0],
                [np.cos(base), np.sin(base)],
                [np.cos(2 * base), np.sin(2 * base)],
                [np.cos(2 * base + shift), np.sin(2 * base + shift)],
            ]
        )
        with pytest.raises(AmbiguousClusteringError):
            inner_product_profile(X, tol)


class TestTwoDesignCheck:
    @pytest.mark.parametrize(
        "builder",
        [octahedron, cube, icosahedron, lambda: simplex(4), lambda: cross_polytope(2)],
    )
    def test_fixture_designs_verified(self, builder):
        X = builder()
        report = check_two_design(X)
        assert report.passed
        assert report.verdict == "design-verified"
        assert all(report.conditions.values())
        assert report.rank_of_gram == X.shape[1]

    def test_report_serializes(self):
        d = check_two_design(octahedron()).as_dict()
        assert d["verdict"] == "design-verified"
        assert set(d["residuals"]) == {
            "equal_norms", "min_separation", "centered", "projector",
        }

    def test_unequal_norms_detected(self):
        X = octahedron()
        X[0] *= 1.01
        report = check_two_design(X)
        assert not report.conditions["equal_norms"]
        assert report.verdict == "design-refuted"

    def test_uncentered_detected(self):
        # Drop one point of the simplex: norms still equal, sum nonzero.
        X = simplex(3)[:-1]
        report = check_two_design(X)
        assert report.conditions["equal_norms"]
        assert not report.conditions["centered"]

    def test_cuboid_fails_projector_only(self):
        corners = np.array(
            [[sx, sy, 2 * sz] for sx in (1, -1) for sy in (1, -1) for sz in (1, -1)],
            dtype=float,
        )
        X = rescale_rows(corners, 3.0)
        report = check_two_design(X)
        assert report.conditions["equal_norms"]
        assert report.conditions["centered"]
        assert not report.conditions["projector"]
        assert report.projector_residual > 1e-3

    def test_duplicate_breaks_separation(self):
        X = np.vstack([octahedron(), octahedron()[:1]])
        report = check_two_design(X)
        assert not report.conditions["min_separation"]

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_random_sets_refuted(self, seed):
        rng = np.random.default_rng(seed)
        X = rescale_rows(rng.standard_normal((10, 3)), 3.0)
        report = check_two_design(X)
        assert not report.passed
        assert report.verdict == "design-refuted"

    def test_rotation_invariance(self):
        rng = np.random.default_rng(11)
        Q = random_rotation(rng, 3)
        report = check_two_design(cube() @ Q)
        assert report.passed

    def test_gram_is_projector_identity(self):
        G = normalized_gram(icosahedron())
        assert np.allclose(G @ G, G, atol=1e-12)
        assert np.allclose(G.sum(axis=1), 0.0, atol=1e-12)
