"""
Tests for point clouds, pairwise distances and CSV input/output.
"""

from pathlib import Path

import numpy as np
import pytest
from hypothesis import given

from phconnect.exceptions import DataError, InvalidInputError
from phconnect.geometry import (
    Edge,
    Norm,
    PointCloud,
    distances_unique,
    min_distance_gap,
    pair_distances,
    pairwise_distances,
)
from phconnect.geometry import io as geometry_io
from tests.utils.generators import generic_clouds


class TestPointCloud:
    """Test point cloud construction and validation."""

    @pytest.mark.unit
    def test_flat_sequence_is_one_dimensional(self):
        cloud = PointCloud.from_points([0.0, 1.0, 3.0])
        assert (cloud.size, cloud.dimension) == (3, 1)
        assert cloud.norm is Norm.L1

    @pytest.mark.unit
    def test_points_are_read_only(self):
        cloud = PointCloud.from_points([[0.0, 1.0], [2.0, 3.0]], "l2")
        with pytest.raises(ValueError):
            cloud.points[0, 0] = 5.0

    @pytest.mark.unit
    @pytest.mark.parametrize(
        "points",
        [
            [[0.0, 1.0], [2.0]],
            [],
            [[np.nan, 1.0]],
            [[np.inf]],
            np.zeros((2, 0)),
            np.zeros((2, 2, 2)),
        ],
    )
    def test_invalid_points_rejected(self, points):
        with pytest.raises(InvalidInputError):
            PointCloud.from_points(points)

    @pytest.mark.unit
    def test_single_point_is_valid(self):
        cloud = PointCloud.from_points([[1.0, 2.0]])
        assert cloud.size == 1
        assert cloud.distance_matrix.shape == (1, 1)

    @pytest.mark.unit
    def test_subset_and_scaling_keep_norm(self):
        cloud = PointCloud.from_points([[0.0], [1.0], [3.0]], Norm.L2)
        assert cloud.subset([2, 0]).points.tolist() == [[3.0], [0.0]]
        assert cloud.scaled(2.0).norm is Norm.L2
        assert cloud.scaled(2.0).distance(0, 2) == 6.0


class TestDistances:
    """Test norms and filtration ordering of pairs."""

    @pytest.mark.unit
    def test_l1_and_l2_distances(self):
        points = [[0.0, 0.0], [3.0, 4.0]]
        assert PointCloud.from_points(points, Norm.L1).distance(0, 1) == 7.0
        assert PointCloud.from_points(points, Norm.L2).distance(0, 1) == 5.0

    @pytest.mark.unit
    def test_distance_matrix_symmetric_with_zero_diagonal(self, rng):
        cloud = PointCloud(rng.standard_normal((6, 3)), Norm.L2)
        matrix = cloud.distance_matrix
        np.testing.assert_array_equal(matrix, matrix.T)
        np.testing.assert_array_equal(np.diag(matrix), np.zeros(6))

    @pytest.mark.unit
    def test_pairs_sorted_by_distance_then_index(self):
        # distances: {0,1}=1, {1,2}=1, {0,2}=2
        cloud = PointCloud.from_points([0.0, 1.0, 2.0])
        rows, cols, distances = pair_distances(cloud)
        assert list(zip(rows.tolist(), cols.tolist())) == [(0, 1), (1, 2), (0, 2)]
        assert distances.tolist() == [1.0, 1.0, 2.0]

    @pytest.mark.unit
    def test_pairwise_distances_groups_equal_values(self):
        cloud = PointCloud.from_points([0.0, 1.0, 2.0])
        sequence = pairwise_distances(cloud)
        assert sequence.values.tolist() == [1.0, 2.0]
        assert sequence.pairs_by_value == ((Edge(0, 1), Edge(1, 2)), (Edge(0, 2),))
        assert sequence.pair_count == 3
        assert sequence.gaps().tolist() == [1.0]

    @pytest.mark.unit
    def test_pairwise_distances_of_single_point_is_empty(self):
        assert len(pairwise_distances(PointCloud.from_points([[1.0]]))) == 0

    @pytest.mark.unit
    def test_uniqueness_report(self, path_cloud):
        assert distances_unique(path_cloud)
        tied = distances_unique(PointCloud.from_points([0.0, 1.0, 2.0]))
        assert not tied
        assert tied.colliding_pairs == {Edge(0, 1), Edge(1, 2)}

    @pytest.mark.unit
    def test_uniqueness_respects_tolerance(self):
        cloud = PointCloud.from_points([0.0, 1.0, 2.0 + 1e-9])
        assert distances_unique(cloud, tolerance=1e-12)
        assert not distances_unique(cloud, tolerance=1e-6)

    @pytest.mark.unit
    def test_min_distance_gap(self, path_cloud):
        # distances 1, 2, 3
        assert min_distance_gap(path_cloud) == 1.0
        assert min_distance_gap(PointCloud.from_points([0.0, 1.0])) == float("inf")


class TestCsvIo:
    """Test CSV readers and writers."""

    @pytest.mark.unit
    def test_point_cloud_round_trip_is_exact(self, tmp_path: Path, rng):
        points = rng.standard_normal((5, 3)) * 1e3
        path = geometry_io.write_point_cloud(tmp_path / "cloud.csv", points)
        cloud = geometry_io.read_point_cloud(path)
        np.testing.assert_array_equal(cloud.points, points)

    @pytest.mark.unit
    def test_header_line_is_skipped(self, tmp_path: Path):
        path = tmp_path / "cloud.csv"
        path.write_text("x,y\n1,2\n3,4\n", encoding="utf-8")
        cloud = geometry_io.read_point_cloud(path, header=True, norm="l2")
        assert cloud.points.tolist() == [[1.0, 2.0], [3.0, 4.0]]
        assert cloud.norm is Norm.L2

    @pytest.mark.unit
    @pytest.mark.parametrize(
        "content",
        ["", "1,2\n3\n", "1,abc\n", "1,2\n3,4,5\n"],
    )
    def test_malformed_files_raise_data_error(self, tmp_path: Path, content):
        path = tmp_path / "bad.csv"
        path.write_text(content, encoding="utf-8")
        with pytest.raises(DataError):
            geometry_io.read_point_cloud(path)

    @pytest.mark.unit
    def test_missing_file_raises_data_error(self, tmp_path: Path):
        with pytest.raises(DataError):
            geometry_io.read_point_cloud(tmp_path / "absent.csv")

    @pytest.mark.unit
    def test_labeled_file(self, tmp_path: Path):
        path = tmp_path / "labeled.csv"
        path.write_text("0.5,1.5,0\n2.5,3.5,1\n", encoding="utf-8")
        features, labels = geometry_io.read_labeled(path)
        assert features.tolist() == [[0.5, 1.5], [2.5, 3.5]]
        assert labels.tolist() == [0, 1]
        assert labels.dtype == np.int64

    @pytest.mark.unit
    def test_fractional_labels_rejected(self, tmp_path: Path):
        path = tmp_path / "labeled.csv"
        path.write_text("0.5,0.5\n", encoding="utf-8")
        with pytest.raises(DataError):
            geometry_io.read_labeled(path)

    @pytest.mark.unit
    def test_scores_round_trip(self, tmp_path: Path):
        path = geometry_io.write_scores(tmp_path / "scores.csv", [3, 0, 7])
        assert geometry_io.read_scores(path).tolist() == [3, 0, 7]
        floats = geometry_io.write_scores(tmp_path / "f.csv", [0.1, 1 / 3])
        assert geometry_io.read_scores(floats).tolist() == [0.1, 1 / 3]

    @pytest.mark.unit
    def test_negative_labels(self, tmp_path: Path):
        path = tmp_path / "labeled.csv"
        path.write_text("0.5,-1\n2.5,1\n", encoding="utf-8")
        _, labels = geometry_io.read_labeled(path)
        assert labels.tolist() == [-1, 1]


@pytest.mark.property
@given(cloud=generic_clouds(max_points=12))
def test_property_triangle_inequality_within_ulps(cloud):
    """Property: d(i, k) <= d(i, j) + d(j, k) up to 8 ulps for every triple."""
    d = cloud.distance_matrix
    detour = d[:, :, None] + d[None, :, :]
    direct = np.broadcast_to(d[:, None, :], detour.shape)
    assert np.all(direct <= detour + 8 * np.spacing(detour))


@pytest.mark.property
@given(cloud=generic_clouds(max_points=12))
def test_property_distances_are_exactly_symmetric(cloud):
    """Property: the distance matrix equals its transpose bit for bit."""
    np.testing.assert_array_equal(cloud.distance_matrix, cloud.distance_matrix.T)
