"""
Tests for the Vietoris-Rips 1-skeleton filtration.
"""

import pytest

from phconnect.exceptions import InvalidInputError
from phconnect.filtration import (
    FilteredEdge,
    build_vr,
    complex_at_radius,
    complex_from_json,
    complex_to_json,
)
from phconnect.geometry import Edge, Norm, PointCloud


@pytest.mark.unit
def test_edges_in_filtration_order(path_cloud):
    complex_ = build_vr(path_cloud)
    assert complex_.vertex_count == 3
    assert complex_.edges == (
        FilteredEdge(0, 1, 1.0),
        FilteredEdge(1, 2, 2.0),
        FilteredEdge(0, 2, 3.0),
    )
    assert complex_.filtration_radii.tolist() == [0.5, 1.0, 1.5]


@pytest.mark.unit
def test_ties_break_lexicographically():
    # unit square under L1: four sides tie at 1, diagonals tie at 2
    cloud = PointCloud.from_points([[0, 0], [1, 0], [0, 1], [1, 1]], Norm.L1)
    pairs = [(edge.i, edge.j) for edge in build_vr(cloud).edges]
    assert pairs == [(0, 1), (0, 2), (1, 3), (2, 3), (0, 3), (1, 2)]


@pytest.mark.unit
def test_single_point_has_no_edges():
    complex_ = build_vr(PointCloud.from_points([[0.0, 0.0]]))
    assert complex_.edges == ()
    assert complex_at_radius(complex_, 10.0) == ([0], [])


@pytest.mark.unit
def test_complex_at_radius(path_cloud):
    complex_ = build_vr(path_cloud)
    assert complex_at_radius(complex_, 0.0) == ([0, 1, 2], [])
    assert complex_at_radius(complex_, 0.5) == ([0, 1, 2], [Edge(0, 1)])
    assert complex_at_radius(complex_, 1.2) == ([0, 1, 2], [Edge(0, 1), Edge(1, 2)])
    assert len(complex_at_radius(complex_, 100.0)[1]) == 3


@pytest.mark.unit
def test_negative_radius_rejected(path_cloud):
    with pytest.raises(InvalidInputError):
        complex_at_radius(build_vr(path_cloud), -0.1)


@pytest.mark.unit
def test_columns_follow_vertices(path_cloud):
    complex_ = build_vr(path_cloud)
    assert complex_.column_count == 6
    assert complex_.edge_column(0) == 3
    assert complex_.column_edge(4) == FilteredEdge(1, 2, 2.0)
    with pytest.raises(InvalidInputError):
        complex_.column_edge(1)


@pytest.mark.unit
def test_json_dump(path_cloud):
    complex_ = build_vr(path_cloud)
    text = complex_to_json(complex_)
    assert '"vertices": [0, 1, 2]' in text
    assert complex_from_json(text) == complex_
