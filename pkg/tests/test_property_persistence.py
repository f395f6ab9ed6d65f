"""
Property-based tests for the persistence engines.
"""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from phconnect.filtration import build_vr
from phconnect.geometry import PointCloud
from phconnect.persistence import (
    ReductionMatrix,
    merge_set,
    persistence_unionfind,
    reduce_parallel,
)
from tests.utils.assertions import (
    assert_engines_agree,
    assert_matches_mst,
    assert_valid_barcode,
)
from tests.utils.generators import (
    distinct_point_clouds,
    dyadic_clouds,
    generic_clouds,
    grid_clouds,
    lattice_clouds,
)


def merge_distances(cloud: PointCloud) -> list:
    return sorted(event.eps for event in persistence_unionfind(build_vr(cloud)).events)


@pytest.mark.property
@given(cloud=generic_clouds(max_points=24))
def test_property_engines_agree_on_generic_clouds(cloud):
    """Property: union-find, standard and parallel reduction give the same pairing."""
    assert_engines_agree(build_vr(cloud))


@pytest.mark.property
@given(cloud=lattice_clouds())
def test_property_engines_agree_with_tied_distances(cloud):
    """Property: the lexicographic tie-break makes all engines agree on ties too."""
    assert_engines_agree(build_vr(cloud))


@pytest.mark.property
@given(cloud=st.one_of(generic_clouds(), lattice_clouds()))
def test_property_barcode_has_one_event_per_merge(cloud):
    """Property: b points produce b - 1 finite bars and one essential class."""
    assert_valid_barcode(persistence_unionfind(build_vr(cloud)), cloud.size)


@pytest.mark.property
@given(cloud=distinct_point_clouds())
def test_property_merge_distances_are_mst_weights(cloud):
    """Property: merge distances equal the minimum spanning tree weights."""
    assert_matches_mst(persistence_unionfind(build_vr(cloud)), cloud)


@pytest.mark.property
@given(cloud=grid_clouds())
def test_property_uniform_grid_merges_at_spacing(cloud):
    """Property: every merge on a uniform 1-D grid happens at the grid spacing."""
    spacing = cloud.distance(0, 1)
    assert [eps for eps, _ in merge_set(persistence_unionfind(build_vr(cloud)))] == [
        spacing
    ] * (cloud.size - 1)


@pytest.mark.property
@given(cloud=generic_clouds(), data=st.data())
def test_property_merge_distances_ignore_point_order(cloud, data):
    """Property: permuting the points keeps the multiset of merge distances."""
    order = data.draw(st.permutations(range(cloud.size)))
    assert merge_distances(cloud.subset(order)) == merge_distances(cloud)


@pytest.mark.property
@given(cloud=dyadic_clouds(), shift=st.integers(min_value=-16, max_value=16))
def test_property_merge_distances_ignore_translation(cloud, shift):
    """Property: translating by a dyadic vector keeps the merge distances."""
    moved = cloud.with_points(cloud.points + shift / 4.0)
    assert merge_distances(moved) == merge_distances(cloud)


@pytest.mark.property
@given(cloud=generic_clouds())
def test_property_merge_distances_scale_linearly(cloud):
    """Property: doubling the cloud doubles every merge distance."""
    assert merge_distances(cloud.scaled(2.0)) == [2.0 * eps for eps in merge_distances(cloud)]


@pytest.mark.property
@given(cloud=generic_clouds(max_points=20))
def test_property_parallel_rounds_are_bounded(cloud):
    """Property: every round lowers each target's low, so rounds never exceed the rows."""
    result = reduce_parallel(ReductionMatrix.from_complex(build_vr(cloud)))
    assert result.iterations <= cloud.size
    assert result.matrix.is_reduced()
    nonzero_edges = sum(1 for low in result.matrix.lows() if low >= 0)
    assert nonzero_edges == cloud.size - 1
    assert np.all(np.asarray(result.matrix.lows()) < cloud.size)
