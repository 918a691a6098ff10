"""Tests for voxel bodies and their text encoding."""

import numpy as np
import pytest

from sja_auction.errors import InvalidInputError
from sja_auction.geometry import (
    SimBody,
    VoxelBody,
    boundary_cell_count,
    decode_rle,
    encode_rle,
    voxelize,
)
from tests.helpers.builders import box_body, staircase_body


class TestVoxelBodyBasics:
    """Counting, projections and slices."""

    def test_staircase_counts(self, square_staircase):
        """Test volume and projections of the 4-3-2-1 staircase."""
        body = square_staircase
        assert body.count == 10
        assert body.volume() == pytest.approx(10 / 16)
        assert body.projection_volumes() == pytest.approx([1.0, 1.0])

    def test_deficiency(self, square_staircase):
        """Test |A| - k * sum of projections."""
        assert square_staircase.deficiency(0.25) == pytest.approx(0.625 - 0.5)

    def test_rejects_non_positive_k(self, square_staircase):
        """Test k must be positive."""
        with pytest.raises(InvalidInputError):
            square_staircase.deficiency(0.0)

    def test_one_dimensional_projection(self):
        """Test a nonempty 1D body projects to a point of measure 1."""
        body = VoxelBody(np.array([True, True, False]), 0.5)
        assert body.projection_volume(0) == 1.0
        assert VoxelBody.empty(1, 3, 0.5).projection_volume(0) == 0.0

    def test_slice(self):
        """Test slicing fixes one coordinate."""
        body = box_body([2, 3, 1], grid=4)
        assert body.slice(0, 1).count == 3
        assert body.slice(0, 2).count == 0
        with pytest.raises(InvalidInputError):
            body.slice(0, 4)

    def test_projection_of_box(self):
        """Test projections of a box are its faces."""
        body = box_body([2, 3, 1], grid=4)
        assert body.projection(0).count == 3
        assert body.projection(1).count == 2
        assert body.projection(2).count == 6

    def test_rejects_ragged_shape(self):
        """Test every axis needs the same length."""
        with pytest.raises(InvalidInputError):
            VoxelBody(np.zeros((2, 3), dtype=bool), 1.0)

    def test_rejects_bad_cell_size(self):
        """Test the cell size must be positive."""
        with pytest.raises(InvalidInputError):
            VoxelBody(np.zeros((2, 2), dtype=bool), 0.0)


class TestSetOperations:
    """Union, intersection, inclusion and closures."""

    def test_union_and_intersection(self):
        """Test boolean set operations on the lattice."""
        a = box_body([2, 1], grid=3)
        b = box_body([1, 2], grid=3)
        assert a.union(b).count == 3
        assert a.intersection(b).count == 1
        assert a.intersection(b).issubset(a)
        assert not a.issubset(b)

    def test_incompatible_lattices(self):
        """Test operations need the same lattice."""
        with pytest.raises(InvalidInputError):
            box_body([1, 1], grid=3).union(box_body([1, 1], grid=4))

    def test_downward_closure(self):
        """Test the closure of a single cell is the box below it."""
        body = VoxelBody.empty(2, 4, 1.0)
        body.occupancy[2, 1] = True
        assert not body.is_downward_closed()
        closed = body.down_closure()
        assert closed.is_downward_closed()
        assert closed.count == 6

    def test_symmetric_closure(self):
        """Test the symmetric closure adds the transposed cells."""
        body = box_body([3, 1], grid=3)
        assert not body.is_symmetric()
        sym = body.symmetric_closure()
        assert sym.is_symmetric()
        assert sym.count == 5

    def test_staircase_is_closed_and_symmetric(self, square_staircase):
        """Test the staircase fixture shape."""
        assert square_staircase.is_downward_closed()
        assert square_staircase.is_symmetric()

    def test_width(self, square_staircase):
        """Test the extent from the origin."""
        assert square_staircase.width() == pytest.approx(1.0)
        assert VoxelBody.empty(2, 3, 1.0).width() == 0.0


class TestPoints:
    """Point location on the lattice."""

    def test_cell_of_uses_closed_upper_faces(self):
        """Test a point on a grid line belongs to the lower cell."""
        body = VoxelBody.empty(2, 4, 0.25)
        assert body.cell_of([0.3, 0.0]) == (1, 0)
        assert body.cell_of([0.25, 0.5]) == (0, 1)

    def test_contains_point(self, square_staircase):
        """Test membership through the cell index."""
        assert square_staircase.contains_point([0.5, 0.5])
        assert not square_staircase.contains_point([0.9, 0.9])
        assert not square_staircase.contains_point([2.0, 0.0])


class TestVoxelize:
    """Lattice approximations of SIM bodies."""

    def test_unit_square_is_full(self):
        """Test Lambda(1, 1) fills its lattice."""
        body = voxelize(SimBody(alphas=[1.0, 1.0]), 4)
        assert body.count == 16
        assert body.cell_size == pytest.approx(0.25)

    def test_cut_square_inner(self):
        """Test the inner rule keeps cells whose upper corner is inside."""
        body = voxelize(SimBody(alphas=[1.0, 2.0]), 4)
        assert body.count == 13
        assert body.volume() <= SimBody(alphas=[1.0, 2.0]).volume()

    def test_center_rule(self):
        """Test the centre rule keeps cells whose centre is inside."""
        body = voxelize(SimBody(alphas=[1.0, 2.0]), 4, rule="center")
        assert body.count == 15
        assert not body.occupancy[3, 3]

    def test_voxelized_body_is_closed_and_symmetric(self):
        """Test lattice bodies inherit the shape of the SIM body."""
        body = voxelize(SimBody(alphas=[1.0, 1.5, 2.0]), 8)
        assert body.is_downward_closed()
        assert body.is_symmetric()

    def test_unknown_rule(self):
        """Test only the inner and centre rules exist."""
        with pytest.raises(InvalidInputError):
            voxelize(SimBody(alphas=[1.0]), 4, rule="outer")

    def test_boundary_cells(self):
        """Test three cells straddle the cut of Lambda(1, 2) at grid 4."""
        assert boundary_cell_count(SimBody(alphas=[1.0, 2.0]), 4) == 3


class TestRunLengthEncoding:
    """The voxel text format."""

    def test_encoding_text(self):
        """Test header, dimension line and runs."""
        body = staircase_body([2, 1], grid=2, cell_size=0.5)
        text = encode_rle(body)
        lines = text.splitlines()
        assert lines[0] == "# voxel-body v1"
        assert lines[1] == "dim=2 grid=2 cell_size=0.5"
        assert lines[2] == "1x3 0x1"

    def test_decode_restores_body(self, square_staircase):
        """Test decoding gives back the same occupancy."""
        decoded = decode_rle(square_staircase.to_rle())
        assert np.array_equal(decoded.occupancy, square_staircase.occupancy)
        assert decoded.cell_size == square_staircase.cell_size

    def test_missing_header(self):
        """Test the header line is required."""
        with pytest.raises(InvalidInputError):
            decode_rle("dim=1 grid=2 cell_size=1.0\n1x2\n")

    def test_bad_token(self):
        """Test malformed runs are rejected."""
        with pytest.raises(InvalidInputError):
            decode_rle("# voxel-body v1\ndim=1 grid=2 cell_size=1.0\n1y2\n")

    def test_wrong_cell_total(self):
        """Test run lengths must cover the lattice."""
        with pytest.raises(InvalidInputError):
            decode_rle("# voxel-body v1\ndim=2 grid=2 cell_size=1.0\n1x3\n")
