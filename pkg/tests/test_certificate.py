import itertools
import json
from collections import defaultdict

import pytest

from gridperc.certificate import (
    audit_percolating_set,
    build_context,
    certificate_to_dict,
    certificate_vector,
    certified_lower_bound,
    edge_coefficient,
    project,
    projection_component,
)
from gridperc.exact import matrix_rank
from gridperc.grid import (
    GridSpec,
    decode_vertex,
    encode_vertex,
    enumerate_edges,
    extremal_set,
    extremal_size,
    vertices,
)

SPEC_3222 = GridSpec.cube(3, 2, 2, 2)
SPEC_3232 = GridSpec.cube(3, 2, 3, 2)
SPEC_INHOM = GridSpec((3, 4), (2, 3), 2)


def basis_vector(ctx, v, scale=1):
    out = [0] * ctx.u_size
    out[ctx.u_index[v]] = scale
    return out


class TestProject:
    def test_single_axis(self):
        assert project(SPEC_3222, (2, 3), (1,), (1,)) == (1, 3)

    def test_two_axes(self):
        assert project(SPEC_3222, (3, 3), (1, 2), (1, 1)) == (1, 1)

    def test_middle_axis(self):
        spec = GridSpec.cube(2, 3, 2, 1)
        assert project(spec, (1, 1, 2), (2,), (2,)) == (1, 2, 2)

    def test_order_independent(self):
        a = project(SPEC_INHOM, (3, 4), (1, 2), (2, 1))
        b = project(SPEC_INHOM, (3, 4), (2, 1), (1, 2))
        assert a == b == (2, 1)

    def test_errors(self):
        with pytest.raises(ValueError):
            project(SPEC_3222, (1, 1), (1, 1), (2, 2))
        with pytest.raises(ValueError):
            project(SPEC_3222, (1, 1), (1,), (4,))
        with pytest.raises(ValueError):
            project(SPEC_3222, (1, 1), (3,), (1,))


class TestProjectionComponent:
    def test_thickness_two_collapses_to_unit_projection(self):
        ctx = build_context(SPEC_3222)
        assert projection_component((2, 3), (1,), ctx) == basis_vector(ctx, (1, 3))

    def test_power_row_weights(self):
        ctx = build_context(SPEC_3232)
        expected = [0] * ctx.u_size
        expected[ctx.u_index[(1, 2)]] = 1
        expected[ctx.u_index[(2, 2)]] = 3
        assert projection_component((3, 2), (1,), ctx) == expected

    def test_identity_row_is_fixed_point(self):
        ctx = build_context(SPEC_3232)
        assert projection_component((2, 2), (1,), ctx) == basis_vector(ctx, (2, 2))

    def test_support_stays_in_extremal_set(self):
        for spec in (SPEC_3222, SPEC_3232, SPEC_INHOM, GridSpec.cube(2, 3, 2, 2)):
            ctx = build_context(spec)
            members = set(ctx.u_vertices)
            p = spec.d - spec.r + 1
            for v in vertices(spec):
                for axes in itertools.combinations(range(1, spec.d + 1), p):
                    small = [range(1, spec.thick[k - 1]) for k in axes]
                    for js in itertools.product(*small):
                        image = project(spec, v, axes, js)
                        assert spec.large_count(image) <= spec.r - 1
                        assert image in members

    def test_wrong_axis_count(self):
        ctx = build_context(SPEC_3222)
        with pytest.raises(ValueError):
            projection_component((1, 1), (1, 2), ctx)


class TestCertificateVector:
    def test_interior_vertex(self):
        ctx = build_context(SPEC_3222)
        expected = [0] * ctx.u_size
        expected[ctx.u_index[(1, 2)]] = 1
        expected[ctx.u_index[(2, 1)]] = 1
        assert certificate_vector((2, 2), ctx) == expected

    def test_origin_counts_small_coordinates(self):
        ctx = build_context(SPEC_3222)
        assert certificate_vector((1, 1), ctx) == basis_vector(ctx, (1, 1), scale=2)

    def test_boundary_vertex(self):
        ctx = build_context(SPEC_3222)
        expected = [0] * ctx.u_size
        expected[ctx.u_index[(1, 1)]] = 1
        expected[ctx.u_index[(3, 1)]] = 1
        assert certificate_vector((3, 1), ctx) == expected

    def test_extremal_vertices_have_positive_own_coefficient(self):
        for spec in (SPEC_3222, SPEC_3232, SPEC_INHOM, GridSpec.cube(4, 3, 3, 2)):
            ctx = build_context(spec)
            for v in ctx.u_vertices:
                vec = certificate_vector(v, ctx)
                assert vec[ctx.u_index[v]] > 0
                assert all(x >= 0 for x in vec)


class TestEdgeCoefficient:
    def test_unit_square_coefficients(self):
        ctx = build_context(SPEC_3222)
        edges = [e for e in enumerate_edges(SPEC_3222, "K") if e.values == ((2, 3), (1, 2))]
        assert len(edges) == 1
        edge = edges[0]
        assert edge_coefficient(edge, (2, 1), ctx) == 1
        assert edge_coefficient(edge, (3, 1), ctx) == -1

    def test_thickness_two_signs_alternate(self):
        ctx = build_context(SPEC_3222)
        for edge in enumerate_edges(SPEC_3222, "K"):
            for v in edge.vertices():
                lam = edge_coefficient(edge, v, ctx)
                assert lam in (-1, 1)
                # sign alternates with the positions of the coordinates
                pos = sum(vals.index(v[axis - 1]) for axis, vals in zip(edge.varying, edge.values))
                assert lam == (-1) ** (len(edge.varying) + pos)

    def test_nonzero_everywhere(self):
        for spec in (SPEC_3232, SPEC_INHOM):
            ctx = build_context(spec)
            for edge in enumerate_edges(spec, "K"):
                for v in edge.vertices():
                    assert edge_coefficient(edge, v, ctx) != 0

    def test_vertex_outside_edge(self):
        ctx = build_context(SPEC_3222)
        edge = next(iter(enumerate_edges(SPEC_3222, "K")))
        with pytest.raises(ValueError):
            edge_coefficient(edge, (3, 3), ctx)


class TestDependencySums:
    @pytest.mark.parametrize("spec", [SPEC_3222, SPEC_3232, SPEC_INHOM, GridSpec.cube(2, 3, 2, 2)])
    def test_per_projection_sums_vanish(self, spec):
        ctx = build_context(spec)
        p = spec.d - spec.r + 1
        for edge in enumerate_edges(spec, "K"):
            verts = list(edge.vertices())
            lam = [edge_coefficient(edge, v, ctx) for v in verts]
            for axes in itertools.combinations(range(1, spec.d + 1), p):
                total = [0] * ctx.u_size
                for v, c in zip(verts, lam):
                    for i, x in enumerate(projection_component(v, axes, ctx)):
                        total[i] += c * x
                assert not any(total)

    def test_line_sums_vanish(self):
        # finer cancellation: within an edge, the sum over each line along a
        # projected varying axis is already zero
        for spec in (SPEC_3232, GridSpec.cube(2, 3, 2, 2)):
            ctx = build_context(spec)
            p = spec.d - spec.r + 1
            for edge in enumerate_edges(spec, "K"):
                verts = list(edge.vertices())
                for axes in itertools.combinations(range(1, spec.d + 1), p):
                    shared = [k for k in axes if k in edge.varying]
                    assert shared  # p + r > d forces an overlap
                    for k in shared:
                        lines = defaultdict(list)
                        for v in verts:
                            key = tuple(x for i, x in enumerate(v, start=1) if i != k)
                            lines[key].append(v)
                        expected_lines = edge.num_vertices() // spec.thick[k - 1]
                        assert len(lines) == expected_lines
                        for line in lines.values():
                            total = [0] * ctx.u_size
                            for v in line:
                                c = edge_coefficient(edge, v, ctx)
                                for i, x in enumerate(projection_component(v, axes, ctx)):
                                    total[i] += c * x
                            assert not any(total)


class TestCertifiedLowerBound:
    def test_small_square(self):
        cert = certified_lower_bound(SPEC_3222, "K")
        assert cert.lower_bound == 5
        assert cert.verified_span and cert.verified_dependencies

    def test_cube_rank_two(self):
        cert = certified_lower_bound(GridSpec.cube(2, 3, 2, 2), "K")
        assert cert.lower_bound == 4

    def test_inhomogeneous(self):
        cert = certified_lower_bound(SPEC_INHOM, "K")
        assert cert.lower_bound == 8

    def test_interval_family_request(self):
        cert = certified_lower_bound(SPEC_3222, "P")
        assert cert.lower_bound == 5
        assert cert.context.family == "P"

    @pytest.mark.parametrize(
        "spec",
        [SPEC_3222, SPEC_3232, SPEC_INHOM, GridSpec.cube(2, 3, 2, 1), GridSpec.cube(4, 2, 3, 1)],
    )
    def test_matches_formula_and_set(self, spec):
        cert = certified_lower_bound(spec, "K")
        assert cert.lower_bound == extremal_size(spec) == len(extremal_set(spec))

    def test_span_rank_equals_basis_size(self):
        for spec in (SPEC_3222, SPEC_3232, SPEC_INHOM):
            ctx = build_context(spec)
            rows = [certificate_vector(decode_vertex(spec, i), ctx) for i in range(spec.num_vertices)]
            assert matrix_rank(rows) == ctx.u_size

    def test_parallel_verification(self):
        cert = certified_lower_bound(SPEC_3232, "K", jobs=2)
        assert cert.lower_bound == 8

    def test_jobs_validation(self):
        with pytest.raises(ValueError):
            certified_lower_bound(SPEC_3222, "K", jobs=0)

    def test_vector_lookup(self):
        cert = certified_lower_bound(SPEC_3222, "K")
        assert cert.vector_for((1, 1))[cert.context.u_index[(1, 1)]] == 2


class TestAudit:
    def test_extremal_set_passes(self):
        cert = certified_lower_bound(SPEC_3222, "K")
        report = audit_percolating_set(cert, extremal_set(SPEC_3222))
        assert report.percolated
        assert report.seed_rank == 5
        assert report.all_steps_in_span
        assert report.ok
        assert len(report.steps_in_span) == 4

    def test_full_vertex_set(self):
        cert = certified_lower_bound(SPEC_3222, "K")
        report = audit_percolating_set(cert, list(vertices(SPEC_3222)))
        assert report.percolated
        assert report.seed_rank == 5
        assert report.steps_in_span == ()
        assert report.ok

    def test_removals_fail_to_percolate(self):
        cert = certified_lower_bound(SPEC_3222, "K")
        u = extremal_set(SPEC_3222)
        for drop in u:
            report = audit_percolating_set(cert, [v for v in u if v != drop])
            assert not report.percolated
            assert not report.ok

    def test_interval_family_audit(self):
        cert = certified_lower_bound(SPEC_3222, "K")
        report = audit_percolating_set(cert, extremal_set(SPEC_3222), family="P")
        assert report.ok

    def test_seed_rank_bounds_any_percolating_set(self):
        cert = certified_lower_bound(GridSpec.cube(2, 3, 2, 2), "K")
        # a different minimal percolating set (a vertex plus its neighbours):
        # its vectors must still have full rank
        other = [(2, 2, 2), (1, 2, 2), (2, 1, 2), (2, 2, 1)]
        report = audit_percolating_set(cert, other)
        assert report.percolated
        assert report.seed_rank == cert.lower_bound == 4
        assert report.ok


class TestSerialization:
    def test_schema(self):
        cert = certified_lower_bound(SPEC_3222, "K")
        data = certificate_to_dict(cert)
        assert data["spec"] == {"dims": [3, 3], "thick": [2, 2], "r": 2}
        assert data["family"] == "K"
        assert data["axisMatrices"] == [[[1], [1], [1]], [[1], [1], [1]]]
        assert data["lowerBound"] == 5
        assert data["verifiedSpan"] is True
        assert data["verifiedDependencies"] is True
        assert data["uSize"] == 5
        assert "fVectors" not in data
        json.dumps(data)

    def test_f_vector_strings(self):
        cert = certified_lower_bound(SPEC_3222, "K")
        data = certificate_to_dict(cert, include_f_vectors=True)
        assert len(data["fVectors"]) == 9
        origin = data["fVectors"][encode_vertex(SPEC_3222, (1, 1))]
        assert origin == ["2", "0", "0", "0", "0"]

    def test_byte_reproducible(self):
        first = json.dumps(certificate_to_dict(certified_lower_bound(SPEC_INHOM, "K"), True))
        second = json.dumps(certificate_to_dict(certified_lower_bound(SPEC_INHOM, "K"), True))
        assert first == second
