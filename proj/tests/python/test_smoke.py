import math

import pytest

import pdspace


def test_plane_distances():
    space = pdspace.Space.plane()
    a = pdspace.Diagram(space, [[0, 4]])
    b = pdspace.Diagram(space, [[1, 5]])
    assert pdspace.bottleneck(a, b, space) == 1.0
    assert pdspace.wasserstein(a, pdspace.Diagram(space), 2, space) == 2.0
    assert pdspace.wasserstein(a, b, math.inf, space) == 1.0
    value, matching = pdspace.bottleneck(a, b, space, matching=True)
    assert value == 1.0
    assert matching["pairs"][0]["left"] == [0.0, 4.0]


def test_solver_matches_brute_force():
    space = pdspace.Space.half_line()
    a = pdspace.Diagram(space, [[3], [4]])
    b = pdspace.Diagram(space, [[5]])
    assert pdspace.wasserstein(a, b, 1, space) == 4.0
    assert pdspace.brute_force(a, b, 1, space) == 4.0


def test_diagram_canonical_form():
    space = pdspace.Space.plane()
    d = pdspace.Diagram(space, [[1, 5], [2, 2], [0, 4], [1, 5]])
    assert len(d) == 3
    assert d.points == [((0.0, 4.0), 1), ((1.0, 5.0), 2)]
    assert d == pdspace.Diagram(space, [[0, 4], [1, 5]], mults=[1, 2])


def test_io_round_trip():
    space = pdspace.Space.plane("euclidean")
    d = pdspace.Diagram(space, [[0, 4], [1, 3]])
    assert pdspace.parse_diagram(pdspace.write_diagram(d, space), space) == d
    csv = pdspace.write_diagram(d, space, format="csv")
    assert pdspace.parse_diagram(csv, space, format="csv") == d


def test_errors_are_typed():
    plane = pdspace.Space.plane()
    with pytest.raises(pdspace.InvalidSpace):
        pdspace.Diagram(plane, [[3, 1]])
    with pytest.raises(pdspace.ParseError):
        pdspace.parse_diagram("0,x\n", plane, format="csv")
    with pytest.raises(pdspace.SpaceMismatch):
        pdspace.bottleneck(pdspace.Diagram(plane), pdspace.Diagram(pdspace.Space.half_line()), plane)
    with pytest.raises(pdspace.Error):
        pdspace.c0_gap(13)


def test_space_descriptors():
    space = pdspace.Space.finite([[0, 1, 1], [1, 0, 1], [1, 1, 0]], [0])
    back = pdspace.Space.from_json(space.to_json())
    assert back == space and back.id == space.id
    assert space.dist_to_A([1]) == 1.0
    assert pdspace.Space.from_json('{"kind": "half-line"}') == pdspace.Space.half_line()


def test_geodesic_midpoint():
    space = pdspace.Space.plane()
    a = pdspace.Diagram(space, [[0, 4]])
    b = pdspace.Diagram(space, [[1, 5]])
    start, mid, end = pdspace.geodesic(a, b, space, [0.0, 0.5, 1.0])
    assert start == a and end == b
    assert mid == pdspace.Diagram(space, [[0.5, 4.5]])
    assert pdspace.midpoint_check(a, b, space)["verdict"] == "WITNESSED"


def test_probes():
    assert pdspace.c0_gap(3)["witnesses"]["value"] == pytest.approx(4 / 3)
    fin = pdspace.Space.finite([[0, 1, 1], [1, 0, 1], [1, 1, 0]], [0])
    report = pdspace.isolated_point_bound(fin, pdspace.Diagram(fin, [[1]]), pdspace.Diagram(fin, [[2]]))
    assert report["verdict"] == "WITNESSED"
    plane = pdspace.Space.plane()
    seq = [pdspace.Diagram(plane, [[0, 4 + 2.0**-j]]) for j in range(31)]
    limit, report = pdspace.cauchy_chain_limit(seq, plane)
    assert report["verdict"] == "WITNESSED"
    assert pdspace.bottleneck(limit, pdspace.Diagram(plane, [[0, 4]]), plane) < 1e-6
    line = pdspace.Space.half_line()
    approx, dist = pdspace.approximate_half_line(pdspace.Diagram(line, [[1.1], [2.3]]), 4)
    assert approx == pdspace.Diagram(line, [[1.125], [2.375]])
    assert dist <= 0.25
    tau, report = pdspace.separability_adversary(plane, [pdspace.Diagram(plane)], 1, 2, 1, [[0, 3]])
    assert report["verdict"] == "WITNESSED"
    assert tau == pdspace.Diagram(plane, [[0, 3]])


def test_cli_entry():
    code, out, err = pdspace.run_cli(["probe", "c0-gap", "--m", "2"])
    assert code == 0
    assert '"verdict": "WITNESSED"' in out
    code, _, _ = pdspace.run_cli(["probe", "nope"])
    assert code == 2
