import pytest

from src.core.exceptions import ArgumentError
from src.models.lattice import Direction
from src.services import lattice_service


def test_edge_numbering(torus):
    assert torus.num_edges == 8
    # horizontal edges first, then vertical
    assert torus.endpoints[0] == (0, 1)
    assert torus.directions[0] == Direction.RIGHT
    assert torus.endpoints[4] == (0, 2)
    assert torus.directions[4] == Direction.UP


def test_star_orientation(torus):
    star = torus.vertex_stars[0]
    assert [(s.edge, s.outgoing) for s in star] == [(0, True), (4, True), (1, False), (6, False)]


def test_loop_orientation(torus):
    loop = torus.plaquette_loops[0]
    assert [(l.edge, l.along) for l in loop] == [(0, True), (5, True), (2, False), (4, False)]
    assert torus.plaquette_starts[0] == 0


def test_site_numbering(torus):
    site = torus.site(0)
    assert site.vertex == 0 and site.plaquette == 0
    assert site.edges == (0, 5, 2, 4, 1, 6)
    assert site.shared_edges == (0, 4)
    assert site.numbered(5) == 1


def test_star_and_loop_share_two_edges(torus):
    for site in torus.sites:
        star = set(torus.star_edges(site.vertex))
        loop = set(torus.loop_edges(site.plaquette))
        assert star & loop == set(site.shared_edges)
        assert len(set(site.edges)) == 6


@pytest.mark.parametrize("rows, cols", [(2, 2), (2, 3), (3, 4)])
def test_incidence_counts(rows, cols):
    lattice = lattice_service.build_torus(rows, cols)
    counts = lattice_service.incidence_counts(lattice)
    for e in range(lattice.num_edges):
        assert counts["stars"][e] == 2
        assert counts["loops"][e] == 2
        assert counts["sites"][e] == 3


def test_site_hilbert_share(torus):
    assert lattice_service.site_hilbert_share(torus, 6) == pytest.approx(36)


def test_parse_torus():
    lattice = lattice_service.parse_torus("3x2")
    assert (lattice.rows, lattice.cols) == (3, 2)
    with pytest.raises(ArgumentError):
        lattice_service.parse_torus("3by2")
    with pytest.raises(ArgumentError):
        lattice_service.parse_torus("1x4")


def test_site_of_range(torus):
    with pytest.raises(ArgumentError):
        lattice_service.site_of(torus, 4)


def test_to_dict(torus):
    data = torus.to_dict()
    assert len(data["edges"]) == 8
    assert data["sites"][0]["star"][2] == {"edge": 1, "flag": "L-"}
    assert data["sites"][0]["loop"][0] == {"edge": 0, "flag": "T+"}


def test_plaquette_corners(torus):
    assert torus.plaquette_corners(0) == (0, 1, 3, 2)
    assert torus.plaquette_corners(3) == (3, 2, 0, 1)
    for p in range(torus.num_plaquettes):
        corners = torus.plaquette_corners(p)
        loop = set(torus.loop_edges(p))
        for v in corners:
            assert len(loop & set(torus.star_edges(v))) == 2
