import numpy as np
import pytest

from graphcurv import generators
from graphcurv.curvature import edge_total_curvature, total_curvature
from graphcurv.graph import VertexRef, tangent_fan, validate
from graphcurv.spherical import area, positive_region


def test_every_family_validates():
    for fam in generators.FAMILIES:
        assert validate(generators.make_family(fam)) == [], fam


@pytest.mark.parametrize("make, limit", [
    (lambda m: generators.make_theta_graph("sampled", m), 3.0),
    (lambda m: generators.make_circle_with_chords((-0.5, 0.5), m), 4.0),
    (lambda m: generators.make_meridian_graph(3, m), 4.0),
    (lambda m: generators.make_convex_polygon(m), 2.0),
])
def test_refinement_converges(make, limit):
    errs = [abs(total_curvature(make(m)).K_total - limit) for m in (8, 16, 32, 64)]
    for m, e in zip((8, 16, 32, 64), errs):
        assert e <= 4.0 / m
    assert errs[-1] <= errs[0] + 1e-12


def test_meridian_poles_have_no_exterior_area():
    for n in (3, 5, 7):
        g = generators.make_meridian_graph(n, 16)
        for pole in (0, 1):
            assert area(positive_region(tangent_fan(g, VertexRef(pole)))) == 0.0
        assert all(edge_total_curvature(e) == pytest.approx(1.0, abs=1e-12) for e in g.edges)


def test_planar_suspension_properties():
    for n in (2, 3, 4, 5, 6):
        g = generators.make_suspension(n, "planar")
        rep = total_curvature(g)
        assert rep.b1 == n - 1
        # outer half circles and the straight chord cost nothing beyond n; each
        # shallow bent arc adds exactly its own turning
        bent = sum(k for k in rep.per_edge.values() if 0 < k < 0.5)
        assert rep.K_total - n == pytest.approx(bent, abs=1e-12)
        if n <= 5:
            assert rep.K_total - n <= 0.1
    assert total_curvature(generators.make_suspension(3, "planar")).tight


@pytest.mark.parametrize("word", [[], [1], [1, 2], [1, -2, 3, -1], "2,-1"])
def test_braided_suspension(word):
    g = generators.make_suspension(4, "braided", word=word)
    assert validate(g) == []
    z = [e.polyline[:, 2] for e in g.edges]
    assert all(np.all(np.diff(h) > 0) for h in z)


def test_trivial_braid_is_tight_enough():
    rep = total_curvature(generators.make_suspension(4, "braided", word=[]))
    assert rep.crookedness_mu < 2


@pytest.mark.parametrize("word", [[0], [4], [-4], ["x"]])
def test_bad_braid_words(word):
    with pytest.raises(ValueError):
        generators.make_suspension(4, "braided", word=word)


@pytest.mark.parametrize("slope", [0.0, 1.0, 10.0, 100.0])
def test_helix_arc_curvature(slope):
    e = generators.make_helix_arc(1.0, slope, 1.0, 512)
    assert edge_total_curvature(e) == pytest.approx(generators.helix_curvature(slope), rel=0.01)


def test_helix_is_circle_for_zero_pitch():
    e = generators.make_helix_arc(1.0, 0.0, 1.0, 512)
    # an open arc misses the corner where the circle would close
    assert edge_total_curvature(e) == pytest.approx(2.0 * 511 / 512, abs=1e-12)
    with pytest.raises(ValueError):
        generators.make_helix_arc(0.0, 1.0)


def test_figure_eight_surgery_cost():
    costs = []
    for slope in (5.0, 10.0, 20.0):
        with_helix = total_curvature(generators.make_surgered_figure_eight(slope))
        flat = total_curvature(generators.make_surgered_figure_eight(slope, helix=False))
        cost = with_helix.crookedness_mu - flat.crookedness_mu
        costs.append(cost)
        # the coil adds about half its own curvature to mu, plus end corrections
        assert 0 < cost < 3 * generators.helix_curvature(slope)
    assert costs[0] > costs[1] > costs[2]


@pytest.mark.parametrize("eps", [0.05, 0.1, 0.25, 0.5])
def test_hopf_graph_budget(eps):
    g = generators.make_hopf_gamma_eps(eps)
    rep = total_curvature(g)
    assert 1 < rep.crookedness_mu < 1 + eps
    assert rep.b1 == 3


def test_hopf_mu_decreases_with_eps():
    mus = [total_curvature(generators.make_hopf_gamma_eps(e)).crookedness_mu
           for e in (0.5, 0.3, 0.2, 0.1, 0.05)]
    assert all(a > b for a, b in zip(mus, mus[1:]))


@pytest.mark.parametrize("eps", [0.0, -0.1, 0.6])
def test_hopf_rejects_bad_eps(eps):
    with pytest.raises(ValueError):
        generators.make_hopf_gamma_eps(eps)


def test_polygon_and_theta_arguments():
    with pytest.raises(ValueError):
        generators.make_convex_polygon(2)
    with pytest.raises(ValueError):
        generators.make_theta_graph("nope")
    with pytest.raises(ValueError):
        generators.make_circle_with_chords((1.2,))
