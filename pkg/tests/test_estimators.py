import numpy as np
import pytest

from graphcurv import estimators, generators, spherical
from graphcurv.curvature import total_curvature
from graphcurv.estimators import (RejectionError, check_crookedness_identity, estimate,
                                  gulliver_yamada, minima_histogram)


def test_same_seed_same_report():
    g = generators.make_dart()
    assert estimate(g, 3000, 5) == estimate(g, 3000, 5)
    assert estimate(g, 3000, 5) != estimate(g, 3000, 6)


def test_thread_count_does_not_matter():
    g = generators.make_trefoil()
    one = estimate(g, 5000, 11, threads=1)
    four = estimate(g, 5000, 11, threads=4)
    assert one == four


def test_env_override(monkeypatch):
    monkeypatch.setenv("GRAPHCURV_THREADS", "3")
    assert estimators.default_threads() == 3


def test_prefix_blocks_are_shared():
    # block b always draws the same directions, so a longer run extends a shorter one
    g = generators.make_dart()
    a = estimators._run_block(g, 0, 512, 9)
    b = estimators._run_block(g, 0, 512, 9)
    assert a == b


def test_sample_count_rounds_to_pairs():
    rep = estimate(generators.make_unit_square(), 1001, 0)
    assert rep.samples == 1002


def test_tight_graphs_have_zero_variance(catalog):
    for name in ("square", "cube", "theta_pl", "circle_two_chords"):
        rep = estimate(catalog[name], 4000, 1)
        K = total_curvature(catalog[name]).K_total
        assert rep.K_hat == pytest.approx(K, abs=1e-12)
        assert rep.std_errors["K_hat"] == 0.0
        assert rep.mu_hat == 1.0


@pytest.mark.parametrize("name", ["dart", "zigzag", "trefoil", "figure_eight_helix",
                                  "suspension_braided4", "hopf_eps0.25"])
def test_agrees_with_closed_form(catalog, name):
    g = catalog[name]
    rep = estimate(g, 20_000, 3)
    closed = total_curvature(g)
    assert abs(rep.K_hat - closed.K_total) < 4 * rep.std_errors["K_hat"] + 1e-12
    assert abs(rep.mu_hat - closed.crookedness_mu) < 4 * rep.std_errors["mu_hat"] + 1e-12


def test_crookedness_identity_holds_exactly(catalog):
    for name, g in catalog.items():
        rep = estimate(g, 2000, 4)
        assert abs(check_crookedness_identity(rep, total_curvature(g).chi)) < 1e-12, name


def test_gulliver_yamada_on_trivalent_graph():
    g = generators.make_theta_graph()
    rep = estimate(g, 20_000, 2)
    assert abs(rep.T_hat_over_pi - 3.0) < 4 * rep.std_errors["T_hat_over_pi"]
    assert gulliver_yamada(g, 20_000, 2) == rep.T_hat_over_pi


def test_gulliver_yamada_meridian_gap(catalog):
    rep = estimate(catalog["meridian5"], 4000, 0)
    assert rep.T_hat_over_pi == pytest.approx(6.0, abs=1e-9)
    assert rep.K_hat == pytest.approx(8.0, abs=1e-9)


def test_minima_histogram(catalog):
    h = minima_histogram(catalog["dart"], 10_000, 0)
    assert sum(h.frequencies.values()) == pytest.approx(1.0)
    assert set(h.frequencies) == {1, 2}
    # mu = 1.5 means half of all directions see two minima
    assert h.fraction_multi_min == pytest.approx(0.5, abs=0.03)
    assert h.mu_hat == pytest.approx(1 + h.fraction_multi_min)


def test_rejection_guard(monkeypatch):
    monkeypatch.setattr(spherical, "degenerate_mask", lambda g, U: np.ones(len(U), dtype=bool))
    with pytest.raises(RejectionError):
        estimate(generators.make_unit_square(), 100, 0)


def test_rejected_directions_are_counted(monkeypatch):
    calls = {"n": 0}
    real = spherical.degenerate_mask

    def every_tenth(g, U):
        # the cap x > 0.8 covers a tenth of the sphere
        mask = real(g, U) | (U[:, 0] > 0.8)
        calls["n"] += int(mask.sum())
        return mask

    monkeypatch.setattr(spherical, "degenerate_mask", every_tenth)
    rep = estimate(generators.make_unit_square(), 1024, 0, threads=1)
    assert rep.rejected_degenerate == calls["n"] > 0
    assert rep.samples == 1024


def test_bad_sample_count():
    with pytest.raises(ValueError):
        estimate(generators.make_unit_square(), 0, 0)
