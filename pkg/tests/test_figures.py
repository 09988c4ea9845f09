import numpy as np
import pytest

from cavity_gates import figures


def test_figure_names():
    assert figures.FIGURE_NAMES == (
        "fig2a", "fig2b", "fig2c", "fig4", "fig6a", "fig6b", "fig7", "fig8a", "fig8b")
    with pytest.raises(ValueError):
        figures.build_figure("fig99")


def test_format_csv_shape():
    data = figures.FigureData("demo", ("a = 1",), ("x", "y"),
                              np.array([[1.0, 2.0], [3.0, 0.5]]))
    text = figures.format_csv(data)
    lines = text.split("\n")
    assert lines[0] == "# a = 1"
    assert lines[1] == "x,y"
    assert lines[2] == "1.00000000000e+00,2.00000000000e+00"
    assert text.endswith("\n")
    assert "\r" not in text


def test_fig7_columns():
    data = figures.build_figure("fig7")
    assert data.header[0] == "cooperativity"
    rows = data.rows
    # scattering column equals its closed form; exchange columns coincide
    c = rows[:, 0]
    assert np.allclose(rows[:, 1], 1 - 1 / (c + 1) - 1 / (4 * c + 2), rtol=1e-12)
    assert np.allclose(rows[:, 3], rows[:, 4], rtol=1e-14)
    assert rows[-1, 1] > 1 - 1e-5 and rows[-1, 3] > 1 - 1e-2


def test_fig2c_most_robust_regime_near_critical_coupling():
    data = figures.build_figure("fig2c")
    rows = data.rows
    best = rows[np.argmax(rows[:, 1]), 0]
    # minimum of the detuning-sensitivity bracket sits at 2g ~ kappa
    assert 0.2 < best < 1.0


def test_fig6b_analytic_tracks_numeric():
    data = figures.build_figure("fig6b")
    rows = data.rows
    weak = rows[:, 1]
    analytic = rows[:, 3]
    # compare inside the adiabatic window only (plateau region)
    mask = (rows[:, 0] > 0.5) & (rows[:, 0] < 100.0)
    assert np.abs(weak[mask] - analytic[mask]).max() < 0.01
    assert weak[mask].max() > 0.96


def test_fig8_trends():
    fig8a = figures.build_figure("fig8a")
    for col in (1, 2, 3):
        values = fig8a.rows[:, col]
        assert np.all(np.diff(values) <= 1e-9)          # fidelity falls with Gamma
        assert values[0] > 0.96
    fig8b = figures.build_figure("fig8b")
    assert np.all(fig8b.rows[:, 1:] > 0)
    for col in (1, 2, 3):
        assert np.all(np.diff(fig8b.rows[:, col]) <= 1e-9)  # optima get faster
    # scattering gate time follows the cube-root law
    gammas = fig8b.rows[:, 0]
    ratio = fig8b.rows[0, 1] / fig8b.rows[-1, 1]
    assert ratio == pytest.approx((gammas[-1] / gammas[0]) ** (1 / 3), rel=0.05)


def test_fig4_columns_and_peak():
    data = figures.build_figure("fig4")
    assert data.header == ("Delta_over_kappa", "F_numeric_weak", "F_numeric_strong",
                           "F_analytic")
    rows = data.rows
    best = rows[np.argmax(rows[:, 1]), 0]
    assert best == pytest.approx(0.5 * np.sqrt(8000.0), rel=0.1)
    # adiabatic closed form tracks the weak-coupling curve over the
    # detuning decade around the optimum
    root_c = np.sqrt(8000.0)
    mask = (rows[:, 0] >= root_c / 10.0) & (rows[:, 0] <= 10.0 * root_c)
    assert np.abs(rows[mask, 1] - rows[mask, 3]).max() < 0.01
