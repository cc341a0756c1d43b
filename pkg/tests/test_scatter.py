import numpy as np
import pytest

from ris_ra import (DOWNLINK, UPLINK, Panel, SphericalLink, build_codebook, channel_coefficient,
                    continuous_plate_field, continuous_plate_pathloss, discrete_scattered_field,
                    inplane_downlink, inplane_uplink, specular_direction)
from ris_ra.scatter import sinc


def test_sinc_matches_numpy_away_from_zero():
    x = np.linspace(0.1, 20, 200)
    assert np.allclose(sinc(x), np.sinc(x / np.pi), rtol=1e-13)


def test_sinc_small_argument():
    assert sinc(0.0) == 1.0
    for x in (1e-12, -1e-9, 3e-10):
        assert sinc(x) == pytest.approx(1.0 - x * x / 6, abs=1e-15)


def test_specular_direction():
    link = SphericalLink(r_s=30, theta_s=1.1, phi_s=0.7, r_d=50, theta_d=1.2, phi_d=2.0)
    th_r, ph_r = specular_direction(link)
    assert th_r == pytest.approx(np.pi - 1.1)
    assert ph_r == pytest.approx(np.pi - 0.7)


def test_continuous_pathloss_from_field(carrier):
    # |E|^2 and the pathloss formula must agree up to the antenna-gain
    # bridge G_s*G_d*lambda^2/((4*pi*r_s)^2)
    link = SphericalLink(r_s=40.0, theta_s=1.2, phi_s=0.9, r_d=70.0, theta_d=1.9, phi_d=2.4)
    reflect = specular_direction(SphericalLink(40.0, 1.2, 0.9, 1.0, 0.0, 0.0))
    Dx = Dz = 10 * carrier.wavelength
    E = continuous_plate_field(link, reflect, Dx, Dz, carrier)
    beta = continuous_plate_pathloss(link, reflect, Dx, Dz, carrier, G_s=2.0, G_d=3.0)
    bridge = 2.0 * 3.0 * carrier.wavelength ** 2 / (4 * np.pi * link.r_s) ** 2
    assert beta == pytest.approx(abs(E) ** 2 * bridge, rel=1e-12)


def test_continuous_pathloss_peaks_at_specular(carrier):
    Dx = Dz = 10 * carrier.wavelength
    src = SphericalLink(r_s=40.0, theta_s=1.2, phi_s=0.9, r_d=70.0, theta_d=0.0, phi_d=0.0)
    th_spec, ph_spec = specular_direction(src)
    reflect = (th_spec, ph_spec)
    peak = continuous_plate_pathloss(
        SphericalLink(40.0, 1.2, 0.9, 70.0, th_spec, ph_spec), reflect, Dx, Dz, carrier)
    for dth in (0.05, -0.08, 0.12):
        off = continuous_plate_pathloss(
            SphericalLink(40.0, 1.2, 0.9, 70.0, th_spec + dth, ph_spec), reflect, Dx, Dz, carrier)
        assert off < peak


def test_discrete_matches_continuous_at_specular(carrier):
    # with zero element phases the double sum telescopes into the plate
    # sinc pattern, so the discrete field at the specular direction equals
    # the continuous one to machine precision
    rng = np.random.default_rng(5)
    for _ in range(20):
        nx = int(rng.integers(1, 14))
        nz = int(rng.integers(1, 14))
        panel = Panel(nx=nx, nz=nz,
                      dx=float(rng.uniform(0.2, 1.4)) * carrier.wavelength,
                      dz=float(rng.uniform(0.2, 1.4)) * carrier.wavelength)
        r_s = float(rng.uniform(25, 150))
        r_d = float(rng.uniform(25, 150))
        th_s = float(rng.uniform(0.2, np.pi - 0.2))
        ph_s = float(rng.uniform(0.2, np.pi - 0.2))
        th_r, ph_r = specular_direction(SphericalLink(r_s, th_s, ph_s, 1.0, 0.0, 0.0))
        link = SphericalLink(r_s, th_s, ph_s, r_d, th_r, ph_r)
        Ec = continuous_plate_field(link, (th_r, ph_r), panel.Dx, panel.Dz, carrier)
        Ed = discrete_scattered_field(link, panel, np.zeros((nx, nz)), carrier)
        assert complex(Ed) == pytest.approx(complex(Ec), rel=1e-9)


def test_discrete_uniform_phase_shift_is_global(carrier):
    # adding a constant phase to every element rotates the field rigidly
    panel = Panel(6, 5, 0.5 * carrier.wavelength, 0.5 * carrier.wavelength)
    link = SphericalLink(30.0, 1.0, 0.8, 45.0, 2.0, 2.2)
    base = discrete_scattered_field(link, panel, np.zeros((6, 5)), carrier)
    shifted = discrete_scattered_field(link, panel, np.full((6, 5), 0.77), carrier)
    assert complex(shifted) == pytest.approx(complex(base * np.exp(1j * 0.77)), rel=1e-12)


def test_discrete_phase_shape_validation(carrier):
    panel = Panel(6, 5, 0.5 * carrier.wavelength, 0.5 * carrier.wavelength)
    link = SphericalLink(30.0, 1.0, 0.8, 45.0, 2.0, 2.2)
    with pytest.raises(ValueError):
        discrete_scattered_field(link, panel, np.zeros((5, 6)), carrier)
    with pytest.raises(ValueError):
        discrete_scattered_field(link, panel, np.full((6, 5), np.nan), carrier)


def test_inplane_maps_reciprocity(carrier):
    # source and destination swap between the directions; after dividing
    # out the source projection (cos theta_b vs cos theta_k) the field
    # times the destination distance is invariant
    panel = Panel(10, 10, carrier.wavelength, carrier.wavelength)
    d_b, th_b, d_k, th_k = 25.0, np.deg2rad(45.0), 50.0, np.deg2rad(20.0)
    dl_link, _ = inplane_downlink(d_b, th_b, d_k, th_k, 0.3)
    ul_link, _ = inplane_uplink(d_b, th_b, d_k, th_k, 0.3)
    Ed = discrete_scattered_field(dl_link, panel, np.zeros((10, 10)), carrier)
    Eu = discrete_scattered_field(ul_link, panel, np.zeros((10, 10)), carrier)
    assert abs(Ed) * d_k / np.cos(th_b) == pytest.approx(
        abs(Eu) * d_b / np.cos(th_k), rel=1e-12)
    assert dl_link.theta_s == pytest.approx(np.pi / 2)
    assert dl_link.phi_s == pytest.approx(th_b + np.pi / 2)
    assert dl_link.phi_d == pytest.approx(np.pi / 2 - th_k)
    assert ul_link.phi_s == pytest.approx(np.pi / 2 - th_k)
    assert ul_link.phi_d == pytest.approx(th_b + np.pi / 2)


def test_inplane_field_reduces_to_channel_model(carrier, panel, budget):
    # the flat-panel channel model is this engine restricted to the azimuth
    # plane, with the per-element aperture sinc divided out and the gain
    # bridge sqrt(G_b G_k)*lambda/(4 pi r_s) applied (one extra -j from the
    # field convention)
    rng = np.random.default_rng(9)
    th_b = np.deg2rad(45.0)
    cb = build_codebook(4, carrier, panel, th_b)
    G = np.sqrt(budget.G_b * budget.G_k)
    for _ in range(10):
        d_b = float(rng.uniform(21, 60))
        d_k = float(rng.uniform(21, 120))
        th_k = float(rng.uniform(0.01, np.pi / 2 - 0.01))
        s = int(rng.integers(0, 4))
        prof2d = np.broadcast_to(cb.phases[s][:, None], (panel.nx, panel.nz))
        wx = carrier.wavenumber * (np.sin(th_k) - np.sin(th_b))
        corr = sinc(panel.dx * wx / 2)

        z = channel_coefficient(DOWNLINK, cb.phases[s], carrier, panel, budget,
                                d_b, d_k, th_b, th_k)
        link, _ = inplane_downlink(d_b, th_b, d_k, th_k, float(cb.theta_s[s]))
        E = discrete_scattered_field(link, panel, prof2d, carrier)
        pred = -1j * E * G * carrier.wavelength / (4 * np.pi * d_b) / corr
        assert complex(z) == pytest.approx(complex(pred), rel=1e-9)

        zu = channel_coefficient(UPLINK, cb.phases[s], carrier, panel, budget,
                                 d_b, d_k, th_b, th_k)
        ul_link, _ = inplane_uplink(d_b, th_b, d_k, th_k, float(cb.theta_s[s]))
        Eu = discrete_scattered_field(ul_link, panel, prof2d, carrier)
        assert abs(complex(zu)) == pytest.approx(
            abs(Eu) * G * carrier.wavelength / (4 * np.pi * d_k) / abs(corr), rel=1e-9)
