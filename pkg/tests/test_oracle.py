import numpy as np
import pytest

from varinterp.errors import IllConditioned
from varinterp.models import AHO_B0, builtin
from varinterp.oracle import aho_exact_energy, asymptotic_fit, b_numeric
from varinterp.series import ScalingLaw, StrongSeries, WeakSeries
from varinterp.solvers import extend_model
from varinterp.strong_limit import b_of_c


class TestExactOscillator:
    def test_free_limit(self):
        assert aho_exact_energy(0.0) == pytest.approx(0.5, abs=1e-12)

    def test_known_moderate_coupling(self):
        # ground state at g = 0.4 (2 g_here = lambda in some conventions);
        # value frozen from a converged run of this diagonalization
        e1 = aho_exact_energy(0.4, basis_size=64)
        e2 = aho_exact_energy(0.4, basis_size=256)
        assert e1 == pytest.approx(e2, rel=1e-11)
        assert e1 == pytest.approx(0.5591463272, rel=1e-9)

    def test_strong_coupling_scaling(self):
        g = 4.0e6  # alpha = g / 4 = 1e6
        e = aho_exact_energy(g)
        # the subleading strong coefficient contributes ~1.4e-5 here
        assert e / 1e6 ** (1 / 3) == pytest.approx(AHO_B0, rel=5e-5)

    def test_baseline_frequency_scales_out(self):
        # E(g; omega) = omega * E(g / omega^3; 1)
        om = 1.7
        assert aho_exact_energy(0.8, omega=om) == pytest.approx(
            om * aho_exact_energy(0.8 / om**3), rel=1e-9)

    def test_negative_coupling_rejected(self):
        with pytest.raises(ValueError):
            aho_exact_energy(-0.1)


class TestAsymptoticFit:
    def test_roundtrip_on_synthetic_series(self):
        law = ScalingLaw(4, 1)
        truth = StrongSeries(law, [0.0227019, 0.125722, 1.15304, -0.5])
        alphas = np.geomspace(50.0, 5000.0, 9)
        fit = asymptotic_fit([(a, truth.eval(a)) for a in alphas], law, 4)
        for got, want in zip(fit.coeffs, truth.coeffs):
            assert got == pytest.approx(want, rel=1e-5)
        assert fit.residual < 1e-8

    def test_narrow_span_rejected(self):
        law = ScalingLaw(1, 1)
        curve = [(a, a) for a in np.linspace(10.0, 15.0, 6)]
        with pytest.raises(ValueError):
            asymptotic_fit(curve, law, 2)

    def test_ill_conditioned_basis(self):
        law = ScalingLaw(1, 1)
        truth = StrongSeries(law, [1.0, 0.5])
        curve = [(a, truth.eval(a)) for a in np.geomspace(1e3, 1e6, 12)]
        with pytest.raises(IllConditioned):
            asymptotic_fit(curve, law, 9)


class TestNumericProbe:
    def test_matches_closed_form_on_builtin_models(self):
        for name in ("aho", "polaron_mass"):
            ext, sol = extend_model(builtin(name))
            for n in range(3):
                closed = b_of_c(ext.weak, ext.law, n, sol.c)
                probed = b_numeric(ext.weak, ext.law, n, sol.c)
                assert probed == pytest.approx(closed, rel=1e-9, abs=1e-9)

    def test_order_limit(self):
        s = WeakSeries([1, 1])
        with pytest.raises(ValueError):
            b_numeric(s, ScalingLaw(1, 1), 3, 1.0)
