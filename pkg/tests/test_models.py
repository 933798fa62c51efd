import math
from fractions import Fraction

import pytest

from varinterp.models import (
    AHO_B0,
    FEYNMAN_MASS_STRONG,
    MODEL_NAMES,
    FeynmanParams,
    aho_omega1,
    builtin,
    feynman_energy,
    feynman_mass,
)


class TestModelSpecs:
    def test_names(self):
        assert MODEL_NAMES == ("aho", "polaron_energy", "polaron_mass")
        with pytest.raises(ValueError):
            builtin("nope")

    def test_aho_coupling_map(self):
        spec = builtin("aho")
        assert spec.to_alpha(4.0) == 1.0
        assert spec.coupling_name == "g"
        assert spec.weak.coeffs == (Fraction(1, 2),)
        assert spec.known_strong == (AHO_B0,)

    def test_energy_prefactor(self):
        spec = builtin("polaron_energy")
        assert spec.apply_prefactor(2.0, 3.0) == -6.0
        assert float(spec.law.p) == 1.0 and float(spec.law.q) == 1.0

    def test_mass_spec(self):
        spec = builtin("polaron_mass")
        assert spec.law.strong_power(0) == 4
        assert spec.apply_prefactor(2.0, 3.0) == 3.0


class TestAhoOmega1:
    def test_zero_coupling(self):
        assert aho_omega1(0.0, 0.75) == 1.0

    def test_solves_cubic(self):
        # Omega^3 - Omega = 2 a1 g at the stationary trial frequency
        for g in (0.01, 0.3, 2.0, 500.0):
            for a1 in (0.707, 0.75):
                Om = aho_omega1(g, a1)
                assert Om**3 - Om == pytest.approx(2.0 * a1 * g,
                                                   abs=1e-10 * max(1.0, Om**3))

    def test_branch_continuity(self):
        # trig and hyperbolic branches meet at the matching coupling
        a1 = 0.75
        g_star = 1.0 / (3.0 * math.sqrt(3.0) * a1)
        eps = 1e-9
        assert aho_omega1(g_star - eps, a1) == pytest.approx(
            aho_omega1(g_star + eps, a1), rel=1e-7)

    def test_negative_coupling_rejected(self):
        with pytest.raises(ValueError):
            aho_omega1(-1.0, 0.75)


class TestFeynman:
    def test_params_validation(self):
        with pytest.raises(ValueError):
            FeynmanParams(v=1.0, w=2.0)
        with pytest.raises(ValueError):
            FeynmanParams(v=1.0, w=0.0)

    def test_zero_coupling(self):
        assert feynman_energy(0.0)[0] == 0.0
        assert feynman_mass(0.0) == 1.0

    def test_negative_coupling_rejected(self):
        with pytest.raises(ValueError):
            feynman_energy(-0.1)
        with pytest.raises(ValueError):
            feynman_mass(-0.1)

    def test_weak_coupling_energy_slope(self):
        # E ~ -alpha as alpha -> 0
        a = 1e-3
        assert feynman_energy(a)[0] / a == pytest.approx(-1.0, abs=1e-4)

    def test_weak_coupling_mass_slope(self):
        a = 1e-3
        assert (feynman_mass(a) - 1.0) / a == pytest.approx(1.0 / 6.0, abs=1e-4)

    def test_published_benchmark_values(self):
        # E(3) = -3.1333 and E(9) = -11.486 for this variational functional
        assert feynman_energy(3.0)[0] == pytest.approx(-3.1333, abs=2e-4)
        assert feynman_energy(9.0)[0] == pytest.approx(-11.486, abs=2e-3)

    def test_energy_monotone_in_coupling(self):
        vals = [feynman_energy(a)[0] for a in (0.5, 1.0, 2.0, 4.0, 8.0)]
        assert all(b < a for a, b in zip(vals, vals[1:]))

    def test_strong_coupling_parameters_diverge(self):
        _, prm = feynman_energy(50.0)
        assert prm.v > 100.0
        assert 0.9 < prm.w < 10.0

    def test_mass_strong_asymptote_constant(self):
        assert FEYNMAN_MASS_STRONG == pytest.approx(16.0 / (81.0 * math.pi**2))
        m = feynman_mass(150.0)
        assert m / 150.0**4 == pytest.approx(FEYNMAN_MASS_STRONG, rel=2e-2)
