import itertools
from math import cos, pi, sin, sqrt

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from temporal_bell.histories import (
    ReadoutBasis,
    enumerate_x_histories,
    enumerate_z_histories,
    rewrite_x_history_in_z,
    x_branch_network_state,
    x_branch_spinor,
    z_branch_spinor,
)
from temporal_bell.protocol import ProtocolConfig, ResourceLimitError, run_protocol
from temporal_bell.statevector import ImpossibleOutcomeError, project_measure

TOL = 1e-10
alphas = st.floats(-2 * pi, 2 * pi, allow_nan=False)


def joint_weights(state, m, axis):
    """Born weights of a joint measurement of memories 1..m, by repeated projection."""
    out = {}
    for readouts in itertools.product((-1, 1), repeat=m):
        s, p = state, 1.0
        try:
            for mu, r in enumerate(readouts, start=1):
                s, pk = project_measure(s, mu, axis, r)
                p *= pk
        except ImpossibleOutcomeError:
            p = 0.0
        out[readouts] = p
    return out


def rx(a):
    return np.array([[cos(a / 2), -1j * sin(a / 2)], [-1j * sin(a / 2), cos(a / 2)]])


class TestZHistories:
    def test_alpha_zero(self):
        table = enumerate_z_histories(ProtocolConfig(0.0))
        nonzero = [h for h in table if h.probability > 1e-15]
        assert len(nonzero) == 1
        assert nonzero[0].readouts == (1, 1, 1, 1) and nonzero[0].probability == pytest.approx(1)
        assert nonzero[0].s_trajectory == (-1, -1, -1, -1)

    @pytest.mark.parametrize("alpha", [0.4, pi / 4, 2.2])
    def test_step_two_amplitudes(self, alpha):
        table = enumerate_z_histories(ProtocolConfig(alpha, 1))
        assert table.lookup((1,)).amplitude == pytest.approx(cos(alpha / 2), abs=TOL)
        assert table.lookup((-1,)).amplitude == pytest.approx(-1j * sin(alpha / 2), abs=TOL)

    def test_count(self):
        table = enumerate_z_histories(ProtocolConfig(1.3))
        assert len(table) == 16 and table.basis is ReadoutBasis.Z
        assert len({h.readouts for h in table}) == 16

    @given(alphas, st.integers(1, 5))
    def test_matches_joint_measurement(self, alpha, m):
        config = ProtocolConfig(alpha, m)
        table = enumerate_z_histories(config)
        weights = joint_weights(run_protocol(config).final, m, "Z")
        for h in table:
            assert h.probability == pytest.approx(abs(h.amplitude) ** 2, abs=1e-12)
            assert h.probability == pytest.approx(weights[h.readouts], abs=TOL)
        assert table.total_probability() == pytest.approx(1, abs=TOL)

    def test_amplitude_phase_matches_final_state(self):
        config = ProtocolConfig(0.9)
        final = run_protocol(config).final
        for h in enumerate_z_histories(config):
            bits = [(-h.readouts[-1] + 1) // 2] + [(r + 1) // 2 for r in h.readouts]
            idx = sum(b << k for k, b in enumerate(bits))
            assert final.amps[idx] == pytest.approx(h.amplitude, abs=TOL)

    def test_resource_limit(self):
        with pytest.raises(ResourceLimitError):
            enumerate_z_histories(ProtocolConfig(0.1, 13))


class TestXHistories:
    @pytest.mark.parametrize("alpha", [0.5, 1.9])
    def test_step_two_branches(self, alpha):
        table = enumerate_x_histories(ProtocolConfig(alpha, 1))
        down = np.array([1, 0])
        np.testing.assert_allclose(table.probabilities(), [0.5, 0.5], atol=TOL)
        # x = +1 leaves S rotated by +alpha, x = -1 by -alpha with a sign
        np.testing.assert_allclose(x_branch_spinor(table.config, (1,)), rx(alpha) @ down / sqrt(2), atol=TOL)
        np.testing.assert_allclose(x_branch_spinor(table.config, (-1,)), -rx(-alpha) @ down / sqrt(2), atol=TOL)

    def test_alpha_zero_uniform(self):
        table = enumerate_x_histories(ProtocolConfig(0.0))
        assert len(table) == 16
        np.testing.assert_allclose(table.probabilities(), 1 / 16, atol=TOL)
        weights = joint_weights(run_protocol(table.config).final, 4, "X")
        np.testing.assert_allclose(list(weights.values()), 1 / 16, atol=TOL)

    @given(alphas, st.integers(1, 5))
    def test_matches_joint_measurement(self, alpha, m):
        config = ProtocolConfig(alpha, m)
        table = enumerate_x_histories(config)
        weights = joint_weights(run_protocol(config).final, m, "X")
        for h in table:
            assert h.probability == pytest.approx(weights[h.readouts], abs=TOL)
            assert h.probability == pytest.approx(abs(h.amplitude) ** 2, abs=1e-12)
            assert np.linalg.norm(h.s_state) == pytest.approx(1, abs=TOL)
        assert table.total_probability() == pytest.approx(1, abs=TOL)

    def test_no_s_trajectory(self):
        with pytest.raises(ValueError):
            enumerate_x_histories(ProtocolConfig(0.3, 2)).entries[0].s_trajectory


class TestRewrite:
    def test_step_two_plus(self):
        coeffs = rewrite_x_history_in_z(ProtocolConfig(0.6, 1), (1,))
        assert coeffs[(1,)] == pytest.approx(1 / sqrt(2))
        assert coeffs[(-1,)] == pytest.approx(1 / sqrt(2))

    def test_step_two_minus(self):
        coeffs = rewrite_x_history_in_z(ProtocolConfig(0.6, 1), (-1,))
        assert coeffs[(-1,)] == pytest.approx(1 / sqrt(2))
        assert coeffs[(1,)] == pytest.approx(-1 / sqrt(2))

    def test_bad_readouts(self):
        with pytest.raises(ValueError):
            rewrite_x_history_in_z(ProtocolConfig(0.6, 2), (1,))
        with pytest.raises(ValueError):
            rewrite_x_history_in_z(ProtocolConfig(0.6, 2), (1, 0))

    @given(alphas, st.integers(1, 4))
    def test_superposition_reproduces_x_branch(self, alpha, m):
        config = ProtocolConfig(alpha, m)
        total = 0.0
        for x in itertools.product((-1, 1), repeat=m):
            coeffs = rewrite_x_history_in_z(config, x)
            assert len(coeffs) == 2**m
            rebuilt = sum(c * z_branch_spinor(config, z) for z, c in coeffs.items())
            np.testing.assert_allclose(rebuilt, x_branch_spinor(config, x), atol=TOL)
            total += np.vdot(rebuilt, rebuilt).real
        z_total = sum(abs(h.amplitude) ** 2 for h in enumerate_z_histories(config))
        assert total == pytest.approx(z_total, abs=TOL)

    @given(alphas)
    def test_x_branches_rebuild_final_state(self, alpha):
        config = ProtocolConfig(alpha)
        final = run_protocol(config).final
        acc = np.zeros_like(final.amps)
        for x in itertools.product((-1, 1), repeat=4):
            acc = acc + x_branch_network_state(config, x).amps
        np.testing.assert_allclose(acc, final.amps, atol=TOL)

    @pytest.mark.parametrize("alpha", [0.3, pi / 4, 2.0, 4.0])
    def test_incompatibility_witness(self, alpha):
        config = ProtocolConfig(alpha)
        z_amp = {h.readouts: h.amplitude for h in enumerate_z_histories(config)}
        widths = []
        for x in itertools.product((-1, 1), repeat=4):
            coeffs = rewrite_x_history_in_z(config, x)
            widths.append(sum(abs(c * z_amp[z]) > 1e-9 for z, c in coeffs.items()))
        assert max(widths) >= 2

    def test_sharp_at_multiples_of_pi(self):
        config = ProtocolConfig(pi)
        z_amp = {h.readouts: h.amplitude for h in enumerate_z_histories(config)}
        coeffs = rewrite_x_history_in_z(config, (1, 1, 1, 1))
        assert sum(abs(c * z_amp[z]) > 1e-9 for z, c in coeffs.items()) == 1
