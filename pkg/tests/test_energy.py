import numpy as np
import pytest

from woacluster.energy import RadioParams, aggregation_energy, rx_energy, tx_energy

RADIO = RadioParams()


class TestTxEnergy:
    def test_free_space_packet(self):
        # 4000 * 50 nJ + 4000 * 10 pJ * 10^2 = 204 uJ
        assert tx_energy(4000, 10.0, RADIO) == pytest.approx(204e-6, rel=1e-15)

    def test_multipath_packet(self):
        # 4000 * 50 nJ + 4000 * 0.0013 pJ * 100^4 = 720 uJ
        assert tx_energy(4000, 100.0, RADIO) == pytest.approx(720e-6, rel=1e-15)

    def test_zero_bits(self):
        assert tx_energy(0, 55.0, RADIO) == 0.0

    def test_threshold_uses_free_space(self):
        at_d0 = tx_energy(4000, RADIO.d0, RADIO)
        expected = 4000 * RADIO.e_elec + 4000 * RADIO.eps_fs * RADIO.d0**2
        assert at_d0 == pytest.approx(expected, rel=1e-15)

    def test_branches_jump_at_threshold(self):
        # the two amplifier curves do not meet at d0 = 30 m
        just_above = tx_energy(4000, RADIO.d0 + 1e-9, RADIO)
        at_d0 = tx_energy(4000, RADIO.d0, RADIO)
        assert just_above != pytest.approx(at_d0, rel=1e-6)

    def test_strictly_increasing_on_each_branch(self):
        rng = np.random.default_rng(7)
        low = np.sort(rng.uniform(0, RADIO.d0, 50))
        high = np.sort(rng.uniform(RADIO.d0 + 1e-9, 300, 50))
        for ds in (low, high):
            costs = tx_energy(4000, ds, RADIO)
            assert np.all(np.diff(costs) > 0)

    def test_zero_distance_equals_rx(self):
        for bits in (1, 200, 4000, 123456):
            assert tx_energy(bits, 0.0, RADIO) == rx_energy(bits, RADIO)

    def test_vectorized_distances(self):
        ds = np.array([0.0, 10.0, 100.0])
        out = tx_energy(4000, ds, RADIO)
        assert out.shape == (3,)
        assert out[1] == pytest.approx(204e-6, rel=1e-15)
        assert out[2] == pytest.approx(720e-6, rel=1e-15)

    def test_negative_inputs_rejected(self):
        with pytest.raises(ValueError):
            tx_energy(-1, 10.0, RADIO)
        with pytest.raises(ValueError):
            tx_energy(100, -0.5, RADIO)


class TestRxEnergy:
    def test_packet(self):
        assert rx_energy(4000, RADIO) == pytest.approx(200e-6, rel=1e-15)

    def test_status_message(self):
        assert rx_energy(200, RADIO) == pytest.approx(10e-6, rel=1e-15)

    def test_zero_bits(self):
        assert rx_energy(0, RADIO) == 0.0

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            rx_energy(-5, RADIO)


class TestAggregationEnergy:
    def test_packet(self):
        assert aggregation_energy(4000, RADIO) == pytest.approx(20e-6, rel=1e-15)

    def test_zero(self):
        assert aggregation_energy(0, RADIO) == 0.0

    def test_five_signals(self):
        assert aggregation_energy(5 * 4000, RADIO) == pytest.approx(100e-6, rel=1e-15)


def test_all_costs_linear_in_bits():
    rng = np.random.default_rng(123)
    for _ in range(200):
        bits = int(rng.integers(0, 10**6))
        scale = int(rng.integers(1, 9))
        d = float(rng.uniform(0, 200))
        assert tx_energy(scale * bits, d, RADIO) == pytest.approx(
            scale * tx_energy(bits, d, RADIO), rel=1e-12, abs=1e-300
        )
        assert rx_energy(scale * bits, RADIO) == pytest.approx(
            scale * rx_energy(bits, RADIO), rel=1e-12, abs=1e-300
        )
        assert aggregation_energy(scale * bits, RADIO) == pytest.approx(
            scale * aggregation_energy(bits, RADIO), rel=1e-12, abs=1e-300
        )


def test_radio_params_validation():
    with pytest.raises(ValueError):
        RadioParams(e_elec=0.0)
    with pytest.raises(ValueError):
        RadioParams(d0=-1.0)
    with pytest.raises(ValueError):
        RadioParams(packet_bits=0)
