"""First-order radio energy accounting: transmit, receive, and aggregation costs.

All quantities are SI: joules, bits, meters. Transmit cost switches from the
free-space d^2 amplifier to the multipath d^4 amplifier at the threshold d0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class RadioParams:
    """Radio constants and frame sizes.

    Defaults are the standard 100x100 m benchmark set: 50 nJ/bit electronics,
    10 pJ/bit/m^2 free-space amplifier, 0.0013 pJ/bit/m^4 multipath amplifier,
    5 nJ/bit aggregation, 30 m branch threshold, 4000-bit data packets and
    200-bit status messages.
    """

    e_elec: float = 50e-9
    eps_fs: float = 10e-12
    eps_mp: float = 0.0013e-12
    e_da: float = 5e-9
    d0: float = 30.0
    packet_bits: int = 4000
    msg_bits: int = 200

    def __post_init__(self):
        if min(self.e_elec, self.eps_fs, self.eps_mp, self.e_da, self.d0) <= 0:
            raise ValueError("radio constants must be strictly positive")
        if self.packet_bits <= 0 or self.msg_bits <= 0:
            raise ValueError("packet_bits and msg_bits must be strictly positive")


def tx_energy(bits: int, d, radio: RadioParams):
    """Energy in joules to transmit `bits` over distance `d` meters.

    Uses the free-space amplifier for d <= d0 and the multipath amplifier
    above it. `d` may be a scalar or an array; the return matches.
    """
    if bits < 0:
        raise ValueError("bits must be nonnegative")
    d_arr = np.asarray(d, dtype=float)
    if np.any(d_arr < 0):
        raise ValueError("distance must be nonnegative")
    amp = np.where(d_arr <= radio.d0, radio.eps_fs * d_arr**2, radio.eps_mp * d_arr**4)
    out = bits * radio.e_elec + bits * amp
    return float(out) if np.ndim(d) == 0 else out


def rx_energy(bits: int, radio: RadioParams) -> float:
    """Energy in joules to receive `bits`: electronics only."""
    if bits < 0:
        raise ValueError("bits must be nonnegative")
    return bits * radio.e_elec


def aggregation_energy(bits_processed: int, radio: RadioParams) -> float:
    """Energy in joules to fuse `bits_processed` bits of collected data."""
    if bits_processed < 0:
        raise ValueError("bits_processed must be nonnegative")
    return bits_processed * radio.e_da
