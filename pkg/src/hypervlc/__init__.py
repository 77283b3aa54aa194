"""Hyperchaos-keyed constellation scrambling over DCO-OFDM VLC links."""

from .config import SimConfig, align_bits, build_config, load_config
from .harness import (LinkReport, SweepRecord, bench_scaling, records_to_csv,
                      run_ber_sweep, run_leakage_sweep, run_link_once,
                      transmit_image)
from .henon import (DivergenceError, HenonParams, HenonState,
                    generate_sequence, henon_step, trajectory)
from .mapping import Modulation, demap_symbols, map_bits
from .metrics import (KsResult, LeakageResult, bit_error_rate, histogram,
                      information_leakage, ks_two_sample)
from .ofdm import (ChannelEstimate, OfdmConfig, TimeSignal, equalize,
                   hermitian_extend, ls_channel_estimate, ofdm_demodulate,
                   ofdm_modulate)
from .scrambler import (CASCADE_PAIRS, DimensionPair, KeyStream,
                        cascade_scramble, descramble, scramble)
from .smc_sync import (SmcParams, SyncError, SyncReport, control_law,
                       run_synchronization, sliding_surface, sync_error,
                       synchronize_step, track_master)
from .vlc_channel import (ChannelGeometry, ChannelMode, NoiseParams,
                          apply_channel, lambertian_order, los_gain,
                          noise_variance, shot_noise_std, thermal_noise_std,
                          total_noise_std)

__version__ = "0.1.0"
