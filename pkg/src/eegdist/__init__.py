"""DWT-based EEG encoding, PRD distortion measurement and distortion modelling."""
__version__ = "0.1.0"

from .kernels import BACKEND
from .signal_io import Signal, load_ascii_signal, synth_eeg
from .wavelet import WaveletSpec, dwt, idwt
from .codec import EncodedBlock, decode, encode, threshold_to_ratio
from .channel import ChannelModel, transmit
from .metrics import compression_ratio, log_distortion, prd

__all__ = [
    "BACKEND",
    "ChannelModel",
    "EncodedBlock",
    "Signal",
    "WaveletSpec",
    "compression_ratio",
    "decode",
    "dwt",
    "encode",
    "idwt",
    "load_ascii_signal",
    "log_distortion",
    "prd",
    "synth_eeg",
    "threshold_to_ratio",
    "transmit",
]
