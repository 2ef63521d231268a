"""Compare the compiled kernels with the numpy fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N]

Both backends are loaded side by side and swapped into ``eegdist.kernels``
for the end-to-end rows, so the same interpreter measures both.
"""
from __future__ import annotations

import argparse
import timeit

import numpy as np

from eegdist import _fallback, kernels
from eegdist.codec import decode, encode
from eegdist.rng import probability_threshold
from eegdist.signal_io import synth_eeg
from eegdist.wavelet import WaveletSpec, dwt, idwt_array

KERNEL_NAMES = ("analysis_step", "synthesis_step", "pack_codes", "unpack_codes", "bsc_flip")


def _use(impl):
    for name in KERNEL_NAMES:
        setattr(kernels, name, getattr(impl, name))


def _cases():
    rng = np.random.default_rng(0)
    x = rng.standard_normal(4096)
    spec = WaveletSpec(20, 5)
    h, g = spec.filters()
    codes = rng.integers(0, 1 << 12, 2048).astype(np.uint32)
    packed = _fallback.pack_codes(codes, 12)
    buf = bytes(rng.integers(0, 256, 4096, dtype=np.uint8))
    thr = probability_threshold(1e-3)
    sig = synth_eeg(0, 4096)
    block = encode(sig, WaveletSpec(8), 60.0)
    return {
        "analysis step (4096, F=20)": lambda k: k.analysis_step(x, h, g),
        "synthesis step (2x2048, F=20)": lambda k: k.synthesis_step(x[:2048], x[2048:], h, g),
        "pack 2048 x 12-bit codes": lambda k: k.pack_codes(codes, 12),
        "unpack 2048 x 12-bit codes": lambda k: k.unpack_codes(packed, 2048, 12),
        "BSC over 32768 bits": lambda k: k.bsc_flip(buf, 7, thr),
        "DWT + inverse (4096, F=20, J=5)": lambda k: (_use(k), idwt_array(dwt(x, spec), spec)),
        "encode + decode (4096, F=8)": lambda k: (_use(k), decode(encode(sig, WaveletSpec(8), 60.0))),
        "decode only": lambda k: (_use(k), decode(block)),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=200)
    args = ap.parse_args(argv)
    try:
        from eegdist import _core
    except ImportError:
        print("compiled extension not built; only the fallback is available")
        return 1
    saved = {name: getattr(kernels, name) for name in KERNEL_NAMES}
    print(f"{'case':36s} {'python (us)':>12s} {'compiled (us)':>14s} {'speed-up':>9s}")
    try:
        for label, fn in _cases().items():
            t = {}
            for tag, impl in (("py", _fallback), ("c", _core)):
                fn(impl)  # warm-up
                t[tag] = min(timeit.repeat(lambda: fn(impl), number=1, repeat=args.repeat)) * 1e6
            print(f"{label:36s} {t['py']:12.1f} {t['c']:14.1f} {t['py'] / t['c']:8.1f}x")
    finally:
        for name, fn in saved.items():
            setattr(kernels, name, fn)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
