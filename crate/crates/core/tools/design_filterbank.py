#!/usr/bin/env python3
"""Offline elliptic band-pass design for the eight pitch bands.

Writes
  src/filterbank/coefficients.rs        embedded coefficient table
  data/filterbank_coefficients.txt      human-readable audit copy
  tests/fixtures/filterbank_response.csv  reference magnitude response

Run from crates/core:  python3 tools/design_filterbank.py
"""
import numpy as np
from scipy import signal

FS = 16000
ORDER = 4
RIPPLE_DB = 0.5
ATTEN_DB = 40.0
BANDS = [(50, 75), (75, 100), (100, 150), (150, 200),
         (200, 300), (300, 400), (400, 600), (600, 800)]


def design(lo, hi):
    z, p, k = signal.ellip(ORDER, RIPPLE_DB, ATTEN_DB, [lo, hi],
                           btype="bandpass", fs=FS, output="zpk")
    sos = signal.zpk2sos(z, p, 1.0, pairing="nearest")
    # normalise numerators to b0 = 1 so the gain lives in one scalar
    gain = k
    for s in sos:
        b0 = s[0]
        s[:3] /= b0
        gain *= b0
    return sos, gain


def probe_freqs(lo, hi):
    c = np.sqrt(lo * hi)
    return [lo / 2, lo, c, hi, hi * 2, 0.5 * (lo + hi), 1.5 * hi, lo / 1.5]


def main():
    rs_lines = [
        "// Generated by tools/design_filterbank.py. Do not edit by hand.",
        "",
        f"pub const DESIGN_RATE: u32 = {FS};",
        f"pub const RIPPLE_DB: f64 = {RIPPLE_DB!r};",
        f"pub const ATTENUATION_DB: f64 = {ATTEN_DB!r};",
        "",
        "/// Per band: overall gain, then `[b0, b1, b2, a0, a1, a2]` per section.",
        f"pub(crate) const TABLE: [(f64, [[f64; 6]; {ORDER}]); 8] = [",
    ]
    txt = [
        f"# Elliptic band-pass filterbank, prototype order {ORDER} "
        f"({2 * ORDER}th-order band-pass, {ORDER} biquads)",
        f"# fs = {FS} Hz, passband ripple {RIPPLE_DB} dB, stopband attenuation {ATTEN_DB} dB",
        "# band lo_hz hi_hz gain | section: b0 b1 b2 a0 a1 a2 | max pole radius",
    ]
    csv = ["band,freq_hz,magnitude_db"]
    for i, (lo, hi) in enumerate(BANDS):
        sos, gain = design(lo, hi)
        rs_lines.append(f"    // s{i + 1}: [{lo}, {hi}) Hz")
        rs_lines.append(f"    ({float(gain)!r}, [")
        for s in sos:
            rs_lines.append("        [" + ", ".join(repr(float(v)) for v in s) + "],")
        rs_lines.append("    ]),")
        radius = max(np.abs(np.roots([1.0, s[4], s[5]])).max() for s in sos)
        txt.append(f"s{i + 1} {lo} {hi} {float(gain)!r}")
        for s in sos:
            txt.append("    " + " ".join(repr(float(v)) for v in s))
        txt.append(f"    max_pole_radius {float(radius)!r}")
        full = sos.copy()
        full[0, :3] *= gain
        freqs = probe_freqs(lo, hi)
        _, h = signal.sosfreqz(full, worN=freqs, fs=FS)
        for f, hv in zip(freqs, h):
            csv.append(f"{i + 1},{float(f)!r},{float(20 * np.log10(abs(hv)))!r}")
    rs_lines.append("];")
    with open("src/filterbank/coefficients.rs", "w") as fh:
        fh.write("\n".join(rs_lines) + "\n")
    with open("data/filterbank_coefficients.txt", "w") as fh:
        fh.write("\n".join(txt) + "\n")
    with open("tests/fixtures/filterbank_response.csv", "w") as fh:
        fh.write("\n".join(csv) + "\n")


if __name__ == "__main__":
    main()
