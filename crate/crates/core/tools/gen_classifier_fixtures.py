#!/usr/bin/env python3
"""Reference forward pass for the band classifier, in plain numpy.

Writes a randomly initialised HF0W model and a golden fixture file of
(input grid, posterior) pairs that the Rust inference must reproduce.

Run from crates/core:  python3 tools/gen_classifier_fixtures.py
"""
import struct
import numpy as np

SEED = 20240611
FS = 16000
N = 800
HOP = 160
CONTEXT = 5
LAGS = 320
CHANNELS = 64
CLASSES = 9
FIXTURES = 24


def conv_same(x, k, b):
    # x: (cin, h, w), k: (cout, cin, 3, 3) cross-correlation, zero padding
    cin, h, w = x.shape
    xp = np.zeros((cin, h + 2, w + 2))
    xp[:, 1:-1, 1:-1] = x
    out = np.zeros((k.shape[0], h, w))
    for di in range(3):
        for dj in range(3):
            patch = xp[:, di:di + h, dj:dj + w]
            out += np.einsum("oc,chw->ohw", k[:, :, di, dj], patch)
    return out + b[:, None, None]


def batch_norm(x, g, beta, mean, var, eps):
    return (x - mean[:, None, None]) / np.sqrt(var[:, None, None] + eps) * g[:, None, None] + beta[:, None, None]


def max_pool(x):
    c, h, w = x.shape
    h2, w2 = h // 2, w // 2
    x = x[:, :2 * h2, :2 * w2].reshape(c, h2, 2, w2, 2)
    return x.max(axis=(2, 4))


def forward(t, grid):
    a = conv_same(grid[None, :, :], t["conv1.kernel"], t["conv1.bias"])
    a = np.maximum(a, 0.0)
    a = batch_norm(a, t["bn1.gamma"], t["bn1.beta"], t["bn1.mean"], t["bn1.var"], t["bn1.eps"][0])
    a = max_pool(a)
    a = conv_same(a, t["conv2.kernel"], t["conv2.bias"])
    a = np.maximum(a, 0.0)
    a = batch_norm(a, t["bn2.gamma"], t["bn2.beta"], t["bn2.mean"], t["bn2.var"], t["bn2.eps"][0])
    flat = np.transpose(a, (1, 2, 0)).reshape(-1)  # (row, lag, channel)
    logits = flat @ t["dense.weight"] + t["dense.bias"]
    e = np.exp(logits - logits.max())
    return e / e.sum()


def random_model(rng):
    flat = (CONTEXT // 2) * (LAGS // 2) * CHANNELS
    f32 = lambda a: np.asarray(a, dtype=np.float32).astype(np.float64)
    t = {
        "conv1.kernel": f32(rng.normal(0, 0.5, (CHANNELS, 1, 3, 3))),
        "conv1.bias": f32(rng.normal(0, 0.05, CHANNELS)),
        "bn1.gamma": f32(rng.uniform(0.5, 1.5, CHANNELS)),
        "bn1.beta": f32(rng.normal(0, 0.1, CHANNELS)),
        "bn1.mean": f32(rng.uniform(0.0, 0.3, CHANNELS)),
        "bn1.var": f32(rng.uniform(0.05, 0.5, CHANNELS)),
        "bn1.eps": f32([1e-3]),
        "conv2.kernel": f32(rng.normal(0, 0.06, (CHANNELS, CHANNELS, 3, 3))),
        "conv2.bias": f32(rng.normal(0, 0.05, CHANNELS)),
        "bn2.gamma": f32(rng.uniform(0.5, 1.5, CHANNELS)),
        "bn2.beta": f32(rng.normal(0, 0.1, CHANNELS)),
        "bn2.mean": f32(rng.uniform(0.0, 0.5, CHANNELS)),
        "bn2.var": f32(rng.uniform(0.1, 1.0, CHANNELS)),
        "bn2.eps": f32([1e-3]),
        "dense.weight": f32(rng.normal(0, 0.004, (flat, CLASSES))),
        "dense.bias": f32(rng.normal(0, 0.2, CLASSES)),
    }
    return t


ORDER = ["conv1.kernel", "conv1.bias", "bn1.gamma", "bn1.beta", "bn1.mean", "bn1.var",
         "conv2.kernel", "conv2.bias", "bn2.gamma", "bn2.beta", "bn2.mean", "bn2.var",
         "dense.weight", "dense.bias", "bn1.eps", "bn2.eps"]


def write_hf0w(path, t):
    with open(path, "wb") as fh:
        fh.write(b"HF0W")
        fh.write(struct.pack("<IIII", 1, LAGS, CONTEXT, len(ORDER)))
        for name in ORDER:
            a = t[name]
            raw = name.encode("utf-8")
            fh.write(struct.pack("<H", len(raw)))
            fh.write(raw)
            fh.write(struct.pack("<B", a.ndim))
            fh.write(struct.pack("<%dI" % a.ndim, *a.shape))
            fh.write(np.ascontiguousarray(a, dtype="<f4").tobytes())


def acf_rows(signal):
    frames = []
    count = -(-len(signal) // HOP)
    padded = np.concatenate([signal, np.zeros(N)])
    for i in range(count):
        frames.append(padded[i * HOP:i * HOP + N])
    rows = []
    for f in frames:
        r = np.array([np.dot(f[:N - k], f[k:]) for k in range(LAGS)]) / N
        rows.append(r / r[0] if r[0] > 1e-10 else np.zeros(LAGS))
    return rows


def grid_at(rows, t):
    idx = [min(max(t + d, 0), len(rows) - 1) for d in range(-2, 3)]
    return np.stack([rows[i] for i in idx])


def synth(rng, kind):
    n = np.arange(3200)
    f = rng.uniform(55, 790)
    if kind == "tone":
        return np.sin(2 * np.pi * f * n / FS + rng.uniform(0, 2 * np.pi))
    if kind == "saw":
        return 2 * ((f * n / FS) % 1.0) - 1
    if kind == "noise":
        return rng.normal(0, 0.3, n.size)
    x = np.sin(2 * np.pi * f * n / FS)
    x[1600:] = 0.0  # voiced then silence
    return x


def main():
    rng = np.random.default_rng(SEED)
    t = random_model(rng)
    write_hf0w("tests/fixtures/parity_model.hf0w", t)
    kinds = ["tone", "saw", "noise", "gap"]
    with open("tests/fixtures/parity_fixtures.bin", "wb") as fh:
        fh.write(struct.pack("<I", FIXTURES))
        for i in range(FIXTURES):
            rows = acf_rows(synth(rng, kinds[i % 4]))
            grid = grid_at(rows, int(rng.integers(0, len(rows))))
            grid = grid.astype(np.float32).astype(np.float64)
            post = forward(t, grid)
            fh.write(np.ascontiguousarray(grid, dtype="<f4").tobytes())
            fh.write(np.ascontiguousarray(post, dtype="<f4").tobytes())
            print(i, kinds[i % 4], np.round(post, 3))


if __name__ == "__main__":
    main()
