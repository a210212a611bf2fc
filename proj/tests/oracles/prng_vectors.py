"""Reference outputs for the noise engine's integer pipeline.

Independent pure-Python transcription of SplitMix64, xoshiro256** 1.0,
FNV-1a 64 and the stream-key derivation. Its printout is frozen into
tests/test_noise.cpp.
"""
M = (1 << 64) - 1
G = 0x9E3779B97F4A7C15


def mix64(z):
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & M
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & M
    return z ^ (z >> 31)


def splitmix(seed, n):
    out = []
    for _ in range(n):
        seed = (seed + G) & M
        out.append(mix64(seed))
    return out


def rotl(x, k):
    return ((x << k) | (x >> (64 - k))) & M


def xoshiro(s, n):
    s = list(s)
    out = []
    for _ in range(n):
        out.append((rotl((s[1] * 5) & M, 7) * 9) & M)
        t = (s[1] << 17) & M
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = rotl(s[3], 45)
    return out


def fnv1a(b):
    h = 0xCBF29CE484222325
    for c in b:
        h ^= c
        h = (h * 0x100000001B3) & M
    return h


def key(master, label, bep, rep):
    k = mix64((master + G) & M)
    k = mix64(k ^ fnv1a(label.encode()))
    k = mix64(((k + 2 * G) & M) ^ bep)
    k = mix64(((k + 3 * G) & M) ^ rep)
    return k


print("splitmix(0):", [hex(v) for v in splitmix(0, 3)])
print("xoshiro{1,2,3,4}:", [hex(v) for v in xoshiro([1, 2, 3, 4], 6)])
print("fnv1a('HA'):", hex(fnv1a(b"HA")), "fnv1a(''):", hex(fnv1a(b"")))
k = key(42, "HA", 7, 3)
print("key(42,HA,7,3):", hex(k))
print("xoshiro(splitmix(key)):", [hex(v) for v in xoshiro(splitmix(k, 4), 3)])
