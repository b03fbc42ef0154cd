#!/usr/bin/env python3
"""Independent reference computations for the frozen test fixtures.

Every expected value pinned in the C++ tests was produced by this script
(scipy/mpmath + hand-written statistic formulas, no shared code with the
C++ implementation). Re-run it to regenerate the numbers:

    python3 tests/oracle/reference_values.py
"""

import math

import mpmath
from scipy.special import erfc, gammaincc

mpmath.mp.dps = 50


# ---------------------------------------------------------------------------
# Bessel J0 references (mpmath, 50 digits)
# ---------------------------------------------------------------------------

def bessel_refs():
    print("== Bessel J0 ==")
    for x in [0.0, 0.5, 1.0, 2.0, 2.404825557695773, 2.404826, 3.0, 5.0,
              8.0, 10.0, 11.9, 12.1, 15.0, 20.0, 30.0, 50.0, 100.0]:
        print(f"J0({x!r}) = {mpmath.nstr(mpmath.besselj(0, mpmath.mpf(x)), 17)}")
    # first zero of J0
    print("j0_1 =", mpmath.nstr(mpmath.besseljzero(0, 1), 17))


# ---------------------------------------------------------------------------
# NIST SP 800-22 statistics, written directly from the statistic definitions
# ---------------------------------------------------------------------------

def frequency_p(bits):
    n = len(bits)
    s = sum(1 if b else -1 for b in bits)
    return erfc(abs(s) / math.sqrt(n) / math.sqrt(2.0))


def block_frequency_p(bits, m):
    n = len(bits)
    nblocks = n // m
    chi2 = 0.0
    for i in range(nblocks):
        pi = sum(bits[i * m:(i + 1) * m]) / m
        chi2 += (pi - 0.5) ** 2
    chi2 *= 4.0 * m
    return gammaincc(nblocks / 2.0, chi2 / 2.0)


def runs_p(bits):
    n = len(bits)
    pi = sum(bits) / n
    if abs(pi - 0.5) >= 2.0 / math.sqrt(n):
        return 0.0
    v = 1 + sum(1 for k in range(n - 1) if bits[k] != bits[k + 1])
    num = abs(v - 2.0 * n * pi * (1.0 - pi))
    den = 2.0 * math.sqrt(2.0 * n) * pi * (1.0 - pi)
    return erfc(num / den)


LONGEST_RUNS_TABLES = {
    8: (3, [1, 2, 3, 4], [0.2148, 0.3672, 0.2305, 0.1875]),
    128: (5, [4, 5, 6, 7, 8, 9], [0.1174, 0.2430, 0.2493, 0.1752, 0.1027, 0.1124]),
    10000: (6, [10, 11, 12, 13, 14, 15, 16],
            [0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727]),
}


def longest_runs_p(bits):
    n = len(bits)
    if n < 6272:
        m = 8
    elif n < 750000:
        m = 128
    else:
        m = 10000
    k, edges, pis = LONGEST_RUNS_TABLES[m]
    nblocks = n // m
    counts = [0] * (k + 1)
    for i in range(nblocks):
        block = bits[i * m:(i + 1) * m]
        longest = run = 0
        for b in block:
            run = run + 1 if b else 0
            longest = max(longest, run)
        cat = 0
        while cat < k and longest > edges[cat]:
            cat += 1
        counts[cat] += 1
    chi2 = sum((counts[i] - nblocks * pis[i]) ** 2 / (nblocks * pis[i])
               for i in range(k + 1))
    return gammaincc(k / 2.0, chi2 / 2.0), m, counts, chi2


def psi_sq(bits, m):
    if m <= 0:
        return 0.0
    n = len(bits)
    ext = bits + bits[:m - 1]
    counts = {}
    for i in range(n):
        pat = tuple(ext[i:i + m])
        counts[pat] = counts.get(pat, 0) + 1
    return (2 ** m / n) * sum(c * c for c in counts.values()) - n


def serial_p(bits, m):
    d1 = psi_sq(bits, m) - psi_sq(bits, m - 1)
    d2 = psi_sq(bits, m) - 2 * psi_sq(bits, m - 1) + psi_sq(bits, m - 2)
    p1 = gammaincc(2 ** (m - 2), d1 / 2.0)
    p2 = gammaincc(2 ** (m - 3), d2 / 2.0)
    return p1, p2


def berlekamp_massey(bits):
    n = len(bits)
    c = [0] * (n + 1)
    b = [0] * (n + 1)
    c[0] = b[0] = 1
    l, m = 0, -1
    for i in range(n):
        d = bits[i]
        for j in range(1, l + 1):
            d ^= c[j] & bits[i - j]
        if d:
            t = c[:]
            shift = i - m
            for j in range(n + 1 - shift):
                c[j + shift] ^= b[j]
            if 2 * l <= i:
                l = i + 1 - l
                m = i
                b = t
    return l


def linear_complexity_p(bits, m):
    n = len(bits)
    nblocks = n // m
    mu = m / 2.0 + (9.0 + (-1.0) ** (m + 1)) / 36.0 - (m / 3.0 + 2.0 / 9.0) / 2.0 ** m
    pis = [0.010417, 0.03125, 0.125, 0.5, 0.25, 0.0625, 0.020833]
    counts = [0] * 7
    sign = 1.0 if m % 2 == 0 else -1.0
    for i in range(nblocks):
        l = berlekamp_massey(bits[i * m:(i + 1) * m])
        t = sign * (l - mu) + 2.0 / 9.0
        if t <= -2.5:
            counts[0] += 1
        elif t <= -1.5:
            counts[1] += 1
        elif t <= -0.5:
            counts[2] += 1
        elif t <= 0.5:
            counts[3] += 1
        elif t <= 1.5:
            counts[4] += 1
        elif t <= 2.5:
            counts[5] += 1
        else:
            counts[6] += 1
    chi2 = sum((counts[i] - nblocks * pis[i]) ** 2 / (nblocks * pis[i])
               for i in range(7))
    return gammaincc(3.0, chi2 / 2.0), counts, chi2


def parse(s):
    return [int(ch) for ch in s if ch in "01"]


def xorshift_bits(count, state=0x9E3779B97F4A7C15):
    """Tiny xorshift64 used only to produce reproducible fixture files."""
    bits = []
    while len(bits) < count:
        state ^= (state << 13) & 0xFFFFFFFFFFFFFFFF
        state ^= state >> 7
        state ^= (state << 17) & 0xFFFFFFFFFFFFFFFF
        for k in range(64):
            bits.append((state >> k) & 1)
    return bits[:count]


def nist_refs():
    print("\n== NIST fixtures ==")
    v10 = parse("1011010101")
    print("frequency  1011010101          ->", f"{frequency_p(v10):.9f}")
    alt100 = parse("01" * 50)
    print("frequency  alternating n=100   ->", f"{frequency_p(alt100):.9f}")
    vec128 = xorshift_bits(128)
    print("fixture128 =", "".join(str(b) for b in vec128))
    print("frequency  fixture128          ->", f"{frequency_p(vec128):.9f}")
    ones1000 = [1] * 1000
    print("frequency  all-ones n=1000     ->", f"{frequency_p(ones1000):.6e}")

    print("blockfreq  0110011010 M=3      ->", f"{block_frequency_p(parse('0110011010'), 3):.9f}")
    print("blockfreq  fixture128 M=16     ->", f"{block_frequency_p(vec128, 16):.9f}")
    print("blockfreq  alternating100 M=10 ->", f"{block_frequency_p(alt100, 10):.9f}")

    print("runs       1001101011          ->", f"{runs_p(parse('1001101011')):.9f}")
    print("runs       fixture128          ->", f"{runs_p(vec128):.9f}")
    print("runs       alternating n=100   ->", f"{runs_p(alt100):.6e}")

    p, m, counts, chi2 = longest_runs_p(vec128)
    print(f"longestrun fixture128 (M={m}, nu={counts}, chi2={chi2:.6f}) -> {p:.9f}")
    bits6272 = xorshift_bits(6272, state=0x243F6A8885A308D3)
    with open("tests/data/fixture6272.bits", "w") as f:
        f.write("".join(str(b) for b in bits6272) + "\n")
    p, m, counts, chi2 = longest_runs_p(bits6272)
    print(f"longestrun fixture6272 (M={m}, nu={counts}, chi2={chi2:.6f}) -> {p:.9f}")
    ones128 = [1] * 128
    p, m, counts, chi2 = longest_runs_p(ones128)
    print(f"longestrun all-ones n=128 -> {p:.6e}")

    p1, p2 = serial_p(parse("0011011101"), 3)
    print(f"serial     0011011101 m=3     -> p1={p1:.9f} p2={p2:.9f}")
    p1, p2 = serial_p(vec128, 3)
    print(f"serial     fixture128 m=3     -> p1={p1:.9f} p2={p2:.9f}")
    p1, p2 = serial_p(bits6272, 3)
    print(f"serial     fixture6272 m=3    -> p1={p1:.9f} p2={p2:.9f}")

    print("bm all-zeros n=16  ->", berlekamp_massey([0] * 16))
    print("bm 0001            ->", berlekamp_massey(parse("0001")))
    # m-sequence from x^4 + x + 1, seed 0001
    reg = [0, 0, 0, 1]
    mseq = []
    for _ in range(15):
        mseq.append(reg[3])
        fb = reg[3] ^ reg[0]
        reg = [fb] + reg[:3]
    print("m-seq period-15    =", "".join(str(b) for b in mseq),
          " L =", berlekamp_massey(mseq))

    bits10k = xorshift_bits(10000, state=0x13198A2E03707344)
    with open("tests/data/fixture10000.bits", "w") as f:
        f.write("".join(str(b) for b in bits10k) + "\n")
    p, counts, chi2 = linear_complexity_p(bits10k, 500)
    print(f"lincomp    fixture10000 M=500 (nu={counts}, chi2={chi2:.6f}) -> {p:.9f}")
    p, counts, chi2 = linear_complexity_p([0] * 10000, 500)
    print(f"lincomp    all-zeros M=500    -> {p:.6e}")


# ---------------------------------------------------------------------------
# Capacity algebra spot values (plain double math, independent route)
# ---------------------------------------------------------------------------

def capacity_refs():
    print("\n== capacity ==")

    def dets(x, rho):
        return rho * x + 1, (rho * rho + 2) * x + 1, (rho * rho + 1) * x + 1

    def printed13(x, rho):
        num = (rho**4 + 2 * rho**2 + 1) * x * x + (2 * rho**2 + 4 * rho + 2) * x + 1
        den = (rho**3 + 2 * rho) * x * x + (rho**2 + rho + 2) * x + 1
        return max(0.0, math.log2(num / den))

    def composed(x, rho):
        de, dj, dp = dets(x, rho)
        return max(0.0, math.log2(dp * dp / (de * dj)))

    def indep(x):
        return math.log2((x + 1) ** 2 / (2 * x + 1))

    print("dets(2, 0.5)        =", dets(2.0, 0.5))
    print("dets(10, 0)         =", dets(10.0, 0.0))
    print("printed13(1, 0)     =", f"{printed13(1, 0):.9f}")
    print("printed13(1, 1)     =", f"{printed13(1, 1):.9f}", "(log2 13/8 =", f"{math.log2(13/8):.9f})")
    print("composed(1, 1)      =", f"{composed(1, 1):.9f}", "(log2 9/8  =", f"{math.log2(9/8):.9f})")
    print("indep(1)            =", f"{indep(1):.9f}")
    # conditional Gaussian CMI of the physical correlation model, derived from
    # the exact covariance structure (shared signal variance x, unit noise,
    # eve coefficient correlation rho):
    #   det R(E) = x+1, det R(A,E) = (1-r^2)x^2+2x+1,
    #   det R(A,B,E) = (2-2r^2)x^2+3x+1
    def cmi_physical(x, rho):
        pair = (1 - rho * rho) * x * x + 2 * x + 1
        joint = (2 - 2 * rho * rho) * x * x + 3 * x + 1
        return math.log2(pair * pair / ((x + 1) * joint))

    for x in (1.0, 10.0):
        for rho in (0.0, 0.3, 0.7):
            print(f"cmi_physical(x={x}, rho={rho}) = {cmi_physical(x, rho):.9f}   "
                  f"composed = {composed(x, rho):.9f}")


if __name__ == "__main__":
    bessel_refs()
    nist_refs()
    capacity_refs()
