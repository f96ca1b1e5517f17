#!/usr/bin/env python3
"""Writes eigenform records for Delta (1.12.a.a) and the level-11 weight-2
newform (11.2.a.a), with a_p for all primes up to a bound.

Delta = q * (prod (1 - q^n)^3)^8 with Jacobi's series for prod (1 - q^n)^3;
f11 = q * prod (1 - q^n)^2 (1 - q^{11n})^2 with Euler's pentagonal series.
Products use Kronecker substitution on gmpy2 integers.
"""

import argparse
import json
from pathlib import Path

import gmpy2

BITS = 256


def pack(coeffs):
    width = BITS // 8
    zero = bytes(width)
    pos = b"".join(c.to_bytes(width, "little") if c > 0 else zero for c in coeffs)
    neg = b"".join((-c).to_bytes(width, "little") if c < 0 else zero for c in coeffs)
    return gmpy2.mpz(int.from_bytes(pos, "little")) - gmpy2.mpz(int.from_bytes(neg, "little"))


def unpack(x, n):
    sign = 1
    if x < 0:
        sign, x = -1, -x
    width = BITS // 8
    raw = int(x).to_bytes(max(width * n, (x.bit_length() + 7) // 8), "little")
    half = 1 << (BITS - 1)
    out = []
    carry = 0
    for i in range(n):
        v = int.from_bytes(raw[i * width : (i + 1) * width], "little") + carry
        if v >= half:
            v -= 1 << BITS
            carry = 1
        else:
            carry = 0
        out.append(sign * v)
    return out


def mul(a, b, n):
    return unpack(pack(a[:n]) * pack(b[:n]), n)


def jacobi_cube(n):
    e = [0] * n
    m = 0
    while m * (m + 1) // 2 < n:
        e[m * (m + 1) // 2] = (-1) ** m * (2 * m + 1)
        m += 1
    return e


def pentagonal(n, step=1):
    e = [0] * n
    k = 0
    while True:
        added = False
        for kk in ((k, -k) if k else (0,)):
            idx = step * kk * (3 * kk - 1) // 2
            if idx < n:
                e[idx] += (-1) ** abs(kk)
                added = True
        if not added and k > 0:
            break
        k += 1
    return e


def delta(n):
    e = jacobi_cube(n)
    for _ in range(3):
        e = mul(e, e, n)
    return [0] + e[: n - 1]


def f11(n):
    a = pentagonal(n)
    b = pentagonal(n, 11)
    a2 = mul(a, a, n)
    b2 = mul(b, b, n)
    prod = mul(a2, b2, n)
    return [0] + prod[: n - 1]


def primes(n):
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(n**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(n + 1) if sieve[i]]


def integer(v):
    return v if -(2**63) <= v < 2**63 else str(v)


def cyclo(v):
    return {"M": 1, "coeffs": [[integer(v), 1]]}


TRIVIAL = {"modulus": 1, "order": 1, "images": []}


def record(label, k, level, p, coeffs, bound, norm):
    return {
        "label": label,
        "k": k,
        "N_f": level,
        "p": p,
        "eps_N": TRIVIAL,
        "eps_p": TRIVIAL,
        "ap": {str(l): cyclo(coeffs[l]) for l in primes(bound)},
        "alpha": "+",
        "beta": None,
        "crystalline": True,
        "petersson_norm": norm,
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--bound", type=int, default=100000)
    parser.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "data" / "forms")
    args = parser.parse_args()
    n = args.bound + 1
    args.out.mkdir(parents=True, exist_ok=True)
    d = delta(n)
    assert d[1:5] == [1, -24, 252, -1472]
    f = f11(n)
    assert f[1:8] == [1, -2, -1, 2, 1, 2, -2]
    forms = [
        record("1.12.a.a", 12, 1, 5, d, args.bound, "1.0353620568043209223478168122e-6"),
        record("11.2.a.a", 2, 11, 5, f, args.bound, None),
    ]
    for rec in forms:
        path = args.out / (rec["label"] + ".json")
        path.write_text(json.dumps(rec, indent=None, separators=(",", ":")) + "\n")
        print(path, len(rec["ap"]), "primes")


if __name__ == "__main__":
    main()
