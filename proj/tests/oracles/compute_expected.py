#!/usr/bin/env python3
"""Independent brute-force oracles used to freeze expected values in the C++ tests.

Everything here is deliberately naive: full subset enumeration, trial division,
direct products. Run it to regenerate the constants quoted in tests/.
"""
import itertools
import math
from fractions import Fraction


def is_prime(m):
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


def primes_upto(n):
    return [p for p in range(2, n + 1) if is_prime(p)]


def distinct_primes(m):
    out, d = [], 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def good(a, h):
    for pivot in a:
        rest = [x for x in a if x != pivot]
        for cof in itertools.combinations(rest, h):
            if math.prod(cof) % pivot == 0:
                return False
    return True


def count_brute(n, h, universe_start=1):
    u = list(range(universe_start, n + 1))
    total = 0
    for k in range(len(u) + 1):
        for s in itertools.combinations(u, k):
            if good(s, h):
                total += 1
    return total


def tn(n):
    r = 1
    for p in primes_upto(n):
        if p * p > n:
            r *= n // p + 1
    return r


def main():
    print("H_2(n), n=1..16:", [count_brute(n, 2) for n in range(1, 17)])
    print("H_3(n), n=1..14:", [count_brute(n, 3) for n in range(1, 15)])
    print("H_4(n), n=1..13:", [count_brute(n, 4) for n in range(1, 14)])
    print("H_2 avoiding 1, n=1..16:", [count_brute(n, 2, 2) for n in range(1, 17)])
    print("tn(4), tn(10), tn(30):", tn(4), tn(10), tn(30))
    print("tn(100), tn(1000):", tn(100), tn(1000))
    print("pi(10^6):", len(primes_upto(10 ** 6)) if False else "see sieve below")
    mert10 = sum(Fraction(1, p) for p in [2, 3, 5, 7])
    print("mertens(10) =", float(mert10), mert10)
    # c_p at n=100 with I=(sqrt(n)/log n, n]
    n = 100
    lo = math.sqrt(n) / math.log(n)
    inI = [p for p in primes_upto(n) if p > lo]
    c = {p: 0 for p in inI}
    for m in range(2, n + 1):
        big = [q for q in distinct_primes(m) if q > lo]
        if len(big) == 1:
            c[big[0]] += 1
    print("n=100 lower=", lo, "c_3 =", c[3], "count =", math.prod(v + 1 for v in c.values()))
    # alpha partial product
    s = sum(math.log1p(1 / i) / i for i in range(1, 10 ** 4 + 1))
    print("alpha_bracket(1e4):", math.exp(s), math.exp(s + 1e-4))
    # extremal small values (h=2)
    for n in range(1, 13):
        best = 0
        for k in range(n, 0, -1):
            if any(good(s, 2) for s in itertools.combinations(range(1, n + 1), k)):
                best = k
                break
        print("F_2(%d) = %d" % (n, best))


if __name__ == "__main__":
    main()
