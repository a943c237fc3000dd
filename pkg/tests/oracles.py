"""Slow reference implementations written straight from the definitions.

Nothing here calls the vectorised code paths of the package; inputs are
plain truth tables (sequences of 0/1 indexed by the input bitmask).
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def bits_of(x: int, n: int) -> list:
    return [(x >> i) & 1 for i in range(n)]


def walsh_coefficient(table, n: int, mask: int) -> Fraction:
    total = 0
    for x in range(1 << n):
        chi = 1
        for i in range(n):
            if (mask >> i) & 1:
                chi *= 2 * ((x >> i) & 1) - 1
        total += table[x] * chi
    return Fraction(total, 1 << n)


def noise_correlation(f, g, n: int, eps: Fraction) -> Fraction:
    """E[f(x) g(y)] where each y_i equals x_i with probability (1 + eps)/2."""
    same = (1 + eps) / 2
    total = Fraction(0)
    for x in range(1 << n):
        if not f[x]:
            continue
        for y in range(1 << n):
            if not g[y]:
                continue
            agree = n - bin(x ^ y).count("1")
            total += same**agree * (1 - same) ** (n - agree)
    return total / (1 << n)


def pair_bit(order, a: int, b: int) -> int:
    return int(order.index(a) < order.index(b))


def society(tables: dict, profile) -> dict:
    """Pairwise outcomes for a profile of orders (tuples of alternatives)."""
    out = {}
    for (a, b), t in tables.items():
        x = sum(pair_bit(o, a, b) << i for i, o in enumerate(profile))
        out[(a, b)] = t[x]
    return out


def prefers(out: dict, a: int, b: int) -> bool:
    if (a, b) in out:
        return bool(out[(a, b)])
    return not out[(b, a)]


def transitive(out: dict, k: int) -> bool:
    alts = range(1, k + 1)
    for a, b, c in itertools.permutations(alts, 3):
        if prefers(out, a, b) and prefers(out, b, c) and not prefers(out, a, c):
            return False
    return True


def p_nontransitive(tables: dict, k: int, n: int) -> Fraction:
    orders = list(itertools.permutations(range(1, k + 1)))
    bad = sum(
        not transitive(society(tables, prof), k)
        for prof in itertools.product(orders, repeat=n)
    )
    return Fraction(bad, len(orders) ** n)


def distance(t1: dict, t2: dict, n: int) -> Fraction:
    orders = list(itertools.permutations((1, 2, 3)))
    diff = sum(
        society(t1, prof) != society(t2, prof)
        for prof in itertools.product(orders, repeat=n)
    )
    return Fraction(diff, 6**n)


def always_transitive_family(n: int) -> list:
    """Every k=3 IIA GSWF with P = 0, found by exhaustive search (n <= 2)."""
    size = 1 << n
    tables = list(itertools.product((0, 1), repeat=size))
    orders = list(itertools.permutations((1, 2, 3)))
    profiles = list(itertools.product(orders, repeat=n))
    keys = ((1, 2), (2, 3), (3, 1))
    inputs = [
        [sum(pair_bit(o, a, b) << i for i, o in enumerate(prof)) for a, b in keys]
        for prof in profiles
    ]
    family = []
    for f, g, h in itertools.product(tables, repeat=3):
        if all(not (f[x] == g[y] == h[z]) for x, y, z in inputs):
            family.append({(1, 2): f, (2, 3): g, (3, 1): h})
    return family
