"""Distances of an IIA GSWF from always-transitive and from trivial functions.

* ``d1``: distance (fraction of profiles) to the nearest always-transitive
  IIA GSWF on three alternatives. That class consists of the dictatorships
  and reversed dictatorships of each voter, and of the GSWFs that always
  put one alternative at the top or bottom (two choice functions constant,
  the third arbitrary).
* ``d2``: smallest distance of a choice function ``F_ij (i < j)`` to a
  constant, a dictator or (by default) an anti-dictator.
* ``d2_prime``: smallest distance of a choice function to a constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .cube import BooleanFunction, dual, noise_correlation, walsh_transform
from .errors import DimensionError
from .social import (
    DEFAULT_BUDGET,
    PAIRS3,
    Gswf,
    encode_ranking3,
    outcome_table,
    pair_inputs,
    rankings,
    symmetric_count,
    wilson_interval,
    _pair_bits,
)

# (alternative, position) -> forced bits of (f, g, h); None marks the free pair
PLACEMENTS = {
    (1, "top"): (1, None, 0),
    (1, "bottom"): (0, None, 1),
    (2, "top"): (0, 1, None),
    (2, "bottom"): (1, 0, None),
    (3, "top"): (None, 0, 1),
    (3, "bottom"): (None, 1, 0),
}


@dataclass(frozen=True)
class Distance:
    """A distance value with its witness and how it was obtained.

    ``exact`` is set when the value is an exact rational; ``ci`` when the
    value is a Monte Carlo estimate.
    """

    value: float
    witness: dict
    method: str
    exact: Fraction | None = None
    ci: tuple | None = None

    def to_dict(self) -> dict:
        d = {"value": self.value, "witness": self.witness, "method": self.method}
        if self.exact is not None:
            d["exact"] = {"num": self.exact.numerator, "den": self.exact.denominator}
        if self.ci is not None:
            d["ci95"] = list(self.ci)
        return d


def _prob(count: int, total: int, method: str) -> tuple:
    fr = Fraction(count, total)
    return float(fr), fr, method


# --------------------------------------------------------------------------
# profile distance

def profile_distance(F: Gswf, G: Gswf, budget: int = DEFAULT_BUDGET,
                     samples: int = 200_000, seed: int = 0) -> Distance:
    """``Pr[F != G]`` over uniform profiles (any pairwise outcome differs)."""
    if F.k != G.k or F.n != G.n:
        raise DimensionError("GSWFs must share k and n")
    total = math.factorial(F.k) ** F.n
    if total <= budget:
        a, b = outcome_table(F, budget), outcome_table(G, budget)
        differ = np.zeros(total, dtype=bool)
        for key in a:
            differ |= a[key] != b[key]
        value, exact, method = _prob(int(np.count_nonzero(differ)), total, "enumerate")
        return Distance(value, {}, method, exact)
    if F.k == 3 and F.is_symmetric() and G.is_symmetric():
        lf = [fn.level_values().astype(bool) for fn in F.functions]
        lg = [fn.level_values().astype(bool) for fn in G.functions]
        agree = _level_mask(*(a == b for a, b in zip(lf, lg)))
        count = total - symmetric_count(F.n, agree)
        value, exact, method = _prob(count, total, "symmetric")
        return Distance(value, {}, method, exact)
    est = _mc_distance(F, G, samples, seed)
    return Distance(est[0], {}, "monte-carlo", None, est[1:])


def _level_mask(a, b, c):
    return a[:, None, None] & b[None, :, None] & c[None, None, :]


def _mc_distance(F: Gswf, G: Gswf, samples: int, seed: int) -> tuple:
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(0,)))
    bits = _pair_bits(F.k)
    ranks = rng.integers(0, len(rankings(F.k)), size=(samples, F.n))
    shifts = np.arange(F.n, dtype=np.int64)
    differ = np.zeros(samples, dtype=bool)
    for key in F.pairs:
        idx = (bits[key][ranks] << shifts).sum(axis=1)
        differ |= F.pairs[key].table[idx] != G.pairs[key].table[idx]
    hits = int(np.count_nonzero(differ))
    low, high = wilson_interval(hits, samples)
    return hits / samples, low, high


# --------------------------------------------------------------------------
# D'_2

def d2_prime(F: Gswf) -> Distance:
    """``min_i min(p_i, 1 - p_i)`` over the three choice functions."""
    if F.k != 3:
        raise DimensionError("d2_prime is defined for k = 3")
    best = None
    for i, (key, fn) in enumerate(F.pairs.items()):
        ones = Fraction(fn.ones, 1 << fn.n)
        for b, dist in ((0, ones), (1, 1 - ones)):
            if best is None or dist < best[0]:
                best = (dist, {"function": i + 1, "pair": list(key), "constant": b})
    return Distance(float(best[0]), best[1], "exact", best[0])


# --------------------------------------------------------------------------
# D_2

def _dictator_distances(fn: BooleanFunction) -> np.ndarray:
    """``Pr[f != x_m] = 1/2 - f^({m})`` for m = 1..n."""
    e = walsh_transform(fn)
    singles = e.coeffs[[1 << m for m in range(fn.n)]]
    return 0.5 - singles


def _ordered_pairs(F: Gswf):
    """Choice functions keyed by ``(i, j), i < j``; ``F_13 = dual(F_31)``."""
    for key, fn in F.pairs.items():
        i, j = key
        if i > j:
            yield (j, i), dual(fn)
        else:
            yield key, fn


def d2(F: Gswf, include_antidictators: bool = True) -> Distance:
    """Minimum over pairs ``i < j`` of the distance of ``F_ij`` to constants
    and dictators (and anti-dictators unless disabled)."""
    best = None
    for key, fn in sorted(_ordered_pairs(F), key=lambda kv: kv[0]):
        size = 1 << fn.n
        ones = fn.ones
        cands = [
            (Fraction(ones, size), {"type": "constant", "value": 0}),
            (Fraction(size - ones, size), {"type": "constant", "value": 1}),
        ]
        dist = _dictator_distances(fn)
        for m in range(fn.n):
            cands.append((Fraction(float(dist[m])),
                          {"type": "dictator", "voter": m + 1, "reversed": False}))
            if include_antidictators:
                cands.append((1 - Fraction(float(dist[m])),
                              {"type": "dictator", "voter": m + 1, "reversed": True}))
        for value, w in cands:
            if best is None or value < best[0]:
                best = (value, {"pair": list(key), **w})
    return Distance(float(best[0]), best[1], "exact", best[0])


# --------------------------------------------------------------------------
# D_1

def _indicator(fn: BooleanFunction, bit: int) -> BooleanFunction:
    return fn if bit else fn.complement()


def _placement_agreement(F: Gswf, forced, method: str):
    """Pr[both forced choice functions take their forced values].

    The free choice function is copied from F, which is optimal pointwise.
    """
    idx = [i for i, b in enumerate(forced) if b is not None]
    fns = F.functions
    if method == "symmetric":
        lv = [fns[i].level_values().astype(bool) for i in range(3)]
        masks = [np.ones(F.n + 1, dtype=bool)] * 3
        for i in idx:
            masks[i] = lv[i] == bool(forced[i])
        count = symmetric_count(F.n, _level_mask(*masks))
        return Fraction(count, 6**F.n)
    # any two distinct pairs see per-voter input bits with correlation -1/3
    a, b = (_indicator(fns[i], forced[i]) for i in idx)
    return noise_correlation(a, b, -1.0 / 3.0)


def _dictator_agreement_symmetric(F: Gswf, reverse: bool) -> Fraction:
    # condition on the dictator's ranking; the other n - 1 voters stay symmetric
    lv = [fn.level_values().astype(bool) for fn in F.functions]
    m = F.n - 1
    count = 0
    for r in rankings(3):
        a = encode_ranking3(r)
        target = [bool(bit) != reverse for bit in a]
        masks = [lv[i][a[i]: a[i] + m + 1] == target[i] for i in range(3)]
        count += symmetric_count(m, _level_mask(*masks))
    return Fraction(count, 6**F.n)


def _dictator_agreement_split(F: Gswf, voter: int, reverse: bool, budget: int,
                              samples: int, seed: int):
    """Average over the voter's six rankings of Pr[F^sigma = constant outcome].

    Returns ``(agreement, method)``; the agreement is a Fraction when every
    term was exact.
    """
    from .generators import constant_gswf
    from .social import Ranking, split_by_voter

    exact = Fraction(0)
    approx = 0.0
    method = "enumerate"
    for order, G in split_by_voter(F, voter).items():
        target = tuple(b ^ int(reverse) for b in encode_ranking3(Ranking(order)))
        pairs = list(zip(G.functions, target))
        if any(fn.is_constant() and fn(0) != t for fn, t in pairs):
            continue
        loose = [(fn, t) for fn, t in pairs if not fn.is_constant()]
        if not loose:
            exact += Fraction(1, 6)
        elif len(loose) == 1:
            fn, t = loose[0]
            p = Fraction(fn.ones, 1 << fn.n)
            exact += (p if t else 1 - p) / 6
        elif len(loose) == 2:
            (fa, ta), (fb, tb) = loose
            approx += noise_correlation(_indicator(fa, ta), _indicator(fb, tb), -1.0 / 3.0) / 6
            if method == "enumerate":
                method = "fourier"
        else:
            dist = profile_distance(G, constant_gswf(G.n, target), budget, samples, seed)
            if dist.exact is not None:
                exact += (1 - dist.exact) / 6
            else:
                approx += (1 - dist.value) / 6
                method = "monte-carlo"
    if method == "enumerate":
        return exact, method
    return float(exact) + approx, method


def d1(F: Gswf, budget: int = DEFAULT_BUDGET, samples: int = 200_000,
       seed: int = 0) -> Distance:
    """Distance to the nearest always-transitive IIA GSWF (k = 3).

    Candidates are scanned in canonical order (dictators by voter, plain
    before reversed; then placements by alternative, top before bottom)
    and the first minimiser is the witness.

    Routes: full enumeration when ``6^n <= budget``; exact weight counting
    when every choice function is symmetric; otherwise placements use the
    pairwise Fourier identity and dictators are split on their voter, with a
    Monte Carlo fallback for three-way terms (``method == 'monte-carlo'``).
    """
    if F.k != 3:
        raise DimensionError("d1 is implemented for k = 3 (per triple of alternatives)")
    n = F.n
    total = 6**n
    cands = []  # (distance, witness, exact or None)
    if total <= budget:
        method = "enumerate"
        out = list(outcome_table(F, budget).values())
        inputs = pair_inputs(3, n)
        for j in range(1, n + 1):
            vb = [((inputs[key] >> (j - 1)) & 1).astype(np.uint8) for key in PAIRS3]
            for reverse in (False, True):
                agree = np.ones(total, dtype=bool)
                for o, v in zip(out, vb):
                    agree &= o == (v ^ np.uint8(reverse))
                fr = Fraction(total - int(np.count_nonzero(agree)), total)
                cands.append((fr, {"type": "dictator", "voter": j, "reversed": reverse}, fr))
        for (alt, pos), forced in PLACEMENTS.items():
            agree = np.ones(total, dtype=bool)
            for o, b in zip(out, forced):
                if b is not None:
                    agree &= o == b
            fr = Fraction(total - int(np.count_nonzero(agree)), total)
            cands.append((fr, _placement_witness(alt, pos, forced), fr))
    elif F.is_symmetric():
        method = "symmetric"
        # every voter is interchangeable, so voter 1 represents all dictators
        for reverse in (False, True):
            fr = 1 - _dictator_agreement_symmetric(F, reverse)
            cands.append((fr, {"type": "dictator", "voter": 1, "reversed": reverse}, fr))
        for (alt, pos), forced in PLACEMENTS.items():
            fr = 1 - _placement_agreement(F, forced, "symmetric")
            cands.append((fr, _placement_witness(alt, pos, forced), fr))
    else:
        method = "fourier"
        for j in range(1, n + 1):
            for reverse in (False, True):
                agree, how = _dictator_agreement_split(F, j, reverse, budget, samples, seed)
                if how == "monte-carlo":
                    method = "monte-carlo"
                exact = 1 - agree if isinstance(agree, Fraction) else None
                cands.append((1 - agree, {"type": "dictator", "voter": j, "reversed": reverse}, exact))
        for (alt, pos), forced in PLACEMENTS.items():
            agree = _placement_agreement(F, forced, "fourier")
            cands.append((1 - agree, _placement_witness(alt, pos, forced), None))
    value, witness, exact = min(cands, key=lambda c: c[0])
    return Distance(float(value), witness, method, exact)


def _placement_witness(alt: int, pos: str, forced) -> dict:
    free = PAIRS3[forced.index(None)]
    return {"type": "placement", "alternative": alt, "position": pos, "free_pair": list(free)}


def family_member(n: int, witness: dict, F: Gswf | None = None) -> Gswf:
    """Materialise a D_1 witness as a GSWF (placements copy F's free function)."""
    from .generators import constant, dictatorship_gswf

    if witness["type"] == "dictator":
        return dictatorship_gswf(n, witness["voter"], witness["reversed"])
    forced = PLACEMENTS[(witness["alternative"], witness["position"])]
    fns = []
    for i, b in enumerate(forced):
        if b is None:
            if F is None:
                raise ValueError("placement witness needs F for the free function")
            fns.append(F.functions[i])
        else:
            fns.append(constant(n, b))
    return Gswf.three(*fns)


# --------------------------------------------------------------------------
# report

@dataclass(frozen=True)
class DistanceReport:
    d1: Distance
    d2: Distance
    d2_prime: Distance
    notes: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "d1": self.d1.to_dict(),
            "d2": self.d2.to_dict(),
            "d2_prime": self.d2_prime.to_dict(),
            **({"notes": self.notes} if self.notes else {}),
        }


def distance_report(F: Gswf, budget: int = DEFAULT_BUDGET, include_antidictators: bool = True,
                    samples: int = 200_000, seed: int = 0) -> DistanceReport:
    return DistanceReport(
        d1(F, budget, samples, seed),
        d2(F, include_antidictators),
        d2_prime(F),
    )


__all__ = [
    "Distance",
    "DistanceReport",
    "PLACEMENTS",
    "d1",
    "d2",
    "d2_prime",
    "distance_report",
    "family_member",
    "profile_distance",
]
