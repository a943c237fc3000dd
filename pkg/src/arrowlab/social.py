"""Profiles, IIA GSWFs and the probability of a non-transitive outcome.

A GSWF satisfying IIA is a family of pairwise choice functions. For three
alternatives the family is stored as ``(f, g, h) = (F_12, F_23, F_31)``;
voter ``v``'s input bit to ``F_ab`` is 1 iff that voter ranks ``a`` above ``b``.
"""

from __future__ import annotations

import functools
import itertools
import math
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cube import BooleanFunction, dual, noise_correlation, walsh_transform
from .errors import DimensionError, EncodingError, ResourceError

PAIRS3 = ((1, 2), (2, 3), (3, 1))
DEFAULT_BUDGET = 6**8
MC_CHUNK = 1 << 16


@dataclass(frozen=True)
class Ranking:
    """Strict linear order, most preferred alternative first."""

    order: tuple

    def __post_init__(self):
        order = tuple(int(a) for a in self.order)
        if sorted(order) != list(range(1, len(order) + 1)):
            raise EncodingError(f"not a permutation of 1..{len(order)}: {order}")
        object.__setattr__(self, "order", order)

    @property
    def k(self) -> int:
        return len(self.order)

    def prefers(self, a: int, b: int) -> bool:
        return self.order.index(a) < self.order.index(b)


@functools.lru_cache(maxsize=None)
def rankings(k: int) -> tuple:
    """All rankings of ``k`` alternatives in lexicographic order."""
    return tuple(Ranking(p) for p in itertools.permutations(range(1, k + 1)))


def encode_ranking3(r: Ranking) -> tuple:
    """``(x, y, z) = ([1>2], [2>3], [3>1])``."""
    if r.k != 3:
        raise DimensionError("encode_ranking3 needs k = 3")
    return tuple(int(r.prefers(a, b)) for a, b in PAIRS3)


def decode_ranking3(bits) -> Ranking:
    bits = tuple(int(b) for b in bits)
    for r in rankings(3):
        if encode_ranking3(r) == bits:
            return r
    raise EncodingError(f"bit triple {bits} does not encode a ranking (cyclic)")


@dataclass(frozen=True)
class Profile:
    """One ranking per voter; voter 1 first."""

    voters: tuple

    def __post_init__(self):
        voters = tuple(v if isinstance(v, Ranking) else Ranking(v) for v in self.voters)
        if not voters:
            raise DimensionError("a profile needs at least one voter")
        if len({v.k for v in voters}) != 1:
            raise DimensionError("all rankings in a profile must share k")
        object.__setattr__(self, "voters", voters)

    @property
    def k(self) -> int:
        return self.voters[0].k

    @property
    def n(self) -> int:
        return len(self.voters)

    def pair_input(self, a: int, b: int) -> int:
        """n-bit input to ``F_ab``: bit ``v-1`` set iff voter ``v`` prefers a over b."""
        x = 0
        for v, r in enumerate(self.voters):
            if r.prefers(a, b):
                x |= 1 << v
        return x


def profile_from_index(k: int, n: int, index: int) -> Profile:
    """Inverse of the canonical enumeration (mixed radix, voter 1 fastest)."""
    rs = rankings(k)
    voters = []
    for _ in range(n):
        index, d = divmod(index, len(rs))
        voters.append(rs[d])
    return Profile(tuple(voters))


def iter_profiles(k: int, n: int):
    for i in range(math.factorial(k) ** n):
        yield profile_from_index(k, n, i)


@dataclass(frozen=True, eq=False)
class Gswf:
    """IIA generalized social welfare function.

    ``pairs`` maps an oriented pair ``(a, b)`` to the choice function whose
    output is 1 iff society ranks ``a`` above ``b``. Keys are ``PAIRS3`` for
    ``k = 3`` and ``(i, j), i < j`` otherwise.
    """

    k: int
    n: int
    pairs: dict

    def __post_init__(self):
        if self.k < 3:
            raise DimensionError("a GSWF needs k >= 3 alternatives")
        expected = set(pair_keys(self.k))
        if set(self.pairs) != expected:
            raise DimensionError(f"pair keys {sorted(self.pairs)} != {sorted(expected)}")
        for key, fn in self.pairs.items():
            if fn.n != self.n:
                raise DimensionError(f"F_{key} has arity {fn.n}, expected {self.n}")
        ordered = {key: self.pairs[key] for key in pair_keys(self.k)}
        object.__setattr__(self, "pairs", ordered)

    @classmethod
    def three(cls, f: BooleanFunction, g: BooleanFunction, h: BooleanFunction) -> "Gswf":
        if not f.n == g.n == h.n:
            raise DimensionError("f, g, h must share an arity")
        return cls(3, f.n, dict(zip(PAIRS3, (f, g, h))))

    @classmethod
    def from_pairs(cls, k: int, mapping: dict) -> "Gswf":
        """Accepts ``(i, j), i < j`` keys for any k; for k = 3 an ``F_13``
        is converted to ``F_31 = dual(F_13)``."""
        mapping = dict(mapping)
        if k == 3 and (1, 3) in mapping:
            mapping[(3, 1)] = dual(mapping.pop((1, 3)))
        arities = {fn.n for fn in mapping.values()}
        if len(arities) != 1:
            raise DimensionError("all choice functions must share an arity")
        return cls(k, arities.pop(), mapping)

    @property
    def functions(self) -> tuple:
        return tuple(self.pairs.values())

    @property
    def f(self):
        return self.pairs[(1, 2)]

    @property
    def g(self):
        return self.pairs[(2, 3)]

    @property
    def h(self):
        return self.pairs[(3, 1)]

    @property
    def expectations(self) -> tuple:
        """``(p_1, p_2, p_3, ...)`` in pair-key order."""
        return tuple(fn.expectation for fn in self.functions)

    def __eq__(self, other):
        if not isinstance(other, Gswf):
            return NotImplemented
        return self.k == other.k and self.n == other.n and self.pairs == other.pairs

    def __hash__(self):
        return hash((self.k, self.n, tuple(self.pairs.values())))

    def is_symmetric(self) -> bool:
        return all(fn.level_values() is not None for fn in self.functions)


def pair_keys(k: int) -> tuple:
    if k == 3:
        return PAIRS3
    return tuple(itertools.combinations(range(1, k + 1), 2))


@dataclass(frozen=True)
class Outcome:
    """Society's bit for each pair key, in the GSWF's key order."""

    k: int
    keys: tuple
    bits: tuple

    def prefers(self, a: int, b: int) -> bool:
        if (a, b) in self.keys:
            return bool(self.bits[self.keys.index((a, b))])
        return not self.bits[self.keys.index((b, a))]


def evaluate(F: Gswf, P: Profile) -> Outcome:
    if P.k != F.k or P.n != F.n:
        raise DimensionError(f"profile is (k={P.k}, n={P.n}), GSWF is (k={F.k}, n={F.n})")
    bits = tuple(fn(P.pair_input(a, b)) for (a, b), fn in F.pairs.items())
    return Outcome(F.k, tuple(F.pairs), bits)


def is_transitive(o: Outcome) -> bool:
    if o.k == 3 and o.keys == PAIRS3:
        return len(set(o.bits)) == 2
    # a tournament is acyclic iff its out-degrees are 0, 1, ..., k-1
    outdeg = [0] * (o.k + 1)
    for (a, b), bit in zip(o.keys, o.bits):
        outdeg[a if bit else b] += 1
    return sorted(outdeg[1:]) == list(range(o.k))


# --------------------------------------------------------------------------
# exact enumeration over all k!^n profiles

def _check_budget(k: int, n: int, budget: int) -> int:
    total = math.factorial(k) ** n
    if total > budget:
        raise ResourceError(
            f"{total} profiles (k={k}, n={n}) exceed the enumeration budget {budget}; "
            "raise --budget or use Monte Carlo (--methods mc)",
            flag="--budget",
        )
    return total


def _pair_bits(k: int) -> dict:
    """For each pair key, the bit that each ranking (lexicographic index) feeds it."""
    rs = rankings(k)
    return {
        key: np.array([int(r.prefers(*key)) for r in rs], dtype=np.int64)
        for key in pair_keys(k)
    }


def pair_inputs(k: int, n: int) -> dict:
    """Input index to every pairwise function for every profile, canonical order."""
    bits = _pair_bits(k)
    m = len(rankings(k))
    out = {}
    for key, b in bits.items():
        idx = np.zeros(1, dtype=np.int64)
        for v in range(n):
            # voter v is the slowest digit so far: blocks of the previous array
            idx = (idx[None, :] + (b[:, None] << v)).ravel()
        out[key] = idx
        assert idx.size == m**n
    return out


def outcome_table(F: Gswf, budget: int = DEFAULT_BUDGET) -> dict:
    """Outcome bit per pair for every profile in canonical order."""
    _check_budget(F.k, F.n, budget)
    inputs = pair_inputs(F.k, F.n)
    return {key: fn.table[inputs[key]] for key, fn in F.pairs.items()}


def transitive_mask(k: int, outcomes: dict) -> np.ndarray:
    cols = list(outcomes.values())
    if k == 3:
        f, g, h = cols
        return ~((f == g) & (g == h))
    rows = cols[0].size
    outdeg = np.zeros((rows, k), dtype=np.int16)
    for (a, b), bit in outcomes.items():
        outdeg[:, a - 1] += bit
        outdeg[:, b - 1] += 1 - bit
    outdeg.sort(axis=1)
    return np.all(outdeg == np.arange(k), axis=1)


# --------------------------------------------------------------------------
# symmetric GSWFs: outcomes depend only on the weights (|x|, |y|, |z|)

_TYPES3 = tuple(encode_ranking3(r) for r in rankings(3))


@functools.lru_cache(maxsize=64)
def weight_counts(n: int) -> np.ndarray:
    """``N[a, b, c]`` = number of profiles of n voters with ``|x|=a, |y|=b, |z|=c``.

    Object array of Python ints, so counts stay exact for any n.
    """
    N = np.zeros((n + 1,) * 3, dtype=object)
    N[0, 0, 0] = 1
    for step in range(n):
        new = np.zeros_like(N)
        top = step + 1
        for bx, by, bz in _TYPES3:
            new[bx:top + 1, by:top + 1, bz:top + 1] += N[: top + 1 - bx, : top + 1 - by, : top + 1 - bz]
        N = new
    N.flags.writeable = False
    return N


def symmetric_count(n: int, mask: np.ndarray) -> int:
    """Exact number of profiles whose weight triple lies in ``mask``."""
    N = weight_counts(n)
    return int(sum(N[mask].tolist(), 0))


def _levels(F: Gswf):
    levels = [fn.level_values() for fn in F.functions]
    if any(v is None for v in levels):
        return None
    return levels


def count_nontransitive(F: Gswf, budget: int = DEFAULT_BUDGET, method: str = "auto"):
    """``(count, total)``: non-transitive profiles among all ``k!^n``.

    ``method`` is ``enumerate``, ``symmetric`` (k = 3, every choice function a
    function of the Hamming weight only) or ``auto``.
    """
    total = math.factorial(F.k) ** F.n
    if method == "auto":
        if total <= budget:
            method = "enumerate"
        elif F.k == 3 and F.is_symmetric():
            method = "symmetric"
        else:
            _check_budget(F.k, F.n, budget)
    if method == "enumerate":
        out = outcome_table(F, budget)
        return int(np.count_nonzero(~transitive_mask(F.k, out))), total
    if method == "symmetric":
        if F.k != 3:
            raise DimensionError("the symmetric route covers k = 3 only")
        levels = _levels(F)
        if levels is None:
            raise ValueError("the symmetric route needs symmetric choice functions")
        fv, gv, hv = (v.astype(bool) for v in levels)
        cyc = (fv[:, None, None] == gv[None, :, None]) & (gv[None, :, None] == hv[None, None, :])
        return symmetric_count(F.n, cyc), total
    raise ValueError(f"unknown method {method!r}")


def p_nontransitive_exact(F: Gswf, budget: int = DEFAULT_BUDGET, method: str = "auto") -> Fraction:
    count, total = count_nontransitive(F, budget, method)
    return Fraction(count, total)


# --------------------------------------------------------------------------
# Fourier formula

def p_nontransitive_fourier(F: Gswf) -> float:
    """Kalai's formula::

        p1 p2 p3 + (1-p1)(1-p2)(1-p3) + sum_{S != {}} (-1/3)^|S| [f^g^ + g^h^ + h^f^](S)
    """
    if F.k != 3:
        raise DimensionError("the Fourier formula is for k = 3")
    ef, eg, eh = (walsh_transform(fn) for fn in F.functions)
    p1, p2, p3 = ef.mean, eg.mean, eh.mean
    total = p1 * p2 * p3 + (1 - p1) * (1 - p2) * (1 - p3)
    for a, b in ((ef, eg), (eg, eh), (eh, ef)):
        total += noise_correlation(a, b, -1.0 / 3.0) - a.mean * b.mean
    return total


# --------------------------------------------------------------------------
# Monte Carlo

_Z95 = statistics.NormalDist().inv_cdf(0.975)


def wilson_interval(hits: int, trials: int, z: float = _Z95) -> tuple:
    if trials <= 0:
        raise ValueError("trials must be positive")
    p = hits / trials
    denom = 1 + z * z / trials
    centre = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


@dataclass(frozen=True)
class McEstimate:
    estimate: float
    low: float
    high: float
    hits: int
    samples: int
    seed: int

    def to_dict(self) -> dict:
        return {
            "estimate": self.estimate,
            "ci95": [self.low, self.high],
            "hits": self.hits,
            "samples": self.samples,
            "seed": self.seed,
        }


def _mc_chunk(F: Gswf, bits: dict, seed: int, chunk: int, size: int) -> int:
    # one RNG stream per chunk index; independent of how chunks are scheduled
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(chunk,)))
    m = len(rankings(F.k))
    ranks = rng.integers(0, m, size=(size, F.n))
    shifts = np.arange(F.n, dtype=np.int64)
    outcomes = {}
    for key, fn in F.pairs.items():
        idx = (bits[key][ranks] << shifts).sum(axis=1)
        outcomes[key] = fn.table[idx]
    return int(np.count_nonzero(~transitive_mask(F.k, outcomes)))


def p_nontransitive_mc(F: Gswf, samples: int, seed: int, workers: int = 1) -> McEstimate:
    """Uniform-profile sampling with a 95% Wilson interval.

    Samples are split into fixed chunks of ``MC_CHUNK``; the result does not
    depend on ``workers``.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if F.n > 62:
        raise DimensionError("Monte Carlo supports at most 62 voters")
    bits = _pair_bits(F.k)
    sizes = [MC_CHUNK] * (samples // MC_CHUNK)
    if samples % MC_CHUNK:
        sizes.append(samples % MC_CHUNK)
    jobs = list(enumerate(sizes))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(lambda j: _mc_chunk(F, bits, seed, *j), jobs))
    else:
        counts = [_mc_chunk(F, bits, seed, *j) for j in jobs]
    hits = sum(counts)
    low, high = wilson_interval(hits, samples)
    return McEstimate(hits / samples, low, high, hits, samples, seed)


# --------------------------------------------------------------------------
# voter split and the rewritten formulas

def split_by_voter(F: Gswf, voter: int = 1) -> dict:
    """Fix one voter's ranking: ``{ranking order: F^sigma}`` with n - 1 voters.

    ``P(F)`` is the average of the six ``P(F^sigma)``.
    """
    if F.k != 3:
        raise DimensionError("split_by_voter is for k = 3")
    if F.n < 2:
        raise DimensionError("splitting needs at least two voters")
    out = {}
    for r in rankings(3):
        a = encode_ranking3(r)
        parts = [fn.restrict(voter, bit) for fn, bit in zip(F.functions, a)]
        out[r.order] = Gswf.three(*parts)
    return out


@dataclass(frozen=True)
class IdentityTerms:
    """Noise correlations at rate 1/3 in the two rewritten forms of P(F).

    ``first``  = (<T f', g>, <T g_bar, 1-h>, <T f', 1-h>)
    ``second`` = (<T f', h>, <T (1-g), h_bar>, <T f', 1-g>)
    Each recombines as ``t[0] + t[1] - t[2]``.
    """

    first: tuple
    second: tuple

    @staticmethod
    def combine(t) -> float:
        return t[0] + t[1] - t[2]

    def to_dict(self) -> dict:
        return {
            "first": list(self.first),
            "first_total": self.combine(self.first),
            "second": list(self.second),
            "second_total": self.combine(self.second),
        }


def modified_identity_terms(F: Gswf) -> IdentityTerms:
    if F.k != 3:
        raise DimensionError("identity terms are defined for k = 3")
    f, g, h = F.functions
    e = {
        "f'": walsh_transform(BooleanFunction(f.n, f.table[::-1].copy())),
        "g": walsh_transform(g),
        "h": walsh_transform(h),
        "1-g": walsh_transform(g.complement()),
        "1-h": walsh_transform(h.complement()),
        "g_bar": walsh_transform(dual(g)),
        "h_bar": walsh_transform(dual(h)),
    }

    def c(a, b):
        return noise_correlation(e[a], e[b], 1.0 / 3.0)

    first = (c("f'", "g"), c("g_bar", "1-h"), c("f'", "1-h"))
    second = (c("f'", "h"), c("1-g", "h_bar"), c("f'", "1-g"))
    return IdentityTerms(first, second)
