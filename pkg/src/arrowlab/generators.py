"""Canonical Boolean functions and the threshold GSWF constructions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .cube import BooleanFunction, check_arity, popcounts
from .errors import EncodingError
from .social import Gswf


def threshold(n: int, l: int) -> BooleanFunction:
    """``f(x) = 1`` iff ``|x| >= l``; ``l = 0`` is constant 1, ``l = n + 1`` constant 0."""
    if not 0 <= l <= n + 1:
        raise ValueError(f"threshold level {l} outside 0..{n + 1}")
    check_arity(n)
    return BooleanFunction(n, (popcounts(n) >= l).astype(np.uint8))


def tail_probability(n: int, l: int) -> Fraction:
    """Exact ``E[threshold(n, l)] = P(Bin(n, 1/2) >= l)``."""
    return Fraction(sum(math.comb(n, j) for j in range(max(l, 0), n + 1)), 2**n)


def threshold_for_expectation(n: int, p_target: float) -> tuple:
    """Level ``l`` whose threshold expectation is closest to ``p_target``.

    Ties go to the larger ``l``. Returns ``(l, achieved expectation)``.
    """
    if not 0.0 <= p_target <= 1.0:
        raise ValueError("p_target must lie in [0, 1]")
    target = Fraction(p_target)
    best = min(range(n + 2), key=lambda l: (abs(tail_probability(n, l) - target), -l))
    return best, float(tail_probability(n, best))


def dictator(n: int, j: int, negate: bool = False) -> BooleanFunction:
    if not 1 <= j <= n:
        raise ValueError(f"voter {j} outside 1..{n}")
    check_arity(n)
    bit = ((np.arange(1 << n) >> (j - 1)) & 1).astype(np.uint8)
    return BooleanFunction(n, 1 - bit if negate else bit)


def constant(n: int, b: int) -> BooleanFunction:
    check_arity(n)
    return BooleanFunction(n, np.full(1 << n, int(b), dtype=np.uint8))


def majority(n: int) -> BooleanFunction:
    if n % 2 == 0:
        raise ValueError("majority needs an odd number of voters")
    return threshold(n, (n + 1) // 2)


def random_function(n: int, seed: int) -> BooleanFunction:
    check_arity(n)
    rng = np.random.default_rng(seed)
    return BooleanFunction(n, rng.integers(0, 2, size=1 << n, dtype=np.uint8))


def random_gswf(n: int, rng: np.random.Generator, k: int = 3) -> Gswf:
    """Uniformly random IIA GSWF (each choice function a uniform random table)."""
    from .social import pair_keys

    tables = {
        key: BooleanFunction(n, rng.integers(0, 2, size=1 << n, dtype=np.uint8))
        for key in pair_keys(k)
    }
    return Gswf(k, n, tables)


def dictatorship_gswf(n: int, voter: int = 1, reverse: bool = False) -> Gswf:
    """Society copies (or reverses) one voter's ranking; k = 3."""
    d = dictator(n, voter, reverse)
    return Gswf.three(d, d, d)


def constant_gswf(n: int, bits) -> Gswf:
    return Gswf.three(*(constant(n, b) for b in bits))


def threshold_gswf(n: int, levels) -> Gswf:
    return Gswf.three(*(threshold(n, l) for l in levels))


# --------------------------------------------------------------------------
# named constructions

@dataclass(frozen=True)
class Construction:
    """A generated GSWF with the bookkeeping of how it was built."""

    gswf: Gswf
    levels: tuple
    eps_requested: float | None = None
    eps_achieved: float | None = None
    notes: dict = field(default_factory=dict)


def tightness_main1(n: int, eps: float) -> Construction:
    """``E[f] = 0``, ``E[g] = E[h] = 1 - eps``, all thresholds.

    The distance to the always-transitive class is the achieved ``eps``.
    """
    if not 0 < eps < 0.5:
        raise ValueError("eps must lie in (0, 1/2)")
    l, p = threshold_for_expectation(n, 1 - eps)
    eps_achieved = float(1 - tail_probability(n, l))
    if not eps / 2 <= eps_achieved <= 2 * eps:
        raise ValueError(
            f"n={n} too coarse: achieved eps {eps_achieved:.6g} for requested {eps}"
        )
    levels = (n + 1, l, l)
    return Construction(threshold_gswf(n, levels), levels, eps, eps_achieved)


def tightness_main2(n: int, eps: float) -> Construction:
    """``E[f] = eps``, ``E[g] = 1 - eps``, ``E[h] = 1/2`` (n odd)."""
    if n % 2 == 0:
        raise ValueError("tightness_main2 needs odd n for the half threshold")
    if not 0 < eps < 0.5:
        raise ValueError("eps must lie in (0, 1/2)")
    lf, _ = threshold_for_expectation(n, eps)
    eps_achieved = float(tail_probability(n, lf))
    if not eps / 2 <= eps_achieved <= 2 * eps:
        raise ValueError(
            f"n={n} too coarse: achieved eps {eps_achieved:.6g} for requested {eps}"
        )
    # P(|x| >= n+1-l) = 1 - P(|x| >= l) by symmetry of the binomial
    levels = (lf, n + 1 - lf, (n + 1) // 2)
    return Construction(threshold_gswf(n, levels), levels, eps, eps_achieved)


def minimal_p_gswf(n: int) -> Construction:
    """``E[f] = 0``, ``E[g] = E[h] = 1 - 2^-n``; non-transitive w.p. ``6^-n``."""
    levels = (n + 1, 1, 1)
    return Construction(threshold_gswf(n, levels), levels, eps_achieved=2.0**-n)


def tail_majority_gswf(n: int) -> Construction:
    """``E[f] = 2^-n``, ``E[g] = 1 - 2^-n``, ``E[h] = 1/2`` (n odd)."""
    if n % 2 == 0:
        raise ValueError("tail_majority_gswf needs odd n")
    levels = (n, 1, (n + 1) // 2)
    return Construction(threshold_gswf(n, levels), levels, eps_achieved=2.0**-n)


# --------------------------------------------------------------------------
# generator specs (JSON)

GENERATOR_TYPES = ("threshold", "dictator", "constant", "majority", "random", "table")


@dataclass(frozen=True)
class GeneratorSpec:
    type: str
    params: dict

    def __post_init__(self):
        if self.type not in GENERATOR_TYPES:
            raise EncodingError(f"generator: unknown type {self.type!r}")

    def build(self) -> BooleanFunction:
        p = self.params
        try:
            n = p["n"]
            if self.type == "threshold":
                l = p["l"]
                if not 0 <= l <= n + 1:
                    raise EncodingError(f"generator: field 'l'={l} outside 0..{n + 1}")
                return threshold(n, l)
            if self.type == "dictator":
                voter = p["voter"]
                if not 1 <= voter <= n:
                    raise EncodingError(f"generator: field 'voter'={voter} outside 1..{n}")
                return dictator(n, voter, bool(p.get("negate", False)))
            if self.type == "constant":
                if p["value"] not in (0, 1):
                    raise EncodingError("generator: field 'value' must be 0 or 1")
                return constant(n, p["value"])
            if self.type == "majority":
                if n % 2 == 0:
                    raise EncodingError("generator: field 'n' must be odd for majority")
                return majority(n)
            if self.type == "random":
                return random_function(n, p["seed"])
            return BooleanFunction.from_hex(n, p["hex"])
        except KeyError as exc:
            raise EncodingError(f"generator {self.type}: missing field '{exc.args[0]}'") from None

    def to_dict(self) -> dict:
        return {"type": self.type, **self.params}

    @classmethod
    def from_dict(cls, d: dict) -> "GeneratorSpec":
        if "type" not in d:
            raise EncodingError("generator: missing field 'type'")
        params = {k: v for k, v in d.items() if k != "type"}
        return cls(d["type"], params)


def function_from_json(d) -> BooleanFunction:
    """A choice-function entry: a truth-table object or a generator spec."""
    if not isinstance(d, dict):
        raise EncodingError("choice function must be a JSON object")
    if "type" in d:
        return GeneratorSpec.from_dict(d).build()
    return BooleanFunction.from_dict(d)
