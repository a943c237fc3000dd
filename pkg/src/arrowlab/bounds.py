"""Hypercontractive bounds on noise correlation and the quantitative thresholds.

Every quantity that can underflow a double (``RHC`` at tiny expectations,
``exp(-C/eps^21)``, the 2^-500000 lemma threshold) has a log-space twin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .cube import BooleanFunction, noise_correlation
from .errors import DimensionError
from .social import DEFAULT_BUDGET, Gswf, p_nontransitive_exact, p_nontransitive_fourier

LEMMA_LOG2_THRESHOLD = -500000.0
THM41_COEFF = 1.0 / 50000
THM42_COEFF = 1.0 / 10000


@dataclass(frozen=True)
class BoundsReport:
    """Comparison of a computed quantity against a bound.

    ``slack`` is positive when the inequality holds: ``value - bound`` for
    direction ``>=``, ``bound - value`` for ``<=``.
    """

    quantity: str
    value: float
    bound: float
    direction: str
    hypothesis_ok: bool = True
    log_value: float | None = None
    log_bound: float | None = None
    notes: dict = field(default_factory=dict)

    @property
    def slack(self) -> float:
        if self.direction == ">=":
            return self.value - self.bound
        return self.bound - self.value

    def holds(self, tol: float = 0.0) -> bool:
        """True when the hypothesis fails (nothing asserted) or the bound holds."""
        return (not self.hypothesis_ok) or self.slack >= -tol

    def to_dict(self) -> dict:
        d = {
            "quantity": self.quantity,
            "value": self.value,
            "log_value": self.log_value if self.log_value is not None else _log(self.value),
            "bound": self.bound,
            "log_bound": self.log_bound if self.log_bound is not None else _log(self.bound),
            "direction": self.direction,
            "slack": self.slack,
            "hypothesis_ok": self.hypothesis_ok,
        }
        if self.notes:
            d["notes"] = self.notes
        return d


def _log(x: float):
    return math.log(x) if x > 0 else None


# --------------------------------------------------------------------------
# reverse hypercontractivity

def _exponent(alpha: float, eps: float) -> float:
    return (math.sqrt(alpha) + eps) ** 2 / ((1 - eps * eps) * alpha)


def beta(alpha: float, eps: float) -> float:
    """``(sqrt(alpha) + eps)^2 / ((1 - eps^2) alpha)`` for ``alpha >= 1``.

    Decreasing in alpha, from ``(1+eps)/(1-eps)`` at 1 to ``1/(1-eps^2)``.
    """
    if alpha < 1:
        raise ValueError(f"beta needs alpha >= 1, got {alpha}")
    if not 0 < eps < 1:
        raise ValueError(f"beta needs 0 < eps < 1, got {eps}")
    return _exponent(alpha, eps)


def log_rhc(log_p1: float, log_p2: float, eps: float = 1 / 3) -> float:
    """Natural log of the reverse-hypercontractive lower bound, from logs of
    the two expectations (both strictly negative)."""
    if not (log_p1 < 0 and log_p2 < 0):
        raise ValueError("log_rhc needs expectations strictly inside (0, 1)")
    alpha = 1.0 if log_p1 == log_p2 else log_p2 / log_p1
    return log_p1 + _exponent(alpha, eps) * log_p2


def rhc(p1: float, p2: float, eps: float = 1 / 3) -> float:
    """Lower bound on ``<T_eps f, g>`` for ``E[f] = p1``, ``E[g] = p2``.

    With ``alpha = log p2 / log p1`` this is ``p1 * p2^beta(alpha)``;
    ``rhc(p, p) = p^3`` at ``eps = 1/3``. Degenerate expectations (0 or 1)
    give 0.
    """
    if not (0 < p1 < 1 and 0 < p2 < 1):
        return 0.0
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    alpha = 1.0 if p1 == p2 else math.log(p2) / math.log(p1)
    return p1 * p2 ** _exponent(alpha, eps)


def bb_upper(p1: float, p2: float) -> float:
    """Upper bound on ``<T_{1/3} f, g>``: ``min(p1^.9 p2^.5, p1^.75 p2^.75)``."""
    if not (0 <= p1 <= 1 and 0 <= p2 <= 1):
        raise ValueError("expectations must lie in [0, 1]")
    return min(p1**0.9 * p2**0.5, p1**0.75 * p2**0.75)


def rhc_lower_check(f: BooleanFunction, g: BooleanFunction, eps: float = 1 / 3) -> BoundsReport:
    p1, p2 = f.expectation, g.expectation
    value = noise_correlation(f, g, eps)
    degenerate = not (0 < p1 < 1 and 0 < p2 < 1)
    notes = {"p1": p1, "p2": p2, "eps": eps}
    if degenerate:
        return BoundsReport("noise_correlation", value, 0.0, ">=", False, notes=notes)
    alpha = math.log(p2) / math.log(p1) if p1 != p2 else 1.0
    notes["alpha"] = alpha
    if alpha < 1:
        notes["alpha_below_1"] = True
    lb = log_rhc(math.log(p1), math.log(p2), eps)
    return BoundsReport("noise_correlation", value, math.exp(lb), ">=", True,
                        log_bound=lb, notes=notes)


def bb_upper_check(f: BooleanFunction, g: BooleanFunction) -> BoundsReport:
    p1, p2 = f.expectation, g.expectation
    value = noise_correlation(f, g, 1 / 3)
    return BoundsReport("noise_correlation", value, bb_upper(p1, p2), "<=",
                        notes={"p1": p1, "p2": p2, "eps": 1 / 3})


# --------------------------------------------------------------------------
# thresholds

def delta_main1(eps: float, k: int = 3, C: float = 1.0) -> float:
    """``C (eps / k^2)^3``."""
    if not 0 < eps <= 1:
        raise ValueError("eps must lie in (0, 1]")
    if k < 3:
        raise ValueError("k must be >= 3")
    return C * (eps / k**2) ** 3


def main2_exponent_log2(L: float) -> float:
    """Exponent ``9 (sqrt(L) + 1/3)^2 / (8 L)`` at ``eps = 2^-L``."""
    if L <= 0:
        raise ValueError("L = log2(1/eps) must be positive")
    return 9 * (math.sqrt(L) + 1 / 3) ** 2 / (8 * L)


def main2_exponent(eps: float) -> float:
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    return main2_exponent_log2(math.log2(1 / eps))


def delta_main2(eps: float, C: float = 1.0) -> float:
    """``C eps^e(eps)``; the exponent tends to 9/8 as eps -> 0."""
    return C * eps ** main2_exponent(eps)


def log_delta_mossel(eps: float, C_prime: float = 1.0) -> float:
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    return -C_prime / eps**21


def delta_mossel(eps: float, C_prime: float = 1.0) -> float:
    """``exp(-C' / eps^21)``; underflows to 0 well before eps = 0.1."""
    return math.exp(log_delta_mossel(eps, C_prime))


def asymptotic_corr_bound(s: float, t: float) -> float:
    """Limit bound on ``<T_{1/3} f_n, g_n>`` for opposed Hamming balls at
    ``n/2 - s sqrt(n)/2`` and ``n/2 + t sqrt(n)/2``."""
    if s <= 0 or t <= 0:
        raise ValueError("s and t must be positive")
    var = 8 / 9
    return (math.sqrt(var) / (2 * math.pi * s * (s / 3 + t))
            * math.exp(-0.5 * (s * s + 2 * s * t / 3 + t * t) / var))


# --------------------------------------------------------------------------
# checks on GSWFs

def _p_of(F: Gswf, budget: int) -> tuple:
    if 6**F.n <= budget or F.is_symmetric():
        return float(p_nontransitive_exact(F, budget)), "exact"
    return p_nontransitive_fourier(F), "fourier"


def check_lemma_main(F: Gswf, log2_threshold: float = LEMMA_LOG2_THRESHOLD,
                     budget: int = DEFAULT_BUDGET) -> BoundsReport:
    """``P(F) >= max(RHC(D1/2, D1/2), RHC(D2', 1/2)) / 10`` when ``D2'`` is
    below ``2^log2_threshold``; otherwise only reported."""
    from .metrics import d1, d2_prime

    if F.k != 3:
        raise DimensionError("check_lemma_main is for k = 3")
    dp = d2_prime(F).value
    hyp = dp == 0 or math.log2(dp) <= log2_threshold
    p = p_nontransitive_fourier(F)
    D1 = d1(F, budget)
    half = D1.value / 2
    bound = 0.1 * max(rhc(half, half), rhc(dp, 0.5))
    notes = {"d1": D1.value, "d1_method": D1.method, "d2_prime": dp,
             "log2_threshold": log2_threshold}
    return BoundsReport("P(F)", p, bound, ">=", hyp, notes=notes)


def check_thm41(F: Gswf, C_surrogate: float = 1.0, budget: int = DEFAULT_BUDGET) -> BoundsReport:
    """``P(F) >= min(C, D1^3 / 50000)`` with a surrogate constant C."""
    from .metrics import d1

    p, how = _p_of(F, budget)
    D1 = d1(F, budget).value
    bound = min(C_surrogate, THM41_COEFF * D1**3)
    return BoundsReport("P(F)", p, bound, ">=",
                        notes={"d1": D1, "C_surrogate": C_surrogate, "p_method": how})


def check_thm42(F: Gswf, C_surrogate: float = 1.0, budget: int = DEFAULT_BUDGET) -> BoundsReport:
    """``P(F) >= min(C, D2^e(D2) / 10000)`` with a surrogate constant C."""
    from .metrics import d2

    p, how = _p_of(F, budget)
    D2 = d2(F).value
    core = THM42_COEFF * delta_main2(D2) if D2 > 0 else 0.0
    bound = min(C_surrogate, core)
    return BoundsReport("P(F)", p, bound, ">=",
                        notes={"d2": D2, "C_surrogate": C_surrogate, "p_method": how})
