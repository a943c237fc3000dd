"""Boolean functions on the discrete cube {0,1}^n under the uniform measure.

Conventions used throughout the package:

* input ``x`` is an integer in ``[0, 2**n)``; voter ``i`` (1-based) is bit ``i - 1``;
* a subset ``S`` of voters is a mask with the same bit layout;
* the character is ``r_S(x) = prod_{i in S} (2 x_i - 1)`` and Fourier
  coefficients carry the ``2**-n`` averaging factor, so ``coeffs[0] == E[f]``.
"""

from __future__ import annotations

import functools
import os
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, EncodingError, ResourceError

DEFAULT_CAP = 26

_cap_override: int | None = None


def get_cap() -> int:
    """Largest arity accepted by dense operations.

    Resolution order: :func:`set_cap`, then ``ARROWLAB_CAP``, then 26.
    """
    if _cap_override is not None:
        return _cap_override
    env = os.environ.get("ARROWLAB_CAP")
    if env:
        return int(env)
    return DEFAULT_CAP


def set_cap(cap: int | None) -> None:
    global _cap_override
    if cap is not None and cap < 1:
        raise ValueError("cap must be positive")
    _cap_override = cap


def check_arity(n: int) -> None:
    cap = get_cap()
    if n > cap:
        raise ResourceError(
            f"arity {n} exceeds the dense-operation cap {cap} "
            f"(2^{n} entries); raise --cap or ARROWLAB_CAP",
            flag="--cap",
        )


@functools.lru_cache(maxsize=4)
def popcounts(n: int) -> np.ndarray:
    """Popcount of every mask in ``[0, 2**n)`` as a read-only int8 array."""
    pc = np.zeros(1 << n, dtype=np.int8)
    for i in range(n):
        pc[1 << i: 2 << i] = pc[: 1 << i] + 1
    pc.flags.writeable = False
    return pc


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class BooleanFunction:
    """A function ``{0,1}^n -> {0,1}`` stored as its full truth table.

    ``table[x]`` is ``f(x)``; the array is uint8 and immutable.
    """

    n: int
    table: np.ndarray

    def __post_init__(self):
        if self.n < 0:
            raise DimensionError("arity must be non-negative")
        t = np.asarray(self.table)
        if t.shape != (1 << self.n,):
            raise DimensionError(
                f"truth table has shape {t.shape}, expected ({1 << self.n},)"
            )
        if t.dtype != np.uint8 or t.flags.writeable:
            t = t.astype(np.uint8, copy=True)
        if t.size and t.max() > 1:
            raise EncodingError("truth table entries must be 0 or 1")
        object.__setattr__(self, "table", _frozen(t))

    @classmethod
    def from_callable(cls, n, func):
        """Build from ``func(bits)`` where ``bits[i]`` is voter ``i+1``'s bit."""
        table = np.array(
            [func(tuple((x >> i) & 1 for i in range(n))) for x in range(1 << n)],
            dtype=np.uint8,
        )
        return cls(n, table)

    def __call__(self, x: int) -> int:
        return int(self.table[x])

    def __eq__(self, other):
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.n, self.table.tobytes()))

    def __repr__(self):
        return f"BooleanFunction(n={self.n}, hex={self.to_hex()!r})"

    @property
    def ones(self) -> int:
        return int(self.table.sum(dtype=np.int64))

    @property
    def expectation(self) -> float:
        return self.ones / (1 << self.n)

    def is_constant(self) -> bool:
        return bool(self.table.min() == self.table.max())

    def level_values(self):
        """Values by Hamming weight if ``f`` is symmetric, else ``None``.

        Returns a uint8 array ``v`` of length ``n + 1`` with ``f(x) = v[|x|]``.
        """
        pc = popcounts(self.n)
        v = np.zeros(self.n + 1, dtype=np.uint8)
        v[pc] = self.table
        if np.array_equal(v[pc], self.table):
            return v
        return None

    def complement(self) -> "BooleanFunction":
        """``1 - f``."""
        return BooleanFunction(self.n, 1 - self.table)

    def restrict(self, voter: int, bit: int) -> "BooleanFunction":
        """Fix voter ``voter`` (1-based) to ``bit``; the result has arity ``n - 1``."""
        if not 1 <= voter <= self.n:
            raise DimensionError(f"voter {voter} out of range 1..{self.n}")
        i = voter - 1
        view = self.table.reshape(-1, 2, 1 << i)
        return BooleanFunction(self.n - 1, np.ascontiguousarray(view[:, bit, :]).ravel())

    # file boundary: packed bits, input 0 in the least significant bit of byte 0
    def to_hex(self) -> str:
        return np.packbits(self.table, bitorder="little").tobytes().hex()

    @classmethod
    def from_hex(cls, n: int, hexstr: str) -> "BooleanFunction":
        size = 1 << n
        nbytes = (size + 7) // 8
        if len(hexstr) != 2 * nbytes:
            raise EncodingError(
                f"hex: expected {2 * nbytes} digits for n={n}, got {len(hexstr)}"
            )
        try:
            raw = bytes.fromhex(hexstr)
        except ValueError as exc:
            raise EncodingError(f"hex: {exc}") from None
        bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
        if bits[size:].any():
            raise EncodingError("hex: padding bits beyond 2^n must be zero")
        return cls(n, bits[:size].copy())

    def to_dict(self) -> dict:
        return {"n": self.n, "hex": self.to_hex()}

    @classmethod
    def from_dict(cls, d: dict) -> "BooleanFunction":
        if not isinstance(d, dict):
            raise EncodingError("truth table: expected an object with 'n' and 'hex'")
        for key in ("n", "hex"):
            if key not in d:
                raise EncodingError(f"truth table: missing field '{key}'")
        n = d["n"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise EncodingError("truth table: field 'n' must be a non-negative integer")
        if not isinstance(d["hex"], str):
            raise EncodingError("truth table: field 'hex' must be a string")
        return cls.from_hex(n, d["hex"])


@dataclass(frozen=True, eq=False)
class FourierExpansion:
    """All ``2**n`` Fourier-Walsh coefficients; ``coeffs[S] = <f, r_S>``."""

    n: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=np.float64)
        if c.shape != (1 << self.n,):
            raise DimensionError("coefficient array must have length 2^n")
        if c.flags.writeable:
            c = c.copy()
        object.__setattr__(self, "coeffs", _frozen(c))

    def __getitem__(self, mask: int) -> float:
        return float(self.coeffs[mask])

    @property
    def mean(self) -> float:
        return float(self.coeffs[0])

    def level_weights(self, other: "FourierExpansion | None" = None) -> np.ndarray:
        """``W[k] = sum_{|S|=k} a(S) b(S)`` with ``b = a`` by default."""
        b = self.coeffs if other is None else other.coeffs
        return np.bincount(
            popcounts(self.n), weights=self.coeffs * b, minlength=self.n + 1
        )


@dataclass(frozen=True, eq=False)
class RealCubeFunction:
    """Real-valued function on the cube; result type of ``T_eps`` and inversion."""

    n: int
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.shape != (1 << self.n,):
            raise DimensionError("value array must have length 2^n")
        if not np.all(np.isfinite(v)):
            raise ValueError("values must be finite")
        if v.flags.writeable:
            v = v.copy()
        object.__setattr__(self, "values", _frozen(v))

    def mean(self) -> float:
        return float(self.values.mean())


def _forward_butterfly(a: np.ndarray, n: int) -> None:
    # per bit: (lo, hi) -> (lo + hi, hi - lo), matching r_i = 2 x_i - 1
    for i in range(n):
        v = a.reshape(-1, 2, 1 << i)
        lo = v[:, 0, :]
        hi = v[:, 1, :]
        lo += hi
        hi *= 2
        hi -= lo


def _inverse_butterfly(a: np.ndarray, n: int) -> None:
    # per bit: (c0, c1) -> (c0 - c1, c0 + c1)
    for i in range(n):
        v = a.reshape(-1, 2, 1 << i)
        lo = v[:, 0, :]
        hi = v[:, 1, :]
        lo -= hi
        hi *= 2
        hi += lo


def walsh_transform(f: BooleanFunction | RealCubeFunction) -> FourierExpansion:
    """Fourier-Walsh coefficients by an in-place butterfly, O(n 2^n).

    For Boolean input every intermediate value is an integer below ``2**n``,
    so the result is exact.
    """
    check_arity(f.n)
    src = f.table if isinstance(f, BooleanFunction) else f.values
    a = src.astype(np.float64)
    _forward_butterfly(a, f.n)
    a *= 1.0 / (1 << f.n)
    return FourierExpansion(f.n, a)


def inverse_walsh(e: FourierExpansion) -> RealCubeFunction:
    """Pointwise values of ``sum_S e[S] r_S``."""
    check_arity(e.n)
    a = e.coeffs.astype(np.float64)
    _inverse_butterfly(a, e.n)
    return RealCubeFunction(e.n, a)


def dual(f: BooleanFunction) -> BooleanFunction:
    """``1 - f(1 - x)``. Coefficients obey ``(-1)^(|S|-1) f^(S)`` for ``S`` non-empty."""
    return BooleanFunction(f.n, 1 - f.table[::-1])


def flip_inputs(f: BooleanFunction) -> BooleanFunction:
    """``f(1 - x)``; complementing every input reverses the table."""
    return BooleanFunction(f.n, f.table[::-1].copy())


def complement(f: BooleanFunction) -> BooleanFunction:
    return f.complement()


def _as_expansion(f) -> FourierExpansion:
    if isinstance(f, FourierExpansion):
        return f
    return walsh_transform(f)


def noise_operator(f: BooleanFunction, eps: float) -> RealCubeFunction:
    """``T_eps f``: scales level ``k`` of the expansion by ``eps**k``."""
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"noise rate must lie in [0, 1], got {eps}")
    e = _as_expansion(f)
    scale = np.float64(eps) ** np.arange(e.n + 1)
    return inverse_walsh(FourierExpansion(e.n, e.coeffs * scale[popcounts(e.n)]))


def noise_correlation(f, g, eps: float) -> float:
    """``<T_eps f, g> = sum_S eps^|S| f^(S) g^(S)``.

    ``f`` and ``g`` may be Boolean functions or precomputed expansions.
    ``eps`` may be negative (down to -1); the same coefficient sum is used.
    """
    if not -1.0 <= eps <= 1.0:
        raise ValueError(f"noise rate must lie in [-1, 1], got {eps}")
    if f.n != g.n:
        raise DimensionError(f"arity mismatch: {f.n} vs {g.n}")
    a = _as_expansion(f)
    b = _as_expansion(g)
    levels = a.level_weights(b)
    return float(np.dot(np.float64(eps) ** np.arange(a.n + 1), levels))


def q_norm(f, q: float) -> float:
    """``(E |f|^q)^(1/q)`` for ``q >= 1``."""
    if q < 1:
        raise ValueError("q_norm requires q >= 1")
    if isinstance(f, BooleanFunction):
        return f.expectation ** (1.0 / q)
    values = f.values if isinstance(f, RealCubeFunction) else np.asarray(f, dtype=float)
    return float(np.mean(np.abs(values) ** q) ** (1.0 / q))
