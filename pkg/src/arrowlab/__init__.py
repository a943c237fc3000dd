"""Exact, Fourier and Monte Carlo tools for quantitative Arrow's theorem."""

from .cube import BooleanFunction, FourierExpansion, dual, noise_correlation, walsh_transform
from .social import Gswf, Profile, Ranking, p_nontransitive_exact, p_nontransitive_fourier

__version__ = "0.1.0"

__all__ = [
    "BooleanFunction",
    "FourierExpansion",
    "Gswf",
    "Profile",
    "Ranking",
    "dual",
    "noise_correlation",
    "p_nontransitive_exact",
    "p_nontransitive_fourier",
    "walsh_transform",
]
