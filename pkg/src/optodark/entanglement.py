"""Two-mode reduced covariances and logarithmic negativity.

Convention: ``X = (o + o^dag)/sqrt(2)``, ``Y = i(o^dag - o)/sqrt(2)``, so the
vacuum has variance 1/2 and a two-mode state is entangled iff the smallest
partially transposed symplectic eigenvalue is below 1/2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import kernels
from .errors import ContractError, UnphysicalCovarianceError
from .lyapunov import CovarianceMatrix

MODE_NAMES = ("b1", "b2", "as", "a")
DEFAULT_DISCRIMINANT_CLAMP = 1e-12

# report order for all_pair_report
STANDARD_PAIRS = (("a", "b1"), ("a", "b2"), ("b1", "b2"))
AUX_PAIRS = (("as", "b1"), ("as", "b2"), ("a", "as"))


@dataclass(frozen=True)
class ModePair:
    """Ordered pair of mode names; ``first`` supplies block A, ``second`` block B."""

    first: str
    second: str

    def __post_init__(self):
        for m in (self.first, self.second):
            if m not in MODE_NAMES:
                raise ContractError(f"unknown mode {m!r}; expected one of {', '.join(MODE_NAMES)}")
        if self.first == self.second:
            raise ContractError(f"a mode pair needs two distinct modes, got {self.first!r} twice")

    @property
    def label(self) -> str:
        return f"{self.first}_{self.second}"

    @classmethod
    def parse(cls, text: str) -> "ModePair":
        parts = text.replace(",", "_").split("_")
        if len(parts) != 2:
            raise ContractError(f"cannot parse mode pair {text!r}; use e.g. 'a_b1'")
        return cls(parts[0], parts[1])


class Negativity(NamedTuple):
    sigma_minus: float
    log_neg: float


@dataclass(frozen=True)
class EntanglementReport:
    pair: ModePair
    sigma_minus: float
    log_neg: float
    blocks: dict

    @property
    def entangled(self) -> bool:
        return self.log_neg > 0.0


def _as_pair(pair) -> ModePair:
    if isinstance(pair, ModePair):
        return pair
    if isinstance(pair, str):
        return ModePair.parse(pair)
    first, second = pair
    return ModePair(first, second)


def reduce_covariance(v: CovarianceMatrix, pair) -> np.ndarray:
    """4x4 covariance of two modes, ``[[V_A, V_AB], [V_AB^T, V_B]]``."""
    pair = _as_pair(pair)
    rows = [*v.rows(pair.first), *v.rows(pair.second)]
    return v.v[np.ix_(rows, rows)].copy()


def _raise_for_code(code: int, detail: str = ""):
    if code == kernels.NEG_BAD_DISCRIMINANT:
        raise UnphysicalCovarianceError(f"negative discriminant Sigma^2 - 4 det V{detail}")
    if code == kernels.NEG_BAD_SIGMA:
        raise UnphysicalCovarianceError(f"smallest symplectic eigenvalue is not real-positive{detail}")


def log_negativity(v_red, clamp: float = DEFAULT_DISCRIMINANT_CLAMP) -> Negativity:
    """Smallest partially transposed symplectic eigenvalue and ``E_N``.

    Parameters
    ----------
    v_red : array_like, shape (4, 4)
        Symmetric two-mode covariance.
    clamp : float
        Relative tolerance under which a negative discriminant
        ``Sigma^2 - 4 det V`` is treated as zero.
    """
    red = np.asarray(v_red, dtype=np.float64)
    if red.shape != (4, 4):
        raise ContractError(f"expected a 4x4 covariance, got shape {red.shape}")
    if not np.allclose(red, red.T, rtol=1e-10, atol=1e-12):
        raise ContractError("two-mode covariance is not symmetric")
    sigma, log_neg, code = kernels.log_negativity_batch(red[None], np.array([[0, 1]]), clamp)
    _raise_for_code(int(code[0, 0]))
    return Negativity(float(sigma[0, 0]), float(log_neg[0, 0]))


def report_pairs(modes: tuple[str, ...]) -> list[ModePair]:
    pairs = list(STANDARD_PAIRS)
    if "as" in modes:
        pairs += list(AUX_PAIRS)
    return [ModePair(*p) for p in pairs]


def all_pair_report(
    v: CovarianceMatrix, clamp: float = DEFAULT_DISCRIMINANT_CLAMP
) -> list[EntanglementReport]:
    """Negativity of every standard mode pair, in a fixed order.

    Pairs are ``(a,b1), (a,b2), (b1,b2)`` and, with the auxiliary cavity,
    ``(as,b1), (as,b2), (a,as)``.
    """
    pairs = report_pairs(v.modes)
    idx = np.array([[v.modes.index(p.first), v.modes.index(p.second)] for p in pairs], dtype=np.int64)
    sigma, log_neg, code = kernels.log_negativity_batch(v.v[None], idx, clamp)
    reports = []
    for k, pair in enumerate(pairs):
        _raise_for_code(int(code[0, k]), f" for pair {pair.label}")
        red = reduce_covariance(v, pair)
        blocks = {"A": red[:2, :2], "B": red[2:, 2:], "AB": red[:2, 2:]}
        reports.append(EntanglementReport(pair, float(sigma[0, k]), float(log_neg[0, k]), blocks))
    return reports
