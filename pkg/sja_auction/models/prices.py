"""Price models: raw bundle-price sequences and solved SJA profiles."""

from __future__ import annotations

from typing import List

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..config.constants import CONJECTURE_THRESHOLD


class PriceSeq(BaseModel):
    """Bundle prices p_1..p_r; need not be monotone."""

    model_config = ConfigDict(frozen=True)

    values: List[float] = Field(..., min_length=1, description="p_1..p_r in value units")

    @property
    def r(self) -> int:
        return len(self.values)

    @model_validator(mode="after")
    def validate_range(self) -> "PriceSeq":
        r = len(self.values)
        for price in self.values:
            if price < 0.0 or price > r:
                raise ValueError(f"price {price} outside [0, {r}]")
        return self


def mu_from_prices(prices: List[float], m: int) -> List[float]:
    """mu_r = (m+1) * (r - p_r)."""
    return [(m + 1) * (r + 1) - (m + 1) * p for r, p in enumerate(prices)]


def lambdas_from_mu(mu: List[float]) -> List[float]:
    """lambda_r = mu_r - mu_{r-1} with mu_0 = 0."""
    previous = [0.0] + list(mu[:-1])
    return [cur - prev for cur, prev in zip(mu, previous)]


class PriceProfile(BaseModel):
    """
    SJA bundle prices for m items together with the derived parameters.

    ``solved_p`` keeps the prices exactly as the slice conditions produced
    them; ``p`` is the menu actually offered (equal to ``solved_p`` until
    normalization collapses prices above p_m).
    """

    model_config = ConfigDict(populate_by_name=True)

    m: int = Field(..., ge=1, description="Number of items")
    p: List[float] = Field(..., description="Offered bundle prices p_1..p_m")
    solved_p: List[float] = Field(..., description="Prices as solved, before normalization")
    mu: List[float] = Field(..., description="mu_r = (m+1)(r - p_r)")
    lambdas: List[float] = Field(..., alias="lambda", description="lambda_r = mu_r - mu_{r-1}")
    normalized: bool = False
    conjectural: bool = False
    tol: float = Field(default=1e-12, gt=0)
    notes: List[str] = Field(default_factory=list)

    @field_validator("p", "solved_p")
    @classmethod
    def validate_prices(cls, v: List[float]) -> List[float]:
        if any(price < 0.0 for price in v):
            raise ValueError("bundle prices must be nonnegative")
        return v

    @model_validator(mode="after")
    def validate_lengths(self) -> "PriceProfile":
        for name in ("p", "solved_p", "mu", "lambdas"):
            if len(getattr(self, name)) != self.m:
                raise ValueError(f"{name} must have m={self.m} entries")
        return self

    @classmethod
    def from_prices(
        cls,
        m: int,
        prices: List[float],
        solved: List[float] | None = None,
        normalized: bool = False,
        tol: float = 1e-12,
        notes: List[str] | None = None,
    ) -> "PriceProfile":
        """Build a profile, deriving mu and lambda from the offered prices."""
        mu = mu_from_prices(list(prices), m)
        return cls(
            m=m,
            p=list(prices),
            solved_p=list(solved if solved is not None else prices),
            mu=mu,
            lambdas=lambdas_from_mu(mu),
            normalized=normalized,
            conjectural=m > CONJECTURE_THRESHOLD,
            tol=tol,
            notes=list(notes or []),
        )

    @property
    def k(self) -> float:
        return 1.0 / (self.m + 1)

    @property
    def solved_mu(self) -> List[float]:
        return mu_from_prices(self.solved_p, self.m)

    def price(self, size: int) -> float:
        """Price of any bundle of ``size`` items, with p_0 = 0."""
        return 0.0 if size == 0 else self.p[size - 1]

    def differences(self) -> List[float]:
        """p_r - p_{r-1} for r = 1..m."""
        previous = [0.0] + self.p[:-1]
        return [cur - prev for cur, prev in zip(self.p, previous)]

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "p": self.p,
            "solved_p": self.solved_p,
            "mu": self.mu,
            "lambda": self.lambdas,
            "normalized": self.normalized,
            "conjectural": self.conjectural,
            "notes": self.notes,
        }
