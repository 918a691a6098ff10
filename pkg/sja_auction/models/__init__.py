"""Validated domain models."""

from .prices import PriceProfile, PriceSeq, lambdas_from_mu, mu_from_prices

__all__ = ["PriceSeq", "PriceProfile", "mu_from_prices", "lambdas_from_mu"]
