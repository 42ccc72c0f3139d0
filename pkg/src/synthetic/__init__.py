"""
Synthetic populations with a known latent alpha per user.

Used by oracle tests, the ``synth`` subcommand and the synthetic study
driver in ``tools/``.
"""

from .generator import (
    AlphaDistribution,
    LatentTruth,
    SyntheticSpec,
    generate_synthetic,
    is_identifiable,
    write_synthetic,
)

__all__ = [
    "AlphaDistribution",
    "LatentTruth",
    "SyntheticSpec",
    "generate_synthetic",
    "is_identifiable",
    "write_synthetic",
]
