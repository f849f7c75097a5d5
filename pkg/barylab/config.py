from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


TOLERANCE = {
    "rel": 1e-9,
    "abs": 1e-12,
    # Buckets used to group sampled values before the tolerance comparison.
    "bucket_digits": 9,
}

TABULATED = {
    "default_max_arity": 4,
    "quasi_inverse_enumeration_limit": 4,
}

SEARCH = {
    "max_len": 4,            # exhaustive mode (finite domains)
    "sampled_max_len": 6,    # sampled mode (real intervals, vector spaces)
    "samples": 600,          # random strings per length above lattice_len
    "lattice_len": 3,        # lengths enumerated exhaustively over the lattice
    "pair_len": 3,           # longest y / y' compared in preassociativity checks
    "pairs_per_bucket": 12,
    "seed": 0x5EED,
    "budget": 10_000_000,
    "jobs": 1,
}

SAMPLING = {
    "real_lattice": [-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 3.0],
    "positive_lattice": [0.5, 1.0, 2.0, 3.0, 4.0, 8.0],
    "vector_lattice": [0, 1, 2],
    "low_discrepancy_points": 4,
    # Unbounded interval ends are clamped to this window when drawing points.
    "window": 4.0,
}

CONTINUITY = {
    "step": 1e-7,
    "modulus_bound": 1e-4,
}

ENUMERATION = {
    "max_domain": 3,
    "max_arity": 3,
}

AFFINE = {
    "quartiles": (0.25, 0.75),
    "tolerance": 1e-9,
    "grid_points": 9,
}


class Settings(BaseSettings):
    """Environment overrides (BARYLAB_BUDGET, BARYLAB_JOBS, BARYLAB_DEBUG)."""

    model_config = SettingsConfigDict(env_prefix="BARYLAB_", env_file=".env", extra="ignore")

    budget: Optional[int] = None
    jobs: Optional[int] = None
    debug: bool = False


def get_settings() -> Settings:
    # Read on every call so tests can monkeypatch the environment.
    return Settings()
