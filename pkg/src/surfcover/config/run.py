"""Run-level settings shared by every scenario."""

from pydantic import BaseModel, Field


class RunConfig(BaseModel):
    """Knobs for one verification run.

    ``seed`` drives every random choice (coordinate changes, the free points
    and parameters of the seeded constructions); equal seeds give identical
    reports.
    """

    seed: int = Field(default=0, ge=0, description="RNG seed for seeded choices")
    depth_cap: int = Field(default=16, ge=1, le=64, description="Maximum blow-up depth when resolving a point")
    unloading_cap: int = Field(default=100, ge=1, description="Maximum fixed-part removals in h0 computations")
    certificate_retries: int = Field(
        default=4,
        ge=1,
        description="Generic coordinate changes tried before a transversality certificate is inconclusive",
    )
    max_seed_attempts: int = Field(
        default=16,
        ge=1,
        description="Consecutive seeds tried when a seeded construction is degenerate",
    )
