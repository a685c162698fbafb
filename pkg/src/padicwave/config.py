"""Run configuration shared by the CLI and report serialization."""

from __future__ import annotations

from dataclasses import asdict, dataclass


@dataclass(frozen=True)
class RunConfig:
    tol: float = 1e-9
    max_support: int = 20
    seed: int = 0
    exact: bool = False
    output_format: str = "json"

    def __post_init__(self) -> None:
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.max_support < 0:
            raise ValueError("max_support must be nonnegative")
        if self.output_format not in ("json", "csv"):
            raise ValueError("output_format must be 'json' or 'csv'")

    def as_dict(self) -> dict:
        return asdict(self)
