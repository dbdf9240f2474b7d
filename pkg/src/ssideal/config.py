"""Engine and experiment configuration."""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Tuple

DEFAULT_DEGREE_CAP = 40
DEGREE_CAP_ENV = "SSIDEAL_DEGREE_CAP"


@dataclass(frozen=True)
class EngineConfig:
    """Knobs shared by the Gröbner engine and the verifiers."""

    degree_cap: int = DEFAULT_DEGREE_CAP
    kernel_tail: str = "Et2"

    @classmethod
    def from_env(cls) -> "EngineConfig":
        raw = os.environ.get(DEGREE_CAP_ENV, "").strip()
        if not raw:
            return cls()
        try:
            cap = int(raw)
        except ValueError:
            raise ValueError(f"{DEGREE_CAP_ENV} must be an integer, got {raw!r}") from None
        if cap < 1:
            raise ValueError(f"{DEGREE_CAP_ENV} must be positive")
        return cls(degree_cap=cap)


@dataclass(frozen=True)
class ReproduceConfig:
    """Which fixtures to verify and where to put the JSON reports."""

    fixtures: Tuple[str, ...] = ("example1", "example2", "example3", "trivial_example1")
    fixture_dir: Path = Path(__file__).resolve().parents[2] / "fixtures"
    out_dir: Path = Path("reports")
    kernel_tail: str = "Et2"


@dataclass(frozen=True)
class SweepConfig:
    """Identity sweep and random-parameter Hilbert-numerator checks."""

    max_n: int = 20
    min_n: int = 4
    random_cases: int = 500
    random_max_n: int = 10
    seed: int = 20240101
    extra: dict = field(default_factory=dict)
