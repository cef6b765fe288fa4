"""Run configurations shared by the CLI and the experiment scripts."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .decimal_stream import DEFAULT_FUEL


@dataclass(frozen=True)
class EvalConfig:
    digits: int = 30
    fuel: int | None = None  # None means max(10 * digits, 1000)
    check: bool = False

    @property
    def effective_fuel(self) -> int:
        return self.fuel if self.fuel is not None else max(10 * self.digits, DEFAULT_FUEL)


@dataclass(frozen=True)
class CarryStatsConfig:
    op: str = "add"
    k: int = 6
    trials: int = 1_000_000
    seed: int = 20240601

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class SelfCheckConfig:
    max_scale: int = 2
    max_int: int = 1
    digits: int = 8


@dataclass(frozen=True)
class TruncationBoundsConfig:
    pairs: int = 1000
    max_k: int = 12
    seed: int = 7
    int_range: int = 3
    fuel: int = 200
