from __future__ import annotations

import os
from dataclasses import dataclass

ORDER_ENV = "PFGRAMMAR_MAX_ORDER"
ENUM_ENV = "PFGRAMMAR_MAX_ENUM"


@dataclass(frozen=True)
class Limits:
    """Caps on derivative order and brute-force sequence length.

    Defaults can be overridden through the environment variables
    ``PFGRAMMAR_MAX_ORDER`` and ``PFGRAMMAR_MAX_ENUM``.
    """

    max_order: int = 12
    max_enum: int = 8

    @classmethod
    def from_env(cls) -> Limits:
        base = cls()
        return cls(
            max_order=int(os.environ.get(ORDER_ENV, base.max_order)),
            max_enum=int(os.environ.get(ENUM_ENV, base.max_enum)),
        )


def max_order(override: int | None = None) -> int:
    return override if override is not None else Limits.from_env().max_order


def max_enum(override: int | None = None) -> int:
    return override if override is not None else Limits.from_env().max_enum
