"""Belt assembly specifications shared by the food models and the evaluator.

A belt assembly is the passive, swappable half of the gripper: a timing belt
with food-specific attachments ("bits") riding on it. Geometry fields only
apply to the matching food kind; the plain belt is the ablation configuration
with no bits at all.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import ConfigError


class FoodKind(Enum):
    LONG_ENTANGLED = "long_entangled"
    GRANULAR_SLIPPERY = "granular_slippery"
    PLAIN_BELT = "plain_belt"


class ScoopProfile(Enum):
    CONICAL = "conical"
    ELLIPTICAL = "elliptical"
    CIRCULAR = "circular"


# User-facing aliases accepted in configs and on the CLI.
FOOD_ALIASES = {
    "spaghetti": FoodKind.LONG_ENTANGLED,
    "long_entangled": FoodKind.LONG_ENTANGLED,
    "ikura": FoodKind.GRANULAR_SLIPPERY,
    "granular_slippery": FoodKind.GRANULAR_SLIPPERY,
    "plain": FoodKind.PLAIN_BELT,
    "plain_belt": FoodKind.PLAIN_BELT,
}

FOOD_LABELS = {
    FoodKind.LONG_ENTANGLED: "spaghetti",
    FoodKind.GRANULAR_SLIPPERY: "ikura",
    FoodKind.PLAIN_BELT: "plain",
}


def parse_food(name: str) -> FoodKind:
    try:
        return FOOD_ALIASES[name.strip().lower()]
    except KeyError:
        raise ConfigError(f"unknown food kind: {name!r}") from None


@dataclass(frozen=True)
class BeltAssemblySpec:
    """Geometry of one swappable belt assembly.

    ``bit_density_per_cm2`` and ``bit_angle_deg`` apply to long-entangled
    bits; ``bucket_*`` and ``scoop_profile`` to granular buckets. The plain
    belt carries no bits (both families None).
    """

    food_kind: FoodKind
    gripper_width_mm: float = 30.0
    compartment_count: int = 18
    bit_pitch_mm: float = 6.0
    bit_density_per_cm2: float | None = None
    bit_angle_deg: float | None = None
    bucket_width_mm: float | None = None
    bucket_length_mm: float | None = None
    scoop_profile: ScoopProfile | None = None

    def __post_init__(self) -> None:
        if self.gripper_width_mm <= 0:
            raise ConfigError("gripper_width_mm must be positive")
        if self.compartment_count < 1:
            raise ConfigError("compartment_count must be >= 1")
        if self.food_kind is FoodKind.LONG_ENTANGLED:
            if self.bit_density_per_cm2 is None or self.bit_density_per_cm2 <= 0:
                raise ConfigError("long-entangled belts need a positive bit_density_per_cm2")
        elif self.food_kind is FoodKind.GRANULAR_SLIPPERY:
            if self.scoop_profile is None:
                raise ConfigError("granular belts need a scoop_profile")
            if not (self.bucket_width_mm and self.bucket_width_mm > 0):
                raise ConfigError("granular belts need a positive bucket_width_mm")
            if not (self.bucket_length_mm and self.bucket_length_mm > 0):
                raise ConfigError("granular belts need a positive bucket_length_mm")
        else:  # plain belt: ablation configuration, zero bits
            if self.bit_density_per_cm2 or self.scoop_profile is not None:
                raise ConfigError("plain belts carry no bits")

    @property
    def has_bits(self) -> bool:
        return self.food_kind is not FoodKind.PLAIN_BELT


def spaghetti_belt(
    width_mm: float = 30.0,
    density_per_cm2: float = 1.0,
    compartments: int = 18,
) -> BeltAssemblySpec:
    """Selected long-entangled configuration: 30 mm wide, low-density 45-degree bits."""
    return BeltAssemblySpec(
        food_kind=FoodKind.LONG_ENTANGLED,
        gripper_width_mm=width_mm,
        compartment_count=compartments,
        bit_pitch_mm=6.0,
        bit_density_per_cm2=density_per_cm2,
        bit_angle_deg=45.0,
    )


def ikura_belt(
    profile: ScoopProfile = ScoopProfile.CIRCULAR,
    compartments: int = 18,
) -> BeltAssemblySpec:
    """Selected granular configuration: 25 x 50 mm buckets with a circular scoop."""
    return BeltAssemblySpec(
        food_kind=FoodKind.GRANULAR_SLIPPERY,
        gripper_width_mm=25.0,
        compartment_count=compartments,
        bit_pitch_mm=25.0,
        bucket_width_mm=25.0,
        bucket_length_mm=50.0,
        scoop_profile=profile,
    )


def plain_belt(width_mm: float = 30.0) -> BeltAssemblySpec:
    """Ablation configuration: the bare belt with every bit removed."""
    return BeltAssemblySpec(
        food_kind=FoodKind.PLAIN_BELT,
        gripper_width_mm=width_mm,
        compartment_count=1,
        bit_pitch_mm=0.0,
    )
