"""Stochastic models of picking, carrying and releasing the two food classes.

Long, entangled food (spaghetti stands in for the class) is modeled as
strands of 3-6 g spread across belt compartments with a local random
entanglement graph; releasing one compartment can drag entangled neighbors
out of later compartments. Granular, slippery food (ikura) is modeled as
~1 g balls carried in bucket bits; each release step spills a few balls from
the leading bucket, occasionally more when balls slip.

The transit-loss and damage rates are calibrated against bench measurements
of the bit-selection study (see data/spaghetti_bit_trials.csv): quadratic
interpolation through the three 30 mm width density classes, with a fitted
linear width correction. Coefficients are shipped as defaults below.

All mutating operations conserve mass exactly: picked mass always equals
released mass + transit losses + whatever the load still holds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .belts import BeltAssemblySpec, FoodKind, ScoopProfile
from .errors import ConfigError, EmptyPile, KindMismatch, UsageError

MEAN_STRAND_WEIGHT_G = 4.5

# Strands entangle only across nearby compartments; segregation over the belt
# keeps clumps local, which bounds how much one step can drag out.
ENTANGLE_WINDOW = 3

# Granular release granularity: balls spilled from the leading bucket per
# step, before slip extras. Bench note: buckets carry 2-6 balls at pickup but
# tip gradually, so a single step sheds only part of the leading bucket.
_TRICKLE_P1 = 0.60
_TRICKLE_P2 = 0.30  # remaining 0.10 -> 3 balls

# Scoop-profile calibration (see data/ikura_bit_trials.csv): payload scale
# relative to the circular scoop, fraction of picked balls that never release
# stepwise (stuck in the bit), and the measured tilt angle needed to drop.
SCOOP_PAYLOAD_FACTOR = {
    ScoopProfile.CIRCULAR: 1.0,
    ScoopProfile.ELLIPTICAL: 1.1,
    ScoopProfile.CONICAL: 0.66,
}
SCOOP_STUCK_PROB = {
    ScoopProfile.CIRCULAR: 0.22,
    ScoopProfile.ELLIPTICAL: 0.33,
    ScoopProfile.CONICAL: 0.25,
}
SCOOP_DROP_ANGLE_DEG = {
    ScoopProfile.CIRCULAR: 103.0,
    ScoopProfile.ELLIPTICAL: 122.0,
    ScoopProfile.CONICAL: 115.0,
}

# Quadratic-in-density interpolation through the 30 mm bench means at
# densities 1.0 / 1.5 / 2.0 bits/cm^2, plus linear width slopes fitted to the
# high-density width series. Clamped at zero.
_DAMAGE_COEFFS = (0.09, -2.77, 2.82)
_DAMAGE_WIDTH_SLOPE = 0.10
_ACCIDENT_COEFFS = (5.18, -6.42, 2.04)
_ACCIDENT_WIDTH_SLOPE = -0.02
_BENCH_DROP_COEFFS = (80.42, -43.44, 11.44)
_BENCH_DROP_WIDTH_SLOPE = 0.16


def damage_rate(width_mm: float, density_per_cm2: float) -> float:
    """Expected strand damage events per transfer for a bit configuration."""
    a, b, c = _DAMAGE_COEFFS
    d = density_per_cm2
    return max(0.0, a + b * d + c * d * d + _DAMAGE_WIDTH_SLOPE * (width_mm - 30.0))


def accidental_drop_rate(width_mm: float, density_per_cm2: float) -> float:
    """Expected strands lost in transit per transfer for a bit configuration."""
    a, b, c = _ACCIDENT_COEFFS
    d = density_per_cm2
    return max(0.0, a + b * d + c * d * d + _ACCIDENT_WIDTH_SLOPE * (width_mm - 30.0))


def bench_dropped_mean_g(width_mm: float, density_per_cm2: float) -> float:
    """Mean mass a static bench setup drops per cycle for a bit configuration."""
    a, b, c = _BENCH_DROP_COEFFS
    d = density_per_cm2
    return max(0.0, a + b * d + c * d * d + _BENCH_DROP_WIDTH_SLOPE * (width_mm - 30.0))


def _check_prob(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise ConfigError(f"{name} must be in [0, 1], got {value}")


@dataclass
class SpaghettiPileModel:
    """Source bowl of long entangled strands, with slow session drift.

    The instance doubles as the live bowl: pickups consume strands and bump
    ``trial_index``, which drives the drift factor multiplying entanglement
    and stickiness. ``replenish()`` tops the bowl back up between trials.
    """

    total_strands: int = 200
    strand_weight_g_range: tuple[float, float] = (3.0, 6.0)
    entanglement_prob: float = 0.12
    stickiness: float = 0.5
    drift_amplitude: float = 0.2
    drift_period_trials: int = 40
    pickup_capacity_g: float = 90.0
    capacity_noise_frac: float = 0.1
    plain_pickup_range_g: tuple[float, float] = (10.0, 12.0)
    trial_index: int = 0
    remaining_strands: int = field(init=False)

    def __post_init__(self) -> None:
        lo, hi = self.strand_weight_g_range
        if not 0 < lo <= hi:
            raise ConfigError("strand_weight_g_range must be a positive interval")
        _check_prob("entanglement_prob", self.entanglement_prob)
        _check_prob("stickiness", self.stickiness)
        if self.pickup_capacity_g <= 0:
            raise ConfigError("pickup_capacity_g must be positive")
        self.remaining_strands = self.total_strands

    @property
    def kind(self) -> FoodKind:
        return FoodKind.LONG_ENTANGLED

    @property
    def has_mass(self) -> bool:
        return self.remaining_strands > 0

    def replenish(self) -> None:
        self.remaining_strands = self.total_strands

    def drift_factor(self) -> float:
        """Slowly varying session factor in [0.8, 1.2] over the trial index."""
        if self.drift_period_trials <= 0 or self.drift_amplitude == 0.0:
            return 1.0
        f = 1.0 + self.drift_amplitude * math.sin(
            2.0 * math.pi * self.trial_index / self.drift_period_trials
        )
        return min(1.2, max(0.8, f))


@dataclass
class GranularPileModel:
    """Source bowl of ~1 g slippery balls picked up in bucket bits."""

    ball_weight_g_mean: float = 1.0
    ball_weight_g_sd: float = 0.08
    slip_prob: float = 0.08
    bucket_capacity_balls: tuple[int, int] = (2, 6)
    source_balls: int = 2000
    trial_index: int = 0
    remaining_balls: int = field(init=False)

    def __post_init__(self) -> None:
        if self.ball_weight_g_mean <= 0:
            raise ConfigError("ball_weight_g_mean must be positive")
        _check_prob("slip_prob", self.slip_prob)
        lo, hi = self.bucket_capacity_balls
        if not 0 < lo <= hi:
            raise ConfigError("bucket_capacity_balls must be a positive range")
        self.remaining_balls = self.source_balls

    @property
    def kind(self) -> FoodKind:
        return FoodKind.GRANULAR_SLIPPERY

    @property
    def has_mass(self) -> bool:
        return self.remaining_balls > 0

    def replenish(self) -> None:
        self.remaining_balls = self.source_balls


PileModel = SpaghettiPileModel | GranularPileModel


@dataclass
class Strand:
    strand_id: int
    weight_g: float
    damaged: bool = False


@dataclass
class Compartment:
    """One belt segment's contents: strands or bucket balls.

    ``stuck_ball_weights_g`` are balls that never release stepwise; only a
    full dump shakes them out.
    """

    strands: list[Strand] = field(default_factory=list)
    ball_weights_g: list[float] = field(default_factory=list)
    stuck_ball_weights_g: list[float] = field(default_factory=list)

    @property
    def mass_g(self) -> float:
        return (
            sum(s.weight_g for s in self.strands)
            + sum(self.ball_weights_g)
            + sum(self.stuck_ball_weights_g)
        )

    @property
    def releasable_mass_g(self) -> float:
        return sum(s.weight_g for s in self.strands) + sum(self.ball_weights_g)


@dataclass
class HeldLoad:
    """Food currently riding on the belt, segregated by compartment.

    Compartments are ordered by belt position; release always consumes from
    the front. The entanglement graph and the behavior knobs sampled at
    pickup time ride along so release needs no back-reference to the pile.
    """

    kind: FoodKind
    belt: BeltAssemblySpec
    compartments: list[Compartment]
    entanglement: dict[int, set[int]] = field(default_factory=dict)
    stickiness: float = 0.0
    slip_prob: float = 0.0
    next_release: int = 0
    damage_tally: int = 0
    transit_loss_tally: int = 0
    transit_loss_mass_g: float = 0.0
    _strand_comp: dict[int, int] = field(default_factory=dict)

    @property
    def total_mass_g(self) -> float:
        return sum(c.mass_g for c in self.compartments)

    @property
    def releasable_mass_g(self) -> float:
        return sum(c.releasable_mass_g for c in self.compartments)

    @property
    def is_empty(self) -> bool:
        return self.total_mass_g == 0.0

    def strand_count(self) -> int:
        return sum(len(c.strands) for c in self.compartments)


def _draw_strand_weight(pile: SpaghettiPileModel, rng: np.random.Generator) -> float:
    lo, hi = pile.strand_weight_g_range
    return float(rng.uniform(lo, hi))


def _pickup_spaghetti_bits(
    pile: SpaghettiPileModel, belt: BeltAssemblySpec, rng: np.random.Generator
) -> HeldLoad:
    noise = pile.capacity_noise_frac
    capacity = pile.pickup_capacity_g * float(rng.uniform(1.0 - noise, 1.0 + noise))
    drift = pile.drift_factor()
    entangle_p = min(1.0, pile.entanglement_prob * drift)
    sticky = min(1.0, pile.stickiness * drift)

    compartments = [Compartment() for _ in range(belt.compartment_count)]
    strand_comp: dict[int, int] = {}
    total = 0.0
    sid = 0
    while pile.remaining_strands > 0:
        w = _draw_strand_weight(pile, rng)
        if total + w > capacity:
            break
        comp = int(rng.integers(0, belt.compartment_count))
        compartments[comp].strands.append(Strand(sid, w))
        strand_comp[sid] = comp
        total += w
        sid += 1
        pile.remaining_strands -= 1

    # Local entanglement graph: strands in different, nearby compartments.
    adjacency: dict[int, set[int]] = {i: set() for i in range(sid)}
    for i in range(sid):
        ci = strand_comp[i]
        for j in range(i + 1, sid):
            cj = strand_comp[j]
            if ci == cj or abs(ci - cj) > ENTANGLE_WINDOW:
                continue
            if rng.random() < entangle_p:
                adjacency[i].add(j)
                adjacency[j].add(i)

    return HeldLoad(
        kind=FoodKind.LONG_ENTANGLED,
        belt=belt,
        compartments=compartments,
        entanglement=adjacency,
        stickiness=sticky,
        _strand_comp=strand_comp,
    )


def _pickup_spaghetti_plain(
    pile: SpaghettiPileModel, belt: BeltAssemblySpec, rng: np.random.Generator
) -> HeldLoad:
    # Without bits the jaws only pinch a small clump; rejection-sample strand
    # sets until the clump lands in the configured window.
    lo, hi = pile.plain_pickup_range_g
    for _ in range(1000):
        weights: list[float] = []
        total = 0.0
        while total < lo and len(weights) < pile.remaining_strands:
            w = _draw_strand_weight(pile, rng)
            weights.append(w)
            total += w
        if total <= hi or len(weights) >= pile.remaining_strands:
            break
    pile.remaining_strands -= len(weights)
    comp = Compartment(strands=[Strand(i, w) for i, w in enumerate(weights)])
    return HeldLoad(
        kind=FoodKind.LONG_ENTANGLED,
        belt=belt,
        compartments=[comp],
        _strand_comp={i: 0 for i in range(len(weights))},
    )


def _draw_ball_weight(pile: GranularPileModel, rng: np.random.Generator) -> float:
    w = float(rng.normal(pile.ball_weight_g_mean, pile.ball_weight_g_sd))
    return max(0.05, w)


def _pickup_granular(
    pile: GranularPileModel, belt: BeltAssemblySpec, rng: np.random.Generator
) -> HeldLoad:
    factor = SCOOP_PAYLOAD_FACTOR[belt.scoop_profile]
    stuck_p = SCOOP_STUCK_PROB[belt.scoop_profile]
    lo, hi = pile.bucket_capacity_balls
    compartments = []
    for _ in range(belt.compartment_count):
        bucket = Compartment()
        payload = int(round(int(rng.integers(lo, hi + 1)) * factor))
        payload = min(payload, pile.remaining_balls)
        for _ in range(payload):
            w = _draw_ball_weight(pile, rng)
            pile.remaining_balls -= 1
            if rng.random() < stuck_p:
                bucket.stuck_ball_weights_g.append(w)
            else:
                bucket.ball_weights_g.append(w)
        compartments.append(bucket)
    return HeldLoad(
        kind=FoodKind.GRANULAR_SLIPPERY,
        belt=belt,
        compartments=compartments,
        slip_prob=pile.slip_prob,
    )


def pickup(pile: PileModel, belt: BeltAssemblySpec, rng: np.random.Generator) -> HeldLoad:
    """Run the belt to lift food out of the source bowl onto the bits.

    Bit-equipped belts load up to their capacity limit; the plain ablation
    belt only pinches 10-12 g of strands and cannot hold balls at all.
    Consumes the pile and advances its session trial index.
    """
    if belt.food_kind is not FoodKind.PLAIN_BELT and belt.food_kind is not pile.kind:
        raise KindMismatch(f"{belt.food_kind.value} belt cannot pick {pile.kind.value}")
    if not pile.has_mass:
        raise EmptyPile("source pile is empty")

    if isinstance(pile, SpaghettiPileModel):
        if belt.food_kind is FoodKind.PLAIN_BELT:
            load = _pickup_spaghetti_plain(pile, belt, rng)
        else:
            load = _pickup_spaghetti_bits(pile, belt, rng)
    else:
        if belt.food_kind is FoodKind.PLAIN_BELT:
            # Slippery balls just slide off the bare belt.
            load = HeldLoad(kind=FoodKind.GRANULAR_SLIPPERY, belt=belt, compartments=[])
        else:
            load = _pickup_granular(pile, belt, rng)
    pile.trial_index += 1
    return load


def _release_strand(load: HeldLoad, sid: int) -> Strand:
    comp = load.compartments[load._strand_comp[sid]]
    for k, strand in enumerate(comp.strands):
        if strand.strand_id == sid:
            return comp.strands.pop(k)
    raise RuntimeError(f"strand {sid} not present")  # pragma: no cover


def _release_step_spaghetti(
    load: HeldLoad, step_deg: float, rng: np.random.Generator
) -> float:
    pitch = 360.0 / load.belt.compartment_count
    n_comp = max(1, round(step_deg / pitch))
    dropped = 0.0
    queue: list[int] = []
    end = min(load.next_release + n_comp, len(load.compartments))
    for ci in range(load.next_release, end):
        comp = load.compartments[ci]
        for strand in list(comp.strands):
            queue.append(strand.strand_id)
            dropped += _release_strand(load, strand.strand_id).weight_g
    load.next_release = end
    # Entangled neighbors in not-yet-released compartments get dragged along.
    while queue:
        sid = queue.pop(0)
        for nb in sorted(load.entanglement.get(sid, ())):
            ci = load._strand_comp[nb]
            comp = load.compartments[ci]
            if ci < load.next_release or not any(s.strand_id == nb for s in comp.strands):
                continue
            if rng.random() < load.stickiness:
                dropped += _release_strand(load, nb).weight_g
                queue.append(nb)
    return dropped


def _release_step_granular(load: HeldLoad, rng: np.random.Generator) -> float:
    bucket = None
    for ci in range(load.next_release, len(load.compartments)):
        if load.compartments[ci].ball_weights_g:
            bucket = load.compartments[ci]
            load.next_release = ci
            break
    if bucket is None:
        return 0.0
    u = rng.random()
    count = 1 if u < _TRICKLE_P1 else 2 if u < _TRICKLE_P1 + _TRICKLE_P2 else 3
    count = min(count, len(bucket.ball_weights_g))
    dropped = 0.0
    for _ in range(count):
        dropped += bucket.ball_weights_g.pop()
    # Slippery extras: remaining balls in the tipped bucket may slide out too.
    for k in range(len(bucket.ball_weights_g) - 1, -1, -1):
        if rng.random() < load.slip_prob:
            dropped += bucket.ball_weights_g.pop(k)
    return dropped


def release_step(
    load: HeldLoad, step_deg: float, rng: np.random.Generator
) -> tuple[float, HeldLoad]:
    """Advance the belt one increment and return (dropped grams, load).

    The load is mutated in place and returned for convenience. An exhausted
    load drops 0. Mass is conserved exactly: the return value equals the
    decrease of ``load.total_mass_g``.
    """
    if step_deg <= 0:
        raise UsageError("step_deg must be positive")
    if load.kind is FoodKind.LONG_ENTANGLED:
        dropped = _release_step_spaghetti(load, step_deg, rng)
    else:
        dropped = _release_step_granular(load, rng)
    return dropped, load


def dump_all(load: HeldLoad) -> float:
    """Tip the whole belt: everything falls at once, stuck balls included."""
    total = load.total_mass_g
    for comp in load.compartments:
        comp.strands.clear()
        comp.ball_weights_g.clear()
        comp.stuck_ball_weights_g.clear()
    load.next_release = len(load.compartments)
    return total


def transit_effects(load: HeldLoad, rng: np.random.Generator) -> HeldLoad:
    """Apply carry-phase losses: accidental strand drops and bit damage.

    Rates come from the bench calibration curves above and scale with the
    belt's bit density and width. Accidental drops land outside the target
    bowl and are tracked as lost mass; damage marks strands without removing
    mass. The damage tally counts damage events, so with dense bits one
    strand can take several hits.
    """
    if load.kind is not FoodKind.LONG_ENTANGLED:
        raise KindMismatch("transit effects only apply to long entangled loads")
    if not load.belt.has_bits:
        return load
    width = load.belt.gripper_width_mm
    density = load.belt.bit_density_per_cm2 or 0.0

    n_drops = int(rng.poisson(accidental_drop_rate(width, density)))
    present = sorted(
        s.strand_id for c in load.compartments[load.next_release :] for s in c.strands
    )
    n_drops = min(n_drops, len(present))
    if n_drops:
        lost_ids = rng.choice(np.array(present), size=n_drops, replace=False)
        for sid in sorted(int(x) for x in lost_ids):
            strand = _release_strand(load, sid)
            load.transit_loss_mass_g += strand.weight_g
            load.transit_loss_tally += 1

    n_damage = int(rng.poisson(damage_rate(width, density)))
    remaining = [s for c in load.compartments for s in c.strands]
    if remaining:
        for _ in range(n_damage):
            victim = remaining[int(rng.integers(0, len(remaining)))]
            victim.damaged = True
        load.damage_tally += n_damage
    return load
