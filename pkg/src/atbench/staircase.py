"""Staircase driver: alternating full mutations of a triangular base.

Keeps one smooth corner frozen, alternates full mutations of the other two
corners, and reads the embedded ellipsoid off the frozen corner at each step.
The corner determinants track the configured Markov-type equation: every
mutation realizes one Vieta jump.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import diophantine as dio
from .atbd import (
    DEFAULT_CUT_FRACTION,
    AlmostToricBase,
    CutCrossesRayError,
    MutationRecord,
    corner_determinants,
    frozen_corner_ellipsoid,
    mutate,
    redistribute_nodes,
    validate,
)
from .diophantine import MarkovConfig, Surd, Triple, is_solution, vieta_jump
from .lattice import Pt, Vec, pt


class StaircaseError(ValueError):
    pass


@dataclass(frozen=True)
class ManifoldPreset:
    name: str
    label: str
    markov: MarkovConfig
    seed: Triple
    base: AlmostToricBase
    frozen: int
    q_corner: int
    r_corner: int
    marked_sides: tuple[int, ...] = ()
    marked_cut_segments: tuple[tuple[int, int], ...] = ()

    def accumulation(self) -> tuple[Surd, float]:
        return dio.accumulation_point(self.markov)

    def check(self) -> None:
        if not is_solution(self.markov, self.seed):
            raise StaircaseError(f"preset seed {self.seed} is not a solution")
        rep = validate(self.base)
        if not rep.valid:
            raise StaircaseError(f"preset base invalid: {rep.issues}")
        dets = corner_determinants(self.base)
        p, q, r = self.seed
        expected = {
            self.frozen: self.markov.c0 * p * p,
            self.q_corner: self.markov.c1 * q * q,
            self.r_corner: self.markov.c2 * r * r,
        }
        for idx, want in expected.items():
            if dets[idx] != want:
                raise StaircaseError(f"corner {idx} has determinant {dets[idx]}, expected {want}")


def _monotone_preset(name, label, cfg, seed, vertices, counts) -> ManifoldPreset:
    dirs = []
    for v in vertices:
        num_x, num_y = -v.x, -v.y
        den = num_x.denominator * num_y.denominator
        from .lattice import primitive_of

        d, _ = primitive_of(Vec(int(num_x * den), int(num_y * den)))
        dirs.append(d)
    base = AlmostToricBase.build(vertices, list(zip(dirs, counts)))
    return ManifoldPreset(
        name=name,
        label=label,
        markov=cfg,
        seed=seed,
        base=base,
        frozen=0,
        q_corner=1,
        r_corner=2,
        marked_sides=(1,),          # the side opposite the frozen corner
        marked_cut_segments=tuple(
            (i, j) for i, n in enumerate(counts) if n >= 2 for j in range(n - 1)
        ),
    )


def _build_presets() -> dict[str, ManifoldPreset]:
    presets = {
        "cp2": _monotone_preset(
            "cp2",
            "complex projective plane",
            dio.CP2,
            (1, 1, 1),
            [pt(-1, -1), pt(2, -1), pt(-1, 2)],
            [1, 1, 1],
        ),
        "cp1xcp1": _monotone_preset(
            "cp1xcp1",
            "product of two lines",
            dio.CP1XCP1,
            (1, 1, 1),
            [pt(-1, -1), pt(3, -1), pt(-1, 1)],
            [1, 1, 2],
        ),
        "bl3": _monotone_preset(
            "bl3",
            "three-point blowup",
            dio.BL3,
            (1, 1, 1),
            [pt(-1, -1), pt(2, -1), pt(-1, 1)],
            [1, 2, 3],
        ),
        "bl4": _monotone_preset(
            "bl4",
            "four-point blowup",
            dio.BL4,
            (1, 2, 1),
            [pt(-1, -1), pt(Fraction(3, 2), -1), pt(-1, 1)],
            [1, 1, 5],
        ),
    }
    for p in presets.values():
        p.check()
    return presets


PRESETS = _build_presets()


@dataclass(frozen=True)
class StaircaseStep:
    n: int
    triple: Triple
    weights: tuple[int, int, int]        # slot order (frozen, q, r)
    base: AlmostToricBase
    frozen: int
    q_corner: int
    r_corner: int
    ellipsoid: tuple[Fraction, Fraction]
    sharp_point: Fraction
    volume_bound: float
    accumulation_gap: float
    record: MutationRecord | None = None


def _weights(cfg: MarkovConfig, t: Triple) -> tuple[int, int, int]:
    p, q, r = t
    return (cfg.c0 * p * p, cfg.c1 * q * q, cfg.c2 * r * r)


def _sharp(cfg: MarkovConfig, t: Triple) -> Fraction:
    _, wq, wr = _weights(cfg, t)
    hi, lo = max(wq, wr), min(wq, wr)
    return Fraction(hi, lo)


def volume_lower_bound(a: float, volume: float) -> float:
    """pi * sqrt(a) / sqrt(2 * volume); the volume obstruction for E(1, a)."""
    if a <= 0 or volume <= 0:
        raise StaircaseError("volume bound needs positive inputs")
    return math.pi * math.sqrt(a) / math.sqrt(2 * volume)


def staircase_sequence(preset: ManifoldPreset, n_steps: int) -> list[StaircaseStep]:
    """Steps 0..n_steps: the seed base followed by n_steps full mutations.

    Odd steps jump the q slot, even steps the r slot; the mutated corner is
    always the one right after the frozen vertex in cyclic order, so the
    frozen corner never moves.
    """
    if n_steps < 0:
        raise StaircaseError("step count must be non-negative")
    preset.check()
    cfg = preset.markov
    accumulation = float(preset.accumulation()[0])
    volume = math.pi ** 2 * float(preset.base.area())

    def make_step(n, triple, base, frozen, qc, rc, record=None) -> StaircaseStep:
        weights = _weights(cfg, triple)
        dets = corner_determinants(base)
        if (dets[frozen], dets[qc], dets[rc]) != weights:
            raise StaircaseError(
                f"step {n}: corner determinants {dets} disagree with weights {weights}"
            )
        a, b = frozen_corner_ellipsoid(base, frozen)
        sharp = _sharp(cfg, triple)
        if b / a != sharp:
            raise StaircaseError(f"step {n}: ellipsoid ratio {b/a} != weight ratio {sharp}")
        return StaircaseStep(
            n=n,
            triple=triple,
            weights=weights,
            base=base,
            frozen=frozen,
            q_corner=qc,
            r_corner=rc,
            ellipsoid=(a, b),
            sharp_point=sharp,
            volume_bound=volume_lower_bound(float(sharp), volume),
            accumulation_gap=accumulation - float(sharp),
            record=record,
        )

    steps = [make_step(0, preset.seed, preset.base, preset.frozen, preset.q_corner, preset.r_corner)]
    base = preset.base
    triple = preset.seed
    frozen, qc, rc = preset.frozen, preset.q_corner, preset.r_corner

    for n in range(1, n_steps + 1):
        slot = 1 if n % 2 == 1 else 2          # q on odd steps, r on even
        target = qc if slot == 1 else rc
        if target != (frozen + 1) % 3:
            raise StaircaseError(f"step {n}: walk invariant broken (target {target}, frozen {frozen})")
        order = base.cuts[target].node_count
        positions = {idx: base.vertices[idx] for idx in (frozen, qc, rc)}
        # nodal slides: shrink the cut segments until none meets the splitting ray
        frac = DEFAULT_CUT_FRACTION
        for _ in range(32):
            try:
                new_base, record = mutate(redistribute_nodes(base, frac), target, order)
                break
            except CutCrossesRayError:
                frac /= 2
        else:
            raise StaircaseError(f"step {n}: could not slide nodes clear of the ray")
        triple = vieta_jump(cfg, triple, slot)

        # relocate corners: frozen kept its position, the untouched corner was
        # sheared along, and the new vertex takes the mutated slot
        other = rc if slot == 1 else qc
        moved_other = record.map_sheared(positions[other])
        idx_of = {v: idx for idx, v in enumerate(new_base.vertices)}
        try:
            frozen = idx_of[positions[frozen]]
            new_other = idx_of[moved_other]
            new_target = idx_of[record.ray_endpoint]
        except KeyError as exc:
            raise StaircaseError(f"step {n}: lost track of a corner: {exc}")
        if slot == 1:
            qc, rc = new_target, new_other
        else:
            qc, rc = new_other, new_target
        rep = validate(new_base)
        if not rep.valid:
            raise StaircaseError(f"step {n}: mutated base invalid: {rep.issues}")
        if new_base.area() != preset.base.area():
            raise StaircaseError(f"step {n}: area drifted")
        base = new_base
        steps.append(make_step(n, triple, base, frozen, qc, rc, record))

    return steps


def sharp_points(preset: ManifoldPreset, count: int) -> list[Fraction]:
    """The first `count` sharp points s_0, s_1, ... (seed ratio included)."""
    if count < 0:
        raise StaircaseError("count must be non-negative")
    if count == 0:
        return []
    return [s.sharp_point for s in staircase_sequence(preset, count - 1)]


@dataclass(frozen=True)
class StaircaseTable:
    preset: str
    seed: Triple
    seed_weights: tuple[int, int, int]
    seed_sharp: Fraction
    accumulation: Surd
    accumulation_float: float
    rows: tuple[StaircaseStep, ...]      # mutation steps 1..N; seed data is header-level

    def to_text(self) -> str:
        acc = f"{self.accumulation_float:.10f}"
        lines = [
            f"staircase {self.preset}: seed {self.seed}, weights {self.seed_weights}, "
            f"sharp {self.seed_sharp}, accumulation {self.accumulation} ~ {acc}",
            f"{'n':>3}  {'triple':>18}  {'weights':>24}  {'ellipsoid':>18}  {'sharp':>12}  {'bound':>10}  {'gap':>10}",
        ]
        for s in self.rows:
            ell = f"({s.ellipsoid[0]},{s.ellipsoid[1]})"
            lines.append(
                f"{s.n:>3}  {str(s.triple):>18}  {str(s.weights):>24}  {ell:>18}  "
                f"{str(s.sharp_point):>12}  {s.volume_bound:>10.6f}  {s.accumulation_gap:>10.3e}"
            )
        return "\n".join(lines)


def staircase_table(preset: ManifoldPreset, n_steps: int) -> StaircaseTable:
    steps = staircase_sequence(preset, n_steps)
    surd, acc = preset.accumulation()
    return StaircaseTable(
        preset=preset.name,
        seed=preset.seed,
        seed_weights=steps[0].weights,
        seed_sharp=steps[0].sharp_point,
        accumulation=surd,
        accumulation_float=acc,
        rows=tuple(steps[1:]),
    )
