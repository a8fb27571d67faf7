"""Markov-type equations C0 p^2 + C1 q^2 + C2 r^2 = m p q r.

Membership, Vieta jumping, solution-tree enumeration with an independent
brute-force oracle, and the exact accumulation point of the staircase ratios.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

Triple = tuple[int, int, int]


class DiophantineError(ValueError):
    pass


@dataclass(frozen=True)
class MarkovConfig:
    c0: int
    c1: int
    c2: int
    m: int

    def __post_init__(self):
        if min(self.c0, self.c1, self.c2, self.m) <= 0:
            raise DiophantineError("coefficients must be positive")
        for c in (self.c0, self.c1, self.c2):
            if self.m % c:
                raise DiophantineError(f"coefficient {c} does not divide {self.m}")

    @property
    def coefficients(self) -> tuple[int, int, int]:
        return (self.c0, self.c1, self.c2)

    def left(self, t: Triple) -> int:
        p, q, r = t
        return self.c0 * p * p + self.c1 * q * q + self.c2 * r * r

    def right(self, t: Triple) -> int:
        p, q, r = t
        return self.m * p * q * r


def is_solution(cfg: MarkovConfig, t: Triple) -> bool:
    if min(t) <= 0:
        return False
    return cfg.left(t) == cfg.right(t)


def vieta_jump(cfg: MarkovConfig, t: Triple, slot: int) -> Triple:
    """Replace slot entry by the other root of its quadratic; stays a solution."""
    if not is_solution(cfg, t):
        raise DiophantineError(f"{t} does not solve the configured equation")
    p, q, r = t
    if slot == 0:
        return (cfg.m * q * r // cfg.c0 - p, q, r)
    if slot == 1:
        return (p, cfg.m * p * r // cfg.c1 - q, r)
    if slot == 2:
        return (p, q, cfg.m * p * q // cfg.c2 - r)
    raise DiophantineError(f"slot {slot} out of range")


def canonical_triple(cfg: MarkovConfig, t: Triple) -> Triple:
    """Sort entries inside each group of equal coefficients; slots with distinct
    coefficients stay put."""
    groups: dict[int, list[int]] = {}
    for i, c in enumerate(cfg.coefficients):
        groups.setdefault(c, []).append(i)
    out = list(t)
    for idxs in groups.values():
        vals = sorted(out[i] for i in idxs)
        for i, v in zip(idxs, vals):
            out[i] = v
    return tuple(out)


def solution_tree(cfg: MarkovConfig, seed: Triple, bound: int) -> set[Triple]:
    """Closure of the seed under all three Vieta jumps, max entry <= bound."""
    if not is_solution(cfg, seed):
        raise DiophantineError(f"seed {seed} does not solve the configured equation")
    seen: set[Triple] = set()
    frontier = [seed]
    if max(seed) <= bound:
        seen.add(canonical_triple(cfg, seed))
    while frontier:
        t = frontier.pop()
        for slot in range(3):
            nxt = vieta_jump(cfg, t, slot)
            if min(nxt) <= 0 or max(nxt) > bound:
                continue
            key = canonical_triple(cfg, nxt)
            if key not in seen:
                seen.add(key)
                frontier.append(nxt)
    return seen


def brute_force_solutions(cfg: MarkovConfig, bound: int) -> set[Triple]:
    """Independent oracle: scan all (p, q) and solve the quadratic in r exactly."""
    if bound < 1:
        raise DiophantineError("bound must be >= 1")
    out: set[Triple] = set()
    for p in range(1, bound + 1):
        for q in range(1, bound + 1):
            # c2 r^2 - m p q r + (c0 p^2 + c1 q^2) = 0
            b = cfg.m * p * q
            disc = b * b - 4 * cfg.c2 * (cfg.c0 * p * p + cfg.c1 * q * q)
            if disc < 0:
                continue
            s = isqrt(disc)
            if s * s != disc:
                continue
            for num in (b - s, b + s):
                den = 2 * cfg.c2
                if num > 0 and num % den == 0:
                    r = num // den
                    if r <= bound and is_solution(cfg, (p, q, r)):
                        out.add(canonical_triple(cfg, (p, q, r)))
    return out


def _squarefree_split(n: int) -> tuple[int, int]:
    """n = s^2 * d with d squarefree; returns (s, d)."""
    s = 1
    d = n
    f = 2
    while f * f <= d:
        while d % (f * f) == 0:
            d //= f * f
            s *= f
        f += 1
    return s, d


@dataclass(frozen=True)
class Surd:
    """Exact quadratic number a + b * sqrt(d) with d squarefree."""

    a: Fraction
    b: Fraction
    d: int

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * self.d ** 0.5

    def __sub__(self, other: "Surd | Fraction | int") -> "Surd":
        if isinstance(other, Surd):
            if other.d != self.d and other.b != 0 and self.b != 0:
                raise DiophantineError("incompatible radicands")
            d = self.d if self.b else other.d
            return Surd(self.a - other.a, self.b - other.b, d)
        return Surd(self.a - other, self.b, self.d)

    def __repr__(self) -> str:
        if self.b == 0:
            return f"{self.a}"
        return f"{self.a} + {self.b}*sqrt({self.d})"


def accumulation_point(cfg: MarkovConfig) -> tuple[Surd, float]:
    """Limit of the staircase ratios with the first slot frozen at 1.

    x = larger root of c1 x^2 - m x + c2; the limit is c1 x^2 / c2, exact.
    """
    disc = cfg.m * cfg.m - 4 * cfg.c1 * cfg.c2
    if disc <= 0:
        raise DiophantineError("non-positive discriminant; ratios do not accumulate")
    s, d = _squarefree_split(disc)
    # x = (m + s*sqrt(d)) / (2 c1);  c1 x^2 / c2 simplifies to:
    a = Fraction(cfg.m * cfg.m + s * s * d, 4 * cfg.c1 * cfg.c2)
    b = Fraction(2 * cfg.m * s, 4 * cfg.c1 * cfg.c2)
    if d == 1:
        value = Surd(a + b, Fraction(0), 1)
    else:
        value = Surd(a, b, d)
    return value, float(value)


# the four configurations driving the staircase presets
CP2 = MarkovConfig(1, 1, 1, 3)
CP1XCP1 = MarkovConfig(1, 1, 2, 4)
BL3 = MarkovConfig(1, 2, 3, 6)
BL4 = MarkovConfig(1, 1, 5, 5)

DEFAULT_SEEDS: dict[MarkovConfig, Triple] = {
    CP2: (1, 1, 1),
    CP1XCP1: (1, 1, 1),
    BL3: (1, 1, 1),
    BL4: (1, 2, 1),
}
