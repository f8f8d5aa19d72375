"""Polysquare translation surfaces encoded by two gluing permutations.

A surface is ``b`` unit squares; exiting square ``s`` through its right edge
enters ``right[s]`` at the left edge, exiting through the top enters
``top[s]`` at the bottom.  Vertical edges are labelled by the square whose
LEFT edge they are, so there are exactly ``b`` vertical edge circles.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import InvariantViolation, MalformedFile


@dataclass(frozen=True)
class PolysquareSurface:
    squares: int
    right: tuple[int, ...]
    top: tuple[int, ...]

    def validate(self) -> list[str]:
        """List of invariant violations; empty iff the surface is usable."""
        issues: list[str] = []
        b = self.squares
        if b < 1:
            return [f"need at least one square, got {b}"]
        for name, perm in (("right", self.right), ("top", self.top)):
            if len(perm) != b:
                issues.append(f"{name} gluing has length {len(perm)}, expected {b}")
                continue
            if sorted(perm) != list(range(b)):
                issues.append(f"{name} gluing is not a permutation of 0..{b - 1}")
        if issues:
            return issues
        # transitivity of the action generated by the two gluings
        seen = {0}
        frontier = [0]
        while frontier:
            s = frontier.pop()
            for t in (self.right[s], self.top[s]):
                if t not in seen:
                    seen.add(t)
                    frontier.append(t)
        if len(seen) != b:
            missing = sorted(set(range(b)) - seen)
            issues.append(f"surface is disconnected; unreachable squares {missing}")
        return issues

    def to_json(self) -> dict:
        return {"squares": self.squares, "right": list(self.right), "top": list(self.top)}


FIXTURES = {
    "torus": PolysquareSurface(1, (0,), (0,)),
    "L3": PolysquareSurface(3, (1, 0, 2), (2, 1, 0)),
}


def fixture(name: str) -> PolysquareSurface:
    try:
        return FIXTURES[name]
    except KeyError:
        raise MalformedFile(f"unknown fixture {name!r}; known: {sorted(FIXTURES)}") from None


def save_surface(surface: PolysquareSurface, path: str | Path) -> None:
    Path(path).write_text(json.dumps(surface.to_json(), indent=2) + "\n")


def load_surface(path: str | Path) -> PolysquareSurface:
    """Load and validate a surface; raises MalformedFile / InvariantViolation."""
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedFile(f"cannot read surface from {path}: {exc}") from exc
    try:
        surface = PolysquareSurface(
            int(raw["squares"]),
            tuple(int(v) for v in raw["right"]),
            tuple(int(v) for v in raw["top"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedFile(f"bad surface schema in {path}: {exc}") from exc
    issues = surface.validate()
    if issues:
        raise InvariantViolation("; ".join(issues))
    return surface


def resolve_surface(spec: str) -> PolysquareSurface:
    """Fixture name or JSON file path."""
    if spec in FIXTURES:
        return FIXTURES[spec]
    return load_surface(spec)
