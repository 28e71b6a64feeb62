"""Combinatorial model of compact oriented surfaces with labelled boundary.

A connected surface is a (genus, orientation, boundary-circle sequence)
triple; a surface is an ordered sequence of connected components.  Boundary
circles carry a label and an orientation sign.  Gluing identifies one
positively and one negatively oriented circle per pair and only updates the
genus/boundary bookkeeping: joining circles on the same component adds a
handle, joining circles on different components merges them.  The Euler
characteristic is preserved either way.

Text format (one component per line, blank file = empty surface)::

    component orient=+ genus=1 boundary=[+a,-b]

Labels match ``[A-Za-z0-9_]+``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import LabelError, OrientationError, ParseError
from .orientation import PLUS, Orientation

LABEL_RE = re.compile(r"[A-Za-z0-9_]+")

Pair = tuple[str, str]


@dataclass(frozen=True)
class BoundaryCircle:
    label: str
    orientation: Orientation

    def reversed(self) -> "BoundaryCircle":
        return BoundaryCircle(self.label, self.orientation.reverse())

    def __str__(self) -> str:
        return f"{self.orientation}{self.label}"


def circle(text: str) -> BoundaryCircle:
    """Build a circle from shorthand like ``"+a"`` or ``"-rim_2"``."""
    text = text.strip()
    if len(text) < 2 or text[0] not in "+-" or not LABEL_RE.fullmatch(text[1:]):
        raise LabelError(f"bad circle spec {text!r}; expected e.g. '+a'")
    return BoundaryCircle(text[1:], Orientation(text[0]))


def circles(text: str) -> tuple[BoundaryCircle, ...]:
    """Comma-separated :func:`circle` shorthand, e.g. ``"+a,-b"``."""
    text = text.strip()
    if not text:
        return ()
    return tuple(circle(part) for part in text.split(","))


@dataclass(frozen=True)
class ConnectedSurface:
    genus: int
    orientation: Orientation
    boundary: tuple[BoundaryCircle, ...] = ()

    @property
    def boundary_count(self) -> int:
        return len(self.boundary)

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - len(self.boundary)

    def labels(self) -> tuple[str, ...]:
        return tuple(c.label for c in self.boundary)

    def reverse_orientation(self) -> "ConnectedSurface":
        return ConnectedSurface(
            self.genus,
            self.orientation.reverse(),
            tuple(c.reversed() for c in self.boundary),
        )

    def fingerprint(self) -> tuple:
        """Order-insensitive identity: (genus, boundary label multiset, orientation)."""
        return (self.genus, tuple(sorted(str(c) for c in self.boundary)),
                self.orientation.symbol)


@dataclass(frozen=True)
class Surface:
    components: tuple[ConnectedSurface, ...] = ()

    # -- constructors ------------------------------------------------------

    @staticmethod
    def empty() -> "Surface":
        return Surface(())

    @staticmethod
    def of(*components: ConnectedSurface) -> "Surface":
        return Surface(tuple(components))

    @staticmethod
    def connected(genus: int, boundary: str | Sequence[BoundaryCircle] = (),
                  orientation: Orientation = PLUS) -> "Surface":
        bnd = circles(boundary) if isinstance(boundary, str) else tuple(boundary)
        return Surface((ConnectedSurface(genus, orientation, bnd),))

    @staticmethod
    def disk(spec: str = "+a", orientation: Orientation = PLUS) -> "Surface":
        return Surface.connected(0, spec, orientation)

    @staticmethod
    def annulus(spec: str = "-a,+b", orientation: Orientation = PLUS) -> "Surface":
        return Surface.connected(0, spec, orientation)

    @staticmethod
    def pants(spec: str = "+a,+b,+c", orientation: Orientation = PLUS) -> "Surface":
        return Surface.connected(0, spec, orientation)

    @staticmethod
    def sphere(orientation: Orientation = PLUS) -> "Surface":
        return Surface.connected(0, (), orientation)

    @staticmethod
    def torus(orientation: Orientation = PLUS) -> "Surface":
        return Surface.connected(1, (), orientation)

    # -- queries -----------------------------------------------------------

    def boundary_circles(self) -> tuple[BoundaryCircle, ...]:
        return tuple(c for comp in self.components for c in comp.boundary)

    def labels(self) -> tuple[str, ...]:
        return tuple(c.label for c in self.boundary_circles())

    def euler_characteristic(self) -> int:
        return sum(comp.euler_characteristic for comp in self.components)

    def validate(self) -> list[str]:
        """Return every invariant violation (empty list means valid)."""
        violations = []
        seen: set[str] = set()
        for comp in self.components:
            if comp.genus < 0:
                violations.append(f"negative genus {comp.genus}")
            for c in comp.boundary:
                if not LABEL_RE.fullmatch(c.label):
                    violations.append(f"bad label {c.label!r}")
                if c.label in seen:
                    violations.append(f"duplicate label {c.label}")
                seen.add(c.label)
        return violations

    def require_valid(self) -> "Surface":
        violations = self.validate()
        if violations:
            raise LabelError("invalid surface: " + "; ".join(violations))
        return self

    def component_multiset(self) -> tuple[tuple, ...]:
        """Sorted component fingerprints; the order-independent identity of a surface."""
        return tuple(sorted(comp.fingerprint() for comp in self.components))

    def find_circle(self, label: str) -> BoundaryCircle:
        for comp in self.components:
            for c in comp.boundary:
                if c.label == label:
                    return c
        raise LabelError(f"unknown label {label}")

    # -- operations --------------------------------------------------------

    def disjoint_union(self, other: "Surface") -> "Surface":
        overlap = set(self.labels()) & set(other.labels())
        if overlap:
            raise LabelError(f"label collision in disjoint union: {sorted(overlap)}")
        return Surface(self.components + other.components)

    def reverse_orientation(self) -> "Surface":
        return Surface(tuple(comp.reverse_orientation() for comp in self.components))

    def glue(self, pairs: "GlueSpec | Iterable[Pair]") -> "Surface":
        """Glue the listed circle pairs.

        Every pair must join one + and one - circle, and no label may occur
        in more than one pair.  Pairs on one component add a handle; pairs
        across two components merge them (genus adds, the earlier
        component's orientation and position are kept).
        """
        spec = pairs if isinstance(pairs, GlueSpec) else GlueSpec.of(pairs)
        self.require_valid()
        used: set[str] = set()
        for a, b in spec.pairs:
            for lab in (a, b):
                if lab in used:
                    raise LabelError(f"label {lab} used twice in glue pairs")
                used.add(lab)
            ca = self.find_circle(a)
            cb = self.find_circle(b)
            if ca.orientation is cb.orientation:
                raise OrientationError(
                    f"cannot glue {ca} to {cb}: need one + and one - circle")

        comps: list[list] = [
            [comp.genus, comp.orientation, list(comp.boundary)] for comp in self.components
        ]

        def locate(label: str) -> int:
            for ci, (_, _, boundary) in enumerate(comps):
                if any(c.label == label for c in boundary):
                    return ci
            raise LabelError(f"unknown label {label}")

        for a, b in spec.pairs:
            ca_i = locate(a)
            cb_i = locate(b)
            if ca_i == cb_i:
                genus, orient, boundary = comps[ca_i]
                boundary = [c for c in boundary if c.label not in (a, b)]
                comps[ca_i] = [genus + 1, orient, boundary]
            else:
                first, second = min(ca_i, cb_i), max(ca_i, cb_i)
                g1, o1, b1 = comps[first]
                g2, _, b2 = comps[second]
                merged = [c for c in b1 + b2 if c.label not in (a, b)]
                comps[first] = [g1 + g2, o1, merged]
                del comps[second]

        return Surface(tuple(
            ConnectedSurface(g, o, tuple(b)) for g, o, b in comps
        ))

    def __str__(self) -> str:
        return format_surface(self)


@dataclass(frozen=True)
class GlueSpec:
    """An unordered batch of circle pairs to glue simultaneously."""

    pairs: tuple[Pair, ...] = ()

    @staticmethod
    def of(pairs: Iterable[Pair]) -> "GlueSpec":
        return GlueSpec(tuple((str(a), str(b)) for a, b in pairs))

    def __post_init__(self):
        seen: set[str] = set()
        for a, b in self.pairs:
            for lab in (a, b):
                if lab in seen:
                    raise LabelError(f"label {lab} repeated in glue spec")
                seen.add(lab)

    def labels(self) -> set[str]:
        return {lab for pair in self.pairs for lab in pair}

    def __str__(self) -> str:
        return ",".join(f"{a}:{b}" for a, b in self.pairs)


def compose_glue(first: GlueSpec, second: GlueSpec) -> GlueSpec:
    """The one-shot spec equivalent to gluing `first` and then `second`.

    `second` may only mention labels that survive `first`, so the two pair
    sets must be disjoint; the composite is their union.
    """
    consumed = first.labels() & second.labels()
    if consumed:
        raise LabelError(
            f"glue composition reuses consumed labels: {sorted(consumed)}")
    return GlueSpec(first.pairs + second.pairs)


# -- text format -----------------------------------------------------------

_COMPONENT_RE = re.compile(
    r"^component\s+orient=(?P<orient>[+-])\s+genus=(?P<genus>-?\d+)"
    r"\s+boundary=\[(?P<boundary>[^\]]*)\]\s*$"
)


def parse_surface(text: str) -> Surface:
    """Parse the one-component-per-line text format. Rejects duplicate labels."""
    components = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        m = _COMPONENT_RE.match(line)
        if not m:
            raise ParseError(
                "expected 'component orient=<+|-> genus=<n> boundary=[...]'",
                line=lineno, column=1)
        genus = int(m.group("genus"))
        boundary = []
        body = m.group("boundary").strip()
        if body:
            offset = raw.index("[") + 2
            for part in body.split(","):
                part = part.strip()
                if len(part) < 2 or part[0] not in "+-" or not LABEL_RE.fullmatch(part[1:]):
                    raise ParseError(f"bad boundary circle {part!r}",
                                     line=lineno, column=offset)
                boundary.append(BoundaryCircle(part[1:], Orientation(part[0])))
                offset += len(part) + 1
        components.append(ConnectedSurface(
            genus, Orientation(m.group("orient")), tuple(boundary)))
    surface = Surface(tuple(components))
    violations = surface.validate()
    if violations:
        raise ParseError("; ".join(violations))
    return surface


def format_surface(surface: Surface) -> str:
    """Inverse of :func:`parse_surface` (empty surface formats to '')."""
    lines = []
    for comp in surface.components:
        body = ",".join(str(c) for c in comp.boundary)
        lines.append(f"component orient={comp.orientation} genus={comp.genus} boundary=[{body}]")
    return "\n".join(lines)
