"""Assigning tensors to surfaces, and the verification suites.

A connected genus-g surface with n boundary circles (2g-2+n >= 1) is cut
into 2g-2+n pairs-of-pants along 3g-3+n internal circles; each pants node
receives a copy of the rank-3 generator, internal circles are contracted
away via the Kronecker pairing, and one index per boundary circle survives,
carrying that circle's label and orientation sign.  The sphere, disk,
annulus and torus have no pants decomposition and take their tensors from
the closed-form table instead.  Components multiply via the tensor product.

Two decomposition strategies are built in (`chain`, a caterpillar with
boundary legs hanging off the front of a linear spine and handles as
self-paired legs at the end, and `alternate`, a regrouped variant), plus a
seeded rewrite generator that regroups the four legs around a circle joining
two pants.  The verification suites check that the invariant does not depend
on the decomposition, that gluing surfaces matches contracting tensors, that
two-stage gluings compose, and that disjoint union matches tensor product.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DimensionError, LabelError, RelationError, TqftError
from .orientation import MINUS, PLUS
from .surface import (
    LABEL_RE,
    BoundaryCircle,
    ConnectedSurface,
    GlueSpec,
    Surface,
    compose_glue,
    format_surface,
)
from .tensor import (
    DEFAULT_TOLERANCE,
    LabeledTensor,
    SignedIndex,
    contract_between,
    contract_within,
    scalar_one,
)
from .tqft import TqftData, annulus_tensor, base_invariants, check_relations

EXCEPTIONAL = {(0, 0), (0, 1), (0, 2), (1, 0)}
STRATEGIES = ("chain", "alternate")


# -- pants decompositions ----------------------------------------------------

@dataclass(frozen=True)
class Pants:
    """One 3-legged node; legs are circle labels.

    Legs are distinct except that an internal circle may appear twice when
    the node carries a self-paired handle.
    """

    legs: tuple[str, str, str]

    def __post_init__(self):
        if len(self.legs) != 3:
            raise LabelError(f"a pants node has exactly 3 legs, got {self.legs}")
        if len(set(self.legs)) == 1:
            raise LabelError(f"a label cannot fill all legs of one pants: {self.legs}")

    def __str__(self) -> str:
        return "(" + " ".join(self.legs) + ")"


@dataclass(frozen=True)
class PantsDecomposition:
    """A network of pants nodes.

    External labels are the surface's boundary circles and occur in exactly
    one leg slot; internal (cutting) labels occur in exactly two slots,
    possibly both on one node (a handle).
    """

    pants: tuple[Pants, ...]
    external: frozenset[str]
    internal: frozenset[str]

    @property
    def boundary_count(self) -> int:
        return len(self.external)

    @property
    def genus(self) -> int:
        # Each pants has Euler characteristic -1 and gluing circles add 0,
        # so chi = -len(pants) = 2 - 2g - n.
        return (len(self.pants) + 2 - len(self.external)) // 2

    def validate(self) -> list[str]:
        violations = []
        counts: dict[str, int] = {}
        for node in self.pants:
            for leg in node.legs:
                counts[leg] = counts.get(leg, 0) + 1
        for label in counts:
            if not LABEL_RE.fullmatch(label):
                violations.append(f"bad label {label!r}")
        if self.external & self.internal:
            violations.append("a label is both external and internal")
        for label in self.external:
            if counts.get(label, 0) != 1:
                violations.append(f"external label {label} occurs {counts.get(label, 0)} times")
        for label in self.internal:
            if counts.get(label, 0) != 2:
                violations.append(f"internal label {label} occurs {counts.get(label, 0)} times")
        for label in counts:
            if label not in self.external and label not in self.internal:
                violations.append(f"unclassified label {label}")
        for node in self.pants:
            for leg, repeat in _leg_counts(node).items():
                if repeat == 2 and leg not in self.internal:
                    violations.append(f"repeated non-internal leg {leg} in {node}")
        n, p = len(self.external), len(self.pants)
        if p < 1:
            violations.append("no pants nodes")
        if (p + 2 - n) % 2 != 0 or p + 2 - n < 0:
            violations.append(f"inconsistent counts: {p} pants, {n} external legs")
        if not self._connected():
            violations.append("network is not connected")
        return violations

    def _connected(self) -> bool:
        if not self.pants:
            return True
        owners: dict[str, list[int]] = {}
        for k, node in enumerate(self.pants):
            for leg in node.legs:
                owners.setdefault(leg, []).append(k)
        parent = list(range(len(self.pants)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for nodes in owners.values():
            for other in nodes[1:]:
                ra, rb = find(nodes[0]), find(other)
                if ra != rb:
                    parent[rb] = ra
        root = find(0)
        return all(find(k) == root for k in range(len(self.pants)))

    def require_valid(self) -> "PantsDecomposition":
        violations = self.validate()
        if violations:
            raise TqftError("invalid decomposition: " + "; ".join(violations))
        return self

    def __str__(self) -> str:
        nodes = " ".join(str(node) for node in self.pants)
        ext = ",".join(sorted(self.external))
        cut = ",".join(sorted(self.internal))
        return f"pants[{nodes}] external[{ext}] internal[{cut}]"


def _leg_counts(node: Pants) -> dict[str, int]:
    counts: dict[str, int] = {}
    for leg in node.legs:
        counts[leg] = counts.get(leg, 0) + 1
    return counts


def _internal_names(count: int, reserved: set[str]) -> list[str]:
    names = []
    k = 1
    while len(names) < count:
        name = f"cut{k}"
        k += 1
        if name not in reserved:
            names.append(name)
    return names


def pants_decomposition(genus: int, boundary_count: int, strategy: str = "chain",
                        labels: Sequence[str] | None = None) -> PantsDecomposition:
    """Decompose the connected (genus, boundary_count) surface.

    `labels` names the external legs (defaults to b1..bn).  `chain` builds
    the caterpillar; `alternate` applies one leg-regrouping move to it and
    therefore differs structurally whenever 2g-2+n >= 2.
    """
    g, n = genus, boundary_count
    if g < 0 or n < 0:
        raise ValueError("genus and boundary count must be non-negative")
    if (g, n) in EXCEPTIONAL or 2 * g - 2 + n < 1:
        raise ValueError(
            f"(genus={g}, boundary={n}) has no pants decomposition")
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    external = list(labels) if labels is not None else [f"b{k + 1}" for k in range(n)]
    if len(external) != n:
        raise LabelError(f"expected {n} external labels, got {len(external)}")
    if len(set(external)) != n:
        raise LabelError("external labels must be distinct")

    total = 2 * g - 2 + n
    spine_len = total - g
    names = _internal_names((spine_len - 1 if spine_len else 0) + 2 * g, set(external))
    spine_cuts = names[:max(spine_len - 1, 0)]
    rest = names[max(spine_len - 1, 0):]
    attach = rest[:g]
    handles = rest[g:]

    nodes: list[list[str]] = []
    if spine_len >= 1:
        # Fill free spine slots front to back: boundary legs first, then
        # the circles that attach the handle nodes.
        queue = external + attach
        for k in range(spine_len):
            legs: list[str] = []
            if k > 0:
                legs.append(spine_cuts[k - 1])
            free = 3 - len(legs) - (1 if k < spine_len - 1 else 0)
            for _ in range(free):
                legs.append(queue.pop(0))
            if k < spine_len - 1:
                legs.append(spine_cuts[k])
            nodes.append(legs)
        assert not queue
        for i in range(g):
            nodes.append([attach[i], handles[i], handles[i]])
    elif (g, n) == (1, 1):
        nodes.append([external[0], handles[0], handles[0]])
    elif (g, n) == (2, 0):
        joint = attach[0]
        nodes.append([joint, handles[0], handles[0]])
        nodes.append([joint, handles[1], handles[1]])
    else:  # pragma: no cover - excluded by the checks above
        raise ValueError(f"unhandled shape (genus={g}, boundary={n})")

    internal = {leg for legs in nodes for leg in legs} - set(external)
    decomposition = PantsDecomposition(
        tuple(Pants(tuple(legs)) for legs in nodes),
        frozenset(external), frozenset(internal)).require_valid()

    if strategy == "alternate":
        moves = exchange_moves(decomposition)
        if moves:
            decomposition = apply_exchange(decomposition, moves[0]).require_valid()
    return decomposition


Move = tuple[int, int, str, int]


def exchange_moves(decomposition: PantsDecomposition) -> list[Move]:
    """All leg-regrouping moves: for a circle occurring once in each of two
    nodes, the four remaining legs can be regrouped in two other ways.
    A move is (node_a, node_b, circle, variant) with variant in {0, 1}."""
    moves = []
    for a, b in itertools.combinations(range(len(decomposition.pants)), 2):
        counts_a = _leg_counts(decomposition.pants[a])
        counts_b = _leg_counts(decomposition.pants[b])
        shared = sorted(set(counts_a) & set(counts_b))
        for label in shared:
            if counts_a[label] == 1 and counts_b[label] == 1:
                moves.append((a, b, label, 0))
                moves.append((a, b, label, 1))
    return moves


def apply_exchange(decomposition: PantsDecomposition, move: Move) -> PantsDecomposition:
    """Regroup the four free legs around a connecting circle.

    With node_a = (x1, x2, c) and node_b = (c, y1, y2), variant 0 yields
    (x1, y1, c), (c, x2, y2) and variant 1 yields (x1, y2, c), (c, x2, y1).
    Pants count, external legs, connectivity and genus are all preserved.
    """
    a, b, label, variant = move
    node_a, node_b = decomposition.pants[a], decomposition.pants[b]
    xs = [leg for leg in node_a.legs if leg != label]
    ys = [leg for leg in node_b.legs if leg != label]
    if len(xs) != 2 or len(ys) != 2:
        raise ValueError(f"move {move} does not fit the decomposition")
    if variant:
        ys = [ys[1], ys[0]]
    new_a = Pants((xs[0], ys[0], label))
    new_b = Pants((label, xs[1], ys[1]))
    pants = list(decomposition.pants)
    pants[a], pants[b] = new_a, new_b
    return PantsDecomposition(tuple(pants), decomposition.external,
                              decomposition.internal)


def random_rewrite(decomposition: PantsDecomposition, rng: random.Random,
                   moves: int = 1) -> PantsDecomposition:
    """Apply `moves` random regrouping moves (seeded via `rng`)."""
    current = decomposition
    for _ in range(moves):
        options = exchange_moves(current)
        if not options:
            break
        current = apply_exchange(current, rng.choice(options))
    return current.require_valid()


# -- tensor assembly ---------------------------------------------------------

def _pants_network(data: TqftData, decomposition: PantsDecomposition
                   ) -> tuple[list[LabeledTensor], list[tuple[str, str]]]:
    """Node tensors plus the contraction pairs for the internal circles.

    The second occurrence of an internal label gets renamed (trailing
    apostrophe, which no surface label can carry) and the opposite sign, so
    each pair is a legal +/- contraction.
    """
    n = data.dimension
    seen: dict[str, int] = {}
    tensors = []
    pairs = []
    for node in decomposition.pants:
        indices = []
        for leg in node.legs:
            if leg in decomposition.internal:
                occurrence = seen.get(leg, 0)
                seen[leg] = occurrence + 1
                if occurrence == 0:
                    indices.append(SignedIndex(leg, PLUS, n))
                else:
                    indices.append(SignedIndex(leg + "'", MINUS, n))
                    pairs.append((leg, leg + "'"))
            else:
                indices.append(SignedIndex(leg, PLUS, n))
        tensors.append(LabeledTensor(indices, data.p.entries, data.backend))
    return tensors, pairs


def _contract_network(tensors: list[LabeledTensor],
                      pairs: list[tuple[str, str]]) -> LabeledTensor:
    """Contract all pairs, smallest intermediate rank first.

    Any order gives the same result; the greedy choice only bounds the size
    of intermediate tensors.  Pairs living on the same one or two tensors
    are contracted together in one fused step.
    """
    tensors = list(tensors)
    pending = list(pairs)

    def owner(label: str) -> int:
        for k, t in enumerate(tensors):
            if label in t.labels:
                return k
        raise LabelError(f"no tensor owns index {label}")

    while pending:
        groups: dict[tuple[int, int], list[tuple[str, str]]] = {}
        for a, b in pending:
            ta, tb = owner(a), owner(b)
            groups.setdefault((min(ta, tb), max(ta, tb)), []).append((a, b))
        best = None
        for (ta, tb), grouped in groups.items():
            if ta == tb:
                rank = tensors[ta].rank - 2 * len(grouped)
            else:
                rank = tensors[ta].rank + tensors[tb].rank - 2 * len(grouped)
            if best is None or rank < best[0]:
                best = (rank, ta, tb, grouped)
        _, ta, tb, grouped = best
        if ta == tb:
            tensors[ta] = contract_within(tensors[ta], grouped)
        else:
            tensors[ta] = contract_between(tensors[ta], tensors[tb], grouped)
            del tensors[tb]
        done = set(grouped)
        pending = [pair for pair in pending if pair not in done]
    result = tensors[0]
    for extra in tensors[1:]:
        result = result.tensor_product(extra)
    return result


def _finish_component(tensor: LabeledTensor,
                      boundary: Sequence[BoundaryCircle]) -> LabeledTensor:
    """Order external indices by the boundary sequence and stamp each with
    its circle's orientation sign (entries unchanged)."""
    order = [tensor.position(c.label) for c in boundary]
    tensor = tensor.permute_indices(order)
    flips = [c.label for c in boundary if c.orientation is MINUS]
    if flips:
        tensor = tensor.flip_signs(flips)
    return tensor


def invariant_of_decomposition(data: TqftData,
                               decomposition: PantsDecomposition,
                               boundary: Sequence[BoundaryCircle]) -> LabeledTensor:
    """Tensor of a connected surface computed from a specific decomposition."""
    decomposition.require_valid()
    if {c.label for c in boundary} != set(decomposition.external):
        raise LabelError("decomposition external labels do not match the boundary")
    tensors, pairs = _pants_network(data, decomposition)
    result = _contract_network(tensors, pairs)
    return _finish_component(result, boundary)


def _component_invariant(data: TqftData, component: ConnectedSurface,
                         strategy: str) -> LabeledTensor:
    g, n = component.genus, len(component.boundary)
    if (g, n) in EXCEPTIONAL:
        table = base_invariants(data)
        if (g, n) == (0, 0):
            return table["sphere"]
        if (g, n) == (1, 0):
            return table["torus"]
        if (g, n) == (0, 1):
            base = LabeledTensor(
                (SignedIndex(component.boundary[0].label, PLUS, data.dimension),),
                data.d.entries, data.backend)
            return _finish_component(base, component.boundary)
        labels = [c.label for c in component.boundary]
        base = annulus_tensor(data).flip_signs(["i"]).relabel(
            {"i": labels[0], "j": labels[1]})
        return _finish_component(base, component.boundary)
    decomposition = pants_decomposition(
        g, n, strategy, labels=[c.label for c in component.boundary])
    return invariant_of_decomposition(data, decomposition, component.boundary)


def invariant(data: TqftData, surface: Surface, *, strategy: str = "chain",
              require_relations: bool = True,
              tolerance: float = DEFAULT_TOLERANCE) -> LabeledTensor:
    """The tensor assigned to a surface.

    One index per boundary circle, in boundary order, carrying the circle's
    orientation sign; components multiply.  The entries do not depend on the
    decomposition, the boundary orientations or the surface orientation.

    Refuses data failing the relations (the invariant is only well defined
    then); pass require_relations=False to compute anyway, e.g. to exhibit a
    decomposition mismatch for bad data.
    """
    surface.require_valid()
    if require_relations:
        report = check_relations(data, tolerance)
        if not report.passed:
            failed = [r.name for r in report.results if not r.passed]
            raise RelationError(
                f"data fails relations: {', '.join(failed)}; "
                "pass require_relations=False to override")
    result = LabeledTensor.scalar(scalar_one(data.backend), data.backend)
    for component in surface.components:
        result = result.tensor_product(
            _component_invariant(data, component, strategy))
    return result


def closed_invariant(data: TqftData, genus: int, *,
                     require_relations: bool = True):
    """Scalar invariant of the closed genus-g surface."""
    if genus < 0:
        raise ValueError("genus must be non-negative")
    surface = Surface.connected(genus)
    return invariant(data, surface, require_relations=require_relations).entries[0]


def apply_gluing(data: TqftData, tensor: LabeledTensor,
                 spec: GlueSpec | Iterable[tuple[str, str]]) -> LabeledTensor:
    """Contract the tensor along each glue pair (the algebraic image of a
    gluing: one + and one - index per pair disappear).

    Equals the invariant of the glued surface whenever `tensor` is the
    invariant of the unglued one. The pair processing order is immaterial.
    """
    spec = spec if isinstance(spec, GlueSpec) else GlueSpec.of(spec)
    if tensor.rank and tensor.dimension != data.dimension:
        raise DimensionError(
            f"tensor dimension {tensor.dimension} does not match data "
            f"dimension {data.dimension}")
    for a, b in spec.pairs:
        tensor = tensor.contract(a, b)
    return tensor


def apply_isomorphism(tensor: LabeledTensor, perm: Sequence[int],
                      flips: Iterable[str] = ()) -> LabeledTensor:
    """Reorder indices, then reverse the signs of the flipped labels.

    This is the full action of surface isomorphisms on tensors: boundary
    reorderings permute indices, orientation changes flip signs, and entries
    never change.
    """
    result = tensor.permute_indices(perm)
    flips = list(flips)
    if flips:
        result = result.flip_signs(flips)
    return result


# -- verification suites -----------------------------------------------------

@dataclass(frozen=True)
class Check:
    label: str
    passed: bool
    detail: str = ""

    def to_text(self) -> str:
        line = f"{'PASS' if self.passed else 'FAIL'} {self.label}"
        if self.detail and not self.passed:
            line += f": {self.detail}"
        return line


@dataclass
class VerificationReport:
    name: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def add(self, label: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(label, passed, detail))

    def to_text(self) -> str:
        return "\n".join(c.to_text() for c in self.checks)


def _rng(seed, *parts) -> random.Random:
    return random.Random(":".join(str(p) for p in [seed, *parts]))


def _tensor_mismatch(a: LabeledTensor, b: LabeledTensor) -> str:
    return f"got\n{a}\nversus\n{b}"


def verify_decomposition_invariance(data: TqftData, g_max: int, n_max: int,
                                    trials: int, seed=0, *,
                                    require_relations: bool = True,
                                    tolerance: float = DEFAULT_TOLERANCE
                                    ) -> VerificationReport:
    """Check that every decomposition of every (g, n) surface in range gives
    the same tensor: chain vs alternate plus `trials` random regroupings.

    Only shapes with 2g-2+n >= 2 are interesting (below that the
    decomposition is unique).  Handle-curve recuttings all reduce to the
    symmetry of the rank-3 generator in this model, so regrouping moves are
    the only rewrites exercised.
    """
    report = VerificationReport("moves")
    if require_relations and not check_relations(data, tolerance).passed:
        raise RelationError("data fails relations; "
                            "pass require_relations=False to override")
    for g in range(g_max + 1):
        for n in range(n_max + 1):
            if 2 * g - 2 + n < 2:
                continue
            boundary = tuple(BoundaryCircle(f"b{k + 1}", PLUS) for k in range(n))
            chain = pants_decomposition(g, n, "chain")
            reference = invariant_of_decomposition(data, chain, boundary)
            candidates = [("alternate", pants_decomposition(g, n, "alternate"))]
            for t in range(trials):
                rng = _rng(seed, "moves", g, n, t)
                candidates.append(
                    (f"rewrite {t}", random_rewrite(chain, rng, moves=1 + t % 3)))
            for tag, decomposition in candidates:
                value = invariant_of_decomposition(data, decomposition, boundary)
                ok = reference.canonical().equals(value.canonical(), tolerance)
                detail = "" if ok else (
                    f"{chain} vs {decomposition}; " + _tensor_mismatch(reference, value))
                report.add(f"(g={g}, n={n}) chain vs {tag}", ok, detail)
    return report


def random_surface(rng: random.Random, prefix: str = "s", *,
                   max_components: int = 2, max_genus: int = 2,
                   max_boundary: int = 4,
                   max_total_boundary: int = 8) -> Surface:
    """A seeded random surface with fresh labels `prefix`0, `prefix`1, ...

    The total boundary count is capped so that the surface's tensor stays a
    tractable dense array.
    """
    counter = itertools.count()
    components = []
    budget = max_total_boundary
    for _ in range(rng.randint(1, max_components)):
        genus = rng.randint(0, max_genus)
        count = rng.randint(0, min(max_boundary, budget))
        budget -= count
        boundary = tuple(
            BoundaryCircle(f"{prefix}{next(counter)}",
                           PLUS if rng.random() < 0.5 else MINUS)
            for _ in range(count))
        orientation = PLUS if rng.random() < 0.5 else MINUS
        components.append(ConnectedSurface(genus, orientation, boundary))
    return Surface(tuple(components))


def random_glue_spec(rng: random.Random, surface: Surface,
                     max_pairs: int | None = None) -> GlueSpec:
    """A seeded random legal batch of glue pairs for `surface`."""
    plus = [c.label for c in surface.boundary_circles() if c.orientation is PLUS]
    minus = [c.label for c in surface.boundary_circles() if c.orientation is MINUS]
    rng.shuffle(plus)
    rng.shuffle(minus)
    limit = min(len(plus), len(minus))
    if max_pairs is not None:
        limit = min(limit, max_pairs)
    count = rng.randint(0, limit)
    pairs = []
    for a, b in zip(minus[:count], plus[:count]):
        pairs.append((a, b) if rng.random() < 0.5 else (b, a))
    return GlueSpec(tuple(pairs))


def verify_functoriality(data: TqftData, trials: int, seed=0, *,
                         require_relations: bool = True,
                         tolerance: float = DEFAULT_TOLERANCE) -> VerificationReport:
    """Random two-stage gluings: contracting step by step, contracting the
    composed spec in one shot, and the invariant of the glued surface must
    all agree."""
    report = VerificationReport("functor")
    if require_relations and not check_relations(data, tolerance).passed:
        raise RelationError("data fails relations; "
                            "pass require_relations=False to override")
    for t in range(trials):
        rng = _rng(seed, "functor", t)
        surface = random_surface(rng, prefix=f"t{t}_")
        first = random_glue_spec(rng, surface)
        once = surface.glue(first)
        second = random_glue_spec(rng, once)
        twice = once.glue(second)
        start = invariant(data, surface, require_relations=False)
        stepwise = apply_gluing(data, apply_gluing(data, start, first), second)
        composed = apply_gluing(data, start, compose_glue(first, second))
        direct = invariant(data, twice, require_relations=False)
        ok = (stepwise.equals(composed, tolerance)
              and stepwise.canonical().equals(direct.canonical(), tolerance))
        detail = "" if ok else (
            f"surface:\n{format_surface(surface)}\n"
            f"first {str(first) or '(empty)'} then {str(second) or '(empty)'}; "
            + _tensor_mismatch(stepwise, direct))
        report.add(f"trial {t}: glue twice vs composed vs reglued surface", ok, detail)
    return report


def verify_monoidal(data: TqftData, trials: int, seed=0, *,
                    require_relations: bool = True,
                    tolerance: float = DEFAULT_TOLERANCE) -> VerificationReport:
    """Random pairs of surfaces: the invariant of the disjoint union must be
    the tensor product of the invariants."""
    report = VerificationReport("monoidal")
    if require_relations and not check_relations(data, tolerance).passed:
        raise RelationError("data fails relations; "
                            "pass require_relations=False to override")
    for t in range(trials):
        rng = _rng(seed, "monoidal", t)
        left = random_surface(rng, prefix=f"l{t}_", max_total_boundary=4)
        right = random_surface(rng, prefix=f"r{t}_", max_total_boundary=4)
        if rng.random() < 0.1:
            right = Surface.empty()
        union = left.disjoint_union(right)
        combined = invariant(data, union, require_relations=False)
        product = invariant(data, left, require_relations=False).tensor_product(
            invariant(data, right, require_relations=False))
        ok = combined.equals(product, tolerance)
        detail = "" if ok else (
            f"surfaces:\n{format_surface(union)}\n" + _tensor_mismatch(combined, product))
        report.add(f"trial {t}: union vs tensor product", ok, detail)
    return report
