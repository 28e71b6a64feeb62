"""Classification data for surface invariants: a rank-1 tensor ``d`` (the
disk) and a fully symmetric rank-3 tensor ``p`` (the pair-of-pants).

A (d, p) pair defines a consistent surface invariant exactly when four
relations hold (all sums over repeated indices run 0..n-1):

* exchange:             p[i,j,k] p[k,l,m] == p[i,l,k] p[k,j,m]
* symmetry:             p invariant under all six slot permutations
* disk_absorption:      d[k] p[k,i,j] d[j] == d[i]
* cylinder_absorption:  d[k] p[k,i,j] p[j,l,m] == p[i,l,m]

``check_relations`` evaluates all four over every free-index tuple; the
annulus tensor c[i,j] = d[k] p[k,i,j] is then an idempotent matrix fixing d.

Data file format (1-based indices, omitted entries are zero; the loader
rejects p entries that are not symmetric as supplied)::

    tqft dim=2 backend=rational
    d 1 = 1
    p 1 1 1 = 1
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionError, ParseError, RelationError
from .orientation import MINUS, PLUS
from .tensor import (
    DEFAULT_TOLERANCE,
    RATIONAL,
    LabeledTensor,
    Scalar,
    SignedIndex,
    coerce_scalar,
    detect_backend,
    format_scalar,
    parse_scalar,
    scalar_zero,
    scalars_equal,
)

RELATION_NAMES = ("exchange", "symmetry", "disk_absorption", "cylinder_absorption")


class TqftData:
    """Dimension n plus the tensors d (rank 1) and p (rank 3, symmetric)."""

    __slots__ = ("dimension", "d", "p", "backend")

    def __init__(self, d_entries: Sequence, p_entries: Sequence,
                 backend: str | None = None):
        d_entries = tuple(d_entries)
        p_entries = tuple(p_entries)
        n = len(d_entries)
        if n < 1:
            raise DimensionError("dimension must be positive")
        if len(p_entries) != n ** 3:
            raise DimensionError(
                f"p needs {n ** 3} entries for dimension {n}, got {len(p_entries)}")
        if backend is None:
            backend = detect_backend(d_entries + p_entries)
        d = LabeledTensor(
            (SignedIndex("i", PLUS, n),), d_entries, backend)
        p = LabeledTensor(
            (SignedIndex("i", PLUS, n), SignedIndex("j", PLUS, n),
             SignedIndex("k", PLUS, n)),
            p_entries, backend)
        _require_symmetric(p)
        self.dimension = n
        self.d = d
        self.p = p
        self.backend = backend

    def d_entry(self, i: int) -> Scalar:
        return self.d.entries[i]

    def p_entry(self, i: int, j: int, k: int) -> Scalar:
        n = self.dimension
        return self.p.entries[(i * n + j) * n + k]

    def __repr__(self) -> str:
        return f"TqftData(dim={self.dimension}, backend={self.backend})"


def _require_symmetric(p: LabeledTensor) -> None:
    n = p.dimension
    for i, j, k in itertools.product(range(n), repeat=3):
        base = p.value_at((i, j, k))
        if not (scalars_equal(p.value_at((j, i, k)), base, p.backend)
                and scalars_equal(p.value_at((i, k, j)), base, p.backend)):
            raise RelationError(
                f"p is not symmetric at slot indices ({i + 1},{j + 1},{k + 1})")


@dataclass(frozen=True)
class RelationResult:
    name: str
    passed: bool
    max_violation: Scalar


@dataclass(frozen=True)
class RelationReport:
    results: tuple[RelationResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, name: str) -> RelationResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def tokens(self) -> str:
        return " ".join("PASS" if r.passed else "FAIL" for r in self.results)


def check_relations(data: TqftData,
                    tolerance: float = DEFAULT_TOLERANCE) -> RelationReport:
    """Evaluate all four relations over every free-index tuple.

    Rational data must satisfy them exactly; complex data up to an absolute
    tolerance per violation |LHS - RHS|.
    """
    n = data.dimension
    pe = data.p.entries
    de = data.d.entries
    zero = scalar_zero(data.backend)

    def gap(lhs, rhs):
        return abs(lhs - rhs)

    no_gap = Fraction(0) if data.backend == RATIONAL else 0.0
    worst = {name: no_gap for name in RELATION_NAMES}

    # Nonzero entries of p grouped by the first two slots; keeps the n^4
    # relation sweeps cheap for sparse (e.g. diagonal) data.
    rows: dict[tuple[int, int], list[tuple[int, Scalar]]] = {}
    for i in range(n):
        for j in range(n):
            base = (i * n + j) * n
            row = [(k, pe[base + k]) for k in range(n) if pe[base + k]]
            if row:
                rows[(i, j)] = row
    empty: list[tuple[int, Scalar]] = []

    for i, j, l, m in itertools.product(range(n), repeat=4):
        lhs = zero
        for k, v in rows.get((i, j), empty):
            lhs = lhs + v * pe[(k * n + l) * n + m]
        rhs = zero
        for k, v in rows.get((i, l), empty):
            rhs = rhs + v * pe[(k * n + j) * n + m]
        worst["exchange"] = max(worst["exchange"], gap(lhs, rhs))

    for i, j, k in itertools.product(range(n), repeat=3):
        base = pe[(i * n + j) * n + k]
        worst["symmetry"] = max(worst["symmetry"],
                                gap(pe[(j * n + i) * n + k], base),
                                gap(pe[(i * n + k) * n + j], base))

    # c[i][j] = sum_k d[k] p[k,i,j]; both absorption relations factor through it.
    c = [[zero] * n for _ in range(n)]
    for k in range(n):
        if de[k]:
            for i in range(n):
                base = (k * n + i) * n
                for j in range(n):
                    if pe[base + j]:
                        c[i][j] = c[i][j] + de[k] * pe[base + j]

    for i in range(n):
        acc = zero
        for j in range(n):
            if c[i][j] and de[j]:
                acc = acc + c[i][j] * de[j]
        worst["disk_absorption"] = max(worst["disk_absorption"], gap(acc, de[i]))

    for i, l, m in itertools.product(range(n), repeat=3):
        acc = zero
        for j in range(n):
            if c[i][j]:
                acc = acc + c[i][j] * pe[(j * n + l) * n + m]
        worst["cylinder_absorption"] = max(
            worst["cylinder_absorption"], gap(acc, pe[(i * n + l) * n + m]))

    limit = 0 if data.backend == RATIONAL else tolerance
    results = tuple(
        RelationResult(name, worst[name] <= limit, worst[name])
        for name in RELATION_NAMES)
    return RelationReport(results)


def annulus_tensor(data: TqftData) -> LabeledTensor:
    """The cylinder tensor c[i,j] = sum_k d[k] p[k,i,j], indices (-i, +j).

    When the relations hold, c is idempotent as a matrix and fixes d.
    """
    n = data.dimension
    entries = []
    for i, j in itertools.product(range(n), repeat=2):
        acc = scalar_zero(data.backend)
        for k in range(n):
            t = data.d_entry(k)
            if t:
                acc = acc + t * data.p_entry(k, i, j)
        entries.append(acc)
    return LabeledTensor(
        (SignedIndex("i", MINUS, n), SignedIndex("j", PLUS, n)),
        entries, data.backend)


def base_invariants(data: TqftData) -> dict[str, LabeledTensor]:
    """Tensors of the surfaces with no pants decomposition.

    empty -> 1, sphere -> sum_i d[i]^2, disk -> d[i],
    annulus -> sum_k d[k] p[k,i,j], torus -> sum_{k,i} d[k] p[k,i,i].
    """
    n = data.dimension
    zero = scalar_zero(data.backend)
    sphere = zero
    for i in range(n):
        sphere = sphere + data.d_entry(i) * data.d_entry(i)
    torus = zero
    for k, i in itertools.product(range(n), repeat=2):
        t = data.d_entry(k)
        if t:
            torus = torus + t * data.p_entry(k, i, i)
    return {
        "empty": LabeledTensor.scalar(1, data.backend),
        "sphere": LabeledTensor.scalar(sphere, data.backend),
        "disk": LabeledTensor(
            (SignedIndex("i", PLUS, n),), data.d.entries, data.backend),
        "annulus": annulus_tensor(data),
        "torus": LabeledTensor.scalar(torus, data.backend),
    }


def hermitian_check(data: TqftData,
                    tolerance: float = DEFAULT_TOLERANCE) -> bool:
    """True iff every entry of d and p is real (always true for rationals).

    Real tensors are exactly the ones whose invariant conjugates under
    orientation reversal of the surface.
    """
    if data.backend == RATIONAL:
        return True
    return all(abs(v.imag) <= tolerance
               for v in data.d.entries + data.p.entries)


def diagonal_family(t: Sequence) -> TqftData:
    """Direct sum of one-dimensional solutions: d[i] = t[i], p[i,i,i] = 1/t[i].

    Every member passes check_relations.
    """
    values = tuple(t)
    if not values:
        raise ValueError("need at least one diagonal value")
    backend = detect_backend(values)
    values = tuple(coerce_scalar(v, backend) for v in values)
    if any(v == 0 for v in values):
        raise ValueError("diagonal values must be nonzero")
    n = len(values)
    p_entries = [scalar_zero(backend)] * n ** 3
    for i, v in enumerate(values):
        p_entries[(i * n + i) * n + i] = 1 / v
    return TqftData(values, p_entries, backend)


def grid_search_dim1(height: int) -> list[TqftData]:
    """Exhaustive dimension-1 search over rational pairs (d, p) with
    |numerator| <= height and denominator <= height (in lowest terms).

    Returns exactly the pairs passing check_relations: the zero solution
    (0, 0) plus every (t, 1/t) representable on the grid.
    """
    if not 1 <= height <= 6:
        raise ValueError(f"height must be in 1..6, got {height}")
    values = sorted({Fraction(num, den)
                     for num in range(-height, height + 1)
                     for den in range(1, height + 1)})
    found = []
    for d1 in values:
        for p111 in values:
            data = TqftData((d1,), (p111,), RATIONAL)
            if check_relations(data).passed:
                found.append(data)
    found.sort(key=lambda data: (data.d_entry(0), data.p_entry(0, 0, 0)))
    return found


# -- data file format ---------------------------------------------------------

_TQFT_HEADER_RE = re.compile(
    r"^tqft\s+dim=(?P<dim>\d+)\s+backend=(?P<backend>rational|complex)\s*$")
_D_LINE_RE = re.compile(r"^d\s+(?P<i>\d+)\s*=\s*(?P<value>.+)$")
_P_LINE_RE = re.compile(r"^p\s+(?P<i>\d+)\s+(?P<j>\d+)\s+(?P<k>\d+)\s*=\s*(?P<value>.+)$")


def parse_tqft(text: str) -> TqftData:
    """Parse the data file format and build validated TqftData."""
    lines = [(n, raw.strip()) for n, raw in enumerate(text.splitlines(), start=1)]
    lines = [(n, s) for n, s in lines if s]
    if not lines:
        raise ParseError("empty data file")
    lineno, header = lines[0]
    m = _TQFT_HEADER_RE.match(header)
    if not m:
        raise ParseError("expected 'tqft dim=<n> backend=<rational|complex>'",
                         line=lineno, column=1)
    n = int(m.group("dim"))
    if n < 1:
        raise ParseError("dimension must be positive", line=lineno)
    backend = m.group("backend")
    d_entries = [scalar_zero(backend)] * n
    p_entries = [scalar_zero(backend)] * n ** 3
    seen: set[tuple] = set()
    for lineno, line in lines[1:]:
        dm = _D_LINE_RE.match(line)
        pm = _P_LINE_RE.match(line)
        if dm:
            i = int(dm.group("i"))
            if not 1 <= i <= n:
                raise ParseError(f"d index {i} out of range 1..{n}", line=lineno)
            key = ("d", i)
            if key in seen:
                raise ParseError(f"duplicate entry d {i}", line=lineno)
            seen.add(key)
            d_entries[i - 1] = parse_scalar(dm.group("value"), backend)
        elif pm:
            ijk = tuple(int(pm.group(g)) for g in ("i", "j", "k"))
            if not all(1 <= v <= n for v in ijk):
                raise ParseError(f"p index out of range 1..{n}", line=lineno)
            key = ("p",) + ijk
            if key in seen:
                raise ParseError(f"duplicate entry p {ijk}", line=lineno)
            seen.add(key)
            i, j, k = (v - 1 for v in ijk)
            p_entries[(i * n + j) * n + k] = parse_scalar(pm.group("value"), backend)
        else:
            raise ParseError("expected 'd <i> = <scalar>' or 'p <i> <j> <k> = <scalar>'",
                             line=lineno, column=1)
    try:
        return TqftData(d_entries, p_entries, backend)
    except RelationError as exc:
        raise ParseError(str(exc)) from exc


def format_tqft(data: TqftData) -> str:
    """Inverse of :func:`parse_tqft`; zero entries are omitted."""
    n = data.dimension
    lines = [f"tqft dim={n} backend={data.backend}"]
    for i in range(n):
        v = data.d_entry(i)
        if v != 0:
            lines.append(f"d {i + 1} = {format_scalar(v, data.backend)}")
    for i, j, k in itertools.product(range(n), repeat=3):
        v = data.p_entry(i, j, k)
        if v != 0:
            lines.append(f"p {i + 1} {j + 1} {k + 1} = {format_scalar(v, data.backend)}")
    return "\n".join(lines)
