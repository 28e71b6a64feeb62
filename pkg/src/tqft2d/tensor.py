"""Dense multi-index tensors with labelled, sign-carrying indices.

Indices pair a label with an orientation sign; contraction is the Kronecker
pairing between one + and one - index (sum over the diagonal).  Entries live
in one of two scalar backends:

* ``rational`` - exact ``fractions.Fraction`` arithmetic (the default for
  every correctness check; equality is exact),
* ``complex`` - double-precision complex floats, compared with an absolute
  tolerance (default 1e-9).

Mixing backends in one expression raises :class:`BackendError`.  All indices
of one tensor share a single dimension; storage is a flat row-major tuple of
``dimension ** rank`` entries.

Literal format for fixtures and CLI output (1-based entry indices, omitted
entries are zero)::

    tensor dim=2 indices=[+i,-j]
    1 1 = 1
    2 2 = 1/2
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import BackendError, DimensionError, LabelError, OrientationError, ParseError
from .orientation import Orientation

RATIONAL = "rational"
COMPLEX = "complex"
DEFAULT_TOLERANCE = 1e-9

Scalar = Fraction | complex


# -- scalar backend helpers --------------------------------------------------

def detect_backend(values: Iterable) -> str:
    for v in values:
        if isinstance(v, (complex, float)):
            return COMPLEX
    return RATIONAL


def coerce_scalar(value, backend: str) -> Scalar:
    if backend == RATIONAL:
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        raise BackendError(f"rational backend cannot hold {value!r}")
    if backend == COMPLEX:
        if isinstance(value, (int, float, complex, Fraction)):
            return complex(value)
        raise BackendError(f"complex backend cannot hold {value!r}")
    raise BackendError(f"unknown backend {backend!r}")


def scalar_zero(backend: str) -> Scalar:
    return Fraction(0) if backend == RATIONAL else complex(0)


def scalar_one(backend: str) -> Scalar:
    return Fraction(1) if backend == RATIONAL else complex(1)


def scalars_equal(a: Scalar, b: Scalar, backend: str,
                  tolerance: float = DEFAULT_TOLERANCE) -> bool:
    if backend == RATIONAL:
        return a == b
    return abs(a - b) <= tolerance


def format_scalar(value: Scalar, backend: str) -> str:
    if backend == RATIONAL:
        return str(value)
    return f"{value.real:.12g}{value.imag:+.12g}i"


_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/[1-9]\d*)?$")


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not _RATIONAL_RE.match(text):
        raise ParseError(f"bad rational scalar {text!r}; expected p or p/q")
    return Fraction(text)


def parse_complex(text: str) -> complex:
    """Parse ``a+bi`` / ``a`` / ``bi`` with ordinary float syntax for a, b."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ParseError("empty complex scalar")
    try:
        if not s.endswith("i"):
            return complex(float(s), 0.0)
        body = s[:-1]
        # split at the last +/- that is neither leading nor an exponent sign
        split = -1
        for k in range(len(body) - 1, 0, -1):
            if body[k] in "+-" and body[k - 1] not in "eE":
                split = k
                break
        if split == -1:
            real_part, imag_part = "0", body
        else:
            real_part, imag_part = body[:split], body[split:]
        if imag_part in ("", "+"):
            imag = 1.0
        elif imag_part == "-":
            imag = -1.0
        else:
            imag = float(imag_part)
        return complex(float(real_part), imag)
    except ValueError:
        raise ParseError(f"bad complex scalar {text!r}; expected a+bi") from None


def parse_scalar(text: str, backend: str) -> Scalar:
    return parse_rational(text) if backend == RATIONAL else parse_complex(text)


# -- tensors -----------------------------------------------------------------

@dataclass(frozen=True)
class SignedIndex:
    label: str
    sign: Orientation
    dimension: int

    def reversed(self) -> "SignedIndex":
        return SignedIndex(self.label, self.sign.reverse(), self.dimension)

    def __str__(self) -> str:
        return f"{self.sign}{self.label}"


class LabeledTensor:
    """Immutable dense tensor; all operations return new values."""

    __slots__ = ("indices", "entries", "backend")

    def __init__(self, indices: Sequence[SignedIndex], entries: Sequence,
                 backend: str | None = None):
        indices = tuple(indices)
        labels = [ix.label for ix in indices]
        if len(set(labels)) != len(labels):
            raise LabelError(f"repeated labels within one tensor: {labels}")
        dims = {ix.dimension for ix in indices}
        if len(dims) > 1:
            raise DimensionError(f"indices of mixed dimension: {sorted(dims)}")
        if indices and indices[0].dimension < 1:
            raise DimensionError("index dimension must be positive")
        if backend is None:
            backend = detect_backend(entries)
        expected = self._size(indices)
        entries = tuple(coerce_scalar(v, backend) for v in entries)
        if len(entries) != expected:
            raise DimensionError(
                f"need {expected} entries for indices {labels}, got {len(entries)}")
        object.__setattr__(self, "indices", indices)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "backend", backend)

    @staticmethod
    def _size(indices: Sequence[SignedIndex]) -> int:
        size = 1
        for ix in indices:
            size *= ix.dimension
        return size

    def __setattr__(self, name, value):
        raise AttributeError("LabeledTensor is immutable")

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def scalar(value, backend: str | None = None) -> "LabeledTensor":
        return LabeledTensor((), (value,), backend)

    # -- basic queries ---------------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.indices)

    @property
    def dimension(self) -> int | None:
        return self.indices[0].dimension if self.indices else None

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(ix.label for ix in self.indices)

    def position(self, label: str) -> int:
        for k, ix in enumerate(self.indices):
            if ix.label == label:
                return k
        raise LabelError(f"no index labelled {label}")

    def _strides(self) -> tuple[int, ...]:
        dim = self.dimension or 1
        return tuple(dim ** (self.rank - 1 - k) for k in range(self.rank))

    def value_at(self, assignment: Sequence[int]) -> Scalar:
        """Entry at a 0-based index assignment, in index order."""
        if len(assignment) != self.rank:
            raise DimensionError(f"assignment has length {len(assignment)}, rank is {self.rank}")
        flat = 0
        for stride, v in zip(self._strides(), assignment):
            flat += stride * v
        return self.entries[flat]

    def assignments(self):
        dim = self.dimension or 1
        return itertools.product(range(dim), repeat=self.rank)

    # -- operations --------------------------------------------------------

    def tensor_product(self, other: "LabeledTensor") -> "LabeledTensor":
        """Outer product; index sequences concatenate."""
        if self.backend != other.backend:
            raise BackendError(
                f"cannot mix {self.backend} and {other.backend} tensors")
        overlap = set(self.labels) & set(other.labels)
        if overlap:
            raise LabelError(f"label collision in tensor product: {sorted(overlap)}")
        if self.indices and other.indices and self.dimension != other.dimension:
            raise DimensionError(
                f"dimension mismatch: {self.dimension} vs {other.dimension}")
        entries = [x * y for x in self.entries for y in other.entries]
        return LabeledTensor(self.indices + other.indices, entries, self.backend)

    __matmul__ = tensor_product

    def contract(self, a: str, b: str) -> "LabeledTensor":
        """Kronecker-pair the indices labelled `a` and `b` (sum the diagonal).

        The two indices must carry opposite signs; both disappear and the
        remaining index order is preserved.  Which member of the pair comes
        first does not matter.
        """
        pa, pb = self.position(a), self.position(b)
        ia, ib = self.indices[pa], self.indices[pb]
        if ia.sign is ib.sign:
            raise OrientationError(
                f"cannot contract {ia} with {ib}: need opposite signs")
        keep = [k for k in range(self.rank) if k not in (pa, pb)]
        strides = self._strides()
        dim = self.dimension or 1
        zero = scalar_zero(self.backend)
        entries = []
        for assign in itertools.product(range(dim), repeat=len(keep)):
            base = sum(strides[k] * v for k, v in zip(keep, assign))
            diag = strides[pa] + strides[pb]
            acc = zero
            for t in range(dim):
                acc = acc + self.entries[base + diag * t]
            entries.append(acc)
        return LabeledTensor(tuple(self.indices[k] for k in keep), entries, self.backend)

    def permute_indices(self, perm: Sequence[int]) -> "LabeledTensor":
        """Reorder indices: output index k is input index perm[k] (axes
        convention, as in numpy.transpose)."""
        perm = tuple(perm)
        if sorted(perm) != list(range(self.rank)):
            raise ValueError(f"{perm} is not a permutation of 0..{self.rank - 1}")
        if perm == tuple(range(self.rank)):
            return self
        dim = self.dimension or 1
        strides = self._strides()
        entries = []
        for assign in itertools.product(range(dim), repeat=self.rank):
            flat = sum(strides[perm[k]] * v for k, v in zip(range(self.rank), assign))
            entries.append(self.entries[flat])
        return LabeledTensor(tuple(self.indices[p] for p in perm), entries, self.backend)

    def flip_signs(self, labels: Iterable[str] | None = None) -> "LabeledTensor":
        """Negate index signs (all of them, or just `labels`); entries unchanged."""
        if labels is None:
            chosen = set(self.labels)
        else:
            chosen = set(labels)
            unknown = chosen - set(self.labels)
            if unknown:
                raise LabelError(f"no index labelled {sorted(unknown)}")
        indices = tuple(ix.reversed() if ix.label in chosen else ix
                        for ix in self.indices)
        return LabeledTensor(indices, self.entries, self.backend)

    def conjugate_entries(self) -> "LabeledTensor":
        """Complex-conjugate every entry (identity on the rational backend)."""
        if self.backend == RATIONAL:
            return self
        entries = tuple(v.conjugate() for v in self.entries)
        return LabeledTensor(self.indices, entries, self.backend)

    def relabel(self, mapping: Mapping[str, str]) -> "LabeledTensor":
        indices = tuple(
            SignedIndex(mapping.get(ix.label, ix.label), ix.sign, ix.dimension)
            for ix in self.indices)
        return LabeledTensor(indices, self.entries, self.backend)

    def canonical(self) -> "LabeledTensor":
        """Indices sorted by label; the normal form used to compare tensors
        whose index orders differ."""
        if all(self.indices[k].label <= self.indices[k + 1].label
               for k in range(self.rank - 1)):
            return self
        order = sorted(range(self.rank), key=lambda k: self.indices[k].label)
        return self.permute_indices(order)

    def equals(self, other: "LabeledTensor",
               tolerance: float = DEFAULT_TOLERANCE) -> bool:
        """True iff the index signatures match exactly and entries agree
        (exactly for rationals, within `tolerance` for complex)."""
        if not isinstance(other, LabeledTensor):
            return False
        if self.backend != other.backend or self.indices != other.indices:
            return False
        return all(scalars_equal(x, y, self.backend, tolerance)
                   for x, y in zip(self.entries, other.entries))

    def __eq__(self, other):
        return self.equals(other)

    __hash__ = None

    def __repr__(self) -> str:
        sig = ",".join(str(ix) for ix in self.indices)
        return f"LabeledTensor([{sig}] dim={self.dimension} {self.backend})"

    def __str__(self) -> str:
        return format_tensor(self)


# -- fused multi-pair contraction ---------------------------------------------
#
# Equivalent to chaining tensor_product/contract, but never materialises the
# full outer product and skips zero factors; the network engine leans on this
# to keep intermediate tensors small and exact-rational arithmetic cheap.

def _offsets(indices: Sequence[SignedIndex], strides: Sequence[int],
             positions: Sequence[int]) -> list[int]:
    """Flat offsets of every assignment of the given index positions."""
    dim = indices[0].dimension if indices else 1
    offsets = [0]
    for pos in positions:
        stride = strides[pos]
        offsets = [base + stride * v for base in offsets for v in range(dim)]
    return offsets


def _check_pairing(ia: SignedIndex, ib: SignedIndex) -> None:
    if ia.sign is ib.sign:
        raise OrientationError(
            f"cannot contract {ia} with {ib}: need opposite signs")


def contract_within(tensor: LabeledTensor,
                    pairs: Sequence[tuple[str, str]]) -> LabeledTensor:
    """Contract several +/- label pairs of one tensor at once.

    Same result as contracting the pairs one by one.
    """
    if not pairs:
        return tensor
    pa = [tensor.position(a) for a, _ in pairs]
    pb = [tensor.position(b) for _, b in pairs]
    used = pa + pb
    if len(set(used)) != len(used):
        raise LabelError(f"labels repeated across contraction pairs: {pairs}")
    for ka, kb in zip(pa, pb):
        _check_pairing(tensor.indices[ka], tensor.indices[kb])
    keep = [k for k in range(tensor.rank) if k not in set(used)]
    strides = tensor._strides()
    kept_offsets = _offsets(tensor.indices, strides, keep)
    diag_strides = [strides[ka] + strides[kb] for ka, kb in zip(pa, pb)]
    diag_offsets = _offsets(tensor.indices, diag_strides,
                            list(range(len(pairs))))
    entries = tensor.entries
    zero = scalar_zero(tensor.backend)
    out = []
    for base in kept_offsets:
        acc = zero
        for off in diag_offsets:
            acc = acc + entries[base + off]
        out.append(acc)
    return LabeledTensor(tuple(tensor.indices[k] for k in keep), out,
                         tensor.backend)


def contract_between(left: LabeledTensor, right: LabeledTensor,
                     pairs: Sequence[tuple[str, str]]) -> LabeledTensor:
    """Contract label pairs (one label from `left`, one from `right`).

    Same result as `left.tensor_product(right)` followed by contracting each
    pair; kept indices of `left` come first, then kept indices of `right`.
    """
    if left.backend != right.backend:
        raise BackendError(f"cannot mix {left.backend} and {right.backend} tensors")
    overlap = set(left.labels) & set(right.labels)
    if overlap:
        raise LabelError(f"label collision between tensors: {sorted(overlap)}")
    if not pairs:
        return left.tensor_product(right)
    if left.dimension != right.dimension:
        raise DimensionError(
            f"dimension mismatch: {left.dimension} vs {right.dimension}")
    pa, pb = [], []
    for a, b in pairs:
        if a in right.labels:
            a, b = b, a
        pa.append(left.position(a))
        pb.append(right.position(b))
        _check_pairing(left.indices[pa[-1]], right.indices[pb[-1]])
    if len(set(pa)) != len(pa) or len(set(pb)) != len(pb):
        raise LabelError(f"labels repeated across contraction pairs: {pairs}")
    keep_left = [k for k in range(left.rank) if k not in set(pa)]
    keep_right = [k for k in range(right.rank) if k not in set(pb)]
    strides_left = left._strides()
    strides_right = right._strides()
    row_offsets = _offsets(left.indices, strides_left, keep_left)
    col_offsets = _offsets(right.indices, strides_right, keep_right)
    sum_left = _offsets(left.indices,
                        [strides_left[k] for k in pa], list(range(len(pa))))
    sum_right = _offsets(right.indices,
                         [strides_right[k] for k in pb], list(range(len(pb))))
    e1, e2 = left.entries, right.entries
    zero = scalar_zero(left.backend)
    cols = len(col_offsets)
    out = [zero] * (len(row_offsets) * cols)
    for o1, o2 in zip(sum_left, sum_right):
        for xi, ox in enumerate(row_offsets):
            a = e1[ox + o1]
            if a:
                base = xi * cols
                for yi, oy in enumerate(col_offsets):
                    b = e2[oy + o2]
                    if b:
                        out[base + yi] = out[base + yi] + a * b
    indices = tuple(left.indices[k] for k in keep_left) + tuple(
        right.indices[k] for k in keep_right)
    return LabeledTensor(indices, out, left.backend)


# -- literal format ----------------------------------------------------------

_TENSOR_HEADER_RE = re.compile(
    r"^tensor\s+dim=(?P<dim>\d+)\s+indices=\[(?P<indices>[^\]]*)\]\s*$")
_LABEL_RE = re.compile(r"[A-Za-z0-9_]+")


def parse_tensor(text: str, backend: str | None = None) -> LabeledTensor:
    """Parse the literal format. Backend is auto-detected from the scalar
    syntax unless given explicitly."""
    lines = [(n, raw.strip()) for n, raw in enumerate(text.splitlines(), start=1)]
    lines = [(n, s) for n, s in lines if s]
    if not lines:
        raise ParseError("empty tensor literal")
    lineno, header = lines[0]
    m = _TENSOR_HEADER_RE.match(header)
    if not m:
        raise ParseError("expected 'tensor dim=<n> indices=[...]'", line=lineno, column=1)
    dim = int(m.group("dim"))
    indices = []
    body = m.group("indices").strip()
    if body:
        for part in body.split(","):
            part = part.strip()
            if len(part) < 2 or part[0] not in "+-" or not _LABEL_RE.fullmatch(part[1:]):
                raise ParseError(f"bad index {part!r}", line=lineno)
            indices.append(SignedIndex(part[1:], Orientation(part[0]), dim))
    rank = len(indices)
    if backend is None:
        scalars = [s.rsplit("=", 1)[1] for _, s in lines[1:] if "=" in s]
        backend = COMPLEX if any(("i" in s or "." in s) for s in scalars) else RATIONAL

    size = dim ** rank if rank else 1
    entries = [scalar_zero(backend)] * size
    filled = set()
    for lineno, line in lines[1:]:
        if "=" not in line:
            raise ParseError("expected '<i> <j> ... = <scalar>'", line=lineno, column=1)
        left, right = line.split("=", 1)
        parts = left.split()
        if len(parts) != rank:
            raise ParseError(f"expected {rank} indices, got {len(parts)}",
                             line=lineno, column=1)
        try:
            assign = [int(p) - 1 for p in parts]
        except ValueError:
            raise ParseError(f"bad entry indices {left.strip()!r}",
                             line=lineno, column=1) from None
        if any(v < 0 or v >= dim for v in assign) and rank:
            raise ParseError(f"entry index out of range 1..{dim}", line=lineno, column=1)
        flat = 0
        for v in assign:
            flat = flat * dim + v
        if flat in filled:
            raise ParseError(f"duplicate entry for indices {left.strip()}", line=lineno)
        filled.add(flat)
        entries[flat] = parse_scalar(right.strip(), backend)
    return LabeledTensor(tuple(indices), entries, backend)


def format_tensor(tensor: LabeledTensor) -> str:
    """Inverse of :func:`parse_tensor`; zero entries are omitted."""
    dim = tensor.dimension or 1
    body = ",".join(str(ix) for ix in tensor.indices)
    lines = [f"tensor dim={dim} indices=[{body}]"]
    zero = scalar_zero(tensor.backend)
    for assign in tensor.assignments():
        value = tensor.value_at(assign)
        if value == zero:
            continue
        left = " ".join(str(v + 1) for v in assign)
        scalar = format_scalar(value, tensor.backend)
        lines.append(f"{left} = {scalar}".lstrip())
    return "\n".join(lines)
