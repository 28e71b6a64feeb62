import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tqft2d import (
    COMPLEX,
    MINUS,
    PLUS,
    BackendError,
    DimensionError,
    LabelError,
    LabeledTensor,
    OrientationError,
    ParseError,
    RATIONAL,
    SignedIndex,
    format_scalar,
    format_tensor,
    parse_scalar,
    parse_tensor,
)
from tqft2d.tensor import contract_between, contract_within, parse_complex, parse_rational


def idx(spec: str, dim: int) -> tuple[SignedIndex, ...]:
    """'+a -b' shorthand for an index tuple."""
    out = []
    for part in spec.split():
        out.append(SignedIndex(part[1:], PLUS if part[0] == "+" else MINUS, dim))
    return tuple(out)


def rational(spec, dim, entries):
    return LabeledTensor(idx(spec, dim), [Fraction(v) for v in entries])


class TestTensorProduct:
    def test_scalar_one_is_a_unit(self):
        t = rational("+a -b", 2, [1, 2, 3, 4])
        assert LabeledTensor.scalar(1).tensor_product(t) == t
        assert t.tensor_product(LabeledTensor.scalar(1)) == t

    def test_outer_product_by_hand(self):
        d = rational("+a", 2, [2, 3])
        dd = d.tensor_product(rational("+b", 2, [2, 3]))
        # ((4, 6), (6, 9)) in row-major order
        assert dd.entries == (4, 6, 6, 9)
        assert dd.labels == ("a", "b")

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            rational("+a", 2, [1, 2]).tensor_product(rational("+b", 3, [1, 2, 3]))

    def test_label_collision(self):
        with pytest.raises(LabelError):
            rational("+a", 2, [1, 2]).tensor_product(rational("-a", 2, [1, 2]))

    def test_backend_mixing_rejected(self):
        t = rational("+a", 2, [1, 2])
        c = LabeledTensor(idx("-b", 2), [1.0, 2.0])
        with pytest.raises(BackendError):
            t.tensor_product(c)


class TestContract:
    def test_trace(self):
        c = rational("-i +j", 2, [1, 2, 3, 4])
        assert c.contract("i", "j").entries == (5,)

    def test_identity_trace_is_dimension(self):
        n = 3
        delta = LabeledTensor(
            idx("-i +j", n),
            [Fraction(1 if a == b else 0)
             for a, b in itertools.product(range(n), repeat=2)])
        assert delta.contract("i", "j").entries == (n,)

    def test_same_sign_rejected(self):
        t = rational("+a +b", 2, [1, 2, 3, 4])
        with pytest.raises(OrientationError):
            t.contract("a", "b")

    def test_missing_label(self):
        with pytest.raises(LabelError):
            rational("+a -b", 2, [1, 2, 3, 4]).contract("a", "zz")

    def test_pair_order_is_immaterial(self):
        t = rational("+a -b +c", 2, range(8))
        assert t.contract("a", "b") == t.contract("b", "a")

    def test_remaining_order_preserved(self):
        t = rational("+a -b +c", 2, range(8))
        assert t.contract("a", "b").labels == ("c",)


class TestPermute:
    def test_identity(self):
        t = rational("+a -b", 2, [1, 2, 3, 4])
        assert t.permute_indices([0, 1]) == t

    def test_transpose_by_hand(self):
        t = rational("+a -b", 2, [1, 2, 3, 4])
        got = t.permute_indices([1, 0])
        assert got.entries == (1, 3, 2, 4)
        assert got.labels == ("b", "a")

    def test_three_cycle_has_order_three(self):
        t = rational("+a +b +c", 2, range(8))
        cycled = t
        for _ in range(3):
            cycled = cycled.permute_indices([1, 2, 0])
        assert cycled == t

    def test_invalid_permutation(self):
        with pytest.raises(ValueError):
            rational("+a -b", 2, [1, 2, 3, 4]).permute_indices([0, 0])


class TestFlipAndConjugate:
    def test_flip_rank0(self):
        s = LabeledTensor.scalar(Fraction(3, 4))
        assert s.flip_signs() == s

    def test_flip_is_an_involution(self):
        t = rational("+a -b", 2, [1, 2, 3, 4])
        assert t.flip_signs().flip_signs() == t

    def test_flip_keeps_entries(self):
        d = rational("+a", 2, [2, 3])
        flipped = d.flip_signs()
        assert flipped.entries == d.entries
        assert flipped.indices[0].sign is MINUS

    def test_flip_selected_labels_only(self):
        t = rational("+a -b", 2, [1, 2, 3, 4])
        got = t.flip_signs(["b"])
        assert [ix.sign for ix in got.indices] == [PLUS, PLUS]

    def test_conjugate_is_identity_on_rationals(self):
        t = rational("+a", 2, [1, 2])
        assert t.conjugate_entries() == t

    def test_conjugate_by_hand(self):
        t = LabeledTensor(idx("+a", 1), [1 + 2j])
        assert t.conjugate_entries().entries == (1 - 2j,)

    def test_conjugate_involution(self):
        t = LabeledTensor(idx("+a -b", 2), [1 + 2j, -1j, 0.5, 2])
        assert t.conjugate_entries().conjugate_entries() == t

    def test_flip_and_conjugate_commute(self):
        t = LabeledTensor(idx("+a -b", 2), [1 + 2j, -1j, 0.5, 2])
        assert t.flip_signs().conjugate_entries() == t.conjugate_entries().flip_signs()


class TestEquality:
    def test_self_equality(self):
        t = rational("+a -b", 2, [1, 2, 3, 4])
        assert t.equals(t)

    def test_within_tolerance(self):
        a = LabeledTensor(idx("+a -b", 2), [1.0, 0.0, 0.0, 1.0])
        b = LabeledTensor(idx("+a -b", 2), [1.0, 1e-12, 0.0, 1.0])
        assert a.equals(b, tolerance=1e-9)
        assert not a.equals(b, tolerance=1e-15)

    def test_index_order_matters(self):
        a = rational("+a -b", 2, [1, 2, 2, 1])
        b = rational("-b +a", 2, [1, 2, 2, 1])
        assert not a.equals(b)
        assert a.canonical().equals(b.canonical())

    def test_rational_is_exact(self):
        a = rational("+a", 1, [Fraction(1, 3)])
        b = rational("+a", 1, [Fraction(333333, 1000000)])
        assert not a.equals(b)


class TestBackends:
    def test_rational_rejects_floats(self):
        with pytest.raises(BackendError):
            LabeledTensor(idx("+a", 2), [0.5, 1], backend=RATIONAL)

    def test_detection(self):
        assert LabeledTensor(idx("+a", 2), [1, 2]).backend == RATIONAL
        assert LabeledTensor(idx("+a", 2), [1.0, 2]).backend == COMPLEX

    def test_entry_count_checked(self):
        with pytest.raises(DimensionError):
            LabeledTensor(idx("+a", 2), [1, 2, 3])

    def test_repeated_labels_rejected(self):
        with pytest.raises(LabelError):
            LabeledTensor(idx("+a -a", 2), [1, 2, 3, 4])


class TestScalarFormat:
    def test_rational_round_trip(self):
        for text in ["0", "7", "-3", "1/4", "-22/7"]:
            assert str(parse_rational(text)) == text

    def test_rational_rejects_floats(self):
        with pytest.raises(ParseError):
            parse_rational("1.5")

    def test_complex_round_trip(self):
        for value in [1 + 2j, -0.5 - 0.25j, 3 + 0j, 1e-11 + 2e3j]:
            text = format_scalar(value, COMPLEX)
            assert parse_complex(text) == pytest.approx(value)

    def test_complex_shorthand(self):
        assert parse_complex("2i") == 2j
        assert parse_complex("-i") == -1j
        assert parse_complex("1.5") == 1.5
        assert parse_complex("1-2i") == 1 - 2j

    def test_parse_scalar_respects_backend(self):
        assert parse_scalar("1/2", RATIONAL) == Fraction(1, 2)
        assert parse_scalar("1+0i", COMPLEX) == 1 + 0j


class TestLiteralFormat:
    def test_round_trip_rational(self):
        t = rational("+i -j", 2, [1, 0, Fraction(1, 2), 4])
        assert parse_tensor(format_tensor(t)) == t

    def test_round_trip_rank0(self):
        t = LabeledTensor.scalar(Fraction(-5, 3))
        assert parse_tensor(format_tensor(t)) == t

    def test_round_trip_complex(self):
        t = LabeledTensor(idx("+i", 2), [1 + 2j, -0.5j])
        assert parse_tensor(format_tensor(t)).equals(t)

    def test_omitted_entries_are_zero(self):
        t = parse_tensor("tensor dim=2 indices=[+i,-j]\n1 1 = 5")
        assert t.entries == (5, 0, 0, 0)

    def test_header_errors(self):
        with pytest.raises(ParseError):
            parse_tensor("bogus")
        with pytest.raises(ParseError):
            parse_tensor("tensor dim=2 indices=[+i]\n1 2 3 = 4")

    def test_out_of_range_entry(self):
        with pytest.raises(ParseError):
            parse_tensor("tensor dim=2 indices=[+i]\n3 = 1")

    def test_duplicate_entry(self):
        with pytest.raises(ParseError):
            parse_tensor("tensor dim=2 indices=[+i]\n1 = 1\n1 = 2")


# -- brute-force oracle --------------------------------------------------------
#
# An independent dictionary-of-assignments implementation of the pairing
# contract(tensor_product(t1, t2), a, b): plain nested loops, no strides.

def to_dict(tensor):
    return {assign: tensor.value_at(assign) for assign in tensor.assignments()}


def oracle_pairing(t1, t2, a, b):
    pa, pb = t1.labels.index(a), t2.labels.index(b)
    dim = t1.dimension or t2.dimension
    keep1 = [k for k in range(t1.rank) if k != pa]
    keep2 = [k for k in range(t2.rank) if k != pb]
    m1, m2 = to_dict(t1), to_dict(t2)
    out = {}
    for left in itertools.product(range(dim), repeat=len(keep1)):
        for right in itertools.product(range(dim), repeat=len(keep2)):
            total = Fraction(0)
            for k in range(dim):
                a1 = list(left)
                a1.insert(pa, k)
                a2 = list(right)
                a2.insert(pb, k)
                total += m1[tuple(a1)] * m2[tuple(a2)]
            out[left + right] = total
    return out


def random_rational_tensor(rng, spec, dim):
    return LabeledTensor(idx(spec, dim),
                         [Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                          for _ in range(dim ** len(spec.split()))])


@pytest.mark.parametrize("rank1,rank2", [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)])
@pytest.mark.parametrize("dim", [1, 2, 3])
def test_contract_of_product_matches_bruteforce_oracle(rank1, rank2, dim):
    rng = random.Random(f"{rank1}:{rank2}:{dim}")
    names1 = "abc"[:rank1]
    names2 = "xyz"[:rank2]
    spec1 = " ".join(f"+{n}" for n in names1)
    spec2 = " ".join(f"-{n}" for n in names2)
    for _ in range(3):
        t1 = random_rational_tensor(rng, spec1, dim)
        t2 = random_rational_tensor(rng, spec2, dim)
        got = t1.tensor_product(t2).contract("a", "x")
        expected = oracle_pairing(t1, t2, "a", "x")
        assert {assign: got.value_at(assign)
                for assign in got.assignments()} == expected


def test_fused_contractions_match_iterated(apply_pairs=(("a", "x"), ("c", "z"))):
    rng = random.Random(99)
    t1 = random_rational_tensor(rng, "+a +b -c", 3)
    t2 = random_rational_tensor(rng, "-x -y +z", 3)
    fused = contract_between(t1, t2, list(apply_pairs))
    slow = t1.tensor_product(t2)
    for a, b in apply_pairs:
        slow = slow.contract(a, b)
    assert fused == slow

    w = random_rational_tensor(rng, "+p -q +r -s", 2)
    assert contract_within(w, [("p", "q"), ("r", "s")]) == \
        w.contract("p", "q").contract("r", "s")


# -- hypothesis properties -----------------------------------------------------

@given(st.permutations(range(3)), st.permutations(range(3)), st.integers(0, 10 ** 6))
@settings(max_examples=60)
def test_permutation_group_action(p1, p2, seed):
    rng = random.Random(seed)
    t = random_rational_tensor(rng, "+a -b +c", 2)
    stepwise = t.permute_indices(p1).permute_indices(p2)
    composite = [p1[p2[k]] for k in range(3)]
    assert stepwise == t.permute_indices(composite)


@given(st.integers(0, 10 ** 6))
@settings(max_examples=40)
def test_flip_conjugate_commute_and_involute(seed):
    rng = random.Random(seed)
    entries = [complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(4)]
    t = LabeledTensor(idx("+a -b", 2), entries)
    assert t.flip_signs().flip_signs() == t
    assert t.conjugate_entries().conjugate_entries() == t
    assert t.flip_signs().conjugate_entries() == t.conjugate_entries().flip_signs()
