"""Counting paths, sequences, sharding and lattice export."""

from __future__ import annotations

import json

import pytest

from intervalcat import (
    CapExceeded,
    ClosureSpec,
    Interval,
    IntervalSet,
    count_brute,
    count_next_closure,
    is_closed,
    iter_closed_sets,
    lattice,
    reference_sequence,
    sequence,
    shard_count,
)


def spec(text: str) -> ClosureSpec:
    return ClosureSpec.parse(text)


def test_small_counts():
    assert count_next_closure(1, spec("QSCKE")) == 2
    assert count_brute(2, spec("E")) == 7
    assert count_brute(2, spec("CK")) == 6
    assert count_next_closure(3, spec("Q")) == 24
    assert count_next_closure(3, spec("E")) == 34
    assert count_next_closure(3, spec("CK")) == 22
    assert count_next_closure(3, spec("C")) == 37


def test_brute_cap():
    with pytest.raises(CapExceeded):
        count_brute(7, spec("Q"))
    assert count_brute(3, spec("Q"), max_bits=6) == 24
    with pytest.raises(CapExceeded):
        count_brute(3, spec("Q"), max_bits=5)


def test_brute_equals_next_closure_all_specs():
    for n in (1, 2, 3):
        for s in ClosureSpec.all_specs():
            assert count_brute(n, s) == count_next_closure(n, s), (n, str(s))


def test_enumeration_is_lectic_and_distinct():
    seen = []
    for s in iter_closed_sets(3, spec("QE")):
        assert is_closed(s, spec("QE"))
        seen.append(s.mask)
    assert len(seen) == len(set(seen)) == 14
    # lectic order: successive sets differ first (lowest index) in the later set
    for a, b in zip(seen, seen[1:]):
        low = (a ^ b) & -(a ^ b)
        assert b & low


def test_closed_count_matches_oracle_closedness_semantics():
    # the enumerated sets for C are exactly the subsets containing the
    # cokernel barcode of every morphism between sums of two members
    from itertools import combinations_with_replacement, product

    from intervalcat import barcode, cokernel_rep, hom_dim, morphism_between_sums

    n = 3
    closed = {s.mask for s in iter_closed_sets(n, spec("C"))}
    from intervalcat import universe_size

    for mask in range(1 << universe_size(n)):
        members = IntervalSet(n, mask).members
        ok = True
        for srcs in combinations_with_replacement(members, 2):
            for tgts in combinations_with_replacement(members, 2):
                pairs = [
                    (i, j) for i in range(2) for j in range(2) if hom_dim(srcs[i], tgts[j])
                ]
                if not pairs:
                    continue
                for bits in product((0, 1), repeat=len(pairs)):
                    f = morphism_between_sums(n, list(srcs), list(tgts), dict(zip(pairs, bits)))
                    if any(b not in IntervalSet(n, mask) for b in barcode(cokernel_rep(f))):
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        assert ok == (mask in closed), IntervalSet(n, mask).to_literal()


def test_shard_count_agrees():
    for shards in (1, 2, 3, 4, 8):
        assert shard_count(3, spec("E"), shards) == 34
        assert shard_count(1, spec(""), shards) == 2
    assert shard_count(4, spec("Q"), 4) == 120
    assert shard_count(5, spec("E"), 4) == 1308


def test_sharded_enumeration_is_bit_identical():
    single = [s.mask for s in iter_closed_sets(4, spec("QE"))]
    for shards in (2, 3, 4, 7):
        assert [s.mask for s in iter_closed_sets(4, spec("QE"), shards=shards)] == single


def test_shard_validation():
    with pytest.raises(ValueError):
        shard_count(2, spec("Q"), 0)


def test_reference_sequence():
    assert reference_sequence(spec("Q"), 6) == 5040
    assert reference_sequence(spec("S"), 5) == 720
    assert reference_sequence(spec("QS"), 3) == 14
    assert reference_sequence(spec("SE"), 4) == 42
    assert reference_sequence(spec("E"), 3) is None
    assert reference_sequence(spec("CK"), 3) is None
    assert reference_sequence(spec("C"), 4) is None
    assert reference_sequence(spec(""), 5) == 32768
    assert reference_sequence(spec("QSE"), 6) == 64
    # implied flags are normalised away: cokernels come with quotients
    assert reference_sequence(spec("QC"), 4) == 120
    assert reference_sequence(spec("SKE"), 4) == 42


def test_sequence_reports():
    rep = sequence(spec("QE"), 5)
    assert rep.counts() == [2, 5, 14, 42, 132]
    assert rep.algorithm == "next_closure"
    assert [n for n, _ in rep.terms] == [1, 2, 3, 4, 5]
    assert len(rep.elapsed) == 5

    brute = sequence(spec("QSE"), 4, algorithm="brute")
    assert brute.counts() == [2, 4, 8, 16]

    with pytest.raises(ValueError):
        sequence(spec("Q"), 0)
    with pytest.raises(ValueError):
        sequence(spec("Q"), 2, algorithm="magic")


def test_sequence_formats():
    rep = sequence(spec("QE"), 3)
    assert rep.to_csv() == "n,count\n1,2\n2,5\n3,14\n"
    assert rep.to_csv(reference=True).splitlines()[1] == "1,2,2,true"
    assert rep.to_bfile() == "1 2\n2 5\n3 14\n"
    doc = rep.to_json_dict()
    assert doc["ops"] == "QE"
    assert doc["terms"][2] == {"n": 3, "count": 14}
    assert "seconds" in rep.to_json_dict(include_timings=True)["terms"][0]
    json.dumps(doc)


def test_counts_monotone_under_more_flags():
    for n in (2, 3, 4):
        for base_str in ("", "Q", "E", "CK", "QS"):
            base = spec(base_str)
            base_count = count_next_closure(n, base)
            for extra in "QSCKE":
                bigger = ClosureSpec(base.flags | {extra})
                assert count_next_closure(n, bigger) <= base_count


def test_duality_of_counts():
    for n in (2, 3, 4):
        for s in ClosureSpec.all_specs():
            assert count_next_closure(n, s) == count_next_closure(n, s.dual()), str(s)


class TestLattice:
    def test_small_lattices(self):
        fam = lattice(2, spec("CKE"))
        assert len(fam.members) == 5
        fam1 = lattice(1, spec("Q"))
        assert len(fam1.members) == 2
        assert fam1.covers == ((0, 1),)

    def test_members_match_count_and_meet_closure(self):
        for s_str in ("E", "QS", "C"):
            s = spec(s_str)
            fam = lattice(3, s)
            assert len(fam.members) == count_next_closure(3, s)
            masks = {m.mask for m in fam.members}
            for a in masks:
                for b in masks:
                    assert (a & b) in masks

    def test_covers_form_transitive_reduction(self):
        fam = lattice(2, spec("E"))
        masks = [m.mask for m in fam.members]
        for lo, hi in fam.covers:
            assert masks[lo] & ~masks[hi] == 0 and masks[lo] != masks[hi]
            for k in range(len(masks)):
                if k in (lo, hi):
                    continue
                between = (
                    masks[lo] & ~masks[k] == 0
                    and masks[k] & ~masks[hi] == 0
                    and masks[k] not in (masks[lo], masks[hi])
                )
                assert not between

    def test_cap(self):
        with pytest.raises(CapExceeded):
            lattice(3, spec(""), max_members=10)

    def test_dot_export(self):
        txt = lattice(1, spec("Q")).to_dot()
        assert txt.startswith("digraph closed_sets {")
        assert 'n0 [label="{}"];' in txt
        assert 'n1 [label="{[1,1]}"];' in txt
        assert "n0 -> n1;" in txt

    def test_json_export(self):
        doc = lattice(2, spec("CKE")).to_json_dict()
        assert doc["n"] == 2 and doc["ops"] == "CKE"
        assert len(doc["members"]) == 5
        assert all(isinstance(m, list) for m in doc["members"])
        json.dumps(doc)
