"""Closure specs, rule generation and the saturation engine."""

from __future__ import annotations

import random

import pytest

from intervalcat import (
    ClosureSpec,
    Interval,
    IntervalSet,
    all_intervals,
    barcode,
    closure,
    cokernel_rep,
    is_closed,
    kernel_rep,
    morphism_between_sums,
    rule_instances,
)
from intervalcat.closure import build_table
from intervalcat.oracle import cokernel_rep as _coker, generated_submodule, sum_of

from helpers import random_morphism_coeffs, random_set, random_sum_members


class TestClosureSpec:
    def test_parse(self):
        assert str(ClosureSpec.parse("ekq")) == "QKE"
        assert ClosureSpec.parse("") == ClosureSpec.parse("none")
        assert str(ClosureSpec.parse("")) == ""
        assert ClosureSpec.parse("QQ") == ClosureSpec.parse("Q")
        with pytest.raises(ValueError):
            ClosureSpec.parse("QX")

    def test_dual(self):
        assert str(ClosureSpec.parse("QE").dual()) == "SE"
        assert str(ClosureSpec.parse("CK").dual()) == "CK"
        assert ClosureSpec.parse("QSCKE").dual() == ClosureSpec.parse("QSCKE")

    def test_all_specs(self):
        specs = ClosureSpec.all_specs()
        assert len(specs) == 32
        assert len(set(specs)) == 32
        assert str(specs[0]) == ""

    def test_contains(self):
        assert "Q" in ClosureSpec.parse("QE")
        assert "S" not in ClosureSpec.parse("QE")


class TestRuleInstances:
    def test_quotient_instance_present(self):
        rules = rule_instances(2, ClosureSpec.parse("Q"))
        wanted = [
            r
            for r in rules
            if r.premises == frozenset({Interval(1, 2)})
            and r.conclusions == frozenset({Interval(2, 2)})
        ]
        assert len(wanted) == 1 and wanted[0].tag == "Q"

    def test_extension_instance_present(self):
        rules = rule_instances(2, ClosureSpec.parse("E"))
        assert len(rules) == 1
        (r,) = rules
        assert r.premises == frozenset({Interval(1, 1), Interval(2, 2)})
        assert r.conclusions == frozenset({Interval(1, 2)})

    def test_no_rules_for_single_vertex(self):
        assert rule_instances(1, ClosureSpec.parse("QSCKE")) == ()

    def test_conclusions_never_meet_premises(self):
        for spec in (ClosureSpec.parse(s) for s in ("Q", "E", "C", "K", "QSCKE")):
            for r in rule_instances(4, spec):
                assert r.conclusions
                assert not (r.conclusions & r.premises)


def _is_closed_by_instances(s: IntervalSet, spec: ClosureSpec) -> bool:
    """Reference semantics straight off the public instance list."""
    members = set(s.members)
    for r in rule_instances(s.n, spec):
        if r.premises <= members and not r.conclusions <= members:
            return False
    return True


def test_is_closed_examples():
    e = ClosureSpec.parse("E")
    s = IntervalSet.of(2, [Interval(1, 1), Interval(2, 2)])
    assert not is_closed(s, e)
    assert is_closed(s, ClosureSpec.parse(""))
    assert is_closed(IntervalSet.full(2), ClosureSpec.parse("QSCKE"))


def test_closure_examples():
    e = ClosureSpec.parse("E")
    s = IntervalSet.of(2, [Interval(1, 1), Interval(2, 2)])
    assert closure(s, e) == IntervalSet.full(2)
    for spec_str in ("", "Q", "CK", "QSCKE"):
        spec = ClosureSpec.parse(spec_str)
        assert closure(IntervalSet.empty(3), spec) == IntervalSet.empty(3)


def test_engine_matches_instance_semantics():
    rng = random.Random(31)
    for n in (2, 3, 4):
        for spec in ClosureSpec.all_specs():
            for _ in range(20):
                s = random_set(rng, n)
                assert is_closed(s, spec) == _is_closed_by_instances(s, spec)


def test_closure_operator_laws():
    rng = random.Random(37)
    for n in range(1, 6):
        for spec in (ClosureSpec.parse(t) for t in ("", "Q", "E", "CK", "QSE", "QSCKE")):
            for _ in range(25):
                s = random_set(rng, n)
                t = random_set(rng, n)
                cs = closure(s, spec)
                assert s.issubset(cs)
                assert closure(cs, spec) == cs
                union = s | t
                assert cs.issubset(closure(union, spec))
                if is_closed(s, spec):
                    assert cs == s


def test_intersection_of_closed_is_closed():
    n = 2
    for spec in ClosureSpec.all_specs():
        closed = [
            IntervalSet(n, m)
            for m in range(1 << 3)
            if is_closed(IntervalSet(n, m), spec)
        ]
        for a in closed:
            for b in closed:
                assert is_closed(a & b, spec)


def test_closedness_duality():
    rng = random.Random(41)
    for n in (2, 3, 4):
        for spec in ClosureSpec.all_specs():
            for _ in range(10):
                s = random_set(rng, n)
                assert is_closed(s, spec) == is_closed(s.dual(), spec.dual())


def test_table_pruning_keeps_operator():
    # the engine table drops derivable conclusions; closures must be unchanged
    rng = random.Random(43)
    for n in (3, 4):
        for spec_str in ("C", "CK", "QSCKE", "E"):
            spec = ClosureSpec.parse(spec_str)
            table = build_table(n, spec)
            for _ in range(50):
                s = random_set(rng, n)
                slow = set(s.members)
                changed = True
                while changed:
                    changed = False
                    for r in rule_instances(n, spec):
                        if r.premises <= slow and not r.conclusions <= slow:
                            slow |= r.conclusions
                            changed = True
                assert IntervalSet(n, table.closure(s.mask)) == IntervalSet.of(n, slow)


class TestSemanticSoundness:
    """Closed sets really swallow the matching categorical constructions."""

    def test_cokernels_of_random_morphisms_stay_inside(self):
        rng = random.Random(47)
        spec = ClosureSpec.parse("C")
        for n in (2, 3, 4):
            pool = all_intervals(n)
            for _ in range(60):
                seed = random_sum_members(rng, pool, 3)
                s = closure(IntervalSet.of(n, seed), spec)
                members = list(s.members) or seed
                srcs = random_sum_members(rng, members, 3)
                tgts = random_sum_members(rng, members, 3)
                f = morphism_between_sums(n, srcs, tgts, random_morphism_coeffs(rng, srcs, tgts))
                for bar in barcode(cokernel_rep(f)):
                    assert bar in s

    def test_kernels_of_random_morphisms_stay_inside(self):
        rng = random.Random(53)
        spec = ClosureSpec.parse("K")
        for n in (2, 3, 4):
            pool = all_intervals(n)
            for _ in range(60):
                seed = random_sum_members(rng, pool, 3)
                s = closure(IntervalSet.of(n, seed), spec)
                members = list(s.members) or seed
                srcs = random_sum_members(rng, members, 3)
                tgts = random_sum_members(rng, members, 3)
                f = morphism_between_sums(n, srcs, tgts, random_morphism_coeffs(rng, srcs, tgts))
                for bar in barcode(kernel_rep(f)):
                    assert bar in s

    def test_random_submodules_and_quotients_stay_inside(self):
        rng = random.Random(59)
        for n in (2, 3, 4):
            pool = all_intervals(n)
            for _ in range(40):
                seed = random_sum_members(rng, pool, 3)
                s_sub = closure(IntervalSet.of(n, seed), ClosureSpec.parse("S"))
                s_quo = closure(IntervalSet.of(n, seed), ClosureSpec.parse("Q"))
                rep = sum_of(seed, n)
                gens = [
                    (rng.randint(1, n), rng.getrandbits(max(rep.dims)))
                    for _ in range(rng.randint(1, 3))
                ]
                gens = [(v, vec & ((1 << rep.dims[v - 1]) - 1)) for v, vec in gens]
                incl = generated_submodule(rep, gens)
                for bar in barcode(incl.source):
                    assert bar in s_sub
                for bar in barcode(_coker(incl)):
                    assert bar in s_quo

    def test_extension_middles_stay_inside(self):
        from intervalcat import ext_middle

        rng = random.Random(61)
        spec = ClosureSpec.parse("E")
        for n in (2, 3, 4):
            pool = all_intervals(n)
            for _ in range(40):
                seed = random_sum_members(rng, pool, 3)
                s = closure(IntervalSet.of(n, seed), spec)
                for lower in s.members:
                    for upper in s.members:
                        got = ext_middle(upper, lower)
                        if got is None:
                            continue
                        y, yp = got
                        assert y in s
                        assert yp is None or yp in s
