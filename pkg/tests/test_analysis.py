import json
import math
from fractions import Fraction

import pytest

from symcomplex import corpus
from symcomplex.analysis import (
    EntropyProfile,
    check_doubling_tables,
    check_entropy_transfer,
    check_lower_bound_general,
    check_upper_bound,
    counterexample_suite,
    entropy_profile,
    theta_diagnostic,
    verify_lower_bound_general,
    verify_lower_bound_l2l,
    verify_upper_bound,
)
from symcomplex.freegroup import fibonacci_squared_pair
from symcomplex.morphisms import Morphism, canonical_decomposition
from symcomplex.recognizability import RecognizabilityCertificate, Verdict
from symcomplex.subshifts import ComplexityTable, Double, MorphicImage, complexity_table
from symcomplex.suite import basis_change_experiment


class TestEntropy:
    def test_full_shift_exact(self):
        prof = entropy_profile(corpus.full_shift(), 20)
        assert all(h == math.log(2) for h in prof.values())

    def test_doubling_image_at_30(self):
        prof = entropy_profile(MorphicImage(corpus.full_shift(), corpus.doubling()), 30)
        assert prof.window == 30
        assert prof.headline == pytest.approx((math.log(3) + 15 * math.log(2)) / 30, abs=1e-12)
        assert prof.headline > math.log(2) / 2

    def test_fibonacci(self):
        prof = entropy_profile(corpus.fibonacci_subshift(), 30)
        for n, p, h in prof.entries:
            assert p == n + 1 and h == math.log(n + 1) / n

    def test_csv(self):
        prof = EntropyProfile.from_table(ComplexityTable("t", {1: 2, 2: 4}))
        lines = prof.to_csv().splitlines()
        assert lines[0] == "n,p,log_p_over_n"
        assert lines[1].startswith("1,2,0.693147")


class TestUpper:
    def test_doubling(self):
        rep = verify_upper_bound(corpus.full_shift(), corpus.doubling(), 10)
        assert rep.passed and rep.constants == {"C": 2}
        x = complexity_table(corpus.full_shift(), 4)
        y = complexity_table(MorphicImage(corpus.full_shift(), corpus.doubling()), 4)
        # Two letter-images cover length 4: p_Y(4) = p_X(2) + p_X(3).
        assert y[4] == x[2] + x[3] == 12 <= 2 * x[4]

    def test_renaming_equality(self):
        for X in corpus.subshifts().values():
            rep = verify_upper_bound(X, corpus.rename(), 10)
            assert rep.passed and rep.details["equality"]

    def test_corrupted(self):
        X, s = corpus.full_shift(), corpus.doubling()
        x = complexity_table(X, 10)
        y = complexity_table(MorphicImage(X, s), 19)
        rep = check_upper_bound(x, y.replace(5, 100), 2, 2, 10)
        assert not rep.passed
        assert rep.first_failure["n"] == 5 and rep.first_failure["p_Y(n)"] == 100
        chain_only = check_upper_bound(x, y.replace(19, 10**6), 2, 2, 10)
        assert not chain_only.passed and chain_only.parts[0].passed
        assert chain_only.first_failure["n"] == 10 and chain_only.first_failure["m"] == 19


class TestLower:
    def test_l2l_renaming(self):
        rep = verify_lower_bound_l2l(corpus.full_shift(), corpus.rename(), 10)
        assert rep.passed and rep.constants["c"] == 1

    def test_l2l_subdivided_doubling(self):
        pi, alpha = canonical_decomposition(corpus.doubling())
        assert verify_lower_bound_l2l(MorphicImage(corpus.full_shift(), pi), alpha, 10).passed

    def test_l2l_fibonacci(self):
        pi, alpha = canonical_decomposition(corpus.fibonacci_morphism())
        rep = verify_lower_bound_l2l(MorphicImage(corpus.fibonacci_subshift(), pi), alpha, 10)
        assert rep.passed and rep.constants == {"c": Fraction(1, 9), "r": 1}

    def test_requires_certificate(self):
        A = corpus.A2
        const = Morphism(A, A, [(0,), (0,)])
        with pytest.raises(ValueError):
            verify_lower_bound_l2l(corpus.full_shift(), const, 6)
        fake = RecognizabilityCertificate(Verdict.INCONCLUSIVE)
        with pytest.raises(ValueError):
            verify_lower_bound_general(corpus.full_shift(), corpus.doubling(), 6, certificate=fake)
        with pytest.raises(ValueError):
            verify_lower_bound_l2l(corpus.full_shift(), corpus.doubling(), 6)

    def test_general_doubling(self):
        rep = verify_lower_bound_general(corpus.full_shift(), corpus.doubling(), 20)
        assert rep.passed and len(rep.parts) == 4
        assert rep.threshold == 6 and rep.skipped == (1, 2, 3, 4, 5)
        assert rep.parts[0].constants == {"r": 0}

    def test_general_fibonacci_squared(self):
        rep = verify_lower_bound_general(
            corpus.fibonacci_subshift(), corpus.fibonacci_squared(), 12, r_max=5, window=12
        )
        assert rep.passed and rep.threshold == 12
        assert rep.constants["c"] == Fraction(1, 5**6)

    def test_general_letter_to_letter_consistent(self):
        g = verify_lower_bound_general(corpus.full_shift(), corpus.rename(), 10)
        l = verify_lower_bound_l2l(corpus.full_shift(), corpus.rename(), 10)
        assert g.passed and l.passed and g.constants["c"] == l.constants["c"]

    def test_general_corrupted_part(self):
        X, s = corpus.full_shift(), corpus.doubling()
        pi, _ = canonical_decomposition(s)
        x = complexity_table(X, 12)
        z = complexity_table(MorphicImage(X, pi), 12)
        y = complexity_table(MorphicImage(X, s), 12)
        rep = check_lower_bound_general(x, z.replace(8, 1), y, 2, 4, 0, 12)
        assert not rep.passed
        failing = [p.claim for p in rep.parts if not p.passed]
        assert "subdivision stretch: p_Z(s n) >= p_X(n)" in failing


class TestCounterexample:
    def test_binary(self):
        rep = counterexample_suite(2, 12)
        assert rep.passed
        odd, even, growth, ent = rep.parts
        assert growth.details["final ratio"] == pytest.approx(2**24 / (2**12 + 2**13))
        assert ent.details["headline h_Y"] <= 0.40

    def test_values(self):
        X = corpus.full_shift()
        y = complexity_table(MorphicImage(X, corpus.doubling()), 20)
        assert y[3] == 8
        assert Fraction(2**20, y[20]) == Fraction(1048576, 3072)

    def test_corrupted(self):
        X = corpus.full_shift()
        x = complexity_table(X, 24)
        y = complexity_table(MorphicImage(X, corpus.doubling()), 24)
        rep = check_doubling_tables(x, y.replace(7, 31), 2, 12)
        assert not rep.passed and rep.first_failure["n"] == 4

    def test_rejects_unary(self):
        with pytest.raises(ValueError):
            counterexample_suite(1, 4)


class TestTheta:
    def test_same_table(self):
        t = complexity_table(corpus.golden_mean(), 10)
        d = theta_diagnostic(t, t)
        assert d.min_ratio == d.max_ratio == 1 and not d.flagged

    def test_doubling_flagged(self):
        X = corpus.full_shift()
        d = theta_diagnostic(complexity_table(X, 20), complexity_table(MorphicImage(X, corpus.doubling()), 20))
        assert d.growing and d.flagged and d.max_ratio > 100

    def test_fibonacci_bases_bounded(self):
        phi, psi = fibonacci_squared_pair()
        exp = basis_change_experiment(Double(corpus.fibonacci_subshift()), phi, psi, 10)
        d = theta_diagnostic(exp.x_table, exp.y_table)
        assert not d.flagged and d.max_ratio / d.min_ratio < 2
        assert exp.certified_windows == tuple(range(1, 11))


def test_entropy_transfer_fibonacci_pair():
    phi, psi = fibonacci_squared_pair()
    exp = basis_change_experiment(Double(corpus.fibonacci_subshift()), phi, psi, 10)
    rep = check_entropy_transfer(exp.x_table, exp.y_table, exp.constants.upper_C, exp.constants.upper_D, 10)
    assert rep.passed
    bad = check_entropy_transfer(exp.x_table, exp.y_table.replace(3, 10**9), 25, 10, 10)
    assert not bad.passed and bad.first_failure["n"] == 3


def test_report_serialization():
    rep = counterexample_suite(2, 4, entropy_window=10)
    doc = json.loads(json.dumps(rep.to_dict()))
    assert doc["passed"] and len(doc["parts"]) == 4 and doc["table_digests"]
    x = complexity_table(corpus.full_shift(), 4)
    fail = check_upper_bound(x, x.replace(2, 99), 1, 1, 4)
    assert fail.to_text().startswith("FAIL")
    assert "first failure" in fail.to_text()
