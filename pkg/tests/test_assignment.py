import random
from fractions import Fraction

import pytest

from conftest import (
    brute_assignment_values,
    brute_optima,
    brute_tvol,
    family3,
    random_finite,
    random_with_bottom,
    unit_matrix,
)
from tropiso import (
    DomainError,
    ParityMethod,
    ParityVerdict,
    Permutation,
    Semiring,
    TropMatrix,
    certificate,
    enumerate_optima,
    lex_optimal_permutation,
    parity_report,
    second_best,
    tdet,
    tvol,
)


class TestPermutation:
    def test_parity(self):
        assert Permutation((0, 1, 2)).parity == 1
        assert Permutation((1, 0, 2)).parity == -1
        assert Permutation((1, 2, 0)).parity == 1

    def test_weight_of(self):
        A = unit_matrix(3, Semiring.MAX)
        assert Permutation.identity(3).weight_of(A) == 3
        assert Permutation((1, 0, 2)).weight_of(A) == 1

    def test_invalid_images(self):
        with pytest.raises(DomainError):
            Permutation((0, 0, 1))


class TestTdet:
    def test_unit_matrix(self):
        value, perm = tdet(unit_matrix(3, Semiring.MAX))
        assert value == 3 and perm.images == (0, 1, 2)

    def test_family_min(self):
        value, perm = tdet(family3(1))
        assert value == 0 and perm.images == (0, 1, 2)

    def test_infeasible_is_bottom(self):
        A = TropMatrix.from_rows([[0, "-inf"], ["-inf", "-inf"]], Semiring.MAX)
        value, perm = tdet(A)
        assert value is None and perm is None

    def test_against_brute_force_random(self):
        rng = random.Random(42)
        for _ in range(200):
            d = rng.randint(1, 5)
            sr = rng.choice([Semiring.MIN, Semiring.MAX])
            A = random_with_bottom(rng, d, d, sr, p_bottom=0.2)
            value, perm = tdet(A)
            best, _ = brute_assignment_values(A)
            assert value == best
            if perm is not None:
                assert perm.weight_of(A) == value

    def test_max_min_negation_duality(self):
        rng = random.Random(9)
        for _ in range(50):
            d = rng.randint(2, 5)
            A = random_finite(rng, d, d, Semiring.MAX)
            negated = TropMatrix(
                Semiring.MIN, tuple(tuple(-c for c in row) for row in A.entries)
            )
            assert tdet(A)[0] == -tdet(negated)[0]


class TestEnumerateOptima:
    def test_all_zero_total_symmetry(self):
        A = TropMatrix.from_rows([[0] * 3] * 3, Semiring.MAX)
        perms, truncated = enumerate_optima(A)
        assert len(perms) == 6 and not truncated

    def test_unit_matrix_unique(self):
        perms, truncated = enumerate_optima(unit_matrix(3, Semiring.MAX))
        assert [p.images for p in perms] == [(0, 1, 2)] and not truncated

    def test_family_endpoint_unique(self):
        perms, truncated = enumerate_optima(family3(0))
        assert [p.images for p in perms] == [(0, 1, 2)] and not truncated

    def test_cap_truncates(self):
        A = TropMatrix.from_rows([[0] * 4] * 4, Semiring.MAX)
        perms, truncated = enumerate_optima(A, cap=5)
        assert len(perms) == 5 and truncated

    def test_matches_brute_force(self):
        rng = random.Random(13)
        for _ in range(150):
            d = rng.randint(1, 4)
            sr = rng.choice([Semiring.MIN, Semiring.MAX])
            A = random_with_bottom(rng, d, d, sr, p_bottom=0.2, lo=-2, hi=2)
            perms, truncated = enumerate_optima(A)
            assert not truncated
            assert [p.images for p in perms] == brute_optima(A)


class TestSecondBest:
    def test_unit_matrix(self):
        assert second_best(unit_matrix(3, Semiring.MAX)) == 1

    def test_family(self):
        assert second_best(family3(1)) == 2

    def test_two_by_two(self):
        A = TropMatrix.from_rows([[0, 0], [0, 1]], Semiring.MAX)
        assert second_best(A) == 0

    def test_dimension_one_rejected(self):
        with pytest.raises(DomainError):
            second_best(TropMatrix.from_rows([[0]], Semiring.MAX))

    def test_oracle_agreement(self):
        rng = random.Random(77)
        for _ in range(300):
            d = rng.randint(2, 7)
            sr = rng.choice([Semiring.MIN, Semiring.MAX])
            A = random_finite(rng, d, d, sr, lo=-3, hi=3, den=3)
            _, oracle_second = brute_assignment_values(A)
            assert second_best(A) == oracle_second

    def test_sign_invariant(self):
        # best is never beaten by the runner-up, in either orientation
        rng = random.Random(8)
        for _ in range(50):
            d = rng.randint(2, 5)
            A = random_finite(rng, d, d, Semiring.MAX)
            assert tdet(A)[0] >= second_best(A)
            B = random_finite(rng, d, d, Semiring.MIN)
            assert tdet(B)[0] <= second_best(B)


class TestTvol:
    @pytest.mark.parametrize("d", range(2, 9))
    def test_unit_matrix(self, d):
        assert tvol(unit_matrix(d, Semiring.MAX)) == 2

    def test_two_by_two_equals_diameter(self):
        from tropiso import tdiam

        A = TropMatrix.from_rows([[0, 0], [0, 1]], Semiring.MAX)
        assert tvol(A) == 1 == tdiam(A)

    def test_two_by_two_diameter_agreement_random(self):
        from tropiso import tdiam

        rng = random.Random(21)
        for _ in range(60):
            A = random_finite(rng, 2, 2, rng.choice([Semiring.MIN, Semiring.MAX]))
            assert tvol(A) == tdiam(A)

    @pytest.mark.parametrize("lam", [0, Fraction(1, 2), 1, Fraction(3, 2), 2])
    def test_family(self, lam):
        assert tvol(family3(lam)) == 2

    def test_invariances(self):
        rng = random.Random(4)
        for _ in range(40):
            d = rng.randint(2, 6)
            sr = rng.choice([Semiring.MIN, Semiring.MAX])
            A = random_finite(rng, d, d, sr)
            v = tvol(A)
            assert v == brute_tvol(A)
            assert tvol(A.transpose()) == v
            perm = list(range(d))
            rng.shuffle(perm)
            assert tvol(A.permute(row_perm=perm)) == v
            assert tvol(A.permute(col_perm=perm)) == v

    def test_zero_iff_multiple_optima(self):
        rng = random.Random(15)
        for _ in range(120):
            d = rng.randint(2, 5)
            sr = rng.choice([Semiring.MIN, Semiring.MAX])
            A = random_finite(rng, d, d, sr, lo=-2, hi=2, den=2)
            assert (tvol(A) == 0) == (len(brute_optima(A)) >= 2)


class TestCertificate:
    def test_fields(self):
        cert = certificate(unit_matrix(3, Semiring.MAX))
        assert cert.best_value == 3
        assert cert.best_perm.images == (0, 1, 2)
        assert cert.second_value == 1
        assert cert.tvol == 2
        assert cert.optimum_unique

    def test_ordering_invariant(self):
        rng = random.Random(31)
        for _ in range(30):
            d = rng.randint(2, 4)
            A = random_finite(rng, d, d, Semiring.MAX)
            cert = certificate(A)
            assert cert.best_value >= cert.second_value
            assert cert.tvol == abs(cert.best_value - cert.second_value)
            assert cert.optimum_unique == (cert.tvol > 0)


class TestLexOptimal:
    def test_identity_shortcut(self):
        assert lex_optimal_permutation(family3(1)).images == (0, 1, 2)

    def test_lex_minimal_among_optima(self):
        rng = random.Random(19)
        for _ in range(80):
            d = rng.randint(2, 4)
            sr = rng.choice([Semiring.MIN, Semiring.MAX])
            A = random_finite(rng, d, d, sr, lo=-1, hi=1, den=1)
            assert lex_optimal_permutation(A).images == brute_optima(A)[0]


class TestParityReport:
    def test_unique_optimum_shortcut(self):
        rep = parity_report(unit_matrix(3, Semiring.MAX))
        assert rep.verdict is ParityVerdict.SAME
        assert rep.method is ParityMethod.UNIQUENESS_SHORTCUT

    def test_zero_matrices_mixed(self):
        for d in (2, 3):
            A = TropMatrix.from_rows([[0] * d] * d, Semiring.MAX)
            rep = parity_report(A)
            assert rep.verdict is ParityVerdict.MIXED
            a, b = rep.witness
            assert a.parity != b.parity

    def test_capped_unknown(self):
        A = TropMatrix.from_rows([[0] * 7] * 7, Semiring.MAX)
        rep = parity_report(A, cap=1)
        assert rep.verdict in (ParityVerdict.UNKNOWN, ParityVerdict.MIXED)
        # with cap=1 the walk stops before seeing a second parity
        assert rep.verdict is ParityVerdict.UNKNOWN
        assert rep.method is ParityMethod.CAPPED

    def test_bottom_matrix_enumeration(self):
        A = TropMatrix.from_rows([[0, "-inf"], ["-inf", 0]], Semiring.MAX)
        rep = parity_report(A)
        assert rep.verdict is ParityVerdict.SAME
        assert rep.enumerated_count == 1

    def test_matches_brute_force(self):
        rng = random.Random(55)
        for _ in range(150):
            d = rng.randint(2, 4)
            sr = rng.choice([Semiring.MIN, Semiring.MAX])
            A = random_with_bottom(rng, d, d, sr, p_bottom=0.2, lo=-1, hi=1)
            rep = parity_report(A)
            optima = brute_optima(A)
            parities = {Permutation(p).parity for p in optima}
            expected = ParityVerdict.MIXED if len(parities) == 2 else ParityVerdict.SAME
            assert rep.verdict is expected
