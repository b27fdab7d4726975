import itertools

import pytest

from rydberg_hubo.models import build_factorization_hubo, build_sierpinski_hubo
from rydberg_hubo.poly import brute_force_minima


class TestSierpinski:
    def test_single_triangle_terms(self):
        p = build_sierpinski_hubo([("j", "k", "l")])
        assert p.named_terms() == {
            frozenset({"j", "k", "l"}): -4,
            frozenset({"j", "k"}): 2,
            frozenset({"k", "l"}): 2,
            frozenset({"j", "l"}): 2,
            frozenset({"j"}): -1,
            frozenset({"k"}): -1,
            frozenset({"l"}): -1,
        }
        assert p.constant == 0

    def test_empty(self):
        p = build_sierpinski_hubo([])
        assert p.num_vars == 0 and p.terms == {}

    def test_shared_edge_merges(self):
        p = build_sierpinski_hubo([("j", "k", "l"), ("k", "l", "m")])
        named = p.named_terms()
        assert named[frozenset({"k"})] == -2
        assert named[frozenset({"l"})] == -2
        assert named[frozenset({"j"})] == -1
        assert named[frozenset({"k", "l"})] == 4  # shared edge accumulates

    def test_degenerate_triple_rejected(self):
        with pytest.raises(ValueError):
            build_sierpinski_hubo([("a", "a", "b")])

    def test_argmin_is_odd_parity(self):
        p = build_sierpinski_hubo([("a", "b", "c")])
        value, minima = brute_force_minima(p)
        assert value == -1
        assert set(minima) == {
            (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1),
        }

    def test_multi_triangle_ground_states_all_odd(self):
        tris = [("v1", "v2", "v3"), ("v2", "v4", "v5"), ("v3", "v5", "v6")]
        p = build_sierpinski_hubo(tris)
        value, minima = brute_force_minima(p)
        assert value == -3
        idx = {n: i for i, n in enumerate(p.names)}
        for a in minima:
            for x, y, z in tris:
                assert (a[idx[x]] + a[idx[y]] + a[idx[z]]) % 2 == 1


class TestFactorization:
    def test_fact6_expansion(self):
        p = build_factorization_hubo(6, 2, 2, {"P0": 1})
        assert p.names == ("P1", "Q1", "Q0")
        assert p.named_terms() == {
            frozenset({"Q1"}): -20,
            frozenset({"Q0"}): -11,
            frozenset({"P1", "Q1"}): -16,
            frozenset({"P1", "Q0"}): -16,
            frozenset({"Q1", "Q0"}): 4,
            frozenset({"P1", "Q1", "Q0"}): 32,
        }
        assert p.constant == 36

    def test_fact6_unique_solution(self):
        p = build_factorization_hubo(6, 2, 2, {"P0": 1})
        value, minima = brute_force_minima(p)
        assert value == 0  # perfect square hits zero at 6 = 3 * 2
        assert minima == [p.assignment_from({"P1": 1, "Q1": 1, "Q0": 0})]

    def test_two_bit_square(self):
        # 4 = (2*P1) * (2*Q1) with the low bits clamped to zero
        p = build_factorization_hubo(4, 2, 2, {"P0": 0, "Q0": 0})
        value, minima = brute_force_minima(p)
        assert value == 0
        assert minima == [p.assignment_from({"P1": 1, "Q1": 1})]

    def test_perfect_square_property(self):
        # every P*Q == n assignment hits exactly zero; everything else is positive
        n = 6
        p = build_factorization_hubo(n, 2, 2)
        idx = {name: i for i, name in enumerate(p.names)}
        for bits in itertools.product([0, 1], repeat=p.num_vars):
            pv = sum((1 << int(nm[1:])) * bits[idx[nm]] for nm in p.names if nm.startswith("P"))
            qv = sum((1 << int(nm[1:])) * bits[idx[nm]] for nm in p.names if nm.startswith("Q"))
            cost = p.evaluate(bits) + 0  # constant already included in evaluate
            assert cost == (n - pv * qv) ** 2

    def test_validation(self):
        with pytest.raises(ValueError):
            build_factorization_hubo(1, 2, 2)
        with pytest.raises(ValueError):
            build_factorization_hubo(6, 0, 2)
        with pytest.raises(ValueError):
            build_factorization_hubo(6, 2, 2, {"P7": 1})
        with pytest.raises(ValueError):
            build_factorization_hubo(6, 2, 2, {"P0": 2})
