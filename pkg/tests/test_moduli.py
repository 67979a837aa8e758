import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from planebrauer.moduli import (
    K3_HEADER,
    PartitionError,
    appendix_terms,
    binom2,
    epsilon_case,
    families_of,
    k3_catalog,
    moduli_dim,
    partitions_same_parity,
    verify_combinatorics,
)

TABLE = {(6,): 19, (4, 2): 18, (2, 2, 2): 19, (5, 1): 18, (3, 3): 18, (3, 1, 1, 1): 19, (1,) * 6: 19}


def brute_partitions(e):
    """All weakly decreasing same-parity partitions, by filtering every composition."""
    out = set()

    def rec(rem, prefix):
        if rem == 0:
            out.add(tuple(sorted(prefix, reverse=True)))
            return
        for d in range(1, rem + 1):
            rec(rem - d, prefix + [d])

    rec(e, [])
    return {p for p in out if len({d % 2 for d in p}) == 1}


def brute_dim(e, parts):
    """Direct count: sections of the symmetric entries minus the automorphisms of the resolution."""
    eps = (e - parts[0]) % 2
    a = [(e - d - eps) // 2 for d in parts]
    n = len(parts)

    def h0(k):
        return comb(k + 2, 2) if k >= 0 else 0

    entries = sum(h0(e - a[i] - a[j] - eps) for i in range(n) for j in range(i, n))
    autos = sum(h0(a[i] - a[j]) for i in range(n) for j in range(n))
    return entries - autos - 8


def test_table():
    for parts, dim in TABLE.items():
        assert moduli_dim(6, parts).dim_L == dim


def test_binomial_convention():
    assert [binom2(k) for k in (-3, 0, 1, 2, 5)] == [0, 0, 0, 1, 10]


def test_errors():
    with pytest.raises(PartitionError):
        moduli_dim(6, (2, 4))
    with pytest.raises(PartitionError):
        moduli_dim(6, (3, 2, 1))
    with pytest.raises(PartitionError):
        moduli_dim(7, (3, 3))
    with pytest.raises(PartitionError):
        verify_combinatorics(0)


def test_enumeration_vs_brute_force():
    for e in range(1, 13):
        got = list(partitions_same_parity(e))
        assert len(got) == len(set(got))
        assert set(got) == brute_partitions(e)


def test_dimension_vs_direct_count():
    for e in range(1, 13):
        for parts in partitions_same_parity(e):
            assert moduli_dim(e, parts).dim_L == brute_dim(e, parts)


def test_verify_small():
    rep = verify_combinatorics(6)
    assert rep.ok
    assert set(rep.equality[6]) == {(6,), (2, 2, 2), (3, 1, 1, 1), (1,) * 6}
    rep1 = verify_combinatorics(1)
    assert rep1.equality[1] == [(1,)]
    assert ((1,), ["ones", "trivial"]) in rep1.overlaps


def test_overlaps_reported():
    assert families_of((3, 1)) == ["three-ones"]
    assert families_of((3,)) == ["three-ones", "trivial"]
    assert families_of((2,)) == ["twos", "trivial"]


@pytest.mark.slow
def test_verify_up_to_24():
    rep = verify_combinatorics(24)
    assert rep.ok and not rep.counterexamples
    for e in range(1, 25):
        fams = {p for p in partitions_same_parity(e) if families_of(p)}
        assert set(rep.equality[e]) == fams


@given(st.integers(1, 30), st.integers(0, 10**6))
def test_appendix_stages_on_random_partitions(e, seed):
    # the enumeration is checked against brute force above
    parts = random.Random(seed).choice(list(partitions_same_parity(e)))
    terms = appendix_terms(parts)
    assert terms["consistent"], terms
    rec = moduli_dim(e, parts)
    mult = {}
    for d in parts:
        mult[d] = mult.get(d, 0) + 1
    closed = sum(binom2(f) for f in mult.values()) + sum(
        Fraction((sum(parts[:j]) - 3 * j) * parts[j], 2) for j in range(len(parts)))
    assert rec.dim_L - rec.bound == -closed


def test_epsilon_cases():
    c = epsilon_case(6, 0)
    assert c.kind == "Jac(C)[2]" and c.generic_partitions == ((2, 2, 2),)
    c = epsilon_case(6, 1)
    assert c.kind == "theta characteristics" and set(c.generic_partitions) == {(1,) * 6, (3, 1, 1, 1)}
    assert c.twist_to_theta == 1
    c = epsilon_case(5, 0)
    assert c.kind == "theta characteristics" and c.twist_to_theta == 1
    assert epsilon_case(5, 1).kind == "impossible"
    with pytest.raises(PartitionError):
        epsilon_case(6, 2)


def test_k3_catalog():
    rows = {r.partition: r for r in k3_catalog()}
    assert len(rows) == 7
    assert (rows["1+1+1+1+1+1"].parameter_count, rows["1+1+1+1+1+1"].square) == (19, "O_C(1)")
    assert rows["1+1+1+1+1+1"].quadric_bundle == "(2,1) ⊂ ℙ⁵×ℙ²"
    assert (rows["5+1"].parameter_count, rows["5+1"].square, rows["5+1"].quadric_bundle) == (18, "O_C(1)", "X")
    for label, r in rows.items():
        parts = tuple(int(v) for v in label.split("+"))
        assert r.parameter_count == moduli_dim(6, parts).dim_L == TABLE[parts]
    assert K3_HEADER[0] == "partition"
