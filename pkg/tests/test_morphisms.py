import pytest

import oracles
from semiwilson.errors import FormatError, NotBijective, NotInvolutive, NotMultiplicative
from semiwilson.morphisms import (
    apply,
    compose,
    enumerate_automorphisms,
    identity,
    involutive_automorphisms,
    parse_sigma,
    validate_involutive_automorphism,
)
from semiwilson.semigroup import Semigroup, cyclic_group, direct_product, left_zero, n3, symmetric_group3


def perms(autos):
    return [a.perm for a in autos]


def test_examples():
    assert perms(enumerate_automorphisms(cyclic_group(3))) == [(0, 1, 2), (0, 2, 1)]
    assert all(a.involutive for a in enumerate_automorphisms(cyclic_group(3)))
    assert perms(enumerate_automorphisms(n3())) == [(0, 1, 2)]
    lz = enumerate_automorphisms(left_zero(2))
    assert perms(lz) == [(0, 1), (1, 0)] and all(a.involutive for a in lz)


def test_matches_brute_force():
    tables = oracles.associative_tables(3) + [symmetric_group3().table.tolist(), cyclic_group(4).table.tolist()]
    for t in tables:
        S = Semigroup(t)
        brute = oracles.automorphisms(t)
        assert perms(enumerate_automorphisms(S)) == brute
        assert perms(involutive_automorphisms(S)) == [p for p in brute if all(p[p[x]] == x for x in range(len(t)))]


def test_s3_automorphisms():
    autos = enumerate_automorphisms(symmetric_group3())
    assert len(autos) == 6
    assert sum(a.involutive for a in autos) == 4


def test_validation():
    Z3, Z4 = cyclic_group(3), cyclic_group(4)
    assert validate_involutive_automorphism(Z3, [0, 1, 2]).is_identity()
    assert validate_involutive_automorphism(Z4, [0, 3, 2, 1]).perm == (0, 3, 2, 1)
    with pytest.raises((NotMultiplicative, NotInvolutive)):
        validate_involutive_automorphism(Z3, [1, 2, 0])
    with pytest.raises(NotBijective):
        validate_involutive_automorphism(Z3, [0, 0, 2])
    # an automorphism of order 3 on Z7 would be multiplicative but not involutive
    Z7 = cyclic_group(7)
    with pytest.raises(NotInvolutive):
        validate_involutive_automorphism(Z7, [(2 * x) % 7 for x in range(7)])


def test_apply():
    Z4 = cyclic_group(4)
    assert apply(identity(Z4), 2) == 2
    assert apply(parse_sigma("0,3,2,1", Z4), 1) == 3
    P9 = direct_product(n3(), n3())
    swap = parse_sigma(",".join(P9.name(P9.element(n[1] + n[0])) for n in P9.names), P9)
    assert P9.name(swap(P9.element("a1"))) == "1a"
    assert compose(swap, swap) == identity(P9).perm


def test_parse_sigma():
    Z4 = cyclic_group(4)
    assert parse_sigma("id", Z4).spec() == "id"
    assert parse_sigma(" 0, 3, 2, 1 ", Z4).spec() == "0,3,2,1"
    with pytest.raises(FormatError):
        parse_sigma("0,3,q,1", Z4)
