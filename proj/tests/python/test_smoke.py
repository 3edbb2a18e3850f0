import math

import pytest

import latfm


def primes_dividing(d):
    return [p for p in range(2, d + 1) if d % p == 0 and all(p % q for q in range(2, math.isqrt(p) + 1))]


def test_fm_count_matches_prime_count():
    for d in range(1, 80):
        p = max(1, len(primes_dividing(d)))
        assert latfm.fm_count(d) == 2 ** (p - 1)
        assert latfm.fm_count_via_cosets(d) == latfm.fm_count(d)


def test_orthogonal_group_order_brute_force():
    for d in range(1, 60):
        brute = sum(1 for a in range(2 * d) if math.gcd(a, 2 * d) == 1 and (a * a - 1) % (4 * d) == 0)
        assert latfm.orthogonal_group_order(d) == brute


def test_builtin_lattices():
    k3 = latfm.k3_gram()
    assert len(k3) == 22
    assert latfm.signature(k3) == (3, 19)
    assert abs(latfm.determinant(k3)) == 1
    assert abs(latfm.determinant(latfm.mukai_gram())) == 1


def test_discriminant_module_of_member():
    mod = latfm.discriminant_module(latfm.member_gram(2, 5))
    assert mod["factors"] == [25]
    num, den = map(int, mod["q"][0].split("/"))
    # q of some generator is -4*a^2/25 mod 2 with a a unit mod 25
    assert den == 25
    assert any((num + 4 * a * a) % 50 == 0 for a in range(1, 25) if a % 5)


def test_mukai_vectors_isotropic():
    for d in (1, 8, 15, 30, 210):
        for r, h, s in latfm.mukai_vectors(d):
            assert 2 * d * h * h - 2 * r * s == 0
    assert [len(latfm.mukai_classes(d)) for d in (1, 8, 15, 30, 210)] == [1, 1, 2, 4, 8]


def test_moduli_shadow():
    r, h, s = latfm.mukai_vectors(6)[1]
    sh = latfm.moduli_shadow(r, h, s, 6)
    assert sh["signature"] == (3, 19)
    assert abs(sh["determinant"]) == 1
    assert sh["ns_square"] == 12
    assert sh["transcendental_is_ns_complement"]


def test_isometry_search_and_conditions():
    res = latfm.find_isometry([[2, 5], [5, 0]], [[12, 5], [5, 0]])
    assert res["outcome"] == "found"
    w = res["witness"]
    g = [[2, 5], [5, 0]]
    image = [[sum(w[k][i] * g[k][l] * w[l][j] for k in range(2) for l in range(2)) for j in range(2)] for i in range(2)]
    assert image == [[12, 5], [5, 0]]
    assert latfm.necessary_conditions(1, 6, 5)["a2"]
    assert latfm.necessary_conditions(1, 2, 5)["certified_non_isometric"]


def test_family_bundle():
    fam = latfm.build_family(3, 1, "abelian")
    assert fam["n"] == 83
    assert len(fam["members"]) == 3
    assert len(fam["witnesses"]) == 3 and len(fam["certificates"]) == 3
    assert all(a["signature"] == [2, 2] for a in fam["attestations"])
    assert latfm.disc_iso_alpha(1, 4, 83) == 2


def test_orbits():
    assert latfm.polarization_orbits(30) == [(1, 30), (2, 15), (3, 10), (5, 6)]


def test_errors_are_typed():
    with pytest.raises(latfm.LatfmError) as info:
        latfm.member_gram(3, 3)
    assert info.value.code == "NotCoprime"
    with pytest.raises(latfm.LatfmError):
        latfm.determinant([[1, 0], [0, 0]])
    with pytest.raises(ValueError):
        latfm.fm_count(0)


def test_selftest_passes():
    assert all(c["passed"] for c in latfm.selftest(40))
