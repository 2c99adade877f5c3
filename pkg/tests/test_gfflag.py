from itertools import product as iproduct

import pytest

from dlperiod import CapacityError, UsageError
from dlperiod.gfflag import (
    Cochar,
    DEFAULT_ENUM_CAP,
    Field,
    Flag,
    adapted_basis,
    build_extension,
    cochar,
    coxeter_perm,
    dl_point_count,
    dl_point_tally,
    enumerate_flags,
    field_build,
    flag_count,
    flag_from_chain,
    frobenius_flag,
    gaussian_binomial,
    nu_jump_dims,
    omega_point_count,
    period_point_count,
    perm_from_word,
    prime_power,
    rational_scalars,
    relative_position,
    rref,
    semistable,
)

# frozen tallies for complete flags on a 3-space over GF(2), by extension degree
COMPLETE_3_2_TOTALS = {1: 21, 2: 105, 3: 657}


def test_prime_power():
    assert prime_power(2) == (2, 1)
    assert prime_power(8) == (2, 3)
    assert prime_power(27) == (3, 3)
    assert prime_power(49) == (7, 2)
    for bad in (0, 1, 6, 12, 100):
        with pytest.raises(UsageError):
            prime_power(bad)


def test_canonical_moduli():
    # lexicographically-first irreducible, highest coefficient compared first
    assert build_extension(2, 2).modulus == (1, 1, 1)          # x^2+x+1
    assert build_extension(2, 3).modulus == (1, 1, 0, 1)       # x^3+x+1
    assert build_extension(2, 4).modulus == (1, 1, 0, 0, 1)    # x^4+x+1
    assert build_extension(3, 2).modulus == (1, 0, 1)          # x^2+1
    assert field_build(5, 1).modulus == (0, 1)  # plain x for prime fields


def test_field_laws_exhaustive():
    for p, k in [(2, 2), (2, 3), (3, 2), (5, 1)]:
        fld = field_build(p, k)
        n = fld.size
        els = range(n)
        for a in els:
            assert fld.add(a, 0) == a and fld.mul(a, 1) == a
            assert fld.add(a, fld.neg(a)) == 0
            if a:
                assert fld.mul(a, fld.inv(a)) == 1
            for b in els:
                assert fld.add(a, b) == fld.add(b, a)
                assert fld.mul(a, b) == fld.mul(b, a)
        # spot-check associativity and distributivity on a subgrid
        for a, b, c in iproduct(range(0, n, max(1, n // 5)), repeat=3):
            assert fld.mul(a, fld.add(b, c)) == fld.add(fld.mul(a, b), fld.mul(a, c))
            assert fld.mul(fld.mul(a, b), c) == fld.mul(a, fld.mul(b, c))


def test_frobenius_and_rational_scalars():
    f4 = build_extension(2, 2)
    frob = f4.frob_map(2)
    for a in range(4):
        assert frob[a] == f4.mul(a, a)
    assert rational_scalars(f4, 2) == (0, 1)
    f27 = build_extension(3, 3)
    frob3 = f27.frob_map(3)
    for a in range(27):
        assert frob3[a] == f27.mul(a, f27.mul(a, a))
        # additive and multiplicative
        for b in range(0, 27, 5):
            assert frob3[f27.add(a, b)] == f27.add(frob3[a], frob3[b])
    assert len(rational_scalars(f27, 3)) == 3
    with pytest.raises(UsageError):
        f4.frob_map(3)  # GF(3) is not inside GF(4)
    with pytest.raises(CapacityError):
        build_extension(2, 17)  # over the field size cap


def test_field_equality_and_repr():
    assert build_extension(2, 2) == field_build(2, 2)
    assert repr(build_extension(3, 2)) == "GF(3^2)"


def test_gaussian_binomials_and_flag_counts():
    assert gaussian_binomial(3, 1, 2) == 7
    assert gaussian_binomial(4, 2, 2) == 35
    assert gaussian_binomial(3, 1, 3) == 13
    assert flag_count(3, (1, 2), 2) == 21
    assert flag_count(3, (1, 2), 8) == 657
    assert flag_count(3, (1,), 4) == 21
    assert flag_count(2, (1,), 9) == 10
    assert flag_count(3, (), 5) == 1


def test_rref_canonical():
    f2 = build_extension(2, 1)
    rows = rref(f2, ((1, 1, 0), (0, 1, 1)))
    assert rows == ((1, 0, 1), (0, 1, 1))
    # scaling and reordering cannot change the canonical form
    f3 = build_extension(3, 1)
    a = rref(f3, ((1, 2, 0), (0, 1, 1)))
    b = rref(f3, ((0, 2, 2), (1, 2, 0)))
    assert a == b


def test_enumerate_flags_counts_and_uniqueness():
    f2 = build_extension(2, 1)
    lines = enumerate_flags(f2, 3, (1,))
    assert len(lines) == 7
    full = enumerate_flags(f2, 3, (1, 2))
    assert len(full) == 21
    assert len({fl.steps for fl in full}) == 21
    f4 = build_extension(2, 2)
    assert len(enumerate_flags(f4, 2, (1,))) == 5
    with pytest.raises(CapacityError) as exc:
        enumerate_flags(f2, 3, (1, 2), cap=10)
    assert "21" in str(exc.value)
    with pytest.raises(UsageError):
        enumerate_flags(f2, 3, (2, 1))


def test_flag_from_chain_and_adapted_basis():
    f2 = build_extension(2, 1)
    fl = flag_from_chain(f2, 3, [((1, 1, 0),), ((1, 1, 0), (0, 0, 1))])
    assert fl.dims == (1, 2)
    assert fl.steps[0] == ((1, 1, 0),)
    rows = adapted_basis(fl)
    assert len(rows) == 3
    # prefixes of the adapted basis span the steps
    assert rref(f2, rows[:1]) == fl.steps[0]
    assert rref(f2, rows[:2]) == fl.steps[1]
    with pytest.raises(UsageError):
        flag_from_chain(f2, 3, [((1, 1, 0),), ((1, 1, 0),)])  # not increasing
    with pytest.raises(UsageError):
        flag_from_chain(f2, 3, [((0, 0, 0),)])


def test_frobenius_flag_fixed_exactly_on_rational_flags():
    f4 = build_extension(2, 2)
    fixed = [fl for fl in enumerate_flags(f4, 2, (1,)) if frobenius_flag(fl, 2) == fl]
    assert len(fixed) == 3  # the GF(2)-rational lines


def test_perm_from_word_and_coxeter():
    assert perm_from_word(3, "s1") == (1, 0, 2)
    assert perm_from_word(3, "s1 s2") == (1, 2, 0)
    assert perm_from_word(3, "s2 s1") == (2, 0, 1)
    assert coxeter_perm(2) == (1, 0)
    assert coxeter_perm(4) == (1, 2, 3, 0)
    assert perm_from_word(4, "s1 s2 s3") == coxeter_perm(4)
    with pytest.raises(UsageError):
        perm_from_word(3, "s3")


def test_relative_position_identity_and_inverse():
    f2 = build_extension(2, 1)
    flags = enumerate_flags(f2, 3, (1, 2))
    id3 = (0, 1, 2)
    inv = {w: tuple(sorted(range(3), key=lambda i: w[i])) for w in
           set(iproduct(range(3), repeat=3))}
    for F in flags:
        assert relative_position(F, F) == id3
    for F in flags[:7]:
        for G in flags:
            w = relative_position(F, G)
            assert relative_position(G, F) == inv[w]


def test_relative_position_cell_sizes():
    # over GF(q) the cell of w relative to a fixed flag has q^length(w) points
    for q in (2, 3):
        fld = build_extension(q, 1)
        flags = enumerate_flags(fld, 3, (1, 2))
        base = flags[0]
        from collections import Counter
        c = Counter(relative_position(base, G) for G in flags)
        assert c[(0, 1, 2)] == 1
        assert c[(1, 0, 2)] == q and c[(0, 2, 1)] == q
        assert c[(1, 2, 0)] == q * q and c[(2, 0, 1)] == q * q
        assert c[(2, 1, 0)] == q ** 3


def test_relative_position_input_checks():
    f2 = build_extension(2, 1)
    f4 = build_extension(2, 2)
    a = enumerate_flags(f2, 3, (1, 2))[0]
    b = enumerate_flags(f4, 3, (1, 2))[0]
    with pytest.raises(UsageError):
        relative_position(a, b)
    partial = enumerate_flags(f2, 3, (1,))[0]
    with pytest.raises(UsageError):
        relative_position(partial, partial)


def test_dl_point_counts_frozen():
    assert dl_point_count(2, 2, 1, "s1") == 0
    assert dl_point_count(2, 2, 2, "s1") == 2
    assert dl_point_tally(3, 2, 1) == {(0, 1, 2): 21}
    t = dl_point_tally(3, 2, 3)
    assert t[(1, 2, 0)] == 24 and t[(2, 0, 1)] == 24
    for e, total in COMPLETE_3_2_TOTALS.items():
        assert sum(dl_point_tally(3, 2, e).values()) == total
    assert dl_point_count(3, 2, 3, "s1 s2") == dl_point_count(3, 2, 3, (1, 2, 0))
    with pytest.raises(CapacityError):
        dl_point_tally(3, 2, 3, cap=100)


def test_omega_counts():
    assert omega_point_count(2, 2, 2) == 2
    assert omega_point_count(3, 2, 2) == 0
    assert omega_point_count(3, 2, 3) == 24
    # degree-1 extension leaves nothing off the rational hyperplanes
    assert omega_point_count(2, 5, 1) == 0
    # projective line: all points minus the rational ones
    assert omega_point_count(2, 3, 2) == (9 ** 2 - 1) // (9 - 1) - 4


def test_cochar_and_jumps():
    c = cochar((1, 0, 0))
    assert isinstance(c, Cochar) and c.nu == ((1, 0, 0),)
    assert cochar((1, 0), (2, 2)).nu == ((1, 0), (2, 2))
    assert nu_jump_dims((1, 0, 0)) == (1,)
    assert nu_jump_dims((2, 2, 0)) == (2,)
    assert nu_jump_dims((2, 1, 0)) == (1, 2)
    assert nu_jump_dims((1, 1, 1)) == ()
    with pytest.raises(UsageError):
        cochar((0, 1))  # must be weakly decreasing
    with pytest.raises(UsageError):
        cochar(())


def test_semistable_lines_over_gf4():
    f4 = build_extension(2, 2)
    lines = enumerate_flags(f4, 2, (1,))
    flags_ss = [fl for fl in lines if semistable((1, 0), fl, 2)]
    assert len(flags_ss) == 2
    rational = [fl for fl in lines if frobenius_flag(fl, 2) == fl]
    assert all(fl not in rational for fl in flags_ss)
    # type mismatch is an error, not False
    with pytest.raises(UsageError):
        semistable((1, 1, 0), lines[0], 2)


def test_period_domain_counts():
    assert period_point_count((1, 0), 2, 2) == 2
    assert period_point_count((1, 0, 0), 2, 3) == 24
    assert period_point_count((1, 0, 0), 2, 2) == 0
    # constant weights: the empty flag, one point
    assert period_point_count((1, 1, 1), 2, 3) == 1
    # invariance under shift and positive scaling of the weights
    assert period_point_count((2, 1, 1), 2, 3) == period_point_count((1, 0, 0), 2, 3)
    assert period_point_count((2, 0, 0), 2, 3) == period_point_count((1, 0, 0), 2, 3)
    assert period_point_count((3, 1), 3, 2) == period_point_count((1, 0), 3, 2)


def test_two_step_period_count_cross_checked():
    # n=3 full flags, nu with two jumps; brute force the count independently
    f8 = build_extension(2, 3)
    nu = (2, 1, 0)
    got = period_point_count(nu, 2, 3)
    brute = sum(1 for fl in enumerate_flags(f8, 3, (1, 2)) if semistable(nu, fl, 2))
    assert got == brute


def test_caps_are_enforced():
    with pytest.raises(CapacityError):
        period_point_count((1, 0, 0), 2, 3, cap=10)
    with pytest.raises(CapacityError):
        omega_point_count(3, 2, 3, cap=10)
