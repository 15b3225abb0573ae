from fractions import Fraction as Q
from math import factorial

import pytest

from fmzv.doubleshuffle import (check_depth1_even_vanishing,
                                check_dm_conditions, dm_basis,
                                dm_closure_bracket, eds_weight_space,
                                hoffman_word, iota, pi_Y, psi_star,
                                reg_shuffle_forward, reg_shuffle_inverse,
                                reg_stuffle_forward, reg_stuffle_inverse,
                                twos_word, verify_formal_zagier,
                                verify_level_one_identity, xi3, xi5,
                                xword_to_yword, zf2_power, zf_dim, zf_reduce)
from fmzv.exact import RowReducer
from fmzv.words import (NCPoly, STUFFLE, is_primitive, parse_poly, parse_word,
                        quasi_shuffle, shuffle, stuffle, word, words_of_weight,
                        x_word)


def proportional(p, q):
    for w, c in p.terms.items():
        d = q.coeff(w)
        if d == 0:
            return False
        return p == q.scale(c / d)
    return q.is_zero()


class TestProjections:
    def test_pi_Y(self):
        assert pi_Y(NCPoly.from_word(parse_word("X", "x0x1"))) == \
            NCPoly.from_word(word("Y", [2]))
        assert pi_Y(NCPoly.from_word(parse_word("X", "x0x1x0"))).is_zero()
        assert pi_Y(NCPoly.from_word(parse_word("X", "x1x0x1"))) == \
            NCPoly.from_word(word("Y", [1, 2]))
        assert pi_Y(NCPoly.one("X")) == NCPoly.one("Y")

    def test_iota_roundtrip(self):
        for n in range(1, 6):
            for w in words_of_weight("Y", n):
                assert xword_to_yword(iota(w)) == w

    def test_psi_star(self):
        assert psi_star(NCPoly.zero("X")).is_zero()
        got = psi_star(NCPoly.from_word(parse_word("X", "x0x0x1")))
        expected = NCPoly.from_word(word("Y", [3])) + \
            NCPoly.from_word(word("Y", [1, 1, 1]), Q(1, 3))
        assert got == expected


class TestDmConditions:
    def test_xi3(self):
        assert check_dm_conditions(xi3())

    def test_xi5(self):
        assert check_dm_conditions(xi5())

    def test_x0x1_fails(self):
        assert not check_dm_conditions(NCPoly.from_word(x_word([0, 1])))

    def test_psi_star_of_xi3_primitive(self):
        assert is_primitive(psi_star(xi3()), STUFFLE)

    def test_bracket_closure(self):
        br = dm_closure_bracket(xi3(), xi5())
        assert br.max_weight() == 8
        assert check_dm_conditions(br)
        assert dm_closure_bracket(xi3(), xi3()).is_zero()


def direct_dm_basis(w):
    """Oracle: impose all four conditions on raw word coordinates."""
    ws = list(words_of_weight("X", w))
    index = {t: i for i, t in enumerate(ws)}
    rows = []
    if w == 1:
        rows.append({index[x_word([0])]: Q(1)})
        rows.append({index[x_word([1])]: Q(1)})
    if w == 2:
        rows.append({index[x_word([0, 1])]: Q(1)})
    for a in range(1, w):
        for u in words_of_weight("X", a):
            for v in words_of_weight("X", w - a):
                prod = shuffle(u, v)
                rows.append({index[t]: c for t, c in prod.terms.items()})
    ydicts = []
    for t in ws:
        ydicts.append(psi_star(NCPoly.from_word(t)))
    for a in range(1, w):
        for u in words_of_weight("Y", a):
            for v in words_of_weight("Y", w - a):
                prod = stuffle(u, v)
                row = {}
                for i, yp in enumerate(ydicts):
                    c = sum((yp.coeff(t) * ct for t, ct in prod.terms.items()),
                            Q(0))
                    if c:
                        row[i] = c
                if row:
                    rows.append(row)
    red = RowReducer()
    for r in rows:
        red.add(r)
    out = []
    for lam in red.kernel_basis(len(ws)):
        p = NCPoly.zero("X")
        for i, c in enumerate(lam):
            if c:
                p = p + NCPoly.from_word(ws[i], c)
        out.append(p)
    return out


class TestDmBasis:
    def test_dimensions(self):
        assert [len(dm_basis(w)) for w in range(3, 9)] == [1, 0, 1, 0, 1, 1]

    def test_weight3_is_xi3(self):
        (b3,) = dm_basis(3)
        assert proportional(b3, xi3())

    def test_weight5_is_xi5(self):
        (b5,) = dm_basis(5)
        assert proportional(b5, xi5())

    def test_all_outputs_pass_conditions(self):
        for w in range(3, 9):
            for p in dm_basis(w):
                assert check_dm_conditions(p)

    def test_against_direct_kernel(self):
        # both routes must produce the same subspace
        for w in range(1, 6):
            lyndon_route = dm_basis(w)
            direct_route = direct_dm_basis(w)
            assert len(lyndon_route) == len(direct_route)
            if lyndon_route:
                red = RowReducer()
                ws = list(words_of_weight("X", w))
                index = {t: i for i, t in enumerate(ws)}
                for p in direct_route:
                    red.add({index[t]: c for t, c in p.terms.items()})
                for p in lyndon_route:
                    assert not red.reduce(
                        {index[t]: c for t, c in p.terms.items()})

    def test_depth1_even_vanishing(self):
        for w in range(3, 9):
            for p in dm_basis(w):
                assert check_depth1_even_vanishing(p, w)
        # negative control
        assert not check_depth1_even_vanishing(
            NCPoly.from_word(x_word([0, 0, 0, 1])), 4)


class TestRegularization:
    def test_stuffle_examples(self):
        assert reg_stuffle_inverse(word("Y", [2])) == \
            {0: NCPoly.from_word(word("Y", [2]))}
        assert reg_stuffle_inverse(word("Y", [1])) == {1: NCPoly.one("Y")}
        got = reg_stuffle_inverse(word("Y", [1, 2]))
        assert got == {
            0: -NCPoly.from_word(word("Y", [2, 1])) - NCPoly.from_word(word("Y", [3])),
            1: NCPoly.from_word(word("Y", [2])),
        }

    def test_shuffle_examples(self):
        assert reg_shuffle_inverse(parse_word("X", "x0x1")) == \
            {(0, 0): NCPoly.from_word(parse_word("X", "x0x1"))}
        assert reg_shuffle_inverse(parse_word("X", "x1")) == \
            {(1, 0): NCPoly.one("X")}
        got = reg_shuffle_inverse(parse_word("X", "x1x0x1"))
        assert got == {
            (0, 0): NCPoly.from_word(parse_word("X", "x0x1x1"), -2),
            (1, 0): NCPoly.from_word(parse_word("X", "x0x1")),
        }

    def test_roundtrips(self):
        for n in range(1, 6):
            for w in words_of_weight("Y", n):
                assert reg_stuffle_forward(reg_stuffle_inverse(w)) == \
                    NCPoly.from_word(w)
        for n in range(1, 6):
            for w in words_of_weight("X", n):
                assert reg_shuffle_forward(reg_shuffle_inverse(w)) == \
                    NCPoly.from_word(w)

    def test_outputs_live_in_the_right_span(self):
        for n in range(1, 5):
            for w in words_of_weight("Y", n):
                for p in reg_stuffle_inverse(w).values():
                    for t in p.terms:
                        assert not t.letters or t.letters[0] != 1
            for w in words_of_weight("X", n):
                for p in reg_shuffle_inverse(w).values():
                    for t in p.terms:
                        assert not t.letters or (t.letters[0] == 0
                                                 and t.letters[-1] == 1)


class TestEds:
    def test_weight1(self):
        space = eds_weight_space(1)
        assert space.quotient_dim == 0
        assert zf_reduce(NCPoly.from_word(x_word([0])), 1).is_zero()
        assert zf_reduce(NCPoly.from_word(x_word([1])), 1).is_zero()

    def test_weight2(self):
        assert zf_dim(2) == 1

    def test_euler_relation(self):
        assert zf_reduce(parse_poly("X", "x0x1x1 - x0x0x1"), 3).is_zero()

    def test_powers_of_x0_die(self):
        for k in range(1, 6):
            assert zf_reduce(NCPoly.from_word(x_word([0] * k)), k).is_zero()
            assert zf_reduce(NCPoly.from_word(x_word([1] * k)), k).is_zero()

    def test_dimension_table(self):
        assert [zf_dim(n) for n in range(0, 9)] == [1, 0, 1, 1, 1, 2, 2, 3, 4]

    def test_inhomogeneous_rejected(self):
        with pytest.raises(ValueError):
            zf_reduce(NCPoly.one("X") + NCPoly.from_word(x_word([0, 1])), 2)

    def test_congruence(self):
        # reduce(u sh v) == reduce(reduce(u) sh reduce(v))
        for wa in range(1, 4):
            for wb in range(1, 8 - wa - 3):
                for u in list(words_of_weight("X", wa))[::2]:
                    for v in list(words_of_weight("X", wb))[::3]:
                        pu, pv = NCPoly.from_word(u), NCPoly.from_word(v)
                        direct = zf_reduce(shuffle(pu, pv), wa + wb)
                        nested = zf_reduce(shuffle(zf_reduce(pu, wa),
                                                   zf_reduce(pv, wb)), wa + wb)
                        assert direct == nested

    def test_relation_basis_annihilated(self):
        space = eds_weight_space(4)
        m = space.relation_basis
        for i in range(m.rows):
            p = NCPoly("X", {space._cols[j]: m[i, j] for j in range(m.cols)})
            assert zf_reduce(p, 4).is_zero()


class TestIdentities:
    def test_even_zeta_values(self):
        # zf(4) = 2/5 zf(2)^2 and zf(6) = 8/35 zf(2)^3
        z4 = NCPoly.from_word(x_word([0, 0, 0, 1])) - zf2_power(2).scale(Q(2, 5))
        assert zf_reduce(z4, 4).is_zero()
        z6 = NCPoly.from_word(x_word([0] * 5 + [1])) - zf2_power(3).scale(Q(8, 35))
        assert zf_reduce(z6, 6).is_zero()

    def test_all_twos(self):
        for n in (1, 2, 3):
            p = NCPoly.from_word(twos_word(n)) - \
                zf2_power(n).scale(Q(6 ** n, factorial(2 * n + 1)))
            assert zf_reduce(p, 2 * n).is_zero()

    def test_level_one_small(self):
        assert verify_level_one_identity(1)
        assert verify_level_one_identity(2)

    def test_zagier_small(self):
        assert verify_formal_zagier(0, 0)
        assert verify_formal_zagier(1, 0)
        assert verify_formal_zagier(0, 1)

    def test_hoffman_word(self):
        assert hoffman_word(1, 1) == parse_word("X", "x0x1x0x0x1x0x1")
