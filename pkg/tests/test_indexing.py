import numpy as np
import pytest

from sglnufft.indexing import (
    chi_to_k,
    coeff_count,
    k_to_chi,
    mu_to_nlm,
    mu_to_nlm_array,
    nlm_to_mu,
    perm_lmk_to_kml,
    perm_mk_to_km,
    perm_nlm_to_lmn,
)


def enumerate_triples(B):
    return [(n, l, m) for n in range(1, B + 1) for l in range(n) for m in range(-l, l + 1)]


class TestMuIndex:
    def test_count_formula(self):
        for B in (1, 2, 4, 30):
            assert coeff_count(B) == len(enumerate_triples(B))

    def test_first_and_enumerated_examples(self):
        assert tuple(mu_to_nlm(0, 4)) == (1, 0, 0)
        triples = enumerate_triples(4)
        assert tuple(mu_to_nlm(2, 4)) == triples[2] == (2, 1, -1)
        assert tuple(mu_to_nlm(4, 4)) == triples[4] == (2, 1, 1)

    def test_forward_examples(self):
        assert nlm_to_mu(1, 0, 0) == 0
        assert nlm_to_mu(2, 1, -1) == 2
        assert nlm_to_mu(3, 2, 2) == 13

    @pytest.mark.parametrize("B", [1, 2, 3, 8, 17, 64])
    def test_roundtrip_exhaustive(self, B):
        triples = mu_to_nlm_array(B)
        for mu in range(coeff_count(B)):
            n, l, m = mu_to_nlm(mu, B)
            assert (n, l, m) == tuple(triples[mu])
            assert nlm_to_mu(n, l, m) == mu

    def test_lexicographic_order(self):
        triples = [tuple(t) for t in mu_to_nlm_array(9)]
        assert triples == sorted(triples)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            mu_to_nlm(coeff_count(3), 3)
        with pytest.raises(ValueError):
            mu_to_nlm(-1, 3)
        with pytest.raises(ValueError):
            nlm_to_mu(2, 2, 0)


class TestFrequencyLinearization:
    def test_corner(self):
        assert chi_to_k(0, 3, 4) == (-2, -2, -2)

    def test_center(self):
        assert k_to_chi((0, 0, 0), 3, 4) == 2 + 4 * 2 + 16 * 2 == 42

    def test_roundtrip(self):
        for chi in range(64):
            assert k_to_chi(chi_to_k(chi, 3, 4), 3, 4) == chi

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            chi_to_k(64, 3, 4)
        with pytest.raises(ValueError):
            k_to_chi((2, 0, 0), 3, 4)


def lmn_order(B):
    return [(l, m, n) for l in range(B) for m in range(-l, l + 1)
            for n in range(l + 1, B + 1)]


def lmk_order(B):
    return [(l, m, k) for l in range(B) for m in range(-l, l + 1)
            for k in range(4 * B)]


def kml_order(B):
    return [(k, m, l) for k in range(4 * B) for m in range(-(B - 1), B)
            for l in range(abs(m), B)]


class TestPermutations:
    def test_first_triple_fixed(self):
        for B in (1, 3, 8):
            assert perm_nlm_to_lmn(0, B) == 0

    @pytest.mark.parametrize("B", [1, 2, 3, 5, 8])
    def test_nlm_to_lmn_against_sort_oracle(self, B):
        target = {t: i for i, t in enumerate(lmn_order(B))}
        for mu, (n, l, m) in enumerate(enumerate_triples(B)):
            assert perm_nlm_to_lmn(mu, B) == target[(l, m, n)], (mu, n, l, m)

    @pytest.mark.parametrize("B", [1, 2, 4])
    def test_lmk_to_kml_against_sort_oracle(self, B):
        # pins sgn(0) = 0: the m = 0 block must land between negative and
        # positive orders inside each kappa slab
        target = {t: i for i, t in enumerate(kml_order(B))}
        for psi, (l, m, k) in enumerate(lmk_order(B)):
            assert perm_lmk_to_kml(psi, B) == target[(k, m, l)], (psi, l, m, k)

    @pytest.mark.parametrize("B", [1, 2, 4, 8])
    def test_mk_to_km_against_sort_oracle(self, B):
        inp = [(m, k) for m in range(-(B - 1), B) for k in range(-2 * B, 2 * B)]
        target = {t: i for i, t in enumerate(
            [(k, m) for k in range(-2 * B, 2 * B) for m in range(-(B - 1), B)]
        )}
        for iota, (m, k) in enumerate(inp):
            assert perm_mk_to_km(iota, B) == target[(k, m)]

    @pytest.mark.parametrize("B", list(range(1, 17)))
    def test_bijectivity(self, B):
        img_s = sorted(perm_nlm_to_lmn(mu, B) for mu in range(coeff_count(B)))
        assert img_s == list(range(coeff_count(B)))
        img_u = sorted(perm_lmk_to_kml(psi, B) for psi in range(4 * B**3))
        assert img_u == list(range(4 * B**3))
        img_x = sorted(perm_mk_to_km(i, B) for i in range(4 * B * (2 * B - 1)))
        assert img_x == list(range(4 * B * (2 * B - 1)))

    def test_semantic_resort(self):
        # reading the (l,m,n)-ordered array at the permuted position returns
        # the entry stored at mu in (n,l,m) order
        B = 8
        rng = np.random.default_rng(0)
        data = rng.normal(size=coeff_count(B))
        resorted = np.empty_like(data)
        for mu in range(coeff_count(B)):
            resorted[perm_nlm_to_lmn(mu, B)] = data[mu]
        triples = enumerate_triples(B)
        by_lmn = {(l, m, n): data[nlm_to_mu(n, l, m)] for n, l, m in triples}
        expected = np.array([by_lmn[t] for t in lmn_order(B)])
        assert np.array_equal(resorted, expected)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            perm_lmk_to_kml(4 * 2**3, 2)
        with pytest.raises(ValueError):
            perm_mk_to_km(-1, 2)
