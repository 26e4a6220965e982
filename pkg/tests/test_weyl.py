import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from spinlambda import linalg
from spinlambda.pairdatum import DatumError, validate
from spinlambda.weyl import (
    CapExceeded,
    compute_W1,
    compute_W1_mu,
    generate,
    inversion_set,
    make_dominant,
    prepare,
    reflection_matrix,
)

from _sampling import g_chamber, rand_in_cone, rand_vector

ORDERS = {"sl2r": (2, 1, 2), "sp4r": (8, 2, 4), "g2s": (12, 4, 3)}


def test_group_orders(preset):
    name, d = preset
    wd = prepare(d)
    assert (len(wd.W_g), len(wd.W_k), len(wd.W1)) == ORDERS[name]
    assert len(wd.W1) * len(wd.W_k) == len(wd.W_g)


def test_trivial_group(sp4r):
    grp = generate([], sp4r.gram)
    assert len(grp) == 1
    assert grp.identity.matrix == linalg.identity(2)


def test_cap(g2s):
    rd = validate(g2s)
    with pytest.raises(CapExceeded, match="cap=5"):
        generate(rd.simple_g, g2s.gram, cap=5)


def test_elements_are_well_formed(preset):
    _, d = preset
    wd = prepare(d)
    roots = set(wd.roots.roots_g)
    gens = [reflection_matrix(a, d.gram) for a in wd.roots.simple_g]
    g = d.gram
    for w in wd.W_g:
        m = w.matrix
        assert linalg.matmul(linalg.matmul(linalg.transpose(m), g), m) == g
        assert {w(a) for a in roots} == roots
        prod = linalg.identity(d.ambient_dim)
        for i in w.word:
            prod = linalg.matmul(prod, gens[i])
        assert prod == m
        assert linalg.matmul(m, w.inverse) == linalg.identity(d.ambient_dim)


def test_deterministic_order(preset):
    _, d = preset
    wd = prepare(d)
    keys = [(len(w.word), w.word) for w in wd.W_g]
    assert keys == sorted(keys)
    assert len({w.matrix for w in wd.W_g}) == len(wd.W_g)


def test_make_dominant_examples(sp4r, sl2r):
    v, u = make_dominant(sp4r, linalg.vec((F(-1, 2), F(1, 2))), sp4r.pos_roots_k)
    assert v == (F(1, 2), F(-1, 2))
    assert u(linalg.vec((F(-1, 2), F(1, 2)))) == v
    v, u = make_dominant(sp4r, linalg.vec((3, 1)), sp4r.pos_roots_k)
    assert v == (3, 1) and u.word == ()
    for x in (-5, 0, 7):
        v, u = make_dominant(sl2r, linalg.vec((x,)), sl2r.pos_roots_k)
        assert v == (x,) and u.word == ()


def _orbit_dominant(d, v, group, pos):
    """Oracle: the unique dominant point of the orbit, by enumeration."""
    hits = {w(v) for w in group if all(d.inner(w(v), a) >= 0 for a in pos)}
    assert len(hits) == 1
    return hits.pop()


@settings(max_examples=40, deadline=None)
@given(st.randoms(use_true_random=False))
def test_make_dominant_matches_orbit_oracle(rng):
    from spinlambda.pairdatum import build_preset

    for name in ORDERS:
        d = build_preset(name)
        wd = prepare(d)
        v = rand_vector(rng, d.ambient_dim)
        for pos, grp in ((d.pos_roots_k, wd.W_k), (d.pos_roots_g, wd.W_g)):
            dom, u = make_dominant(d, v, pos)
            assert dom == _orbit_dominant(d, v, grp, pos)
            assert u(v) == dom
            # W-invariance of the dominant representative
            for w in grp:
                assert make_dominant(d, w(v), pos)[0] == dom


def test_W1_sp4r_images(sp4r):
    rd = validate(sp4r)
    images = {w(rd.rho) for w in compute_W1(sp4r)}
    assert images == {linalg.vec(p) for p in [(2, 1), (2, -1), (1, -2), (-1, -2)]}


def test_W1_brute_force(sp4r):
    # oracle: all 8 signed permutations of (2,1) with x >= y
    images = set()
    for a, b in [(2, 1), (1, 2)]:
        for sa in (1, -1):
            for sb in (1, -1):
                if sa * a >= sb * b:
                    images.add(linalg.vec((sa * a, sb * b)))
    assert len(images) == 4
    assert {w(validate(sp4r).rho) for w in compute_W1(sp4r)} == images


def test_W1_chambers_inside_k_chamber(preset):
    # w C(g) subset of C(k): images of random g-dominant points stay k-dominant
    _, d = preset
    rng = random.Random(7)
    cham = g_chamber(d)
    for w in compute_W1(d):
        for _ in range(30):
            x = rand_in_cone(rng, cham)
            assert all(d.inner(w(x), a) >= 0 for a in d.pos_roots_k)


def test_W1_mu_examples(sp4r, sl2r):
    assert [w.word for w in compute_W1_mu(sp4r, (2, 2))] == [()]
    ws = compute_W1_mu(sp4r, (1, 0))
    assert len(ws) == 1
    assert ws[0].matrix == linalg.matrix([[1, 0], [0, -1]])
    assert len(compute_W1_mu(sl2r, (0,))) == 2


def test_W1_mu_rejects_non_dominant(sp4r):
    with pytest.raises(DatumError, match="not k-dominant"):
        compute_W1_mu(sp4r, (0, 1))


def test_W1_mu_subset_and_nonempty(preset):
    _, d = preset
    w1 = set(compute_W1(d))
    rng = random.Random(3)
    from _sampling import random_ktypes

    name = preset[0]
    for coords in random_ktypes(rng, d, name, 60):
        ws = compute_W1_mu(d, d.lattice_point(coords))
        assert ws and set(ws) <= w1


def test_rho_minus_w_rho_is_inversion_sum(preset):
    _, d = preset
    wd = prepare(d)
    rd = wd.roots
    for w in wd.W_g:
        diff = linalg.sub(rd.rho, w(rd.rho))
        total = d.zero()
        for gamma in inversion_set(d, w):
            total = linalg.sub(total, gamma)
        assert diff == total
        # nonnegative integer combination of positive roots
        c = linalg.solve(linalg.transpose(rd.simple_g), diff)
        assert all(x >= 0 and x.denominator == 1 for x in c)
