import json
from fractions import Fraction as F

import pytest

from spinlambda import linalg
from spinlambda.pairdatum import (
    DatumError,
    LatticeSpec,
    PairDatum,
    build_preset,
    check,
    decompose,
    dump,
    from_dict,
    load,
    pairing,
    reflect,
    rho,
    to_dict,
    validate,
)


def test_sp4r_preset(sp4r):
    assert len(sp4r.pos_roots_g) == 4
    assert len(sp4r.pos_roots_k) == 1
    assert set(sp4r.pos_roots_g) == {linalg.vec(r) for r in [(1, -1), (2, 0), (0, 2), (1, 1)]}


def test_sl2r_preset(sl2r):
    assert sl2r.pos_roots_g == ((F(2),),)
    assert sl2r.pos_roots_k == ()


def test_g2s_gamma2(g2s):
    assert g2s.pos_roots_k[1] == linalg.vec((-1, -1, 2))


def test_unknown_preset():
    with pytest.raises(DatumError, match="unknown preset"):
        build_preset("e8")


def test_validate_sp4r(sp4r):
    rd = validate(sp4r)
    assert set(rd.simple_g) == {linalg.vec((1, -1)), linalg.vec((0, 2))}
    assert rd.rho == (2, 1)
    assert rd.rho_c == (F(1, 2), F(-1, 2))


def test_validate_sl2r(sl2r):
    rd = validate(sl2r)
    assert rd.rho_c == (0,)
    assert rd.simple_k == ()


def test_k_root_not_g_root():
    d = PairDatum(2, [(1, -1), (2, 0), (0, 2), (1, 1)], [(1, 0)], LatticeSpec([(1, 0), (0, 1)]))
    with pytest.raises(DatumError, match="k-root not a g-root"):
        validate(d)


def test_not_closed():
    d = PairDatum(2, [(1, 0), (0, 1)], [], LatticeSpec([(1, 0), (0, 1)]))
    # A1 x A1 is fine; adding (1, 1) breaks closure
    assert check(d) == []
    bad = PairDatum(2, [(1, 0), (0, 1), (1, 1)], [], LatticeSpec([(1, 0), (0, 1)]))
    problems = check(bad)
    assert any("missing from the root set" in p for p in problems)


def test_non_reduced():
    d = PairDatum(1, [(1,), (2,)], [], LatticeSpec([(1,)]))
    assert any("twice" in p for p in check(d))


def test_not_positive_system():
    # B2 roots with a non-positive choice of signs
    d = PairDatum(2, [(1, 0), (0, 1), (1, -1), (-1, -1)], [], LatticeSpec([(1, 0), (0, 1)]))
    assert any("positive system" in p for p in check(d))


def test_gram_checks():
    d = PairDatum(1, [(2,)], [], LatticeSpec([(1,)]), gram=[[-1]])
    assert any("positive-definite" in p for p in check(d))
    d = PairDatum(2, [(1, 0)], [], LatticeSpec([(1, 0)]), gram=[[1, 1], [0, 1]])
    assert any("symmetric" in p for p in check(d))


def test_lattice_checks():
    d = PairDatum(1, [(2,)], [], LatticeSpec([(1,), (2,)], [((1, 1), 0)]))
    problems = check(d)
    assert any("dependent" in p for p in problems)
    assert any("modulus" in p for p in problems)


def test_nonidentity_gram():
    # A2 in simple-root coordinates with its Cartan-type Gram matrix
    d = PairDatum(
        2, [(1, 0), (0, 1), (1, 1)], [(1, 0)], LatticeSpec([(1, 0), (0, 1)]),
        gram=[[2, -1], [-1, 2]],
    )
    rd = validate(d)
    assert rd.rho == (1, 1)


def test_rho():
    assert rho([(F(1), F(-1)), (F(2), F(0)), (F(0), F(2)), (F(1), F(1))]) == (2, 1)
    assert rho([(F(1), F(-1))]) == (F(1, 2), F(-1, 2))
    assert rho([], 3) == (0, 0, 0)


def test_pairing(sp4r):
    v = linalg.vec((2, -1))
    a = linalg.vec((0, 2))
    assert pairing(sp4r, v, a)[0] == -2
    assert pairing(sp4r, a, a)[1] == 2
    assert pairing(sp4r, sp4r.zero(), a) == (0, 0)
    with pytest.raises(ValueError):
        pairing(sp4r, v, sp4r.zero())


def test_reflection_closure(preset):
    _, d = preset
    roots = set(validate(d).roots_g)
    for a in roots:
        assert {reflect(d, a, b) for b in roots} == roots


def test_rho_pairs_one_with_simple_roots(preset):
    _, d = preset
    rd = validate(d)
    for a in rd.simple_g:
        assert pairing(d, rd.rho, a)[1] == 1


def test_simple_root_decomposition(preset):
    _, d = preset
    rd = validate(d)
    for r in d.pos_roots_g:
        c = decompose(r, rd.simple_g)
        assert all(x >= 0 and x.denominator == 1 for x in c)


def test_lattice_roundtrip(g2s):
    mu = g2s.lattice_point((3, 1))
    assert g2s.lattice_coords(mu) == (3, 1)
    assert g2s.lattice_coords(g2s.lattice_point((1, 0))) is None  # a+b odd


def test_serialization_roundtrip(tmp_path, preset):
    _, d = preset
    path = tmp_path / "d.json"
    dump(d, path)
    assert load(path) == d
    raw = json.loads(path.read_text())
    assert all(isinstance(x, str) for r in raw["pos_roots_g"] for x in r)


def test_from_dict_accepts_pairs_and_ints():
    d = from_dict({
        "ambient_dim": 3,
        "pos_roots_g": [[1, -1, 0], [-2, 1, 1], [-1, 0, 1], [0, -1, 1], [1, -2, 1], [-1, -1, 2]],
        "pos_roots_k": [[1, -1, 0], [-1, -1, 2]],
        "lattice": {"basis": [["1/2", "-1/2", 0], ["-1/2", "-1/2", 1]], "congruences": [[[1, 1], 2]]},
    })
    assert d.pos_roots_g == build_preset("g2s").pos_roots_g
    assert d.lattice == build_preset("g2s").lattice


def test_from_dict_malformed():
    with pytest.raises(DatumError):
        from_dict({"pos_roots_g": []})
    with pytest.raises(DatumError):
        from_dict({"ambient_dim": 1, "pos_roots_g": [[0.5]]})


def test_to_dict_is_json(sp4r):
    json.dumps(to_dict(sp4r))
