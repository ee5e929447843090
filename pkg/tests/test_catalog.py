import json
from fractions import Fraction as F

import pytest

from torsion_atlas.catalog import (
    ISOGENY_WHITELIST,
    NonUniqueMaximum,
    TorsionStructure,
    builtin_catalog,
    load_catalog,
    p_primary,
    torsion_leq,
    torsion_max,
)
from torsion_atlas.numkernel import RatFunc, poly, poly_mul, poly_pow

T = TorsionStructure

# the 24 torsion structures of the classification: 7 cyclic, 17 noncyclic
EXPECTED_KEYS = sorted(
    [T(1, m) for m in (1, 3, 5, 7, 9, 13, 15)]
    + [T(3, 3), T(3, 15)]
    + [T(4, 4 * m) for m in (1, 2, 3, 4, 5, 6, 8)]
    + [T(5, 5)]
    + [T(8, 8 * m) for m in (1, 2, 3, 4)]
    + [T(12, 12), T(12, 24), T(16, 16)]
)


def test_torsion_structure_invariants():
    with pytest.raises(ValueError):
        T(2, 3)
    with pytest.raises(ValueError):
        T(0, 4)
    assert str(T(1, 5)) == "Z/5"
    assert str(T(4, 8)) == "Z/4+Z/8"
    assert T(2, 6).order() == 12


def test_partial_order():
    assert torsion_leq(T(1, 5), T(5, 5))
    assert not torsion_leq(T(4, 4), T(1, 3)) and not torsion_leq(T(1, 3), T(4, 4))
    assert torsion_leq(T(4, 8), T(8, 16))
    assert not torsion_leq(T(8, 8), T(4, 32))
    keys = EXPECTED_KEYS
    for a in keys:
        for b in keys:
            if torsion_leq(a, b) and torsion_leq(b, a):
                assert a == b
            for c in keys:
                if torsion_leq(a, b) and torsion_leq(b, c):
                    assert torsion_leq(a, c)


def test_torsion_max():
    assert torsion_max([T(1, 1), T(1, 3), T(3, 15)]) == T(3, 15)
    assert torsion_max([T(1, 1)]) == T(1, 1)
    with pytest.raises(NonUniqueMaximum):
        torsion_max([T(4, 4), T(1, 3)])
    with pytest.raises(ValueError):
        torsion_max([])


def test_p_primary():
    assert p_primary(T(8, 24), 2) == T(8, 8)
    assert p_primary(T(8, 24), 3) == T(1, 3)
    assert p_primary(T(1, 1), 5) == T(1, 1)


def test_catalog_keys_match_classification():
    cat = builtin_catalog()
    assert sorted(cat.entries) == EXPECTED_KEYS
    assert sum(1 for t in cat.entries if t.a == 1) == 7
    assert sum(1 for t in cat.entries if t.a > 1) == 17


def test_catalog_basic_invariants():
    cat = builtin_catalog()
    assert cat.isogeny_whitelist == ISOGENY_WHITELIST
    assert ISOGENY_WHITELIST == frozenset(range(1, 20)) | {21, 25, 27, 37, 43, 67, 163}
    for t, entry in cat.entries.items():
        assert 240 % t.a == 0
        assert entry.maps or entry.constants
        n = t.order()
        for p in (2, 3, 5, 7, 13):
            while n % p == 0:
                n //= p
        assert n == 1, f"{t} involves a prime outside 2,3,5,7,13"


def test_finite_rows_content():
    cat = builtin_catalog()
    assert cat.entries[T(1, 15)].constants == frozenset(
        [F(-25, 2), F(-349938025, 8), F(-121945, 32), F(46969655, 32768)])
    assert cat.entries[T(3, 15)].constants == frozenset(
        [F(-1680914269, 32768), F(1331, 8)])
    assert cat.entries[T(12, 24)].constants == frozenset([F(8000)])


def test_function_type_entry_count():
    cat = builtin_catalog()
    assert sum(1 for e in cat.entries.values() if e.maps) == 21


def test_cm_table_contents():
    cat = builtin_catalog()
    assert len(cat.cm_table) == 15
    labels = {rec["label"] for rec in cat.cm_table}
    assert {"27a1", "36a1", "49a1", "121b1", "26569a1"} <= labels


def _expand(numfactors, denfactors, numscale=1, denscale=1):
    num = poly([numscale])
    for f, e in numfactors:
        num = poly_mul(num, poly_pow(poly(f), e))
    den = poly([denscale])
    for f, e in denfactors:
        den = poly_mul(den, poly_pow(poly(f), e))
    return RatFunc(num, den)


def test_checksum_row_expansion():
    """Re-expand spot rows from factored form, digit for digit."""
    cat = builtin_catalog()
    # Z/5: 25 (t^2+10t+5)^3 / t^5
    assert cat.entries[T(1, 5)].maps[0] == _expand(
        [([5, 10, 1], 3)], [([0, 1], 5)], 25)
    # Z/13: (t^2-t+1)^3 P12(t)^3 / ((t-1)^13 t^13 (t^3-4t^2+t+1))
    p12 = [1, -3, -4, 25, -23, -22, 40, -16, 22, -40, 29, -9, 1]
    assert cat.entries[T(1, 13)].maps[0] == _expand(
        [([1, -1, 1], 3), (p12, 3)],
        [([-1, 1], 13), ([0, 1], 13), ([1, 1, -4, 1], 1)])
    # Z/5+Z/5 row
    assert cat.entries[T(5, 5)].maps[0] == _expand(
        [([5, 5, 1], 3), ([25, 0, 5, 0, 1], 3), ([25, 25, 20, 5, 1], 3)],
        [([0, 1], 5), ([25, 25, 15, 5, 1], 5)])
    # Z/16+Z/16: 16 (t^4-2t^3+2t^2+2t+1)^3 (t^4+2t^3+2t^2-2t+1)^3 / (t^4 (t^4-1)^4)
    assert cat.entries[T(16, 16)].maps[0] == _expand(
        [([1, 2, 2, -2, 1], 3), ([1, -2, 2, 2, 1], 3)],
        [([-1, 1], 4), ([0, 1], 4), ([1, 1], 4), ([1, 0, 1], 4)], 16)
    # Z/8+Z/8 full-2-torsion route: 64 (t^2+3)^3 / ((t-1)^2 (t+1)^2)
    assert cat.entries[T(8, 8)].maps[0] == _expand(
        [([3, 0, 1], 3)], [([-1, 1], 2), ([1, 1], 2)], 64)


def test_load_catalog_rejects_damage(tmp_path):
    import importlib.resources as res
    data = json.loads(res.files("torsion_atlas.data").joinpath("jmaps.json").read_text())
    del data["entries"][0]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    with pytest.raises(ValueError):
        load_catalog(bad)
    data2 = json.loads(res.files("torsion_atlas.data").joinpath("jmaps.json").read_text())
    data2["isogeny_whitelist"] = [1, 2, 3]
    bad2 = tmp_path / "bad2.json"
    bad2.write_text(json.dumps(data2))
    with pytest.raises(ValueError):
        load_catalog(bad2)


def test_noncanonical_variant_is_kept_for_the_record():
    cat = builtin_catalog()
    shelved = cat.shelved_maps.get(T(1, 7))
    assert shelved, "the uncorrected print of the Z/7 row should be on file"
    # and it is genuinely different from the canonical map
    assert shelved[0] != cat.entries[T(1, 7)].maps[0]


def test_two_primary_rows_produce_two_torsion_curves():
    # any structure containing Z/4+Z/4 forces a rational 2-torsion point, so
    # sampled values of those rows must be j-invariants of 2-torsion curves
    import random
    from torsion_atlas.numkernel import Pole, ratfunc_eval
    from torsion_atlas.weierstrass import WeierstrassModel, has_rational_two_torsion
    rng = random.Random(7)
    cat = builtin_catalog()
    for t, entry in cat.entries.items():
        if t.a % 4:
            continue
        for jmap in entry.maps:
            done = 0
            while done < 4:
                x = F(rng.randint(-12, 12), rng.randint(1, 6))
                try:
                    j = ratfunc_eval(jmap, x)
                except Pole:
                    continue
                if j in (0, 1728):
                    continue
                a4 = 3 * j * (1728 - j)
                a6 = 2 * j * (1728 - j) ** 2
                m = WeierstrassModel.from_ainvs([0, 0, 0, a4, a6])
                assert has_rational_two_torsion(m), (t, x, j)
                done += 1


def test_three_divisible_rows_co_match_a_three_part_row():
    # a structure with 3 | b carries a 3-part, so its specializations must
    # also be matched by one of the two 3-part rows
    import random
    from torsion_atlas.classifier import classify_j
    from torsion_atlas.numkernel import Pole, ratfunc_eval
    rng = random.Random(8)
    cat = builtin_catalog()
    for t, entry in cat.entries.items():
        if t.b % 3 or not entry.maps:
            continue
        jmap = entry.maps[0]
        done = 0
        while done < 4:
            x = F(rng.randint(-12, 12), rng.randint(1, 6))
            try:
                j = ratfunc_eval(jmap, x)
            except Pole:
                continue
            if j == 0:
                continue
            matched = {(m.torsion.a, m.torsion.b) for m in classify_j(j, cat).matched}
            assert (1, 3) in matched or (3, 3) in matched, (t, x)
            done += 1


def test_jmap_entry_requires_content():
    from torsion_atlas.catalog import JMapEntry
    with pytest.raises(ValueError):
        JMapEntry(T(1, 3), (), frozenset())


def test_catalog_dump_is_loadable(tmp_path, capsys):
    from torsion_atlas.cli import main
    rc = main(["catalog"])
    assert rc == 0
    dumped = capsys.readouterr().out
    path = tmp_path / "dump.json"
    path.write_text(dumped)
    cat = load_catalog(path)
    assert sorted(cat.entries) == EXPECTED_KEYS
