from itertools import combinations

import pytest

from awci.model import AnchoredInterval, AwciError, RangeError
from awci.oracle import judge_pair
from awci.synth import random_instance
from awci.tables import (
    BREAK_COST,
    build_pos_tables,
    dataset_fingerprint,
    load_cache,
    same_ridge,
    save_cache,
)
from conftest import make_dataset


@pytest.fixture(scope="module")
def demo_tables(demo):
    return build_pos_tables(demo)


def test_pos_demo(demo_tables):
    # S1[2] = {b,p} intersects S2 at {f,n,p}, {b,d}, {p}
    assert demo_tables.pos[0][1][2] == [2, 4, 10]
    # S1[3] = {x}; x absent from S3
    assert demo_tables.pos[0][2][3] == []


def test_pos_rows_sorted_and_correct(demo, demo_tables):
    for x in range(3):
        for y in range(3):
            if x == y:
                continue
            sx, sy = demo[x], demo[y]
            for i in range(1, len(sx) + 1):
                row = demo_tables.pos[x][y][i]
                assert row == sorted(set(row))
                expect = [k for k in range(1, len(sy) + 1) if sx.at(i) & sy.at(k)]
                assert row == expect


def test_pos_duality():
    for seed in range(20):
        ds = random_instance(seed)
        t = build_pos_tables(ds)
        m = len(ds)
        for x in range(m):
            for y in range(m):
                if x == y:
                    continue
                for i in range(1, len(ds[x]) + 1):
                    for k in t.pos[x][y][i]:
                        assert i in t.pos[y][x][k]


def test_ridge_c_demo(demo_tables):
    # S1 positions 3 ({x}) and 9 ({v,l}) share nothing with S3
    assert demo_tables.ridge_c[0][2] == [0, 0, 0, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2]
    # every S1 set intersects C(S2)
    assert demo_tables.ridge_c[0][1] == [0] * 13


def test_ridge_c_identical_strings():
    ds = make_dataset(("S", [["a"], ["b"]]), ("T", [["a"], ["b"]]))
    t = build_pos_tables(ds)
    assert t.ridge_c[0][1] == [0, 0, 0]


def test_ridge_c_steps_match_empty_rows():
    for seed in range(20):
        ds = random_instance(seed)
        t = build_pos_tables(ds)
        for x in range(len(ds)):
            for y in range(len(ds)):
                if x == y:
                    continue
                rc = t.ridge_c[x][y]
                for p in range(1, len(ds[x]) + 1):
                    step = rc[p] - rc[p - 1]
                    assert step % BREAK_COST in (0, 1)
                    assert (step % BREAK_COST == 1) == (not t.pos[x][y][p])


def test_same_ridge_demo(demo_tables):
    rc = demo_tables.ridge_c[0][2]
    assert same_ridge(rc, 4, 8, 0)
    assert not same_ridge(rc, 2, 4, 0)
    assert same_ridge(rc, 2, 4, 1)
    assert same_ridge(rc, 3, 3, 1)  # single position contributes at most 1
    with pytest.raises(RangeError):
        same_ridge(rc, 0, 2, 1)
    with pytest.raises(RangeError):
        same_ridge(rc, 5, 4, 1)


def test_same_ridge_blocked_by_contig_break():
    ds = make_dataset(("S", [["a"], ["a"]], [1]), ("T", [["a"]]))
    rc = build_pos_tables(ds).ridge_c[0][1]
    assert not same_ridge(rc, 1, 2, 100)
    assert same_ridge(rc, 1, 1, 0) and same_ridge(rc, 2, 2, 0)


def test_same_ridge_prefix_monotone():
    ds = random_instance(3)
    t = build_pos_tables(ds)
    rc = t.ridge_c[0][1]
    n = len(ds[0])
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            if same_ridge(rc, i, j, 1):
                for ii in range(i, j + 1):
                    for jj in range(ii, j + 1):
                        assert same_ridge(rc, ii, jj, 1)


def test_awci_pairs_live_on_one_ridge():
    # trivial indels count against any common set, so an accepted pair can
    # never span more than delta of them on either side
    for seed in range(15):
        ds = random_instance(seed, max_m=3, max_n=8)
        t = build_pos_tables(ds)
        for delta in (0, 1, 2):
            for xi, yi in combinations(range(len(ds)), 2):
                sx, sy = ds[xi], ds[yi]
                for (i, j) in sx.intervals():
                    for (k, l) in sy.intervals():
                        v = judge_pair(ds, AnchoredInterval(sx.id, i, j),
                                       AnchoredInterval(sy.id, k, l), delta)
                        if v.is_awci:
                            assert same_ridge(t.ridge_c[xi][yi], i, j, delta)
                            assert same_ridge(t.ridge_c[yi][xi], k, l, delta)


def test_build_requires_two_strings():
    ds = make_dataset(("S", [["a"]]))
    with pytest.raises(AwciError):
        build_pos_tables(ds)


def test_cache_roundtrip(tmp_path, demo, demo_tables):
    path = str(tmp_path / "tables.bin")
    save_cache(demo_tables, path)
    loaded = load_cache(demo, path)
    assert loaded is not None
    assert loaded.pos == demo_tables.pos
    assert loaded.ridge_c == demo_tables.ridge_c


def test_cache_rejects_stale_and_garbage(tmp_path, demo, demo_tables, witness):
    path = str(tmp_path / "tables.bin")
    save_cache(demo_tables, path)
    assert load_cache(witness, path) is None          # different dataset
    assert load_cache(demo, str(tmp_path / "nope")) is None  # missing file
    with open(path, "wb") as fh:
        fh.write(b"not a cache")
    assert load_cache(demo, path) is None


def test_fingerprint_sensitivity():
    a = make_dataset(("S", [["a"], ["b"]]), ("T", [["a"]]))
    b = make_dataset(("S", [["a"], ["b"]], [1]), ("T", [["a"]]))
    c = make_dataset(("S", [["a"], ["b"]]), ("T", [["a"]]))
    assert dataset_fingerprint(a) == dataset_fingerprint(c)
    assert dataset_fingerprint(a) != dataset_fingerprint(b)
