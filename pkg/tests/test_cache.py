import pytest

from orbvar.cache import (
    CacheError,
    StaleCacheError,
    TableCache,
    decode_weyl,
    encode_weyl,
    pack,
    unpack,
)
from orbvar.rootsys import build_root_system
from orbvar.weyl import WeylGroup


@pytest.fixture
def d4():
    return build_root_system("D4")


def test_d4_table_round_trips_byte_exactly(tmp_path, d4):
    cache = TableCache(tmp_path)
    W = cache.weyl_group(d4)
    first = cache.path("weyl", d4).read_bytes()
    again = TableCache(tmp_path)
    W2 = again.weyl_group(d4)
    assert again.hits == 1 and again.misses == 0
    assert [w.word for w in W2] == [w.word for w in W]
    assert [w.perm for w in W2] == [w.perm for w in W]
    assert pack(cache.header("weyl", d4), encode_weyl(W2)) == first


def test_algebra_round_trip(tmp_path, d4):
    cache = TableCache(tmp_path)
    alg = cache.algebra(d4)
    alg2 = TableCache(tmp_path).algebra(d4)
    assert alg2.constants == alg.constants
    assert alg2._table == alg._table


def test_other_stamp_rejected(tmp_path, d4):
    TableCache(tmp_path).weyl_group(d4)
    other = TableCache(tmp_path, stamp="something-else")
    with pytest.raises(StaleCacheError):
        other.read("weyl", d4)
    other.weyl_group(d4)
    assert other.hits == 0 and other.misses == 1
    newer = TableCache(tmp_path, stamp="something-else", version="99")
    with pytest.raises(StaleCacheError):
        newer.read("weyl", d4)


def test_corrupt_entry_rebuilt_with_warning(tmp_path, d4):
    cache = TableCache(tmp_path)
    W = cache.weyl_group(d4)
    p = cache.path("weyl", d4)
    blob = bytearray(p.read_bytes())
    blob[-3] ^= 0xFF
    p.write_bytes(bytes(blob))
    fresh = TableCache(tmp_path)
    with pytest.warns(RuntimeWarning, match="corrupt"):
        W2 = fresh.weyl_group(d4)
    assert fresh.rebuilt == 1
    assert [w.perm for w in W2] == [w.perm for w in W]
    # the rebuilt entry is valid again
    assert TableCache(tmp_path).weyl_group(d4) is not None


def test_unpack_rejects_garbage():
    with pytest.raises(CacheError):
        unpack(b"not a cache")
    blob = pack({"kind": "x"}, {"a": b"123"})
    with pytest.raises(CacheError):
        unpack(blob + b"extra")
    with pytest.raises(CacheError):
        unpack(blob[:-1])


def test_decode_rejects_wrong_size(d4):
    W = WeylGroup(d4)
    sections = encode_weyl(W)
    sections["perms"] = sections["perms"][:-2]
    with pytest.raises(CacheError):
        decode_weyl(d4, sections, 10 ** 7)


def test_env_var_sets_directory(tmp_path, monkeypatch):
    monkeypatch.setenv("ORBVAR_CACHE_DIR", str(tmp_path / "env"))
    cache = TableCache()
    assert cache.directory == tmp_path / "env"
    cache.weyl_group(build_root_system("A2"))
    assert [e["file"] for e in cache.entries()] == ["A2.weyl.orbc"]
    assert cache.entries()[0]["current"]
    assert cache.invalidate("A2") == 1
    assert cache.entries() == []


def test_cutoff_checked_before_loading(tmp_path):
    from orbvar.weyl import WeylError

    with pytest.raises(WeylError):
        TableCache(tmp_path).weyl_group(build_root_system("E8"))
