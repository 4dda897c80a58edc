import os
import subprocess
import sys

import numpy as np
import pytest

from drfcodes.cli import main
from drfcodes.codes import build_c1, build_c2, build_c2_general
from drfcodes.config import CodeConfig
from drfcodes.errors import HeaderMismatch, ShardFormatError
from drfcodes.gf import Field, binary_field, prime_field
from drfcodes.shards import (
    HEADER_SIZE,
    ShardHeader,
    bytes_to_symbols,
    data_array,
    data_bytes,
    read_shard,
    shard_name,
    stripe_count,
    symbols_to_bytes,
)
from drfcodes.stripes import decode_stripes, encode_stripes, erase, parity_residual_stripes
from drfcodes.storage import decode_dir, encode_file, repair_dir, verify_dir

CODES = {
    "c1-gf256": lambda: build_c1(2, binary_field(8)),
    "c2-gf16": lambda: build_c2(2, binary_field(4)),
    "c2-gf7": lambda: build_c2(2, prime_field(7)),
    "c2gen-gf2^12": lambda: build_c2_general(2, 1, 2, binary_field(12)),
    "c2-prime257": lambda: build_c2(3, prime_field(257)),
}


def one_stripe_bytes(code):
    return 2 * code.k * code.field.data_bits // 8


@pytest.mark.parametrize("ident", ["gf2^8", "gf2^4", "gf2^3", "gf2^12", "gf2^16", "prime:7", "prime:65521"])
@pytest.mark.parametrize("length", [0, 1, 2, 7, 300])
def test_symbol_packing_roundtrip(ident, length):
    f = Field.parse(ident)
    data = os.urandom(length)
    sym = bytes_to_symbols(data, f)
    assert sym.size == -(-8 * length // f.data_bits)
    assert (sym < f.order).all()
    assert symbols_to_bytes(sym, f, length) == data


@pytest.mark.parametrize("name", sorted(CODES))
def test_layout_roundtrip(name):
    code = CODES[name]()
    unit = one_stripe_bytes(code)
    for length in (0, 1, max(unit, 1), 3 * unit + 1):
        data = os.urandom(length)
        arr = data_array(data, code)
        assert arr.shape == (code.k, 2, stripe_count(length, code))
        assert data_bytes(encode_stripes(code, arr), code, length) == data


def test_layout_index_mapping():
    # symbol t lands in stripe t // 2k, node (t % 2k) // 2, row t % 2
    code = build_c2(2, binary_field(8))
    data = bytes(range(20))
    arr = data_array(data, code)
    for t in range(20):
        s, j, r = t // 8, (t % 8) // 2, t % 2
        assert arr[j, r, s] == t


def test_stripe_decode_all_pairs():
    code = build_c2(3, binary_field(8))
    gen = np.random.default_rng(0)
    cw = encode_stripes(code, gen.integers(0, 256, size=(code.k, 2, 11)))
    assert not parity_residual_stripes(code, cw).any()
    for pair in [(0, 1), (3, 8), (7, 8)]:
        assert np.array_equal(decode_stripes(code, erase(cw, pair)), cw)


def test_header_roundtrip():
    code = build_c2_general(2, 3, 1, binary_field(4))
    h = ShardHeader.for_code(code, 4, 123456789, 987654321)
    blob = h.pack()
    assert blob[:4] == b"DRF1" and len(blob) == HEADER_SIZE + 2 * len(code.lambdas)
    back, off = ShardHeader.unpack(blob)
    assert back == h and off == len(blob)
    with pytest.raises(ShardFormatError):
        ShardHeader.unpack(b"XXXX" + blob[4:])
    with pytest.raises(ShardFormatError):
        ShardHeader.unpack(blob[:10])


def test_storage_roundtrip_and_repair(tmp_path):
    code = build_c2(2, binary_field(4))
    data = os.urandom(1001)
    encode_file(code, data, tmp_path)
    S = stripe_count(len(data), code)
    for lost in range(code.n):
        original = (tmp_path / shard_name(lost)).read_bytes()
        (tmp_path / shard_name(lost)).unlink()
        st = repair_dir(code, tmp_path, lost, "access")
        assert (tmp_path / shard_name(lost)).read_bytes() == original
        assert st.downloaded_symbols == st.per_stripe_downloaded * S
        assert st.downloaded_bytes == st.downloaded_symbols
    assert verify_dir(code, tmp_path) == (code.n, S)
    (tmp_path / shard_name(0)).unlink()
    (tmp_path / shard_name(5)).unlink()
    assert decode_dir(code, tmp_path) == data


def test_prime_field_shards_use_two_bytes(tmp_path):
    code = build_c2(2, prime_field(7))
    encode_file(code, b"hello", tmp_path)
    h, col = read_shard(tmp_path / shard_name(0))
    size = (tmp_path / shard_name(0)).stat().st_size
    assert size == HEADER_SIZE + 2 * len(code.lambdas) + 2 * 2 * h.stripes
    assert decode_dir(code, tmp_path) == b"hello"


def test_mismatched_header_rejected(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    encode_file(build_c2(2, binary_field(8)), b"x" * 50, a)
    encode_file(build_c2(2, binary_field(8)), b"y" * 51, b)
    os.replace(b / shard_name(3), a / shard_name(3))
    with pytest.raises(HeaderMismatch):
        decode_dir(build_c2(2, binary_field(8)), a)
    with pytest.raises(HeaderMismatch):
        decode_dir(build_c1(2, binary_field(8)), b)


# -- CLI ----------------------------------------------------------------------

def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cli_code_new(tmp_path, capsys):
    cfg = tmp_path / "c1.cfg"
    rc, out, _ = run(capsys, "code", "new", "--family", "c1", "--m", "2", "--field", "gf2^4", "-o", str(cfg))
    assert rc == 0 and "n=8" in out
    text = cfg.read_text()
    assert CodeConfig.load(cfg).to_text() == text
    rc, _, err = run(capsys, "code", "new", "--family", "c1", "--m", "2", "--field", "gf2^2")
    assert rc == 1 and err.startswith("error: FieldTooSmall")
    rc, _, err = run(capsys, "code", "new", "--family", "c2", "--m", "2", "--field", "prime:5", "--lambdas", "0,1")
    assert rc == 1 and "BadLambdas" in err
    rc, _, err = run(capsys, "code", "new", "--family", "c2gen", "--l1", "1", "--l2", "1")
    assert rc == 1 and "ConfigError" in err
    rc, out, _ = run(capsys, "code", "new", "--family", "c2gen", "--l1", "2", "--l2", "2", "--l3", "1")
    assert rc == 0 and out.startswith("family=c2gen\n")


def test_cli_show_and_oracle(tmp_path, capsys):
    cfg = tmp_path / "c.cfg"
    run(capsys, "code", "new", "--family", "c1", "--m", "1", "--field", "gf2^2", "-o", str(cfg))
    rc, out, _ = run(capsys, "code", "show", "--code", str(cfg))
    assert rc == 0 and out.count("gamma=3") == 4
    rc, out, _ = run(capsys, "oracle", "--code", str(cfg), "--node", "2")
    assert rc == 0
    header, line = out.splitlines()[:2]
    row = dict(zip(header.split(), line.split()))
    assert row["node"] == "2" and row["min_gamma"] == "3" and row["rowspaces"] == "357"
    assert row["joint_optimum"] == "(3,3)"


def test_cli_file_workflow(tmp_path, capsys):
    cfg = tmp_path / "c2.cfg"
    run(capsys, "code", "new", "--family", "c2", "--m", "2", "--field", "gf2^4", "-o", str(cfg))
    src = tmp_path / "in.bin"
    data = os.urandom(5000)
    src.write_bytes(data)
    shards = tmp_path / "shards"
    assert run(capsys, "encode", "--code", str(cfg), "--in", str(src), "--out", str(shards))[0] == 0
    assert len(list(shards.glob("node_*.shard"))) == 6
    S = stripe_count(len(data), CodeConfig.load(cfg).build())

    original = (shards / shard_name(5)).read_bytes()
    (shards / shard_name(5)).unlink()
    rc, out, _ = run(capsys, "repair", "--code", str(cfg), "--from", str(shards), "--lost", "5", "--strategy", "access")
    kv = dict(line.split("=", 1) for line in out.splitlines())
    assert rc == 0
    assert int(kv["downloaded_symbols"]) == 8 * S
    assert int(kv["downloaded_bytes"]) == 8 * S
    assert (shards / shard_name(5)).read_bytes() == original

    rc, out, _ = run(capsys, "read", "--code", str(cfg), "--from", str(shards), "--node", "1", "--row", "0", "--stripe", "3")
    assert rc == 0 and "accessed_symbols=5" in out

    (shards / shard_name(0)).unlink()
    (shards / shard_name(3)).unlink()
    dst = tmp_path / "out.bin"
    assert run(capsys, "decode", "--code", str(cfg), "--from", str(shards), "--out", str(dst))[0] == 0
    assert dst.read_bytes() == data
    (shards / shard_name(1)).unlink()
    rc, _, err = run(capsys, "decode", "--code", str(cfg), "--from", str(shards), "--out", str(dst))
    assert rc == 3 and "TooManyErasures" in err


def test_cli_corruption_detected(tmp_path, capsys):
    cfg = tmp_path / "c.cfg"
    run(capsys, "code", "new", "--family", "c2", "--m", "2", "-o", str(cfg))
    src = tmp_path / "in.bin"
    src.write_bytes(os.urandom(400))
    shards = tmp_path / "s"
    run(capsys, "encode", "--code", str(cfg), "--in", str(src), "--out", str(shards))
    assert run(capsys, "verify", "--code", str(cfg), "--from", str(shards))[0] == 0
    p = shards / shard_name(2)
    blob = bytearray(p.read_bytes())
    blob[-1] ^= 0x5A
    p.write_bytes(bytes(blob))
    rc, _, err = run(capsys, "verify", "--code", str(cfg), "--from", str(shards))
    assert rc == 3 and "InconsistentSymbols" in err
    rc, _, err = run(capsys, "verify", "--code", str(tmp_path / "missing.cfg"), "--from", str(shards))
    assert rc == 2


def test_cli_zero_length(tmp_path, capsys):
    cfg = tmp_path / "c.cfg"
    run(capsys, "code", "new", "--family", "c1", "--m", "1", "--field", "gf2^2", "-o", str(cfg))
    src = tmp_path / "empty"
    src.write_bytes(b"")
    shards = tmp_path / "s"
    run(capsys, "encode", "--code", str(cfg), "--in", str(src), "--out", str(shards))
    for j in range(4):
        h, col = read_shard(shards / shard_name(j))
        assert h.stripes == 0 and h.length == 0 and col.shape == (2, 0)
    dst = tmp_path / "out"
    assert run(capsys, "decode", "--code", str(cfg), "--from", str(shards), "--out", str(dst))[0] == 0
    assert dst.read_bytes() == b""
    rc, out, _ = run(capsys, "repair", "--code", str(cfg), "--from", str(shards), "--lost", "0")
    assert rc == 0 and "downloaded_bytes=0" in out


def test_cli_bounds(capsys):
    rc, out, _ = run(capsys, "bounds", "--n", "6", "--lines")
    kv = dict(line.split("=", 1) for line in out.splitlines())
    assert rc == 0
    assert kv["delta3"] == "38" and kv["delta3_argmin"] == "2,2,2"
    assert kv["c2_access_bandwidth"] == "5/6"
    rc, out, _ = run(capsys, "bounds", "--n", "6")
    assert "note:" in out
    rc, _, err = run(capsys, "bounds", "--n", "3")
    assert rc == 1 and "BadParameters" in err


def test_cli_compare(tmp_path, capsys):
    rc, out, _ = run(capsys, "compare", "--nmax", "8", "--format", "csv", "--measure")
    assert rc == 0
    rows = [line.split(",") for line in out.splitlines()]
    header = rows[0]
    recs = [dict(zip(header, r)) for r in rows[1:]]
    c1 = [r for r in recs if r["code"] == "c1" and r["n"] == "8"]
    assert c1 and c1[0]["gamma"] == "2/3" and c1[0]["Gamma"] == "11/12"
    gkwx = [r for r in recs if r["code"].startswith("GKWX")]
    assert gkwx and gkwx[0]["n"] == "6" and gkwx[0]["gamma"] == "5/8" and gkwx[0]["Gamma"] == "47/48"
    fig = tmp_path / "cmp.png"
    rc, out, _ = run(capsys, "compare", "--nmax", "24", "--format", "tsv", "--plot", str(fig), "--no-reference")
    assert rc == 0 and fig.stat().st_size > 10_000
    assert "\t" in out.splitlines()[0] and "GKWX" not in out


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "drfcodes", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("drfcodes ")
