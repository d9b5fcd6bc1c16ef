"""Smoke test for the kvfcl Python module.

Run after building the extension, e.g. `pip install --no-build-isolation ./crates/py`
or with the compiled library on PYTHONPATH.
"""

import json

import kvfcl


def main():
    assert "heis_go_1" in kvfcl.corpus_names()
    assert "thm-3.9" in kvfcl.statement_ids()

    heis = kvfcl.Space.builtin("heis_go_1")
    assert heis.dimension == 4
    assert heis.basis == ["e1", "e2", "e3", "D"]
    assert heis.bracket("e1", "e2") == ["0", "0", "1", "0"]

    assert heis.check_constant_length("e3").startswith("CertifiedTrue")
    assert heis.check_constant_length("e1") == "RefutedAt word (e2,1): F=2 vs 1"

    report = json.loads(heis.check("e1", samples=100, seed=7))
    assert report["exit_code"] == 1
    assert report["parameters"]["seed"] == 7

    e2 = kvfcl.Space.builtin("e2_plane")
    assert e2.is_pure_imaginary("x")
    assert not e2.is_compact_vector("x")
    assert e2.char_poly("0,1,0") == e2.char_poly("x")

    so3 = kvfcl.Space.from_json(kvfcl.Space.builtin("so3").to_json())
    assert so3.is_compact_vector("e1")
    verify = json.loads(so3.verify(samples=30))
    assert verify["summary"]["failed"] == 0
    assert verify["exit_code"] == 0
    assert so3.verify(samples=30) == so3.verify(samples=30)

    sl2 = kvfcl.Space.builtin("sl2_hyperbolic")
    assert not sl2.is_pure_imaginary("h")

    assert kvfcl.block_determinant("1", "2") == ("-1250", "-1250")

    try:
        heis.char_poly("1,2")
    except ValueError:
        pass
    else:
        raise AssertionError("bad field accepted")

    print("kvfcl smoke test passed:", kvfcl.__version__)


if __name__ == "__main__":
    main()
