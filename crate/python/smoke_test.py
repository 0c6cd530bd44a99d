#!/usr/bin/env python3
"""Smoke test for the pybalsim extension module.

Builds are picked up from the cargo target directory; run either

    cargo build -p pybalsim --release
    python3 python/smoke_test.py

or install the module properly with maturin and delete the path juggling.
"""

import pathlib
import shutil
import sys
import sysconfig
import tempfile


def import_pybalsim():
    try:
        import pybalsim  # noqa: F401 -- already installed
        return pybalsim
    except ImportError:
        pass
    root = pathlib.Path(__file__).resolve().parent.parent
    candidates = [
        root / "target" / profile / "libpybalsim.so"
        for profile in ("release", "debug")
    ]
    built = next((c for c in candidates if c.exists()), None)
    if built is None:
        sys.exit("libpybalsim.so not found; run `cargo build -p pybalsim --release` first")
    stage = pathlib.Path(tempfile.mkdtemp(prefix="pybalsim-"))
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    shutil.copy(built, stage / f"pybalsim{suffix}")
    sys.path.insert(0, str(stage))
    import pybalsim
    return pybalsim


def main():
    bs = import_pybalsim()

    # residue arithmetic and orders
    assert bs.mod_inverse(2, 5) == 3
    assert bs.mult_order(2, 5) == 4
    assert bs.proj_mult_order(2, 5) == 2
    assert bs.size_period(2, 5) == 20
    assert bs.v2(12) == 2
    try:
        bs.mod_inverse(2, 4)
    except RuntimeError as e:
        assert "not invertible" in str(e)
    else:
        raise AssertionError("2 mod 4 must not invert")

    # stencil coefficients
    w = bs.Stencil("2,1,1", 5)
    assert (w.sigma, w.sigma_k) == (4, [4])
    pascal = bs.Stencil("pascal:2", 5)
    assert pascal.sigma == 3

    # orbit values from the worked 1-D example
    assert w.orbit_value("ap:0,1", [4], 1) == 0
    assert w.orbit_value("ap:0,1", [2], 3) == 0
    assert bs.Stencil("pascal:1", 7).orbit_value("delta", [2], 4) == 6  # C(4,2)

    # simplex extraction: the published triangle at apex (2,2)
    counts, total, balanced, witness = w.simplex_counts("ap:0,1", [2], 2, "++", 5)
    assert counts == {0: 2, 1: 2, 2: 4, 3: 5, 4: 2}
    assert total == 15 and not balanced and witness == (0, 3)

    # arithmetic simplices: the mod-12 multiplicity table
    table = bs.arith_counts(12, 0, [1, 5], 12)
    assert [table[x] for x in range(12)] == [5, 6, 7, 8] * 3
    assert not bs.arith_balanced(12, 0, [1, 5], 12)
    assert bs.arith_balanced(5, 0, [1, 2], 4)

    # Steinhaus triangles
    assert bs.steinhaus_rows(2, [0, 0, 1]) == [[0, 0, 1], [0, 1], [1]]
    assert bs.steinhaus_balanced(2, [0, 0, 1])
    count, rows = bs.search_balanced(2, 3)
    assert count == 4 and [0, 0, 1] in rows
    count, _ = bs.search_balanced(15, 5, symmetry=True, collect=False, shards=4)
    assert count == 0

    # arithmetic-first-row balance at the admissible sizes
    passed, instances, failures = bs.check_chap1(3, 0, 1, 2)
    assert passed and instances == 2 and not failures

    print("pybalsim smoke test: OK")


if __name__ == "__main__":
    main()
