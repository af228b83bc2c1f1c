"""Smoke test for the outerext extension module.

Build first, e.g. `maturin develop -m crates/py/Cargo.toml`, or copy
target/release/libpyouterext.so to outerext.so somewhere on sys.path.
"""

import os

import outerext as ox

DATA = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "data")


def main():
    P = ox.Partition
    assert P("2,1^2") == P([2, 1, 1])
    assert P("3,1").conjugate() == P("2,1,1")
    assert P("3,2").dimension() == 5
    assert [str(p) for p in ox.partitions(3)] == ["3", "2,1", "1,1,1"]
    assert sorted(ox.hook_family(9)) == sorted(P(s) for s in ["1^9", "2,1^6", "3,1^4", "4,1^2", "5"])
    assert ox.lie_rep(3) == ("1*2,1", 2)

    r = ox.solve(P("4"), P("1^9"), [0, 0, 0, 2, 1])
    assert isinstance(r, ox.ContradictionReport) and r.forced_value == -1
    assert ox.solve(P("2"), P("1^3"), [0]) == 0

    mult = ox.MultTable.load([os.path.join(DATA, "degree3.mult")], max_degree=5)
    assert mult.get(P("1^3"), P("2")) == 1
    assert mult.get(P("3,1"), P("2")) is None
    assert mult.coverage_degree() == 3
    assert ox.ext2(3, mult) == ("0", 0)
    try:
        ox.ext2(4, mult)
    except ox.CoverageError:
        pass
    else:
        raise AssertionError("degree 4 is not covered")

    ext, reports = ox.recursion(3, mult)
    assert reports == [] and ext.get(P("2"), P("1^3"), 1) == 1

    t1 = ox.ExtTable.load(os.path.join(DATA, "table1.ext"))
    assert t1.get(P("2,1"), P("1^5"), 2) == 1

    code, out, _ = ox.cli(["--data", os.path.join(DATA, "table1.ext"), "ext2", "--n", "7"])
    assert code == 0 and "dim = 6718" in out
    assert "Ext^5" in ox.diagram(3, 8)
    print("ok")


if __name__ == "__main__":
    main()
