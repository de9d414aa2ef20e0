"""Smoke test for the Python bindings.

Build first with `cargo build --release -p nichols-py --features extension-module`
(or `maturin develop -m crates/py/Cargo.toml`), then run `python3 python/smoke.py`.
"""

import importlib.util
import json
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load():
    try:
        import nichols  # noqa: F401

        return nichols
    except ImportError:
        pass
    for profile in ("release", "debug"):
        for name in ("libnichols.so", "libnichols.dylib", "nichols.dll"):
            lib = ROOT / "target" / profile / name
            if lib.exists():
                tmp = pathlib.Path(tempfile.mkdtemp()) / "nichols.so"
                shutil.copy(lib, tmp)
                spec = importlib.util.spec_from_file_location("nichols", tmp)
                module = importlib.util.module_from_spec(spec)
                spec.loader.exec_module(module)
                return module
    sys.exit("nichols extension not found; build crates/py first")


def main():
    nichols = load()

    g = nichols.Group("heisenberg:n=1,m=3")
    assert g.order == 27
    sizes = sorted(size for _, size, _ in g.conjugacy_classes())
    assert sizes == [1] * 3 + [3] * 8, sizes
    assert g.center_order() == 3 and g.commutator_order() == 3
    assert g.mul("(1,0,0)", "(0,1,0)") == "(1,1,1)"
    again = nichols.Group.from_json("heis", g.to_json())
    assert again.order == 27

    audit = g.audit()
    assert audit["violations"] == 0
    report = g.classify()
    assert report["abelian_pairs"] == [] and report["families"] == []

    u = nichols.Group("unitriangular4:m=3")
    out = u.type_c("(1,1,1,0,0,0)")
    assert out["outcome"] == "type_c" and out["witness"]["h_order"] == 27

    a2 = nichols.Braiding.diagonal("[[w,w],[w,w]]")
    profile = a2.dim_profile(9)
    assert sum(profile["dims"]) == 27 and profile["certified_total"] == 27
    assert a2.verdict()["dim"] == {"finite": 27}

    q = nichols.Group("heisenberg_quotient:n=1,m=6,N=2")
    k = q.character_values("(1,0,0)").index("1/3")
    m = nichols.Braiding.module(q, "(1,0,0)", k)
    assert m.dim == 2 and m.satisfies_braid_equation()
    back = nichols.Braiding.from_json(m.to_json())
    assert json.loads(back.to_json()) == json.loads(m.to_json())
    assert sum(m.dim_profile(9)["dims"]) == 27

    ufo = nichols.diagonal_verdict("[[2/3,1/12],[0/12,2/3]]")
    assert "finite" in ufo["dim"]

    try:
        nichols.Group("nope:m=2")
    except ValueError:
        pass
    else:
        raise AssertionError("bad spec accepted")

    print("python bindings: ok")


if __name__ == "__main__":
    main()
