"""Smoke test for the pytangal extension.

Build first with `cargo build -p tangal-python` (or `--release`), then run
`python3 python/smoke.py`. Set PYTANGAL_LIB to load a specific library.
"""

import importlib.machinery
import importlib.util
import os
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load():
    cands = [os.environ.get("PYTANGAL_LIB")] + [
        str(ROOT / "target" / prof / "libpytangal.so") for prof in ("release", "debug")
    ]
    for path in filter(None, cands):
        if os.path.exists(path):
            loader = importlib.machinery.ExtensionFileLoader("pytangal", path)
            spec = importlib.util.spec_from_file_location("pytangal", path, loader=loader)
            mod = importlib.util.module_from_spec(spec)
            loader.exec_module(mod)
            return mod
    sys.exit("libpytangal.so not found; run `cargo build -p tangal-python` first")


def main():
    t = load()
    f2, f5, f7 = t.Field(2), t.Field(5), t.Field(7)
    assert t.Field(2, 2).q == 4

    # x^4 - 1 over F5 splits into four linear factors
    unit, facs = t.Poly(f5, [-1, 0, 0, 0, 1]).factor()
    assert unit == 1 and sorted(p.degree for p, _ in facs) == [1, 1, 1, 1]
    assert t.Poly(f2, [1, 1, 1]).is_irreducible()

    k3 = t.Algebra.diagonal(f5, 3)
    assert k3.is_separable() and k3.pi0()[0].dim == 3 and k3.point_count() == 3
    a = t.Algebra.from_json(k3.to_json())
    assert a.dim == 3

    mu6 = t.HopfAlgebra.mu(6, f2)
    assert not mu6.algebra.is_separable()
    assert mu6.pi0().dim == 3 and mu6.identity_component().dim == 2

    s3 = t.Group.named("S3")
    h = t.HopfAlgebra.constant(s3, f7)
    assert h.points_group().is_isomorphic(s3)
    rec = h.reconstruct()
    assert rec["status"] == "Isomorphism", rec["status"]

    sub = next(x for x in s3.subgroups() if len(x) == 2)
    x = t.GSet.cosets(s3, sub)
    m = x.linearize(f7)
    assert m.check()["first_failure"] is None
    assert m.spectrum().size == 3 and len(x.roundtrip(f7)) == 3
    assert len(m.comonoid_homs(m)) == len(x.homs(x))

    r = t.Representation.permutation(x, f7)
    triv = t.Representation.trivial(s3, f7)
    assert len(triv.hom_space(r)) == 1
    assert r.tensor(r).dim == 9 and r.dual().dual() == r

    f4 = t.Algebra.quotient(t.Poly(f2, [1, 1, 1]))
    z2 = t.Group.cyclic(2)
    mono = t.FrobeniusMonoid.from_algebra(t.Representation.trivial(z2, f2, 2), f4)
    try:
        mono.spectrum()
        raise AssertionError("expected NeedsExtension")
    except t.NeedsExtension:
        pass

    g = t.gamma_report(s3, f7)
    assert g["matched"] and g["order"] == 6
    try:
        t.gamma_report(t.Group.cyclic(12), f7)
        raise AssertionError("expected BudgetExceeded")
    except t.BudgetExceeded:
        pass

    try:
        t.Field(4)
        raise AssertionError("expected ValueError")
    except ValueError:
        pass

    s = t.run_suite(filter="pierce")
    assert s["all_passed"] and all(c["module"] == "pierce" for c in s["criteria"])
    print("pytangal smoke: ok")


if __name__ == "__main__":
    main()
