"""Smoke test for the saw_py extension module.

Run after `maturin develop -m crates/py/Cargo.toml`, or after
`cargo build -p saw-py --release --features extension-module`, in which case
the library is loaded straight from target/.
"""

import importlib.machinery
import importlib.util
import json
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load():
    try:
        import saw_py

        return saw_py
    except ImportError:
        pass
    for profile in ("release", "debug"):
        for name in ("libsaw_py.so", "libsaw_py.dylib", "saw_py.dll"):
            path = ROOT / "target" / profile / name
            if path.exists():
                loader = importlib.machinery.ExtensionFileLoader("saw_py", str(path))
                spec = importlib.util.spec_from_loader("saw_py", loader)
                module = importlib.util.module_from_spec(spec)
                loader.exec_module(module)
                return module
    sys.exit("saw_py is not built")


def main():
    saw = load()

    z2 = saw.Graph.catalog("zd:2")
    assert z2.degree == 4
    assert z2.count_saws(6) == [1, 4, 12, 36, 100, 284, 780]
    assert z2.count_saws(6, workers=1) == z2.count_saws(6, workers=3)

    ladder = saw.Graph.catalog("ladder")
    assert ladder.count_saws(10)[10] == 430

    tri = z2.augment("0@0,0", "0@1,1")
    assert tri.degree == 6 and tri.count_saws(2) == [1, 6, 30]

    q = saw.Quotient(z2, sublattice="2 0; 0 2")
    assert q.orbit_count() == 4 and q.is_symmetric()
    assert q.classify_type() == (2, 2)
    assert q.count_directed_saws(12)[12] < z2.count_saws(12)[12]
    events = q.event_counts(4, k=1)
    assert all(row[0] == 0 for row in events[1:])

    assert saw.bridge_counts(2, 6) == [1, 1, 3, 7, 17, 41, 101]

    triangle = saw.Quotient(saw.Graph.catalog("zd:1"), sublattice="3")
    assert triangle.classify_type() == (3, 3)
    cert = saw.certify_ratio(triangle, 20, mu_exact=1.0)
    assert cert.status == "certified", cert.status
    assert cert.r_final < 1.0
    assert cert.verify() == []
    again = saw.Certificate.from_json(cert.to_json())
    assert again.verify() == []
    forged = json.loads(cert.to_json())
    forged["inputs"]["events"][2] = "5"
    assert saw.Certificate.from_json(json.dumps(forged)).verify() != []

    try:
        saw.Graph.catalog("no-such-graph")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown catalog name accepted")

    print("saw_py smoke test passed")


if __name__ == "__main__":
    main()
