#!/usr/bin/env python3
"""Smoke test for the bhseq_py extension module.

Builds nothing itself: it loads the cdylib produced by
`cargo build -p bhseq-py [--release]` straight from the target
directory and exercises every exposed entry point against known values.
"""

import importlib.util
import sys
from importlib.machinery import ExtensionFileLoader
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load_module():
    candidates = [
        ROOT / "target" / "release" / "libbhseq_py.so",
        ROOT / "target" / "debug" / "libbhseq_py.so",
    ]
    for path in candidates:
        if path.exists():
            loader = ExtensionFileLoader("bhseq_py", str(path))
            spec = importlib.util.spec_from_loader("bhseq_py", loader)
            mod = importlib.util.module_from_spec(spec)
            loader.exec_module(mod)
            print(f"loaded {path}")
            return mod
    sys.exit("no extension found; run: cargo build -p bhseq-py --release")


def main():
    m = load_module()

    assert m.greedy_sequence(2, 6) == [0, 1, 3, 7, 12, 20, 30]
    assert m.greedy_sequence(3) == [0, 1, 4, 13, 32]
    assert [m.closed_form_term(h, 4) for h in (1, 2, 3, 4, 5)] == [4, 12, 32, 55, 108]
    assert m.a4_floor_form(7) == m.closed_form_term(7, 4) == 8 * m.a4_cofactor(7)
    assert m.upper_bound_sum(2, 4) == 15
    assert m.min_unblocked(3) == 32

    assert m.is_bh_set([0, 1, 3, 7, 12], 2)
    assert not m.is_bh_set([0, 1, 2], 2)
    assert m.find_collision([0, 1, 2], 2) == ([0, 2], [1, 1])
    assert m.count_representations([0, 1, 3, 7], 2, 10) == 1

    assert m.collision_witness(2, 8) == (1, 0, 0, 0, 1, 0, 1)
    assert m.collision_witness(2, 12) is None
    assert m.blocked_intervals(2) == [(1, 11), (13, 14)]

    t = m.SupportTable([0, 1, 4], 3)
    assert t.h == 3 and t.max_element == 4
    assert not t.admissible(9)
    assert t.admissible(13)
    assert t.support_size(1) == 3
    assert len(t) == 10
    t.insert(13)
    assert len(t) == 20  # C(6, 3): the four-element set keeps the property
    assert t.passes_cardinality_check()
    assert t.memory_bytes() > 0
    assert "SupportTable(h=3" in repr(t)

    try:
        m.greedy_sequence(0, 4)
    except ValueError:
        pass
    else:
        raise AssertionError("h = 0 should raise ValueError")

    try:
        m.upper_bound_sum(4_000_000_000, 6)
    except OverflowError:
        pass
    else:
        raise AssertionError("oversized bound should raise OverflowError")

    print(f"bhseq_py {m.__version__}: all smoke checks passed")


if __name__ == "__main__":
    main()
