import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE: dict[int, str] = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[criterion] = f"criterion {criterion:2d}: {'PASS' if ok else 'FAIL'}  {detail}"


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])


def word_traces(generators, max_len: int) -> np.ndarray:
    """|trace| of every reduced word of length 1..max_len, in one array."""
    mats = []
    for g in generators:
        mats += [g.array, g.inverse().array]
    mats = np.array(mats)
    n = len(mats)
    cur = mats.copy()
    last = np.arange(n)
    out = [np.abs(np.trace(cur, axis1=1, axis2=2))]
    for _ in range(max_len - 1):
        nxt, lst = [], []
        for k in range(n):
            keep = last != (k ^ 1)
            nxt.append(cur[keep] @ mats[k])
            lst.append(np.full(keep.sum(), k))
        cur, last = np.concatenate(nxt), np.concatenate(lst)
        out.append(np.abs(np.trace(cur, axis1=1, axis2=2)))
    return np.concatenate(out)
