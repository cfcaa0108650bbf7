"""Smoke test for the pyqwalk extension module.

Build and install first:  pip install --no-build-isolation ./crates/python
"""

import cmath
import json
import math
import sys

import pyqwalk


def close(a, b, tol=1e-12):
    return abs(a - b) <= tol


def main():
    g4 = pyqwalk.coin("G4")
    assert all(close(g4[i][j], -0.5 if i == j else 0.5) for i in range(4) for j in range(4))

    probs = {x: p for x, p in pyqwalk.line_walk(3, 1.0, 0.0) if p > 1e-15}
    want = {-3: 0.125, -1: 0.625, 1: 0.125, 3: 0.125}
    assert probs.keys() == want.keys() and all(close(probs[x], want[x]) for x in want), probs
    assert close(sum(probs.values()), 1.0)

    graph, ports = pyqwalk.gadget("wire", 3)
    assert json.loads(ports)["depth"] == 3
    state = json.dumps([[0, 0, 1.0, 0.0]])
    trace = pyqwalk.simulate(graph, state, 2)
    assert len(trace) == 3 and all(close(sum(row), 1.0) for row in trace)

    source = "qubits 3\nh 3\ncnot 1 3\ncnot 2 3\np 3\n"
    graph, ports, placement = pyqwalk.compile(source)
    assert json.loads(placement)["depth"] == 31
    report = pyqwalk.verify(source)
    assert report["fidelity"] >= 1 - 1e-9, report

    rows = pyqwalk.pst([4], delta_steps=3, phase_steps=1)
    assert (4, 0.5, 0.0, "0", 8, 4) in rows, rows

    h = [[1 / math.sqrt(2), 1 / math.sqrt(2)], [1 / math.sqrt(2), -1 / math.sqrt(2)]]
    w = cmath.exp(0.7j)
    f, phase = pyqwalk.compare(h, [[w * z for z in row] for row in h])
    assert close(f, 1.0) and close(phase, 0.7)

    try:
        pyqwalk.coin("nonsense")
    except ValueError:
        pass
    else:
        raise AssertionError("bad coin label accepted")

    print("pyqwalk smoke test: ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
