import cmath
import math

import pytest

import tropdyn

LINE = {"terms": [{"exp": [1, 0], "re": 1, "im": 0},
                  {"exp": [0, 1], "re": 1, "im": 0},
                  {"exp": [0, 0], "re": 1, "im": 0}]}


def test_line_hypersurface():
    h = tropdyn.hypersurface(LINE)
    assert h["balanced"]
    rays = sorted(tuple(c["rays"][0]) for c in h["cells"])
    assert rays == [(-1, -1), (0, 1), (1, 0)]
    assert all(c["weight"] == 1 for c in h["cells"])
    assert tropdyn.check_balancing(h)["balanced"]


def test_add_doubles_weights():
    h = tropdyn.hypersurface(LINE)
    s = tropdyn.add_cycles(h, h)
    assert s["balanced"]
    assert sorted(c["weight"] for c in s["cells"]) == [2, 2, 2]


def test_bergman_counts():
    for n in range(1, 5):
        for p in range(1, n + 1):
            fan = tropdyn.bergman_fan(p, n)
            assert len(fan["cells"]) == math.comb(n + 1, p)
            assert tropdyn.check_balancing(fan)["balanced"]


def test_orbits_p2():
    fan = {"ambient": 2, "cones": [{"rays": [[1, 0], [0, 1]]},
                                   {"rays": [[0, 1], [-1, -1]]},
                                   {"rays": [[-1, -1], [1, 0]]}]}
    dims = sorted(o["dim"] for o in tropdyn.orbits(fan)["orbits"])
    assert dims == [0, 0, 0, 1, 1, 1, 2]


def test_weyl_sum_matches_brute_force():
    for m in (2, 3, 5):
        for nu in ([0, 0], [1, 0], [m, -2 * m], [3, 4]):
            brute = 1
            for v in nu:
                brute *= sum(cmath.exp(2j * math.pi * l * v / m) for l in range(m))
            assert abs(tropdyn.weyl_sum(m, nu) - brute) < 1e-9


def test_roots_and_dequantization():
    roots = tropdyn.mth_roots([8], 3)
    assert len(roots) == 3
    assert all(abs(r[0] ** 3 - 8) < 1e-12 for r in roots)
    found = sorted(tropdyn.polynomial_roots([-2, 0, 1]), key=lambda z: z.real)
    assert abs(found[0] + math.sqrt(2)) < 1e-10 and abs(found[1] - math.sqrt(2)) < 1e-10
    v = [1.0, 0.5, -2.0]
    for h in (1.0, 0.1, 0.01):
        s = tropdyn.dequantized_sum(v, h)
        assert max(v) <= s <= max(v) + h * math.log(len(v)) + 1e-12


def test_hausdorff_and_convergence():
    assert tropdyn.hausdorff([[0.0, 0.0]], [[3.0, 4.0]]) == pytest.approx(5.0)
    r = tropdyn.convergence_report("hausdorff-to-tropical", [4, 8], poly=LINE, resolution=101, phases=16)
    assert r["ms"] == [4, 8]
    assert r["errors"][1] < r["errors"][0]


def test_errors_and_cli():
    with pytest.raises(ValueError):
        tropdyn.bergman_fan(3, 2)
    code, out, err = tropdyn.run("bergman", "--p", 1, "--n", 2)
    assert code == 0 and '"cells"' in out
    code, _, err = tropdyn.run("nonsense")
    assert code == 2 and "usage error" in err
