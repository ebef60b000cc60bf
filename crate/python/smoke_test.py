"""Smoke test for the geokernel extension module.

Build and install first:  pip install --no-build-isolation -e crates/python
"""

import cmath
import math

import geokernel as gk

LN3 = math.log(3)


def close(a, b, tol=1e-12):
    assert abs(a - b) <= tol, (a, b)


def main():
    o, h = gk.HPoint(0, 0), gk.HPoint(0.5, 0)
    close(gk.h_dist(o, h), LN3)
    close(h.dist(o), LN3)
    close(h.to_klein().real, 0.8)
    close(gk.HPoint.from_klein(0.8, 0).x, 0.5)
    close(gk.klein_dist(0j, 0.8 + 0j), LN3)

    p, q = gk.HPoint(0.2, 0.3), gk.HPoint(-0.6, 0.1)
    d = gk.h_dist(p, q)
    close(math.tanh(d / 2), abs(p.z - q.z) / abs(1 - p.z.conjugate() * q.z))

    l = gk.HLine.from_ideal(cmath.exp(0.3j), cmath.exp(2.5j))
    x = gk.HPoint(0.1, -0.4)
    to_a, to_b = l.parallels(x)
    ends = l.ideal_points
    close(min(abs(e - ends[0]) for e in to_a.ideal_points), 0, 1e-12)
    close(min(abs(e - ends[1]) for e in to_b.ideal_points), 0, 1e-12)
    assert to_a.intersection(l) is None
    assert l.contains(l.foot(x))
    close(l.reflect(l.reflect(x)).x, x.x, 1e-12)

    inc = gk.HCircle.ideal_incircle(1 + 0j, complex(-0.5, math.sqrt(3) / 2), complex(-0.5, -math.sqrt(3) / 2))
    close(inc.hradius, LN3 / 2, 1e-9)
    close(gk.angle_of_parallelism(LN3 / 2), math.pi / 3)
    close(gk.h_circumference(1.0), 2 * math.pi * math.sinh(1.0))

    b = gk.bolyai(l, x)
    close(b["qr"], b["pt"][0], 1e-9)

    f = gk.Moebius.from_three_points(0.2 + 0.3j, 1 - 1j, -0.5 + 2j)
    assert f(0.2 + 0.3j) == 0 and f(-0.5 + 2j) is None
    close(f.inverse()(f(0.7 + 0.1j)).real, 0.7)
    close(gk.invert(0.5 + 0j, 0j, 1.0).real, 2.0)

    close(gk.s_excess(gk.SPoint(1, 0, 0), gk.SPoint(0, 1, 0), gk.SPoint(0, 0, 1)), math.pi / 2)

    code, report = gk.run_script("hpoint O = (0, 0)\nhpoint P = (0.5, 0)\nhdist d = O P\nassert_eq d ln(3) tol 1e-12\n")
    assert code == 0 and report["status"] == "pass", report
    code, _ = gk.run_script("hpoint P = (1.5, 0)\n")
    assert code == 3
    try:
        gk.run_script("hdist d = O P\n")
    except ValueError as e:
        assert str(e).startswith("1:")
    else:
        raise AssertionError("parse error not raised")
    svg = gk.render_script("hline l = ideal 0 2\n", 300)
    assert svg.startswith("<svg") and " A " in svg
    print("geokernel smoke test: ok")


if __name__ == "__main__":
    main()
