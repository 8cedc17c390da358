"""Smoke test for the gooddecomp extension module.

Build and install first, e.g. `pip install --no-build-isolation -e crates/py`.
"""

import gooddecomp as gd


def main():
    k4 = gd.Graph.from_graph6("C~")
    assert k4 == gd.complete(4)
    assert k4.to_graph6() == "C~"
    assert gd.degree_class(k4) == "cubic"

    d, trace = gd.decompose_clawfree(k4)
    assert gd.verify(k4, d)["ok"]
    assert trace[0][0] == "TRI_333"
    assert gd.Decomposition.from_json(d.to_json()) == d

    p = gd.petersen()
    assert not gd.is_claw_free(p)
    assert gd.find_claw(p) is not None
    outcome, dp, nodes = gd.find_good_decomposition(p)
    assert outcome == "good" and gd.verify(p, dp)["ok"]
    assert gd.find_good_decomposition(p, max_nodes=3)[0] == "budget_exceeded"
    _, method = gd.decompose_auto(p)
    assert method == "exact"

    c5 = gd.Graph.from_graph6("Dhc")
    assert len(gd.find_induced_cycle_longer_than(c5, 4)) == 5
    assert not gd.is_four_chordal(c5)

    tri = gd.Graph(3, [(0, 1), (1, 2), (0, 2)])
    assert gd.count_good_decompositions(tri) == 3
    bad = gd.Decomposition(tree=[(0, 1)], matching=[(0, 2), (1, 2)])
    report = gd.verify(tri, bad)
    codes = {code for code, _ in report["violations"]}
    assert not report["ok"] and "MATCHING_SHARED_VERTEX" in codes

    try:
        gd.decompose_clawfree(gd.Graph(4, [(0, 1), (2, 3)]))
    except gd.PreconditionFailed as e:
        assert e.args[0] == "PRECONDITION_DISCONNECTED"
    else:
        raise AssertionError("disconnected graph accepted")

    g = gd.random_connected_subcubic(12, 7, "claw_free")
    assert g == gd.random_connected_subcubic(12, 7, "claw_free")
    assert gd.verify(g, gd.decompose_clawfree(g)[0])["ok"]
    assert "graph G {" in g.to_dot()

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
