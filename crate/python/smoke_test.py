"""Smoke test for the rootfold Python bindings."""

import rootfold


def main():
    a2 = rootfold.RootDatum.from_cartan_type("A2:sc")
    assert a2.rank == 2 and a2.num_roots == 6
    assert a2.type_label() == "A2"
    assert a2.weyl_order() == 6
    assert a2.cartan_matrix() == [[2, -1], [-1, 2]]

    flip = a2.diagram_automorphism([1, 0])
    gamma = rootfold.Action(a2, [flip], order=2)
    assert gamma.stabilizes_base and gamma.fixed_weyl_order() == 2

    folded = rootfold.fold(gamma)
    assert folded.restricted_type == "BC1"
    assert folded.num_roots == 4 and not folded.reduced
    assert folded.restricted_weyl_order == folded.fixed_weyl_order == 2
    assert folded.reduced_subdatum(True).num_roots == 2

    d4 = rootfold.RootDatum.from_cartan_type("D4:sc")
    triality = rootfold.Action(d4, [d4.diagram_automorphism([2, 1, 3, 0])], order=3)
    assert rootfold.fold(triality).restricted_type == "G2"

    minus = rootfold.Action(a2, [[[-1, 0], [0, -1]]], order=2, based=False)
    star, cocycle = minus.star(a2)
    assert star.images[1] == [[0, 1], [1, 0]]
    assert cocycle[1] == [[0, -1], [-1, 0]]

    trivial = rootfold.Action(a2, [[[1, 0], [0, 1]]], order=1)
    z2 = rootfold.Action(a2, [[[1, 0], [0, 1]]], order=2, based=False)
    assert rootfold.h1(trivial, z2) == (4, 2, 2)

    a1 = rootfold.RootDatum.from_cartan_type("A1:sc")
    split = rootfold.Action(a1, [[[1]]], order=2, based=False)
    nonsplit = rootfold.Action(a1, [[[-1]]], order=2, based=False)
    assert rootfold.equivariant_isomorphism(a1, [split], a1, [nonsplit]) is None
    assert rootfold.equivariant_isomorphism(a1, [split], a1, [split]) == [[1]]

    try:
        rootfold.RootDatum(1, [[1], [-1]], [[1], [-1]])
    except ValueError as e:
        assert "pairing" in str(e)
    else:
        raise AssertionError("bad datum accepted")

    report, passed = rootfold.selftest()
    assert passed, report
    print(report, end="")
    print("smoke test: ok")


if __name__ == "__main__":
    main()
