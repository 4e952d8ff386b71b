import math

import pytest

from heckecells.asymptotic import (
    FusionGraph,
    FusionRing,
    build_fusion_ring,
    fusion_graph,
    graphs_isomorphic,
    is_commutative,
    pf_dimensions,
    phi_image,
    rings_isomorphic,
    so3_fusion_ring,
    total_pf_dimension,
)
from heckecells.errors import PropertyViolation
from heckecells.laurent import LaurentPoly

PHI = (1 + math.sqrt(5)) / 2


def _ring(structure, unit=0, duality=None):
    r = len(structure)
    return FusionRing(
        basis=tuple(range(r)),
        unit=unit,
        duality=tuple(duality) if duality else tuple(range(r)),
        structure=tuple(tuple(tuple(row) for row in plane) for plane in structure),
    )


def test_rank_one_ring():
    ring = _ring([[[1]]])
    assert pf_dimensions(ring) == {0: 1.0}
    assert is_commutative(ring)
    g = fusion_graph(ring, 0)
    assert g.adjacency == ((1,),) and g.star == 0


def test_invalid_rings_rejected():
    # broken unit law: a_0 a_1 = 0
    with pytest.raises(PropertyViolation):
        _ring([[[1, 0], [0, 0]], [[0, 0], [1, 0]]])
    # negative multiplicity
    with pytest.raises(PropertyViolation):
        _ring([[[1, 0], [0, 1]], [[0, 1], [-1, 0]]])


def test_z2_group_ring():
    z2 = _ring([[[1, 0], [0, 1]], [[0, 1], [1, 0]]])
    dims = pf_dimensions(z2)
    assert all(abs(v - 1) < 1e-12 for v in dims.values())
    assert is_commutative(z2)
    assert abs(total_pf_dimension(z2) - 2) < 1e-12


def test_fibonacci_from_dihedral_five(cells_for):
    c = cells_for("I2(5)")
    H = c.diagonal_h_cell(c.left_of[1])
    ring = build_fusion_ring(c, H)
    assert ring.rank == 2
    assert rings_isomorphic(ring, so3_fusion_ring(3))
    dims = pf_dimensions(ring)
    tau = dims[ring.basis[1 - ring.unit]]
    assert abs(tau - PHI) < 1e-9
    assert abs(total_pf_dimension(ring) - (1 + PHI**2)) < 1e-9


@pytest.mark.parametrize("m", [4, 5, 6, 7, 8, 9])
def test_dihedral_middle_cells_give_truncated_sl2(cells_for, m):
    c = cells_for(f"I2({m})")
    middle = c.display_order[1]
    for L in c.left_cells_of(middle):
        H = c.diagonal_h_cell(L)
        ring = build_fusion_ring(c, H)
        assert ring.rank == (m - 1 + 1) // 2
        assert rings_isomorphic(ring, so3_fusion_ring(m - 2)), m


def test_pf_dimension_is_a_ring_homomorphism(cells_for):
    c = cells_for("I2(7)")
    H = c.diagonal_h_cell(c.left_of[1])
    ring = build_fusion_ring(c, H)
    dims = pf_dimensions(ring)
    r = ring.rank
    for x in range(r):
        for y in range(r):
            lhs = dims[ring.basis[x]] * dims[ring.basis[y]]
            rhs = sum(ring.structure[x][y][z] * dims[ring.basis[z]] for z in range(r))
            assert abs(lhs - rhs) < 1e-9
    assert dims[ring.basis[ring.unit]] == pytest.approx(1.0, abs=1e-12)


def test_unit_is_duflo_and_laws_hold(cells_for):
    c = cells_for("B3")
    for j in range(len(c.two_cells)):
        for L in c.left_cells_of(j):
            ring = build_fusion_ring(c, c.diagonal_h_cell(L))
            assert ring.basis[ring.unit] == c.duflo_of_left[L]


def test_a_type_rings_are_trivial(cells_for):
    # every diagonal H-cell in type A is a single Duflo involution
    c = cells_for("A3")
    for L in range(len(c.left_cells)):
        H = c.diagonal_h_cell(L)
        assert len(H) == 1
        ring = build_fusion_ring(c, H)
        assert ring.rank == 1 and is_commutative(ring)


def test_so3_level4_graph_is_path_with_middle_loop(cells_for):
    c = cells_for("I2(6)")
    H = c.diagonal_h_cell(c.left_of[1])
    ring = build_fusion_ring(c, H)
    dims = pf_dimensions(ring)
    gen = max(range(ring.rank), key=lambda i: dims[ring.basis[i]])
    g = fusion_graph(ring, gen)
    assert g.is_symmetric() and g.is_connected()
    # path on three vertices with one loop at the middle
    want = ((0, 1, 0), (1, 1, 1), (0, 1, 0))
    assert sorted(sorted(row) for row in g.adjacency) == sorted(sorted(r) for r in want)
    ref = FusionGraph(labels=(0, 1, 2), adjacency=want, star=0)
    assert graphs_isomorphic(g, ref, match_star=True)


def test_dot_output():
    ring = so3_fusion_ring(3)
    g = fusion_graph(ring, 1)
    dot = g.to_dot()
    assert dot.startswith("graph") and 'xlabel="*"' in dot
    assert dot.count("--") == 2  # edge 0-1 plus loop at 1


def test_graph_isomorphism_detects_difference():
    a = FusionGraph(labels=(0, 1, 2), adjacency=((0, 1, 0), (1, 0, 1), (0, 1, 0)), star=0)
    b = FusionGraph(labels=(0, 1, 2), adjacency=((0, 1, 1), (1, 0, 0), (1, 0, 0)), star=0)
    assert graphs_isomorphic(a, a)
    assert not graphs_isomorphic(a, b)
    # star placement matters
    c = FusionGraph(labels=(0, 1, 2), adjacency=((0, 1, 0), (1, 0, 1), (0, 1, 0)), star=1)
    assert not graphs_isomorphic(a, c, match_star=True)
    assert graphs_isomorphic(a, c, match_star=False)


def test_ring_isomorphism_negative():
    z2 = _ring([[[1, 0], [0, 1]], [[0, 1], [1, 0]]])
    fib = so3_fusion_ring(3)
    assert not rings_isomorphic(z2, fib)
    assert rings_isomorphic(fib, fib)


def test_phi_image_examples(cells_for):
    c = cells_for("A3")
    s = c.system
    d = s.word_to_id((0, 1, 2, 1, 0))
    img = phi_image(c, d)
    assert img == {d: LaurentPoly({0: 1, 2: 3, 4: 3, 6: 1})}
    assert phi_image(c, 0) == {0: LaurentPoly({0: 1})}


def test_phi_image_duflo_column_shape(cells_for):
    # phi(c_w): the a_w-coefficient has constant term 1; others start at v
    c = cells_for("I2(8)")
    middle = c.display_order[1]
    L = c.left_cells_of(middle)[0]
    d = c.duflo_of_left[L]
    for w in c.diagonal_h_cell(L):
        img = phi_image(c, w)
        for u, p in img.items():
            if u == w:
                assert p.coefficient(0) == 1
            else:
                assert not p or p.min_deg >= 1


def test_phi_expansion_identity(cells_for):
    # h_{w,x,u} = sum_v h_{w,d,v} gamma_{v,x,u^-1} exactly, hence at v=1
    c = cells_for("I2(6)")
    s = c.system
    middle = c.display_order[1]
    L = c.left_cells_of(middle)[0]
    H = c.diagonal_h_cell(L)
    d = c.duflo_of_left[L]
    j = c.two_of[d]
    for w in H:
        img = phi_image(c, w)
        for x in H:
            cols = c.h_cell_columns((w,), x, j)
            for u in H:
                rhs = LaurentPoly()
                for v in H:
                    g = c.gamma(v, x, s.inverse_id[u])
                    if g:
                        rhs = rhs + img.get(v, LaurentPoly()).shift(-c.a_of_cell[j]) * g
                lhs = cols[w].get(u, LaurentPoly())
                assert lhs == rhs
                assert lhs.evaluate() == rhs.evaluate()
