import json

import pytest

from heckecells.cells import block_matrices_match, verify_cell_rep_identities, verify_lusztig_properties
from heckecells.laurent import LaurentPoly

# number of standard Young tableaux per partition; A-type two-sided cells
# have size (#SYT)^2
SYT_4 = {(4,): 1, (3, 1): 3, (2, 2): 2, (2, 1, 1): 3, (1, 1, 1, 1): 1}
SYT_5 = {(5,): 1, (4, 1): 4, (3, 2): 5, (3, 1, 1): 6, (2, 2, 1): 5, (2, 1, 1, 1): 4, (1, 1, 1, 1, 1): 1}


def test_a1_cells(cells_for):
    c = cells_for("A1")
    assert [len(c.two_cells[j]) for j in c.display_order] == [1, 1]
    assert [c.a_of_cell[j] for j in c.display_order] == [0, 1]


def test_a3_cell_sizes_match_tableaux(cells_for):
    c = cells_for("A3")
    sizes = sorted(len(x) for x in c.two_cells)
    assert sizes == sorted(n * n for n in SYT_4.values())
    assert sizes == sorted([1, 9, 4, 9, 1])


def test_a4_cell_sizes_match_tableaux(cells_for):
    c = cells_for("A4")
    assert sorted(len(x) for x in c.two_cells) == sorted(n * n for n in SYT_5.values())


def test_h3_table(cells_for):
    c = cells_for("H3")
    assert [len(c.two_cells[j]) for j in c.display_order] == [1, 18, 25, 32, 25, 18, 1]
    assert [c.a_of_cell[j] for j in c.display_order] == [0, 1, 2, 3, 5, 6, 15]
    assert [c.cell_names[j] for j in c.display_order] == ["0", "1", "2", "3", "2'", "1'", "0'"]


def test_left_cells_refine_two_sided_and_rights_are_inverses(cells_for):
    c = cells_for("B3")
    s = c.system
    for cell in c.left_cells:
        assert len({c.two_of[w] for w in cell}) == 1
    for i, cell in enumerate(c.left_cells):
        assert sorted(s.inverse_id[w] for w in cell) == c.right_cells[i]
        assert all(c.right_of[s.inverse_id[w]] == c.left_of[w] for w in cell)


def test_a_constant_on_two_sided_cells(cells_for):
    c = cells_for("D4")
    for j, cell in enumerate(c.two_cells):
        assert {c.a_value(w) for w in cell} == {c.a_of_cell[j]}


def _a_value_by_degree(c, j):
    """Oracle: a(cell) as the maximal v^-1-valuation of h_{x,y,z} over the cell."""
    cell = c.two_cells[j]
    best = 0
    for y in cell:
        cols = c.h_cell_columns(cell, y, j)
        for x in cell:
            for p in cols[x].values():
                best = max(best, -p.min_deg)
    return best


@pytest.mark.parametrize("t", ["A3", "I2(5)", "I2(6)", "B3"])
def test_a_values_match_structure_constant_definition(cells_for, t):
    c = cells_for(t)
    for j in range(len(c.two_cells)):
        assert c.a_of_cell[j] == _a_value_by_degree(c, j), (t, j)


def test_a3_a_values(cells_for):
    c = cells_for("A3")
    s = c.system
    d = s.word_to_id((0, 1, 2, 1, 0))
    assert c.a_value(0) == 0
    assert c.a_value(d) == 3
    assert c.a_value(s.w0) == 6


def test_duflo_involutions(cells_for):
    c = cells_for("I2(5)")
    s = c.system
    assert c.duflo_involution(c.left_of[0]) == 0
    # the left cell containing s = generator 0 (and ts) has Duflo s
    L = c.left_of[s.word_to_id((0,))]
    assert s.word_to_id((1, 0)) in c.left_cells[L]
    assert c.duflo_involution(L) == s.word_to_id((0,))


def test_duflo_gamma_and_degree_criteria_agree_everywhere(cells_for):
    for t in ("A3", "B3", "H3"):
        c = cells_for(t)
        for L in range(len(c.left_cells)):
            d = c.duflo_involution(L)  # raises on any disagreement
            assert c.system.inverse_id[d] == d
            assert d in c.diagonal_h_cell(L)


def test_gamma_examples(cells_for):
    c = cells_for("A3")
    s = c.system
    d = s.word_to_id((0, 1, 2, 1, 0))
    assert c.gamma(0, 0, 0) == 1
    assert c.gamma(d, d, d) == 1
    assert c.gamma(d, d, s.inverse_id[s.w0]) == 0  # lowest term v^-4, but a(w0)=6
    assert c.gamma(d, d, 1) == 0  # different cells


def test_cell_matrix_dihedral(cells_for):
    c5 = cells_for("I2(5)")
    cm = c5.cell_matrix(c5.display_order[1])
    assert cm.entries == [[2, 2], [2, 2]]
    assert cm.total == 8
    c4 = cells_for("I2(4)")
    cm4 = c4.cell_matrix(c4.display_order[1])
    assert cm4.entries == [[2, 1], [1, 2]]


def test_cell_matrix_invariants(cells_for):
    c = cells_for("B4")
    for j in range(len(c.two_cells)):
        cm = c.cell_matrix(j)
        assert cm.total == len(c.two_cells[j])
        k = len(cm.entries)
        assert all(cm.entries[i][p] == cm.entries[p][i] for i in range(k) for p in range(k))


def test_block_matrix_matching():
    a = [[5, 3], [3, 5]]
    assert block_matrices_match([3, 1], a, [1, 3], [[5, 3], [3, 5]])
    assert not block_matrices_match([3, 1], a, [3, 1], [[5, 2], [2, 5]])
    assert not block_matrices_match([3, 1], a, [3, 2], a)


def test_graded_cartan_a3(cells_for):
    c = cells_for("A3")
    s = c.system
    d = s.word_to_id((0, 1, 2, 1, 0))
    gc = c.graded_cartan([d])
    assert gc[(d, d)] == LaurentPoly({0: 1, 2: 3, 4: 3, 6: 1})
    # identity cell: 1x1 matrix [1]
    gc0 = c.graded_cartan([0])
    assert gc0[(0, 0)] == LaurentPoly({0: 1})


def test_graded_cartan_i25(cells_for):
    c = cells_for("I2(5)")
    s = c.system
    H = c.diagonal_h_cell(c.left_of[s.word_to_id((0,))])
    assert len(H) == 2
    gc = c.graded_cartan(H)
    x, y = H
    assert gc[(x, x)] == gc[(y, y)] == LaurentPoly({0: 1, 2: 1})
    assert gc[(x, y)] == gc[(y, x)]


def test_graded_cartan_shape(cells_for):
    c = cells_for("B3")
    for j in range(len(c.two_cells)):
        a = c.a_of_cell[j]
        for L in c.left_cells_of(j):
            H = c.diagonal_h_cell(L)
            gc = c.graded_cartan(H)
            for (x, y), p in gc.items():
                assert p.is_nonnegative()
                if x == y:
                    assert p.coefficient(0) == 1 and p.max_deg == 2 * a
                elif p:
                    assert p.min_deg >= 1 and p.max_deg <= 2 * a - 1


def test_verify_reports_pass(cells_for):
    c = cells_for("H3")
    for j in range(len(c.two_cells)):
        rep = verify_lusztig_properties(c, j)
        assert rep.ok, "\n".join(rep.lines())
        assert all(ch.instances > 0 for ch in rep.checks)
    rep = verify_cell_rep_identities(c, c.left_of[0])
    assert rep.ok


def test_verify_prop_selection(cells_for):
    c = cells_for("A2")
    rep = verify_lusztig_properties(c, 1, props=("P2", "P5"))
    assert rep.ok and len(rep.checks) == 1


def test_cell_orders(cells_for):
    c = cells_for("A3")
    # identity cell is minimal, longest-element cell maximal in the two-sided order
    j_e, j_w0 = c.two_of[0], c.two_of[c.system.w0]
    for j in range(len(c.two_cells)):
        assert c.two_leq(j_e, j)
        assert c.two_leq(j, j_w0)
    # the two-sided order refines a-values upward
    for j1 in range(len(c.two_cells)):
        for j2 in range(len(c.two_cells)):
            if c.two_leq(j1, j2):
                assert c.a_of_cell[j1] <= c.a_of_cell[j2]


def test_display_order_pairing(cells_for):
    c = cells_for("B3")
    names = [c.cell_names[j] for j in c.display_order]
    assert names[0] == "0" and names[-1] == "0'"
    for j in c.display_order:
        p = c.partner[j]
        assert c.partner[p] == j
        assert len(c.two_cells[j]) == len(c.two_cells[p])


def test_json_emission(cells_for):
    c = cells_for("H3")
    payload = json.loads(json.dumps(c.to_json()))
    assert payload["type"] == "H3"
    assert [row["size"] for row in payload["cells"]] == [1, 18, 25, 32, 25, 18, 1]
    assert payload["cells"][3]["self_paired"]
    cm = c.cell_matrix(c.display_order[3]).to_json()
    assert cm["total"] == 32


@pytest.mark.slow
def test_f4_big_cell_deep_checks(cells_for):
    c = cells_for("F4")
    j5 = c.display_order[5]
    assert len(c.two_cells[j5]) == 684
    lefts = c.left_cells_of(j5)
    duflos = [c.duflo_involution(L) for L in lefts]
    assert len(set(duflos)) == len(lefts) == 12
    rep = verify_lusztig_properties(c, j5, props=("P2", "P5"))
    assert rep.ok, "\n".join(rep.lines())
    cm = c.cell_matrix(j5)
    i9 = cm.diagonal_h_sizes().index(9)
    rep9 = verify_cell_rep_identities(c, c.left_of[c.diagonal_h_cell(cm.classes[i9][0])[0]])
    assert rep9.ok, "\n".join(rep9.lines())
