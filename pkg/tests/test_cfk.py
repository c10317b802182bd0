import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from contactinv import cfk, corpus, io, linalg
from contactinv.cfk import Arrow, BiGenerator, HatFilteredComplex, HatGenerator, Status

from oracles import homology_oracle, inverse_unimodular, random_complex, random_filtered_basis_change, random_unimodular


def hat(name, gens, arrows=(), ring=cfk.Z):
    return HatFilteredComplex(
        name, ring,
        tuple(HatGenerator(lab, a) for lab, a in gens),
        tuple(Arrow(s, t, c) for s, t, c in arrows),
    )


T_R_SHAPED = hat("tr", [("x", 1), ("y", -1), ("z", 0)], [("z", "y", 1)])
T_L_SHAPED = hat("tl", [("x", -1), ("y", 1), ("z", 0)], [("y", "z", 1)])

FIBERED = {
    "unknot_hat": 0,
    "trefoil_right_dual_hat": 1,
    "trefoil_left_dual_hat": 1,
    "trefoil_right_dual_hat__trefoil_right_dual_hat": 2,
    "trefoil_left_dual_hat__trefoil_left_dual_hat": 2,
    "trefoil_right_dual_hat__trefoil_left_dual_hat": 2,
}


def fixture(name):
    return io.load_fixture(name + ".cfk")


def hat_fixtures():
    return [n[:-4] for n in io.fixture_names() if n.endswith(".cfk") and isinstance(io.load_fixture(n), HatFilteredComplex)]


# --- validation ------------------------------------------------------------------------


def test_left_trefoil_complex_validates():
    C = corpus.trefoil_left()
    assert [(g.label, g.i, g.j) for g in C.generators] == [("x", 1, 0), ("y", 0, 1), ("z", 0, 0)]
    assert cfk.validate_complex(C).ok


def test_filtration_increase_is_reported():
    C = cfk.BifilteredComplex("bad", cfk.Z, (BiGenerator("z", 0, 0), BiGenerator("y", 0, 1)), (Arrow("z", "y"),))
    rep = cfk.validate_complex(C)
    assert not rep.ok
    assert any("filtration increase" in p for p in rep.problems)


def test_nonzero_square_is_reported():
    C = hat("chain", [("a", 0), ("b", 0), ("c", 0)], [("a", "b", 1), ("b", "c", 1)])
    rep = cfk.validate_complex(C)
    assert not rep.ok and any("D^2" in p for p in rep.problems)


def test_duplicate_labels_and_zero_coefficients():
    C = hat("dup", [("a", 0), ("a", 0)])
    assert not cfk.validate_complex(C).ok
    C = hat("zero", [("a", 0), ("b", 0)], [("a", "b", 2)], ring=cfk.Z2)
    assert any("zero coefficient" in p for p in cfk.validate_complex(C).problems)


def test_maslov_drop_checked():
    C = HatFilteredComplex("m", cfk.Z, (HatGenerator("a", 0, 0), HatGenerator("b", 0, 0)), (Arrow("a", "b"),))
    assert any("maslov" in p for p in cfk.validate_complex(C).problems)


# --- homology ---------------------------------------------------------------------------


def test_hat_complex_homology_is_z_generated_by_x():
    C = hat("h", [("x", -1), ("y", 1), ("z", 0)], [("y", "z", 1)])
    H = cfk.homology(C)
    assert H.free_rank == 1 and not H.torsion
    assert cfk.canonical_sign(H.free[0]) == [1, 0, 0]


def test_zero_differential_free_rank():
    assert cfk.homology(hat("z", [("a", 0), ("b", 1), ("c", 2)])).free_rank == 3


def test_torsion_summand():
    H = cfk.homology(hat("t", [("a", 0), ("b", 0)], [("a", "b", 2)]))
    assert H.free_rank == 0 and H.torsion_orders == [2]
    assert H.summary() == "Z/2"
    H2 = cfk.homology(hat("t", [("a", 0), ("b", 0)], [("a", "b", 2)]), cfk.Z2)
    assert H2.free_rank == 2


def test_empty_complex_homology():
    H = cfk.homology(hat("e", []))
    assert H.free_rank == 0 and H.summary() == "0"


@pytest.mark.parametrize("seed", range(100))
def test_homology_matches_oracle_on_random_complexes(seed):
    rng = random.Random(seed)
    ring = cfk.Z2 if seed % 4 == 3 else cfk.Z
    C = random_complex(rng, rng.randint(1, 12), ring)
    H = cfk.homology(C)
    free, torsion = homology_oracle(C.matrix(), ring)
    assert H.free_rank == free
    assert sorted(H.torsion_orders) == torsion
    # representatives are cycles whose coordinates are the unit vectors
    D = C.matrix()
    for k, v in enumerate(H.free):
        image = linalg.matvec(D, v)
        assert all((x % 2 if ring == cfk.Z2 else x) == 0 for x in image)
        f, _ = H.coordinates(v)
        assert [x % 2 if ring == cfk.Z2 else x for x in f] == [int(i == k) for i in range(H.free_rank)]
    for order, v in H.torsion:
        assert not any(linalg.matvec(D, v))
        assert H.coordinates([order * x for x in v]) == ([0] * H.free_rank, [0] * len(H.torsion))


def test_torsion_of_elementary_pieces():
    # b -> 2c and d -> 3e give invariant factors 1, 6
    C = hat("p", [("b", 0), ("c", 0), ("d", 0), ("e", 0), ("f", 0)], [("b", "c", 2), ("d", "e", 3)])
    H = cfk.homology(C)
    assert (H.free_rank, H.torsion_orders) == (1, [6])


# --- sublevels, hat columns, mirrors --------------------------------------------------


def test_sublevel_of_right_shaped_hat():
    S = cfk.sublevel(T_R_SHAPED, -1)
    assert S.labels == ("y",) and S.arrows == ()


def test_sublevel_extremes():
    assert cfk.sublevel(T_R_SHAPED, 5).generators == T_R_SHAPED.generators
    assert cfk.sublevel(T_R_SHAPED, 5).arrows == T_R_SHAPED.arrows
    assert len(cfk.sublevel(T_R_SHAPED, -2)) == 0


def test_mirror_of_right_trefoil_is_left_trefoil():
    M = cfk.mirror_dual(corpus.trefoil_right())
    L = corpus.trefoil_left()
    strip = lambda s: s.rstrip("*")
    assert [(strip(g.label), g.i, g.j) for g in M.generators] == [(g.label, g.i, g.j) for g in L.generators]
    assert sorted((strip(a.source), strip(a.target), a.coeff) for a in M.arrows) == sorted(
        (a.source, a.target, a.coeff) for a in L.arrows
    )


@pytest.mark.parametrize("build", [corpus.trefoil_right, corpus.trefoil_left, corpus.unknot])
def test_mirror_is_an_involution(build):
    C = build()
    assert cfk.mirror_dual(cfk.mirror_dual(C)) == C


def test_mirror_of_single_generator():
    U = corpus.unknot()
    M = cfk.mirror_dual(U)
    assert [(g.i, g.j) for g in M.generators] == [(0, 0)] and M.arrows == ()


def test_hat_column_drop_rule():
    H = cfk.hat_column(corpus.trefoil_left())
    assert [(a.source, a.target) for a in H.arrows] == [("y", "z")]
    H = cfk.hat_column(corpus.trefoil_right())
    assert [(a.source, a.target) for a in H.arrows] == [("z", "y")]
    assert [g.alexander for g in H.generators] == [1, -1, 0]


def test_hat_column_zero_differential():
    H = cfk.hat_column(corpus.unknot())
    assert H.labels == ("x",) and H.arrows == ()


# --- tensor products ---------------------------------------------------------------------


def test_tensor_generator_count():
    assert len(cfk.tensor_filtered(T_R_SHAPED, T_L_SHAPED)) == 9


def test_tensor_of_left_shapes_over_z2_has_rank_one():
    L2 = hat("tl", [("x", -1), ("y", 1), ("z", 0)], [("y", "z", 1)], ring=cfk.Z2)
    assert cfk.homology(cfk.tensor_filtered(L2, L2)).free_rank == 1


def test_tensor_unit():
    U = cfk.single_generator()
    T = cfk.tensor_filtered(T_R_SHAPED, U)
    assert [g.alexander for g in T.generators] == [g.alexander for g in T_R_SHAPED.generators]
    assert len(T.arrows) == len(T_R_SHAPED.arrows)
    assert cfk.homology(T).free_rank == cfk.homology(T_R_SHAPED).free_rank


def test_koszul_parity_requires_bipartite_arrows():
    C = hat("odd", [("a", 0), ("b", 0), ("c", 0)], [("a", "b", 1), ("a", "c", 1), ("b", "c", 1)])
    with pytest.raises(cfk.ComplexError):
        cfk.koszul_parity(C)


def _z2(C):
    return HatFilteredComplex(
        C.name, cfk.Z2, C.generators, tuple(a for a in C.arrows if a.coeff % 2)
    )


@pytest.mark.parametrize("pair", list(itertools.combinations_with_replacement(hat_fixtures(), 2)))
def test_kunneth_rank_multiplicative_over_z2(pair):
    A, B = (_z2(fixture(n)) for n in pair)
    T = cfk.tensor_filtered(A, B)
    assert cfk.validate_complex(T).ok
    assert cfk.homology(T).free_rank == cfk.homology(A).free_rank * cfk.homology(B).free_rank


# --- associated graded -------------------------------------------------------------------


def test_graded_of_right_shape():
    pieces = cfk.associated_graded(T_R_SHAPED)
    assert [p.level for p in pieces] == [1, 0, -1]
    assert all(p.homology.free_rank == 1 for p in pieces)


def test_graded_filtration_preserving_arrow():
    C = hat("g", [("a", 0), ("b", 0)], [("a", "b", 1)])
    (piece,) = cfk.associated_graded(C)
    assert piece.homology.summary() == "0"


def test_graded_zero_differential():
    C = hat("g", [("a", 0), ("b", 1), ("c", 1)])
    assert [p.homology.free_rank for p in cfk.associated_graded(C)] == [2, 1]


# --- contact class ------------------------------------------------------------------------


@pytest.mark.parametrize("complex_, genus, status", [
    (T_L_SHAPED, 1, Status.PRIMITIVE),
    (T_R_SHAPED, 1, Status.ZERO),
    (cfk.single_generator(), 0, Status.PRIMITIVE),
])
def test_contact_class_examples(complex_, genus, status):
    assert cfk.contact_class(complex_, genus).status is status


def test_contact_class_of_tensor_square():
    T = cfk.tensor_filtered(T_L_SHAPED, T_L_SHAPED)
    assert cfk.contact_class(T, 2).status is Status.PRIMITIVE


def test_contact_class_torsion():
    # d(y) = 2x
    C = hat("t", [("x", -1), ("y", 0), ("w", 0)], [("y", "x", 2)])
    assert cfk.contact_class(C, 1).status is Status.TORSION
    # d(w) = y - 2x and d(v) = y
    C = hat("t", [("x", -1), ("y", 0), ("w", 1), ("v", 0)], [("w", "y", 1), ("w", "x", -2), ("v", "y", 1)])
    assert cfk.contact_class(C, 1).status is Status.TORSION


def test_contact_class_primitive_after_relation():
    # d(w) = 3x + y, so [y] = -3[x] and [x] generates
    C = hat("p", [("x", -1), ("y", 0), ("w", 1)], [("w", "x", 3), ("w", "y", 1)])
    assert cfk.contact_class(C, 1).status is Status.PRIMITIVE


def test_contact_class_divisible():
    # [x] = 2[y] in the ambient complex, with y free
    C = hat("d", [("x", -1), ("y", 0), ("w", 1)], [("w", "x", 1), ("w", "y", -2)])
    rep = cfk.contact_class(C, 1)
    assert rep.status is Status.DIVISIBLE and rep.divisor == 2
    assert rep.status_text == "DIVISIBLE(2)"


def test_fibration_hypothesis_violation():
    with pytest.raises(cfk.FibrationHypothesisViolated):
        cfk.contact_class(T_L_SHAPED, 2)
    C = hat("two", [("a", -1), ("b", -1)])
    with pytest.raises(cfk.FibrationHypothesisViolated):
        cfk.contact_class(C, 1)


@pytest.mark.parametrize("name,genus", sorted(FIBERED.items()))
def test_contact_class_independent_of_route(name, genus):
    C = fixture(name)
    base = cfk.contact_class(C, genus)
    for via in range(-genus, genus + 1):
        rep = cfk.contact_class(C, genus, via=via)
        assert rep.status is base.status
        assert rep.coordinates[0] in (base.coordinates[0], [-x for x in base.coordinates[0]])


@pytest.mark.parametrize("name,genus", sorted(FIBERED.items()))
def test_contact_class_invariant_under_basis_change(name, genus):
    C = fixture(name)
    expected = cfk.contact_class(C, genus).status
    rng = random.Random(name)
    for _ in range(50):
        T = random_filtered_basis_change(rng, C)
        C2 = cfk.change_basis(C, T)
        assert cfk.validate_complex(C2).ok
        assert cfk.contact_class(C2, genus).status is expected


def test_change_basis_rejects_bad_matrices():
    with pytest.raises(cfk.ComplexError):
        cfk.change_basis(T_R_SHAPED, [[2, 0, 0], [0, 1, 0], [0, 0, 1]])
    with pytest.raises(cfk.ComplexError):
        cfk.change_basis(T_R_SHAPED, [[1, 1, 0], [0, 1, 0], [0, 0, 1]])


# --- closure of d^2 = 0 under every operation ------------------------------------------


def test_square_zero_closed_under_operations():
    bif = [fixture(n) for n in ("trefoil_right", "trefoil_left", "unknot", "trefoil_right_dual", "trefoil_left_dual")]
    hats = [fixture(n) for n in hat_fixtures()]
    produced = []
    for C in bif:
        produced += [cfk.mirror_dual(C), cfk.hat_column(C)]
    for C in hats:
        produced += [cfk.sublevel(C, m) for m in range(-3, 4)]
        produced += [p.complex for p in cfk.associated_graded(C)]
    small = [h for h in hats if len(h) <= 3]
    for A, B in itertools.product(small, repeat=2):
        produced.append(cfk.tensor_filtered(A, B))
    for C in produced:
        rep = cfk.validate_complex(C)
        assert rep.ok, (C.name, rep.problems)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 10))
def test_conjugated_complexes_stay_square_zero(seed, n):
    rng = random.Random(seed)
    C = random_complex(rng, n)
    assert cfk.validate_complex(C).ok
    P = random_unimodular(rng, n, n)
    D = linalg.matmul(inverse_unimodular(P), linalg.matmul(C.matrix(), P))
    assert linalg.is_zero(linalg.matmul(D, D))
