import functools
from fractions import Fraction

import pytest

from contactinv import corpus, heegaard as hd, io, model
from contactinv.heegaard import Region

from oracles import stiemke_certificate

TORUS = """\
diagram torus
genus 1
alpha a
beta b
point p a b
edge ea a p p
edge eb b p p
region R : +ea +eb -ea -eb
basepoint w R
end
"""


@functools.lru_cache(maxsize=None)
def built(g, winding="twice", admissible=True):
    return model.build_model_diagram(g, winding, admissible)


# --- structure -----------------------------------------------------------------------------


@pytest.mark.parametrize("g", [1, 2, 3])
def test_model_shape(g):
    d = built(g).diagram
    assert len(d.alphas) == len(d.betas) == 2 * g + 1
    assert d.genus == 2 * g + 1
    assert d.euler_characteristic() == -4 * g
    assert hd.validate_diagram(d).ok


@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_fiber_domain_multiplicities(g):
    assert built(g).P.values() == {-1, 0, 1, 2}


@pytest.mark.parametrize("g", [1, 2, 3])
def test_each_x_is_the_unique_zone_one_point_of_its_curves(g):
    m = built(g)
    d = m.diagram
    for i in range(2, 2 * g + 2):
        pt = d.points[f"x{i}"]
        inside = [p for p in d.points_between(pt.alpha, pt.beta)
                  if all(m.P[r] == 1 for r in d.corner_regions[p])]
        assert inside == [f"x{i}"]


def test_torus_diagram_validates_with_empty_lattice():
    d = io.parse_diagram(TORUS)
    assert d.euler_characteristic() == 0
    assert d.corner_regions["p"] == ("R",) * 4
    assert hd.periodic_domains(d) == []
    rep = hd.weak_admissibility(d)
    assert rep.admissible and rep.rank == 0


def test_validation_reports_problems():
    d = io.parse_diagram(TORUS)
    bad = hd.MeasuredDiagram(d.name, 2, d.alphas, d.betas, d.points, d.edges, d.regions, d.w)
    rep = hd.validate_diagram(bad)
    assert not rep.ok
    assert any("alpha and" in p for p in rep.problems)
    broken = dict(d.regions)
    broken["R"] = Region((((("ea", 1), ("ea", -1), ("eb", 1), ("eb", -1))),))
    rep = hd.validate_diagram(hd.MeasuredDiagram(d.name, 1, d.alphas, d.betas, d.points, d.edges, broken, "R"))
    assert any("not an alpha-beta corner" in p for p in rep.problems)


def test_region_boundary_columns_close_up():
    d = built(1).diagram
    M = d.region_boundary()
    # every dart is used once in each direction, so columns sum to zero
    for c in range(len(d.curve_order)):
        assert sum(row[c] for row in M) == 0


# --- periodic domains ------------------------------------------------------------------------


@pytest.mark.parametrize("g", [1, 2, 3])
def test_lattice_rank(g):
    d = built(g).diagram
    assert len(hd.periodic_domains(d)) == 2 * g + 1
    restricted = hd.periodic_domains(d, ["alpha1", "lambda"])
    assert len(restricted) == 1
    assert restricted[0] in (built(g).P, -built(g).P)
    assert built(g).P.boundary_text() == "alpha1 - lambda"


def test_lattice_is_closed_under_scaling_and_sums():
    m = built(1)
    d = m.diagram
    basis = hd.periodic_domains(d)
    for Q in (m.P.scale(2), basis[0] + basis[1], basis[0] - m.P):
        again = hd.domain_from_multiplicities(d, Q.as_dict())
        assert again == Q


def test_non_periodic_multiplicities_are_rejected():
    d = built(1).diagram
    bump = {r: 0 for r in d.region_order}
    some = next(r for r in d.region_order if r != d.w)
    bump[some] = 1
    with pytest.raises(hd.DiagramError):
        hd.domain_from_multiplicities(d, bump)
    with pytest.raises(hd.DiagramError):
        hd.domain_from_multiplicities(d, {d.w: 1})


# --- measures --------------------------------------------------------------------------------


def test_euler_contribution_arithmetic():
    assert Region((), 1).euler_contribution == 1
    assert Region((), 0).euler_contribution == 0
    square = Region(((("e", 1), ("f", 1), ("e", -1), ("f", -1)),))
    assert square.euler_contribution == 0
    bigon = Region(((("e", 1), ("f", 1)),))
    assert bigon.euler_contribution == Fraction(1, 2)


@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_model_measures(g):
    m = built(g)
    d = m.diagram
    assert hd.euler_measure(d, m.P) == -6 * g
    assert hd.point_measure(d, m.x_prime, m.P) == 2 * g
    assert hd.chern_evaluation(d, m.x_prime, m.P) == -2 * g
    assert hd.chern_evaluation(d, m.x, m.P) == -2 * g


@pytest.mark.parametrize("g", [1, 2])
def test_measures_are_linear(g):
    m = built(g)
    d = m.diagram
    assert hd.chern_evaluation(d, m.x_prime, -m.P) == 2 * g
    basis = hd.periodic_domains(d)
    for Q in basis:
        S = m.P + Q.scale(3)
        assert hd.euler_measure(d, S) == hd.euler_measure(d, m.P) + 3 * hd.euler_measure(d, Q)
        assert hd.point_measure(d, m.x, S) == hd.point_measure(d, m.x, m.P) + 3 * hd.point_measure(d, m.x, Q)


def test_local_multiplicity_examples():
    m = built(1)
    d = m.diagram
    assert [m.P[r] for r in d.corner_regions["x2"]] == [1, 1, 1, 1]
    assert hd.local_multiplicity(d, "x2", m.P) == 1
    nothing = m.P.scale(0)
    assert all(hd.local_multiplicity(d, p, nothing) == 0 for p in d.points)


def test_chern_values_are_integers_on_every_tuple():
    m = built(1)
    spectrum = hd.chern_spectrum(m.diagram, m.P, "surgery")
    assert sum(len(v) for v in spectrum.values()) == len(hd.generator_tuples(m.diagram, "surgery"))


@pytest.mark.parametrize("g", [1, 2])
def test_relabelling_regions_changes_nothing(g):
    m = built(g)
    d = m.diagram
    mapping = {r: f"R{k:04d}" for k, r in enumerate(reversed(d.region_order))}
    d2 = hd.relabel_regions(d, mapping)
    P2 = hd.fiber_domain(d2)
    assert {mapping[r]: v for r, v in m.P.as_dict().items()} == P2.as_dict()
    assert hd.euler_measure(d2, P2) == hd.euler_measure(d, m.P)
    assert hd.chern_evaluation(d2, m.x_prime, P2) == -2 * g
    assert hd.minimal_chern_points(d2, P2) == hd.minimal_chern_points(d, m.P)
    assert len(hd.periodic_domains(d2)) == len(hd.periodic_domains(d))


# --- admissibility --------------------------------------------------------------------------


@pytest.mark.parametrize("g", [1, 2, 3])
def test_wound_model_is_admissible(g):
    d = built(g).diagram
    assert hd.weak_admissibility(d).admissible


@pytest.mark.parametrize("g", [1, 2, 3])
def test_admissibility_has_an_exact_stiemke_certificate(g):
    d = built(g).diagram
    basis = hd.periodic_domains(d)
    y = stiemke_certificate(basis)
    assert y is not None and min(y) > 0
    for P in basis:
        assert sum(c * m for c, m in zip(y, P.multiplicities)) == 0


@pytest.mark.parametrize("g", [1, 2])
def test_prewinding_model_is_not_admissible(g):
    d = built(g, admissible=False).diagram
    rep = hd.weak_admissibility(d)
    assert not rep.admissible
    assert rep.witness.values() == {0, 1}
    assert min(rep.witness.multiplicities) >= 0 and not rep.witness.is_zero()
    assert stiemke_certificate(hd.periodic_domains(d)) is None
    # the witness is a genuine periodic domain
    assert hd.domain_from_multiplicities(d, rep.witness.as_dict()) == rep.witness


def test_once_wound_model_is_not_admissible():
    # the single winding leaves a nonnegative domain bounded by alpha1 - lambda
    rep = hd.weak_admissibility(built(1, "once").diagram)
    assert not rep.admissible
    assert rep.witness.boundary_text() == "alpha1 - lambda"


# --- minimal generators --------------------------------------------------------------------


@pytest.mark.parametrize("g", [1, 2, 3])
def test_unique_minimizer(g):
    m = built(g)
    value, tuples = hd.minimal_chern_points(m.diagram, m.P)
    assert value == -2 * g
    assert tuples == [m.x]


@pytest.mark.parametrize("g", [1, 2])
def test_every_knot_tuple_contains_x1(g):
    tuples = hd.generator_tuples(built(g).diagram, "knot")
    assert tuples and all(y[0] == "x1" for y in tuples)


@pytest.mark.parametrize("g", [1, 2, 3])
def test_two_tuples_at_the_next_level_once_wound(g):
    m = built(g, "once")
    d = m.diagram
    at = hd.tuples_at_most(d, m.P, 2 - 2 * g, "surgery").get(2 - 2 * g, [])
    tail = tuple(f"x{i}" for i in range(2, 2 * g + 2))
    assert at == [("u",) + tail, ("v",) + tail]


@pytest.mark.parametrize("g,winding,mode", [
    (1, "twice", "knot"), (1, "twice", "surgery"), (1, "once", "surgery"),
    (2, "twice", "knot"), (2, "once", "surgery"),
])
def test_pruned_search_matches_exhaustive_spectrum(g, winding, mode):
    m = built(g, winding)
    d = m.diagram
    spectrum = hd.chern_spectrum(d, m.P, mode)
    low = min(spectrum)
    assert hd.minimal_chern_points(d, m.P, mode) == (low, sorted(spectrum[low]))
    bound = low + 4
    pruned = hd.tuples_at_most(d, m.P, bound, mode)
    assert pruned == {k: sorted(v) for k, v in spectrum.items() if k <= bound}


def test_enumeration_cap():
    m = built(1)
    with pytest.raises(hd.EnumerationCapExceeded):
        hd.generator_tuples(m.diagram, "surgery", cap=10)
    with pytest.raises(hd.EnumerationCapExceeded):
        hd.chern_spectrum(m.diagram, m.P, "surgery", cap=10)


def test_knot_mode_needs_a_meridian():
    d = io.parse_diagram(TORUS)
    with pytest.raises(hd.DiagramError):
        hd.generator_tuples(d, "knot")
    assert hd.generator_tuples(d, "surgery") == [("p",)]


# --- fixtures ---------------------------------------------------------------------------------


def test_checked_in_fixtures_match_the_builders():
    for name, text in corpus.build_corpus().items():
        assert io.fixture_path(name).read_text() == text, name


@pytest.mark.parametrize("name,shift", [("model_g1.hd", 0), ("model_g2.hd", 0), ("model_g3.hd", 0),
                                        ("model_g1_once.hd", 2), ("model_g2_once.hd", 2)])
def test_fixture_diagrams_reproduce_measures(name, shift):
    # with a single winding the proxy u sits one level up
    d = io.load_fixture(name)
    P = hd.fiber_domain(d)
    g = (d.genus - 1) // 2
    assert hd.euler_measure(d, P) == -6 * g
    assert hd.chern_evaluation(d, d.distinguished, P) == -2 * g + shift
