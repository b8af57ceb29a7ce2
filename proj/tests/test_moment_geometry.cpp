#include <doctest.h>

#include <algorithm>
#include <set>

#include "ghr/errors.hpp"
#include "ghr/moment_geometry.hpp"

using namespace ghr;

namespace {

EquipartingMatrix sample_matrix() {
    return {ParamTriple(2, 3, 5, 1),
            BinaryMatrix::from_rows({"0011001111110000", "0001111001100011", "0111100000111001"})};
}

int deficient_row(const EquipartingMatrix& em) {
    if (em.params.ell == 0) return -1;
    const std::vector<int> counts = transition_counts(em.m);
    for (int r = 0; r < em.params.k; ++r)
        if (counts[static_cast<std::size_t>(r)] == em.params.d - em.params.ell) return r;
    return -1;
}

}  // namespace

TEST_CASE("curve evaluation") {
    CHECK(curve_eval(Rational(0), 4) == std::vector<Rational>{0, 0, 0, 0});
    CHECK(curve_eval(Rational(2), 3) == std::vector<Rational>{2, 1, 0});

    // Integer parameter t: the first t coordinates are positive, the rest 0.
    const auto p = curve_eval(Rational(3), 6);
    for (int m = 0; m < 3; ++m) CHECK(p[static_cast<std::size_t>(m)] > 0);
    for (int m = 3; m < 6; ++m) CHECK(p[static_cast<std::size_t>(m)] == 0);

    CHECK(curve_eval(Rational(1, 2), 2) ==
          std::vector<Rational>{Rational(1, 2), Rational(-1, 8)});
}

TEST_CASE("rational parse and format") {
    CHECK(rational_str(parse_rational("3/6")) == "1/2");
    CHECK(rational_str(parse_rational("-4/2")) == "-2");
    CHECK(rational_str(parse_rational("7")) == "7");
    CHECK(parse_rational("2/-4") == Rational(-1, 2));
    CHECK_THROWS_AS(parse_rational("1/0"), ParameterError);
    CHECK_THROWS_AS(parse_rational("abc"), ParameterError);
}

TEST_CASE("layout placement") {
    const IntervalLayout L = layout_points(ParamTriple(2, 3, 5, 1));
    REQUIRE(L.prescribed.size() == 1);
    CHECK(L.prescribed[0] == 0);
    REQUIRE(L.grid.size() == 2);
    REQUIRE(L.grid[0].size() == 9);
    CHECK(L.grid[0].front() == 1);
    CHECK(L.grid[0].back() == 9);
    CHECK(L.grid[1].front() == 10);
    CHECK(L.grid[1].back() == 18);
    CHECK(L.midpoint(0, 0) == Rational(3, 2));

    // Prescribed points lie strictly left of every grid point; blocks are
    // disjoint and equally spaced.
    for (const Rational& q : L.prescribed)
        for (const auto& block : L.grid)
            for (const Rational& g : block) CHECK(q < g);
    CHECK(L.grid[0].back() < L.grid[1].front());

    const IntervalLayout small = layout_points(ParamTriple(1, 2, 2, 1));
    CHECK(small.prescribed == std::vector<Rational>{0});
    CHECK(small.grid[0] == std::vector<Rational>{1, 2, 3, 4, 5});
}

TEST_CASE("side is the oriented determinant sign") {
    // d=1: hyperplane through gamma(1); orient so gamma(0) is positive.
    HyperplaneSpec h{{Rational(1)}, 1};
    const int at0 = side(h, 1, curve_eval(Rational(0), 1));
    REQUIRE(at0 != 0);
    h.orientation = at0;  // now gamma(0) is on the positive side
    CHECK(side(h, 1, curve_eval(Rational(0), 1)) == 1);
    CHECK(side(h, 1, curve_eval(Rational(2), 1)) == -1);
    CHECK(side(h, 1, curve_eval(Rational(1), 1)) == 0);  // defining point

    CHECK_THROWS_AS(side(HyperplaneSpec{{Rational(1)}, 2}, 1, {Rational(0)}), ParameterError);
    CHECK_THROWS_AS(side(h, 1, {Rational(0), Rational(1)}), ParameterError);
}

TEST_CASE("matrix_to_arrangement on the sample matrix") {
    const EquipartingMatrix ex = sample_matrix();
    const IntervalLayout L = layout_points(ex.params);
    const ArrangementSpec a = matrix_to_arrangement(ex, L);
    REQUIRE(a.hyperplanes.size() == 3);

    // Row 1 is deficient (count 4): one prescribed point plus 4 transitions.
    CHECK(a.hyperplanes[0].through ==
          std::vector<Rational>{0, 3, 5, 7, 14});
    CHECK(a.hyperplanes[1].through == std::vector<Rational>{4, 8, 11, 13, 16});
    CHECK(a.hyperplanes[2].through == std::vector<Rational>{2, 6, 12, 15, 17});

    // Each hyperplane meets the curve in exactly its d defining layout
    // parameters: a degree-d polynomial admits no further roots.
    std::vector<Rational> layout_params = L.prescribed;
    for (const auto& block : L.grid) layout_params.insert(layout_params.end(), block.begin(), block.end());
    for (const HyperplaneSpec& h : a.hyperplanes) {
        CHECK(h.through.size() == 5);
        const std::set<Rational> through(h.through.begin(), h.through.end());
        CHECK(through.size() == 5);
        for (const Rational& t : layout_params)
            CHECK((side(h, 5, curve_eval(t, 5)) == 0) == through.contains(t));
    }
}

TEST_CASE("verification of the sample matrix and its orientation flip") {
    const EquipartingMatrix ex = sample_matrix();
    const IntervalLayout L = layout_points(ex.params);
    ArrangementSpec a = matrix_to_arrangement(ex, L);
    CHECK(verify_equipartition(a, L, ex).ok);

    a.hyperplanes[1].orientation = -a.hyperplanes[1].orientation;
    const VerifyResult v = verify_equipartition(a, L, ex);
    CHECK_FALSE(v.ok);
    CHECK(v.witness == "block 1 subinterval 1 hyperplane 2");
}

TEST_CASE("round trip on every enumerated class") {
    const std::vector<ParamTriple> cases = {
        ParamTriple(2, 2, 3, 0),
        ParamTriple(3, 2, 5, 1),
        ParamTriple(2, 3, 5, 1),
        ParamTriple(1, 4, 4, 1),
    };
    for (const ParamTriple& p : cases) {
        const IntervalLayout L = layout_points(p);
        for (const EquipartingMatrix& em : enumerate_classes(p)) {
            const ArrangementSpec a = matrix_to_arrangement(em, L);
            CHECK(verify_equipartition(a, L, em).ok);
            CHECK(arrangement_to_matrix(a, L) == em);
        }
    }
}

TEST_CASE("prescribed-point containment") {
    // side(H_r, q) = 0 for the deficient row r and every prescribed q;
    // side(H_s, q_1) != 0 for every other hyperplane.
    for (const ParamTriple& p : {ParamTriple(2, 3, 5, 1), ParamTriple(1, 4, 4, 1)}) {
        const IntervalLayout L = layout_points(p);
        for (const EquipartingMatrix& em : enumerate_classes(p)) {
            const ArrangementSpec a = matrix_to_arrangement(em, L);
            const int r = deficient_row(em);
            REQUIRE(r >= 0);
            for (const Rational& q : L.prescribed)
                CHECK(side(a.hyperplanes[static_cast<std::size_t>(r)], p.d, curve_eval(q, p.d)) == 0);
            const auto q1 = curve_eval(L.prescribed[0], p.d);
            for (int s = 0; s < p.k; ++s)
                if (s != r) CHECK(side(a.hyperplanes[static_cast<std::size_t>(s)], p.d, q1) != 0);
        }
    }

    // On a deficient-row-first matrix this is the literal Q subset H_1 form.
    const EquipartingMatrix ex = sample_matrix();
    const IntervalLayout L = layout_points(ex.params);
    const ArrangementSpec a = matrix_to_arrangement(ex, L);
    CHECK(deficient_row(ex) == 0);
    CHECK(side(a.hyperplanes[0], 5, curve_eval(Rational(0), 5)) == 0);
}

TEST_CASE("single hyperplane ham-sandwich case") {
    const ParamTriple p(1, 1, 1, 0);
    const IntervalLayout L = layout_points(p);
    const EquipartingMatrix em{p, BinaryMatrix::from_rows({"01"})};
    REQUIRE(validate(em).ok);
    const ArrangementSpec a = matrix_to_arrangement(em, L);
    CHECK(a.hyperplanes[0].through == std::vector<Rational>{1});  // block midpoint
    const EquipartingMatrix back = arrangement_to_matrix(a, L);
    CHECK((back.m.row_string(0) == "01" || back.m.row_string(0) == "10"));
    CHECK(back == em);
}

TEST_CASE("perturbed arrangements are caught") {
    const EquipartingMatrix ex = sample_matrix();
    const IntervalLayout L = layout_points(ex.params);

    // Moving one defining point off the grid drops that row's transition
    // count; validate rejects the induced matrix.
    ArrangementSpec a = matrix_to_arrangement(ex, L);
    a.hyperplanes[2].through[4] = Rational(-5);
    const EquipartingMatrix back = arrangement_to_matrix(a, L);
    CHECK_FALSE(validate(back).ok);

    // A hyperplane through a subinterval midpoint is degenerate.
    ArrangementSpec b = matrix_to_arrangement(ex, L);
    b.hyperplanes[1].through[0] = Rational(3, 2);
    CHECK_THROWS_AS(arrangement_to_matrix(b, L), DegeneracyError);
}

TEST_CASE("arrangement json round trip") {
    const EquipartingMatrix ex = sample_matrix();
    const IntervalLayout L = layout_points(ex.params);
    const ArrangementSpec a = matrix_to_arrangement(ex, L);
    const ArrangementSpec b = arrangement_from_json(arrangement_to_json(a));
    CHECK(b.d == a.d);
    REQUIRE(b.hyperplanes.size() == a.hyperplanes.size());
    for (std::size_t i = 0; i < a.hyperplanes.size(); ++i) {
        CHECK(b.hyperplanes[i].through == a.hyperplanes[i].through);
        CHECK(b.hyperplanes[i].orientation == a.hyperplanes[i].orientation);
    }
}
