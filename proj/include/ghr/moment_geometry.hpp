#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ghr/equipart.hpp"

namespace ghr {

// Exactness carrier: arbitrary-precision rational, q > 0, lowest terms.
using Rational = boost::multiprecision::cpp_rational;

Rational parse_rational(const std::string& s);   // "p/q" or "p"
std::string rational_str(const Rational& r);     // "p/q" with q>0 and gcd 1, or "p"

// gamma-hat(t) = (t, C(t,2), ..., C(t,d)) with C(t,m) = t(t-1)...(t-m+1)/m!.
// Integer parameters give integer points whose coordinates m > t vanish.
std::vector<Rational> curve_eval(const Rational& t, int d);

// The ell prescribed parameters 0..ell-1 followed by j blocks of 2^k + 1
// consecutive integer grid parameters starting at ell. Each block's 2^k
// subintervals have equal parameter length.
struct IntervalLayout {
    ParamTriple params;
    std::vector<Rational> prescribed;            // ell parameters
    std::vector<std::vector<Rational>> grid;     // j blocks of 2^k + 1 parameters

    // Interior grid point shared by subintervals sub-1 and sub of a block.
    const Rational& grid_point(int block, int idx) const {
        return grid[static_cast<std::size_t>(block)][static_cast<std::size_t>(idx)];
    }
    Rational midpoint(int block, int sub) const;
};

IntervalLayout layout_points(const ParamTriple& p);

// An affine hyperplane in R^d through d distinct curve points, with a sign
// giving its orientation.
struct HyperplaneSpec {
    std::vector<Rational> through;  // d curve parameters, strictly increasing
    int orientation = 1;            // +1 or -1
};

struct ArrangementSpec {
    int d = 0;
    std::vector<HyperplaneSpec> hyperplanes;
};

// orientation * sign of det of rows (1, curve(p_1)), ..., (1, curve(p_d)),
// (1, x). Exact; returns -1, 0, or +1.
int side(const HyperplaneSpec& h, int d, const std::vector<Rational>& x);

// Row s maps to hyperplane H_s through its transition points; the row with
// transition count d - ell additionally passes through all ell prescribed
// points. Orientation puts the row's first 0-entry subinterval on the
// positive side.
ArrangementSpec matrix_to_arrangement(const EquipartingMatrix& em, const IntervalLayout& L);

struct VerifyResult {
    bool ok = true;
    std::string witness;  // names block/subinterval/hyperplane on failure
};

// True iff every subinterval midpoint's sign vector matches the matrix column
// under the convention 0 <-> positive side.
VerifyResult verify_equipartition(const ArrangementSpec& a, const IntervalLayout& L,
                                  const EquipartingMatrix& em);

// Entry (s, c) is 0 iff subinterval c's midpoint lies on the positive side of
// H_s. Throws DegeneracyError if a midpoint lies on a hyperplane.
EquipartingMatrix arrangement_to_matrix(const ArrangementSpec& a, const IntervalLayout& L);

std::string arrangement_to_json(const ArrangementSpec& a);
ArrangementSpec arrangement_from_json(const std::string& text);

}  // namespace ghr
