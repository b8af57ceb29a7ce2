#include "ghr/moment_geometry.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "ghr/errors.hpp"

namespace ghr {

Rational parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw ParameterError("rational with zero denominator: " + s);
        if (den < 0) {
            num = -num;
            den = -den;
        }
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw ParameterError("bad rational: " + s);
    }
}

std::string rational_str(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

std::vector<Rational> curve_eval(const Rational& t, int d) {
    if (d < 1) throw ParameterError("curve_eval: d must be >= 1");
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(d));
    Rational rising = 1;  // t(t-1)...(t-m+1)
    Int fact = 1;
    for (int m = 1; m <= d; ++m) {
        rising *= t - (m - 1);
        fact *= m;
        out.push_back(rising / Rational(fact));
    }
    return out;
}

Rational IntervalLayout::midpoint(int block, int sub) const {
    return (grid_point(block, sub) + grid_point(block, sub + 1)) / 2;
}

IntervalLayout layout_points(const ParamTriple& p) {
    IntervalLayout L;
    L.params = p;
    for (int i = 0; i < p.ell; ++i) L.prescribed.emplace_back(i);
    const int n = 1 << p.k;
    int t = p.ell;
    for (int b = 0; b < p.j; ++b) {
        std::vector<Rational> block;
        block.reserve(static_cast<std::size_t>(n + 1));
        for (int i = 0; i <= n; ++i) block.emplace_back(t++);
        L.grid.push_back(std::move(block));
    }
    return L;
}

namespace {

// Sign of an exact rational determinant: scale each row to integers (positive
// factors preserve the sign), then fraction-free Bareiss elimination.
int sign_det(std::vector<std::vector<Rational>> m) {
    const std::size_t n = m.size();
    std::vector<std::vector<Int>> a(n, std::vector<Int>(n));
    for (std::size_t r = 0; r < n; ++r) {
        Int lcm = 1;
        for (const Rational& v : m[r]) lcm = boost::multiprecision::lcm(lcm, denominator(v));
        for (std::size_t c = 0; c < n; ++c) {
            const Rational scaled = m[r][c] * Rational(lcm);
            a[r][c] = numerator(scaled);
        }
    }

    int sign = 1;
    Int prev = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            std::swap(a[piv], a[col]);
            sign = -sign;
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            for (std::size_t c = col + 1; c < n; ++c)
                a[r][c] = (a[col][col] * a[r][c] - a[r][col] * a[col][c]) / prev;
            a[r][col] = 0;
        }
        prev = a[col][col];
    }
    return a[n - 1][n - 1] > 0 ? sign : -sign;
}

int raw_side(const std::vector<Rational>& through, int d, const std::vector<Rational>& x) {
    const std::size_t n = static_cast<std::size_t>(d) + 1;
    std::vector<std::vector<Rational>> rows;
    rows.reserve(n);
    for (const Rational& t : through) {
        std::vector<Rational> row;
        row.reserve(n);
        row.emplace_back(1);
        for (Rational& v : curve_eval(t, d)) row.push_back(std::move(v));
        rows.push_back(std::move(row));
    }
    std::vector<Rational> last;
    last.reserve(n);
    last.emplace_back(1);
    for (const Rational& v : x) last.push_back(v);
    rows.push_back(std::move(last));
    return sign_det(std::move(rows));
}

}  // namespace

int side(const HyperplaneSpec& h, int d, const std::vector<Rational>& x) {
    if (static_cast<int>(h.through.size()) != d)
        throw ParameterError("side: hyperplane must pass through exactly d curve points");
    if (static_cast<int>(x.size()) != d) throw ParameterError("side: point dimension mismatch");
    if (h.orientation != 1 && h.orientation != -1) throw ParameterError("side: orientation must be +-1");
    return h.orientation * raw_side(h.through, d, x);
}

namespace {

// Transition between matrix columns c and c+1 of block b lies at the interior
// grid point shared by subintervals c and c+1.
std::vector<Rational> row_transition_params(const BinaryMatrix& m, int row, const IntervalLayout& L) {
    const int n = 1 << L.params.k;
    std::vector<Rational> pts;
    for (int g = 0; g + 1 < m.cols(); ++g) {
        if (m.bit(row, g) == m.bit(row, g + 1)) continue;
        const int b = g / n, c = g % n;
        if (c == n - 1) throw InternalError("transition at a block junction in a validated matrix");
        pts.push_back(L.grid_point(b, c + 1));
    }
    return pts;
}

}  // namespace

ArrangementSpec matrix_to_arrangement(const EquipartingMatrix& em, const IntervalLayout& L) {
    if (!(em.params == L.params)) throw ParameterError("matrix/layout parameter mismatch");
    const Diagnostic diag = validate(em);
    if (!diag.ok) throw ParameterError("matrix_to_arrangement: invalid matrix: " + diag.reason);

    const ParamTriple& p = em.params;
    const std::vector<int> counts = transition_counts(em.m);
    int deficient = -1;
    if (p.ell > 0) {
        for (int r = 0; r < p.k; ++r)
            if (counts[static_cast<std::size_t>(r)] == p.d - p.ell) {
                deficient = r;
                break;
            }
    }

    ArrangementSpec a;
    a.d = p.d;
    const int n = 1 << p.k;
    for (int s = 0; s < p.k; ++s) {
        HyperplaneSpec h;
        if (s == deficient) h.through = L.prescribed;
        std::vector<Rational> trans = row_transition_params(em.m, s, L);
        h.through.insert(h.through.end(), trans.begin(), trans.end());
        if (static_cast<int>(h.through.size()) != p.d)
            throw InternalError("hyperplane point count != d for a validated matrix");

        // Orient so the row's first 0-entry subinterval lies positive.
        int c0 = 0;
        while (em.m.bit(s, c0)) ++c0;
        h.orientation = 1;
        const int sgn = side(h, p.d, curve_eval(L.midpoint(c0 / n, c0 % n), p.d));
        if (sgn == 0) throw DegeneracyError("subinterval midpoint lies on its hyperplane");
        h.orientation = sgn;
        a.hyperplanes.push_back(std::move(h));
    }
    return a;
}

VerifyResult verify_equipartition(const ArrangementSpec& a, const IntervalLayout& L,
                                  const EquipartingMatrix& em) {
    const ParamTriple& p = L.params;
    if (a.d != p.d || static_cast<int>(a.hyperplanes.size()) != p.k)
        throw ParameterError("verify: arrangement/layout mismatch");
    if (em.m.rows() != p.k || em.m.cols() != p.width())
        throw ParameterError("verify: matrix/layout mismatch");

    const int n = 1 << p.k;
    for (int b = 0; b < p.j; ++b) {
        for (int c = 0; c < n; ++c) {
            const std::vector<Rational> x = curve_eval(L.midpoint(b, c), p.d);
            for (int s = 0; s < p.k; ++s) {
                const int sgn = side(a.hyperplanes[static_cast<std::size_t>(s)], p.d, x);
                if (sgn == 0)
                    throw DegeneracyError("midpoint of block " + std::to_string(b + 1) +
                                          " subinterval " + std::to_string(c + 1) +
                                          " lies on hyperplane " + std::to_string(s + 1));
                const int want = em.m.bit(s, b * n + c) ? -1 : 1;
                if (sgn != want)
                    return {false, "block " + std::to_string(b + 1) + " subinterval " +
                                       std::to_string(c + 1) + " hyperplane " + std::to_string(s + 1)};
            }
        }
    }
    // Each block's 2^k equal-length subintervals carry all 2^k sign vectors
    // exactly once, so every orthant receives 1/2^k of each interval mass.
    return {};
}

EquipartingMatrix arrangement_to_matrix(const ArrangementSpec& a, const IntervalLayout& L) {
    const ParamTriple& p = L.params;
    if (a.d != p.d || static_cast<int>(a.hyperplanes.size()) != p.k)
        throw ParameterError("arrangement_to_matrix: arrangement/layout mismatch");

    const int n = 1 << p.k;
    std::vector<std::string> rows(static_cast<std::size_t>(p.k));
    for (int s = 0; s < p.k; ++s) {
        std::string& row = rows[static_cast<std::size_t>(s)];
        row.reserve(static_cast<std::size_t>(p.width()));
        for (int b = 0; b < p.j; ++b) {
            for (int c = 0; c < n; ++c) {
                const int sgn =
                    side(a.hyperplanes[static_cast<std::size_t>(s)], p.d, curve_eval(L.midpoint(b, c), p.d));
                if (sgn == 0)
                    throw DegeneracyError("midpoint of block " + std::to_string(b + 1) +
                                          " subinterval " + std::to_string(c + 1) +
                                          " lies on hyperplane " + std::to_string(s + 1));
                row += (sgn > 0) ? '0' : '1';
            }
        }
    }
    return {p, BinaryMatrix::from_rows(rows)};
}

std::string arrangement_to_json(const ArrangementSpec& a) {
    nlohmann::ordered_json doc;
    doc["d"] = a.d;
    doc["hyperplanes"] = nlohmann::json::array();
    for (const HyperplaneSpec& h : a.hyperplanes) {
        nlohmann::ordered_json hj;
        hj["through"] = nlohmann::json::array();
        for (const Rational& t : h.through) hj["through"].push_back(rational_str(t));
        hj["orientation"] = h.orientation;
        doc["hyperplanes"].push_back(std::move(hj));
    }
    return doc.dump();
}

ArrangementSpec arrangement_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError(std::string("arrangement json: ") + e.what());
    }
    ArrangementSpec a;
    a.d = doc.at("d").get<int>();
    for (const auto& hj : doc.at("hyperplanes")) {
        HyperplaneSpec h;
        for (const auto& t : hj.at("through")) h.through.push_back(parse_rational(t.get<std::string>()));
        h.orientation = hj.at("orientation").get<int>();
        a.hyperplanes.push_back(std::move(h));
    }
    return a;
}

}  // namespace ghr
