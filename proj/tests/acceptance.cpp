// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every expected value and tolerance is pinned here; all checks are
// exact (integer/rational), with wall-clock budgets where stated.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ghr/admissibility.hpp"
#include "ghr/cw_model.hpp"
#include "ghr/equipart.hpp"
#include "ghr/graycode.hpp"
#include "ghr/moment_geometry.hpp"

using namespace ghr;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

struct Harness {
    int failures = 0;

    void criterion(int id, const std::string& name, const std::function<void(Check&)>& fn) {
        Check c;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            fn(c);
        } catch (const std::exception& e) {
            c.require(false, std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s criterion %d: %s [%.2fs]%s%s\n", c.ok ? "PASS" : "FAIL", id, name.c_str(),
                    secs, c.ok ? "" : " -- ", c.ok ? "" : c.detail.c_str());
        if (!c.ok) ++failures;
    }
};

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
    Harness h;

    h.criterion(1, "reference class counts, exact, k=3 under 5s and k=4 under 60s", [](Check& c) {
        struct Row {
            int j, k;
            const char* expect;
        };
        const std::vector<Row> k3 = {{2, 3, "13"},      {3, 3, "60"},        {4, 3, "2015"},
                                     {5, 3, "35040"},   {6, 3, "185130"},    {7, 3, "7572908"},
                                     {8, 3, "132909840"}, {9, 3, "732952248"}};
        const std::vector<Row> k4 = {{1, 4, "16"}, {2, 4, "37964"}};

        auto t0 = std::chrono::steady_clock::now();
        for (const Row& r : k3) {
            const auto [d, ell] = ramos_bound(r.j, r.k);
            c.require(count_classes(ParamTriple(r.j, r.k, d, ell)) == Int(r.expect),
                      "count mismatch at (" + std::to_string(r.j) + ",3)");
        }
        c.require(seconds_since(t0) < 5.0, "k=3 rows exceeded 5s");

        t0 = std::chrono::steady_clock::now();
        for (const Row& r : k4) {
            const auto [d, ell] = ramos_bound(r.j, r.k);
            c.require(count_classes(ParamTriple(r.j, r.k, d, ell)) == Int(r.expect),
                      "count mismatch at (" + std::to_string(r.j) + ",4)");
        }
        c.require(seconds_since(t0) < 60.0, "k=4 rows exceeded 60s");
    });

    h.criterion(2, "gray code counts and class multisets, exact", [](Check& c) {
        c.require(enumerate_gray_codes(3, BitColumn::zero(3)).size() == 18, "k=3 code count != 18");
        c.require(enumerate_gray_codes(2, BitColumn::zero(2)).size() == 2, "k=2 code count != 2");

        const auto classes = gray_classes(3, BitColumn::zero(3));
        c.require(classes.size() == 3, "k=3 class count != 3");
        std::set<std::vector<int>> multisets;
        for (const GrayClass& g : classes) multisets.insert(g.sorted_counts);
        c.require(multisets == std::set<std::vector<int>>{{3, 2, 2}, {3, 3, 1}, {4, 2, 1}},
                  "k=3 class transition multisets wrong");
    });

    h.criterion(3, "enumeration equals the counting DP, exact, under 60s", [](Check& c) {
        const auto t0 = std::chrono::steady_clock::now();
        std::vector<ParamTriple> cases;
        for (int j = 1; j <= 8; ++j) {
            const auto [d, ell] = ramos_bound(j, 2);
            cases.emplace_back(j, 2, d, ell);
        }
        for (const auto& [j, k] : std::vector<std::pair<int, int>>{{2, 3}, {3, 3}, {4, 3}, {1, 4}}) {
            const auto [d, ell] = ramos_bound(j, k);
            cases.emplace_back(j, k, d, ell);
        }
        for (const ParamTriple& p : cases) {
            const Int n = count_classes(p);
            c.require(n <= 100000, "case unexpectedly above the 1e5 oracle bound");
            c.require(Int(enumerate_classes(p).size()) == n,
                      "enumerate != count at (" + std::to_string(p.j) + "," + std::to_string(p.k) + ")");
        }
        c.require(seconds_since(t0) < 60.0, "oracle equivalence exceeded 60s");
    });

    h.criterion(4, "geometry round-trip and verification, exact rationals, under 30s", [](Check& c) {
        const auto t0 = std::chrono::steady_clock::now();
        const std::vector<ParamTriple> cases = {
            ParamTriple(2, 3, 5, 1), ParamTriple(1, 4, 4, 1), ParamTriple(1, 2, 2, 1),
            ParamTriple(2, 2, 3, 0), ParamTriple(3, 2, 5, 1), ParamTriple(4, 2, 6, 0),
        };
        for (const ParamTriple& p : cases) {
            const IntervalLayout L = layout_points(p);
            for (const EquipartingMatrix& em : enumerate_classes(p)) {
                const ArrangementSpec a = matrix_to_arrangement(em, L);
                c.require(verify_equipartition(a, L, em).ok,
                          "verification failed at (" + std::to_string(p.j) + "," + std::to_string(p.k) + ")");
                c.require(arrangement_to_matrix(a, L) == em,
                          "round trip not bit-exact at (" + std::to_string(p.j) + "," +
                              std::to_string(p.k) + ")");
            }
        }
        c.require(seconds_since(t0) < 30.0, "geometry checks exceeded 30s");
    });

    h.criterion(5, "two-hyperplane closed forms and parity pattern, exact", [](Check& c) {
        for (int j = 1; j <= 12; ++j) {
            const auto [d, ell] = ramos_bound(j, 2);
            c.require(k2_count(j) == count_classes(ParamTriple(j, 2, d, ell)),
                      "closed form != DP at j=" + std::to_string(j));
        }
        for (int j = 2; j <= 64; j += 2)
            c.require(((k2_count(j) % 2) != 0) == ((j & (j - 1)) == 0),
                      "even-j parity wrong at j=" + std::to_string(j));
        for (int j = 1; j <= 63; j += 2)
            c.require(((k2_count(j) % 2) != 0) == (((j + 1) & j) == 0),
                      "odd-j parity wrong at j=" + std::to_string(j));
    });

    h.criterion(6, "kummer valuation vs brute force, n<=64, p in {2,3,5}, exact", [](Check& c) {
        for (int p : {2, 3, 5}) {
            for (int n = 0; n <= 64; ++n) {
                for (int m = 0; m <= n; ++m) {
                    Int b = binomial(n, m);
                    int v = 0;
                    while (b % p == 0) {
                        b /= p;
                        ++v;
                    }
                    c.require(kummer_valuation(n, m, p) == v,
                              "valuation mismatch at C(" + std::to_string(n) + "," + std::to_string(m) +
                                  "), p=" + std::to_string(p));
                }
            }
        }
    });

    h.criterion(7, "cell model: euler, orbits, non-free subcomplex, exact, under 60s", [](Check& c) {
        const auto t0 = std::chrono::steady_clock::now();
        for (const auto& [d, k] :
             std::vector<std::pair<int, int>>{{0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 2}}) {
            const std::string amb = "(" + std::to_string(d) + "," + std::to_string(k) + ")";
            const ComplexStats st = stats(d, k);
            const int n1 = (d + 1) * k - 1;
            c.require(st.euler == 1 + ((n1 % 2 == 0) ? 1 : -1), "euler wrong at " + amb);
            c.require(st.orbits_by_dim.at(n1) == 1, "top orbit count wrong at " + amb);
            c.require(st.orbits_by_dim.at(n1 - 1) == static_cast<std::uint64_t>(k),
                      "subtop orbit count wrong at " + amb);

            // face closure of the non-free subcomplex
            const auto by_dim = enumerate_cells(d, k);
            const auto nonfree = [&, d = d](const Cell& cell) {
                return std::find(cell.sym.I.begin(), cell.sym.I.end(), d + 2) != cell.sym.I.end();
            };
            std::map<int, std::vector<std::pair<const Cell*, RatColumns>>> reps;
            for (const auto& [dim, cs] : by_dim)
                for (const Cell& cell : cs) reps[dim].emplace_back(&cell, representative(cell));
            for (const auto& [dim, cs] : by_dim) {
                if (!reps.contains(dim - 1)) continue;
                for (const Cell& cell : cs) {
                    if (!nonfree(cell)) continue;
                    for (const auto& [cand, rep] : reps.at(dim - 1))
                        if (closure_contains(cell.sym, rep))
                            c.require(nonfree(*cand), "non-free subcomplex not face-closed at " + amb);
                }
            }
        }

        const auto c02 = enumerate_cells(0, 2);
        c.require(c02.at(1).size() == 8 && c02.at(0).size() == 8, "(0,2) cell counts != 8+8");
        c.require(seconds_since(t0) < 60.0, "cell model checks exceeded 60s");
    });

    h.criterion(8, "theta facet structure and group relations, exact", [](Check& c) {
        for (const auto& [d, k] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {2, 3}, {3, 3}}) {
            for (int ell = 0; ell <= d - 1; ++ell) {
                const std::string amb = "(d=" + std::to_string(d) + ",k=" + std::to_string(k) +
                                        ",ell=" + std::to_string(ell) + ")";
                const std::vector<Cell> rule = theta_facets(d, k, ell);
                const std::vector<Cell> scan = facets(theta_cell(d, k, ell));
                const std::size_t expect = (ell == 1) ? 2 * (static_cast<std::size_t>(k) - 1) + 4
                                                      : 2 * static_cast<std::size_t>(k);
                c.require(scan.size() == expect, "facet count wrong at " + amb);
                c.require(std::set<Cell>(rule.begin(), rule.end()) ==
                              std::set<Cell>(scan.begin(), scan.end()),
                          "closed-form facets disagree with the scan at " + amb);

                c.require(rule[1] == act(SignedPermutation::epsilon(k, 1), rule[0]),
                          "gamma_2 != eps_1.gamma_1 at " + amb);
                if (ell == 1) {
                    const auto tau12 = SignedPermutation::transposition(k, 1, 2);
                    c.require(rule[3] == act(SignedPermutation::epsilon(k, 2), rule[2]),
                              "four-cell eps_2 relation fails at " + amb);
                    c.require(rule[4] == act(tau12, rule[2]), "four-cell tau_12 relation fails at " + amb);
                    c.require(rule[5] == act(tau12.compose(SignedPermutation::epsilon(k, 1)), rule[2]),
                              "four-cell eps_1-then-tau_12 relation fails at " + amb);
                }
                std::size_t i = (ell == 0) ? 2 : ((ell == 1) ? 6 : 4);
                int r = (ell == 0) ? 2 : 3;
                for (; i + 1 < rule.size(); i += 2, ++r)
                    c.require(rule[i + 1] == act(SignedPermutation::transposition(k, r - 1, r), rule[i]),
                              "tau pair relation fails at " + amb);
            }
        }
    });

    h.criterion(9, "decision layer reproduces the known admissibility results, exact", [](Check& c) {
        const DeltaReport a = decide(2, 3);
        c.require(a.status == DeltaStatus::Tight && a.d == 5, "Delta(2,3) != 5 TIGHT");
        const DeltaReport b = decide(4, 3);
        c.require(b.status == DeltaStatus::Tight && b.d == 10, "Delta(4,3) != 10 TIGHT");

        for (int t = 1; t <= 6; ++t) {
            const DeltaReport mid = decide(1 << t, 2);
            c.require(mid.status == DeltaStatus::Tight && mid.d == 3 * (1 << (t - 1)),
                      "Delta(2^t,2) wrong at t=" + std::to_string(t));
            const DeltaReport lo = decide((1 << t) - 1, 2);
            c.require(lo.status == DeltaStatus::Tight && lo.d == 3 * (1 << (t - 1)) - 1,
                      "Delta(2^t-1,2) wrong at t=" + std::to_string(t));
            const DeltaReport hi = decide((1 << t) + 1, 2);
            c.require(hi.status == DeltaStatus::Tight && hi.d == 3 * (1 << (t - 1)) + 2,
                      "Delta(2^t+1,2) wrong at t=" + std::to_string(t));
        }

        const DeltaReport r14 = decide(1, 4);
        c.require(r14.status == DeltaStatus::UpperBound && r14.lower == 4 && r14.upper &&
                      *r14.upper == 5,
                  "Delta(1,4) bounds != [4,5]");
        const DeltaReport r24 = decide(2, 4);
        c.require(r24.status == DeltaStatus::UpperBound && r24.lower == 8 && r24.upper &&
                      *r24.upper == 10,
                  "Delta(2,4) bounds != [8,10]");
    });

    if (h.failures == 0) {
        std::printf("ACCEPTANCE: all criteria passed\n");
        return 0;
    }
    std::printf("ACCEPTANCE: %d criterion(s) failed\n", h.failures);
    return 1;
}
