#include "ghr/graycode.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "ghr/errors.hpp"

namespace ghr {

std::string GrayCode::flips_str() const {
    std::string s;
    for (std::size_t i = 0; i < flips.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(flips[i]);
    }
    return s;
}

std::vector<GrayCode> enumerate_gray_codes(int k, BitColumn start, std::uint64_t budget) {
    if (k < 1 || k > kMaxRows) throw ParameterError("gray code: k must be in 1..6");
    if (start.k != k) throw ParameterError("gray code: start column height != k");

    const int n = 1 << k;
    std::vector<GrayCode> out;
    std::vector<ColumnMask> path;
    std::vector<int> flips;
    path.reserve(static_cast<std::size_t>(n));
    flips.reserve(static_cast<std::size_t>(n - 1));
    path.push_back(start.mask);
    std::uint64_t visited = std::uint64_t{1} << start.mask;

    // DFS flipping row indices in ascending order gives flip sequences in
    // lexicographic order.
    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(path.size()) == n) {
            if (out.size() >= budget) throw ResourceError("gray code enumeration budget exceeded");
            out.push_back(GrayCode{k, path, flips});
            return;
        }
        const ColumnMask v = path.back();
        for (int b = 0; b < k; ++b) {
            const ColumnMask w = v ^ (ColumnMask{1} << b);
            if ((visited >> w) & 1u) continue;
            visited |= std::uint64_t{1} << w;
            path.push_back(w);
            flips.push_back(b);
            self(self);
            flips.pop_back();
            path.pop_back();
            visited &= ~(std::uint64_t{1} << w);
        }
    };
    rec(rec);
    return out;
}

bool is_gray_code(const BinaryMatrix& m) {
    const int k = m.rows();
    if (m.cols() != (1 << k)) throw ParameterError("is_gray_code: matrix must be k x 2^k");
    std::uint64_t seen = 0;
    for (int c = 0; c < m.cols(); ++c) {
        const std::uint64_t bit = std::uint64_t{1} << m.column(c);
        if (seen & bit) return false;  // repeated column; with 2^k columns this also covers {0,1}^k
        seen |= bit;
        if (c > 0 && popcount(m.column(c - 1) ^ m.column(c)) != 1) return false;
    }
    return true;
}

std::vector<int> transition_counts(const BinaryMatrix& m) {
    if (m.empty()) throw ParameterError("transition_counts: empty matrix");
    std::vector<int> t(static_cast<std::size_t>(m.rows()), 0);
    for (int c = 0; c + 1 < m.cols(); ++c) {
        const ColumnMask diff = m.column(c) ^ m.column(c + 1);
        for (int r = 0; r < m.rows(); ++r)
            if ((diff >> r) & 1u) ++t[static_cast<std::size_t>(r)];
    }
    return t;
}

namespace {

// Row permutation followed by the inversions restoring the first column:
// bit r of the permuted column is bit perm[r] of the original.
GrayCode apply_row_perm(const GrayCode& g, const std::vector<int>& perm, ColumnMask start) {
    GrayCode out;
    out.k = g.k;
    out.columns.reserve(g.columns.size());
    for (ColumnMask c : g.columns) {
        ColumnMask p = 0;
        for (int r = 0; r < g.k; ++r)
            if ((c >> perm[static_cast<std::size_t>(r)]) & 1u) p |= ColumnMask{1} << r;
        out.columns.push_back(p);
    }
    const ColumnMask inv = out.columns.front() ^ start;
    for (ColumnMask& c : out.columns) c ^= inv;
    out.flips.reserve(out.columns.size() - 1);
    for (std::size_t i = 0; i + 1 < out.columns.size(); ++i) {
        const ColumnMask d = out.columns[i] ^ out.columns[i + 1];
        out.flips.push_back(std::countr_zero(d));
    }
    return out;
}

}  // namespace

std::vector<GrayClass> gray_classes(int k, BitColumn start) {
    const std::vector<GrayCode> codes = enumerate_gray_codes(k, start);

    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);

    std::map<std::vector<int>, GrayClass> by_rep;  // keyed by representative flip sequence
    for (const GrayCode& g : codes) {
        std::vector<int> p = perm;
        const GrayCode* best = nullptr;
        GrayCode cand;
        std::size_t orbit = 0;
        std::vector<GrayCode> members;
        do {
            cand = apply_row_perm(g, p, start.mask);
            members.push_back(cand);
        } while (std::next_permutation(p.begin(), p.end()));
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        orbit = members.size();
        best = &members.front();

        if (!by_rep.contains(best->flips)) {
            std::vector<int> counts = transition_counts(best->to_matrix());
            std::sort(counts.begin(), counts.end(), std::greater<>());
            by_rep.emplace(best->flips, GrayClass{*best, orbit, std::move(counts)});
        }
    }

    std::vector<GrayClass> out;
    out.reserve(by_rep.size());
    for (auto& [_, cls] : by_rep) out.push_back(std::move(cls));
    return out;
}

}  // namespace ghr
