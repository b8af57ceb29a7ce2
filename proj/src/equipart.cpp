#include "ghr/equipart.hpp"

#include <algorithm>
#include <cstdlib>
#include <future>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "ghr/errors.hpp"

namespace ghr {

ParamTriple::ParamTriple(int j_, int k_, int d_, int ell_) : j(j_), k(k_), d(d_), ell(ell_) {
    if (j < 1) throw ParameterError("params: j must be >= 1");
    if (k < 1 || k > kMaxRows) throw ParameterError("params: k must be in 1..6");
    if (d < 1) throw ParameterError("params: d must be >= 1");
    if (ell < 0 || ell > d - 1) throw ParameterError("params: ell must satisfy 0 <= ell <= d-1");
    const long long lhs = static_cast<long long>(d) * k;
    const long long rhs = (((1LL << k) - 1) * j) + ell;
    if (lhs != rhs) throw ParameterError("params: d*k != (2^k - 1)*j + ell");
}

namespace {

std::vector<int> target_multiset(const ParamTriple& p) {
    std::vector<int> t(static_cast<std::size_t>(p.k), p.d);
    t[0] = p.d - p.ell;
    std::sort(t.begin(), t.end());
    return t;
}

}  // namespace

Diagnostic validate(const EquipartingMatrix& em) {
    const ParamTriple& p = em.params;
    if (em.m.rows() != p.k || em.m.cols() != p.width())
        throw ParameterError("validate: matrix shape does not match params");

    const int n = 1 << p.k;
    for (int i = 0; i < p.j; ++i) {
        std::vector<ColumnMask> block(em.m.columns().begin() + i * n,
                                      em.m.columns().begin() + (i + 1) * n);
        if (!is_gray_code(BinaryMatrix(p.k, std::move(block))))
            return {false, "block " + std::to_string(i + 1) + " is not a Gray code"};
    }
    for (int i = 0; i + 1 < p.j; ++i) {
        if (em.m.column((i + 1) * n - 1) != em.m.column((i + 1) * n))
            return {false, "chaining break between blocks " + std::to_string(i + 1) + " and " +
                               std::to_string(i + 2)};
    }
    std::vector<int> counts = transition_counts(em.m);
    std::sort(counts.begin(), counts.end());
    if (counts != target_multiset(p)) return {false, "transition multiset mismatch"};
    return {};
}

EquipartingMatrix normalize(EquipartingMatrix em) {
    const ColumnMask first = em.m.column(0);
    for (int r = 0; r < em.m.rows(); ++r)
        if ((first >> r) & 1u) em.m.invert_row(r);
    return em;
}

std::string CanonicalForm::str() const {
    std::string s;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i) s += '/';
        s += rows[i];
    }
    return s;
}

CanonicalForm canonical_form(const EquipartingMatrix& em) {
    // Rows have equal length, so the lexicographically least row concatenation
    // over all k! permutations is attained by sorting the rows.
    std::vector<std::string> rows = normalize(em).m.row_strings();
    std::sort(rows.begin(), rows.end());
    return CanonicalForm{std::move(rows)};
}

ProfileTable build_profile_table(int k, std::uint64_t budget) {
    // Profiles for start c are the bit-translates of the profile for start 0:
    // x -> x ^ c maps codes to codes, preserving flip sequences.
    const std::vector<GrayCode> codes = enumerate_gray_codes(k, BitColumn::zero(k), budget);

    std::map<std::pair<ColumnMask, std::vector<int>>, std::uint64_t> agg;
    for (const GrayCode& g : codes)
        ++agg[{g.end(), transition_counts(g.to_matrix())}];

    ProfileTable t;
    t.k_ = k;
    t.total_ = codes.size();
    t.entries_.resize(std::size_t{1} << k);
    for (ColumnMask start = 0; start < (ColumnMask{1} << k); ++start) {
        auto& e = t.entries_[start];
        e.reserve(agg.size());
        for (const auto& [key, mult] : agg)
            e.push_back({key.first ^ start, key.second, mult});
        std::sort(e.begin(), e.end(), [](const auto& a, const auto& b) {
            return std::tie(a.end, a.tvec) < std::tie(b.end, b.tvec);
        });
    }
    return t;
}

const ProfileTable& ProfileTable::get(int k, std::uint64_t budget) {
    static std::mutex mu;
    static std::map<int, ProfileTable> cache;
    std::scoped_lock lock(mu);
    auto it = cache.find(k);
    if (it == cache.end()) it = cache.emplace(k, build_profile_table(k, budget)).first;
    return it->second;
}

namespace {

// DP state: end column in the low 6 bits, then one byte per accumulated row
// count. Requires d < 256.
std::uint64_t pack_state(ColumnMask end, const std::vector<int>& counts) {
    std::uint64_t key = end;
    int shift = 6;
    for (int c : counts) {
        key |= static_cast<std::uint64_t>(c) << shift;
        shift += 8;
    }
    return key;
}

}  // namespace

Int count_classes(const ParamTriple& p) {
    if (p.d > 255) throw ResourceError("count_classes: d exceeds the packed-state limit");
    const ProfileTable& prof = ProfileTable::get(p.k);

    std::unordered_map<std::uint64_t, Int> cur;
    cur.emplace(pack_state(0, std::vector<int>(static_cast<std::size_t>(p.k), 0)), Int(1));

    std::vector<int> counts(static_cast<std::size_t>(p.k));
    for (int step = 0; step < p.j; ++step) {
        std::unordered_map<std::uint64_t, Int> nxt;
        nxt.reserve(cur.size() * 4);
        for (const auto& [key, val] : cur) {
            const ColumnMask end = static_cast<ColumnMask>(key & 0x3f);
            for (const auto& entry : prof.for_start(end)) {
                bool ok = true;
                for (int r = 0; r < p.k; ++r) {
                    const int c =
                        static_cast<int>((key >> (6 + 8 * r)) & 0xff) + entry.tvec[static_cast<std::size_t>(r)];
                    if (c > p.d) {  // counts are monotone; exceeding d can never recover
                        ok = false;
                        break;
                    }
                    counts[static_cast<std::size_t>(r)] = c;
                }
                if (!ok) continue;
                nxt[pack_state(entry.end, counts)] += val * entry.multiplicity;
            }
        }
        cur = std::move(nxt);
    }

    const std::vector<int> target = target_multiset(p);
    Int raw = 0;
    for (const auto& [key, val] : cur) {
        for (int r = 0; r < p.k; ++r)
            counts[static_cast<std::size_t>(r)] = static_cast<int>((key >> (6 + 8 * r)) & 0xff);
        std::sort(counts.begin(), counts.end());
        if (counts == target) raw += val;
    }

    Int fact = 1;
    for (int i = 2; i <= p.k; ++i) fact *= i;
    Int q, rem;
    boost::multiprecision::divide_qr(raw, fact, q, rem);
    if (rem != 0)
        throw InternalError("count_classes: raw count not divisible by k! (stabilizer assumption violated)");
    return q;
}

std::uint64_t default_class_cap() {
    if (const char* env = std::getenv("EQUIPART_CLASS_CAP")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
        throw ParameterError("EQUIPART_CLASS_CAP must be a positive integer");
    }
    return 1'000'000;
}

namespace {

struct CodeWithCounts {
    GrayCode code;
    std::vector<int> tvec;
};

class ClassEnumerator {
public:
    ClassEnumerator(const ParamTriple& p, std::uint64_t cap) : p_(p), cap_(cap), target_(target_multiset(p)) {
        codes_by_start_.resize(std::size_t{1} << p.k);
        base_ = enumerate_gray_codes(p.k, BitColumn::zero(p.k));
        base_tvecs_.reserve(base_.size());
        for (const GrayCode& g : base_) base_tvecs_.push_back(transition_counts(g.to_matrix()));
    }

    // Codes for start c are the bit-translates (columns XOR c) of the codes
    // for start 0; flip sequences and transition vectors are unchanged.
    const std::vector<CodeWithCounts>& codes(ColumnMask start) {
        std::scoped_lock lock(mu_);
        auto& slot = codes_by_start_[start];
        if (!slot.has_value()) {
            std::vector<CodeWithCounts> v;
            v.reserve(base_.size());
            for (std::size_t i = 0; i < base_.size(); ++i) {
                GrayCode g = base_[i];
                for (ColumnMask& c : g.columns) c ^= start;
                v.push_back({std::move(g), base_tvecs_[i]});
            }
            slot = std::move(v);
        }
        return *slot;
    }

    // DFS over chained blocks; first column fixed to zero.
    void run(std::set<CanonicalForm>& found, std::size_t first_lo, std::size_t first_hi) {
        std::vector<ColumnMask> cols;
        cols.reserve(static_cast<std::size_t>(p_.width()));
        std::vector<int> counts(static_cast<std::size_t>(p_.k), 0);
        const auto& first = codes(0);
        for (std::size_t i = first_lo; i < first_hi && i < first.size(); ++i)
            descend(found, first[i], 1, cols, counts);
    }

private:
    void descend(std::set<CanonicalForm>& found, const CodeWithCounts& cw, int depth,
                 std::vector<ColumnMask>& cols, std::vector<int>& counts) {
        for (int r = 0; r < p_.k; ++r)
            if (counts[static_cast<std::size_t>(r)] + cw.tvec[static_cast<std::size_t>(r)] > p_.d) return;

        const std::size_t mark = cols.size();
        cols.insert(cols.end(), cw.code.columns.begin(), cw.code.columns.end());
        for (int r = 0; r < p_.k; ++r) counts[static_cast<std::size_t>(r)] += cw.tvec[static_cast<std::size_t>(r)];

        if (depth == p_.j) {
            std::vector<int> sorted = counts;
            std::sort(sorted.begin(), sorted.end());
            if (sorted == target_) {
                EquipartingMatrix em{p_, BinaryMatrix(p_.k, cols)};
                found.insert(canonical_form(em));
                if (found.size() > cap_)
                    throw ResourceError("enumerate_classes: class cap exceeded; use count_classes");
            }
        } else {
            for (const CodeWithCounts& next : codes(cw.code.end()))
                descend(found, next, depth + 1, cols, counts);
        }

        cols.resize(mark);
        for (int r = 0; r < p_.k; ++r) counts[static_cast<std::size_t>(r)] -= cw.tvec[static_cast<std::size_t>(r)];
    }

    ParamTriple p_;
    std::uint64_t cap_;
    std::vector<int> target_;
    std::vector<GrayCode> base_;
    std::vector<std::vector<int>> base_tvecs_;
    std::vector<std::optional<std::vector<CodeWithCounts>>> codes_by_start_;
    std::mutex mu_;
};

}  // namespace

std::vector<EquipartingMatrix> enumerate_classes(const ParamTriple& p, std::uint64_t class_cap,
                                                 int threads) {
    ClassEnumerator en(p, class_cap);
    std::set<CanonicalForm> found;

    const std::size_t nfirst = en.codes(0).size();
    if (threads <= 1 || nfirst < 2) {
        en.run(found, 0, nfirst);
    } else {
        // Parallel over first-block choices; per-branch canonical sets merge
        // into an order-independent union.
        const std::size_t t = std::min<std::size_t>(static_cast<std::size_t>(threads), nfirst);
        const std::size_t chunk = (nfirst + t - 1) / t;
        std::vector<std::future<std::set<CanonicalForm>>> futs;
        for (std::size_t i = 0; i < t; ++i) {
            futs.push_back(std::async(std::launch::async, [&, i]() {
                std::set<CanonicalForm> local;
                en.run(local, i * chunk, std::min(nfirst, (i + 1) * chunk));
                return local;
            }));
        }
        for (auto& f : futs) found.merge(f.get());
        if (found.size() > class_cap)
            throw ResourceError("enumerate_classes: class cap exceeded; use count_classes");
    }

    std::vector<EquipartingMatrix> out;
    out.reserve(found.size());
    for (const CanonicalForm& cf : found)
        out.push_back({p, BinaryMatrix::from_rows(cf.rows)});
    return out;
}

EquipartingMatrix parse_matrix_text(const std::vector<std::string>& lines) {
    std::vector<std::string> rows;
    for (const std::string& line : lines) {
        std::string r;
        for (char ch : line)
            if (ch != ' ' && ch != '\t') r += ch;
        if (!r.empty()) rows.push_back(std::move(r));
    }
    if (rows.empty()) throw ParameterError("matrix text: no rows");
    BinaryMatrix m = BinaryMatrix::from_rows(rows);

    const int k = m.rows();
    const int n = 1 << k;
    if (m.cols() % n != 0) throw ParameterError("matrix text: width is not a multiple of 2^k");
    const int j = m.cols() / n;

    // Infer (d, ell) from the transition multiset: d is the dominant count.
    std::vector<int> counts = transition_counts(m);
    const int d = *std::max_element(counts.begin(), counts.end());
    const long long ell = static_cast<long long>(d) * k - ((1LL << k) - 1) * j;
    if (d < 1 || ell < 0 || ell > d - 1)
        throw ParameterError("matrix text: cannot infer valid (d, ell) from transition counts");
    return {ParamTriple(j, k, d, static_cast<int>(ell)), std::move(m)};
}

EquipartingMatrix parse_matrix_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError(std::string("matrix json: ") + e.what());
    }
    if (!doc.contains("j") || !doc.contains("k") || !doc.contains("d") || !doc.contains("ell") ||
        !doc.contains("rows"))
        throw ParameterError("matrix json: need j, k, d, ell, rows");
    ParamTriple p(doc["j"].get<int>(), doc["k"].get<int>(), doc["d"].get<int>(), doc["ell"].get<int>());
    std::vector<std::string> rows = doc["rows"].get<std::vector<std::string>>();
    BinaryMatrix m = BinaryMatrix::from_rows(rows);
    if (m.rows() != p.k || m.cols() != p.width())
        throw ParameterError("matrix json: rows do not match declared parameters");
    return {p, std::move(m)};
}

std::string matrix_to_json(const EquipartingMatrix& em) {
    nlohmann::ordered_json doc;
    doc["j"] = em.params.j;
    doc["k"] = em.params.k;
    doc["d"] = em.params.d;
    doc["ell"] = em.params.ell;
    doc["rows"] = em.m.row_strings();
    return doc.dump();
}

}  // namespace ghr
