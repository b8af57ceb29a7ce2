#include "ghr/admissibility.hpp"

#include <algorithm>
#include <future>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ghr/errors.hpp"

namespace ghr {

std::pair<int, int> ramos_bound(int j, int k) {
    if (j < 1 || k < 1) throw ParameterError("ramos_bound: need j, k >= 1");
    if (k > 30) throw ParameterError("ramos_bound: k too large");
    const long long num = ((1LL << k) - 1) * j;
    const int d = static_cast<int>((num + k - 1) / k);
    const int ell = static_cast<int>(static_cast<long long>(d) * k - num);
    return {d, ell};
}

Int binomial(int n, int m) {
    if (m < 0 || m > n) return 0;
    Int r = 1;
    for (int i = 1; i <= m; ++i) {
        r *= n - m + i;
        r /= i;
    }
    return r;
}

namespace {

bool is_prime(long long p) {
    if (p < 2) return false;
    for (long long f = 2; f * f <= p; ++f)
        if (p % f == 0) return false;
    return true;
}

}  // namespace

int kummer_valuation(long long n, long long m, long long p) {
    if (!is_prime(p)) throw ParameterError("kummer_valuation: p must be prime");
    if (m < 0 || m > n) throw ParameterError("kummer_valuation: need 0 <= m <= n");
    long long a = m, b = n - m;
    int carries = 0, carry = 0;
    while (a > 0 || b > 0 || carry > 0) {
        const long long digit = a % p + b % p + carry;
        carry = digit >= p ? 1 : 0;
        carries += carry;
        a /= p;
        b /= p;
    }
    return carries;
}

Int k2_count(int j) {
    if (j < 1) throw ParameterError("k2_count: need j >= 1");
    if (j % 2 == 0) return binomial(j, j / 2) / 2;
    return binomial(j, (j + 1) / 2);
}

std::string status_str(DeltaStatus s) {
    switch (s) {
        case DeltaStatus::Tight: return "TIGHT";
        case DeltaStatus::UpperBound: return "UPPER_BOUND";
        case DeltaStatus::LowerBoundOnly: return "LOWER_BOUND_ONLY";
    }
    throw InternalError("status_str: bad status");
}

namespace {

// The direct parity test is run when the counting DP is desk-feasible.
bool in_direct_range(int k, int d) {
    if (k > 4) return false;
    double states = 1;
    for (int i = 0; i < k; ++i) states *= d + 1;
    return states * (1 << k) <= 1e6;
}

// Direct decision without reduction; sets status Tight or LowerBoundOnly.
DeltaReport direct_decide(int j, int k) {
    DeltaReport rep;
    rep.j = j;
    rep.k = k;
    std::tie(rep.d, rep.ell) = ramos_bound(j, k);
    rep.lower = rep.d;

    if (k == 1) {
        // Ham Sandwich: the equiparting matrix is unique up to row inversion.
        rep.class_count = 1;
        rep.status = DeltaStatus::Tight;
        rep.upper = rep.d;
        rep.evidence.push_back("k=1: unique 0-equiparting matrix up to bit inversion; count 1 is odd");
        return rep;
    }

    if (k == 2) {
        const Int c = k2_count(j);
        rep.class_count = c;
        if (rep.ell == 0) {
            // j even; tight iff (1/2) C(j, j/2) is odd, i.e. j is a power of 2.
            const int val = kummer_valuation(j, j / 2, 2);
            rep.evidence.push_back("N = C(" + std::to_string(j) + "," + std::to_string(j / 2) +
                                   ")/2 = " + c.str());
            rep.evidence.push_back("val2(C(j,j/2)) = " + std::to_string(val));
            if (val == 1) {
                rep.status = DeltaStatus::Tight;
                rep.upper = rep.d;
                rep.evidence.push_back("count odd: Ramos bound attained");
            }
        } else {
            // j odd. d odd: tight iff C(j,(j+1)/2) is odd. d even: the local
            // degrees agree in sign, so a = +-C(j,(j+1)/2) must not be
            // divisible by 4, i.e. val2 <= 1 (val2 = 0 only occurs at j = 1).
            const int val = kummer_valuation(j, (j + 1) / 2, 2);
            rep.evidence.push_back("N = C(" + std::to_string(j) + "," + std::to_string((j + 1) / 2) +
                                   ") = " + c.str());
            rep.evidence.push_back("val2 = " + std::to_string(val) + ", d " +
                                   (rep.d % 2 ? "odd" : "even"));
            const bool tight = (rep.d % 2 == 1) ? (val == 0) : (val <= 1);
            if (tight) {
                rep.status = DeltaStatus::Tight;
                rep.upper = rep.d;
                rep.evidence.push_back(rep.d % 2 == 1 ? "count odd: Ramos bound attained"
                                                      : "count not divisible by 4: Ramos bound attained");
            }
        }
        return rep;
    }

    if (in_direct_range(k, rep.d)) {
        const Int c = count_classes(ParamTriple(j, k, rep.d, rep.ell));
        rep.class_count = c;
        const bool odd = (c % 2) != 0;
        rep.evidence.push_back("N(" + std::to_string(j) + "," + std::to_string(k) + "," +
                               std::to_string(rep.d) + ") = " + c.str() + (odd ? " (odd)" : " (even)"));
        if (odd) {
            rep.status = DeltaStatus::Tight;
            rep.upper = rep.d;
        }
    } else {
        rep.evidence.push_back("direct count out of range");
    }
    return rep;
}

}  // namespace

DeltaReport decide(int j, int k) {
    DeltaReport rep = direct_decide(j, k);
    if (rep.status == DeltaStatus::Tight) return rep;

    // Reduction Delta(j,k) <= Delta(2j,k-1), chained until a proved instance.
    // A chain anchored at k >= 2 yields a genuine upper bound; a chain that
    // only bottoms out at Ham Sandwich (k = 1) is recorded but stays
    // inconclusive.
    int jj = j, kk = k;
    int anchor_k = 1;
    while (kk > 1) {
        jj *= 2;
        kk -= 1;
        rep.reduction_chain.emplace_back(jj, kk);
        DeltaReport sub = direct_decide(jj, kk);
        if (sub.status == DeltaStatus::Tight) {
            rep.upper = sub.d;
            anchor_k = kk;
            for (const std::string& e : sub.evidence)
                rep.evidence.push_back("(" + std::to_string(jj) + "," + std::to_string(kk) + "): " + e);
            break;
        }
    }
    if (rep.upper && anchor_k >= 2) rep.status = DeltaStatus::UpperBound;
    return rep;
}

std::string DeltaReport::json() const {
    nlohmann::ordered_json doc;
    doc["j"] = j;
    doc["k"] = k;
    doc["d"] = d;
    doc["ell"] = ell;
    if (class_count) doc["count"] = class_count->str();
    doc["status"] = status_str(status);
    doc["lower"] = lower;
    if (upper) doc["upper"] = *upper;
    doc["evidence"] = evidence;
    doc["reduction"] = nlohmann::json::array();
    for (const auto& [jj, kk] : reduction_chain) doc["reduction"].push_back({{"j", jj}, {"k", kk}});
    return doc.dump();
}

std::string DeltaReport::text() const {
    std::ostringstream os;
    os << "Delta(" << j << "," << k << "): ";
    switch (status) {
        case DeltaStatus::Tight: os << "= " << d << " (TIGHT)"; break;
        case DeltaStatus::UpperBound: os << "in [" << lower << "," << *upper << "] (UPPER_BOUND)"; break;
        case DeltaStatus::LowerBoundOnly:
            os << ">= " << lower << " (LOWER_BOUND_ONLY"
               << (upper ? ", trivial upper " + std::to_string(*upper) : std::string()) << ")";
            break;
    }
    os << "\n  d=" << d << " ell=" << ell;
    if (class_count) os << " count=" << class_count->str();
    os << "\n";
    for (const std::string& e : evidence) os << "  evidence: " << e << "\n";
    for (const auto& [jj, kk] : reduction_chain) os << "  reduction: (" << jj << "," << kk << ")\n";
    return os.str();
}

std::vector<Table1Row> table1(int threads) {
    struct Ref {
        int j, k;
        const char* n;
    };
    static const Ref refs[] = {
        {2, 3, "13"},         {3, 3, "60"},        {4, 3, "2015"},
        {5, 3, "35040"},      {6, 3, "185130"},    {7, 3, "7572908"},
        {8, 3, "132909840"},  {9, 3, "732952248"}, {1, 4, "16"},
        {2, 4, "37964"},
    };

    std::vector<Table1Row> rows(std::size(refs));
    auto compute = [&](std::size_t i) {
        const Ref& r = refs[i];
        Table1Row row;
        row.j = r.j;
        row.k = r.k;
        std::tie(row.d, row.ell) = ramos_bound(r.j, r.k);
        row.expected = Int(r.n);
        row.computed = count_classes(ParamTriple(row.j, row.k, row.d, row.ell));
        row.ok = row.computed == row.expected;
        rows[i] = std::move(row);
    };

    if (threads <= 1) {
        for (std::size_t i = 0; i < std::size(refs); ++i) compute(i);
    } else {
        std::vector<std::future<void>> futs;
        for (std::size_t i = 0; i < std::size(refs); ++i)
            futs.push_back(std::async(std::launch::async, compute, i));
        for (auto& f : futs) f.get();
    }
    return rows;
}

}  // namespace ghr
