#include "ghr/cw_model.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "ghr/errors.hpp"

namespace ghr {

CellSymbol::CellSymbol(int d_, int k_, std::vector<int> sigma_, std::vector<int> I_,
                       std::vector<int> S_)
    : d(d_), k(k_), sigma(std::move(sigma_)), I(std::move(I_)), S(std::move(S_)) {
    if (d < 0 || k < 1) throw ParameterError("cell symbol: need d >= 0 and k >= 1");
    if (static_cast<int>(sigma.size()) != k || static_cast<int>(I.size()) != k ||
        static_cast<int>(S.size()) != k)
        throw ParameterError("cell symbol: component lengths must equal k");
    std::vector<bool> seen(static_cast<std::size_t>(k) + 1, false);
    for (int v : sigma) {
        if (v < 1 || v > k || seen[static_cast<std::size_t>(v)])
            throw ParameterError("cell symbol: sigma is not a permutation of 1..k");
        seen[static_cast<std::size_t>(v)] = true;
    }
    for (int i : I)
        if (i < 1 || i > d + 2) throw ParameterError("cell symbol: index outside 1..d+2");
    for (int s : S)
        if (s != 1 && s != -1) throw ParameterError("cell symbol: signs must be +-1");
}

bool CellSymbol::is_origin() const {
    return std::all_of(I.begin(), I.end(), [this](int i) { return i == d + 2; });
}

namespace {

int cell_dim(const CellSymbol& sym) {
    return (sym.d + 2) * sym.k - std::accumulate(sym.I.begin(), sym.I.end(), 0) - 1;
}

bool chain_holds(const CellSymbol& sym, const RatColumns& x, bool closed) {
    const int d = sym.d;
    std::vector<Rational> prev(static_cast<std::size_t>(d) + 1, Rational(0));
    std::vector<Rational> cur(static_cast<std::size_t>(d) + 1);
    for (int t = 0; t < sym.k; ++t) {
        const auto& col = x[static_cast<std::size_t>(sym.sigma[static_cast<std::size_t>(t)] - 1)];
        for (int r = 0; r <= d; ++r)
            cur[static_cast<std::size_t>(r)] = sym.S[static_cast<std::size_t>(t)] * col[static_cast<std::size_t>(r)];
        const int i = sym.I[static_cast<std::size_t>(t)];
        if (i == d + 2) {
            if (cur != prev) return false;
        } else {
            for (int r = 0; r + 1 < i; ++r)
                if (cur[static_cast<std::size_t>(r)] != prev[static_cast<std::size_t>(r)]) return false;
            if (closed) {
                if (cur[static_cast<std::size_t>(i - 1)] < prev[static_cast<std::size_t>(i - 1)]) return false;
            } else {
                if (cur[static_cast<std::size_t>(i - 1)] <= prev[static_cast<std::size_t>(i - 1)]) return false;
            }
        }
        std::swap(prev, cur);
    }
    return true;
}

void check_columns(const CellSymbol& sym, const RatColumns& x) {
    if (static_cast<int>(x.size()) != sym.k) throw ParameterError("contains: column count != k");
    for (const auto& col : x)
        if (static_cast<int>(col.size()) != sym.d + 1)
            throw ParameterError("contains: column height != d+1");
}

}  // namespace

bool contains(const CellSymbol& sym, const RatColumns& x) {
    check_columns(sym, x);
    return chain_holds(sym, x, /*closed=*/false);
}

bool closure_contains(const CellSymbol& sym, const RatColumns& x) {
    check_columns(sym, x);
    return chain_holds(sym, x, /*closed=*/true);
}

Cell canonicalize(const CellSymbol& sym) {
    const int d = sym.d, k = sym.k;
    const int eq = d + 2;

    std::vector<int> nsigma, nI, nS;
    nsigma.reserve(static_cast<std::size_t>(k));
    nI.reserve(static_cast<std::size_t>(k));
    nS.reserve(static_cast<std::size_t>(k));

    // The zero block: a maximal prefix of positions joined to 0 by equality.
    // Signs of zero columns carry no information.
    int z = 0;
    while (z < k && sym.I[static_cast<std::size_t>(z)] == eq) ++z;
    std::vector<int> zero_cols(sym.sigma.begin(), sym.sigma.begin() + z);
    std::sort(zero_cols.begin(), zero_cols.end());
    for (int c : zero_cols) {
        nsigma.push_back(c);
        nI.push_back(eq);
        nS.push_back(1);
    }

    // Remaining equality blocks: entries naming the same signed vector sort by
    // column index, carrying their signs; the incoming index re-attaches to
    // the block's new first entry.
    int t = z;
    while (t < k) {
        int u = t;
        while (u + 1 < k && sym.I[static_cast<std::size_t>(u + 1)] == eq) ++u;
        std::vector<std::pair<int, int>> block;  // (column, sign)
        for (int p = t; p <= u; ++p)
            block.emplace_back(sym.sigma[static_cast<std::size_t>(p)], sym.S[static_cast<std::size_t>(p)]);
        std::sort(block.begin(), block.end());
        for (std::size_t i = 0; i < block.size(); ++i) {
            nsigma.push_back(block[i].first);
            nI.push_back(i == 0 ? sym.I[static_cast<std::size_t>(t)] : eq);
            nS.push_back(block[i].second);
        }
        t = u + 1;
    }

    CellSymbol canon(d, k, std::move(nsigma), std::move(nI), std::move(nS));
    const int dim = cell_dim(canon);
    return Cell{std::move(canon), dim};
}

SignedPermutation SignedPermutation::identity(int k) {
    SignedPermutation g;
    g.pi.resize(static_cast<std::size_t>(k));
    std::iota(g.pi.begin(), g.pi.end(), 1);
    g.beta.assign(static_cast<std::size_t>(k), 0);
    return g;
}

SignedPermutation SignedPermutation::epsilon(int k, int t) {
    SignedPermutation g = identity(k);
    g.beta[static_cast<std::size_t>(t - 1)] = 1;
    return g;
}

SignedPermutation SignedPermutation::transposition(int k, int r, int s) {
    SignedPermutation g = identity(k);
    std::swap(g.pi[static_cast<std::size_t>(r - 1)], g.pi[static_cast<std::size_t>(s - 1)]);
    return g;
}

SignedPermutation SignedPermutation::compose(const SignedPermutation& other) const {
    // (this * other) . x = this . (other . x)
    const int k = static_cast<int>(pi.size());
    SignedPermutation g;
    g.pi.resize(static_cast<std::size_t>(k));
    g.beta.resize(static_cast<std::size_t>(k));
    std::vector<int> inv(static_cast<std::size_t>(k) + 1);
    for (int i = 1; i <= k; ++i) inv[static_cast<std::size_t>(pi[static_cast<std::size_t>(i - 1)])] = i;
    for (int i = 1; i <= k; ++i) {
        g.pi[static_cast<std::size_t>(i - 1)] = pi[static_cast<std::size_t>(other.pi[static_cast<std::size_t>(i - 1)] - 1)];
        g.beta[static_cast<std::size_t>(i - 1)] =
            beta[static_cast<std::size_t>(i - 1)] ^ other.beta[static_cast<std::size_t>(inv[static_cast<std::size_t>(i)] - 1)];
    }
    return g;
}

RatColumns SignedPermutation::apply(const RatColumns& x) const {
    const int k = static_cast<int>(pi.size());
    std::vector<int> inv(static_cast<std::size_t>(k) + 1);
    for (int i = 1; i <= k; ++i) inv[static_cast<std::size_t>(pi[static_cast<std::size_t>(i - 1)])] = i;
    RatColumns y(static_cast<std::size_t>(k));
    for (int i = 1; i <= k; ++i) {
        y[static_cast<std::size_t>(i - 1)] = x[static_cast<std::size_t>(inv[static_cast<std::size_t>(i)] - 1)];
        if (beta[static_cast<std::size_t>(i - 1)])
            for (Rational& v : y[static_cast<std::size_t>(i - 1)]) v = -v;
    }
    return y;
}

Cell act(const SignedPermutation& g, const Cell& c) {
    const int k = c.sym.k;
    if (static_cast<int>(g.pi.size()) != k) throw ParameterError("act: group element size != k");
    std::vector<int> nsigma(static_cast<std::size_t>(k));
    std::vector<int> nS(static_cast<std::size_t>(k));
    for (int p = 0; p < k; ++p) {
        const int col = g.pi[static_cast<std::size_t>(c.sym.sigma[static_cast<std::size_t>(p)] - 1)];
        nsigma[static_cast<std::size_t>(p)] = col;
        nS[static_cast<std::size_t>(p)] =
            c.sym.S[static_cast<std::size_t>(p)] * (g.beta[static_cast<std::size_t>(col - 1)] ? -1 : 1);
    }
    return canonicalize(CellSymbol(c.sym.d, k, std::move(nsigma), c.sym.I, std::move(nS)));
}

namespace {

std::uint64_t symbol_count(int d, int k) {
    std::uint64_t nsym = 1;
    for (int i = 2; i <= k; ++i) nsym *= static_cast<std::uint64_t>(i);
    for (int i = 0; i < k; ++i) nsym *= static_cast<std::uint64_t>(d + 2) * 2;
    return nsym;
}

}  // namespace

std::map<int, std::vector<Cell>> enumerate_cells(int d, int k, std::uint64_t symbol_cap) {
    if (d < 0 || k < 1 || k > kMaxRows) throw ParameterError("enumerate_cells: need d >= 0, 1 <= k <= 6");
    if (symbol_count(d, k) > symbol_cap) throw ResourceError("enumerate_cells: symbol count exceeds cap");

    std::vector<int> sigma(static_cast<std::size_t>(k));
    std::iota(sigma.begin(), sigma.end(), 1);
    std::set<Cell> cells;
    do {
        std::vector<int> I(static_cast<std::size_t>(k), 1);
        for (;;) {
            std::vector<int> S(static_cast<std::size_t>(k), 1);
            for (;;) {
                CellSymbol sym(d, k, sigma, I, S);
                if (!sym.is_origin()) cells.insert(canonicalize(sym));

                int p = 0;
                while (p < k && S[static_cast<std::size_t>(p)] == -1) S[static_cast<std::size_t>(p++)] = 1;
                if (p == k) break;
                S[static_cast<std::size_t>(p)] = -1;
            }
            int p = 0;
            while (p < k && I[static_cast<std::size_t>(p)] == d + 2) I[static_cast<std::size_t>(p++)] = 1;
            if (p == k) break;
            ++I[static_cast<std::size_t>(p)];
        }
    } while (std::next_permutation(sigma.begin(), sigma.end()));

    std::map<int, std::vector<Cell>> out;
    for (const Cell& c : cells) out[c.dim].push_back(c);
    return out;
}

ComplexStats stats(int d, int k, std::uint64_t symbol_cap) {
    const auto by_dim = enumerate_cells(d, k, symbol_cap);

    ComplexStats st;
    std::set<Cell> all;
    for (const auto& [dim, cells] : by_dim) {
        st.cells_by_dim[dim] = cells.size();
        st.euler += (dim % 2 == 0 ? 1 : -1) * static_cast<long long>(cells.size());
        for (const Cell& c : cells) {
            all.insert(c);
            if (std::find(c.sym.I.begin(), c.sym.I.end(), d + 2) != c.sym.I.end())
                ++st.nonfree_cells_by_dim[dim];
        }
    }

    // Orbit closure under the generators.
    std::vector<SignedPermutation> gens;
    for (int t = 1; t <= k; ++t) gens.push_back(SignedPermutation::epsilon(k, t));
    for (int r = 1; r < k; ++r) gens.push_back(SignedPermutation::transposition(k, r, r + 1));

    std::set<Cell> seen;
    for (const Cell& c : all) {
        if (seen.contains(c)) continue;
        std::vector<Cell> frontier{c};
        std::set<Cell> orbit{c};
        while (!frontier.empty()) {
            const Cell cur = frontier.back();
            frontier.pop_back();
            for (const auto& g : gens) {
                Cell img = act(g, cur);
                if (orbit.insert(img).second) frontier.push_back(std::move(img));
            }
        }
        for (const Cell& m : orbit) {
            if (m.dim != c.dim) throw InternalError("stats: group action changed cell dimension");
            seen.insert(m);
        }
        ++st.orbits_by_dim[c.dim];
    }
    return st;
}

RatColumns representative(const Cell& c) {
    if (c.sym.is_origin()) throw ParameterError("representative: origin symbol has no cell");
    const int d = c.sym.d, k = c.sym.k;
    RatColumns x(static_cast<std::size_t>(k));
    std::vector<Rational> prev(static_cast<std::size_t>(d) + 1, Rational(0));
    for (int t = 0; t < k; ++t) {
        const int i = c.sym.I[static_cast<std::size_t>(t)];
        std::vector<Rational> cur = prev;
        if (i != d + 2) {
            cur[static_cast<std::size_t>(i - 1)] += 1;
            for (int r = i; r <= d; ++r) cur[static_cast<std::size_t>(r)] = 0;
        }
        auto& col = x[static_cast<std::size_t>(c.sym.sigma[static_cast<std::size_t>(t)] - 1)];
        col = cur;
        if (c.sym.S[static_cast<std::size_t>(t)] == -1)
            for (Rational& v : col) v = -v;
        prev = std::move(cur);
    }
    return x;
}

namespace {

// theta cells D^{+,...,+}_{ell+1,1,...,1}(1,...,k) have closed-form facets,
// usable even when the ambient scan is out of budget.
bool is_theta(const Cell& c, int& ell) {
    const int d = c.sym.d, k = c.sym.k;
    if (k < 2) return false;
    for (int t = 0; t < k; ++t) {
        if (c.sym.sigma[static_cast<std::size_t>(t)] != t + 1) return false;
        if (c.sym.S[static_cast<std::size_t>(t)] != 1) return false;
        if (t > 0 && c.sym.I[static_cast<std::size_t>(t)] != 1) return false;
    }
    ell = c.sym.I[0] - 1;
    return ell >= 0 && ell <= d - 1;
}

}  // namespace

std::vector<Cell> facets(const Cell& c, std::uint64_t symbol_cap) {
    if (symbol_count(c.sym.d, c.sym.k) > symbol_cap) {
        int ell = 0;
        if (!is_theta(c, ell))
            throw ResourceError("facets: ambient too large for the closure scan");
        std::vector<Cell> out = theta_facets(c.sym.d, c.sym.k, ell);
        std::sort(out.begin(), out.end());
        return out;
    }
    const auto by_dim = enumerate_cells(c.sym.d, c.sym.k, symbol_cap);
    std::vector<Cell> out;
    const auto it = by_dim.find(c.dim - 1);
    if (it == by_dim.end()) return out;
    for (const Cell& cand : it->second)
        if (closure_contains(c.sym, representative(cand))) out.push_back(cand);
    return out;
}

Cell theta_cell(int d, int k, int ell) {
    if (ell < 0 || ell > d - 1) throw ParameterError("theta: need 0 <= ell <= d-1");
    std::vector<int> sigma(static_cast<std::size_t>(k));
    std::iota(sigma.begin(), sigma.end(), 1);
    std::vector<int> I(static_cast<std::size_t>(k), 1);
    I[0] = ell + 1;
    return canonicalize(CellSymbol(d, k, std::move(sigma), std::move(I), std::vector<int>(static_cast<std::size_t>(k), 1)));
}

std::vector<Cell> theta_facets(int d, int k, int ell) {
    if (k < 2) throw ParameterError("theta_facets: need k >= 2");
    if (ell < 0 || ell > d - 1) throw ParameterError("theta_facets: need 0 <= ell <= d-1");

    std::vector<int> id_sigma(static_cast<std::size_t>(k));
    std::iota(id_sigma.begin(), id_sigma.end(), 1);
    const std::vector<int> plus(static_cast<std::size_t>(k), 1);
    auto make = [&](std::vector<int> I) { return canonicalize(CellSymbol(d, k, id_sigma, std::move(I), plus)); };
    const auto eps1 = SignedPermutation::epsilon(k, 1);
    const auto eps2 = SignedPermutation::epsilon(k, 2);
    const auto tau12 = SignedPermutation::transposition(k, 1, 2);

    std::vector<Cell> out;
    // Deepening the first comparison: x_{ell+1,1} = 0.
    std::vector<int> I1(static_cast<std::size_t>(k), 1);
    I1[0] = ell + 2;
    const Cell g1 = make(I1);
    out.push_back(g1);
    out.push_back(act(eps1, g1));

    // The equality x_{1,1} = x_{1,2}: four boundary cells when the first
    // column is pinned to a single zero coordinate (ell = 1), two otherwise.
    // The fourth cell is tau_{1,2} applied after eps_1, equivalently
    // eps_2 tau_{1,2}.
    if (ell >= 1) {
        std::vector<int> I3(static_cast<std::size_t>(k), 1);
        I3[0] = ell + 1;
        I3[1] = 2;
        const Cell g3 = make(I3);
        out.push_back(g3);
        out.push_back(act(eps2, g3));
        if (ell == 1) {
            const Cell g32 = act(tau12, g3);
            out.push_back(g32);
            out.push_back(act(tau12, act(eps1, g3)));
        }
    }

    // Equalities x_{1,r-1} = x_{1,r}.
    for (int r = (ell >= 1 ? 3 : 2); r <= k; ++r) {
        std::vector<int> I(static_cast<std::size_t>(k), 1);
        I[0] = ell + 1;
        I[static_cast<std::size_t>(r - 1)] = 2;
        const Cell ga = make(I);
        out.push_back(ga);
        out.push_back(act(SignedPermutation::transposition(k, r - 1, r), ga));
    }
    return out;
}

std::string cell_str(const Cell& c) {
    std::ostringstream os;
    os << "sigma=";
    for (int v : c.sym.sigma) os << v;
    os << ";I=";
    for (std::size_t i = 0; i < c.sym.I.size(); ++i) os << (i ? "," : "") << c.sym.I[i];
    os << ";S=";
    for (std::size_t i = 0; i < c.sym.S.size(); ++i) os << (i ? "," : "") << (c.sym.S[i] > 0 ? "+" : "-");
    os << ";d=" << c.sym.d << ";k=" << c.sym.k;
    return os.str();
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

Cell parse_cell(const std::string& s) {
    std::map<std::string, std::string> kv;
    for (const std::string& part : split(s, ';')) {
        const auto eq = part.find('=');
        if (eq == std::string::npos) throw ParameterError("cell string: expected key=value parts");
        kv[part.substr(0, eq)] = part.substr(eq + 1);
    }
    for (const char* key : {"sigma", "I", "S", "d", "k"})
        if (!kv.contains(key)) throw ParameterError(std::string("cell string: missing ") + key);

    const int d = std::stoi(kv["d"]);
    const int k = std::stoi(kv["k"]);
    std::vector<int> sigma;
    for (char ch : kv["sigma"]) {
        if (ch < '1' || ch > '9') throw ParameterError("cell string: bad sigma");
        sigma.push_back(ch - '0');
    }
    std::vector<int> I;
    for (const std::string& v : split(kv["I"], ',')) I.push_back(std::stoi(v));
    std::vector<int> S;
    for (const std::string& v : split(kv["S"], ',')) {
        if (v == "+" || v == "+1") S.push_back(1);
        else if (v == "-" || v == "-1") S.push_back(-1);
        else throw ParameterError("cell string: bad sign '" + v + "'");
    }
    return canonicalize(CellSymbol(d, k, std::move(sigma), std::move(I), std::move(S)));
}

}  // namespace ghr
