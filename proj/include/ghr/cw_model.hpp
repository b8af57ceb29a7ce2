#pragma once

#include <map>
#include <string>
#include <vector>

#include "ghr/moment_geometry.hpp"

namespace ghr {

// Combinatorial name (sigma | I | S) of a stratification cone of
// R^{(d+1) x k}: a chain 0 <_{i_1} s_1 x_{sigma_1} <_{i_2} ... <_{i_k}
// s_k x_{sigma_k}, where y <_i y' means the first i-1 coordinates agree and
// coordinate i strictly increases, and i = d+2 means equality.
struct CellSymbol {
    int d = 0, k = 0;
    std::vector<int> sigma;  // permutation of 1..k
    std::vector<int> I;      // entries in 1..d+2
    std::vector<int> S;      // entries in {+1,-1}

    CellSymbol() = default;
    CellSymbol(int d_, int k_, std::vector<int> sigma_, std::vector<int> I_, std::vector<int> S_);

    // All indices d+2: the symbol names the origin, excluded from the complex.
    bool is_origin() const;

    auto operator<=>(const CellSymbol&) const = default;
};

// Canonical symbol plus its cell dimension (cone dimension minus one).
struct Cell {
    CellSymbol sym;
    int dim = 0;

    auto operator<=>(const Cell&) const = default;
};

// Matrix arguments are k columns of height d+1.
using RatColumns = std::vector<std::vector<Rational>>;

bool contains(const CellSymbol& sym, const RatColumns& x);
bool closure_contains(const CellSymbol& sym, const RatColumns& x);  // strict < relaxed to <=

// Block normal form: within the initial zero block sort columns ascending and
// force + signs; within every other equality block sort entries by column
// index carrying signs, re-attaching the block's incoming index to its first
// entry.
Cell canonicalize(const CellSymbol& sym);

// Element of (Z/2)^k x| S_k acting on matrices by column permutation and
// column sign flips: column i of g.x is (-1)^{beta_i} x_{pi^{-1}(i)}.
struct SignedPermutation {
    std::vector<int> pi;    // 1-based images: i -> pi[i-1]
    std::vector<int> beta;  // k sign bits

    static SignedPermutation identity(int k);
    static SignedPermutation epsilon(int k, int t);             // flip column t (1-based)
    static SignedPermutation transposition(int k, int r, int s);  // swap columns r, s

    SignedPermutation compose(const SignedPermutation& other) const;  // this * other
    RatColumns apply(const RatColumns& x) const;
};

// Action on cells: sigma -> pi . sigma and the sign at the chain position
// occupied by column t flips when beta_t = 1; result canonicalized. Satisfies
// contains(act(g, c), g.x) <=> contains(c, x).
Cell act(const SignedPermutation& g, const Cell& c);

// All distinct canonical cells excluding the origin symbol, grouped by
// dimension, each group sorted.
std::map<int, std::vector<Cell>> enumerate_cells(int d, int k, std::uint64_t symbol_cap = 2'000'000);

struct ComplexStats {
    std::map<int, std::uint64_t> cells_by_dim;
    std::map<int, std::uint64_t> orbits_by_dim;
    std::map<int, std::uint64_t> nonfree_cells_by_dim;  // cells with some i_s = d+2
    long long euler = 0;
};

ComplexStats stats(int d, int k, std::uint64_t symbol_cap = 2'000'000);

// An integer-entry matrix strictly inside the cell's cone.
RatColumns representative(const Cell& c);

// All cells one dimension down whose representative lies in the closure of
// c's chain. Needs the ambient enumeration to be feasible.
std::vector<Cell> facets(const Cell& c, std::uint64_t symbol_cap = 2'000'000);

// The cell 0 <_{ell+1} x_1 <_1 x_2 <_1 ... <_1 x_k whose boundary structure
// is known in closed form.
Cell theta_cell(int d, int k, int ell);

// Its codimension-1 boundary cells by the closed-form rule, in construction
// order: [g1, e1.g1] then for ell = 1 the four-cell family
// [g3, e2.g3, t12.g3, e1 t12.g3] (for ell != 1 the pair [g3, e2.g3] when
// ell >= 2), then pairs [g_{2r-1}, t_{r-1,r}.g_{2r-1}].
std::vector<Cell> theta_facets(int d, int k, int ell);

std::string cell_str(const Cell& c);
Cell parse_cell(const std::string& s);

}  // namespace ghr
