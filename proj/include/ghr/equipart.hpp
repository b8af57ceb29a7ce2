#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ghr/bits.hpp"
#include "ghr/graycode.hpp"

namespace ghr {

using Int = boost::multiprecision::cpp_int;

// Parameters of an equipartition instance: d*k = (2^k - 1)*j + ell with
// 0 <= ell <= d-1.
struct ParamTriple {
    int j = 0, k = 0, d = 0, ell = 0;

    ParamTriple() = default;
    ParamTriple(int j_, int k_, int d_, int ell_);

    int width() const { return j << k; }
    bool operator==(const ParamTriple&) const = default;
};

// A chain of j Gray codes with matching junction columns and row transition
// multiset {d-ell, d, ..., d}.
struct EquipartingMatrix {
    ParamTriple params;
    BinaryMatrix m;

    bool operator==(const EquipartingMatrix&) const = default;
};

struct Diagnostic {
    bool ok = true;
    std::string reason;  // first violated clause when !ok
};

Diagnostic validate(const EquipartingMatrix& em);

// Inverts exactly the rows whose first bit is 1; the result is equivalent to
// the input and has an all-zero first column.
EquipartingMatrix normalize(EquipartingMatrix em);

// Complete invariant of the equivalence (row permutations and/or row
// inversions): normalized rows in the lexicographically minimizing order.
struct CanonicalForm {
    std::vector<std::string> rows;

    std::string str() const;  // rows joined by '/'
    auto operator<=>(const CanonicalForm&) const = default;
};

CanonicalForm canonical_form(const EquipartingMatrix& em);

// For each start column, the multiset of (end column, transition vector)
// pairs over all Gray codes with that start.
class ProfileTable {
public:
    struct Entry {
        ColumnMask end = 0;
        std::vector<int> tvec;
        std::uint64_t multiplicity = 0;
    };

    static const ProfileTable& get(int k, std::uint64_t budget = 1'000'000);

    int k() const { return k_; }
    std::uint64_t codes_per_start() const { return total_; }
    const std::vector<Entry>& for_start(ColumnMask start) const {
        return entries_[start];
    }

private:
    int k_ = 0;
    std::uint64_t total_ = 0;
    std::vector<std::vector<Entry>> entries_;  // indexed by start mask

    friend ProfileTable build_profile_table(int, std::uint64_t);
};

ProfileTable build_profile_table(int k, std::uint64_t budget = 1'000'000);

// One canonical representative per equivalence class, sorted by canonical
// form. Throws ResourceError past `class_cap` (use count_classes instead).
std::vector<EquipartingMatrix> enumerate_classes(const ParamTriple& p,
                                                 std::uint64_t class_cap = 1'000'000,
                                                 int threads = 1);

// Number of equivalence classes, by transfer-matrix DP over (end column,
// capped transition vector) states; the raw count of normalized matrices is
// divided exactly by k! (the row-permutation action is free).
Int count_classes(const ParamTriple& p);

std::uint64_t default_class_cap();  // honors EQUIPART_CLASS_CAP

// Text format: k lines of 0/1 characters, spaces ignored. Parameters are
// inferred from the transition multiset when not supplied.
EquipartingMatrix parse_matrix_text(const std::vector<std::string>& lines);
EquipartingMatrix parse_matrix_json(const std::string& text);
std::string matrix_to_json(const EquipartingMatrix& em);

}  // namespace ghr
