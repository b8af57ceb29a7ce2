#pragma once

#include <string>
#include <vector>

#include "ghr/bits.hpp"

namespace ghr {

// A k-bit Gray code: a Hamiltonian path in the k-cube graph. Columns list all
// of {0,1}^k with consecutive columns differing in exactly one bit; there is
// no wrap-around condition between the last and the first column.
struct GrayCode {
    int k = 0;
    std::vector<ColumnMask> columns;  // 2^k columns
    std::vector<int> flips;           // 2^k - 1 flipped row indices, the canonical serialization

    BinaryMatrix to_matrix() const { return BinaryMatrix(k, columns); }

    ColumnMask start() const { return columns.front(); }
    ColumnMask end() const { return columns.back(); }

    // "0,1,0,2,..." — flip indices separated by commas.
    std::string flips_str() const;

    bool operator==(const GrayCode&) const = default;
    auto operator<=>(const GrayCode&) const = default;
};

// Every Hamiltonian path of the k-cube starting at `start`, in lexicographic
// order of the flip sequence. 1 <= k <= 6; only k <= 4 is enumerable at desk
// scale. `budget` bounds the number of codes produced.
std::vector<GrayCode> enumerate_gray_codes(int k, BitColumn start,
                                           std::uint64_t budget = 1'000'000);

bool is_gray_code(const BinaryMatrix& m);

// Per-row count of adjacent unequal entries, no wrap-around.
std::vector<int> transition_counts(const BinaryMatrix& m);

// Equivalence class of start-fixed Gray codes under row permutations followed
// by the unique row inversions restoring the first column.
struct GrayClass {
    GrayCode representative;            // least member by flip sequence
    std::size_t size = 0;               // orbit size
    std::vector<int> sorted_counts;     // transition multiset, descending
};

std::vector<GrayClass> gray_classes(int k, BitColumn start);

}  // namespace ghr
