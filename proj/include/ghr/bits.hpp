#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "ghr/errors.hpp"

namespace ghr {

// Columns of height k <= 6 are stored as masks with row r at bit r.
// Strings are written most-significant-row-first: character p is row p.
using ColumnMask = std::uint32_t;

inline constexpr int kMaxRows = 6;

struct BitColumn {
    int k = 0;
    ColumnMask mask = 0;

    BitColumn() = default;
    BitColumn(int k_, ColumnMask mask_) : k(k_), mask(mask_) {
        if (k < 1 || k > kMaxRows) throw ParameterError("bit column height out of range");
        if (mask >> k) throw ParameterError("bit column mask wider than k");
    }

    static BitColumn zero(int k) { return BitColumn(k, 0); }

    static BitColumn parse(const std::string& s) {
        if (s.empty() || s.size() > kMaxRows) throw ParameterError("bad bit column '" + s + "'");
        ColumnMask m = 0;
        for (std::size_t p = 0; p < s.size(); ++p) {
            if (s[p] == '1') m |= ColumnMask{1} << p;
            else if (s[p] != '0') throw ParameterError("bad bit column '" + s + "'");
        }
        return BitColumn(static_cast<int>(s.size()), m);
    }

    std::string str() const {
        std::string s(static_cast<std::size_t>(k), '0');
        for (int r = 0; r < k; ++r)
            if ((mask >> r) & 1u) s[static_cast<std::size_t>(r)] = '1';
        return s;
    }

    bool operator==(const BitColumn&) const = default;
};

// Dense binary matrix, column-mask storage. Rows <= kMaxRows, arbitrary width.
class BinaryMatrix {
public:
    BinaryMatrix() = default;
    BinaryMatrix(int rows, std::vector<ColumnMask> cols) : rows_(rows), cols_(std::move(cols)) {
        if (rows_ < 1 || rows_ > kMaxRows) throw ParameterError("matrix row count out of range");
        for (ColumnMask c : cols_)
            if (c >> rows_) throw ParameterError("matrix column wider than row count");
    }

    static BinaryMatrix from_rows(const std::vector<std::string>& rows) {
        if (rows.empty()) throw ParameterError("matrix needs at least one row");
        const std::size_t width = rows[0].size();
        std::vector<ColumnMask> cols(width, 0);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != width) throw ParameterError("ragged matrix rows");
            for (std::size_t c = 0; c < width; ++c) {
                if (rows[r][c] == '1') cols[c] |= ColumnMask{1} << r;
                else if (rows[r][c] != '0') throw ParameterError("matrix entries must be 0/1");
            }
        }
        return BinaryMatrix(static_cast<int>(rows.size()), std::move(cols));
    }

    int rows() const { return rows_; }
    int cols() const { return static_cast<int>(cols_.size()); }
    bool empty() const { return cols_.empty(); }

    bool bit(int r, int c) const { return (cols_[static_cast<std::size_t>(c)] >> r) & 1u; }
    ColumnMask column(int c) const { return cols_[static_cast<std::size_t>(c)]; }
    const std::vector<ColumnMask>& columns() const { return cols_; }

    void invert_row(int r) {
        const ColumnMask bit = ColumnMask{1} << r;
        for (ColumnMask& c : cols_) c ^= bit;
    }

    std::string row_string(int r) const {
        std::string s(cols_.size(), '0');
        for (std::size_t c = 0; c < cols_.size(); ++c)
            if ((cols_[c] >> r) & 1u) s[c] = '1';
        return s;
    }

    std::vector<std::string> row_strings() const {
        std::vector<std::string> out;
        out.reserve(static_cast<std::size_t>(rows_));
        for (int r = 0; r < rows_; ++r) out.push_back(row_string(r));
        return out;
    }

    bool operator==(const BinaryMatrix&) const = default;

private:
    int rows_ = 0;
    std::vector<ColumnMask> cols_;
};

inline int popcount(ColumnMask m) { return std::popcount(m); }

}  // namespace ghr
