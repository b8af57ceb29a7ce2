#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ghr/equipart.hpp"

namespace ghr {

// d = ceil((2^k - 1) j / k) and the residual ell = d k - (2^k - 1) j.
std::pair<int, int> ramos_bound(int j, int k);

Int binomial(int n, int m);

// Number of carries when m and n-m are added in base p; equals the p-adic
// valuation of C(n, m).
int kummer_valuation(long long n, long long m, long long p);

// Closed-form class count for two hyperplanes: (1/2) C(j, j/2) for even j,
// C(j, (j+1)/2) for odd j.
Int k2_count(int j);

enum class DeltaStatus { Tight, UpperBound, LowerBoundOnly };

std::string status_str(DeltaStatus s);

struct DeltaReport {
    int j = 0, k = 0;
    int d = 0, ell = 0;                        // Ramos bound and residual
    std::optional<Int> class_count;            // direct count when computed
    DeltaStatus status = DeltaStatus::LowerBoundOnly;
    int lower = 0;                             // always the Ramos bound d
    std::optional<int> upper;                  // proved upper bound, if any
    std::vector<std::string> evidence;         // parity / valuation facts used
    std::vector<std::pair<int, int>> reduction_chain;  // (j', k') steps taken

    std::string json() const;
    std::string text() const;
};

// Decision layer: parity of the class count (odd => the Ramos bound is
// attained), the two-hyperplane valuation criteria, and the reduction
// Delta(j,k) <= Delta(2j,k-1) for upper bounds.
DeltaReport decide(int j, int k);

struct Table1Row {
    int j = 0, k = 0, ell = 0, d = 0;
    Int expected;
    Int computed;
    bool ok = false;
};

// Recomputes the ten stored reference rows via count_classes.
std::vector<Table1Row> table1(int threads = 1);

}  // namespace ghr
