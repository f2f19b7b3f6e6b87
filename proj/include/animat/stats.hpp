#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace animat {

struct MannWhitneyResult {
    double u = 0.0; // min(U_a, U_b)
    double p = 0.0; // two-sided
    bool exact = false;
};

struct KruskalWallisResult {
    double h = 0.0;
    double p = 0.0;
};

// Midranks for ties. p is computed by exact enumeration when
// n_a * n_b <= 400 and there are no ties, otherwise by the normal
// approximation with tie and continuity corrections.
MannWhitneyResult mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b);

// Tie-corrected H; p from the chi-square distribution with (groups - 1)
// degrees of freedom. All-tied data yields H = 0 by convention.
KruskalWallisResult kruskal_wallis(const std::vector<std::vector<double>>& groups);

double normal_sf(double z);            // upper tail of the standard normal
double chi_squared_sf(double x, int df);

// Percentile bootstrap for the mean: returns (low, high) at the given
// confidence level.
std::pair<double, double> bootstrap_mean_ci(const std::vector<double>& samples,
                                            int resamples, double confidence,
                                            std::uint64_t seed);

} // namespace animat
