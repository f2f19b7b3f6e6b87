#include "animat/stats.hpp"

#include "animat/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace animat {

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

namespace {

// Regularized upper incomplete gamma Q(a, x), series + continued fraction.
double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q domain");
    if (x == 0.0) return 1.0;
    const double gln = std::lgamma(a);
    if (x < a + 1.0) {
        // P(a,x) by series, return 1 - P.
        double ap = a;
        double sum = 1.0 / a;
        double del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
        }
        return 1.0 - sum * std::exp(-x + a * std::log(x) - gln);
    }
    // Q(a,x) by Lentz continued fraction.
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - gln) * h;
}

struct RankedSample {
    std::vector<double> ranks_a;
    std::vector<double> ranks_b;
    double tie_term = 0.0; // sum of t^3 - t over tie groups
    bool has_ties = false;
};

// Midranks over the pooled sample.
RankedSample rank_pooled(const std::vector<double>& a, const std::vector<double>& b) {
    struct Tagged {
        double value;
        bool from_a;
    };
    std::vector<Tagged> pooled;
    pooled.reserve(a.size() + b.size());
    for (double v : a) pooled.push_back({v, true});
    for (double v : b) pooled.push_back({v, false});
    std::stable_sort(pooled.begin(), pooled.end(),
                     [](const Tagged& x, const Tagged& y) { return x.value < y.value; });
    RankedSample out;
    out.ranks_a.reserve(a.size());
    out.ranks_b.reserve(b.size());
    std::size_t i = 0;
    while (i < pooled.size()) {
        std::size_t j = i;
        while (j < pooled.size() && pooled[j].value == pooled[i].value) ++j;
        const double t = static_cast<double>(j - i);
        const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        if (t > 1.0) {
            out.has_ties = true;
            out.tie_term += t * t * t - t;
        }
        for (std::size_t k = i; k < j; ++k) {
            (pooled[k].from_a ? out.ranks_a : out.ranks_b).push_back(midrank);
        }
        i = j;
    }
    return out;
}

// Exact null distribution of U via the counting recurrence
// p(m, n, u) = p(m-1, n, u-n) + p(m, n-1, u).
double exact_p_two_sided(double u_min, std::size_t n_a, std::size_t n_b) {
    const std::size_t max_u = n_a * n_b;
    std::vector<std::vector<double>> prev(n_a + 1, std::vector<double>(max_u + 1, 0.0));
    for (std::size_t m = 0; m <= n_a; ++m) prev[m][0] = 1.0; // n = 0: U is always 0
    for (std::size_t n = 1; n <= n_b; ++n) {
        std::vector<std::vector<double>> cur(n_a + 1, std::vector<double>(max_u + 1, 0.0));
        cur[0][0] = 1.0;
        for (std::size_t m = 1; m <= n_a; ++m) {
            for (std::size_t u = 0; u <= m * n; ++u) {
                double v = prev[m][u]; // p(m, n-1, u)
                if (u >= n) v += cur[m - 1][u - n]; // p(m-1, n, u-n)
                cur[m][u] = v;
            }
        }
        prev = std::move(cur);
    }
    double total = 0.0;
    double tail = 0.0;
    const auto u_cut = static_cast<std::size_t>(std::floor(u_min + 1e-9));
    for (std::size_t u = 0; u <= max_u; ++u) {
        total += prev[n_a][u];
        if (u <= u_cut) tail += prev[n_a][u];
    }
    return std::min(1.0, 2.0 * tail / total);
}

} // namespace

MannWhitneyResult mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("mann_whitney_u: empty sample");
    const double n_a = static_cast<double>(a.size());
    const double n_b = static_cast<double>(b.size());
    const RankedSample ranked = rank_pooled(a, b);
    double rank_sum_a = 0.0;
    for (double r : ranked.ranks_a) rank_sum_a += r;
    const double u_a = rank_sum_a - n_a * (n_a + 1.0) / 2.0;
    const double u_b = n_a * n_b - u_a;
    MannWhitneyResult result;
    result.u = std::min(u_a, u_b);

    if (!ranked.has_ties && a.size() * b.size() <= 400) {
        result.exact = true;
        result.p = exact_p_two_sided(result.u, a.size(), b.size());
        return result;
    }
    const double n = n_a + n_b;
    const double tie_correction = ranked.tie_term / (n * (n - 1.0));
    const double variance = n_a * n_b / 12.0 * ((n + 1.0) - tie_correction);
    if (variance <= 0.0) {
        result.p = 1.0;
        return result;
    }
    const double mean = n_a * n_b / 2.0;
    // Continuity correction toward the mean; U = min(U_a, U_b) <= mean.
    const double z = (result.u + 0.5 - mean) / std::sqrt(variance);
    result.p = std::min(1.0, 2.0 * normal_sf(-z));
    return result;
}

double chi_squared_sf(double x, int df) {
    if (df <= 0) throw std::invalid_argument("chi_squared_sf: df must be positive");
    if (x <= 0.0) return 1.0;
    return gamma_q(df / 2.0, x / 2.0);
}

KruskalWallisResult kruskal_wallis(const std::vector<std::vector<double>>& groups) {
    if (groups.size() < 2) throw std::invalid_argument("kruskal_wallis: need at least 2 groups");
    for (const auto& g : groups) {
        if (g.empty()) throw std::invalid_argument("kruskal_wallis: empty group");
    }
    struct Tagged {
        double value;
        std::size_t group;
    };
    std::vector<Tagged> pooled;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        for (double v : groups[gi]) pooled.push_back({v, gi});
    }
    std::stable_sort(pooled.begin(), pooled.end(),
                     [](const Tagged& x, const Tagged& y) { return x.value < y.value; });
    const double n = static_cast<double>(pooled.size());
    std::vector<double> rank_sums(groups.size(), 0.0);
    double tie_term = 0.0;
    std::size_t i = 0;
    while (i < pooled.size()) {
        std::size_t j = i;
        while (j < pooled.size() && pooled[j].value == pooled[i].value) ++j;
        const double t = static_cast<double>(j - i);
        if (t > 1.0) tie_term += t * t * t - t;
        const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k) rank_sums[pooled[k].group] += midrank;
        i = j;
    }
    double sum = 0.0;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        sum += rank_sums[gi] * rank_sums[gi] / static_cast<double>(groups[gi].size());
    }
    double h = 12.0 / (n * (n + 1.0)) * sum - 3.0 * (n + 1.0);
    const double tie_denominator = 1.0 - tie_term / (n * n * n - n);
    KruskalWallisResult result;
    if (tie_denominator <= 0.0) {
        result.h = 0.0; // every observation tied
        result.p = 1.0;
        return result;
    }
    result.h = h / tie_denominator;
    result.p = chi_squared_sf(result.h, static_cast<int>(groups.size()) - 1);
    return result;
}

std::pair<double, double> bootstrap_mean_ci(const std::vector<double>& samples,
                                            int resamples, double confidence,
                                            std::uint64_t seed) {
    if (samples.empty()) throw std::invalid_argument("bootstrap_mean_ci: empty sample");
    Rng rng(seed);
    std::vector<double> means(resamples);
    for (int r = 0; r < resamples; ++r) {
        double sum = 0.0;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            sum += samples[rng.uniform_u32(static_cast<std::uint32_t>(samples.size()))];
        }
        means[r] = sum / static_cast<double>(samples.size());
    }
    std::sort(means.begin(), means.end());
    const double alpha = (1.0 - confidence) / 2.0;
    auto pick = [&](double q) {
        const double pos = q * (means.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, means.size() - 1);
        const double frac = pos - static_cast<double>(lo);
        return means[lo] * (1.0 - frac) + means[hi] * frac;
    };
    return {pick(alpha), pick(1.0 - alpha)};
}

} // namespace animat
