#include "animat/stats.hpp"

#include "animat/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace animat;

namespace {

// Brute-force two-sided exact p for tie-free samples: enumerate every
// assignment of the pooled ranks to group a. The event min(U_a, U_b) <= u
// already covers both tails, so no doubling is needed.
double brute_force_p(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> pooled = a;
    pooled.insert(pooled.end(), b.begin(), b.end());
    std::sort(pooled.begin(), pooled.end());
    const std::size_t n = pooled.size();
    const std::size_t n_a = a.size();

    auto u_of = [&](const std::vector<bool>& in_a) {
        double rank_sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (in_a[i]) rank_sum += static_cast<double>(i + 1);
        }
        const double u_a = rank_sum - static_cast<double>(n_a * (n_a + 1)) / 2.0;
        return std::min(u_a, static_cast<double>(n_a * (n - n_a)) - u_a);
    };

    std::vector<bool> observed_mask(n, false);
    {
        // Mark which pooled positions hold group-a values (tie-free input).
        std::vector<double> remaining = a;
        for (std::size_t i = 0; i < n; ++i) {
            const auto it = std::find(remaining.begin(), remaining.end(), pooled[i]);
            if (it != remaining.end()) {
                observed_mask[i] = true;
                remaining.erase(it);
            }
        }
    }
    const double u_obs = u_of(observed_mask);

    std::vector<bool> mask(n, false);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(n_a), true);
    std::sort(mask.begin(), mask.end()); // lexicographically first arrangement
    double tail = 0.0, total = 0.0;
    do {
        total += 1.0;
        if (u_of(mask) <= u_obs + 1e-9) tail += 1.0;
    } while (std::next_permutation(mask.begin(), mask.end()));
    return tail / total;
}

} // namespace

TEST_CASE("fully separated samples give the smallest exact p") {
    const std::vector<double> a = {1, 2, 3};
    const std::vector<double> b = {4, 5, 6};
    const MannWhitneyResult r = mann_whitney_u(a, b);
    CHECK(r.exact);
    CHECK(r.u == doctest::Approx(0.0));
    // 1 of C(6,3)=20 labelings reaches U=0; two-sided doubles it.
    CHECK(r.p == doctest::Approx(0.1));
}

TEST_CASE("interleaved samples give a known exact p") {
    const std::vector<double> a = {1, 2, 4};
    const std::vector<double> b = {3, 5, 6};
    const MannWhitneyResult r = mann_whitney_u(a, b);
    CHECK(r.exact);
    CHECK(r.u == doctest::Approx(1.0));
    CHECK(r.p == doctest::Approx(0.2));
}

TEST_CASE("exact p matches brute-force enumeration") {
    Rng rng(31);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<double> a, b;
        // Distinct values via a shuffled range.
        std::vector<double> values;
        for (int i = 0; i < 11; ++i) values.push_back(i);
        for (std::size_t i = values.size(); i > 1; --i) {
            std::swap(values[i - 1], values[rng.uniform_u32(static_cast<std::uint32_t>(i))]);
        }
        a.assign(values.begin(), values.begin() + 5);
        b.assign(values.begin() + 5, values.end());
        const MannWhitneyResult r = mann_whitney_u(a, b);
        REQUIRE(r.exact);
        CHECK(r.p == doctest::Approx(brute_force_p(a, b)));
    }
}

TEST_CASE("U statistic is symmetric in the sample order") {
    const std::vector<double> a = {3.2, 5.1, 0.4, 2.2, 9.9, 1.7};
    const std::vector<double> b = {4.4, 8.1, 2.9, 0.1, 7.7};
    const MannWhitneyResult ab = mann_whitney_u(a, b);
    const MannWhitneyResult ba = mann_whitney_u(b, a);
    CHECK(ab.u == doctest::Approx(ba.u));
    CHECK(ab.p == doctest::Approx(ba.p));
}

TEST_CASE("ties select midranks and the normal approximation") {
    const std::vector<double> a = {1, 1, 2, 2, 3};
    const std::vector<double> b = {2, 3, 3, 4, 4};
    const MannWhitneyResult r = mann_whitney_u(a, b);
    CHECK_FALSE(r.exact);
    // Pooled midranks put rank sum 18 on group a: U_a = 3.
    CHECK(r.u == doctest::Approx(3.0));
    CHECK(r.p > 0.0);
    CHECK(r.p <= 1.0);
}

TEST_CASE("large tie-free samples fall back to the normal approximation") {
    std::vector<double> a, b;
    for (int i = 0; i < 25; ++i) {
        a.push_back(i * 2.0);
        b.push_back(i * 2.0 + 1.0);
    }
    const MannWhitneyResult r = mann_whitney_u(a, b);
    CHECK_FALSE(r.exact);
    CHECK(r.p > 0.5); // nearly identical distributions
}

TEST_CASE("normal approximation tracks the exact p near the cutoff") {
    // 19x19 = 361 is exact; compare against the z formula computed here.
    std::vector<double> a, b;
    Rng rng(37);
    for (int i = 0; i < 38; ++i) {
        const double v = static_cast<double>(i) + rng.uniform_real() * 0.5;
        (i % 2 == 0 ? a : b).push_back(v);
    }
    const MannWhitneyResult r = mann_whitney_u(a, b);
    REQUIRE(r.exact);
    const double mean = 19.0 * 19.0 / 2.0;
    const double sd = std::sqrt(19.0 * 19.0 * 39.0 / 12.0);
    const double approx = std::min(1.0, 2.0 * normal_sf(-(r.u + 0.5 - mean) / sd));
    CHECK(std::fabs(r.p - approx) < 0.02);
}

TEST_CASE("identical constant samples are maximally compatible") {
    const std::vector<double> a(5, 1.0);
    const std::vector<double> b(7, 1.0);
    const MannWhitneyResult r = mann_whitney_u(a, b);
    CHECK(r.p == doctest::Approx(1.0));
}

TEST_CASE("empty samples are rejected") {
    CHECK_THROWS(mann_whitney_u({}, {1.0}));
    CHECK_THROWS(mann_whitney_u({1.0}, {}));
}

TEST_CASE("Kruskal-Wallis H for three separated groups is 7.2") {
    const KruskalWallisResult r = kruskal_wallis({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
    CHECK(r.h == doctest::Approx(7.2));
    // df = 2: sf(x) = exp(-x/2).
    CHECK(r.p == doctest::Approx(std::exp(-3.6)));
}

TEST_CASE("Kruskal-Wallis with all observations tied is null") {
    const KruskalWallisResult r = kruskal_wallis({{2, 2}, {2, 2}, {2, 2}});
    CHECK(r.h == doctest::Approx(0.0));
    CHECK(r.p == doctest::Approx(1.0));
}

TEST_CASE("Kruskal-Wallis with two groups agrees with the U test direction") {
    const std::vector<double> a = {1, 2, 3, 4, 10};
    const std::vector<double> b = {5, 6, 7, 8, 9};
    const KruskalWallisResult kw = kruskal_wallis({a, b});
    CHECK(kw.h > 0.0);
    CHECK(kw.p < 1.0);
    CHECK_THROWS(kruskal_wallis({a}));
    CHECK_THROWS(kruskal_wallis({a, {}}));
}

TEST_CASE("normal survival function hits standard values") {
    CHECK(normal_sf(0.0) == doctest::Approx(0.5));
    CHECK(normal_sf(1.959963985) == doctest::Approx(0.025).epsilon(1e-6));
    CHECK(normal_sf(-1.0) == doctest::Approx(0.8413447461));
    CHECK(normal_sf(1.0) == doctest::Approx(0.1586552539));
}

TEST_CASE("chi-square survival matches closed forms") {
    // df = 2 is exponential; df = 1 folds the normal.
    for (double x : {0.5, 1.0, 3.0, 7.2, 15.0}) {
        CHECK(chi_squared_sf(x, 2) == doctest::Approx(std::exp(-x / 2.0)));
        CHECK(chi_squared_sf(x, 1) == doctest::Approx(2.0 * normal_sf(std::sqrt(x))));
    }
    CHECK(chi_squared_sf(0.0, 3) == doctest::Approx(1.0));
    CHECK(chi_squared_sf(100.0, 2) < 1e-20);
    CHECK_THROWS(chi_squared_sf(1.0, 0));
}

TEST_CASE("chi-square survival at the mean is near one half") {
    // For large df the distribution concentrates near df.
    CHECK(chi_squared_sf(50.0, 50) == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("bootstrap of a constant sample collapses to the constant") {
    const auto [lo, hi] = bootstrap_mean_ci(std::vector<double>(10, 3.5), 1000, 0.95, 1);
    CHECK(lo == doctest::Approx(3.5));
    CHECK(hi == doctest::Approx(3.5));
}

TEST_CASE("bootstrap interval brackets the sample mean") {
    const std::vector<double> samples = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 2, 4, 6, 8};
    double mean = 0.0;
    for (double v : samples) mean += v;
    mean /= static_cast<double>(samples.size());
    const auto [lo, hi] = bootstrap_mean_ci(samples, 10000, 0.95, 7);
    CHECK(lo < mean);
    CHECK(hi > mean);
    CHECK(lo >= 1.0);
    CHECK(hi <= 10.0);
    // 95% interval nests inside the 99% one.
    const auto [lo99, hi99] = bootstrap_mean_ci(samples, 10000, 0.99, 7);
    CHECK(lo99 <= lo);
    CHECK(hi99 >= hi);
}

TEST_CASE("bootstrap is deterministic for a fixed seed") {
    const std::vector<double> samples = {0.4, 1.9, 2.2, 3.3, 0.1, 5.5};
    CHECK(bootstrap_mean_ci(samples, 2000, 0.95, 42) ==
          bootstrap_mean_ci(samples, 2000, 0.95, 42));
    CHECK_THROWS(bootstrap_mean_ci({}, 100, 0.95, 1));
}

TEST_CASE("bootstrap interval width matches the classic standard error") {
    // Mean of n uniform draws: CI half-width should be near 1.96 * sd/sqrt(n).
    Rng rng(55);
    std::vector<double> samples;
    for (int i = 0; i < 200; ++i) samples.push_back(rng.uniform_real());
    double mean = 0.0;
    for (double v : samples) mean += v;
    mean /= static_cast<double>(samples.size());
    double ss = 0.0;
    for (double v : samples) ss += (v - mean) * (v - mean);
    const double sem = std::sqrt(ss / (samples.size() - 1.0) / samples.size());
    const auto [lo, hi] = bootstrap_mean_ci(samples, 10000, 0.95, 9);
    const double half = (hi - lo) / 2.0;
    CHECK(half == doctest::Approx(1.96 * sem).epsilon(0.15));
}
