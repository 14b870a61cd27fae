#include <cmath>

#include "doctest.h"
#include "oracle.hpp"
#include "summatoria/summatory.hpp"

using namespace summatoria;
using summatory::StreamConfig;

namespace {

StreamConfig tiny_blocks(unsigned workers = 1) {
    StreamConfig cfg;
    cfg.workers = workers;
    cfg.block_size = 64;  // force many blocks even at toy sizes
    return cfg;
}

}  // namespace

TEST_CASE("compute_summatory matches the direct small sums") {
    auto omega = summatory::compute_summatory(*arith::find_builtin("omega"), {10});
    REQUIRE(omega.integer_valued());
    CHECK((*omega.exact_values)[0] == 11);

    auto big_omega = summatory::compute_summatory(*arith::find_builtin("big_omega"), {10});
    CHECK((*big_omega.exact_values)[0] == 15);

    auto log_phi = summatory::compute_summatory(*arith::find_builtin("log_phi"), {10});
    CHECK(log_phi.values[0] == doctest::Approx(std::log(18432.0)).epsilon(1e-13));

    auto unit = summatory::compute_summatory(*arith::find_builtin("unit"), {1});
    CHECK((*unit.exact_values)[0] == 1);
}

TEST_CASE("mean_value and density") {
    auto omega = summatory::compute_summatory(*arith::find_builtin("omega"), {10});
    CHECK(summatory::mean_value(omega, 0) == doctest::Approx(1.1).epsilon(1e-15));

    auto unit = summatory::compute_summatory(*arith::find_builtin("unit"), {5});
    CHECK(summatory::mean_value(unit, 0) == 1.0);
    CHECK(summatory::density(unit, 0) == 1.0);

    auto m = summatory::mertens({10});
    CHECK(summatory::mean_value(m, 0) == doctest::Approx(-0.1).epsilon(1e-15));

    auto sq = summatory::squarefree_count({10});
    CHECK(summatory::density(sq, 0) == doctest::Approx(0.7).epsilon(1e-15));

    auto pi = summatory::compute_summatory(*arith::find_builtin("prime_indicator"), {10});
    CHECK(summatory::density(pi, 0) == doctest::Approx(0.4).epsilon(1e-15));

    CHECK_THROWS_AS(summatory::mean_value(omega, 5), std::invalid_argument);
}

TEST_CASE("empirical_variance") {
    auto unit = summatory::empirical_variance(*arith::find_builtin("unit"), 100);
    CHECK(unit.mean == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(unit.variance == 0.0);

    // omega over [1,10]: sum 11, sum of squares 15 -> 1.5 - 1.21 = 0.29
    auto om = summatory::empirical_variance(*arith::find_builtin("omega"), 10);
    CHECK(om.mean == doctest::Approx(1.1).epsilon(1e-14));
    CHECK(om.variance == doctest::Approx(0.29).epsilon(1e-12));

    auto lg = summatory::empirical_variance(*arith::find_builtin("log"), 1);
    CHECK(lg.mean == 0.0);
    CHECK(lg.variance == 0.0);
}

TEST_CASE("mertens values and bounds") {
    auto s = summatory::mertens({1, 2, 10});
    CHECK((*s.exact_values)[0] == 1);
    CHECK((*s.exact_values)[1] == 0);
    CHECK((*s.exact_values)[2] == -1);

    // brute-force cross-check and the trivial bound |M(n)| <= n
    std::vector<u64> grid;
    for (u64 n = 1; n <= 2000; n += 97) grid.push_back(n);
    auto series = summatory::mertens(grid, tiny_blocks());
    i64 brute = 0;
    u64 next = 0;
    u64 m = 1;
    for (; m <= 2000 && next < grid.size(); ++m) {
        brute += oracle::mu(m);
        if (m == grid[next]) {
            REQUIRE((*series.exact_values)[next] == brute);
            REQUIRE(std::llabs((*series.exact_values)[next]) <= static_cast<i64>(m));
            ++next;
        }
    }
}

TEST_CASE("chebyshev_theta and prime sums") {
    auto theta = summatory::chebyshev_theta({1, 2, 10});
    CHECK(theta.values[0] == 0.0);
    CHECK(theta.values[1] == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(theta.values[2] == doctest::Approx(std::log(210.0)).epsilon(1e-14));

    auto recip = summatory::prime_sum(*arith::find_builtin("reciprocal"), {10});
    CHECK(recip.values[0] ==
          doctest::Approx(0.5 + 1.0 / 3 + 0.2 + 1.0 / 7).epsilon(1e-15));

    auto any = summatory::prime_sum(*arith::find_builtin("log"), {1});
    CHECK(any.values[0] == 0.0);

    // theta is prime_sum(log) on the same code path: bit-identical
    auto via_sum = summatory::prime_sum(*arith::find_builtin("log"), {2, 10, 1000});
    auto via_theta = summatory::chebyshev_theta({2, 10, 1000});
    for (std::size_t i = 0; i < 3; ++i) REQUIRE(via_sum.values[i] == via_theta.values[i]);
}

TEST_CASE("squarefree_count") {
    auto s = summatory::squarefree_count({1, 4, 10});
    CHECK((*s.exact_values)[0] == 1);
    CHECK((*s.exact_values)[1] == 3);
    CHECK((*s.exact_values)[2] == 7);
}

TEST_CASE("sum of omega never exceeds sum of big_omega; equal only for n <= 3") {
    std::vector<u64> grid;
    for (u64 n = 1; n <= 100; ++n) grid.push_back(n);
    auto so = summatory::compute_summatory(*arith::find_builtin("omega"), grid);
    auto sO = summatory::compute_summatory(*arith::find_builtin("big_omega"), grid);
    for (u64 n = 1; n <= 100; ++n) {
        i64 a = (*so.exact_values)[n - 1], b = (*sO.exact_values)[n - 1];
        REQUIRE(a <= b);
        REQUIRE((a == b) == (n <= 3));
    }
}

TEST_CASE("checkpoints are prefix-consistent under grid refinement") {
    auto cfg = tiny_blocks();
    auto coarse = summatory::compute_summatory(*arith::find_builtin("log_phi"), {1000}, cfg);
    auto fine = summatory::compute_summatory(*arith::find_builtin("log_phi"),
                                             {10, 100, 333, 1000}, cfg);
    CHECK(fine.values[3] == coarse.values[0]);  // bitwise

    auto single = summatory::compute_summatory(*arith::find_builtin("log_phi"), {333}, cfg);
    CHECK(fine.values[2] == single.values[0]);
}

TEST_CASE("worker count does not change results") {
    std::vector<u64> grid{100, 1000, 5000, 20000};
    for (const char* name : {"omega", "log_phi", "g_star", "mobius"}) {
        auto spec = *arith::find_builtin(name);
        auto one = summatory::compute_summatory(spec, grid, tiny_blocks(1));
        auto four = summatory::compute_summatory(spec, grid, tiny_blocks(4));
        for (std::size_t i = 0; i < grid.size(); ++i)
            REQUIRE(one.values[i] == four.values[i]);  // bitwise
        if (one.integer_valued())
            REQUIRE(*one.exact_values == *four.exact_values);
    }
    auto t1 = summatory::chebyshev_theta(grid, tiny_blocks(1));
    auto t4 = summatory::chebyshev_theta(grid, tiny_blocks(4));
    for (std::size_t i = 0; i < grid.size(); ++i) REQUIRE(t1.values[i] == t4.values[i]);
}

TEST_CASE("resume reproduces a cold run bit-identically") {
    auto cfg = tiny_blocks();
    auto spec = *arith::find_builtin("log_phi");

    summatory::ResumeState saved;
    summatory::compute_summatory(spec, {50, 500}, cfg, nullptr, &saved);
    CHECK(saved.restart_lo == 1 + (499 / cfg.block_size) * cfg.block_size);

    auto cold = summatory::compute_summatory(spec, {50, 500, 5000}, cfg);
    auto resumed = summatory::compute_summatory(spec, {50, 500, 5000}, cfg, &saved);
    for (std::size_t i = 0; i < 3; ++i) REQUIRE(resumed.values[i] == cold.values[i]);

    // integer path
    summatory::ResumeState msaved;
    auto mspec = *arith::find_builtin("mobius");
    summatory::compute_summatory(mspec, {50, 500}, cfg, nullptr, &msaved);
    auto mcold = summatory::compute_summatory(mspec, {50, 500, 5000}, cfg);
    auto mres = summatory::compute_summatory(mspec, {50, 500, 5000}, cfg, &msaved);
    REQUIRE(*mres.exact_values == *mcold.exact_values);
}

TEST_CASE("grid validation") {
    auto spec = *arith::find_builtin("unit");
    CHECK_THROWS_AS(summatory::compute_summatory(spec, {}), std::invalid_argument);
    CHECK_THROWS_AS(summatory::compute_summatory(spec, {10, 5}), std::invalid_argument);
    CHECK_THROWS_AS(summatory::compute_summatory(spec, {0, 5}), std::invalid_argument);
    StreamConfig capped;
    capped.n_cap = 100;
    CHECK_THROWS_AS(summatory::compute_summatory(spec, {1000}, capped),
                    std::invalid_argument);
    CHECK_THROWS_AS(summatory::prime_sum(*arith::find_builtin("omega"), {10}),
                    std::invalid_argument);
}

TEST_CASE("geometric_grid") {
    auto grid = summatory::geometric_grid(1000, summatory::kDefaultGridRatio, 1'000'000);
    REQUIRE(grid.size() == 13);
    CHECK(grid.front() == 1000);
    CHECK(grid[1] == 1778);
    CHECK(grid[2] == 3162);
    CHECK(grid[4] == 10'000);
    CHECK(grid.back() == 1'000'000);
    for (std::size_t i = 1; i < grid.size(); ++i) REQUIRE(grid[i] > grid[i - 1]);

    // n_max appended when the last geometric point falls short
    auto padded = summatory::geometric_grid(1000, summatory::kDefaultGridRatio, 2'000'000);
    CHECK(padded.back() == 2'000'000);
    CHECK(padded[padded.size() - 2] == 1'778'279);

    CHECK_THROWS_AS(summatory::geometric_grid(0, 2.0, 100), std::invalid_argument);
    CHECK_THROWS_AS(summatory::geometric_grid(10, 1.0, 100), std::invalid_argument);
    CHECK_THROWS_AS(summatory::geometric_grid(10, 2.0, 5), std::invalid_argument);
}
