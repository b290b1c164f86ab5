#include <doctest.h>

#include <stdexcept>

#include <algorithm>

#include "locavg/cff.hpp"
#include "locavg/schemes.hpp"

using namespace locavg;

TEST_CASE("primes") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK_FALSE(is_prime(9));
    CHECK(next_prime(8) == 11);
    CHECK(next_prime(11) == 11);
}

TEST_CASE("polynomial family parameters match the worked search") {
    PolyParams p = best_poly_params(4, 1);
    CHECK(p.q == 3);
    CHECK(p.d == 1);
    CHECK(p.universe == 9);

    CoverFreeFamily f = build_cff_polynomial(4, 1);
    CHECK(f.universe == 9);
    for (const auto& s : f.sets) CHECK(s.size() == 3);
    CHECK(cff_exhaustive_check(f, 1));
}

TEST_CASE("polynomial family pairwise intersections bounded by the degree") {
    CoverFreeFamily f = build_cff_polynomial(40, 2);
    for (std::size_t i = 0; i < f.sets.size(); ++i)
        for (std::size_t j = i + 1; j < f.sets.size(); ++j) {
            std::vector<int> inter;
            std::set_intersection(f.sets[i].begin(), f.sets[i].end(), f.sets[j].begin(),
                                  f.sets[j].end(), std::back_inserter(inter));
            CHECK(static_cast<int>(inter.size()) <= f.d);
        }
}

TEST_CASE("polynomial family degenerate single id") {
    CoverFreeFamily f = build_cff_polynomial(1, 3);
    CHECK(f.count() == 1);
    CHECK_FALSE(f.sets[0].empty());
}

TEST_CASE("greedy family hits the target universe") {
    CoverFreeFamily f = build_cff_greedy(1024, 4);
    CHECK(f.universe == 800);  // 5 * ceil(16 * 10)
    CHECK(f.count() == 1024);
    CHECK(cff_pairwise_certificate(f, 4));
}

TEST_CASE("greedy family exhaustive cover-freeness on small instances") {
    CoverFreeFamily f4 = build_cff_greedy(4, 1);
    CHECK(cff_exhaustive_check(f4, 1));
    // every ordered pair escapes
    for (std::size_t i = 0; i < f4.sets.size(); ++i)
        for (std::size_t j = 0; j < f4.sets.size(); ++j) {
            if (i == j) continue;
            bool escapes = false;
            for (int x : f4.sets[i])
                if (!std::binary_search(f4.sets[j].begin(), f4.sets[j].end(), x)) escapes = true;
            CHECK(escapes);
        }

    CoverFreeFamily f16 = build_cff_greedy(16, 2);
    CHECK(cff_exhaustive_check(f16, 2));

    CoverFreeFamily f64 = build_cff_greedy(64, 2);
    CHECK(cff_exhaustive_check(f64, 2));

    CoverFreeFamily lone = build_cff_greedy(1, 3);
    CHECK(lone.count() == 1);
    CHECK_FALSE(lone.sets[0].empty());

    CHECK_THROWS_AS(build_cff_greedy(5000, 2), std::invalid_argument);
}

TEST_CASE("reduction schedule crunches the id space") {
    LinialSchedule s = LinialSchedule::compute(65536, 4);
    CHECK(s.final_bound <= 8 * 16);  // implementation constant c <= 8 at A=4
    CHECK(s.rounds() <= log_star(65536) + 2);
    LinialSchedule tiny = LinialSchedule::compute(2, 4);
    CHECK(tiny.rounds() == 0);
    CHECK(tiny.final_bound == 2);
}

TEST_CASE("iterated logarithms") {
    CHECK(log_star(16) == 3);
    CHECK(log_star(2) == 1);
    CHECK(log_star(1) == 0);
    CHECK(iterated_log(65536, 2) == doctest::Approx(4.0));
    CHECK(iterated_log(65536, 0) == doctest::Approx(65536.0));
    CHECK(rho(65536) == 3);
    CHECK(rho(256) == 2);
    CHECK(rho(2) == 2);
}
