/*
 Copyright 2026 The hocbf Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#include <doctest.h>

#include <cmath>

#include "hocbf/classk.hpp"
#include "oracles.hpp"

using hocbf::ClassK;
using hocbf::ClassKDomainError;

TEST_SUITE("classk") {

TEST_CASE("eval examples") {
    CHECK(ClassK::linear(1.0, 1.0).eval(0.0) == 0.0);
    CHECK(ClassK::power(2.0, 0.1).eval(3.0) == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(ClassK::power(0.5, 2.0).eval(4.0) == 4.0);
    CHECK(ClassK::polynomial({1.0, 0.0, 2.0}).eval(2.0) == 18.0);
}

TEST_CASE("eval at zero is exactly zero for every kind") {
    CHECK(ClassK::linear(3.0, 2.0).eval(0.0) == 0.0);
    CHECK(ClassK::power(0.5, 2.0).eval(0.0) == 0.0);
    CHECK(ClassK::power(3.0).eval(0.0) == 0.0);
    CHECK(ClassK::polynomial({0.0, 1.0}).eval(0.0) == 0.0);
}

TEST_CASE("negative argument is a domain error carrying the argument") {
    const ClassK f = ClassK::linear(1.0);
    try {
        (void)f.eval(-0.25);
        FAIL("expected ClassKDomainError");
    } catch (const ClassKDomainError& e) {
        CHECK(e.argument() == -0.25);
    }
    CHECK_THROWS_AS((void)f.eval_derivs(-1.0, 2), ClassKDomainError);
}

TEST_CASE("construction rejects non-class-K parameters") {
    CHECK_THROWS_AS(ClassK::linear(0.0), std::invalid_argument);
    CHECK_THROWS_AS(ClassK::linear(1.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(ClassK::power(-0.5), std::invalid_argument);
    CHECK_THROWS_AS(ClassK::polynomial({}), std::invalid_argument);
    CHECK_THROWS_AS(ClassK::polynomial({1.0, -0.5}), std::invalid_argument);
    CHECK_THROWS_AS(ClassK::polynomial({0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("eval_derivs examples") {
    const auto lin = ClassK::linear(2.0).eval_derivs(5.0, 2);
    CHECK(lin.values == std::vector<double>{10.0, 2.0, 0.0});
    const auto quad = ClassK::power(2.0).eval_derivs(3.0, 2);
    CHECK(quad.values == std::vector<double>{9.0, 6.0, 2.0});
    const auto root = ClassK::power(0.5).eval_derivs(4.0, 1);
    CHECK(root.values == std::vector<double>{2.0, 0.25});
    CHECK_FALSE(root.guarded);
}

TEST_CASE("fractional power derivatives are guarded at zero") {
    const auto d = ClassK::power(0.5, 2.0).eval_derivs(0.0, 2);
    CHECK(d.guarded);
    CHECK(d.values[0] == 0.0);
    CHECK(std::isfinite(d.values[1]));
    CHECK(d.values[1] == doctest::Approx(2.0 * 0.5 / std::sqrt(ClassK::kDerivativeFloor)));
    CHECK(std::isfinite(d.values[2]));
    // Integer powers need no guard: higher derivatives vanish exactly.
    const auto cube = ClassK::power(3.0).eval_derivs(0.0, 4);
    CHECK_FALSE(cube.guarded);
    CHECK(cube.values == std::vector<double>{0.0, 0.0, 0.0, 6.0, 0.0});
    // Order 0 never needs a guard.
    CHECK_FALSE(ClassK::power(0.5).eval_derivs(0.0, 0).guarded);
}

TEST_CASE("polynomial derivatives") {
    // 2 s + 3 s^3 at s = 2: value 28, first 2 + 9 s^2 = 38, second 18 s = 36, third 18.
    const auto d = ClassK::polynomial({2.0, 0.0, 3.0}, 0.5).eval_derivs(2.0, 4);
    CHECK(d.values == std::vector<double>{14.0, 19.0, 18.0, 9.0, 0.0});
}

TEST_CASE("monotonicity on random pairs") {
    hocbf::test::Rng rng(11);
    const std::vector<ClassK> fns = {ClassK::linear(0.7, 3.0), ClassK::power(0.5, 2.0), ClassK::power(2.0, 0.02),
                                     ClassK::power(3.5), ClassK::polynomial({0.1, 0.0, 0.3, 1e-3})};
    for (const auto& f : fns) {
        for (int i = 0; i < 1000; ++i) {
            double s1 = hocbf::test::uniform(rng, 0.0, 1e6);
            double s2 = hocbf::test::uniform(rng, 0.0, 1e6);
            if (s1 == s2) continue;
            if (s1 > s2) std::swap(s1, s2);
            INFO(f.describe(), " s1=", s1, " s2=", s2);
            CHECK(f.eval(s1) < f.eval(s2));
        }
    }
}

TEST_CASE("first derivative matches central differences") {
    hocbf::test::Rng rng(12);
    const std::vector<ClassK> fns = {ClassK::linear(0.7, 3.0), ClassK::power(0.5, 2.0), ClassK::power(2.0, 0.02),
                                     ClassK::polynomial({0.1, 0.0, 0.3, 1e-3})};
    for (const auto& f : fns) {
        for (int i = 0; i < 100; ++i) {
            const double s = hocbf::test::uniform(rng, 0.1, 100.0);
            const double h = 1e-5 * s;
            const double fd = (f.eval(s + h) - f.eval(s - h)) / (2.0 * h);
            const double analytic = f.eval_derivs(s, 1).values[1];
            INFO(f.describe(), " s=", s);
            CHECK(std::abs(fd - analytic) <= 1e-6 * std::abs(analytic));
        }
    }
}

TEST_CASE("penalty scales eval exactly") {
    hocbf::test::Rng rng(13);
    const std::vector<ClassK> fns = {ClassK::linear(0.7), ClassK::power(0.5), ClassK::power(2.0),
                                     ClassK::polynomial({0.1, 0.0, 0.3})};
    for (const auto& f : fns) {
        for (int i = 0; i < 100; ++i) {
            const double p = hocbf::test::uniform(rng, 0.01, 10.0);
            const double s = hocbf::test::uniform(rng, 0.0, 50.0);
            CHECK(f.with_penalty(p).eval(s) == p * f.eval(s));
        }
    }
}

}  // TEST_SUITE
