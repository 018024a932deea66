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

#include "hocbf/acc.hpp"
#include "hocbf/clf.hpp"
#include "hocbf/qp.hpp"

using hocbf::ClfSpec;
using hocbf::LyapunovEval;

TEST_SUITE("clf") {

TEST_CASE("ACC speed-tracking row at the table1 start") {
    const auto params = hocbf::acc::AccParams::table1();
    const auto row = hocbf::clf_constraint(hocbf::acc::acc_clf(params), hocbf::acc::AccState{100.0, 20.0}.to_state());
    REQUIRE(row.a.size() == 2);
    const double lf = 2.0 * 4.0 * 200.1 / 1650.0;
    CHECK(row.a(0) == doctest::Approx(-8.0 / 1650.0).epsilon(1e-14));
    CHECK(row.a(1) == -1.0);
    CHECK(row.c == doctest::Approx(-lf - 160.0).epsilon(1e-14));
    CHECK(lf == doctest::Approx(0.9702).epsilon(1e-4));
    CHECK(row.tag == hocbf::ConstraintTag::clf);
}

TEST_CASE("at the target speed the row reduces to delta >= 0") {
    const auto params = hocbf::acc::AccParams::table1();
    const auto row = hocbf::clf_constraint(hocbf::acc::acc_clf(params),
                                           hocbf::acc::AccState{100.0, params.v_d}.to_state());
    CHECK(row.a(0) == 0.0);
    CHECK(row.a(1) == -1.0);
    CHECK(row.c == 0.0);
}

TEST_CASE("any control is admissible with a large enough relaxation") {
    const auto params = hocbf::acc::AccParams::table1();
    const auto row = hocbf::clf_constraint(hocbf::acc::acc_clf(params), hocbf::acc::AccState{50.0, 5.0}.to_state());
    for (double u : {-1e5, -100.0, 0.0, 100.0, 1e5}) {
        Eigen::Vector2d z(u, 0.0);
        z(1) = std::max(0.0, row.a(0) * u - row.c) + 1.0;
        CHECK(row.slack(z) >= 0.0);
    }
}

TEST_CASE("spec validation") {
    auto v = [](const hocbf::State&) { return LyapunovEval{1.0, 0.0, Eigen::VectorXd::Zero(1)}; };
    CHECK_THROWS_AS(ClfSpec(v, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ClfSpec(v, 1.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(ClfSpec(nullptr, 1.0, 1.0), std::invalid_argument);
    auto negative = [](const hocbf::State&) { return LyapunovEval{-1.0, 0.0, Eigen::VectorXd::Zero(1)}; };
    const ClfSpec bad(negative, 1.0, 1.0);
    CHECK_THROWS_AS((void)bad.evaluate(hocbf::State::Zero(1)), std::domain_error);
}

TEST_CASE("a heavy relaxation weight keeps delta near zero on the first ACC step") {
    // Start close enough to v_d that exact tracking fits under the acceleration
    // cap; from v = 20 it needs ~33 kN and delta is forced positive.
    auto params = hocbf::acc::AccParams::table1();
    params.p_acc = 1e9;
    params.v0_i = 23.9;
    const auto problem =
        hocbf::acc::assemble_acc_qp(params, hocbf::acc::AccState{params.z0, params.v0_i}.to_state());
    const auto sol = hocbf::solve(problem);
    REQUIRE(sol.status == hocbf::QpStatus::optimal);
    CHECK(std::abs(sol.z(1)) <= 1e-3);
}

}  // TEST_SUITE
