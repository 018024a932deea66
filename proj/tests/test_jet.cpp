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
#include <complex>

#include "hocbf/jet.hpp"
#include "oracles.hpp"

using hocbf::ArityError;
using hocbf::ClassK;
using hocbf::Jet;

namespace {

Eigen::VectorXd row(double x) { return Eigen::VectorXd::Constant(1, x); }

}  // namespace

TEST_SUITE("jet") {

TEST_CASE("shift drops the value and keeps the input row on top") {
    const Jet j({90.0, -6.11, 0.1213}, row(-6.06e-4));
    const Jet d = hocbf::jet_shift(j);
    CHECK(d.order() == 1);
    CHECK(d.coeffs() == std::vector<double>{-6.11, 0.1213});
    CHECK(d.top_input()(0) == -6.06e-4);

    CHECK(hocbf::jet_shift(Jet({5.0, 0.0, 0.0})).coeffs() == std::vector<double>{0.0, 0.0});
    CHECK(hocbf::jet_shift(Jet({1.5, 2.5})).coeffs() == std::vector<double>{2.5});
    CHECK_THROWS_AS(hocbf::jet_shift(Jet({1.0})), ArityError);
}

TEST_CASE("compose examples") {
    const ClassK sq = ClassK::power(2.0);
    const Jet a = hocbf::jet_compose_classk(sq, Jet({1.5, -0.5}));
    CHECK(a.coeffs() == std::vector<double>{2.25, -1.5});

    const Jet b = hocbf::jet_compose_classk(sq, Jet({3.0, 2.0, 1.0}));
    CHECK(b.coeffs() == std::vector<double>{9.0, 12.0, 14.0});

    const Jet j({2.0, -1.0, 4.0, 0.5}, row(3.0));
    const Jet lin = hocbf::jet_compose_classk(ClassK::linear(1.0, 0.3), j);
    for (int k = 0; k <= 3; ++k) CHECK(lin[k] == doctest::Approx(0.3 * j[k]).epsilon(1e-15));
    CHECK(lin.top_input()(0) == doctest::Approx(0.9).epsilon(1e-15));
}

TEST_CASE("compose carries the input row scaled by alpha'(c0)") {
    const Jet j({4.0, 1.0, 2.0}, row(-2.0));
    const Jet out = hocbf::jet_compose_classk(ClassK::power(0.5, 3.0), j);
    // alpha'(4) = 3 * 0.5 / 2
    CHECK(out.top_input()(0) == doctest::Approx(-2.0 * 0.75));
}

TEST_CASE("compose of an order-0 jet carrying the control is rejected") {
    CHECK_THROWS_AS(hocbf::jet_compose_classk(ClassK::power(2.0), Jet({1.0}, row(1.0))), ArityError);
    CHECK_NOTHROW(hocbf::jet_compose_classk(ClassK::power(2.0), Jet({1.0})));
}

TEST_CASE("add and scale") {
    CHECK(hocbf::jet_add(Jet({1.0, 2.0}), Jet({3.0, 4.0})).coeffs() == std::vector<double>{4.0, 6.0});
    CHECK(hocbf::jet_scale(Jet({1.0, 2.0}), 0.0).coeffs() == std::vector<double>{0.0, 0.0});
    const Jet sum = Jet({0.0, 0.0}, row(2.0)) + Jet({0.0, 0.0}, row(3.0));
    CHECK(sum.top_input()(0) == 5.0);
    CHECK((2.0 * Jet({0.0, 1.0}, row(3.0))).top_input()(0) == 6.0);
    CHECK_THROWS_AS(hocbf::jet_add(Jet({1.0}), Jet({1.0, 2.0})), ArityError);
}

TEST_CASE("order cap") {
    CHECK_NOTHROW(Jet(std::vector<double>(7, 1.0)));
    CHECK_THROWS_AS(Jet(std::vector<double>(8, 1.0)), ArityError);
    CHECK_THROWS_AS(Jet::constant(1.0, 7), ArityError);
}

TEST_CASE("truncate") {
    const Jet j({1.0, 2.0, 3.0}, row(4.0));
    const Jet t = hocbf::jet_truncate(j, 1);
    CHECK(t.coeffs() == std::vector<double>{1.0, 2.0});
    CHECK_FALSE(t.has_input());
    CHECK(hocbf::jet_truncate(j, 2).top_input()(0) == 4.0);
    CHECK_THROWS_AS(hocbf::jet_truncate(j, 3), ArityError);
}

TEST_CASE("Faa di Bruno matches contour-integral derivatives of alpha along a trajectory") {
    hocbf::test::Rng rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        const int degree = 1 + static_cast<int>(rng() % 4);
        std::vector<double> coeffs(static_cast<std::size_t>(degree));
        for (double& c : coeffs) c = hocbf::test::uniform(rng, 0.0, 2.0);
        coeffs.back() += 0.1;
        const double penalty = hocbf::test::uniform(rng, 0.1, 3.0);
        const ClassK alpha = ClassK::polynomial(coeffs, penalty);

        std::vector<double> c = {hocbf::test::uniform(rng, 0.0, 3.0), hocbf::test::uniform(rng, -3.0, 3.0),
                                 hocbf::test::uniform(rng, -3.0, 3.0), hocbf::test::uniform(rng, -3.0, 3.0)};
        const Jet composed = hocbf::jet_compose_classk(alpha, Jet(c));

        auto along = [&](std::complex<double> t) {
            const std::complex<double> psi = hocbf::test::taylor_eval(c, t);
            std::complex<double> acc = 0.0;
            for (std::size_t j = coeffs.size(); j-- > 0;) acc = (acc + coeffs[j]) * psi;
            return penalty * acc;
        };
        const std::vector<double> expected = hocbf::test::cauchy_derivatives(along, 3, 0.5);
        for (int k = 0; k <= 3; ++k) {
            INFO("trial ", trial, " k=", k);
            CHECK(std::abs(composed[k] - expected[k]) <= 1e-6 * std::max(1.0, std::abs(expected[k])));
        }
    }
}

TEST_CASE("shift of compose equals the hand-expanded chain rule") {
    // alpha(s) = s + 2 s^2 + s^3 at small integer jets.
    const ClassK alpha = ClassK::polynomial({1.0, 2.0, 1.0});
    for (int c0 = 0; c0 <= 3; ++c0) {
        for (int c1 = -2; c1 <= 2; ++c1) {
            for (int c2 = -2; c2 <= 2; ++c2) {
                const double c3 = 1.0;
                const double a1 = 1.0 + 4.0 * c0 + 3.0 * c0 * c0;
                const double a2 = 4.0 + 6.0 * c0;
                const double a3 = 6.0;
                const Jet d = hocbf::jet_shift(hocbf::jet_compose_classk(alpha, Jet({double(c0), double(c1), double(c2), c3})));
                CHECK(std::abs(d[0] - a1 * c1) <= 1e-12);
                CHECK(std::abs(d[1] - (a2 * c1 * c1 + a1 * c2)) <= 1e-12);
                CHECK(std::abs(d[2] - (a3 * c1 * c1 * c1 + 3.0 * a2 * c1 * c2 + a1 * c3)) <= 1e-12);
            }
        }
    }
}

TEST_CASE("composition never produces more than one input slot") {
    // A full chain keeps the control in the top slot only; the type stores a
    // single input row, so this checks the row tracks alpha' products.
    Jet j({2.0, -1.0, 0.5}, row(-0.25));
    const ClassK sq = ClassK::power(2.0);
    Jet psi1 = hocbf::jet_shift(j) + hocbf::jet_compose_classk(sq, hocbf::jet_truncate(j, 1));
    CHECK(psi1.top_input()(0) == -0.25);
    Jet psi2 = hocbf::jet_shift(psi1) + hocbf::jet_compose_classk(sq, hocbf::jet_truncate(psi1, 0));
    CHECK(psi2.order() == 0);
    CHECK(psi2.top_input()(0) == -0.25);
}

}  // TEST_SUITE
