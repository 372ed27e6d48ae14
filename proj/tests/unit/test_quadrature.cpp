// test_quadrature.cpp — adaptive Gauss-Kronrod integrator
#include <doctest.h>

#include <cmath>
#include <vector>

#include "quasirelax/quadrature.hpp"

using namespace quasirelax;

TEST_CASE("integrates known functions") {
    const QuadratureConfig cfg{1e-12, 1e-15, 5000};
    std::vector<double> b{0.0, M_PI};
    CHECK(integrate_scalar([](double x) { return std::sin(x); }, b, cfg).value[0] ==
          doctest::Approx(2.0).epsilon(1e-13));

    b = {0.0, 1.0};
    const auto r = integrate<3>(
        [](double x) { return std::array<double, 3>{x * x, std::exp(x), 1.0 / (1.0 + x * x)}; }, b, cfg);
    CHECK(r.value[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK(r.value[1] == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-13));
    CHECK(r.value[2] == doctest::Approx(M_PI / 4).epsilon(1e-13));
    CHECK(r.abs_error < 1e-12);

    // Sharp Lorentzian resolved by refinement from a single panel.
    b = {0.0, 2.0};
    const double g = 1e-3;
    const auto lor = integrate_scalar([&](double x) { return g / ((x - 1) * (x - 1) + g * g); }, b, cfg);
    CHECK(lor.value[0] == doctest::Approx(2 * std::atan(1.0 / g)).epsilon(1e-10));
    CHECK(lor.panels > 1);
}

TEST_CASE("break points are sorted and deduplicated") {
    std::vector<double> b{1.0, 0.0, 0.5, 0.5, 1.0};
    const auto r = integrate_scalar([](double x) { return std::abs(x - 0.5); }, b, {});
    CHECK(r.value[0] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(r.panels == 2);
    std::vector<double> one{1.0};
    CHECK(integrate_scalar([](double) { return 1.0; }, one, {}).value[0] == 0.0);
}

TEST_CASE("non-convergence raises with the achieved estimate") {
    std::vector<double> b{0.0, 1.0};
    const QuadratureConfig cfg{1e-14, 1e-300, 3};
    try {
        integrate_scalar([](double x) { return std::sin(200 * x) / std::sqrt(x + 1e-12); }, b, cfg);
        FAIL("expected QuadratureError");
    } catch (const QuadratureError& e) {
        CHECK(e.error_estimate > 0);
        CHECK(std::string(e.what()).find("did not converge") != std::string::npos);
    }
}
