#include "doctest.h"

#include "openboson/params.hpp"

#include <cmath>
#include <stdexcept>

using namespace openboson;

TEST_CASE("thermal_occupation pinned value") {
    // 1/(e^(1/100) - 1), 20 digits via arbitrary-precision reference
    CHECK(thermal_occupation(1.0, 100.0)
          == doctest::Approx(99.50083333194444567).epsilon(1e-14));
}

TEST_CASE("thermal_occupation limits and monotonicity") {
    // high-temperature regime: n approaches kT/(hbar w) from below, within 1%
    // once hbar*w/(k*T) < 0.01
    const double n = thermal_occupation(1.0, 150.0);
    CHECK(std::abs(n - 150.0) / n < 0.01);
    CHECK(n < 150.0);

    // low temperature: exponentially small but non-negative
    const double cold = thermal_occupation(1.0, 0.02);
    CHECK(cold >= 0.0);
    CHECK(cold < 1e-21);

    // increasing in T at fixed w, decreasing in w at fixed T
    double prev = thermal_occupation(1.0, 0.5);
    for (double t = 1.0; t < 9.0; t += 0.7) {
        const double cur = thermal_occupation(1.0, t);
        CHECK(cur > prev);
        prev = cur;
    }
    prev = thermal_occupation(0.25, 2.0);
    for (double w = 0.5; w < 5.0; w += 0.4) {
        const double cur = thermal_occupation(w, 2.0);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("thermal_occupation rejects non-positive inputs") {
    CHECK_THROWS_AS(thermal_occupation(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(thermal_occupation(-1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(thermal_occupation(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(thermal_occupation(1.0, -2.0), std::domain_error);
}

TEST_CASE("summarize mixes reservoirs by damping weight") {
    SystemParams p; // omega_s=1, gamma_e=gamma_c=1, T_e=2, T_c=1
    const ThermalSummary s = summarize(p);
    CHECK(s.n_e == doctest::Approx(1.5414940825367982).epsilon(1e-14));
    CHECK(s.n_c == doctest::Approx(0.58197670686932645).epsilon(1e-14));
    CHECK(s.n_s == doctest::Approx(1.0617353947030623).epsilon(1e-14));
    CHECK(s.temp_sys == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(s.gamma_total == doctest::Approx(2.0).epsilon(1e-15));

    // asymmetric weights
    p.gamma_e = 1.0;
    p.gamma_c = 2.0;
    const ThermalSummary a = summarize(p);
    CHECK(a.n_s == doctest::Approx(0.90181583209181704).epsilon(1e-14));
    CHECK(a.temp_sys == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(a.gamma_total == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("summarize: strongly coupled hot reservoir dominates") {
    // gamma_e=2 with n_e=3 against a frozen-out cold reservoir gives n_s=2
    SystemParams p;
    p.gamma_e = 2.0;
    p.gamma_c = 1.0;
    p.temp_e = 3.4760594967822069; // occupation 3 at unit frequency
    p.temp_c = 0.02;               // occupation ~ 2e-22
    const ThermalSummary s = summarize(p);
    CHECK(s.n_s == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("summary ordering when cold reservoir is colder") {
    SystemParams p;
    p.temp_e = 3.7;
    p.temp_c = 0.9;
    p.gamma_e = 0.4;
    p.gamma_c = 2.5;
    const ThermalSummary s = summarize(p);
    CHECK(s.n_c < s.n_e);
    CHECK(s.n_s >= s.n_c);
    CHECK(s.n_s <= s.n_e);
    CHECK(s.temp_sys >= p.temp_c);
    CHECK(s.temp_sys <= p.temp_e);
}

TEST_CASE("SystemParams::validate rejects non-physical values") {
    auto bad = [](auto&& mutate) {
        SystemParams p;
        mutate(p);
        CHECK_THROWS_AS(p.validate(), std::domain_error);
    };
    bad([](SystemParams& p) { p.omega_s = 0.0; });
    bad([](SystemParams& p) { p.omega_s = -1.0; });
    bad([](SystemParams& p) { p.gamma_e = 0.0; });
    bad([](SystemParams& p) { p.gamma_c = -0.5; });
    bad([](SystemParams& p) { p.temp_e = 0.0; });
    bad([](SystemParams& p) { p.temp_c = -3.0; });
    bad([](SystemParams& p) { p.mass = 0.0; });
    bad([](SystemParams& p) { p.hbar = 0.0; });
    bad([](SystemParams& p) { p.k_b = 0.0; });

    // detuning of either sign is fine; only non-finite values are rejected
    SystemParams p;
    p.delta = -0.5;
    CHECK_NOTHROW(p.validate());
    p.delta = 0.5;
    CHECK_NOTHROW(p.validate());
    p.delta = std::nan("");
    CHECK_THROWS_AS(p.validate(), std::domain_error);
}

TEST_CASE("omega is the shifted oscillator frequency") {
    SystemParams p;
    p.omega_s = 1.3;
    p.delta = 0.2;
    CHECK(p.omega() == doctest::Approx(1.5).epsilon(1e-15));
}
