#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "tfch/diagnostics.hpp"
#include "tfch/init.hpp"
#include "tfch/prng.hpp"

using namespace tfch;

namespace {
constexpr double two_pi = 6.283185307179586476925287;

ModelParams params(double eps, double alpha = 1.0) {
    return ModelParams(eps, MobilityKind::Constant, 2.0,
                       FractionalOrder(alpha));
}
}  // namespace

TEST_CASE("characteristic length of a single mode", "[diagnostics]") {
    Grid2D g(64, 64, 1.0, 1.0);
    Spectral sp(g);
    Field u(g);
    for (std::size_t j = 0; j < g.ny; ++j)
        for (std::size_t i = 0; i < g.nx; ++i)
            u.at(i, j) = std::sin(two_pi * double(i) / double(g.nx));
    auto [l_sf, l_e] = characteristic_length(sp, u, params(0.05));
    CHECK(std::abs(l_sf - 1.0) < 1e-12);
    CHECK(l_e > 0.0);
}

TEST_CASE("characteristic length rejects constant fields", "[diagnostics]") {
    Grid2D g(32, 32, 1.0, 1.0);
    Spectral sp(g);
    Field u(g, 0.3);
    CHECK_THROWS_AS(characteristic_length(sp, u, params(0.05)), InputError);
}

TEST_CASE("energy length of a smoothed disk", "[diagnostics]") {
    // E ~ perimeter x line tension, so length_energy ~ |Omega|/(2 pi R)
    Grid2D g(256, 256, 1.0, 1.0);
    Spectral sp(g);
    const double eps = 0.02, R = 0.25;
    InitConfig ic;
    ic.kind = InitKind::Circle;
    ic.radius = R;
    Field u = init_field(ic, g, eps);
    auto [l_sf, l_e] = characteristic_length(sp, u, params(eps));
    CHECK(std::abs(l_e - 1.0 / (two_pi * R)) < 0.01 * l_e);

    // quadrature oracle for the energy itself
    const double e_want =
        two_pi * R * oracle::ProfileConstants::sigma_int(eps);
    const double e_got = energy(sp, u, params(eps)).total;
    CHECK(std::abs(e_got - e_want) < 0.01 * e_want);
}

TEST_CASE("fit_power_law", "[diagnostics]") {
    std::vector<double> t, y;
    for (int i = 0; i < 40; ++i)
        t.push_back(0.5 * std::pow(1.2, i));

    SECTION("exact power law") {
        y.clear();
        for (double tt : t) y.push_back(3.0 * std::pow(tt, -0.3));
        SlopeFit f = fit_power_law(t, y, t.front(), t.back());
        CHECK(std::abs(f.slope + 0.3) < 1e-12);
        CHECK(f.r_squared >= 1.0 - 1e-12);
        CHECK(std::abs(std::exp(f.intercept) - 3.0) < 1e-10);
    }

    SECTION("constant series has zero slope") {
        y.assign(t.size(), 7.0);
        SlopeFit f = fit_power_law(t, y, t.front(), t.back());
        CHECK(std::abs(f.slope) < 1e-14);
    }

    SECTION("small multiplicative perturbation barely moves the slope") {
        y.clear();
        for (double tt : t)
            y.push_back(std::pow(tt, -0.3) *
                        (1.0 + 0.01 * std::sin(std::log(tt))));
        SlopeFit f = fit_power_law(t, y, t.front(), t.back());
        CHECK(std::abs(f.slope + 0.3) < 0.01);
    }

    SECTION("invariance under y -> c y and t -> c t") {
        y.clear();
        for (double tt : t)
            y.push_back(std::pow(tt, -0.42) * (1.0 + 0.05 * std::cos(tt)));
        const double base =
            fit_power_law(t, y, t.front(), t.back()).slope;

        std::vector<double> y2 = y;
        for (double& v : y2) v *= 137.0;
        CHECK(std::abs(fit_power_law(t, y2, t.front(), t.back()).slope -
                       base) < 1e-12);

        std::vector<double> t2 = t;
        for (double& v : t2) v *= 5.5;
        CHECK(std::abs(
                  fit_power_law(t2, y, 5.5 * t.front(), 5.5 * t.back()).slope -
                  base) < 1e-12);
    }

    SECTION("errors") {
        y.assign(t.size(), 1.0);
        CHECK_THROWS_AS(fit_power_law(t, y, t[0], t[5]), InputError);
        y[3] = -1.0;
        CHECK_THROWS_AS(fit_power_law(t, y, t.front(), t.back()), InputError);
    }
}

TEST_CASE("track_radius", "[diagnostics]") {
    Grid2D g(256, 256, 1.0, 1.0);

    SECTION("sharp disk") {
        Field u(g, -1.0);
        for (std::size_t j = 0; j < g.ny; ++j)
            for (std::size_t i = 0; i < g.nx; ++i) {
                const double x = double(i) * g.dx() - 0.5;
                const double y = double(j) * g.dy() - 0.5;
                if (std::hypot(x, y) < 0.25) u.at(i, j) = 1.0;
            }
        CHECK(std::abs(track_radius(u) - 0.25) <= g.dx());

        // translation by whole cells leaves the cell count unchanged
        Field sh(g);
        for (std::size_t j = 0; j < g.ny; ++j)
            for (std::size_t i = 0; i < g.nx; ++i)
                sh.at(i, j) = u.at((i + 31) % g.nx, (j + 17) % g.ny);
        CHECK(track_radius(sh) == track_radius(u));
    }

    SECTION("uniform fields are rejected") {
        Field lo(g, -1.0), hi(g, 1.0);
        CHECK_THROWS_AS(track_radius(lo), InputError);
        CHECK_THROWS_AS(track_radius(hi), InputError);
    }

    SECTION("half-plane stripe still yields the area-equivalent radius") {
        Field u(g, -1.0);
        for (std::size_t j = 0; j < g.ny; ++j)
            for (std::size_t i = 0; i < g.nx / 2; ++i) u.at(i, j) = 1.0;
        CHECK(std::abs(track_radius(u) - std::sqrt(0.5 / 3.14159265358979)) <
              1e-3);
    }
}

TEST_CASE("interface track velocity and curvature", "[diagnostics]") {
    InterfaceTrack tr;
    for (int i = 0; i <= 10; ++i)
        tr.append(0.1 * i, 0.3 - 0.01 * (0.1 * i));
    auto v = tr.velocity();
    for (double vi : v) REQUIRE(std::abs(vi + 0.01) < 1e-12);
    auto k = tr.curvature();
    for (std::size_t i = 0; i < k.size(); ++i)
        REQUIRE(std::abs(k[i] * tr.radius[i] - 1.0) < 1e-14);
    CHECK_THROWS_AS(tr.append(0.5, 0.2), InputError);
    CHECK_THROWS_AS(tr.append(2.0, -0.1), InputError);
}

TEST_CASE("gibbs_thomson_residual on synthetic data", "[diagnostics]") {
    Grid2D g(256, 256, 1.0, 1.0);
    const double eps = 0.02, R = 0.25;
    auto p = params(eps);
    InitConfig ic;
    ic.kind = InitKind::Circle;
    ic.radius = R;
    Field u = init_field(ic, g, eps);

    const double mu_gt = eps * oracle::ProfileConstants::S /
                         (oracle::ProfileConstants::U_jump * R);

    SECTION("a field equal to the GT value has zero residual") {
        Field mu(g, mu_gt);
        CHECK(gibbs_thomson_residual(u, mu, p, R, 0.5, 0.5) < 1e-12);
    }

    SECTION("sign-flip invariance with flipped orientation") {
        Field mu(g);
        for (std::size_t j = 0; j < g.ny; ++j)
            for (std::size_t i = 0; i < g.nx; ++i)
                mu.at(i, j) = mu_gt * (1.1 + 0.2 * std::sin(
                                                two_pi * double(i) * g.dx()));
        const double r1 = gibbs_thomson_residual(u, mu, p, R, 0.5, 0.5);
        Field nu = u, nmu = mu;
        for (double& v : nu.v) v = -v;
        for (double& v : nmu.v) v = -v;
        const double r2 = gibbs_thomson_residual(nu, nmu, p, R, 0.5, 0.5);
        CHECK(std::abs(r1 - r2) < 1e-12);
    }

    SECTION("unresolved radius is rejected") {
        Field mu(g, mu_gt);
        CHECK_THROWS_AS(gibbs_thomson_residual(u, mu, p, 2.0 * g.dx(), 0.5,
                                               0.5),
                        InputError);
    }
}

TEST_CASE("flux_law_residual on synthetic data", "[diagnostics]") {
    Grid2D g(256, 256, 1.0, 1.0);
    const double eps = 0.02;
    const double R0 = 0.3, v0 = -0.05, T = 1.0;
    const double alpha = 0.7;
    auto p = params(eps, alpha);

    InitConfig ic;
    ic.kind = InitKind::Circle;
    ic.radius = R0 + v0 * T;
    Field u = init_field(ic, g, eps);

    // R(t) linear: central differences recover v0 exactly, so
    // lhs = v0 T^(1-a)/Gamma(2-a)
    InterfaceTrack tr;
    const int n = 41;
    for (int i = 0; i < n; ++i) {
        const double t = T * double(i) / double(n - 1);
        tr.append(t, R0 + v0 * t);
    }
    const double lhs_want =
        v0 * std::pow(T, 1.0 - alpha) / gamma_fn(2.0 - alpha);

    SECTION("two-sided jump balances the fractional velocity") {
        // piecewise-linear radial mu with slopes chosen so rhs == lhs
        const double slope_out = 2.0 * lhs_want;  // [U] = 2, slope_in = 0
        const double R = tr.radius.back();
        Field mu(g);
        for (std::size_t j = 0; j < g.ny; ++j)
            for (std::size_t i = 0; i < g.nx; ++i) {
                const double x = double(i) * g.dx() - 0.5;
                const double y = double(j) * g.dy() - 0.5;
                const double r = std::hypot(x, y);
                mu.v[j * g.nx + i] = r > R ? slope_out * (r - R) : 0.0;
            }
        FluxLawResult res = flux_law_residual(tr, u, mu, p, 0.5, 0.5);
        CHECK(std::abs(res.lhs - lhs_want) < 1e-10);
        CHECK(res.residual < 0.02);

        // sign flip with flipped orientation leaves the residual unchanged
        Field nu = u, nmu = mu;
        for (double& v : nu.v) v = -v;
        for (double& v : nmu.v) v = -v;
        FluxLawResult res2 = flux_law_residual(tr, nu, nmu, p, 0.5, 0.5);
        CHECK(std::abs(res2.residual - res.residual) < 1e-9);
    }

    SECTION("one-sided variant uses the Omega+ slope only") {
        const double R = tr.radius.back();
        const double slope_in = -lhs_want;  // d_m mu+ = -slope_in for +1 disk
        Field mu(g);
        for (std::size_t j = 0; j < g.ny; ++j)
            for (std::size_t i = 0; i < g.nx; ++i) {
                const double x = double(i) * g.dx() - 0.5;
                const double y = double(j) * g.dy() - 0.5;
                const double r = std::hypot(x, y);
                mu.v[j * g.nx + i] = r < R ? slope_in * (r - R) : 0.0;
            }
        FluxLawResult res =
            flux_law_residual(tr, u, mu, p, 0.5, 0.5, /*one_sided=*/true);
        CHECK(res.residual < 0.02);
    }

    SECTION("static configuration yields a floor-bounded residual") {
        InterfaceTrack still;
        for (int i = 0; i < 40; ++i) still.append(0.05 * i, 0.3);
        Field mu(g, 0.0);
        FluxLawResult res = flux_law_residual(still, u, mu, p, 0.5, 0.5);
        CHECK(res.residual <= 1.0);
    }

    SECTION("input validation") {
        Field mu(g, 0.0);
        InterfaceTrack tiny;
        for (int i = 0; i < 8; ++i) tiny.append(0.1 * i, 0.3);
        CHECK_THROWS_AS(flux_law_residual(tiny, u, mu, p, 0.5, 0.5),
                        InputError);

        InterfaceTrack uneven;
        for (int i = 0; i < 40; ++i)
            uneven.append(0.1 * i + (i == 20 ? 0.03 : 0.0), 0.3);
        CHECK_THROWS_AS(flux_law_residual(uneven, u, mu, p, 0.5, 0.5),
                        InputError);

        InterfaceTrack big;
        for (int i = 0; i < 40; ++i) big.append(0.1 * i, 0.49);
        CHECK_THROWS_AS(flux_law_residual(big, u, mu, p, 0.5, 0.5),
                        InputError);
    }
}

TEST_CASE("time series validates monotone time", "[diagnostics]") {
    TimeSeries ts;
    ts.append({0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0});
    ts.append({1, 0.1, 0.9, 0.9, 0.0, 0.0, 0.0});
    CHECK_THROWS_AS(ts.append({2, 0.1, 0.8, 0.8, 0.0, 0.0, 0.0}), InputError);
}
