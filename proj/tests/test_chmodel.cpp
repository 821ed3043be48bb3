#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "tfch/chmodel.hpp"
#include "tfch/oracle.hpp"
#include "tfch/prng.hpp"

using namespace tfch;

namespace {
ModelParams params(double eps, MobilityKind kind = MobilityKind::Constant,
                   double alpha = 1.0) {
    return ModelParams(eps, kind, 2.0, FractionalOrder(alpha));
}
}  // namespace

TEST_CASE("double well values", "[chmodel]") {
    CHECK(potential(1.0) == 0.0);
    CHECK(potential(-1.0) == 0.0);
    CHECK(potential(0.0) == 0.25);
    CHECK(potential_deriv(1.0) == 0.0);
    CHECK(potential_deriv(-1.0) == 0.0);
    CHECK(potential_deriv(0.0) == 0.0);
    CHECK(potential_deriv(2.0) == 6.0);
}

TEST_CASE("mobility laws", "[chmodel]") {
    Grid2D g(16, 16, 1.0, 1.0);
    Field u(g, -0.3);

    Field mc = mobility(u, MobilityKind::Constant);
    for (double v : mc.v) REQUIRE(v == 1.0);

    Field u1(g, -1.0);
    Field m1 = mobility(u1, MobilityKind::OneSided);
    for (double v : m1.v) REQUIRE(v == 0.0);

    // overshoot clamps to zero rather than going negative
    Field u2(g, -1.2);
    Field m2 = mobility(u2, MobilityKind::OneSided);
    for (double v : m2.v) REQUIRE(v == 0.0);

    Field u3 = u;
    SplitMix64 rng(3);
    for (double& v : u3.v) v = 2.4 * rng.next_double() - 1.3;
    Field m3 = mobility(u3, MobilityKind::OneSided);
    for (std::size_t i = 0; i < u3.v.size(); ++i) {
        REQUIRE(m3.v[i] >= 0.0);
        if (1.0 + u3.v[i] >= 0.0) REQUIRE(m3.v[i] == 1.0 + u3.v[i]);
    }
}

TEST_CASE("chemical potential of uniform phases", "[chmodel]") {
    Grid2D g(32, 32, 1.0, 1.0);
    Spectral sp(g);
    auto p = params(0.05);

    Field u1(g, 1.0);
    CHECK(field_max_abs(chemical_potential(sp, u1, p)) < 1e-12);
    Field u0(g, 0.0);
    CHECK(field_max_abs(chemical_potential(sp, u0, p)) < 1e-12);
}

TEST_CASE("chemical potential vanishes on the equilibrium stripe",
          "[chmodel]") {
    // two well separated kinks on a periodic 1D domain; mu is zero up to
    // kink-kink interaction (exponentially small) and spectral resolution
    Grid2D g(512, 1, 1.0, 1.0);
    Spectral sp(g);
    const double eps = 0.012;
    auto p = params(eps);
    Field u(g);
    const double x1 = 0.25, x2 = 0.75;
    const double c = std::sqrt(2.0) * eps;
    for (std::size_t i = 0; i < g.nx; ++i) {
        const double x = double(i) * g.dx();
        u.v[i] = std::tanh((x - x1) / c) + std::tanh((x2 - x) / c) - 1.0;
    }
    Field mu = chemical_potential(sp, u, p);
    CHECK(field_max_abs(mu) < 1e-6);
}

TEST_CASE("energy closed forms", "[chmodel]") {
    Grid2D g(64, 32, 2.0, 1.5);
    Spectral sp(g);
    auto p = params(0.05);

    Field plus(g, 1.0), minus(g, -1.0), zero(g, 0.0);
    CHECK(energy(sp, plus, p).total == 0.0);
    CHECK(energy(sp, minus, p).total == 0.0);
    CHECK(std::abs(energy(sp, zero, p).total - 0.25 * g.area()) < 1e-12);
    CHECK(std::abs(energy(sp, zero, p).per_area - 0.25) < 1e-13);
}

TEST_CASE("stripe energy approaches two line tensions", "[chmodel]") {
    const double eps = 0.02;
    Grid2D g(512, 8, 1.0, 1.0);
    Spectral sp(g);
    auto p = params(eps);
    Field u(g);
    const double c = std::sqrt(2.0) * eps;
    for (std::size_t j = 0; j < g.ny; ++j)
        for (std::size_t i = 0; i < g.nx; ++i) {
            const double x = double(i) * g.dx();
            u.at(i, j) =
                std::tanh((x - 0.25) / c) + std::tanh((0.75 - x) / c) - 1.0;
        }
    const double sigma = oracle::ProfileConstants::sigma_int(eps);
    const EnergyValue e = energy(sp, u, p);
    CHECK(std::abs(e.total - 2.0 * sigma * g.ly) < 1e-6);
}

TEST_CASE("chemical potential is odd, energy is even and translation "
          "invariant",
          "[chmodel]") {
    Grid2D g(32, 32, 1.0, 1.0);
    Spectral sp(g);
    auto p = params(0.1);
    SplitMix64 rng(21);
    Field u(g);
    for (double& v : u.v) v = 2.0 * rng.next_double() - 1.0;

    Field nu = u;
    for (double& v : nu.v) v = -v;
    Field a = chemical_potential(sp, u, p);
    Field b = chemical_potential(sp, nu, p);
    for (double& v : b.v) v = -v;
    CHECK(max_abs_diff(a, b) < 1e-13);

    const double e0 = energy(sp, u, p).total;
    CHECK(std::abs(energy(sp, nu, p).total - e0) < 1e-12 * std::max(1.0, e0));

    // periodic shift by (5, 3) cells
    Field sh(g);
    for (std::size_t j = 0; j < g.ny; ++j)
        for (std::size_t i = 0; i < g.nx; ++i)
            sh.at(i, j) = u.at((i + 5) % g.nx, (j + 3) % g.ny);
    CHECK(std::abs(energy(sp, sh, p).total - e0) < 1e-11 * std::max(1.0, e0));
}

TEST_CASE("resolution guard", "[chmodel]") {
    Grid2D g(64, 64, 1.0, 1.0);  // dx = 1/64
    CHECK(params(0.05).resolves(g));
    CHECK_FALSE(params(0.02).resolves(g));
    CHECK_THROWS_AS(params(-1.0), InputError);
}
