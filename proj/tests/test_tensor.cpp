#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "circq/error.hpp"
#include "circq/tensor.hpp"
#include "oracles.hpp"

using namespace circq;

namespace {

const char* kFixtures[] = {"const", "flat-par", "curved-par", "nonpar"};

double max_dg(const MetricAtPoint& m) {
    double s = 0;
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) s = std::max(s, std::abs(m.dg(k, i, j)));
    return s;
}

Vector4 random_q_basis_vector(std::mt19937_64& rng) {
    Vector4 x;
    do x = uniform_vector(rng);
    while (!induces_q_basis(x).induces);
    return x;
}

}  // namespace

TEST(Christoffel, ConstantMetricIsFlat) {
    const auto spec = oracle::load_fixture("const");
    const auto ch = christoffel_at(spec, Point{{0.2, -0.3, 0.5, 0.1}});
    EXPECT_EQ(max_abs(ch.gamma), 0.0);
    EXPECT_EQ(max_abs(ch.dgamma), 0.0);
    const auto r = riemann_at(spec, Point{});
    EXPECT_EQ(r.max_abs(), 0.0);
    EXPECT_EQ(max_abs(nabla_q(ch)), 0.0);
}

TEST(Christoffel, FlatParAtOrigin) {
    const auto spec = oracle::load_fixture("flat-par");
    const auto ch = christoffel_at(spec, Point{});
    for (const auto& s : ch.gamma)
        for (const auto& i : s)
            for (double v : i) EXPECT_LE(std::abs(v - 1.0 / 16), 1e-12);
    const Tensor3 fd = oracle::fd_christoffel(spec, Point{});
    for (const auto& s : fd)
        for (const auto& i : s)
            for (double v : i) EXPECT_NEAR(v, 1.0 / 16, 1e-8);
}

TEST(Christoffel, FlatParUniformEverywhere) {
    const auto spec = oracle::load_fixture("flat-par");
    std::mt19937_64 rng(31);
    for (int n = 0; n < 100; ++n) {
        const Point p = oracle::random_point_in(spec.domain, rng);
        const auto m = metric_at(spec, p);
        const double expected = 1.0 / (2 * (m.a() + 2 * m.b() + m.c()));
        const auto ch = christoffel(m);
        for (const auto& s : ch.gamma)
            for (const auto& i : s)
                for (double v : i) EXPECT_LE(std::abs(v - expected), 1e-12);
    }
}

TEST(Christoffel, NonParMatchesFiniteDifferences) {
    const auto spec = oracle::load_fixture("nonpar");
    const Point p{{1, 0, 0, 0}};
    const auto ch = christoffel_at(spec, p);
    const auto fd = oracle::fd_christoffel(spec, p);
    for (int s = 0; s < 4; ++s)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) EXPECT_NEAR(ch.gamma[s][i][j], fd[s][i][j], 1e-6);
    EXPECT_GT(max_abs(ch.gamma), 1e-2);
}

TEST(Christoffel, AllFixturesMatchFiniteDifferences) {
    std::mt19937_64 rng(32);
    for (const char* name : kFixtures) {
        const auto spec = oracle::load_fixture(name);
        for (int n = 0; n < 20; ++n) {
            const Point p = oracle::random_point_in(spec.domain, rng, 0.05);
            const auto ch = christoffel_at(spec, p);
            const auto fd = oracle::fd_christoffel(spec, p);
            const auto fdd = oracle::fd_dgamma(spec, p);
            const double scale = std::max(1.0, max_abs(ch.dgamma));
            for (int l = 0; l < 4; ++l)
                for (int s = 0; s < 4; ++s)
                    for (int i = 0; i < 4; ++i)
                        for (int j = 0; j < 4; ++j) {
                            EXPECT_NEAR(ch.dgamma[l][s][i][j], fdd[l][s][i][j], 1e-5 * scale) << name;
                            if (l == 0) EXPECT_NEAR(ch.gamma[s][i][j], fd[s][i][j], 1e-6) << name;
                        }
        }
    }
}

TEST(Christoffel, CompatibilityAndTorsion) {
    std::mt19937_64 rng(33);
    for (const char* name : kFixtures) {
        const auto spec = oracle::load_fixture(name);
        for (int n = 0; n < 100; ++n) {
            const Point p = oracle::random_point_in(spec.domain, rng);
            const auto m = metric_at(spec, p);
            const auto ch = christoffel(m);
            EXPECT_LE(max_abs(nabla_g(m, ch)), 1e-9 * std::max(1.0, max_dg(m))) << name;
            const Tensor3 raw = christoffel_unsymmetrized(m);
            for (int s = 0; s < 4; ++s)
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j) {
                        EXPECT_EQ(ch.gamma[s][i][j], ch.gamma[s][j][i]);
                        EXPECT_LE(std::abs(raw[s][i][j] - raw[s][j][i]), 1e-12) << name;
                        EXPECT_LE(std::abs(raw[s][i][j] - ch.gamma[s][i][j]), 1e-12) << name;
                    }
        }
    }
}

TEST(Riemann, SymmetriesOnAllFixtures) {
    std::mt19937_64 rng(34);
    for (const char* name : kFixtures) {
        const auto spec = oracle::load_fixture(name);
        for (int n = 0; n < 100; ++n) {
            const Point p = oracle::random_point_in(spec.domain, rng);
            const auto r = riemann_at(spec, p);
            const double tol = 1e-9 * std::max(r.max_abs(), r.term_scale);
            const auto& R = r.r_low;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    for (int k = 0; k < 4; ++k)
                        for (int l = 0; l < 4; ++l) {
                            EXPECT_LE(std::abs(R[i][j][k][l] + R[j][i][k][l]), tol) << name;
                            EXPECT_LE(std::abs(R[i][j][k][l] + R[i][j][l][k]), tol) << name;
                            EXPECT_LE(std::abs(R[i][j][k][l] - R[k][l][i][j]), tol) << name;
                            EXPECT_LE(std::abs(R[i][j][k][l] + R[j][k][i][l] + R[k][i][j][l]), tol) << name;
                        }
        }
    }
}

TEST(Riemann, FlatFixtures) {
    std::mt19937_64 rng(35);
    for (const char* name : {"const", "flat-par"}) {
        const auto spec = oracle::load_fixture(name);
        for (int n = 0; n < 100; ++n)
            EXPECT_LE(riemann_at(spec, oracle::random_point_in(spec.domain, rng)).max_abs(), 1e-9) << name;
    }
}

TEST(Riemann, CurvedParAtOriginAnchor) {
    const auto r = riemann_at(oracle::load_fixture("curved-par"), Point{});
    EXPECT_GT(r.max_abs(), 1e-4);
    // At the origin every Christoffel symbol vanishes, so R_ijkl is the
    // second-derivative combination of g: R_0101 = (A_11 + A_22)/2 = -0.2.
    EXPECT_NEAR(r.r_low[0][1][0][1], -0.2, 1e-15);
    EXPECT_NEAR(r.r_low[0][1][0][3], 0.2, 1e-15);
    EXPECT_NEAR(r.max_abs(), 0.2, 1e-15);
}

TEST(Riemann, MatchesFiniteDifferenceCurvature) {
    std::mt19937_64 rng(36);
    for (const char* name : {"curved-par", "nonpar"}) {
        const auto spec = oracle::load_fixture(name);
        for (int n = 0; n < 5; ++n) {
            const Point p = oracle::random_point_in(spec.domain, rng, 0.05);
            const auto r = riemann_at(spec, p);
            const Tensor4 fd = oracle::fd_riemann_low(spec, p);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    for (int k = 0; k < 4; ++k)
                        for (int l = 0; l < 4; ++l)
                            EXPECT_NEAR(r.r_low[i][j][k][l], fd[i][j][k][l], 1e-5) << name;
        }
    }
}

TEST(Riemann, ContractionMatchesComponents) {
    const auto r = riemann_at(oracle::load_fixture("nonpar"), Point{{0.4, 0.1, -0.3, 0.2}});
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                    EXPECT_EQ(riemann_contract(r, Vector4::basis(std::size_t(i)), Vector4::basis(std::size_t(j)),
                                               Vector4::basis(std::size_t(k)), Vector4::basis(std::size_t(l))),
                              r.r_low[i][j][k][l]);
}

TEST(Sectional, FlatFixturesGiveZero) {
    std::mt19937_64 rng(37);
    for (const char* name : {"const", "flat-par"}) {
        const auto spec = oracle::load_fixture(name);
        const Point p = oracle::random_point_in(spec.domain, rng);
        const auto geo = geometry_at(spec, p);
        for (int n = 0; n < 20; ++n) {
            const Vector4 x = uniform_vector(rng), y = uniform_vector(rng);
            EXPECT_LE(std::abs(sectional_curvature(geo.riemann, geo.metric, x, y)), 1e-9) << name;
        }
    }
}

TEST(Sectional, CurvedParOppositeVectorsVanish) {
    const auto geo = geometry_at(oracle::load_fixture("curved-par"), Point{});
    std::mt19937_64 rng(38);
    for (int n = 0; n < 50; ++n) {
        const Vector4 x = random_q_basis_vector(rng);
        EXPECT_LE(std::abs(sectional_curvature(geo.riemann, geo.metric, x, q_apply(x, 2))), 1e-9);
        EXPECT_LE(std::abs(sectional_curvature(geo.riemann, geo.metric, q_apply(x, 1), q_apply(x, 3))), 1e-9);
    }
}

TEST(Sectional, SymmetricInItsArguments) {
    const auto geo = geometry_at(oracle::load_fixture("nonpar"), Point{{0.5, -0.5, 0.2, 0.9}});
    std::mt19937_64 rng(39);
    for (int n = 0; n < 100; ++n) {
        const Vector4 x = uniform_vector(rng), y = uniform_vector(rng);
        const double a = sectional_curvature(geo.riemann, geo.metric, x, y);
        const double b = sectional_curvature(geo.riemann, geo.metric, y, x);
        EXPECT_LE(std::abs(a - b), 1e-12 * std::max(1e-300, std::abs(a)));
    }
}

TEST(Sectional, DegeneratePlane) {
    const auto geo = geometry_at(oracle::load_fixture("curved-par"), Point{});
    const Vector4 x{{1, 2, 3, 4}};
    EXPECT_THROW(sectional_curvature(geo.riemann, geo.metric, x, 2.0 * x), InvalidArgument);
    EXPECT_THROW(sectional_curvature(geo.riemann, geo.metric, x, Vector4{}), InvalidArgument);
}

TEST(NablaQ, CurvedParIsParallel) {
    const auto spec = oracle::load_fixture("curved-par");
    std::mt19937_64 rng(40);
    for (int n = 0; n < 100; ++n) {
        const auto ch = christoffel_at(spec, oracle::random_point_in(spec.domain, rng));
        EXPECT_LE(max_abs(nabla_q(ch)), 1e-9);
    }
}

TEST(NablaQ, NonParIsNotParallel) {
    const auto ch = christoffel_at(oracle::load_fixture("nonpar"), Point{{1, 0, 0, 0}});
    EXPECT_GT(max_abs(nabla_q(ch)), 1e-2);
}

TEST(NablaQ, MatchesDefinitionFromFiniteDifferenceConnection) {
    const auto spec = oracle::load_fixture("nonpar");
    const Point p{{0.7, 0.3, -0.2, 0.1}};
    const Tensor3 G = oracle::fd_christoffel(spec, p);
    const NablaQ nq = nabla_q(christoffel_at(spec, p));
    for (int i = 0; i < 4; ++i)
        for (int s = 0; s < 4; ++s)
            for (int j = 0; j < 4; ++j) {
                double v = 0;
                for (int k = 0; k < 4; ++k) v += G[s][i][k] * q_entry(k, j) - G[k][i][j] * q_entry(s, k);
                EXPECT_NEAR(nq[i][s][j], v, 1e-6);
            }
}
