// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "circq/cli.hpp"
#include "circq/error.hpp"
#include "circq/verify.hpp"
#include "oracles.hpp"

using namespace circq;
namespace fs = std::filesystem;

namespace {

const char* kFixtures[] = {"const", "flat-par", "curved-par", "nonpar"};

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

void require(Outcome& o, bool cond, const std::string& what) {
    if (!cond && o.pass) {
        o.pass = false;
        o.detail = what;
    }
}

Outcome criterion_1() {
    Outcome o;
    const auto inv = inverse_metric(4, 1, 2);
    require(o, inv.d == 64 && inv.abar == 22 && inv.bbar == -2 && inv.cbar == -10, "(4,1,2) closed form");
    std::mt19937_64 rng(101);
    double worst = 0;
    for (int n = 0; n < 1000; ++n) {
        const auto t = oracle::random_ordered_triple(rng);
        const Eigen::Matrix4d prod =
            oracle::circulant_matrix(t.a, t.b, t.c) * oracle::to_eigen(inverse_metric(t.a, t.b, t.c).matrix());
        worst = std::max(worst, (prod - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff());
    }
    require(o, worst <= 1e-12, "max |g g^-1 - I| = " + fmt(worst));
    if (o.pass) o.detail = "(D,Abar,Bbar,Cbar)=(64,22,-2,-10); max |g g^-1 - I| = " + fmt(worst) + " over 1000 triples";
    return o;
}

Outcome criterion_2() {
    Outcome o;
    require(o, admissibility(4, 1, 2).minors == std::array<double, 4>{4, 15, 44, 128}, "(4,1,2) minors");
    std::mt19937_64 rng(102);
    double worst = 0;
    for (int n = 0; n < 1000; ++n) {
        const auto t = oracle::random_ordered_triple(rng);
        const auto closed = admissibility(t.a, t.b, t.c).minors;
        const auto generic = oracle::leading_minors(oracle::circulant_matrix(t.a, t.b, t.c));
        for (std::size_t k = 0; k < 4; ++k)
            worst = std::max(worst, std::abs(closed[k] - generic[k]) / std::abs(generic[k]));
    }
    require(o, worst <= 1e-10, "max relative minor error " + fmt(worst));
    if (o.pass) o.detail = "(4,1,2) -> (4,15,44,128); max relative error " + fmt(worst) + " over 1000 triples";
    return o;
}

Outcome criterion_3() {
    Outcome o;
    std::mt19937_64 rng(103);
    double worst = 0;
    for (int n = 0; n < 20; ++n) {
        const auto t = oracle::random_ordered_triple(rng);
        const auto rep = verify::check_isometry(MetricAtPoint::constant(t.a, t.b, t.c), 1000, 1000 + std::uint64_t(n));
        worst = std::max(worst, rep.max_residual());
        require(o, rep.passed(), "isometry failed for a metric");
    }
    if (o.pass) o.detail = "max scaled residual " + fmt(worst) + " (20 metrics x 1000 pairs x q^1..q^3)";
    return o;
}

Outcome criterion_4() {
    Outcome o;
    require(o, induces_q_basis(Vector4{{1, 0, 1, 0}}).value == 0.0, "(1,0,1,0)");
    require(o, induces_q_basis(Vector4{{1, 2, 3, 4}}).value == -160.0, "(1,2,3,4)");
    std::mt19937_64 rng(104);
    double worst = 0, worst_negated = 0;
    for (int n = 0; n < 1000; ++n) {
        const Vector4 x = uniform_vector(rng);
        const double det = oracle::q_stack_det(x);
        const double v = induces_q_basis(x).value;
        worst = std::max(worst, std::abs(v - det) / std::abs(det));
        worst_negated = std::max(worst_negated, std::abs(v + det) / std::abs(det));
    }
    require(o, worst <= 1e-9,
            "value = det[x,qx,q2x,q3x] fails: max relative error " + fmt(worst) +
                "; the closed form equals -det within " + fmt(worst_negated) + " (det[1,2,3,4 stack] = " +
                fmt(oracle::q_stack_det(Vector4{{1, 2, 3, 4}})) + ")");
    if (o.pass) o.detail = "(1,0,1,0)->0, (1,2,3,4)->-160; max relative error vs det " + fmt(worst);
    return o;
}

Outcome criterion_5() {
    Outcome o;
    std::mt19937_64 rng(105);
    double worst = 0;
    for (const char* name : kFixtures) {
        const auto spec = oracle::load_fixture(name);
        for (int n = 0; n < 100; ++n) {
            const auto rep = verify::check_connection(geometry_at(spec, oracle::random_point_in(spec.domain, rng)), 1e-9);
            worst = std::max(worst, rep.max_residual());
            require(o, rep.passed(), std::string("connection residual on ") + name);
        }
    }
    const auto ch = christoffel_at(oracle::load_fixture("flat-par"), Point{});
    double flat = 0;
    for (const auto& s : ch.gamma)
        for (const auto& i : s)
            for (double v : i) flat = std::max(flat, std::abs(v - 1.0 / 16));
    require(o, flat <= 1e-12, "FLAT-PAR gamma residual " + fmt(flat));
    if (o.pass)
        o.detail = "compatibility/torsion max scaled " + fmt(worst) + "; FLAT-PAR origin |Gamma-1/16| " + fmt(flat);
    return o;
}

Outcome criterion_6() {
    Outcome o;
    std::mt19937_64 rng(106);
    double worst = 0, flat = 0;
    for (const char* name : kFixtures) {
        const auto spec = oracle::load_fixture(name);
        const bool is_flat = std::string(name) == "const" || std::string(name) == "flat-par";
        for (int n = 0; n < 100; ++n) {
            const auto r = riemann_at(spec, oracle::random_point_in(spec.domain, rng));
            const auto rep = verify::check_riemann_symmetries(r);
            worst = std::max(worst, rep.max_residual());
            require(o, rep.passed(), std::string("symmetries on ") + name);
            if (is_flat) flat = std::max(flat, r.max_abs());
        }
    }
    require(o, flat <= 1e-9, "flat fixture |R| " + fmt(flat));
    const double curved = riemann_at(oracle::load_fixture("curved-par"), Point{}).max_abs();
    require(o, curved > 1e-4, "CURVED-PAR |R| " + fmt(curved));
    if (o.pass)
        o.detail = "symmetry/Bianchi max scaled " + fmt(worst) + "; flat |R| " + fmt(flat) + "; CURVED-PAR origin |R| " +
                   fmt(curved);
    return o;
}

Outcome criterion_7() {
    Outcome o;
    double worst = 0;
    for (const char* name : {"curved-par", "flat-par"}) {
        const auto spec = oracle::load_fixture(name);
        const auto rep = verify::check_parallel_equivalence(spec, cli::grid_points(spec.domain, 3), 1e-9);
        require(o, rep.payload["both_hold"].get<int>() == 81, std::string("predicates on ") + name);
        worst = std::max({worst, rep.payload["max_gradient_residual_where_parallel"].get<double>(),
                          rep.payload["max_nabla_q_residual_where_parallel"].get<double>()});
    }
    const auto spec = oracle::load_fixture("nonpar");
    const auto rep = verify::check_parallel_equivalence(spec, cli::grid_points(spec.domain, 3), 1e-9);
    int x1_nonzero = 0;
    for (const auto& row : rep.payload["per_point"]) {
        if (row["point"][0].get<double>() == 0.0) continue;
        ++x1_nonzero;
        require(o, !row["gradient_condition_holds"].get<bool>() && !row["q_parallel"].get<bool>(),
                "NONPAR predicate holds at a point with x1 != 0");
    }
    const double abs_res =
        verify::check_parallel_condition(spec, Point{{1, 0, 0, 0}}).payload["absolute"]["A1-C3"].get<double>();
    require(o, std::abs(abs_res - 2.0) <= 1e-12, "NONPAR residual " + fmt(abs_res));
    if (o.pass)
        o.detail = "parallel grids max residual " + fmt(worst) + "; NONPAR both fail at " + std::to_string(x1_nonzero) +
                   " points with x1!=0; |A1-C3| at (1,0,0,0) = " + fmt(abs_res);
    return o;
}

Outcome criterion_8() {
    Outcome o;
    const auto spec = oracle::load_fixture("curved-par");
    std::mt19937_64 rng(108);
    std::vector<Point> points{Point{}};
    for (int n = 0; n < 4; ++n) points.push_back(oracle::random_point_in(spec.domain, rng));
    double ident = 0, adjacent = 0, opposite = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto geo = geometry_at(spec, points[i]);
        const auto id = verify::check_curvature_q_identity(geo.riemann);
        ident = std::max(ident, id.max_residual());
        require(o, id.passed(), "curvature identity");
        const auto sec = verify::check_sectional_relations_sampled(geo, 50, 800 + i);
        require(o, sec.status == verify::Status::Pass, "sectional relations");
        adjacent = std::max(adjacent, sec.residual("adjacent_spread"));
        opposite = std::max({opposite, sec.residual("mu(x,q2x)"), sec.residual("mu(qx,q3x)")});
    }
    if (o.pass)
        o.detail = "identity " + fmt(ident) + "; adjacent spread " + fmt(adjacent) + "; opposite mu " + fmt(opposite) +
                   " (5 points x 50 vectors)";
    return o;
}

Outcome criterion_9() {
    Outcome o;
    std::mt19937_64 rng(109);
    double worst = 0, worst_eq = 0;
    int solved = 0;
    for (int n = 0; n < 100; ++n) {
        const auto t = oracle::random_ordered_triple(rng);
        const auto m = MetricAtPoint::constant(t.a, t.b, t.c);
        std::mt19937_64 srng(9000 + std::uint64_t(n));
        Vector4 x;
        try {
            x = find_orthogonal_q_basis(m, srng);
        } catch (const SolverError& e) {
            require(o, false, e.what());
            continue;
        }
        ++solved;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                worst = std::max(worst, std::abs(inner(m, q_apply(x, i), q_apply(x, j))));
        std::vector<Vector4> tested{x};
        for (int k = 0; k < 5; ++k) {
            Vector4 y;
            do y = uniform_vector(rng);
            while (!induces_q_basis(y).induces);
            tested.push_back(y);
        }
        for (const Vector4& y : tested) {
            const auto c = q_basis_cosines(m, y);
            for (std::size_t k = 1; k < 4; ++k) worst_eq = std::max(worst_eq, std::abs(c[k] - c[0]));
            worst_eq = std::max(worst_eq, std::abs(c[5] - c[4]));
            try {
                const auto ang = basis_angles(m, y);
                require(o, 4 * ang.cos_phi - ang.cos_theta < 3, "4cos(phi)-cos(theta) >= 3");
            } catch (const std::logic_error& e) {
                require(o, false, e.what());
            }
        }
    }
    require(o, worst <= 1e-10, "max pairwise inner product " + fmt(worst));
    if (o.pass)
        o.detail = std::to_string(solved) + "/100 solved; max pairwise |g| " + fmt(worst) + "; angle equality spread " +
                   fmt(worst_eq);
    return o;
}

Outcome criterion_10() {
    Outcome o;
    const auto geo = geometry_at(oracle::load_fixture("curved-par"), Point{});
    const auto rep = verify::check_mu_law_sampled(geo, 100, 110);
    require(o, rep.status == verify::Status::Pass, "direct vs expansion " + fmt(rep.max_residual()));
    double rmin = INFINITY, rmax = -INFINITY;
    int logged = 0;
    for (const auto& s : rep.payload["per_sample"]) {
        if (std::abs(s["cos_theta"].get<double>()) < 1e-12 || s["direct_over_mu_law"].is_null()) continue;
        const double ratio = s["direct_over_mu_law"].get<double>();
        rmin = std::min(rmin, ratio);
        rmax = std::max(rmax, ratio);
        ++logged;
    }
    if (o.pass)
        o.detail = "direct vs (1-cos theta)^2 R(x,qx,x,qx): max scaled " + fmt(rep.max_residual()) +
                   " over 100 quadruples; mu-law prediction logged for " + std::to_string(logged) +
                   " cos theta != 0 cases, direct/mu-law ratio in [" + fmt(rmin) + ", " + fmt(rmax) + "] (no pass flag)";
    return o;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Outcome criterion_11() {
    Outcome o;
    const fs::path a = fs::temp_directory_path() / "circq_accept_a.json";
    const fs::path b = fs::temp_directory_path() / "circq_accept_b.json";
    auto run = [&](const fs::path& out) {
        const std::string cmd = std::string(CIRCQ_TOOL) + " verify " + oracle::fixture("curved-par.json") +
                                " --grid 2 --seed 77 --samples 10 --json " + out.string() + " > /dev/null";
        const int status = std::system(cmd.c_str());
        return status == -1 ? -1 : WEXITSTATUS(status);
    };
    const int ca = run(a), cb = run(b);
    const std::string ja = slurp(a), jb = slurp(b);
    require(o, ca == 0 && cb == 0, "exit codes " + std::to_string(ca) + "," + std::to_string(cb));
    require(o, !ja.empty() && ja == jb, "JSON differs between runs");
    if (o.pass) o.detail = "two verify runs (seed 77, 16 points) produced identical " + std::to_string(ja.size()) + "-byte JSON";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"closed-form inverse", criterion_1},
        {"leading principal minors", criterion_2},
        {"isometry of q", criterion_3},
        {"q-basis criterion", criterion_4},
        {"connection correctness", criterion_5},
        {"curvature sanity", criterion_6},
        {"parallelity equivalence", criterion_7},
        {"curvature identity chain", criterion_8},
        {"orthogonal q-basis existence", criterion_9},
        {"mu(phi) adjudication", criterion_10},
        {"determinism", criterion_11},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("criterion %2zu %s: %s -- %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, o.detail.c_str());
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
    return failed == 0 ? 0 : 1;
}
