#include "circq/cli.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "circq/error.hpp"
#include "circq/spec_io.hpp"
#include "circq/tensor.hpp"
#include "circq/verify.hpp"

namespace circq::cli {

using Json = nlohmann::ordered_json;

namespace {

double parse_real(std::string_view s, std::string_view what) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (!s.empty() && *first == '+') ++first;
    auto res = std::from_chars(first, last, v);
    if (s.empty() || res.ec != std::errc{} || res.ptr != last || !std::isfinite(v))
        throw InvalidArgument("malformed " + std::string(what) + " '" + std::string(s) + "'");
    return v;
}

}  // namespace

Point parse_point(std::string_view text) {
    Point p;
    std::size_t start = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        const std::size_t comma = text.find(',', start);
        const bool last = i == 3;
        if (last != (comma == std::string_view::npos))
            throw InvalidArgument("a point needs exactly 4 comma-separated coordinates: '" + std::string(text) + "'");
        const std::string_view part = text.substr(start, last ? std::string_view::npos : comma - start);
        p[i] = parse_real(part, "coordinate");
        start = comma + 1;
    }
    return p;
}

std::pair<std::string, double> parse_tolerance(std::string_view text) {
    const std::size_t eq = text.find('=');
    if (eq == std::string_view::npos || eq == 0) throw InvalidArgument("tolerance must be name=value");
    return {std::string(text.substr(0, eq)), parse_real(text.substr(eq + 1), "tolerance")};
}

std::vector<Point> grid_points(const Box& box, int n) {
    if (n < 1) throw InvalidArgument("grid resolution must be >= 1");
    auto coord = [&](std::size_t axis, int k) {
        if (n == 1) return 0.5 * (box.min[axis] + box.max[axis]);
        if (k == n - 1) return box.max[axis];
        return box.min[axis] + (box.max[axis] - box.min[axis]) * k / (n - 1);
    };
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(n) * n * n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) out.push_back(Point{{coord(0, a), coord(1, b), coord(2, c), coord(3, d)}});
    return out;
}

namespace {

Json matrix_json(const Matrix4& m) { return Json(m); }

std::vector<Point> resolve_points(const RunConfig& cfg, const ManifoldSpec& spec, bool grid_default) {
    std::vector<Point> pts = cfg.points;
    if (cfg.grid) {
        const auto g = grid_points(spec.domain, *cfg.grid);
        pts.insert(pts.end(), g.begin(), g.end());
    }
    if (pts.empty()) {
        if (!grid_default) throw InvalidArgument("command '" + cfg.command + "' needs --point or --grid");
        pts = grid_points(spec.domain, 3);
    }
    return pts;
}

Point single_point(const RunConfig& cfg) {
    if (cfg.points.size() != 1 || cfg.grid)
        throw InvalidArgument("command '" + cfg.command + "' needs exactly one point");
    return cfg.points.front();
}

Json header(const RunConfig& cfg, const ManifoldSpec& spec) {
    Json j;
    j["spec"] = spec.name;
    j["command"] = cfg.command;
    return j;
}

RunResult run_validate(const RunConfig& cfg, const ManifoldSpec& spec) {
    Json j = header(cfg, spec);
    Json checks = Json::array();
    bool ok = true;
    for (const Point& p : resolve_points(cfg, spec, true)) {
        const auto rep = verify::check_admissibility(spec, p);
        ok = ok && rep.passed();
        checks.push_back(verify::to_json(rep));
    }
    j["admissible"] = ok;
    j["checks"] = std::move(checks);
    return {ok ? kAllPassed : kInadmissible, std::move(j), {}};
}

RunResult run_metric(const RunConfig& cfg, const ManifoldSpec& spec) {
    const Point p = single_point(cfg);
    const MetricAtPoint m = metric_at(spec, p);
    const InverseMetricAtPoint inv = inverse_metric(m);
    const Admissibility adm = admissibility(m.a(), m.b(), m.c());
    Json j = header(cfg, spec);
    j["point"] = p.x;
    j["A"] = m.a();
    j["B"] = m.b();
    j["C"] = m.c();
    j["minors"] = adm.minors;
    j["g"] = matrix_json(m.matrix());
    j["inverse"]["Abar"] = inv.abar;
    j["inverse"]["Bbar"] = inv.bbar;
    j["inverse"]["Cbar"] = inv.cbar;
    j["inverse"]["D"] = inv.d;
    j["inverse"]["g_inv"] = matrix_json(inv.matrix());
    j["grad_A"] = m.jet(Slot::A).grad;
    j["grad_B"] = m.jet(Slot::B).grad;
    j["grad_C"] = m.jet(Slot::C).grad;
    return {kAllPassed, std::move(j), {}};
}

RunResult run_christoffel(const RunConfig& cfg, const ManifoldSpec& spec) {
    const Point p = single_point(cfg);
    const ChristoffelAtPoint ch = christoffel_at(spec, p);
    Json j = header(cfg, spec);
    j["point"] = p.x;
    j["layout"] = "gamma[s][i][j] = Gamma^s_ij; dgamma[l][s][i][j] = d_l Gamma^s_ij";
    j["gamma"] = ch.gamma;
    j["dgamma"] = ch.dgamma;
    j["nabla_q"] = nabla_q(ch);
    return {kAllPassed, std::move(j), {}};
}

RunResult run_curvature(const RunConfig& cfg, const ManifoldSpec& spec) {
    const Point p = single_point(cfg);
    const RiemannAtPoint r = riemann_at(spec, p);
    Json j = header(cfg, spec);
    j["point"] = p.x;
    j["convention"] = kCurvatureConvention;
    j["max_abs_R"] = r.max_abs();
    j["R_low"] = r.r_low;
    j["R_mixed"] = r.r_mixed;
    return {kAllPassed, std::move(j), {}};
}

RunResult run_basis(const RunConfig& cfg, const ManifoldSpec& spec) {
    const Point p = single_point(cfg);
    const MetricAtPoint m = metric_at(spec, p);
    auto rep = verify::check_orthogonal_q_basis(m, cfg.seed);
    rep.point = p;
    Json j = header(cfg, spec);
    j["checks"] = Json::array({verify::to_json(rep)});
    return {rep.passed() ? kAllPassed : kCheckFailed, std::move(j), {}};
}

RunResult run_verify(const RunConfig& cfg, const ManifoldSpec& spec, bool scan) {
    verify::SuiteOptions opts;
    opts.checks = cfg.checks;
    opts.seed = cfg.seed;
    opts.samples = cfg.samples;
    opts.tolerance_overrides = cfg.tolerances;
    if (scan && opts.checks.empty()) throw InvalidArgument("scan needs --check");
    const auto suite = verify::run_suite(spec, resolve_points(cfg, spec, false), opts);
    Json j = header(cfg, spec);
    const Json body = verify::to_json(suite);
    for (const auto& [k, v] : body.items())
        if (k != "spec") j[k] = v;
    j["all_passed"] = suite.all_passed();
    return {suite.all_passed() ? kAllPassed : kCheckFailed, std::move(j), {}};
}

void render(const Json& v, const std::string& key, int depth, std::ostringstream& os);

bool is_flat_numbers(const Json& v) {
    if (!v.is_array()) return false;
    for (const auto& e : v)
        if (!e.is_number() && !e.is_null()) return false;
    return true;
}

void render(const Json& v, const std::string& key, int depth, std::ostringstream& os) {
    const std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
    if (v.is_object()) {
        if (!key.empty()) os << indent << key << ":\n";
        for (const auto& [k, e] : v.items()) render(e, k, key.empty() ? depth : depth + 1, os);
    } else if (v.is_array() && !is_flat_numbers(v)) {
        os << indent << key << ":\n";
        std::size_t idx = 0;
        for (const auto& e : v) render(e, "[" + std::to_string(idx++) + "]", depth + 1, os);
    } else {
        os << indent << key << ": " << v.dump() << "\n";
    }
}

Json error_report(const std::string& kind, const std::string& message, int code) {
    Json j;
    j["error"]["kind"] = kind;
    j["error"]["message"] = message;
    j["error"]["exit_code"] = code;
    return j;
}

}  // namespace

std::string render_text(const Json& report) {
    std::ostringstream os;
    render(report, "", 0, os);
    return os.str();
}

RunResult run(const RunConfig& cfg) {
    RunResult result;
    try {
        const ManifoldSpec spec = load_spec(cfg.spec_path);
        if (cfg.command == "validate") result = run_validate(cfg, spec);
        else if (cfg.command == "metric") result = run_metric(cfg, spec);
        else if (cfg.command == "christoffel") result = run_christoffel(cfg, spec);
        else if (cfg.command == "curvature") result = run_curvature(cfg, spec);
        else if (cfg.command == "basis") result = run_basis(cfg, spec);
        else if (cfg.command == "verify") result = run_verify(cfg, spec, false);
        else if (cfg.command == "scan") result = run_verify(cfg, spec, true);
        else throw InvalidArgument("unknown command '" + cfg.command + "'");
    } catch (const ParseError& e) {
        result = {kUsageError, error_report("parse", e.what(), kUsageError), {}};
    } catch (const InvalidArgument& e) {
        result = {kUsageError, error_report("usage", e.what(), kUsageError), {}};
    } catch (const AdmissibilityError& e) {
        result = {kInadmissible, error_report("inadmissible", e.what(), kInadmissible), {}};
    } catch (const DomainError& e) {
        result = {kInadmissible, error_report("domain", e.what(), kInadmissible), {}};
    } catch (const SingularityError& e) {
        result = {kInadmissible, error_report("singular", e.what(), kInadmissible), {}};
    } catch (const SolverError& e) {
        result = {kCheckFailed, error_report("solver", e.what(), kCheckFailed), {}};
    }
    result.text = render_text(result.report);
    return result;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Circulant Riemannian 4-manifolds: curvature and structure checks"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string spec_path;
    std::vector<std::string> point_texts;
    std::vector<std::string> tol_texts;
    std::string checks_text;
    std::string json_path;
    int grid = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("spec", spec_path, "Manifold spec JSON file")->required();
        sub->add_option("--json", json_path, "Write the JSON report to this path");
        sub->add_option("--seed", cfg.seed, "Seed for sampled vectors and solver starts");
    };
    auto add_point = [&](CLI::App* sub) {
        sub->add_option("point,--point", point_texts, "Point as x1,x2,x3,x4");
    };

    CLI::App* validate = app.add_subcommand("validate", "Check 0 < B < C < A over a grid");
    add_common(validate);
    validate->add_option("--point", point_texts, "Point as x1,x2,x3,x4");
    validate->add_option("--grid", grid, "Samples per axis (default 3)")->check(CLI::PositiveNumber);

    for (const char* name : {"metric", "christoffel", "curvature", "basis"}) {
        CLI::App* sub = app.add_subcommand(name, std::string("Print the ") + name + " at a point");
        add_common(sub);
        add_point(sub);
    }

    CLI::App* verify_cmd = app.add_subcommand("verify", "Run the verification suite");
    add_common(verify_cmd);
    verify_cmd->add_option("--point", point_texts, "Point as x1,x2,x3,x4 (repeatable)");
    verify_cmd->add_option("--grid", grid, "Samples per axis")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--checks", checks_text, "Comma-separated check names");
    verify_cmd->add_option("--samples", cfg.samples, "Random vectors per sampled check")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--tol", tol_texts, "Tolerance override name=value (repeatable)");

    CLI::App* scan = app.add_subcommand("scan", "Run selected checks over a grid");
    add_common(scan);
    scan->add_option("--grid", grid, "Samples per axis")->required()->check(CLI::PositiveNumber);
    scan->add_option("--check", checks_text, "Comma-separated check names")->required();
    scan->add_option("--samples", cfg.samples, "Random vectors per sampled check")->check(CLI::PositiveNumber);
    scan->add_option("--tol", tol_texts, "Tolerance override name=value (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kAllPassed;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsageError;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    cfg.spec_path = spec_path;
    if (!json_path.empty()) cfg.json_path = json_path;
    if (grid > 0) cfg.grid = grid;

    RunResult result;
    try {
        for (const auto& t : point_texts) cfg.points.push_back(parse_point(t));
        for (const auto& t : tol_texts) cfg.tolerances.insert(parse_tolerance(t));
        std::size_t start = 0;
        while (!checks_text.empty() && start <= checks_text.size()) {
            const std::size_t comma = checks_text.find(',', start);
            cfg.checks.push_back(checks_text.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        result = run(cfg);
    } catch (const InvalidArgument& e) {
        result.exit_code = kUsageError;
        result.report = error_report("usage", e.what(), kUsageError);
        result.text = render_text(result.report);
    }

    (result.exit_code == kUsageError || result.report.contains("error") ? err : out) << result.text;
    if (cfg.json_path) {
        std::ofstream f(*cfg.json_path, std::ios::binary);
        if (!f) {
            err << "cannot write " << cfg.json_path->string() << "\n";
            return kUsageError;
        }
        f << result.report.dump(2) << "\n";
    }
    return result.exit_code;
}

}  // namespace circq::cli
