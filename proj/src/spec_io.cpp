#include "circq/spec_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "circq/error.hpp"

namespace circq {

namespace {

std::array<double, 4> read_corner(const nlohmann::json& domain, const char* key) {
    if (!domain.contains(key) || !domain[key].is_array() || domain[key].size() != 4)
        throw InvalidArgument(std::string("domain.") + key + " must be an array of 4 numbers");
    std::array<double, 4> out{};
    for (std::size_t i = 0; i < 4; ++i) {
        const auto& v = domain[key][i];
        if (!v.is_number()) throw InvalidArgument(std::string("domain.") + key + " must hold numbers");
        out[i] = v.get<double>();
        if (!std::isfinite(out[i])) throw InvalidArgument("domain bounds must be finite");
    }
    return out;
}

ScalarField read_field(const nlohmann::json& doc, const char* key) {
    if (!doc.contains(key) || !doc[key].is_string())
        throw InvalidArgument(std::string("field '") + key + "' must be an expression string");
    return expr::parse(doc[key].get<std::string>());
}

}  // namespace

ManifoldSpec spec_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw InvalidArgument("manifold spec must be a JSON object");
    if (!doc.contains("name") || !doc["name"].is_string()) throw InvalidArgument("'name' must be a string");
    if (!doc.contains("domain") || !doc["domain"].is_object()) throw InvalidArgument("'domain' must be an object");

    Box box{read_corner(doc["domain"], "min"), read_corner(doc["domain"], "max")};
    for (std::size_t i = 0; i < 4; ++i)
        if (box.min[i] > box.max[i]) throw InvalidArgument("domain.min exceeds domain.max");

    return ManifoldSpec{doc["name"].get<std::string>(), read_field(doc, "A"), read_field(doc, "B"),
                        read_field(doc, "C"), box};
}

ManifoldSpec spec_from_string(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidArgument(std::string("malformed spec JSON: ") + e.what());
    }
    return spec_from_json(doc);
}

ManifoldSpec load_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot read spec file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return spec_from_string(buf.str());
}

nlohmann::ordered_json spec_to_json(const ManifoldSpec& spec) {
    nlohmann::ordered_json j;
    j["name"] = spec.name;
    j["A"] = spec.A.source();
    j["B"] = spec.B.source();
    j["C"] = spec.C.source();
    j["domain"]["min"] = spec.domain.min;
    j["domain"]["max"] = spec.domain.max;
    return j;
}

}  // namespace circq
