#include "lcentropy/density_io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace lcentropy {

namespace {

double get_number(const nlohmann::json& obj, const char* field, const char* where) {
    if (!obj.contains(field))
        throw SpecError(std::string(where) + ": missing field '" + field + "'");
    const auto& v = obj.at(field);
    if (!v.is_number())
        throw SpecError(std::string(where) + ": field '" + field + "' must be a number");
    return v.get<double>();
}

const nlohmann::json& get_array(const nlohmann::json& obj, const char* field,
                                const char* where) {
    if (!obj.contains(field))
        throw SpecError(std::string(where) + ": missing field '" + field + "'");
    const auto& v = obj.at(field);
    if (!v.is_array() || v.empty())
        throw SpecError(std::string(where) + ": field '" + field + "' must be a non-empty array");
    return v;
}

}  // namespace

Density parse_density_spec(const nlohmann::json& spec) {
    if (!spec.is_object() || !spec.contains("type") || !spec.at("type").is_string())
        throw SpecError("density spec: missing string field 'type'");
    const std::string type = spec.at("type").get<std::string>();
    try {
        if (type == "piecewise_exp_affine") {
            std::vector<ExpAffineSegment> segs;
            for (const auto& s : get_array(spec, "segments", "piecewise_exp_affine")) {
                segs.push_back({{get_number(s, "lo", "segment"), get_number(s, "hi", "segment")},
                                get_number(s, "p", "segment"),
                                get_number(s, "q", "segment")});
            }
            return PiecewiseExpAffineDensity(std::move(segs));
        }
        if (type == "step") {
            std::vector<Interval> iv;
            std::vector<double> w;
            for (const auto& p : get_array(spec, "pieces", "step")) {
                iv.push_back({get_number(p, "lo", "piece"), get_number(p, "hi", "piece")});
                w.push_back(get_number(p, "weight", "piece"));
            }
            return StepDensity(std::move(iv), std::move(w));
        }
        if (type == "grid") {
            std::vector<double> values;
            for (const auto& v : get_array(spec, "values", "grid")) {
                if (!v.is_number()) throw SpecError("grid: values must be numbers");
                values.push_back(v.get<double>());
            }
            return GridDensity(get_number(spec, "origin", "grid"),
                               get_number(spec, "step", "grid"), std::move(values));
        }
    } catch (const std::invalid_argument& e) {
        throw SpecError(std::string(type) + ": " + e.what());
    }
    throw SpecError("density spec: unknown type '" + type + "'");
}

Density load_density(const std::string& path) {
    nlohmann::json j;
    try {
        if (path == "-") {
            j = nlohmann::json::parse(std::cin);
        } else {
            std::ifstream in(path);
            if (!in) throw SpecError("cannot open '" + path + "'");
            j = nlohmann::json::parse(in);
        }
    } catch (const nlohmann::json::parse_error& e) {
        throw SpecError(std::string("invalid JSON: ") + e.what());
    }
    return parse_density_spec(j);
}

nlohmann::json to_json(const Density& d) {
    nlohmann::json j;
    if (const auto* p = std::get_if<PiecewiseExpAffineDensity>(&d)) {
        j["type"] = "piecewise_exp_affine";
        auto segs = nlohmann::json::array();
        for (const auto& s : p->segments())
            segs.push_back({{"lo", s.interval.lo},
                            {"hi", s.interval.hi},
                            {"p", s.slope},
                            {"q", s.offset}});
        j["segments"] = std::move(segs);
    } else if (const auto* p = std::get_if<StepDensity>(&d)) {
        j["type"] = "step";
        auto pieces = nlohmann::json::array();
        for (std::size_t k = 0; k < p->intervals().size(); ++k)
            pieces.push_back({{"lo", p->intervals()[k].lo},
                              {"hi", p->intervals()[k].hi},
                              {"weight", p->weights()[k]}});
        j["pieces"] = std::move(pieces);
    } else {
        const auto& g = std::get<GridDensity>(d);
        j["type"] = "grid";
        j["origin"] = g.origin();
        j["step"] = g.step();
        j["values"] = g.values();
    }
    return j;
}

nlohmann::json stats_json(const Density& d) {
    const ScalarStats s = stats(d);
    const LogConcavity lc = is_log_concave(d);
    nlohmann::json j;
    j["mass"] = s.mass;
    j["mean"] = s.mean;
    j["second_moment"] = s.second_moment;
    j["variance"] = s.variance;
    j["shannon_entropy"] = s.shannon_entropy;
    j["entropy_variance_gap"] = entropy_variance_gap(d);
    j["log_concave"] = lc.log_concave;
    j["limit_of_log_concave"] = lc.limit_of_log_concave;
    return j;
}

}  // namespace lcentropy
