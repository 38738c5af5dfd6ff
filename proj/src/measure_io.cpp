#include "hausdorff/measure_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>

namespace hausdorff {

namespace {

using nlohmann::json;

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

json extended(double v) {
    if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
    return json(v);
}

const json& field(const json& obj, const char* name) {
    auto it = obj.find(name);
    if (it == obj.end()) parse_error(std::string("missing field '") + name + "'");
    return *it;
}

std::vector<double> numeric_params(const json& params, std::size_t count, const std::string& kind) {
    if (!params.is_array() || params.size() != count)
        parse_error("density kind '" + kind + "' expects " + std::to_string(count) + " params");
    std::vector<double> out;
    for (const json& p : params) {
        if (!p.is_number()) parse_error("density params for '" + kind + "' must be numbers");
        out.push_back(p.get<double>());
    }
    return out;
}

Density density_from_json(const json& d) {
    if (!d.is_object()) parse_error("density must be an object");
    const json& kind_field = field(d, "kind");
    if (!kind_field.is_string()) parse_error("density kind must be a string");
    const std::string kind = kind_field.get<std::string>();
    const json params = d.value("params", json::array());
    if (kind == "const") return Density::constant(numeric_params(params, 1, kind)[0]);
    if (kind == "power") {
        auto p = numeric_params(params, 2, kind);
        return Density::power(p[0], p[1]);
    }
    if (kind == "exp") {
        auto p = numeric_params(params, 2, kind);
        return Density::exponential(p[0], p[1]);
    }
    if (kind == "expr") {
        if (!params.is_array() || params.size() != 1 || !params[0].is_string())
            parse_error("density kind 'expr' expects one string param");
        return Density::expression(params[0].get<std::string>());
    }
    parse_error("unknown density kind '" + kind + "'");
}

json density_to_json(const Density& d) {
    switch (d.kind()) {
    case Density::Kind::Constant: return {{"kind", "const"}, {"params", d.params()}};
    case Density::Kind::Power: return {{"kind", "power"}, {"params", d.params()}};
    case Density::Kind::Exponential: return {{"kind", "exp"}, {"params", d.params()}};
    case Density::Kind::Expr:
        return {{"kind", "expr"}, {"params", json::array({d.expr()->to_string()})}};
    case Density::Kind::Closure: break;
    }
    parse_error("closure density '" + d.describe() + "' cannot be serialized");
}

} // namespace

double json_extended_number(const json& v, const char* name) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
    }
    parse_error(std::string("field '") + name + "' must be a number, \"inf\" or \"-inf\"");
}

Measure measure_from_json(const json& doc) {
    if (!doc.is_object()) parse_error("measure document must be a JSON object");
    std::vector<Atom> atoms;
    if (auto it = doc.find("atoms"); it != doc.end()) {
        if (!it->is_array()) parse_error("'atoms' must be an array");
        for (const json& a : *it) {
            if (!a.is_object()) parse_error("each atom must be an object");
            const json& t = field(a, "t");
            const json& w = field(a, "w");
            if (!t.is_number() || !w.is_number()) parse_error("atom fields must be numbers");
            atoms.push_back({t.get<double>(), w.get<double>()});
        }
    }
    std::vector<DensitySegment> segments;
    if (auto it = doc.find("segments"); it != doc.end()) {
        if (!it->is_array()) parse_error("'segments' must be an array");
        for (const json& s : *it) {
            if (!s.is_object()) parse_error("each segment must be an object");
            DensitySegment seg{json_extended_number(field(s, "lo"), "lo"),
                               json_extended_number(field(s, "hi"), "hi"),
                               density_from_json(field(s, "density")),
                               {}};
            if (auto e = s.find("exp_lo"); e != s.end() && !e->is_null())
                seg.exponents.low = json_extended_number(*e, "exp_lo");
            if (auto e = s.find("exp_hi"); e != s.end() && !e->is_null())
                seg.exponents.high = json_extended_number(*e, "exp_hi");
            segments.push_back(std::move(seg));
        }
    }
    return Measure(std::move(atoms), std::move(segments));
}

json measure_to_json(const Measure& mu) {
    json atoms = json::array();
    for (const Atom& a : mu.atoms()) atoms.push_back({{"t", a.location}, {"w", a.weight}});
    json segments = json::array();
    for (const DensitySegment& s : mu.segments()) {
        json seg = {{"lo", s.lower}, {"hi", extended(s.upper)}, {"density", density_to_json(s.density)}};
        if (s.exponents.low) seg["exp_lo"] = extended(*s.exponents.low);
        if (s.exponents.high) seg["exp_hi"] = extended(*s.exponents.high);
        segments.push_back(std::move(seg));
    }
    return {{"atoms", atoms}, {"segments", segments}};
}

Measure load_measure(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) parse_error("cannot open measure file '" + path.string() + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        parse_error("measure file '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return measure_from_json(doc);
}

} // namespace hausdorff
