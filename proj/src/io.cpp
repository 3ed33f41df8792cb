#include "galilei/io.hpp"

#include "galilei/error.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cstdio>
#include <fstream>

namespace galilei::io {

using config::ConfigError;

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::optional<double> parse_double(const std::string& text) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    if (first != last && *first == '+') ++first;
    const auto [end, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || end != last) return std::nullopt;
    return v;
}

std::string profile_csv(const interf::IntensityProfile& profile) {
    std::string out = "position,intensity\n";
    for (std::size_t i = 0; i < profile.positions.size(); ++i)
        out += format_double(profile.positions[i]) + "," + format_double(profile.intensity[i]) + "\n";
    return out;
}

std::string matrix_csv(const std::vector<models::MatrixRow>& rows) {
    std::string out = "experiment,eraser,pair,sew,dnr,galilei\n";
    for (const auto& r : rows) {
        out += std::string(models::to_string(r.experiment)) + "," + models::to_string(r.eraser) + "," + r.pair;
        for (double v : r.visibility) out += "," + format_double(v);
        out += "\n";
    }
    return out;
}

std::string sweep_csv(const std::string& parameter, const std::vector<SweepRow>& rows) {
    std::string out = parameter;
    if (!rows.empty())
        for (const auto& [pair, v] : rows.front().report.visibilities) out += ",V_" + pair;
    out += "\n";
    for (const auto& r : rows) {
        out += format_double(r.value);
        for (const auto& [pair, v] : r.report.visibilities) out += "," + format_double(v);
        out += "\n";
    }
    return out;
}

std::string serialize_record(const RunRecord& record) {
    std::string out;
    auto line = [&](const std::string& key, const std::string& value) { out += key + ": " + value + "\n"; };
    for (const auto& [key, value] : config::config_entries(record.config)) line("config." + key, value);
    const auto& r = record.report;
    line("report.experiment", models::to_string(r.experiment));
    line("report.model", models::to_string(r.model));
    line("report.eraser", models::to_string(r.eraser));
    for (const auto& [pair, v] : r.visibilities) line("report.visibility." + pair, format_double(v));
    for (const auto& s : r.sector_census) line("report.census." + s.sector, format_double(s.weight));
    if (r.rival) {
        line("report.rival.model", models::to_string(r.rival->first));
        line("report.rival.visibility", format_double(r.rival->second));
    }
    for (const auto& law : record.laws) {
        line("law." + law.name + ".residual", format_double(law.max_residual));
        line("law." + law.name + ".tolerance", format_double(law.tolerance));
        line("law." + law.name + ".exact", law.exact ? "true" : "false");
    }
    return out;
}

namespace {

bool starts_with(const std::string& s, const std::string& prefix, std::string& rest) {
    if (s.rfind(prefix, 0) != 0) return false;
    rest = s.substr(prefix.size());
    return true;
}

double number(const std::string& key, const std::string& text) {
    const auto v = parse_double(text);
    if (!v) throw ConfigError(ConfigError::Kind::validation, key, "expected a number, got '" + text + "'");
    return *v;
}

template <typename E>
E choice(const std::string& key, const std::string& text, std::optional<E> (*parse)(const std::string&)) {
    const auto v = parse(text);
    if (!v) throw ConfigError(ConfigError::Kind::validation, key, "unrecognised value '" + text + "'");
    return *v;
}

}  // namespace

RunRecord parse_record(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ConfigError(ConfigError::Kind::syntax, "record", e.msg, e.mark.line + 1, e.mark.column + 1);
    }
    RunRecord rec;
    if (root.IsNull()) return rec;
    if (!root.IsMap()) throw ConfigError(ConfigError::Kind::syntax, "record", "expected flat key-value lines");

    std::optional<models::Model> rival_model;
    std::optional<double> rival_v;
    for (const auto& entry : root) {
        const std::string key = entry.first.Scalar();
        if (!entry.second.IsScalar()) throw ConfigError(ConfigError::Kind::validation, key, "expected a scalar");
        const std::string value = entry.second.Scalar();
        std::string rest;
        if (starts_with(key, "config.", rest)) {
            const auto dot = rest.find('.');
            if (dot == std::string::npos) throw ConfigError(ConfigError::Kind::unknown_key, key, "unknown key");
            config::set_field(rec.config, rest.substr(0, dot), rest.substr(dot + 1), value);
        } else if (key == "report.experiment") {
            rec.report.experiment = choice(key, value, models::parse_experiment);
        } else if (key == "report.model") {
            rec.report.model = choice(key, value, models::parse_model);
        } else if (key == "report.eraser") {
            rec.report.eraser = choice(key, value, models::parse_eraser);
        } else if (starts_with(key, "report.visibility.", rest)) {
            rec.report.visibilities.emplace_back(rest, number(key, value));
        } else if (starts_with(key, "report.census.", rest)) {
            rec.report.sector_census.push_back({rest, number(key, value)});
        } else if (key == "report.rival.model") {
            rival_model = choice(key, value, models::parse_model);
        } else if (key == "report.rival.visibility") {
            rival_v = number(key, value);
        } else if (starts_with(key, "law.", rest)) {
            const auto dot = rest.rfind('.');
            if (dot == std::string::npos) throw ConfigError(ConfigError::Kind::unknown_key, key, "unknown key");
            const std::string name = rest.substr(0, dot);
            const std::string field = rest.substr(dot + 1);
            if (rec.laws.empty() || rec.laws.back().name != name) rec.laws.push_back({name, 0.0, 0.0});
            auto& law = rec.laws.back();
            if (field == "residual") law.max_residual = number(key, value);
            else if (field == "tolerance") law.tolerance = number(key, value);
            else if (field == "exact") law.exact = value == "true";
            else throw ConfigError(ConfigError::Kind::unknown_key, key, "unknown key");
        } else {
            throw ConfigError(ConfigError::Kind::unknown_key, key, "unknown key");
        }
    }
    if (rival_model.has_value() != rival_v.has_value())
        throw ConfigError(ConfigError::Kind::validation, "report.rival", "model and visibility must appear together");
    if (rival_model) rec.report.rival = {*rival_model, *rival_v};
    return rec;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot open " + path + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::InvalidArgument, "failed writing " + path);
}

}  // namespace galilei::io
