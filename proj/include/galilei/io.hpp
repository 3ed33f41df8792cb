#pragma once

// Output formats: CSV with 17 significant digits and LF line ends, and the
// flat key-value run record.

#include "galilei/config.hpp"
#include "galilei/interferometer.hpp"
#include "galilei/models.hpp"
#include "galilei/verify.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace galilei::io {

/// %.17g: parses back to the same double.
std::string format_double(double x);

/// Strict full-string parse; nullopt on any trailing text.
std::optional<double> parse_double(const std::string& text);

/// Header "position,intensity".
std::string profile_csv(const interf::IntensityProfile& profile);

/// Header "experiment,eraser,pair,sew,dnr,galilei".
std::string matrix_csv(const std::vector<models::MatrixRow>& rows);

struct SweepRow {
    double value = 0.0;
    models::PredictionReport report;
};

/// Header "<parameter>,V_<pair>..." with pairs taken from the first row.
std::string sweep_csv(const std::string& parameter, const std::vector<SweepRow>& rows);

struct RunRecord {
    config::ExperimentConfig config;
    models::PredictionReport report;
    std::vector<verify::LawResult> laws;

    bool operator==(const RunRecord&) const = default;
};

std::string serialize_record(const RunRecord& record);
/// Inverse of serialize_record; throws config::ConfigError on malformed text.
RunRecord parse_record(const std::string& text);

/// Writes bytes verbatim; throws Error(InvalidArgument) if the file cannot be written.
void write_file(const std::string& path, const std::string& content);

}  // namespace galilei::io
