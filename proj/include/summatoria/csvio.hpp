#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "summatoria/summatory.hpp"
#include "summatoria/validation.hpp"

namespace summatoria::io {

// Shortest decimal that round-trips the double exactly.
std::string format_double(double v);
double parse_double(std::string_view s);

// Series CSV: `# key = value` metadata lines, then a `n,S,mean` header and
// one row per checkpoint. Integers are printed verbatim, reals with
// shortest-round-trip formatting; UTF-8, LF line endings.
std::string series_to_csv(const summatory::SummatorySeries& series);

// Inverse of series_to_csv; exact (bit-identical values, integers verbatim).
summatory::SummatorySeries series_from_csv(std::string_view text);

// Checkpoint file: the series CSV plus `# state_*` comment lines carrying the
// block-aligned accumulator state (hex doubles, exact) that lets a longer
// grid resume the run byte-identically.
std::string checkpoint_to_csv(const summatory::SummatorySeries& series,
                              const summatory::ResumeState& state);

struct Checkpoint {
    summatory::SummatorySeries series;
    std::optional<summatory::ResumeState> state;
};
Checkpoint checkpoint_from_csv(std::string_view text);

// Validation report CSV (verdict and fit summary as metadata comments, then
// per-checkpoint rows) and the human-readable text block.
std::string report_to_csv(const validation::ValidationReport& rep);
std::string report_to_text(const validation::ValidationReport& rep);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);
bool file_exists(const std::string& path);

}  // namespace summatoria::io
