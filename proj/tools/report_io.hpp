#pragma once

// Serialization of the library's result handles into the three output
// formats.  Everything here reads through the public C interface only, and
// every function returns the complete artifact as a string so the bytes are
// fixed before any file is touched: identical inputs yield identical output
// files.  JSON is emitted as an array of objects with the field order of the
// underlying type; CSV carries one row per report (or per curve point);
// plot files are two whitespace-separated columns, one line per point.

#include <string>
#include <vector>

#include "hardyeq.h"

namespace hqcli {

std::string reports_to_json(const std::vector<const hq_report*>& reports);
std::string reports_to_csv(const std::vector<const hq_report*>& reports);

std::string sweep_to_json(const hq_sweep* sweep);
std::string sweep_to_csv(const hq_sweep* sweep);
// x = log(truncation), y = quotient, truncation descending
std::string sweep_to_plot(const hq_sweep* sweep);

std::string divergence_to_json(const hq_divergence* report);
std::string divergence_to_csv(const hq_divergence* report);
// x = log(hi/lo), y = window integral
std::string divergence_to_plot(const hq_divergence* report);

std::string lemma_to_json(const hq_lemma* run);
std::string lemma_to_csv(const hq_lemma* run);

// writes verbatim to the path, or to stdout when path is empty or "-";
// returns false (with a message on stderr) when the file cannot be written
bool write_artifact(const std::string& path, const std::string& bytes);

}  // namespace hqcli
