#pragma once

#include <string>

#include "rnkit/cocycle.hpp"
#include "rnkit/report.hpp"
#include "rnkit/weyl.hpp"

namespace rnkit::harness {

/// Report as JSON (schema "rnkit.report/1"), pretty-printed with a trailing newline.
std::string report_to_json(const Report& r);
Report report_from_json(const std::string& text);
/// Aligned table for humans.
std::string report_to_text(const Report& r);

/// Cocycle path files (schema "rnkit.path/1"): t-grid plus one unitary per node.
std::string path_to_json(const CocyclePath& u);
CocyclePath path_from_json(const std::string& text);

std::string fit_to_json(const GeneratorFit& fit);
std::string sweep_to_json(const SweepTable& table);
std::string sweep_to_text(const SweepTable& table);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace rnkit::harness
