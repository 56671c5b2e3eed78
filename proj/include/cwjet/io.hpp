#pragma once

#include "cwjet/body.hpp"
#include "cwjet/jet.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace cwjet::io {

using ordered_json = nlohmann::ordered_json;

// Jet file: { "dim": d, "points": [ { "x": [...], "f": v, "g": [...] }, ... ] }
Jet parse_jet(const ordered_json& doc);
ordered_json jet_to_json(const Jet& jet);

/// Canonical serialization: fixed key order, two-space indent, shortest
/// round-trip decimals, trailing newline. write(parse(file)) is
/// byte-identical for files in this form.
std::string jet_to_canonical_string(const Jet& jet);

Jet read_jet_file(const std::filesystem::path& path);
void write_jet_file(const std::filesystem::path& path, const Jet& jet);

// Queries file: { "dim": d, "queries": [ [...], ... ] }
std::vector<Vec> parse_queries(const ordered_json& doc, int expected_dim);
std::vector<Vec> read_queries_file(const std::filesystem::path& path,
                                   int expected_dim);

// Body file: { "dim": d, "points": [ { "x": [...], "n": [...] }, ... ] }
BodyData parse_body(const ordered_json& doc);
BodyData read_body_file(const std::filesystem::path& path);

/// FNV-1a 64-bit digest, lowercase hex; used to fingerprint input files in
/// run reports.
std::string fnv1a64_hex(const std::string& bytes);

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

ordered_json load_json_file(const std::filesystem::path& path);

}  // namespace cwjet::io
