#pragma once

// Command-line front end: one verb per invocation, JSON or CSV on stdout.

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace cantor::cli {

enum exit_code : int {
    exit_ok = 0,
    exit_internal = 1,
    exit_input = 2,
    exit_resource = 3,
};

/// Runs one command; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Flattened (key, value) pairs: nested keys joined with '.', scalars as text.
std::vector<std::pair<std::string, std::string>> flatten(const nlohmann::ordered_json& doc);

/// CSV rendering: one line per element of "rows" (document-level fields
/// repeated on each), or one flattened line when there are no rows.
std::string to_csv(const nlohmann::ordered_json& doc);

/// Parses CSV text (RFC 4180 quoting) into records.
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

}  // namespace cantor::cli
