#pragma once

#include <string>

#include <json.hpp>

namespace skewspec {

// Parses the TOML subset used by the experiment configs: `[table]` and
// `[table.sub]` headers, bare keys, strings, booleans, integers, floats and
// (possibly nested, multi-line) arrays, with `#` comments.  Dotted keys,
// inline tables and datetimes are rejected.  Throws ConfigError with a line
// number on malformed input.
nlohmann::json parse_toml_lite(const std::string& text);

// Loads a config file as JSON: `.toml` goes through parse_toml_lite, `.json`
// through nlohmann's parser.  Throws ConfigError on I/O or syntax problems.
nlohmann::json load_config_json(const std::string& path);

}  // namespace skewspec
