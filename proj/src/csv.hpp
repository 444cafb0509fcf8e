#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace genlevel::csv {

using Row = std::vector<std::string>;

/// RFC-4180-style reader: quoted fields, doubled quotes, CRLF tolerated.
/// Blank lines are dropped. Throws Error{ParseError} on an unterminated quote.
std::vector<Row> parse(std::string_view text);

/// Quotes a field when it contains a separator, quote, or newline.
std::string escape(std::string_view field);

std::string join(const Row& fields);

}  // namespace genlevel::csv
