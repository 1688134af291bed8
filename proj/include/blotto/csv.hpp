#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace blotto::csv {

using Row = std::vector<std::string>;

// RFC 4180 reader: quoted fields may contain commas, doubled quotes and
// newlines. CRLF and LF line endings are both accepted; a trailing newline
// does not produce an empty row. Throws std::runtime_error on an unterminated
// quoted field.
std::vector<Row> parse(std::string_view text);

// Quotes a field only when it contains ',', '"', CR or LF.
std::string escape(std::string_view field);

void write_row(std::ostream& os, const Row& row);

}  // namespace blotto::csv
