#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace relmass::csv {

// %.17g: round-trips every double.
std::string format(double x);

// Emits each line of comment (split on '\n') prefixed by "# ".
void write_comment(std::ostream& out, std::string_view comment);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace relmass::csv
