#include "relmass/csv.hpp"

#include <cstdio>
#include <ostream>

namespace relmass::csv {

std::string format(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_comment(std::ostream& out, std::string_view comment) {
    std::size_t start = 0;
    while (start <= comment.size()) {
        std::size_t end = comment.find('\n', start);
        if (end == std::string_view::npos) end = comment.size();
        out << "# " << comment.substr(start, end - start) << '\n';
        if (end == comment.size()) break;
        start = end + 1;
    }
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << fields[i];
    }
    out << '\n';
}

}  // namespace relmass::csv
