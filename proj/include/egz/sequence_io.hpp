#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "egz/group.hpp"

namespace egz {

// Textual sequence format, shared by the CLI and certificates:
//   # n=<n> r=<r>          (mandatory header, first line)
//   0,1,1                  (one vector per line, comma-separated residues)
// Further lines starting with '#' are comments. Entries are reduced mod n
// on input; the writer always emits canonical residues.

inline std::string sequence_to_text(const GSequence& seq) {
    std::ostringstream out;
    out << "# n=" << seq.params().n << " r=" << seq.params().r << "\n";
    for (const ZVector& v : seq.items()) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (j) out << ',';
            out << v[j];
        }
        out << "\n";
    }
    return out.str();
}

namespace detail {

inline bool parse_header(const std::string& line, std::int64_t& n, std::int64_t& r) {
    std::istringstream in(line);
    std::string hash, ntok, rtok;
    if (!(in >> hash) || hash != "#") {
        // also accept "#n=..." with no space
        if (line.size() < 2 || line[0] != '#') return false;
        in = std::istringstream(line.substr(1));
        if (!(in >> ntok)) return false;
    } else if (!(in >> ntok)) {
        return false;
    }
    if (!(in >> rtok)) return false;
    std::string rest;
    if (in >> rest) return false;
    if (ntok.rfind("n=", 0) != 0 || rtok.rfind("r=", 0) != 0) return false;
    try {
        std::size_t used = 0;
        const std::string nval = ntok.substr(2), rval = rtok.substr(2);
        n = std::stoll(nval, &used);
        if (used != nval.size()) return false;
        r = std::stoll(rval, &used);
        if (used != rval.size()) return false;
    } catch (...) {
        return false;
    }
    return n >= 1 && r >= 1;
}

} // namespace detail

/// Parses the textual format. The sequence itself does not carry k, so the
/// caller supplies it (default 1) to complete the GroupParams triple.
inline GSequence sequence_from_text(const std::string& text, std::int64_t k = 1) {
    std::istringstream in(text);
    std::string line;
    std::int64_t n = 0, r = 0;
    bool have_header = false;
    std::vector<ZVector> items;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        if (line[first] == '#') {
            if (!have_header) {
                if (!detail::parse_header(line.substr(first), n, r))
                    throw InputError("sequence: first line must be the header '# n=<n> r=<r>'");
                have_header = true;
            }
            continue;
        }
        if (!have_header)
            throw InputError("sequence: missing header '# n=<n> r=<r>' before data");
        std::vector<long long> row;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ',')) {
            try {
                std::size_t used = 0;
                long long v = std::stoll(field, &used);
                while (used < field.size() &&
                       std::isspace(static_cast<unsigned char>(field[used])))
                    ++used;
                if (used != field.size()) throw std::invalid_argument("");
                row.push_back(v);
            } catch (...) {
                throw InputError("sequence: bad entry '" + field + "' on line " +
                                 std::to_string(lineno));
            }
        }
        if (static_cast<std::int64_t>(row.size()) != r)
            throw InputError("sequence: line " + std::to_string(lineno) + " has " +
                             std::to_string(row.size()) + " entries, expected r=" +
                             std::to_string(r));
        items.push_back(reduce_row(row, n));
    }
    if (!have_header) throw InputError("sequence: empty input, header required");
    return GSequence(GroupParams(n, r, k), std::move(items));
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write file: " + path);
    out << content;
    if (!out) throw InputError("write failed: " + path);
}

} // namespace egz
