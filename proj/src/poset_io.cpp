#include "lextent/poset_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace lextent {

namespace {

std::string next_meaningful_line(std::istream& in, std::size_t& lineno) {
    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;  // blank
        std::size_t b = line.find_last_not_of(" \t\r");
        return line.substr(a, b - a + 1);
    }
    return {};
}

[[noreturn]] void fail(std::size_t lineno, const std::string& what) {
    throw ParseError("poset text line " + std::to_string(lineno) + ": " + what);
}

}  // namespace

Poset read_poset(std::istream& in) {
    std::size_t lineno = 0;
    if (next_meaningful_line(in, lineno) != "poset v1") fail(lineno, "expected header 'poset v1'");

    std::string line = next_meaningful_line(in, lineno);
    std::istringstream hdr(line);
    std::string kw;
    long long n = -1;
    if (!(hdr >> kw >> n) || kw != "elements" || n < 0)
        fail(lineno, "expected 'elements <n>'");

    std::vector<CoverPair> covers;
    while (true) {
        line = next_meaningful_line(in, lineno);
        if (line.empty()) break;
        std::istringstream ls(line);
        long long i = -1, j = -1;
        std::string extra;
        if (!(ls >> kw >> i >> j) || kw != "cover" || i < 0 || j < 0 || (ls >> extra))
            fail(lineno, "expected 'cover <i> <j>'");
        if (i >= n || j >= n) fail(lineno, "cover index out of range");
        covers.emplace_back(static_cast<ElementId>(i), static_cast<ElementId>(j));
    }
    return Poset::from_cover_relations(static_cast<std::size_t>(n), covers);
}

void write_poset(std::ostream& out, const Poset& p) {
    out << "poset v1\n";
    out << "elements " << p.size() << "\n";
    for (const auto& [i, j] : p.hasse_edges()) out << "cover " << i << " " << j << "\n";
}

Poset read_poset_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open poset file: " + path);
    return read_poset(in);
}

void write_poset_file(const std::string& path, const Poset& p) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write poset file: " + path);
    write_poset(out, p);
}

}  // namespace lextent
