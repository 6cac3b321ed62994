#include "nrlab/matrix_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nrlab/error.hpp"

namespace nrlab {

namespace {

using json = nlohmann::json;

std::string position(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
        if (text[k] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::ParseError, "matrix: " + what); }

double number(const json& v, const std::string& where) {
    if (!v.is_number()) fail(where + " is not a number");
    return v.get<double>();
}

}  // namespace

ComplexMatrix parse_matrix(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        // nlohmann reports the 1-based byte just past the offending token.
        const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        fail(position(text, byte) + ": syntax error");
    }
    if (!doc.is_object()) fail("document is not an object");
    if (!doc.contains("dim") || !doc["dim"].is_number_integer()) fail("missing integer field 'dim'");
    if (!doc.contains("rows") || !doc["rows"].is_array()) fail("missing array field 'rows'");
    const long long dim = doc["dim"].get<long long>();
    if (dim < 1) fail("'dim' must be positive");
    const auto n = static_cast<std::size_t>(dim);
    const json& rows = doc["rows"];
    if (rows.size() != n) fail("expected " + std::to_string(n) + " rows, found " + std::to_string(rows.size()));

    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        const json& row = rows[i];
        const std::string rname = "row " + std::to_string(i);
        if (!row.is_array() || row.size() != n) fail(rname + " must hold " + std::to_string(n) + " entries");
        for (std::size_t j = 0; j < n; ++j) {
            const json& e = row[j];
            const std::string ename = "entry (" + std::to_string(i) + ", " + std::to_string(j) + ")";
            if (!e.is_array() || e.size() != 2) fail(ename + " must be a [re, im] pair");
            m(i, j) = Complex{number(e[0], ename), number(e[1], ename)};
        }
    }
    if (!m.all_finite()) fail("non-finite entry");
    return m;
}

ComplexMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_matrix(buf.str());
}

std::string format_matrix(const ComplexMatrix& m) {
    std::string out = "{\"dim\": " + std::to_string(m.dim()) + ", \"rows\": [\n";
    for (std::size_t i = 0; i < m.dim(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.dim(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        out += "  " + row.dump();
        out += i + 1 < m.dim() ? ",\n" : "\n";
    }
    out += "]}\n";
    return out;
}

}  // namespace nrlab
