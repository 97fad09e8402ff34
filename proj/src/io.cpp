#include "symca/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace symca {

namespace {

std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

std::uint64_t parse_uint(const std::string& token, const char* what) {
    if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
        throw Error(ErrorKind::ParseError, std::string("expected a non-negative integer for ") + what + ", got '" + token + "'");
    try {
        return std::stoull(token);
    } catch (const std::exception&) {
        throw Error(ErrorKind::ParseError, std::string("integer out of range for ") + what);
    }
}

}  // namespace

Rule parse_rule(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::optional<std::uint64_t> n;
    std::optional<std::uint64_t> k;
    std::optional<std::vector<State>> table;
    while (std::getline(in, line)) {
        std::istringstream ls(strip_comment(line));
        std::string key;
        if (!(ls >> key)) continue;
        std::vector<std::string> values;
        for (std::string v; ls >> v;) values.push_back(v);
        if (key == "n" || key == "k") {
            if (values.size() != 1) throw Error(ErrorKind::ParseError, "field '" + key + "' takes exactly one value");
            (key == "n" ? n : k) = parse_uint(values[0], key.c_str());
        } else if (key == "table") {
            std::vector<State> t;
            t.reserve(values.size());
            for (const auto& v : values) t.push_back(parse_uint(v, "table entry"));
            table = std::move(t);
        } else {
            throw Error(ErrorKind::ParseError, "unknown field '" + key + "'");
        }
    }
    if (!n || !k || !table) throw Error(ErrorKind::ParseError, "rule file needs fields n, k and table");
    if (*n == 0 || *k == 0 || *k > 64) throw Error(ErrorKind::ParseError, "n and k must be positive (k <= 64)");
    return Rule::dense(*n, static_cast<int>(*k), std::move(*table));
}

std::string serialize_rule(const Rule& rule) {
    const auto& table = rule.table();
    std::ostringstream os;
    os << "n " << rule.n() << "\nk " << rule.k() << "\ntable";
    for (State s : table) os << ' ' << s;
    os << '\n';
    return os.str();
}

Trace parse_trace(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) {
        auto stripped = strip_comment(line);
        if (stripped.find_first_not_of(" \t\r") == std::string::npos) continue;
        lines.push_back(stripped);
    }
    if (lines.empty()) throw Error(ErrorKind::ParseError, "empty trace file");
    std::istringstream header(lines[0]);
    std::map<std::string, std::uint64_t> fields;
    for (std::string key, value; header >> key >> value;) fields[key] = parse_uint(value, key.c_str());
    if (!fields.count("n") || !fields.count("period") || !fields.count("T"))
        throw Error(ErrorKind::ParseError, "trace header needs n, period and T");
    const auto n = fields["n"];
    const auto p = fields["period"];
    const auto steps = fields["T"];
    if (n == 0 || p == 0) throw Error(ErrorKind::ParseError, "n and period must be positive");
    if (lines.size() != steps + 2)
        throw Error(ErrorKind::ParseError, "trace has " + std::to_string(lines.size() - 1) + " rows, expected T+1");
    Trace trace;
    trace.n = n;
    for (std::size_t r = 1; r < lines.size(); ++r) {
        std::istringstream ls(lines[r]);
        Word row;
        for (std::string v; ls >> v;) row.push_back(parse_uint(v, "trace cell"));
        if (row.size() != p) throw Error(ErrorKind::ParseError, "row " + std::to_string(r - 1) + " has wrong length");
        for (State s : row)
            if (s >= n) throw Error(ErrorKind::ParseError, "trace cell out of range");
        trace.rows.emplace_back(std::move(row));
    }
    return trace;
}

std::string serialize_trace(const Trace& trace) {
    std::ostringstream os;
    const std::size_t p = trace.rows.empty() ? 0 : trace.rows.front().period();
    os << "n " << trace.n << " period " << p << " T " << trace.steps() << '\n';
    for (const auto& row : trace.rows) {
        for (std::size_t i = 0; i < row.period(); ++i) os << (i ? " " : "") << row.word()[i];
        os << '\n';
    }
    return os.str();
}

std::string render_pgm(const Trace& trace) {
    if (trace.rows.empty()) throw Error(ErrorKind::ParseError, "trace has no rows");
    const std::size_t width = trace.rows.front().period();
    std::ostringstream os;
    os << "P5\n" << width << ' ' << trace.rows.size() << "\n255\n";
    for (const auto& row : trace.rows) {
        if (row.period() != width) throw Error(ErrorKind::ParseError, "rows differ in width");
        for (State s : row.word()) {
            const unsigned gray = trace.n <= 1 ? 0u : static_cast<unsigned>((255 * s) / (trace.n - 1));
            os.put(static_cast<char>(gray));
        }
    }
    return os.str();
}

std::string render_ascii(const Trace& trace) {
    static const std::string glyphs = ".123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
    std::string out;
    for (const auto& row : trace.rows) {
        for (State s : row.word()) out.push_back(s < glyphs.size() ? glyphs[s] : '?');
        out.push_back('\n');
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::InvalidArg, "cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidArg, "cannot write " + path);
    out << content;
}

}  // namespace symca
