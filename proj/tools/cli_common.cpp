#include "cli_common.hpp"

#include <iostream>

#include "symca/io.hpp"

namespace cli {

void emit(const Globals& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
        std::cout.flush();
    } else {
        symca::write_file(g.out, text);
    }
}

symca::Rule load_rule(const std::string& path) { return symca::parse_rule(symca::read_file(path)); }

symca::Word parse_word(const std::string& text) {
    symca::Word w;
    if (text.find(',') == std::string::npos) {
        for (char c : text) {
            if (c < '0' || c > '9') throw symca::Error(symca::ErrorKind::ParseError, "bad cell '" + std::string(1, c) + "'");
            w.push_back(static_cast<symca::State>(c - '0'));
        }
    } else {
        std::size_t pos = 0;
        while (pos <= text.size()) {
            auto next = text.find(',', pos);
            if (next == std::string::npos) next = text.size();
            try {
                w.push_back(std::stoull(text.substr(pos, next - pos)));
            } catch (const std::logic_error&) {
                throw symca::Error(symca::ErrorKind::ParseError, "bad cell list '" + text + "'");
            }
            pos = next + 1;
        }
    }
    if (w.empty()) throw symca::Error(symca::ErrorKind::ParseError, "empty configuration");
    return w;
}

std::string join(const symca::Word& w, char sep) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(w[i]);
    }
    return s;
}

}  // namespace cli
