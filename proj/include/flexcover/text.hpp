#pragma once

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "flexcover/errors.hpp"

namespace flexcover {

// Tokenizes a phrase or identifier for lexical matching: case-folded tokens,
// split on whitespace, underscores, hyphens, and lower-to-upper camelCase
// boundaries. Empty tokens are dropped.
inline std::vector<std::string> normalize(const std::string& phrase) {
    std::vector<std::string> tokens;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) {
            tokens.push_back(cur);
            cur.clear();
        }
    };
    char prev = '\0';
    for (char c : phrase) {
        unsigned char uc = static_cast<unsigned char>(c);
        if (std::isspace(uc) || c == '_' || c == '-') {
            flush();
        } else {
            if (std::isupper(uc) && std::islower(static_cast<unsigned char>(prev))) flush();
            cur.push_back(static_cast<char>(std::tolower(uc)));
        }
        prev = c;
    }
    flush();
    return tokens;
}

// Canonical single-string form of a normalized phrase (tokens joined by one space).
inline std::string normalize_phrase(const std::string& phrase) {
    std::string out;
    for (const auto& t : normalize(phrase)) {
        if (!out.empty()) out.push_back(' ');
        out += t;
    }
    return out;
}

// Substring after the last '#' or '/' of an IRI.
inline std::string local_name(const std::string& iri) {
    auto pos = iri.find_last_of("#/");
    if (pos == std::string::npos || pos + 1 >= iri.size()) return iri;
    return iri.substr(pos + 1);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

inline std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace flexcover
