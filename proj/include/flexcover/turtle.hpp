#pragma once

#include <cctype>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "flexcover/errors.hpp"

namespace flexcover {

inline constexpr const char* kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr const char* kRdfsLabel = "http://www.w3.org/2000/01/rdf-schema#label";
inline constexpr const char* kOwlClass = "http://www.w3.org/2002/07/owl#Class";
inline constexpr const char* kRdfsClass = "http://www.w3.org/2000/01/rdf-schema#Class";
inline constexpr const char* kOwlObjectProperty = "http://www.w3.org/2002/07/owl#ObjectProperty";
inline constexpr const char* kOwlDatatypeProperty = "http://www.w3.org/2002/07/owl#DatatypeProperty";

struct RdfNode {
    enum class Kind { Iri, Literal };
    Kind kind = Kind::Iri;
    std::string value;     // IRI string, or literal lexical form
    std::string datatype;  // literal datatype IRI, optional
    std::string lang;      // literal language tag, optional

    static RdfNode iri(std::string v) { return {Kind::Iri, std::move(v), "", ""}; }
    static RdfNode literal(std::string v, std::string dt = "", std::string lang = "") {
        return {Kind::Literal, std::move(v), std::move(dt), std::move(lang)};
    }
    bool is_iri() const { return kind == Kind::Iri; }

    auto operator<=>(const RdfNode&) const = default;
};

// Subject and predicate are always identifiers; only the object may be a literal.
struct Triple {
    std::string subject;
    std::string predicate;
    RdfNode object;

    auto operator<=>(const Triple&) const = default;
};

using TripleSet = std::set<Triple>;

namespace turtle_detail {

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    TripleSet parse() {
        TripleSet triples;
        skip_ws();
        while (!eof()) {
            if (peek() == '@') {
                directive();
            } else {
                statement(triples);
            }
            skip_ws();
        }
        return triples;
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    std::map<std::string, std::string> prefixes_;
    std::string base_;

    [[noreturn]] void fail(const std::string& msg) { throw parse_error(msg, line_, col_); }

    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    char get() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_ws() {
        while (!eof()) {
            char c = peek();
            if (std::isspace(static_cast<unsigned char>(c))) {
                get();
            } else if (c == '#') {
                while (!eof() && peek() != '\n') get();
            } else {
                break;
            }
        }
    }

    void expect(char c, const std::string& what) {
        skip_ws();
        if (eof() || peek() != c) fail("expected '" + std::string(1, c) + "' " + what);
        get();
    }

    static bool name_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
    }

    std::string bare_name() {
        std::string out;
        while (!eof() && name_char(peek())) out.push_back(get());
        // A trailing '.' terminates the statement, not the name.
        while (!out.empty() && out.back() == '.') {
            out.pop_back();
            --pos_;
            --col_;
        }
        return out;
    }

    std::string iriref() {
        get();  // '<'
        std::string out;
        while (true) {
            if (eof() || peek() == '\n') fail("unterminated IRI");
            char c = get();
            if (c == '>') break;
            out.push_back(c);
        }
        if (!base_.empty() && out.find(':') == std::string::npos) return base_ + out;
        return out;
    }

    void directive() {
        get();  // '@'
        std::string name = bare_name();
        if (name == "prefix") {
            skip_ws();
            std::string pfx;
            while (!eof() && peek() != ':') pfx.push_back(get());
            expect(':', "in @prefix");
            skip_ws();
            if (eof() || peek() != '<') fail("expected IRI in @prefix");
            prefixes_[pfx] = iriref();
            expect('.', "after @prefix");
        } else if (name == "base") {
            skip_ws();
            if (eof() || peek() != '<') fail("expected IRI in @base");
            base_ = iriref();
            expect('.', "after @base");
        } else {
            fail("unknown directive @" + name);
        }
    }

    std::string resolve_pname(const std::string& pfx, const std::string& local) {
        auto it = prefixes_.find(pfx);
        if (it == prefixes_.end()) fail("undeclared prefix '" + pfx + ":'");
        return it->second + local;
    }

    // Parses an identifier term (IRI or prefixed name). Returns empty optional on 'a'.
    std::string identifier(bool allow_a, bool* was_a = nullptr) {
        skip_ws();
        if (eof()) fail("unexpected end of input");
        if (peek() == '<') return iriref();
        if (peek() == '[') fail("blank-node property lists are not supported");
        if (peek() == '(') fail("collections are not supported");
        std::string name = bare_name();
        if (!eof() && peek() == ':') {
            get();
            std::string local = bare_name();
            return resolve_pname(name, local);
        }
        if (allow_a && name == "a") {
            if (was_a) *was_a = true;
            return kRdfType;
        }
        if (name.empty()) fail("expected identifier");
        fail("bare name '" + name + "' is not a valid term");
    }

    RdfNode string_literal() {
        get();  // '"'
        std::string out;
        while (true) {
            if (eof() || peek() == '\n') fail("unterminated literal");
            char c = get();
            if (c == '"') break;
            if (c == '\\') {
                if (eof()) fail("unterminated literal");
                char e = get();
                switch (e) {
                    case 'n': out.push_back('\n'); break;
                    case 't': out.push_back('\t'); break;
                    case 'r': out.push_back('\r'); break;
                    case '"': out.push_back('"'); break;
                    case '\\': out.push_back('\\'); break;
                    default: fail(std::string("unknown escape \\") + e);
                }
            } else {
                out.push_back(c);
            }
        }
        std::string lang, datatype;
        if (!eof() && peek() == '@') {
            get();
            while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-'))
                lang.push_back(get());
            if (lang.empty()) fail("empty language tag");
        } else if (pos_ + 1 < text_.size() && peek() == '^' && text_[pos_ + 1] == '^') {
            get();
            get();
            skip_ws();
            if (!eof() && peek() == '<') {
                datatype = iriref();
            } else {
                std::string pfx = bare_name();
                if (eof() || peek() != ':') fail("expected datatype");
                get();
                datatype = resolve_pname(pfx, bare_name());
            }
        }
        return RdfNode::literal(out, datatype, lang);
    }

    RdfNode numeric_or_boolean() {
        std::string out;
        bool is_decimal = false;
        if (peek() == '+' || peek() == '-') out.push_back(get());
        while (!eof() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.')) {
            // A '.' followed by non-digit ends the statement instead.
            if (peek() == '.') {
                if (pos_ + 1 >= text_.size() ||
                    !std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))
                    break;
                is_decimal = true;
            }
            out.push_back(get());
        }
        if (out.empty() || out == "+" || out == "-") fail("malformed numeric literal");
        return RdfNode::literal(out, is_decimal
                                         ? "http://www.w3.org/2001/XMLSchema#decimal"
                                         : "http://www.w3.org/2001/XMLSchema#integer");
    }

    RdfNode object() {
        skip_ws();
        if (eof()) fail("expected object");
        char c = peek();
        if (c == '"') return string_literal();
        if (c == '<') return RdfNode::iri(iriref());
        if (c == '[') fail("blank-node property lists are not supported");
        if (c == '(') fail("collections are not supported");
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-')
            return numeric_or_boolean();
        std::string name = bare_name();
        if (!eof() && peek() == ':') {
            get();
            return RdfNode::iri(resolve_pname(name, bare_name()));
        }
        if (name == "true" || name == "false")
            return RdfNode::literal(name, "http://www.w3.org/2001/XMLSchema#boolean");
        if (name.empty()) fail("expected object");
        fail("bare name '" + name + "' is not a valid object");
    }

    void statement(TripleSet& triples) {
        std::string subject = identifier(/*allow_a=*/false);
        while (true) {
            std::string predicate = identifier(/*allow_a=*/true);
            while (true) {
                triples.insert({subject, predicate, object()});
                skip_ws();
                if (!eof() && peek() == ',') {
                    get();
                    continue;
                }
                break;
            }
            skip_ws();
            if (!eof() && peek() == ';') {
                get();
                skip_ws();
                // A dangling ';' before '.' is tolerated, as in full Turtle.
                if (!eof() && peek() == '.') break;
                continue;
            }
            break;
        }
        expect('.', "at end of statement");
    }
};

inline std::string quote_literal(const RdfNode& n) {
    std::string out = "\"";
    for (char c : n.value) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default: out.push_back(c);
        }
    }
    out += "\"";
    if (!n.lang.empty()) out += "@" + n.lang;
    else if (!n.datatype.empty()) out += "^^<" + n.datatype + ">";
    return out;
}

}  // namespace turtle_detail

// Parses the supported Turtle subset. Unresolvable constructs are hard errors.
inline TripleSet parse_turtle(const std::string& text) {
    return turtle_detail::Parser(text).parse();
}

// Canonical N-Triples-like serialization: one triple per line, sorted.
inline std::string serialize_ntriples(const TripleSet& triples) {
    std::string out;
    for (const auto& t : triples) {
        out += "<" + t.subject + "> <" + t.predicate + "> ";
        if (t.object.is_iri()) out += "<" + t.object.value + ">";
        else out += turtle_detail::quote_literal(t.object);
        out += " .\n";
    }
    return out;
}

}  // namespace flexcover
