#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "flexcover/errors.hpp"
#include "flexcover/text.hpp"
#include "flexcover/turtle.hpp"

namespace flexcover {

enum class TermKind { Class, ObjectProperty, DataProperty, Individual, Unknown };

inline const char* to_string(TermKind k) {
    switch (k) {
        case TermKind::Class: return "Class";
        case TermKind::ObjectProperty: return "ObjectProperty";
        case TermKind::DataProperty: return "DataProperty";
        case TermKind::Individual: return "Individual";
        case TermKind::Unknown: return "Unknown";
    }
    return "?";
}

inline std::optional<TermKind> term_kind_from_string(const std::string& s) {
    if (s == "Class") return TermKind::Class;
    if (s == "ObjectProperty") return TermKind::ObjectProperty;
    if (s == "DataProperty") return TermKind::DataProperty;
    if (s == "Individual") return TermKind::Individual;
    if (s == "Unknown") return TermKind::Unknown;
    return std::nullopt;
}

// One ontology vocabulary entry. Labels always include the IRI local name.
struct Term {
    std::string iri;
    TermKind kind = TermKind::Unknown;
    std::set<std::string> labels;

    bool operator==(const Term&) const = default;
};

// Well-known ontology ids; anything else is treated as a custom ontology.
namespace ontology {
inline constexpr const char* kBrick = "Brick";
inline constexpr const char* kDelta = "DELTA";
inline constexpr const char* kEfont = "EFOnt";
}  // namespace ontology

// The support set of terms an ontology offers, keyed by IRI.
struct OntologyInventory {
    std::string ontology_id;
    std::map<std::string, Term> terms;

    bool operator==(const OntologyInventory&) const = default;
};

namespace inventory_detail {

inline Term make_term(const std::string& iri, TermKind kind) {
    Term t;
    t.iri = iri;
    t.kind = kind;
    t.labels.insert(local_name(iri));
    return t;
}

}  // namespace inventory_detail

// Builds a term inventory from parsed triples. Subjects declared as classes or
// properties become terms of matching kind; IRIs referenced as a type without
// a declaration become Unknown terms; rdfs:label literals attach as labels.
inline OntologyInventory extract_inventory(const TripleSet& triples,
                                           const std::string& ontology_id) {
    OntologyInventory inv;
    inv.ontology_id = ontology_id;

    auto declared_kind = [](const std::string& type_iri) -> std::optional<TermKind> {
        if (type_iri == kOwlClass || type_iri == kRdfsClass) return TermKind::Class;
        if (type_iri == kOwlObjectProperty) return TermKind::ObjectProperty;
        if (type_iri == kOwlDatatypeProperty) return TermKind::DataProperty;
        return std::nullopt;
    };

    for (const auto& t : triples) {
        if (t.predicate != kRdfType || !t.object.is_iri()) continue;
        if (auto k = declared_kind(t.object.value)) {
            auto [it, fresh] = inv.terms.emplace(t.subject,
                                                 inventory_detail::make_term(t.subject, *k));
            if (!fresh && it->second.kind == TermKind::Unknown) it->second.kind = *k;
        }
    }
    // IRIs used as a type but never declared themselves.
    for (const auto& t : triples) {
        if (t.predicate != kRdfType || !t.object.is_iri()) continue;
        const std::string& type_iri = t.object.value;
        if (declared_kind(type_iri)) continue;
        inv.terms.emplace(type_iri, inventory_detail::make_term(type_iri, TermKind::Unknown));
    }
    for (const auto& t : triples) {
        if (t.predicate != kRdfsLabel || t.object.is_iri()) continue;
        auto it = inv.terms.find(t.subject);
        if (it != inv.terms.end()) it->second.labels.insert(t.object.value);
    }
    return inv;
}

// Flat inventory format: one record per line, tab-separated:
//   iri <TAB> kind <TAB> pipe-separated extra labels
// '#' comment lines and blank lines allowed; the third field may be empty.
inline OntologyInventory load_inventory_text(const std::string& text,
                                             const std::string& ontology_id) {
    OntologyInventory inv;
    inv.ontology_id = ontology_id;
    int line_no = 0;
    for (const auto& raw : split(text, '\n')) {
        ++line_no;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        auto fields = split(raw, '\t');
        if (fields.size() < 2)
            throw parse_error("inventory: expected at least 2 tab-separated fields", line_no);
        Term t;
        t.iri = trim(fields[0]);
        if (t.iri.empty()) throw parse_error("inventory: empty iri", line_no);
        auto kind = term_kind_from_string(trim(fields[1]));
        if (!kind) throw parse_error("inventory: unknown kind '" + trim(fields[1]) + "'", line_no);
        t.kind = *kind;
        t.labels.insert(local_name(t.iri));
        if (fields.size() >= 3) {
            for (const auto& l : split(fields[2], '|')) {
                std::string lbl = trim(l);
                if (!lbl.empty()) t.labels.insert(lbl);
            }
        }
        if (inv.terms.count(t.iri))
            throw parse_error("inventory: duplicate iri " + t.iri, line_no);
        inv.terms.emplace(t.iri, std::move(t));
    }
    return inv;
}

inline OntologyInventory load_inventory_file(const std::string& path,
                                             const std::string& ontology_id) {
    return load_inventory_text(read_file(path), ontology_id);
}

// Loads either a Turtle subset file (.ttl) or a flat inventory file.
inline OntologyInventory load_ontology(const std::string& path, const std::string& ontology_id) {
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".ttl")
        return extract_inventory(parse_turtle(read_file(path)), ontology_id);
    return load_inventory_file(path, ontology_id);
}

// Union of two inventories. Labels union on collision; a known kind beats
// Unknown; two different known kinds are irreconcilable.
inline OntologyInventory merge_inventories(const OntologyInventory& a,
                                           const OntologyInventory& b) {
    OntologyInventory out = a;
    std::vector<std::string> conflicts;
    for (const auto& [iri, term] : b.terms) {
        auto it = out.terms.find(iri);
        if (it == out.terms.end()) {
            out.terms.emplace(iri, term);
            continue;
        }
        Term& mine = it->second;
        mine.labels.insert(term.labels.begin(), term.labels.end());
        if (mine.kind == TermKind::Unknown) {
            mine.kind = term.kind;
        } else if (term.kind != TermKind::Unknown && term.kind != mine.kind) {
            conflicts.push_back(iri);
        }
    }
    if (!conflicts.empty()) {
        std::string msg = "merge_inventories: irreconcilable kind conflict for:";
        for (const auto& c : conflicts) msg += " " + c;
        throw input_error(msg);
    }
    return out;
}

}  // namespace flexcover
