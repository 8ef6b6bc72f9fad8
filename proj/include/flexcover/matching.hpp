#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "flexcover/catalog.hpp"
#include "flexcover/errors.hpp"
#include "flexcover/inventory.hpp"
#include "flexcover/text.hpp"

namespace flexcover {

// Curated equivalence table over normalized phrases, closed under symmetry.
struct SynonymTable {
    std::map<std::string, std::set<std::string>> entries;

    void add(const std::string& a, const std::string& b) {
        std::string na = normalize_phrase(a);
        std::string nb = normalize_phrase(b);
        if (na.empty() || nb.empty() || na == nb) return;
        entries[na].insert(nb);
        entries[nb].insert(na);
    }

    const std::set<std::string>* equivalents(const std::string& normalized_phrase) const {
        auto it = entries.find(normalized_phrase);
        return it == entries.end() ? nullptr : &it->second;
    }
};

// File format: one entry per line, "phrase <TAB> phrase"; '#' comments allowed.
inline SynonymTable load_synonyms_text(const std::string& text) {
    SynonymTable table;
    int line_no = 0;
    for (const auto& raw : split(text, '\n')) {
        ++line_no;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        auto fields = split(raw, '\t');
        if (fields.size() != 2)
            throw parse_error("synonyms: expected exactly 2 tab-separated phrases", line_no);
        std::string a = trim(fields[0]);
        std::string b = trim(fields[1]);
        if (a.empty() || b.empty()) throw parse_error("synonyms: empty phrase", line_no);
        table.add(a, b);
    }
    return table;
}

inline SynonymTable load_synonyms(const std::string& path) {
    return load_synonyms_text(read_file(path));
}

enum class MatchRule { Direct, Synonym, Composite };

inline const char* to_string(MatchRule r) {
    switch (r) {
        case MatchRule::Direct: return "Direct";
        case MatchRule::Synonym: return "Synonym";
        case MatchRule::Composite: return "Composite";
    }
    return "?";
}

struct MatchEvidence {
    ConceptDescriptor descriptor;
    std::string matched_iri;
    MatchRule rule = MatchRule::Direct;
    std::string matched_label;

    bool operator==(const MatchEvidence&) const = default;
};

enum class Provenance { Auto, Adjudicated };

inline const char* to_string(Provenance p) {
    return p == Provenance::Auto ? "Auto" : "Adjudicated";
}

struct SatisfactionRecord {
    std::string ir_id;
    std::string ontology_id;
    bool satisfied = false;
    std::vector<MatchEvidence> evidence;
    Provenance provenance = Provenance::Auto;
};

// A figure published for a rendered cell that differs from the recomputed
// value; renderers display it, machine formats carry both.
struct PublishedPercentage {
    IRClass ir_class = IRClass::RegulatoryConstraints;
    std::string ontology_id;
    int percentage = 0;
    std::string note;
};

// Curated per-(IR, ontology) satisfaction pins overriding the auto matcher.
struct AdjudicationOverlay {
    struct Pin {
        bool satisfied = false;
        std::string note;
    };
    std::map<std::pair<std::string, std::string>, Pin> pins;  // (ir_id, ontology_id)
    std::map<IRClass, int> denominator_overrides;
    std::vector<PublishedPercentage> published_percentages;
};

inline AdjudicationOverlay load_overlay_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("overlay: ") + e.what(),
                          detail::byte_to_line(text, e.byte));
    }
    AdjudicationOverlay overlay;
    for (const auto& p : j.value("pins", nlohmann::json::array())) {
        std::pair<std::string, std::string> key = {p.at("ir_id").get<std::string>(),
                                                   p.at("ontology_id").get<std::string>()};
        if (overlay.pins.count(key))
            throw input_error("overlay: duplicate pin for (" + key.first + ", " + key.second + ")");
        overlay.pins[key] = {p.at("satisfied").get<bool>(), p.value("note", "")};
    }
    if (j.contains("denominator_overrides")) {
        for (const auto& [k, v] : j.at("denominator_overrides").items()) {
            auto cls = ir_class_from_string(k);
            if (!cls) throw input_error("overlay: unknown ir_class in denominator_overrides: " + k);
            int d = v.get<int>();
            if (d <= 0) throw input_error("overlay: denominator override must be positive for " + k);
            overlay.denominator_overrides[*cls] = d;
        }
    }
    for (const auto& p : j.value("published_percentages", nlohmann::json::array())) {
        PublishedPercentage pub;
        auto cls = ir_class_from_string(p.at("ir_class").get<std::string>());
        if (!cls) throw input_error("overlay: unknown ir_class in published_percentages");
        pub.ir_class = *cls;
        pub.ontology_id = p.at("ontology_id").get<std::string>();
        pub.percentage = p.at("percentage").get<int>();
        pub.note = p.value("note", "");
        overlay.published_percentages.push_back(std::move(pub));
    }
    return overlay;
}

inline AdjudicationOverlay load_overlay(const std::string& path) {
    return load_overlay_text(read_file(path));
}

struct SatisfactionMatrix {
    std::map<std::pair<std::string, std::string>, SatisfactionRecord> records;
    std::vector<std::string> ontology_ids;  // load order preserved for reporting
    bool overlay_applied = false;

    const SatisfactionRecord* find(const std::string& ir_id, const std::string& ontology_id) const {
        auto it = records.find({ir_id, ontology_id});
        return it == records.end() ? nullptr : &it->second;
    }
};

namespace matching_detail {

inline bool kind_matches(TermKindHint hint, TermKind kind) {
    switch (hint) {
        case TermKindHint::Any: return true;
        case TermKindHint::Class: return kind == TermKind::Class;
        case TermKindHint::ObjectProperty: return kind == TermKind::ObjectProperty;
        case TermKindHint::DataProperty: return kind == TermKind::DataProperty;
    }
    return false;
}

}  // namespace matching_detail

// All lexical matches of one descriptor against an inventory, ordered
// Direct before Synonym, then by term IRI.
inline std::vector<MatchEvidence> match_descriptor(const ConceptDescriptor& d,
                                                   const OntologyInventory& inv,
                                                   const SynonymTable& syn) {
    const std::string want = normalize_phrase(d.phrase);
    const std::set<std::string>* equivalents = syn.equivalents(want);

    std::vector<MatchEvidence> direct, synonym;
    for (const auto& [iri, term] : inv.terms) {
        if (!matching_detail::kind_matches(d.kind_hint, term.kind)) continue;
        bool hit_direct = false;
        std::string direct_label, synonym_label;
        for (const auto& label : term.labels) {
            std::string have = normalize_phrase(label);
            if (have == want) {
                hit_direct = true;
                direct_label = label;
                break;
            }
            if (synonym_label.empty() && equivalents && equivalents->count(have))
                synonym_label = label;
        }
        if (hit_direct)
            direct.push_back({d, iri, MatchRule::Direct, direct_label});
        else if (!synonym_label.empty())
            synonym.push_back({d, iri, MatchRule::Synonym, synonym_label});
    }
    // Map iteration already yields each bucket in iri order.
    direct.insert(direct.end(), synonym.begin(), synonym.end());
    return direct;
}

// The containment test: satisfied iff every component descriptor matches.
// Multi-descriptor satisfaction is marked Composite on every evidence entry.
inline SatisfactionRecord evaluate_ir(const InformationalRequirement& ir,
                                      const OntologyInventory& inv, const SynonymTable& syn) {
    SatisfactionRecord rec;
    rec.ir_id = ir.id;
    rec.ontology_id = inv.ontology_id;
    rec.provenance = Provenance::Auto;
    rec.satisfied = true;
    std::vector<MatchEvidence> all;
    for (const auto& d : ir.components) {
        auto hits = match_descriptor(d, inv, syn);
        if (hits.empty()) {
            rec.satisfied = false;
            all.clear();
            break;
        }
        all.insert(all.end(), hits.begin(), hits.end());
    }
    if (rec.satisfied) {
        if (ir.components.size() > 1)
            for (auto& e : all) e.rule = MatchRule::Composite;
        rec.evidence = std::move(all);
    }
    return rec;
}

inline SatisfactionMatrix build_matrix(const Catalog& catalog,
                                       const std::vector<OntologyInventory>& inventories,
                                       const SynonymTable& syn,
                                       const AdjudicationOverlay* overlay = nullptr) {
    SatisfactionMatrix m;
    std::set<std::string> known_ontologies;
    for (const auto& inv : inventories) {
        m.ontology_ids.push_back(inv.ontology_id);
        known_ontologies.insert(inv.ontology_id);
    }
    if (overlay) {
        for (const auto& [key, pin] : overlay->pins) {
            if (!catalog.find(key.first))
                throw input_error("overlay pin references unknown ir_id: " + key.first);
            if (!known_ontologies.count(key.second))
                throw input_error("overlay pin references unknown ontology_id: " + key.second);
        }
    }
    for (const auto& ir : catalog.irs) {
        for (const auto& inv : inventories) {
            SatisfactionRecord rec = evaluate_ir(ir, inv, syn);
            if (overlay) {
                auto it = overlay->pins.find({ir.id, inv.ontology_id});
                if (it != overlay->pins.end()) {
                    rec.satisfied = it->second.satisfied;
                    rec.provenance = Provenance::Adjudicated;
                    if (!rec.satisfied) rec.evidence.clear();
                }
            }
            m.records[{ir.id, inv.ontology_id}] = std::move(rec);
        }
    }
    m.overlay_applied = overlay != nullptr;
    return m;
}

// How well the automatic matcher recovers the curated pins.
struct AgreementReport {
    struct PerOntology {
        std::string ontology_id;
        double precision = 1.0;
        double recall = 1.0;
        bool precision_degenerate = false;  // no auto positives: 1.0 by convention
        bool recall_degenerate = false;     // no pinned positives: 1.0 by convention
    };
    std::vector<PerOntology> per_ontology;
    std::vector<std::pair<std::string, std::string>> disagreements;  // (ir_id, ontology_id)
};

inline AgreementReport compare_auto_vs_overlay(const SatisfactionMatrix& matrix_auto,
                                               const AdjudicationOverlay& overlay) {
    AgreementReport report;
    std::map<std::string, std::array<int, 3>> tallies;  // tp, auto_pos, pin_pos
    for (const auto& id : matrix_auto.ontology_ids) tallies[id] = {0, 0, 0};
    for (const auto& [key, pin] : overlay.pins) {
        const SatisfactionRecord* rec = matrix_auto.find(key.first, key.second);
        if (!rec) continue;
        auto it = tallies.find(key.second);
        if (it == tallies.end()) continue;
        auto& [tp, auto_pos, pin_pos] = it->second;
        if (rec->satisfied) ++auto_pos;
        if (pin.satisfied) ++pin_pos;
        if (rec->satisfied && pin.satisfied) ++tp;
        if (rec->satisfied != pin.satisfied) report.disagreements.push_back(key);
    }
    std::sort(report.disagreements.begin(), report.disagreements.end());
    for (const auto& id : matrix_auto.ontology_ids) {
        auto [tp, auto_pos, pin_pos] = tallies.at(id);
        AgreementReport::PerOntology p;
        p.ontology_id = id;
        p.precision_degenerate = auto_pos == 0;
        p.recall_degenerate = pin_pos == 0;
        p.precision = auto_pos == 0 ? 1.0 : static_cast<double>(tp) / auto_pos;
        p.recall = pin_pos == 0 ? 1.0 : static_cast<double>(tp) / pin_pos;
        report.per_ontology.push_back(std::move(p));
    }
    return report;
}

}  // namespace flexcover
