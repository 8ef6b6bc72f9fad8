#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "flexcover/errors.hpp"
#include "flexcover/text.hpp"

namespace flexcover {

// The nine conceptual categories of informational requirements.
enum class IRClass {
    RegulatoryConstraints,
    HvacSystemParameters,
    BuildingOperationSettings,
    DrSchedulingManagement,
    EvChargingInfrastructure,
    EnvironmentalFactorsForecasts,
    TimeBasedParameters,
    ForecastsOfEnergyBaseline,
    EnergyConsumptionMetering,
};

inline constexpr std::array<IRClass, 9> kAllClasses = {
    IRClass::RegulatoryConstraints,    IRClass::HvacSystemParameters,
    IRClass::BuildingOperationSettings, IRClass::DrSchedulingManagement,
    IRClass::EvChargingInfrastructure,  IRClass::EnvironmentalFactorsForecasts,
    IRClass::TimeBasedParameters,       IRClass::ForecastsOfEnergyBaseline,
    IRClass::EnergyConsumptionMetering,
};

inline const char* to_string(IRClass c) {
    switch (c) {
        case IRClass::RegulatoryConstraints: return "RegulatoryConstraints";
        case IRClass::HvacSystemParameters: return "HvacSystemParameters";
        case IRClass::BuildingOperationSettings: return "BuildingOperationSettings";
        case IRClass::DrSchedulingManagement: return "DrSchedulingManagement";
        case IRClass::EvChargingInfrastructure: return "EvChargingInfrastructure";
        case IRClass::EnvironmentalFactorsForecasts: return "EnvironmentalFactorsForecasts";
        case IRClass::TimeBasedParameters: return "TimeBasedParameters";
        case IRClass::ForecastsOfEnergyBaseline: return "ForecastsOfEnergyBaseline";
        case IRClass::EnergyConsumptionMetering: return "EnergyConsumptionMetering";
    }
    return "?";
}

// Row label used by the rendered coverage table.
inline const char* display_name(IRClass c) {
    switch (c) {
        case IRClass::RegulatoryConstraints: return "Regulatory Constraints";
        case IRClass::HvacSystemParameters: return "HVAC System Parameters";
        case IRClass::BuildingOperationSettings:
            return "Building Operation Settings & Measurements";
        case IRClass::DrSchedulingManagement:
            return "Demand Response (DR) Scheduling and Management";
        case IRClass::EvChargingInfrastructure:
            return "Electric Vehicle (EV) Charging Infrastructure";
        case IRClass::EnvironmentalFactorsForecasts:
            return "Environmental Factors and Forecasts";
        case IRClass::TimeBasedParameters: return "Time-Based Parameters";
        case IRClass::ForecastsOfEnergyBaseline: return "Forecasts of Energy Baseline";
        case IRClass::EnergyConsumptionMetering: return "Energy Consumption and Metering";
    }
    return "?";
}

inline std::optional<IRClass> ir_class_from_string(const std::string& s) {
    for (IRClass c : kAllClasses)
        if (s == to_string(c)) return c;
    return std::nullopt;
}

// The four stages of DR participation.
enum class Stage {
    EnrollmentQualification,
    SchedulingAwardNotification,
    DeploymentRealtimeComms,
    MeasurementPerformance,
};

inline constexpr std::array<Stage, 4> kAllStages = {
    Stage::EnrollmentQualification, Stage::SchedulingAwardNotification,
    Stage::DeploymentRealtimeComms, Stage::MeasurementPerformance,
};

inline const char* to_string(Stage s) {
    switch (s) {
        case Stage::EnrollmentQualification: return "EnrollmentQualification";
        case Stage::SchedulingAwardNotification: return "SchedulingAwardNotification";
        case Stage::DeploymentRealtimeComms: return "DeploymentRealtimeComms";
        case Stage::MeasurementPerformance: return "MeasurementPerformance";
    }
    return "?";
}

inline const char* stage_code(Stage s) {
    switch (s) {
        case Stage::EnrollmentQualification: return "E&Q";
        case Stage::SchedulingAwardNotification: return "S&AN";
        case Stage::DeploymentRealtimeComms: return "D&RC";
        case Stage::MeasurementPerformance: return "M&P";
    }
    return "?";
}

inline std::optional<Stage> stage_from_string(const std::string& s) {
    for (Stage st : kAllStages)
        if (s == to_string(st)) return st;
    return std::nullopt;
}

struct SourceWork {
    std::string id;
    std::string citation;
};

enum class TermKindHint { Class, ObjectProperty, DataProperty, Any };

inline const char* to_string(TermKindHint k) {
    switch (k) {
        case TermKindHint::Class: return "Class";
        case TermKindHint::ObjectProperty: return "ObjectProperty";
        case TermKindHint::DataProperty: return "DataProperty";
        case TermKindHint::Any: return "Any";
    }
    return "?";
}

// One element of an IR's component set.
struct ConceptDescriptor {
    std::string phrase;
    TermKindHint kind_hint = TermKindHint::Any;

    bool operator==(const ConceptDescriptor&) const = default;
};

struct InformationalRequirement {
    std::string id;
    std::string name;
    IRClass ir_class = IRClass::RegulatoryConstraints;
    std::set<Stage> stages;
    std::vector<ConceptDescriptor> components;
    std::set<std::string> sources;
};

struct Catalog {
    std::string version;
    std::vector<SourceWork> works;
    std::vector<InformationalRequirement> irs;

    const InformationalRequirement* find(const std::string& id) const {
        for (const auto& ir : irs)
            if (ir.id == id) return &ir;
        return nullptr;
    }
};

// Catalog invariant check result. Violations are data, not errors.
struct CatalogViolation {
    std::string ir_id;  // empty for catalog-level problems
    std::string rule;
    std::string detail;
};

namespace detail {

inline int byte_to_line(const std::string& text, std::size_t byte) {
    int line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

inline Catalog catalog_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("catalog: ") + e.what(), byte_to_line(text, e.byte));
    }
    Catalog cat;
    cat.version = j.value("version", "");
    for (const auto& w : j.at("works")) {
        cat.works.push_back({w.at("id").get<std::string>(), w.value("citation", "")});
    }
    std::set<std::string> seen_ids;
    for (const auto& e : j.at("irs")) {
        InformationalRequirement ir;
        ir.id = e.at("id").get<std::string>();
        if (!seen_ids.insert(ir.id).second)
            throw input_error("catalog: duplicate IR id: " + ir.id);
        ir.name = e.at("name").get<std::string>();
        auto cls = ir_class_from_string(e.at("ir_class").get<std::string>());
        if (!cls) throw input_error("catalog: unknown ir_class for " + ir.id);
        ir.ir_class = *cls;
        for (const auto& s : e.at("stages")) {
            auto st = stage_from_string(s.get<std::string>());
            if (!st) throw input_error("catalog: unknown stage for " + ir.id);
            ir.stages.insert(*st);
        }
        for (const auto& c : e.at("components")) {
            ConceptDescriptor d;
            d.phrase = c.at("phrase").get<std::string>();
            if (c.contains("kind_hint")) {
                std::string k = c.at("kind_hint").get<std::string>();
                if (k == "Class") d.kind_hint = TermKindHint::Class;
                else if (k == "ObjectProperty") d.kind_hint = TermKindHint::ObjectProperty;
                else if (k == "DataProperty") d.kind_hint = TermKindHint::DataProperty;
                else if (k == "Any") d.kind_hint = TermKindHint::Any;
                else throw input_error("catalog: unknown kind_hint for " + ir.id);
            }
            ir.components.push_back(std::move(d));
        }
        for (const auto& s : e.at("sources")) ir.sources.insert(s.get<std::string>());
        cat.irs.push_back(std::move(ir));
    }
    std::set<std::string> seen_works;
    for (const auto& w : cat.works)
        if (!seen_works.insert(w.id).second)
            throw input_error("catalog: duplicate work id: " + w.id);
    for (const auto& ir : cat.irs)
        for (const auto& s : ir.sources)
            if (!seen_works.count(s))
                throw input_error("catalog: dangling source reference '" + s + "' in IR " + ir.id);
    return cat;
}

}  // namespace detail

const char* builtin_catalog_json();  // defined by the generated data header

// Loads a catalog from a file, or the embedded default when path is "builtin".
inline Catalog load_catalog(const std::string& path) {
    if (path == "builtin") return detail::catalog_from_json(builtin_catalog_json());
    std::string text = read_file(path);
    if (trim(text).empty()) throw parse_error("catalog: empty file: " + path, 1);
    return detail::catalog_from_json(text);
}

inline std::vector<CatalogViolation> validate_catalog(const Catalog& c) {
    std::vector<CatalogViolation> out;
    std::set<std::string> ids;
    std::set<std::string> works;
    for (const auto& w : c.works) {
        if (!works.insert(w.id).second)
            out.push_back({"", "unique-work-id", "duplicate work id: " + w.id});
    }
    for (const auto& ir : c.irs) {
        if (!ids.insert(ir.id).second)
            out.push_back({ir.id, "unique-ir-id", "duplicate IR id"});
        if (ir.components.empty())
            out.push_back({ir.id, "components-non-empty", "IR has no components"});
        if (ir.stages.empty())
            out.push_back({ir.id, "stages-non-empty", "IR has no stages"});
        if (ir.sources.empty())
            out.push_back({ir.id, "sources-non-empty", "IR has no sources"});
        for (const auto& d : ir.components) {
            if (normalize(d.phrase).empty())
                out.push_back({ir.id, "component-phrase-non-empty",
                               "component phrase empty after normalization"});
        }
        for (const auto& s : ir.sources) {
            if (!works.count(s))
                out.push_back({ir.id, "source-resolves", "dangling source reference: " + s});
        }
    }
    return out;
}

inline std::vector<InformationalRequirement> query_irs(const Catalog& c,
                                                       std::optional<IRClass> class_filter,
                                                       std::optional<Stage> stage_filter) {
    std::vector<InformationalRequirement> out;
    for (const auto& ir : c.irs) {
        if (class_filter && ir.ir_class != *class_filter) continue;
        if (stage_filter && !ir.stages.count(*stage_filter)) continue;
        out.push_back(ir);
    }
    return out;
}

inline std::map<IRClass, int> class_counts(const Catalog& c) {
    std::map<IRClass, int> out;
    for (IRClass cls : kAllClasses) out[cls] = 0;
    for (const auto& ir : c.irs) out[ir.ir_class]++;
    return out;
}

struct CurvePoint {
    int index = 0;             // 1-based position in the ordering
    int cumulative_unique = 0; // distinct IRs attributable to the first `index` works
};

// Cumulative unique IRs as works are considered in the given order.
inline std::vector<CurvePoint> discovery_curve(const Catalog& c,
                                               const std::vector<std::string>& ordering) {
    std::set<std::string> known;
    for (const auto& w : c.works) known.insert(w.id);
    std::set<std::string> seen_order;
    for (const auto& w : ordering) {
        if (!known.count(w)) throw input_error("discovery_curve: unknown work id: " + w);
        if (!seen_order.insert(w).second)
            throw input_error("discovery_curve: duplicate work id in ordering: " + w);
    }
    for (const auto& ir : c.irs)
        for (const auto& s : ir.sources)
            if (!seen_order.count(s))
                throw input_error("discovery_curve: ordering does not cover referenced work: " + s);

    std::vector<CurvePoint> out;
    std::set<std::string> discovered;
    int k = 0;
    for (const auto& w : ordering) {
        ++k;
        for (const auto& ir : c.irs)
            if (ir.sources.count(w)) discovered.insert(ir.id);
        out.push_back({k, static_cast<int>(discovered.size())});
    }
    return out;
}

// Default work ordering: catalog order, which follows first appearance in the
// stage-by-stage source review.
inline std::vector<std::string> default_work_ordering(const Catalog& c) {
    std::vector<std::string> out;
    for (const auto& w : c.works) out.push_back(w.id);
    return out;
}

struct LogFit {
    double a = 0.0;
    double b = 0.0;
    double r2 = 0.0;
};

// Least-squares fit of y = a*ln(x) + b with the coefficient of determination.
inline LogFit fit_log_trend(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2) throw input_error("fit_log_trend: need at least 2 points");
    for (const auto& [x, y] : points)
        if (x < 1.0) throw input_error("fit_log_trend: x values must be >= 1");
    const std::size_t n = points.size();
    double mx = 0, my = 0;
    for (const auto& [x, y] : points) {
        mx += std::log(x);
        my += y;
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0, sxy = 0;
    for (const auto& [x, y] : points) {
        double lx = std::log(x) - mx;
        sxx += lx * lx;
        sxy += lx * (y - my);
    }
    if (sxx == 0.0) throw input_error("fit_log_trend: zero variance in ln(x)");
    LogFit fit;
    fit.a = sxy / sxx;
    fit.b = my - fit.a * mx;
    double ss_res = 0, ss_tot = 0;
    for (const auto& [x, y] : points) {
        double pred = fit.a * std::log(x) + fit.b;
        ss_res += (y - pred) * (y - pred);
        ss_tot += (y - my) * (y - my);
    }
    fit.r2 = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
    return fit;
}

}  // namespace flexcover
