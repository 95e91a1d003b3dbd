#pragma once

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "locgh/glue.hpp"
#include "locgh/measures.hpp"
#include "locgh/metric_space.hpp"
#include "locgh/structures.hpp"
#include "locgh/subsets.hpp"

namespace locgh {

using Json = nlohmann::ordered_json;

// One input document: a space plus optional root, subset, measure, and
// structure, with named auxiliary spaces for fixed/composed kinds.
struct Document {
    std::string schema_version = "1";
    FiniteMetricSpace space;
    bool from_edges = false;  // distances completed from an edge list
    std::optional<PointId> root;
    std::optional<FiniteSubset> subset;
    std::optional<FiniteMeasure> measure;
    std::optional<StructureValue> structure;
    std::map<std::string, RootedSpace> aux_spaces;

    StructureContext context() const { return StructureContext{&space, &aux_spaces, {}}; }
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Space parse that reports metric-axiom diagnostics instead of throwing
// (other structural problems still throw ParseError).
struct SpaceParseOutcome {
    std::optional<FiniteMetricSpace> space;
    std::vector<MetricDiagnostic> diagnostics;
    bool from_edges = false;
};

SpaceParseOutcome parse_space_json(const Json& j);

Document parse_document(const Json& j);
Document parse_document_text(const std::string& text);
Document load_document(const std::string& path);

Json document_to_json(const Document& doc);
Json structure_to_json(const Document& doc, const StructureValue& v);
Json space_to_json(const FiniteMetricSpace& space);

// Rational serialization used across all documents: canonical "p/q".
Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);

Correspondence parse_correspondence(const Json& j, const FiniteMetricSpace& left,
                                    const FiniteMetricSpace& right);
Json correspondence_to_json(const Correspondence& corr, const FiniteMetricSpace& left,
                            const FiniteMetricSpace& right);

}  // namespace locgh
