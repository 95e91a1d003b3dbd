#include "locgh/doc.hpp"

#include <fstream>
#include <sstream>

#include "locgh/errors.hpp"

namespace locgh {

Json rational_to_json(const Rational& q) { return Json(format_rational(q)); }

Rational rational_from_json(const Json& j) {
    if (j.is_string()) {
        auto q = parse_rational(j.get<std::string>());
        if (!q) throw ParseError("cannot parse rational: " + j.get<std::string>());
        return *q;
    }
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
    if (j.is_number_float()) return rat_from_double(j.get<double>());
    throw ParseError("expected a number or numeric string");
}

namespace {

PointId require_point(const FiniteMetricSpace& space, const std::string& label,
                      const std::string& what) {
    auto p = space.find(label);
    if (!p) throw ParseError(what + ": unknown point label '" + label + "'");
    return *p;
}

StructureValue parse_structure_json(const Json& j, const StructureContext& ctx);

SpaceTransform parse_transform(const Json& j) {
    SpaceTransform t;
    if (j.contains("power")) t.power = j.at("power").get<int>();
    if (j.contains("aux")) t.aux_name = j.at("aux").get<std::string>();
    return t;
}

StructureValue parse_structure_json(const Json& j, const StructureContext& ctx) {
    if (!j.is_object() || !j.contains("kind")) throw ParseError("structure needs a 'kind'");
    const std::string kind = j.at("kind").get<std::string>();
    StructureValue v;
    if (kind == "point") {
        v.kind = StructureKind::Point;
        v.point = require_point(*ctx.space, j.at("point").get<std::string>(), "point structure");
    } else if (kind == "tuple") {
        v.kind = StructureKind::Tuple;
        for (const auto& p : j.at("points"))
            v.tuple.push_back(require_point(*ctx.space, p.get<std::string>(), "tuple structure"));
    } else if (kind == "fixed") {
        v.kind = StructureKind::Fixed;
        v.aux_name = j.at("space").get<std::string>();
        v.aux_point = require_point(ctx.aux(v.aux_name).space, j.at("point").get<std::string>(),
                                    "fixed structure");
    } else if (kind == "subset") {
        v.kind = StructureKind::Subset;
        FiniteSubset members;
        for (const auto& p : j.at("members"))
            members.push_back(require_point(*ctx.space, p.get<std::string>(), "subset structure"));
        v.subset = normalize_subset(std::move(members));
    } else if (kind == "measure") {
        v.kind = StructureKind::Measure;
        std::vector<std::pair<PointId, Rational>> raw;
        for (const auto& [label, mass] : j.at("weights").items())
            raw.emplace_back(require_point(*ctx.space, label, "measure structure"),
                             rational_from_json(mass));
        v.measure = FiniteMeasure::from_weights(std::move(raw));
    } else if (kind == "step_cadlag") {
        v.kind = StructureKind::StepCadlag;
        for (const auto& jump : j.at("jumps")) {
            v.times.push_back(rational_from_json(jump.at("time")));
            v.children.push_back(parse_structure_json(jump.at("value"), ctx));
        }
        if (j.contains("horizon") && !(j.at("horizon").is_string() && j.at("horizon") == "inf"))
            v.horizon = rational_from_json(j.at("horizon"));
    } else if (kind == "var_function") {
        v.kind = StructureKind::VarFunction;
        if (j.contains("transform")) v.transform = parse_transform(j.at("transform"));
        TransformedSpace T = transform_space(ctx, v.transform);
        std::vector<std::pair<PointId, StructureValue>> entries;
        for (const auto& e : j.at("points")) {
            PointId at = require_point(T.space, e.at("at").get<std::string>(), "function domain");
            entries.emplace_back(at, parse_structure_json(e.at("value"), ctx));
        }
        std::sort(entries.begin(), entries.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (auto& [d, val] : entries) {
            v.domain.push_back(d);
            v.children.push_back(std::move(val));
        }
    } else if (kind == "l_zero") {
        v.kind = StructureKind::LZero;
        for (const auto& t : j.at("times")) v.times.push_back(rational_from_json(t));
        for (const auto& w : j.at("weights")) v.weights.push_back(rational_from_json(w));
        for (const auto& val : j.at("values")) v.children.push_back(parse_structure_json(val, ctx));
    } else if (kind == "law") {
        v.kind = StructureKind::Law;
        for (const auto& atom : j.at("atoms")) {
            v.weights.push_back(rational_from_json(atom.at("weight")));
            v.children.push_back(parse_structure_json(atom.at("value"), ctx));
        }
    } else if (kind == "product") {
        v.kind = StructureKind::Product;
        for (const auto& part : j.at("parts")) v.children.push_back(parse_structure_json(part, ctx));
    } else if (kind == "composed") {
        v.kind = StructureKind::Composed;
        v.transform = parse_transform(j.at("transform"));
        TransformedSpace T = transform_space(ctx, v.transform);
        StructureContext inner{&T.space, ctx.aux_spaces, ctx.tol};
        v.children.push_back(parse_structure_json(j.at("inner"), inner));
    } else {
        throw ParseError("unknown structure kind: " + kind);
    }
    return v;
}

Json transform_to_json(const SpaceTransform& t) {
    Json j = Json::object();
    j["power"] = t.power;
    if (!t.aux_name.empty()) j["aux"] = t.aux_name;
    return j;
}

Json structure_json(const StructureContext& ctx, const StructureValue& v) {
    Json j = Json::object();
    switch (v.kind) {
        case StructureKind::Point:
            j["kind"] = "point";
            j["point"] = ctx.space->label(v.point);
            break;
        case StructureKind::Tuple: {
            j["kind"] = "tuple";
            Json pts = Json::array();
            for (PointId p : v.tuple) pts.push_back(ctx.space->label(p));
            j["points"] = std::move(pts);
            break;
        }
        case StructureKind::Fixed:
            j["kind"] = "fixed";
            j["space"] = v.aux_name;
            j["point"] = ctx.aux(v.aux_name).space.label(v.aux_point);
            break;
        case StructureKind::Subset: {
            j["kind"] = "subset";
            Json mem = Json::array();
            for (PointId p : v.subset) mem.push_back(ctx.space->label(p));
            j["members"] = std::move(mem);
            break;
        }
        case StructureKind::Measure: {
            j["kind"] = "measure";
            Json w = Json::object();
            for (const auto& [p, mass] : v.measure.weights)
                w[ctx.space->label(p)] = rational_to_json(mass);
            j["weights"] = std::move(w);
            break;
        }
        case StructureKind::StepCadlag: {
            j["kind"] = "step_cadlag";
            Json jumps = Json::array();
            for (std::size_t i = 0; i < v.times.size(); ++i) {
                Json jump = Json::object();
                jump["time"] = rational_to_json(v.times[i]);
                jump["value"] = structure_json(ctx, v.children[i]);
                jumps.push_back(std::move(jump));
            }
            j["jumps"] = std::move(jumps);
            j["horizon"] = v.horizon ? rational_to_json(*v.horizon) : Json("inf");
            break;
        }
        case StructureKind::VarFunction: {
            j["kind"] = "var_function";
            j["transform"] = transform_to_json(v.transform);
            TransformedSpace T = transform_space(ctx, v.transform);
            Json pts = Json::array();
            for (std::size_t i = 0; i < v.domain.size(); ++i) {
                Json e = Json::object();
                e["at"] = T.space.label(v.domain[i]);
                e["value"] = structure_json(ctx, v.children[i]);
                pts.push_back(std::move(e));
            }
            j["points"] = std::move(pts);
            break;
        }
        case StructureKind::LZero: {
            j["kind"] = "l_zero";
            Json times = Json::array(), weights = Json::array(), values = Json::array();
            for (std::size_t i = 0; i < v.times.size(); ++i) {
                times.push_back(rational_to_json(v.times[i]));
                weights.push_back(rational_to_json(v.weights[i]));
                values.push_back(structure_json(ctx, v.children[i]));
            }
            j["times"] = std::move(times);
            j["weights"] = std::move(weights);
            j["values"] = std::move(values);
            break;
        }
        case StructureKind::Law: {
            j["kind"] = "law";
            Json atoms = Json::array();
            for (std::size_t i = 0; i < v.children.size(); ++i) {
                Json atom = Json::object();
                atom["weight"] = rational_to_json(v.weights[i]);
                atom["value"] = structure_json(ctx, v.children[i]);
                atoms.push_back(std::move(atom));
            }
            j["atoms"] = std::move(atoms);
            break;
        }
        case StructureKind::Product: {
            j["kind"] = "product";
            Json parts = Json::array();
            for (const auto& part : v.children) parts.push_back(structure_json(ctx, part));
            j["parts"] = std::move(parts);
            break;
        }
        case StructureKind::Composed: {
            j["kind"] = "composed";
            j["transform"] = transform_to_json(v.transform);
            TransformedSpace T = transform_space(ctx, v.transform);
            StructureContext inner{&T.space, ctx.aux_spaces, ctx.tol};
            j["inner"] = structure_json(inner, v.children.front());
            break;
        }
    }
    return j;
}

}  // namespace

SpaceParseOutcome parse_space_json(const Json& j) {
    SpaceParseOutcome out;
    if (!j.is_object() || !j.contains("labels")) throw ParseError("space needs 'labels'");
    std::vector<std::string> labels;
    for (const auto& l : j.at("labels")) labels.push_back(l.get<std::string>());

    if (j.contains("matrix")) {
        std::vector<std::vector<Rational>> dist;
        for (const auto& row : j.at("matrix")) {
            std::vector<Rational> r;
            for (const auto& x : row) r.push_back(rational_from_json(x));
            dist.push_back(std::move(r));
        }
        auto v = validate_space(labels, dist);
        if (std::holds_alternative<FiniteMetricSpace>(v))
            out.space = std::get<FiniteMetricSpace>(std::move(v));
        else
            out.diagnostics = std::get<std::vector<MetricDiagnostic>>(std::move(v));
    } else if (j.contains("edges")) {
        out.from_edges = true;
        std::vector<std::tuple<std::string, std::string, Rational>> edges;
        for (const auto& e : j.at("edges"))
            edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>(),
                               rational_from_json(e.at(2)));
        auto v = space_from_edges(labels, edges);
        if (std::holds_alternative<FiniteMetricSpace>(v))
            out.space = std::get<FiniteMetricSpace>(std::move(v));
        else
            out.diagnostics = std::get<std::vector<MetricDiagnostic>>(std::move(v));
    } else {
        throw ParseError("space needs 'matrix' or 'edges'");
    }
    return out;
}

Document parse_document(const Json& j) {
    if (!j.is_object()) throw ParseError("document must be a JSON object");
    Document doc;
    if (j.contains("schema_version")) doc.schema_version = j.at("schema_version").get<std::string>();
    if (!j.contains("space")) throw ParseError("document needs a 'space'");
    auto sp = parse_space_json(j.at("space"));
    if (!sp.space) {
        std::string msg = "invalid space:";
        for (const auto& d : sp.diagnostics) msg += " [" + d.message + "]";
        throw ParseError(msg);
    }
    doc.space = std::move(*sp.space);
    doc.from_edges = sp.from_edges;

    if (j.contains("auxiliary_spaces"))
        for (const auto& [name, aj] : j.at("auxiliary_spaces").items()) {
            auto asp = parse_space_json(aj);
            if (!asp.space) throw ParseError("invalid auxiliary space: " + name);
            PointId root = 0;
            if (aj.contains("root"))
                root = require_point(*asp.space, aj.at("root").get<std::string>(), "aux root");
            doc.aux_spaces.emplace(name, RootedSpace{std::move(*asp.space), root});
        }

    if (j.contains("root"))
        doc.root = require_point(doc.space, j.at("root").get<std::string>(), "root");
    if (j.contains("subset")) {
        FiniteSubset s;
        for (const auto& p : j.at("subset"))
            s.push_back(require_point(doc.space, p.get<std::string>(), "subset"));
        doc.subset = normalize_subset(std::move(s));
    }
    if (j.contains("measure")) {
        std::vector<std::pair<PointId, Rational>> raw;
        for (const auto& [label, mass] : j.at("measure").items())
            raw.emplace_back(require_point(doc.space, label, "measure"), rational_from_json(mass));
        doc.measure = FiniteMeasure::from_weights(std::move(raw));
    }
    if (j.contains("structure")) {
        StructureContext ctx = doc.context();
        doc.structure = parse_structure_json(j.at("structure"), ctx);
        try {
            validate_structure(ctx, *doc.structure);
        } catch (const ValidationError& e) {
            throw ParseError(std::string("invalid structure: ") + e.what());
        }
    }
    return doc;
}

Document parse_document_text(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("JSON parse error: ") + e.what());
    }
    return parse_document(j);
}

Document load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_document_text(buf.str());
}

Json space_to_json(const FiniteMetricSpace& space) {
    Json j = Json::object();
    Json labels = Json::array();
    for (const auto& l : space.labels()) labels.push_back(l);
    j["labels"] = std::move(labels);
    Json matrix = Json::array();
    for (std::size_t i = 0; i < space.size(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < space.size(); ++k)
            row.push_back(rational_to_json(space.dist(static_cast<PointId>(i), static_cast<PointId>(k))));
        matrix.push_back(std::move(row));
    }
    j["matrix"] = std::move(matrix);
    return j;
}

Json structure_to_json(const Document& doc, const StructureValue& v) {
    StructureContext ctx = doc.context();
    return structure_json(ctx, v);
}

Json document_to_json(const Document& doc) {
    Json j = Json::object();
    j["schema_version"] = doc.schema_version;
    j["space"] = space_to_json(doc.space);
    if (!doc.aux_spaces.empty()) {
        Json aux = Json::object();
        for (const auto& [name, rooted] : doc.aux_spaces) {
            Json a = space_to_json(rooted.space);
            a["root"] = rooted.space.label(rooted.root);
            aux[name] = std::move(a);
        }
        j["auxiliary_spaces"] = std::move(aux);
    }
    if (doc.root) j["root"] = doc.space.label(*doc.root);
    if (doc.subset) {
        Json s = Json::array();
        for (PointId p : *doc.subset) s.push_back(doc.space.label(p));
        j["subset"] = std::move(s);
    }
    if (doc.measure) {
        Json m = Json::object();
        for (const auto& [p, mass] : doc.measure->weights)
            m[doc.space.label(p)] = rational_to_json(mass);
        j["measure"] = std::move(m);
    }
    if (doc.structure) j["structure"] = structure_to_json(doc, *doc.structure);
    return j;
}

Correspondence parse_correspondence(const Json& j, const FiniteMetricSpace& left,
                                    const FiniteMetricSpace& right) {
    Correspondence corr;
    const Json& pairs = j.is_object() && j.contains("pairs") ? j.at("pairs") : j;
    if (!pairs.is_array()) throw ParseError("correspondence needs a 'pairs' array");
    for (const auto& p : pairs)
        corr.pairs.emplace_back(require_point(left, p.at(0).get<std::string>(), "correspondence"),
                                require_point(right, p.at(1).get<std::string>(), "correspondence"));
    if (!corr.covers(left.size(), right.size()))
        throw InvalidCorrespondence("correspondence must cover both spaces");
    return corr;
}

Json correspondence_to_json(const Correspondence& corr, const FiniteMetricSpace& left,
                            const FiniteMetricSpace& right) {
    Json pairs = Json::array();
    for (const auto& [a, b] : corr.pairs) {
        Json p = Json::array();
        p.push_back(left.label(a));
        p.push_back(right.label(b));
        pairs.push_back(std::move(p));
    }
    Json j = Json::object();
    j["pairs"] = std::move(pairs);
    return j;
}

}  // namespace locgh
