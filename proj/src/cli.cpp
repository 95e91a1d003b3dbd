#include "locgh/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <random>

#include "locgh/doc.hpp"
#include "locgh/entropy.hpp"
#include "locgh/errors.hpp"
#include "locgh/ghdist.hpp"
#include "locgh/rsys.hpp"

namespace locgh {

namespace {

constexpr int kOk = 0;
constexpr int kValidationExit = 2;
constexpr int kComputationExit = 3;

Json result_header(const std::string& command) {
    Json j = Json::object();
    j["schema_version"] = "1";
    j["command"] = command;
    return j;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

std::string kind_str(BoundKind k) {
    switch (k) {
        case BoundKind::Exact: return "exact";
        case BoundKind::Upper: return "upper";
        case BoundKind::Lower: return "lower";
    }
    return "?";
}

void fill_result(Json& j, const DistanceResult& r, const FiniteMetricSpace* left,
                 const FiniteMetricSpace* right) {
    if (r.exact) j["value"] = rational_to_json(*r.exact);
    j["value_double"] = r.value;
    j["result_kind"] = kind_str(r.kind);
    if (!r.note.empty()) j["note"] = r.note;
    if (!r.terms.empty()) {
        Json t = Json::object();
        for (const auto& [name, val] : r.terms) t[name] = val;
        j["terms"] = std::move(t);
    }
    if (r.witness_corr && left && right)
        j["witness"] = correspondence_to_json(*r.witness_corr, *left, *right);
}

void require_same_space(const Document& a, const Document& b) {
    if (!a.space.same_as(b.space))
        throw SpaceMismatch("documents must describe the same space for this kind");
}

PointId require_root(const Document& d, const char* what) {
    if (!d.root) throw MissingRoot(std::string(what) + ": document needs a root");
    return *d.root;
}

FiniteSubset require_subset(const Document& d, const char* what) {
    if (!d.subset) throw ValidationError(std::string(what) + ": document needs a subset");
    return *d.subset;
}

FiniteMeasure require_measure(const Document& d, const char* what) {
    if (!d.measure) throw ValidationError(std::string(what) + ": document needs a measure");
    return *d.measure;
}

StructureValue require_structure(const Document& d, const char* what) {
    if (!d.structure) throw ValidationError(std::string(what) + ": document needs a structure");
    return *d.structure;
}

Correspondence random_correspondence(std::mt19937_64& rng, std::size_t n, std::size_t m) {
    Correspondence corr;
    std::uniform_int_distribution<std::size_t> left(0, n - 1), right(0, m - 1);
    for (std::size_t i = 0; i < n; ++i) corr.pairs.emplace_back(static_cast<PointId>(i),
                                                                static_cast<PointId>(right(rng)));
    for (std::size_t j = 0; j < m; ++j)
        corr.pairs.emplace_back(static_cast<PointId>(left(rng)), static_cast<PointId>(j));
    std::sort(corr.pairs.begin(), corr.pairs.end());
    corr.pairs.erase(std::unique(corr.pairs.begin(), corr.pairs.end()), corr.pairs.end());
    return corr;
}

struct DistOptions {
    std::string kind;
    std::string left_path, right_path;
    std::string corr_path;
    bool enumerate = false;
    std::string mode = "rooted";
    double tol = 1e-9;
};

int run_dist(const DistOptions& opt, std::ostream& out) {
    Document left = load_document(opt.left_path);
    Document right = load_document(opt.right_path);
    Json j = result_header("dist");
    j["kind"] = opt.kind;
    j["tolerances"] = Json::object();
    j["tolerances"]["eq_tol"] = opt.tol;
    j["tolerances"]["provenance"] =
        "exact rational arithmetic for order/min/max metrics; doubles only for "
        "exponential and logarithmic terms";
    if (left.from_edges || right.from_edges) j["distances_completed_from_edges"] = true;

    auto corr_for = [&](const FiniteMetricSpace& L, const FiniteMetricSpace& R,
                        PointId lr = -1, PointId rr = -1) -> Correspondence {
        if (!opt.corr_path.empty()) {
            std::ifstream in(opt.corr_path);
            if (!in) throw ParseError("cannot open correspondence file: " + opt.corr_path);
            Json cj = Json::parse(in, nullptr, true);
            return parse_correspondence(cj, L, R);
        }
        // Default: roots paired (when present) plus a covering completion.
        Correspondence corr;
        if (lr >= 0 && rr >= 0) corr.pairs.emplace_back(lr, rr);
        for (std::size_t i = 0; i < L.size(); ++i)
            corr.pairs.emplace_back(static_cast<PointId>(i),
                                    static_cast<PointId>(i % R.size()));
        for (std::size_t k = 0; k < R.size(); ++k)
            corr.pairs.emplace_back(static_cast<PointId>(k % L.size()), static_cast<PointId>(k));
        std::sort(corr.pairs.begin(), corr.pairs.end());
        corr.pairs.erase(std::unique(corr.pairs.begin(), corr.pairs.end()), corr.pairs.end());
        return corr;
    };

    if (opt.kind == "hausdorff") {
        require_same_space(left, right);
        ExtReal d = hausdorff(left.space, require_subset(left, "hausdorff"),
                              require_subset(right, "hausdorff"));
        if (d.infinite)
            j["value"] = "inf";
        else
            j["value"] = rational_to_json(d.value);
        j["value_double"] = d.infinite ? std::numeric_limits<double>::infinity() : to_double(d.value);
        j["result_kind"] = "exact";
    } else if (opt.kind == "local-hausdorff") {
        require_same_space(left, right);
        PointId x = require_root(left, "local-hausdorff");
        PointId y = require_root(right, "local-hausdorff");
        LocalMetricMode mode = opt.mode == "product" ? LocalMetricMode::Product : LocalMetricMode::Rooted;
        double v = local_hausdorff(left.space, require_subset(left, "local-hausdorff"), x,
                                   require_subset(right, "local-hausdorff"), y, mode);
        j["value_double"] = v;
        j["result_kind"] = "exact";
        j["note"] = "breakpoint-exact integral evaluated in double precision";
    } else if (opt.kind == "prohorov") {
        require_same_space(left, right);
        ProhorovResult r = prohorov(left.space, require_measure(left, "prohorov"),
                                    require_measure(right, "prohorov"));
        j["value"] = rational_to_json(r.value);
        j["value_double"] = to_double(r.value);
        j["result_kind"] = "exact";
        Json w = Json::object();
        if (r.witness.has_cut) {
            w["cut_side"] = r.witness.cut_from_left ? "left" : "right";
            Json cs = Json::array();
            for (PointId p : r.witness.cut_set) cs.push_back(left.space.label(p));
            w["cut_set"] = std::move(cs);
            w["cut_violation"] = rational_to_json(r.witness.cut_violation);
        }
        Json coup = Json::array();
        for (const auto& [a, b, f] : r.witness.coupling) {
            Json e = Json::array();
            e.push_back(left.space.label(a));
            e.push_back(left.space.label(b));
            e.push_back(rational_to_json(f));
            coup.push_back(std::move(e));
        }
        w["coupling"] = std::move(coup);
        j["witness"] = std::move(w);
    } else if (opt.kind == "vague") {
        require_same_space(left, right);
        PointId x = require_root(left, "vague");
        PointId y = require_root(right, "vague");
        LocalMetricMode mode = opt.mode == "product" ? LocalMetricMode::Product : LocalMetricMode::Rooted;
        double v = vague(left.space, require_measure(left, "vague"), x,
                         require_measure(right, "vague"), y, mode);
        j["value_double"] = v;
        j["result_kind"] = "exact";
        j["note"] = "breakpoint-exact integral evaluated in double precision";
    } else if (opt.kind == "skorohod") {
        require_same_space(left, right);
        PointId x = require_root(left, "skorohod");
        PointId y = require_root(right, "skorohod");
        StructureContext ctx = left.context();
        SkorohodResult r = skorohod_distance(ctx, require_structure(left, "skorohod"), x,
                                             require_structure(right, "skorohod"), y);
        j["value_double"] = r.value;
        j["result_kind"] = "upper";
        j["note"] = "time-change search certified against the identity time change";
        Json anchors = Json::array();
        for (const auto& [s, ls] : r.witness.anchors) {
            Json a = Json::array();
            a.push_back(s);
            a.push_back(ls);
            anchors.push_back(std::move(a));
        }
        j["witness"] = Json::object();
        j["witness"]["time_change"] = std::move(anchors);
        j["witness"]["identity_objective"] = r.witness.identity_objective;
    } else if (opt.kind == "gh") {
        DistanceResult r;
        if (opt.enumerate)
            r = gh_distance(left.space, right.space, GHMode::ExactTiny);
        else if (!opt.corr_path.empty()) {
            Correspondence corr = corr_for(left.space, right.space);
            r = gh_distance(left.space, right.space, GHMode::UpperFromCorrespondence, &corr);
        } else
            r = gh_distance_auto(left.space, right.space);
        fill_result(j, r, &left.space, &right.space);
        DistanceResult lower = gh_distance(left.space, right.space, GHMode::LowerDiameter);
        j["lower_bound"] = rational_to_json(*lower.exact);
    } else if (opt.kind == "pghp" || opt.kind == "ghv") {
        RootedMeasured X{RootedSpace{left.space, require_root(left, opt.kind.c_str())},
                         require_measure(left, opt.kind.c_str())};
        RootedMeasured Y{RootedSpace{right.space, require_root(right, opt.kind.c_str())},
                         require_measure(right, opt.kind.c_str())};
        Correspondence corr = corr_for(left.space, right.space, X.rooted.root, Y.rooted.root);
        DistanceResult r = opt.kind == "pghp" ? pghp_upper(X, Y, corr) : ghv_upper(X, Y, corr);
        fill_result(j, r, &left.space, &right.space);
    } else if (opt.kind == "rf" || opt.kind == "rv") {
        StructuredSpace X{RootedSpace{left.space, require_root(left, opt.kind.c_str())},
                          require_structure(left, opt.kind.c_str()), &left.aux_spaces};
        StructuredSpace Y{RootedSpace{right.space, require_root(right, opt.kind.c_str())},
                          require_structure(right, opt.kind.c_str()), &right.aux_spaces};
        GHTypeMetric which = opt.kind == "rf" ? GHTypeMetric::RF : GHTypeMetric::RV;
        DistanceResult r;
        if (opt.enumerate) {
            r = rf_rv_distance(X, Y, which, RFRVMode::ExactTiny);
        } else {
            Correspondence corr = corr_for(left.space, right.space, X.rooted.root, Y.rooted.root);
            r = rf_rv_distance(X, Y, which, RFRVMode::Upper, &corr);
        }
        fill_result(j, r, &left.space, &right.space);
    } else if (opt.kind == "structure") {
        require_same_space(left, right);
        StructureContext ctx = left.context();
        double v;
        if (opt.mode == "space-rooted") {
            PointId root = require_root(left, "structure");
            if (right.root && *right.root != root)
                throw RootMismatch("space-rooted mode needs a shared root");
            v = structure_distance_sr(ctx, require_structure(left, "structure"),
                                      require_structure(right, "structure"), root);
        } else {
            v = structure_distance_er(ctx, require_structure(left, "structure"),
                                      require_root(left, "structure"),
                                      require_structure(right, "structure"),
                                      require_root(right, "structure"));
        }
        j["value_double"] = v;
        j["result_kind"] = "exact";
    } else {
        throw CLI::ValidationError("--kind", "unknown kind: " + opt.kind);
    }
    emit(out, j);
    return kOk;
}

int run_validate(const std::string& path, std::ostream& out) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    Json dj = Json::parse(in, nullptr, true);
    Json j = result_header("validate");
    if (!dj.is_object() || !dj.contains("space")) throw ParseError("document needs a 'space'");
    auto sp = parse_space_json(dj.at("space"));
    if (sp.space) {
        // Re-parse fully so subsets/structures are checked too.
        parse_document(dj);
        j["valid"] = true;
        j["points"] = sp.space->size();
        if (sp.from_edges) j["distances_completed_from_edges"] = true;
        emit(out, j);
        return kOk;
    }
    j["valid"] = false;
    Json diags = Json::array();
    for (const auto& d : sp.diagnostics) {
        Json e = Json::object();
        switch (d.defect) {
            case MetricDefect::NonSquare: e["defect"] = "NonSquare"; break;
            case MetricDefect::NegativeEntry: e["defect"] = "NegativeEntry"; break;
            case MetricDefect::AsymmetricEntry: e["defect"] = "AsymmetricEntry"; break;
            case MetricDefect::TriangleViolation: e["defect"] = "TriangleViolation"; break;
            case MetricDefect::ZeroOffDiagonal: e["defect"] = "ZeroOffDiagonal"; break;
            case MetricDefect::NonZeroDiagonal: e["defect"] = "NonZeroDiagonal"; break;
            case MetricDefect::Empty: e["defect"] = "Empty"; break;
        }
        Json w = Json::array();
        if (d.i >= 0) w.push_back(d.i);
        if (d.j >= 0) w.push_back(d.j);
        if (d.k >= 0) w.push_back(d.k);
        e["witness"] = std::move(w);
        e["message"] = d.message;
        diags.push_back(std::move(e));
    }
    j["diagnostics"] = std::move(diags);
    emit(out, j);
    return kValidationExit;
}

int run_entropy(const std::string& path, const std::string& eps_csv, bool greedy,
                const std::string& restrict_r, std::ostream& out) {
    Document doc = load_document(path);
    FiniteMetricSpace space = doc.space;
    Json j = result_header("entropy");
    if (!restrict_r.empty()) {
        auto r = parse_rational(restrict_r);
        if (!r) throw ParseError("bad --restrict radius");
        RootedSpace rooted{doc.space, require_root(doc, "entropy --restrict")};
        space = restrict_space(rooted, *r).space;
        j["restricted_to"] = format_rational(*r);
    }
    std::vector<Rational> eps_grid;
    std::stringstream ss(eps_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto e = parse_rational(tok);
        if (!e || *e <= 0) throw ParseError("bad eps value: " + tok);
        eps_grid.push_back(*e);
    }
    if (eps_grid.empty()) throw ParseError("--eps needs at least one value");
    EntropyProfile profile =
        entropy_profile(space, eps_grid, greedy ? CoveringMode::Greedy : CoveringMode::Exact);
    j["mode"] = greedy ? "greedy" : "exact";
    Json entries = Json::array();
    for (const auto& e : profile.entries) {
        Json row = Json::object();
        row["eps"] = rational_to_json(e.eps);
        row["count"] = e.count;
        Json cs = Json::array();
        for (PointId p : e.centers) cs.push_back(space.label(p));
        row["centers"] = std::move(cs);
        entries.push_back(std::move(row));
    }
    j["entries"] = std::move(entries);
    emit(out, j);
    return kOk;
}

int run_sandwich(const std::string& left_path, const std::string& right_path, int trials,
                 std::uint64_t seed, bool compact, std::ostream& out) {
    Document left = load_document(left_path);
    Document right = load_document(right_path);
    StructuredSpace X{RootedSpace{left.space, require_root(left, "sandwich")},
                      require_structure(left, "sandwich"), &left.aux_spaces};
    StructuredSpace Y{RootedSpace{right.space, require_root(right, "sandwich")},
                      require_structure(right, "sandwich"), &right.aux_spaces};
    std::mt19937_64 rng(seed);
    std::vector<Correspondence> corrs;
    for (int i = 0; i < trials; ++i)
        corrs.push_back(random_correspondence(rng, left.space.size(), right.space.size()));
    SandwichReport report = sandwich_check(X, Y, corrs, compact);
    Json j = result_header("sandwich");
    j["trials"] = trials;
    j["seed"] = seed;
    j["compact_variant"] = compact;
    j["all_pass"] = report.all_pass;
    Json rows = Json::array();
    for (const auto& t : report.trials) {
        Json row = Json::object();
        row["rv_objective"] = t.rv_objective;
        row["rf_objective"] = t.rf_objective;
        row["bound"] = t.bound;
        row["margin"] = t.bound - t.rf_objective;
        row["sandwich_ok"] = t.sandwich_ok;
        row["order_ok"] = t.order_ok;
        rows.push_back(std::move(row));
    }
    j["trials_detail"] = std::move(rows);
    emit(out, j);
    return kOk;
}

template <class Obj>
Json axioms_to_json(const AxiomReport& report) {
    Json rows = Json::array();
    for (const auto& c : report.checks) {
        Json row = Json::object();
        row["axiom"] = c.axiom;
        row["pass"] = c.pass;
        if (!c.pass) row["witness"] = c.witness;
        rows.push_back(std::move(row));
    }
    Json j = Json::object();
    j["checks"] = std::move(rows);
    j["scope"] = report.scope_note;
    j["all_pass"] = report.all_pass();
    return j;
}

int run_rs_check(const std::string& path, const std::string& system, std::ostream& out) {
    Document doc = load_document(path);
    const FiniteMetricSpace& space = doc.space;
    std::vector<PointId> centers;
    for (std::size_t i = 0; i < space.size(); ++i) centers.push_back(static_cast<PointId>(i));
    std::vector<Rational> radii{rat(1, 10), rat(1, 2), Rational(1), Rational(2)};
    Rational diam = space.diameter();
    radii.push_back(diam);
    radii.push_back(diam + 1);
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

    Json j = result_header("rs-check");
    j["system"] = system;
    AxiomReport report;
    if (system == "subset" || system == "custom") {
        auto sys = system == "subset" ? make_subset_system(space) : make_quadratic_ball_system(space);
        std::vector<FiniteSubset> objects;
        objects.push_back({});
        for (std::size_t i = 0; i < space.size(); ++i) objects.push_back({static_cast<PointId>(i)});
        FiniteSubset all;
        for (std::size_t i = 0; i < space.size(); ++i) all.push_back(static_cast<PointId>(i));
        objects.push_back(all);
        if (doc.subset) objects.push_back(*doc.subset);
        report = check_rs_axioms(sys, centers, radii, objects);
    } else if (system == "measure") {
        auto sys = make_measure_system(space);
        std::vector<FiniteMeasure> objects;
        objects.push_back(FiniteMeasure{});
        for (std::size_t i = 0; i < space.size(); ++i)
            objects.push_back(FiniteMeasure::dirac(static_cast<PointId>(i)));
        if (doc.measure) objects.push_back(*doc.measure);
        report = check_rs_axioms(sys, centers, radii, objects);
    } else if (system == "function") {
        RootedSpace aux = doc.aux_spaces.empty()
                              ? RootedSpace{FiniteMetricSpace({"0", "1"},
                                                              {{Rational(0), Rational(1)},
                                                               {Rational(1), Rational(0)}}),
                                            0}
                              : doc.aux_spaces.begin()->second;
        auto sys = make_function_system(space, aux.space);
        std::vector<VarDomainFunction> objects;
        objects.push_back({});
        VarDomainFunction full;
        for (std::size_t i = 0; i < space.size(); ++i) {
            full.domain.push_back(static_cast<PointId>(i));
            full.values.push_back(static_cast<PointId>(i % aux.space.size()));
        }
        objects.push_back(full);
        objects.push_back({{0}, {0}});
        report = check_rs_axioms(sys, centers, radii, objects);
    } else {
        throw CLI::ValidationError("--system", "unknown system: " + system);
    }
    j["report"] = axioms_to_json<int>(report);
    emit(out, j);
    return kOk;
}

int run_converge(const std::string& dir, const std::string& target_path, const std::string& kind,
                 const std::string& eps_csv, std::ostream& out) {
    Document target = load_document(target_path);
    std::vector<std::string> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file()) files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw ValidationError("converge: no documents in directory");

    Json j = result_header("converge");
    j["kind"] = kind;
    if (kind == "gh") {
        std::vector<FiniteMetricSpace> seq;
        for (const auto& f : files) seq.push_back(load_document(f).space);
        std::vector<Rational> eps_grid;
        if (!eps_csv.empty()) {
            std::stringstream ss(eps_csv);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                auto e = parse_rational(tok);
                if (!e || *e <= 0) throw ParseError("bad eps value: " + tok);
                eps_grid.push_back(*e);
            }
        } else {
            Rational d = target.space.diameter();
            eps_grid = {d / 4, d / 2, d};
            if (d == 0) eps_grid = {Rational(1)};
        }
        EntropyConvergenceReport rep = entropy_convergence_check(seq, target.space, eps_grid);
        Json ghs = Json::array();
        for (double g : rep.gh_to_limit) ghs.push_back(g);
        j["gh_to_limit"] = std::move(ghs);
        Json rows = Json::array();
        for (const auto& r : rep.rows) {
            Json row = Json::object();
            row["eps"] = rational_to_json(r.eps);
            row["limit_count"] = r.limit_count;
            row["liminf_count"] = r.liminf_count;
            row["liminf_inequality"] = r.liminf_inequality;
            row["locally_constant"] = r.locally_constant;
            row["equality_on_tail"] = r.equality_on_tail;
            rows.push_back(std::move(row));
        }
        j["entropy"] = std::move(rows);
        j["all_liminf_hold"] = rep.all_liminf_hold;
        j["equality_at_constant_eps"] = rep.equality_at_constant_eps;
    } else if (kind == "subset" || kind == "measure") {
        PointId root = require_root(target, "converge");
        Json vals = Json::array();
        for (const auto& f : files) {
            Document d = load_document(f);
            require_same_space(d, target);
            double v;
            if (kind == "subset")
                v = local_hausdorff(target.space, require_subset(d, "converge"), root,
                                    require_subset(target, "converge"), root,
                                    LocalMetricMode::Rooted);
            else
                v = vague(target.space, require_measure(d, "converge"), root,
                          require_measure(target, "converge"), root, LocalMetricMode::Rooted);
            vals.push_back(v);
        }
        j["distance_to_target"] = std::move(vals);
        bool decreasing = true;
        for (std::size_t i = 1; i < j["distance_to_target"].size(); ++i)
            if (j["distance_to_target"][i].get<double>() >
                j["distance_to_target"][i - 1].get<double>() + 1e-12)
                decreasing = false;
        j["nonincreasing"] = decreasing;
    } else {
        throw CLI::ValidationError("--kind", "unknown kind: " + kind);
    }
    emit(out, j);
    return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact Gromov-Hausdorff-type metrics on finite structured metric spaces"};
    app.require_subcommand(1);

    std::string validate_file;
    auto* validate_cmd = app.add_subcommand("validate", "check a space document against the metric axioms");
    validate_cmd->add_option("file", validate_file, "document to validate")->required();

    DistOptions dist_opt;
    auto* dist_cmd = app.add_subcommand("dist", "compute a distance between two documents");
    dist_cmd->add_option("--kind", dist_opt.kind, "metric kind")->required();
    dist_cmd->add_option("left", dist_opt.left_path, "left document")->required();
    dist_cmd->add_option("right", dist_opt.right_path, "right document")->required();
    dist_cmd->add_option("--corr", dist_opt.corr_path, "correspondence file");
    dist_cmd->add_flag("--enumerate", dist_opt.enumerate, "enumerate correspondences (tiny inputs)");
    dist_cmd->add_option("--mode", dist_opt.mode, "rooted|product or element-rooted|space-rooted");
    dist_cmd->add_option("--tol", dist_opt.tol, "comparison tolerance for float-valued checks");

    std::string entropy_file, entropy_eps, entropy_restrict;
    bool entropy_greedy = false, entropy_exact = false;
    auto* entropy_cmd = app.add_subcommand("entropy", "covering numbers N(S, eps)");
    entropy_cmd->add_option("file", entropy_file, "space document")->required();
    entropy_cmd->add_option("--eps", entropy_eps, "comma-separated eps values")->required();
    entropy_cmd->add_flag("--exact", entropy_exact, "exact branch-and-bound (default)");
    entropy_cmd->add_flag("--greedy", entropy_greedy, "greedy upper bound");
    entropy_cmd->add_option("--restrict", entropy_restrict, "restrict to the root ball of this radius");

    std::string sw_left, sw_right;
    int sw_trials = 100;
    std::uint64_t sw_seed = 1;
    bool sw_compact = false;
    auto* sandwich_cmd = app.add_subcommand("sandwich", "constructive RF/RV coincidence check");
    sandwich_cmd->add_option("left", sw_left, "left structured document")->required();
    sandwich_cmd->add_option("right", sw_right, "right structured document")->required();
    sandwich_cmd->add_option("--trials", sw_trials, "number of random correspondences");
    sandwich_cmd->add_option("--seed", sw_seed, "random seed");
    sandwich_cmd->add_flag("--compact", sw_compact, "compact-case variant");

    std::string rs_file, rs_system;
    auto* rs_cmd = app.add_subcommand("rs-check", "restriction-system axiom check");
    rs_cmd->add_option("file", rs_file, "space document")->required();
    rs_cmd->add_option("--system", rs_system, "subset|measure|function|custom")->required();

    std::string cv_dir, cv_target, cv_kind = "gh", cv_eps;
    auto* cv_cmd = app.add_subcommand("converge", "convergence certificates for a document sequence");
    cv_cmd->add_option("dir", cv_dir, "directory of sequence documents")->required();
    cv_cmd->add_option("--target", cv_target, "limit document")->required();
    cv_cmd->add_option("--kind", cv_kind, "gh|subset|measure");
    cv_cmd->add_option("--eps", cv_eps, "comma-separated eps grid (gh kind)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kValidationExit;
    }

    try {
        if (*validate_cmd) return run_validate(validate_file, out);
        if (*dist_cmd) return run_dist(dist_opt, out);
        if (*entropy_cmd) {
            (void)entropy_exact;
            return run_entropy(entropy_file, entropy_eps, entropy_greedy, entropy_restrict, out);
        }
        if (*sandwich_cmd) return run_sandwich(sw_left, sw_right, sw_trials, sw_seed, sw_compact, out);
        if (*rs_cmd) return run_rs_check(rs_file, rs_system, out);
        if (*cv_cmd) return run_converge(cv_dir, cv_target, cv_kind, cv_eps, out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kValidationExit;
    } catch (const nlohmann::json::exception& e) {
        err << "parse error: " << e.what() << "\n";
        return kValidationExit;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kComputationExit;
    } catch (const MetricAxiomFailure& e) {
        err << "internal error: " << e.what() << "\n";
        return kComputationExit;
    } catch (const CLI::Error& e) {
        err << "usage error: " << e.what() << "\n";
        return kValidationExit;
    }
    return kValidationExit;
}

}  // namespace locgh
