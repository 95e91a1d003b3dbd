#include "locgh/structures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "locgh/errors.hpp"

namespace locgh {

std::string kind_name(StructureKind k) {
    switch (k) {
        case StructureKind::Point: return "point";
        case StructureKind::Tuple: return "tuple";
        case StructureKind::Fixed: return "fixed";
        case StructureKind::Subset: return "subset";
        case StructureKind::Measure: return "measure";
        case StructureKind::StepCadlag: return "step_cadlag";
        case StructureKind::VarFunction: return "var_function";
        case StructureKind::LZero: return "l_zero";
        case StructureKind::Law: return "law";
        case StructureKind::Product: return "product";
        case StructureKind::Composed: return "composed";
    }
    return "?";
}

StructureValue StructureValue::make_point(PointId p) {
    StructureValue v;
    v.kind = StructureKind::Point;
    v.point = p;
    return v;
}

StructureValue StructureValue::make_subset(FiniteSubset s) {
    StructureValue v;
    v.kind = StructureKind::Subset;
    v.subset = normalize_subset(std::move(s));
    return v;
}

StructureValue StructureValue::make_measure(FiniteMeasure m) {
    StructureValue v;
    v.kind = StructureKind::Measure;
    v.measure = std::move(m);
    return v;
}

const RootedSpace& StructureContext::aux(const std::string& name) const {
    if (!aux_spaces) throw ValidationError("no auxiliary spaces declared");
    auto it = aux_spaces->find(name);
    if (it == aux_spaces->end()) throw ValidationError("unknown auxiliary space: " + name);
    return it->second;
}

TransformedSpace transform_space(const StructureContext& ctx, const SpaceTransform& t) {
    if (t.power < 1) throw ValidationError("transform power must be >= 1");
    const FiniteMetricSpace& X = *ctx.space;
    const RootedSpace* xi = t.aux_name.empty() ? nullptr : &ctx.aux(t.aux_name);

    TransformedSpace out;
    out.power = t.power;
    out.aux_size = xi ? xi->space.size() : 0;

    std::size_t total = 1;
    for (int k = 0; k < t.power; ++k) total *= X.size();
    if (xi) total *= xi->space.size();
    if (total > 4096) throw TooLargeForExact("transformed space too large");

    std::vector<std::string> labels;
    labels.reserve(total);
    out.coords.reserve(total);
    out.aux_coord.reserve(total);
    std::vector<PointId> idx(static_cast<std::size_t>(t.power), 0);
    PointId ax = 0;
    for (std::size_t n = 0; n < total; ++n) {
        std::string lab = "(";
        for (int k = 0; k < t.power; ++k) lab += (k ? "," : "") + X.label(idx[static_cast<std::size_t>(k)]);
        if (xi) lab += "|" + xi->space.label(ax);
        lab += ")";
        labels.push_back(lab);
        out.coords.push_back(idx);
        out.aux_coord.push_back(xi ? ax : -1);
        // odometer increment, auxiliary coordinate fastest
        if (xi && ++ax < static_cast<PointId>(xi->space.size())) continue;
        ax = 0;
        for (int k = t.power - 1; k >= 0; --k) {
            if (++idx[static_cast<std::size_t>(k)] < static_cast<PointId>(X.size())) break;
            idx[static_cast<std::size_t>(k)] = 0;
        }
    }
    std::vector<std::vector<Rational>> dist(total, std::vector<Rational>(total, Rational(0)));
    for (std::size_t i = 0; i < total; ++i)
        for (std::size_t j = 0; j < total; ++j) {
            Rational d(0);
            for (int k = 0; k < t.power; ++k) {
                const Rational& dk =
                    X.dist(out.coords[i][static_cast<std::size_t>(k)], out.coords[j][static_cast<std::size_t>(k)]);
                if (dk > d) d = dk;
            }
            if (xi) {
                const Rational& da = xi->space.dist(out.aux_coord[i], out.aux_coord[j]);
                if (da > d) d = da;
            }
            dist[i][j] = d;
        }
    out.space = FiniteMetricSpace(std::move(labels), std::move(dist));

    out.root_map.resize(X.size());
    for (std::size_t x = 0; x < X.size(); ++x) {
        std::size_t code = 0;
        for (int k = 0; k < t.power; ++k) code = code * X.size() + x;
        if (xi) code = code * xi->space.size() + static_cast<std::size_t>(xi->root);
        out.root_map[x] = static_cast<PointId>(code);
    }
    return out;
}

FiniteMetricSpace product_space(const FiniteMetricSpace& A, const FiniteMetricSpace& B) {
    std::vector<std::string> labels;
    labels.reserve(A.size() * B.size());
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < B.size(); ++j)
            labels.push_back("(" + A.label(static_cast<PointId>(i)) + "|" +
                             B.label(static_cast<PointId>(j)) + ")");
    const std::size_t n = labels.size();
    std::vector<std::vector<Rational>> dist(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Rational& da = A.dist(static_cast<PointId>(i / B.size()), static_cast<PointId>(j / B.size()));
            const Rational& db = B.dist(static_cast<PointId>(i % B.size()), static_cast<PointId>(j % B.size()));
            dist[i][j] = da > db ? da : db;
        }
    return FiniteMetricSpace(std::move(labels), std::move(dist));
}

std::string kind_signature(const StructureValue& v) {
    std::ostringstream os;
    switch (v.kind) {
        case StructureKind::Point:
            os << "pt";
            break;
        case StructureKind::Tuple:
            os << "tup" << v.tuple.size();
            break;
        case StructureKind::Fixed:
            os << "fix(" << v.aux_name << ")";
            break;
        case StructureKind::Subset:
            os << "sub";
            break;
        case StructureKind::Measure:
            os << "meas";
            break;
        case StructureKind::StepCadlag:
            os << "cad[" << (v.horizon ? format_rational(*v.horizon) : "inf") << "]("
               << (v.children.empty() ? "" : kind_signature(v.children.front())) << ")";
            break;
        case StructureKind::VarFunction:
            os << "vfn[" << v.transform.power << "," << v.transform.aux_name << "]("
               << (v.children.empty() ? "pt" : kind_signature(v.children.front())) << ")";
            break;
        case StructureKind::LZero: {
            os << "lz{";
            for (std::size_t i = 0; i < v.times.size(); ++i)
                os << (i ? "," : "") << format_rational(v.times[i]) << ":" << format_rational(v.weights[i]);
            os << "}(" << (v.children.empty() ? "" : kind_signature(v.children.front())) << ")";
            break;
        }
        case StructureKind::Law:
            os << "law(" << (v.children.empty() ? "" : kind_signature(v.children.front())) << ")";
            break;
        case StructureKind::Product: {
            os << "prod(";
            for (std::size_t i = 0; i < v.children.size(); ++i)
                os << (i ? "," : "") << kind_signature(v.children[i]);
            os << ")";
            break;
        }
        case StructureKind::Composed:
            os << "comp[" << v.transform.power << "," << v.transform.aux_name << "]("
               << (v.children.empty() ? "" : kind_signature(v.children.front())) << ")";
            break;
    }
    return os.str();
}

namespace {

bool is_metrizable_kind(const StructureValue& v) {
    switch (v.kind) {
        case StructureKind::Point:
        case StructureKind::Tuple:
        case StructureKind::Fixed:
            return true;
        case StructureKind::LZero:
            return true;  // children checked during validation
        case StructureKind::Product:
            return std::all_of(v.children.begin(), v.children.end(),
                               [](const StructureValue& c) { return is_metrizable_kind(c); });
        default:
            return false;
    }
}

void check_point_range(const FiniteMetricSpace& space, PointId p, const char* what) {
    if (p < 0 || static_cast<std::size_t>(p) >= space.size())
        throw ValidationError(std::string(what) + ": point out of range");
}

}  // namespace

void validate_structure(const StructureContext& ctx, const StructureValue& v) {
    const FiniteMetricSpace& X = *ctx.space;
    switch (v.kind) {
        case StructureKind::Point:
            check_point_range(X, v.point, "point structure");
            break;
        case StructureKind::Tuple:
            if (v.tuple.empty()) throw ValidationError("tuple must be non-empty");
            for (PointId p : v.tuple) check_point_range(X, p, "tuple structure");
            break;
        case StructureKind::Fixed:
            check_point_range(ctx.aux(v.aux_name).space, v.aux_point, "fixed structure");
            break;
        case StructureKind::Subset:
            for (PointId p : v.subset) check_point_range(X, p, "subset structure");
            if (!std::is_sorted(v.subset.begin(), v.subset.end()))
                throw ValidationError("subset must be sorted");
            break;
        case StructureKind::Measure:
            for (const auto& [p, w] : v.measure.weights) {
                check_point_range(X, p, "measure structure");
                if (w <= 0) throw ValidationError("measure weights must be positive");
            }
            break;
        case StructureKind::StepCadlag: {
            if (v.times.empty() || v.times.front() != 0)
                throw MalformedJumps("cadlag jump list must start at time 0");
            for (std::size_t i = 1; i < v.times.size(); ++i)
                if (v.times[i] <= v.times[i - 1])
                    throw MalformedJumps("cadlag jump times must be strictly increasing");
            if (v.children.size() != v.times.size())
                throw MalformedJumps("cadlag values must pair with jump times");
            if (v.horizon && *v.horizon < v.times.back())
                throw MalformedJumps("cadlag horizon precedes final jump");
            const std::string sig = kind_signature(v.children.front());
            for (const auto& c : v.children) {
                if (kind_signature(c) != sig) throw KindMismatch("cadlag values of mixed kinds");
                validate_structure(ctx, c);
            }
            break;
        }
        case StructureKind::VarFunction: {
            TransformedSpace T = transform_space(ctx, v.transform);
            for (PointId p : v.domain) check_point_range(T.space, p, "function domain");
            if (!std::is_sorted(v.domain.begin(), v.domain.end()))
                throw ValidationError("function domain must be sorted");
            if (v.children.size() != v.domain.size())
                throw ValidationError("function values must pair with domain points");
            if (!v.children.empty()) {
                const std::string sig = kind_signature(v.children.front());
                for (const auto& c : v.children) {
                    if (kind_signature(c) != sig) throw KindMismatch("function values of mixed kinds");
                    validate_structure(ctx, c);
                }
            }
            break;
        }
        case StructureKind::LZero: {
            if (v.times.empty() || v.times.size() != v.weights.size() ||
                v.children.size() != v.times.size())
                throw ValidationError("l_zero needs matching times, weights, and values");
            Rational sum(0);
            for (std::size_t i = 0; i < v.times.size(); ++i) {
                if (i > 0 && v.times[i] <= v.times[i - 1])
                    throw ValidationError("l_zero time tags must be strictly increasing");
                if (v.weights[i] <= 0) throw ValidationError("l_zero weights must be positive");
                sum += v.weights[i];
            }
            if (sum != 1) throw ValidationError("l_zero weights must sum to 1");
            const std::string sig = kind_signature(v.children.front());
            for (const auto& c : v.children) {
                if (kind_signature(c) != sig) throw KindMismatch("l_zero values of mixed kinds");
                if (!is_metrizable_kind(c))
                    throw KindMismatch("l_zero values must be of a plainly metrizable kind");
                validate_structure(ctx, c);
            }
            break;
        }
        case StructureKind::Law: {
            if (v.children.empty() || v.children.size() != v.weights.size())
                throw ValidationError("law needs weighted atoms");
            Rational sum(0);
            for (const auto& w : v.weights) {
                if (w <= 0) throw ValidationError("law weights must be positive");
                sum += w;
            }
            if (sum != 1) throw ValidationError("law weights must sum to 1");
            const std::string sig = kind_signature(v.children.front());
            for (const auto& c : v.children) {
                if (kind_signature(c) != sig) throw KindMismatch("law atoms of mixed kinds");
                validate_structure(ctx, c);
            }
            break;
        }
        case StructureKind::Product:
            if (v.children.empty()) throw ValidationError("product must have at least one part");
            for (const auto& c : v.children) validate_structure(ctx, c);
            break;
        case StructureKind::Composed: {
            if (v.children.size() != 1) throw ValidationError("composed carries exactly one inner value");
            TransformedSpace T = transform_space(ctx, v.transform);
            StructureContext inner{&T.space, ctx.aux_spaces, ctx.tol};
            validate_structure(inner, v.children.front());
            break;
        }
    }
}

bool structure_equal(const StructureValue& a, const StructureValue& b);

bool structure_equal(const StructureValue& a, const StructureValue& b) {
    if (a.kind != b.kind) return false;
    if (a.point != b.point || a.tuple != b.tuple || a.aux_name != b.aux_name ||
        a.aux_point != b.aux_point || a.subset != b.subset || !(a.measure == b.measure) ||
        a.times != b.times || a.weights != b.weights || !(a.transform == b.transform) ||
        a.domain != b.domain)
        return false;
    if (a.horizon.has_value() != b.horizon.has_value()) return false;
    if (a.horizon && *a.horizon != *b.horizon) return false;
    if (a.children.size() != b.children.size()) return false;
    for (std::size_t i = 0; i < a.children.size(); ++i)
        if (!structure_equal(a.children[i], b.children[i])) return false;
    return true;
}

Rational metrizable_structure_distance(const StructureContext& ctx, const StructureValue& a,
                                       const StructureValue& b) {
    if (kind_signature(a) != kind_signature(b))
        throw KindMismatch("structure kinds differ: " + kind_signature(a) + " vs " + kind_signature(b));
    switch (a.kind) {
        case StructureKind::Point:
            return ctx.space->dist(a.point, b.point);
        case StructureKind::Tuple: {
            Rational d(0);
            for (std::size_t i = 0; i < a.tuple.size(); ++i) {
                const Rational& di = ctx.space->dist(a.tuple[i], b.tuple[i]);
                if (di > d) d = di;
            }
            return d;
        }
        case StructureKind::Fixed:
            return ctx.aux(a.aux_name).space.dist(a.aux_point, b.aux_point);
        case StructureKind::LZero: {
            Rational sum(0);
            for (std::size_t i = 0; i < a.children.size(); ++i) {
                Rational d = metrizable_structure_distance(ctx, a.children[i], b.children[i]);
                if (d > 1) d = 1;
                sum += a.weights[i] * d;
            }
            return sum;
        }
        case StructureKind::Product: {
            Rational d(0);
            for (std::size_t i = 0; i < a.children.size(); ++i) {
                Rational di = metrizable_structure_distance(ctx, a.children[i], b.children[i]);
                if (di > d) d = di;
            }
            return d;
        }
        default:
            throw KindMismatch("kind " + kind_name(a.kind) + " is not plainly metrizable");
    }
}

namespace {

// Element-rooted distance matrix entries for variable-domain functions and
// laws are rational; float-valued inner metrics are converted exactly.
Rational er_as_rational(const StructureContext& ctx, const StructureValue& a, PointId xa,
                        const StructureValue& b, PointId xb) {
    if (is_metrizable_kind(a)) {
        Rational inner = metrizable_structure_distance(ctx, a, b);
        const Rational& base = ctx.space->dist(xa, xb);
        return inner > base ? inner : base;
    }
    return rat_from_double(structure_distance_er(ctx, a, xa, b, xb));
}

double varfn_distance_er(const StructureContext& ctx, const StructureValue& a, PointId base_a,
                         const StructureValue& b, PointId base_b) {
    TransformedSpace T = transform_space(ctx, a.transform);
    PointId ca = T.root_map[static_cast<std::size_t>(base_a)];
    PointId cb = T.root_map[static_cast<std::size_t>(base_b)];

    const std::size_t p = a.domain.size(), q = b.domain.size();
    // Pairwise graph distances: max of domain distance and inner value
    // distance, values paired with their own basepoint.
    std::vector<std::vector<Rational>> gd(p + q, std::vector<Rational>(p + q, Rational(0)));
    auto dom_of = [&](std::size_t k) { return k < p ? a.domain[k] : b.domain[k - p]; };
    auto val_of = [&](std::size_t k) -> const StructureValue& {
        return k < p ? a.children[k] : b.children[k - p];
    };
    auto base_of = [&](std::size_t k) { return k < p ? base_a : base_b; };
    for (std::size_t i = 0; i < p + q; ++i)
        for (std::size_t j = i + 1; j < p + q; ++j) {
            Rational d = T.space.dist(dom_of(i), dom_of(j));
            Rational dv = er_as_rational(ctx, val_of(i), base_of(i), val_of(j), base_of(j));
            if (dv > d) d = dv;
            gd[i][j] = gd[j][i] = d;
        }

    std::vector<Rational> radii{Rational(0)};
    for (PointId x : a.domain) radii.push_back(T.space.dist(ca, x));
    for (PointId x : b.domain) radii.push_back(T.space.dist(cb, x));
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

    std::vector<ExtReal> vals;
    for (const Rational& r : radii) {
        std::vector<int> left, right;
        for (std::size_t i = 0; i < p; ++i)
            if (T.space.dist(ca, a.domain[i]) <= r) left.push_back(static_cast<int>(i));
        for (std::size_t j = 0; j < q; ++j)
            if (T.space.dist(cb, b.domain[j]) <= r) right.push_back(static_cast<int>(p + j));
        vals.push_back(hausdorff_generic(left, right, [&](int u, int v) {
            return gd[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
        }));
    }
    double integral = exp_integral(curve_from_steps(radii, vals));
    return std::max(integral, to_double(ctx.space->dist(base_a, base_b)));
}

double law_distance_er(const StructureContext& ctx, const StructureValue& a, PointId base_a,
                       const StructureValue& b, PointId base_b) {
    const std::size_t p = a.children.size(), q = b.children.size();
    std::vector<std::vector<Rational>> D(p + q, std::vector<Rational>(p + q, Rational(0)));
    auto val_of = [&](std::size_t k) -> const StructureValue& {
        return k < p ? a.children[k] : b.children[k - p];
    };
    auto base_of = [&](std::size_t k) { return k < p ? base_a : base_b; };
    for (std::size_t i = 0; i < p + q; ++i)
        for (std::size_t j = i + 1; j < p + q; ++j)
            D[i][j] = D[j][i] = er_as_rational(ctx, val_of(i), base_of(i), val_of(j), base_of(j));

    std::vector<std::pair<int, Rational>> mu, nu;
    for (std::size_t i = 0; i < p; ++i) mu.emplace_back(static_cast<int>(i), a.weights[i]);
    for (std::size_t j = 0; j < q; ++j) nu.emplace_back(static_cast<int>(p + j), b.weights[j]);
    double prohorov_part = to_double(prohorov_matrix(D, mu, nu).value);
    return std::max(prohorov_part, to_double(ctx.space->dist(base_a, base_b)));
}

}  // namespace

double structure_distance_er(const StructureContext& ctx, const StructureValue& a, PointId base_a,
                             const StructureValue& b, PointId base_b) {
    if (kind_signature(a) != kind_signature(b))
        throw KindMismatch("structure kinds differ: " + kind_signature(a) + " vs " + kind_signature(b));
    const double base_term = to_double(ctx.space->dist(base_a, base_b));
    switch (a.kind) {
        case StructureKind::Point:
        case StructureKind::Tuple:
        case StructureKind::Fixed:
        case StructureKind::LZero:
            return std::max(to_double(metrizable_structure_distance(ctx, a, b)), base_term);
        case StructureKind::Subset:
            return local_hausdorff(*ctx.space, a.subset, base_a, b.subset, base_b,
                                   LocalMetricMode::Product);
        case StructureKind::Measure:
            return vague(*ctx.space, a.measure, base_a, b.measure, base_b, LocalMetricMode::Product);
        case StructureKind::StepCadlag:
            return skorohod_distance(ctx, a, base_a, b, base_b).value;
        case StructureKind::VarFunction:
            return varfn_distance_er(ctx, a, base_a, b, base_b);
        case StructureKind::Law:
            return law_distance_er(ctx, a, base_a, b, base_b);
        case StructureKind::Product: {
            double d = base_term;
            for (std::size_t i = 0; i < a.children.size(); ++i)
                d = std::max(d, structure_distance_er(ctx, a.children[i], base_a, b.children[i], base_b));
            return d;
        }
        case StructureKind::Composed: {
            TransformedSpace T = transform_space(ctx, a.transform);
            StructureContext inner{&T.space, ctx.aux_spaces, ctx.tol};
            double d = structure_distance_er(inner, a.children.front(),
                                             T.root_map[static_cast<std::size_t>(base_a)],
                                             b.children.front(),
                                             T.root_map[static_cast<std::size_t>(base_b)]);
            return std::max(d, base_term);
        }
    }
    throw UnknownKind("unhandled structure kind");
}

double structure_distance_sr(const StructureContext& ctx, const StructureValue& a,
                             const StructureValue& b, PointId root) {
    if (root < 0 || static_cast<std::size_t>(root) >= ctx.space->size())
        throw MissingRoot("space-rooted distance needs a root");
    return structure_distance_er(ctx, a, root, b, root);
}

ExtReal graph_metric(const StructureContext& ctx, const StructureValue& f, const StructureValue& g) {
    if (f.kind != StructureKind::VarFunction || g.kind != StructureKind::VarFunction)
        throw KindMismatch("graph metric applies to variable-domain functions");
    if (kind_signature(f) != kind_signature(g)) throw KindMismatch("function kinds differ");
    TransformedSpace T = transform_space(ctx, f.transform);
    const std::size_t p = f.domain.size(), q = g.domain.size();
    std::vector<int> left(p), right(q);
    for (std::size_t i = 0; i < p; ++i) left[i] = static_cast<int>(i);
    for (std::size_t j = 0; j < q; ++j) right[j] = static_cast<int>(p + j);
    auto dom_of = [&](int k) {
        return k < static_cast<int>(p) ? f.domain[static_cast<std::size_t>(k)]
                                       : g.domain[static_cast<std::size_t>(k) - p];
    };
    auto val_of = [&](int k) -> const StructureValue& {
        return k < static_cast<int>(p) ? f.children[static_cast<std::size_t>(k)]
                                       : g.children[static_cast<std::size_t>(k) - p];
    };
    return hausdorff_generic(left, right, [&](int u, int v) {
        Rational d = T.space.dist(dom_of(u), dom_of(v));
        Rational dv = metrizable_structure_distance(ctx, val_of(u), val_of(v));
        return dv > d ? dv : d;
    });
}

std::pair<FiniteMetricSpace, FiniteSubset> graph_of(const StructureContext& ctx,
                                                    const StructureValue& f) {
    if (f.kind != StructureKind::VarFunction)
        throw KindMismatch("graph_of applies to variable-domain functions");
    TransformedSpace T = transform_space(ctx, f.transform);
    const FiniteMetricSpace* value_space = nullptr;
    if (!f.children.empty()) {
        if (f.children.front().kind == StructureKind::Point)
            value_space = ctx.space;
        else if (f.children.front().kind == StructureKind::Fixed)
            value_space = &ctx.aux(f.children.front().aux_name).space;
        else
            throw KindMismatch("graph_of expects point- or fixed-valued functions");
    } else {
        value_space = ctx.space;  // empty function: any value factor works
    }
    FiniteMetricSpace prod = product_space(T.space, *value_space);
    FiniteSubset graph;
    for (std::size_t i = 0; i < f.domain.size(); ++i) {
        PointId vp = f.children[i].kind == StructureKind::Point ? f.children[i].point
                                                                : f.children[i].aux_point;
        graph.push_back(static_cast<PointId>(static_cast<std::size_t>(f.domain[i]) * value_space->size() +
                                             static_cast<std::size_t>(vp)));
    }
    return {std::move(prod), normalize_subset(std::move(graph))};
}

StructureValue pushforward(const StructureContext& src, const FiniteMetricSpace& target,
                           const std::vector<PointId>& point_map, const StructureValue& a) {
    if (point_map.size() != src.space->size())
        throw NotIsometric("point map must cover the source space");
    for (std::size_t i = 0; i < point_map.size(); ++i)
        for (std::size_t j = 0; j < point_map.size(); ++j)
            if (target.dist(point_map[i], point_map[j]) !=
                src.space->dist(static_cast<PointId>(i), static_cast<PointId>(j)))
                throw NotIsometric("point map is not distance-preserving");

    StructureValue out = a;
    switch (a.kind) {
        case StructureKind::Point:
            out.point = point_map[static_cast<std::size_t>(a.point)];
            break;
        case StructureKind::Tuple:
            for (auto& p : out.tuple) p = point_map[static_cast<std::size_t>(p)];
            break;
        case StructureKind::Fixed:
            break;
        case StructureKind::Subset: {
            for (auto& p : out.subset) p = point_map[static_cast<std::size_t>(p)];
            out.subset = normalize_subset(std::move(out.subset));
            break;
        }
        case StructureKind::Measure:
            out.measure = pushforward_measure(a.measure, point_map);
            break;
        case StructureKind::StepCadlag:
        case StructureKind::LZero:
        case StructureKind::Law:
        case StructureKind::Product: {
            for (std::size_t i = 0; i < a.children.size(); ++i)
                out.children[i] = pushforward(src, target, point_map, a.children[i]);
            break;
        }
        case StructureKind::VarFunction:
        case StructureKind::Composed: {
            TransformedSpace Ts = transform_space(src, a.transform);
            StructureContext dst_ctx{&target, src.aux_spaces, src.tol};
            TransformedSpace Td = transform_space(dst_ctx, a.transform);
            // Induced map Psi_f on the product points.
            std::vector<PointId> tmap(Ts.space.size());
            for (std::size_t i = 0; i < Ts.space.size(); ++i) {
                std::size_t code = 0;
                for (int k = 0; k < Ts.power; ++k)
                    code = code * target.size() +
                           static_cast<std::size_t>(
                               point_map[static_cast<std::size_t>(Ts.coords[i][static_cast<std::size_t>(k)])]);
                if (Ts.aux_size > 0)
                    code = code * Ts.aux_size + static_cast<std::size_t>(Ts.aux_coord[i]);
                tmap[i] = static_cast<PointId>(code);
            }
            if (a.kind == StructureKind::Composed) {
                StructureContext inner_src{&Ts.space, src.aux_spaces, src.tol};
                out.children[0] = pushforward(inner_src, Td.space, tmap, a.children[0]);
            } else {
                // domain moves by the transformed map, values by the base map
                std::vector<std::pair<PointId, StructureValue>> entries;
                for (std::size_t i = 0; i < a.domain.size(); ++i)
                    entries.emplace_back(tmap[static_cast<std::size_t>(a.domain[i])],
                                         pushforward(src, target, point_map, a.children[i]));
                std::sort(entries.begin(), entries.end(),
                          [](const auto& x, const auto& y) { return x.first < y.first; });
                out.domain.clear();
                out.children.clear();
                for (auto& [d, v] : entries) {
                    out.domain.push_back(d);
                    out.children.push_back(std::move(v));
                }
            }
            break;
        }
    }
    return out;
}

double DistortionFn::eval(double eps) const {
    switch (node) {
        case Node::Zero:
            return 0.0;
        case Node::Identity:
            return eps;
        case Node::ClampOne:
            return std::min(1.0, args.front().eval(eps));
        case Node::Max: {
            double m = 0.0;
            for (const auto& a : args) m = std::max(m, a.eval(eps));
            return m;
        }
        case Node::Compose:
            return args[0].eval(args[1].eval(eps));
    }
    return eps;
}

Rational DistortionFn::eval_exact(const Rational& eps) const {
    switch (node) {
        case Node::Zero:
            return Rational(0);
        case Node::Identity:
            return eps;
        case Node::ClampOne: {
            Rational v = args.front().eval_exact(eps);
            return v > 1 ? Rational(1) : v;
        }
        case Node::Max: {
            Rational m(0);
            for (const auto& a : args) {
                Rational v = a.eval_exact(eps);
                if (v > m) m = v;
            }
            return m;
        }
        case Node::Compose:
            return args[0].eval_exact(args[1].eval_exact(eps));
    }
    return eps;
}

std::string DistortionFn::describe() const {
    switch (node) {
        case Node::Zero:
            return "0";
        case Node::Identity:
            return "eps";
        case Node::ClampOne:
            return "min(1," + args.front().describe() + ")";
        case Node::Max: {
            std::string s = "max(";
            for (std::size_t i = 0; i < args.size(); ++i) s += (i ? "," : "") + args[i].describe();
            return s + ")";
        }
        case Node::Compose:
            return args[0].describe() + "∘" + args[1].describe();
    }
    return "eps";
}

DistortionFn DistortionFn::zero() { return DistortionFn{Node::Zero, {}}; }
DistortionFn DistortionFn::identity() { return DistortionFn{Node::Identity, {}}; }
DistortionFn DistortionFn::clamp_one(DistortionFn inner) {
    return DistortionFn{Node::ClampOne, {std::move(inner)}};
}
DistortionFn DistortionFn::max_of(std::vector<DistortionFn> parts) {
    return DistortionFn{Node::Max, std::move(parts)};
}
DistortionFn DistortionFn::compose(DistortionFn outer, DistortionFn inner) {
    return DistortionFn{Node::Compose, {std::move(outer), std::move(inner)}};
}

DistortionFn distortion_of(const StructureValue& prototype) {
    switch (prototype.kind) {
        case StructureKind::Point:
        case StructureKind::Tuple:
            return DistortionFn::identity();
        case StructureKind::Fixed:
            return DistortionFn::zero();
        case StructureKind::Subset:
        case StructureKind::Measure:
            return DistortionFn::clamp_one(DistortionFn::identity());
        case StructureKind::LZero:
            return DistortionFn::clamp_one(distortion_of(prototype.children.front()));
        case StructureKind::StepCadlag:
            // Propagated unchanged from the inner kind; the stability suite
            // exercises the inequality empirically.
            return distortion_of(prototype.children.front());
        case StructureKind::VarFunction:
            return DistortionFn::clamp_one(DistortionFn::max_of(
                {DistortionFn::identity(),
                 prototype.children.empty() ? DistortionFn::identity()
                                            : distortion_of(prototype.children.front())}));
        case StructureKind::Law:
            return distortion_of(prototype.children.front());
        case StructureKind::Product: {
            std::vector<DistortionFn> parts;
            parts.reserve(prototype.children.size());
            for (const auto& c : prototype.children) parts.push_back(distortion_of(c));
            return DistortionFn::max_of(std::move(parts));
        }
        case StructureKind::Composed:
            return DistortionFn::compose(distortion_of(prototype.children.front()),
                                         DistortionFn::identity());
    }
    throw UnknownKind("unhandled structure kind");
}

VarFnPrecompactness varfn_precompactness(const StructureContext& ctx,
                                         const std::vector<StructureValue>& family, PointId root,
                                         const std::vector<Rational>& delta_grid) {
    if (family.empty()) throw ValidationError("empty family");
    VarFnPrecompactness out;
    TransformedSpace T = transform_space(ctx, family.front().transform);
    PointId center = T.root_map[static_cast<std::size_t>(root)];

    std::vector<const StructureValue*> pooled;
    for (const auto& f : family) {
        if (f.kind != StructureKind::VarFunction) throw KindMismatch("family must be var_function");
        for (std::size_t i = 0; i < f.domain.size(); ++i) {
            const Rational& d = T.space.dist(center, f.domain[i]);
            if (d > out.domain_radius) out.domain_radius = d;
            bool fresh = true;
            for (const auto* v : pooled)
                if (structure_equal(*v, f.children[i])) {
                    fresh = false;
                    break;
                }
            if (fresh) pooled.push_back(&f.children[i]);
        }
    }
    out.distinct_values = static_cast<int>(pooled.size());

    for (const Rational& delta : delta_grid) {
        double worst = 0.0;
        for (const auto& f : family)
            for (std::size_t i = 0; i < f.domain.size(); ++i)
                for (std::size_t j = i + 1; j < f.domain.size(); ++j)
                    if (T.space.dist(f.domain[i], f.domain[j]) <= delta)
                        worst = std::max(worst, structure_distance_er(ctx, f.children[i], root,
                                                                      f.children[j], root));
        out.modulus.emplace_back(delta, worst);
    }
    return out;
}

}  // namespace locgh
