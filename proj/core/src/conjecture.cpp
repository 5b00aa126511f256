#include "cutbound/conjecture.hpp"

#include "cutbound/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <set>

namespace cutbound {

std::string direction_name(Direction d) {
    return d == Direction::LowerBound ? "lower_bound" : "upper_bound";
}

Direction direction_from_name(const std::string& name) {
    if (name == "lower_bound") return Direction::LowerBound;
    if (name == "upper_bound") return Direction::UpperBound;
    throw InvalidParamsError("unknown direction '" + name + "'");
}

std::string Conjecture::statement() const {
    return target + (direction == Direction::LowerBound ? " >= " : " <= ") + print(expr);
}

std::string family_name(Family f) {
    switch (f) {
    case Family::Constant: return "constant";
    case Family::Linear: return "linear";
    case Family::PairLinear: return "linear_pair";
    case Family::Quadratic: return "quadratic";
    case Family::LinSqrt: return "linear_sqrt";
    case Family::SqrtLinear: return "sqrt";
    case Family::FloorLinSqrt: return "floor_sqrt";
    }
    return "";
}

std::vector<std::string> all_family_names() {
    return {"constant",    "linear", "linear_pair", "quadratic",
            "linear_sqrt", "sqrt",   "floor_sqrt"};
}

std::vector<FormTemplate> enumerate_forms(const std::vector<std::string>& features,
                                          const std::string& target,
                                          const EngineConfig& config) {
    std::set<std::string> enabled(config.families.begin(), config.families.end());
    auto on = [&](Family f) {
        return enabled.empty() || enabled.count(family_name(f)) > 0;
    };
    std::vector<std::string> feats;
    for (const auto& f : features)
        if (f != target) feats.push_back(f);

    std::vector<FormTemplate> forms;
    if (on(Family::Constant)) forms.push_back({Family::Constant, target, "", ""});
    for (const auto& x : feats) {
        if (on(Family::Linear)) forms.push_back({Family::Linear, target, x, ""});
        if (on(Family::Quadratic)) forms.push_back({Family::Quadratic, target, x, ""});
        if (on(Family::SqrtLinear)) forms.push_back({Family::SqrtLinear, target, x, ""});
    }
    if (on(Family::PairLinear))
        for (std::size_t i = 0; i < feats.size(); ++i)
            for (std::size_t j = i + 1; j < feats.size(); ++j)
                forms.push_back({Family::PairLinear, target, feats[i], feats[j]});
    for (const auto& x : feats)
        for (const auto& y : feats) {
            if (on(Family::LinSqrt)) forms.push_back({Family::LinSqrt, target, x, y});
            if (on(Family::FloorLinSqrt))
                forms.push_back({Family::FloorLinSqrt, target, x, y});
        }
    return forms;
}

namespace {

int free_coefficients(Family f) {
    switch (f) {
    case Family::Constant: return 1;
    case Family::Linear: return 2;
    case Family::PairLinear: return 3;
    case Family::Quadratic: return 3;
    case Family::LinSqrt: return 2;
    case Family::SqrtLinear: return 2;
    case Family::FloorLinSqrt: return 1;
    }
    return 0;
}

bool has_intercept(Family f) {
    switch (f) {
    case Family::Constant:
    case Family::Linear:
    case Family::PairLinear:
    case Family::Quadratic:
    case Family::SqrtLinear: return true;
    default: return false;
    }
}

struct FitData {
    std::vector<std::size_t> rows;          // indices into table.rows
    std::vector<std::vector<double>> basis; // per usable row, free-coefficient basis
    std::vector<double> fixed;              // additive term with pinned coefficient 1
    std::vector<double> target;
};

std::optional<FitData> collect(const FormTemplate& tmpl, const KnowledgeTable& table,
                               const std::string& target) {
    FitData d;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        auto t = column_value(row, target);
        if (!t) continue;
        std::optional<double> x, y;
        if (!tmpl.x.empty()) {
            x = column_value(row, tmpl.x);
            if (!x) continue;
        }
        if (!tmpl.y.empty()) {
            y = column_value(row, tmpl.y);
            if (!y) continue;
        }
        std::vector<double> b;
        double fixed = 0.0;
        switch (tmpl.family) {
        case Family::Constant: b = {1.0}; break;
        case Family::Linear: b = {*x, 1.0}; break;
        case Family::PairLinear: b = {*x, *y, 1.0}; break;
        case Family::Quadratic: b = {*x * *x, *x, 1.0}; break;
        case Family::LinSqrt:
            if (*y < 0.0) continue;
            b = {*x, std::sqrt(*y)};
            break;
        case Family::SqrtLinear:
            if (*x < 0.0) continue;
            b = {std::sqrt(*x), 1.0};
            break;
        case Family::FloorLinSqrt:
            if (*y < 0.0) continue;
            b = {*x};
            fixed = std::sqrt(*y);
            break;
        }
        d.rows.push_back(i);
        d.basis.push_back(std::move(b));
        d.fixed.push_back(fixed);
        d.target.push_back(*t);
    }
    return d;
}

/// normal-equation least squares, k <= 3
std::optional<std::vector<double>> least_squares(const FitData& d) {
    const std::size_t k = d.basis[0].size();
    std::vector<std::vector<double>> a(k, std::vector<double>(k + 1, 0.0));
    for (std::size_t r = 0; r < d.basis.size(); ++r) {
        const double resid = d.target[r] - d.fixed[r];
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) a[i][j] += d.basis[r][i] * d.basis[r][j];
            a[i][k] += d.basis[r][i] * resid;
        }
    }
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < k; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (std::abs(a[pivot][col]) < 1e-12) return std::nullopt;
        std::swap(a[col], a[pivot]);
        for (std::size_t r = 0; r < k; ++r) {
            if (r == col) continue;
            double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c <= k; ++c) a[r][c] -= f * a[col][c];
        }
    }
    std::vector<double> theta(k);
    for (std::size_t i = 0; i < k; ++i) theta[i] = a[i][k] / a[i][i];
    return theta;
}

Coeff round_to_3dp(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return Coeff::make_real(std::strtod(buf, nullptr));
}

Coeff round_3dp_directed(double v, bool up) {
    double scaled = v * 1000.0;
    double r = up ? std::ceil(scaled) : std::floor(scaled);
    return Coeff::make_real(r / 1000.0);
}

ExprPtr build_expression(const FormTemplate& tmpl, const std::vector<Coeff>& c) {
    using namespace ex;
    switch (tmpl.family) {
    case Family::Constant: return constant(c[0]);
    case Family::Linear: return add(scaled(c[0], feature(tmpl.x)), constant(c[1]));
    case Family::PairLinear:
        return add({scaled(c[0], feature(tmpl.x)), scaled(c[1], feature(tmpl.y)),
                    constant(c[2])});
    case Family::Quadratic:
        return add({scaled(c[0], pow2(feature(tmpl.x))), scaled(c[1], feature(tmpl.x)),
                    constant(c[2])});
    case Family::LinSqrt:
        return add(scaled(c[0], feature(tmpl.x)), scaled(c[1], sqrt_of(feature(tmpl.y))));
    case Family::SqrtLinear:
        return add(scaled(c[0], sqrt_of(feature(tmpl.x))), constant(c[1]));
    case Family::FloorLinSqrt:
        return floor_of(add(scaled(c[0], feature(tmpl.x)), sqrt_of(feature(tmpl.y))));
    }
    return ex::constant(0.0);
}

std::optional<double> claim_slack(const ExprPtr& expr, const std::string& target,
                                  Direction dir, const KnowledgeRow& row) {
    auto lookup = [&](const std::string& name) { return column_value(row, name); };
    auto e = evaluate(expr, lookup);
    auto t = column_value(row, target);
    if (!e || !t) return std::nullopt;
    return dir == Direction::LowerBound ? *t - *e : *e - *t;
}

struct Stats {
    int touches = 0;
    std::vector<std::string> violations;
    double mean_slack = 0.0;
    double min_slack = 0.0;
    int usable = 0;
};

Stats compute_stats(const ExprPtr& expr, const std::string& target, Direction dir,
                    const KnowledgeTable& table, double touch_tol) {
    Stats s;
    double sum = 0.0;
    s.min_slack = std::numeric_limits<double>::infinity();
    for (const auto& row : table.rows) {
        auto sl = claim_slack(expr, target, dir, row);
        if (!sl) continue;
        ++s.usable;
        sum += *sl;
        s.min_slack = std::min(s.min_slack, *sl);
        if (std::abs(*sl) <= touch_tol) ++s.touches;
        if (*sl < 0.0) s.violations.push_back(row.instance_id);
    }
    if (s.usable > 0) s.mean_slack = sum / s.usable;
    return s;
}

bool is_subset(const std::vector<std::string>& inner,
               const std::vector<std::string>& outer) {
    for (const auto& id : inner)
        if (std::find(outer.begin(), outer.end(), id) == outer.end()) return false;
    return true;
}

struct FitContext {
    const FormTemplate& tmpl;
    const KnowledgeTable& table;
    const std::string& target;
    Direction dir;
    const EngineConfig& cfg;
    const FitData& data;
};

struct Candidate {
    Conjecture conj;
    std::vector<double> raw;
};

std::optional<Conjecture> qualify(const FitContext& ctx, const ExprPtr& expr) {
    Stats s = compute_stats(expr, ctx.target, ctx.dir, ctx.table, ctx.cfg.touch_tol);
    if (static_cast<int>(s.violations.size()) > ctx.cfg.max_violations) return std::nullopt;
    if (s.touches < ctx.cfg.min_touches) return std::nullopt;
    Conjecture c;
    c.target = ctx.target;
    c.direction = ctx.dir;
    c.expr = expr;
    c.touches = s.touches;
    c.violations = s.violations;
    c.mean_slack = s.mean_slack;
    c.min_slack = s.min_slack;
    return c;
}

/// Shift backend: least-squares fit, then move the shift coefficient (the
/// intercept when present, the last basis coefficient otherwise) to the
/// extreme needed to cover the rows; min_touches > 1 trades one violation
/// per extra required touch. Rational snapping of the shift never introduces
/// a violation outside the pre-snap set; the decimal fallback rounds away
/// from the data.
std::optional<Candidate> fit_shift(const FitContext& ctx, std::string& why) {
    const auto& [tmpl, table, target, dir, cfg, data] = ctx;
    if (tmpl.family == Family::FloorLinSqrt && dir == Direction::LowerBound) {
        why = "floor family fits upper bounds only";
        return std::nullopt;
    }
    const std::size_t k = data.basis[0].size();
    const std::size_t shift = k - 1;

    std::vector<double> theta(k, 0.0);
    if (k == 1 && has_intercept(tmpl.family)) {
        double sum = 0.0;
        for (double t : data.target) sum += t;
        theta[0] = sum / static_cast<double>(data.target.size());
    } else {
        auto ls = least_squares(data);
        if (!ls) {
            why = "singular least-squares system";
            return std::nullopt;
        }
        theta = *ls;
    }

    // finalize the non-shift coefficients first; the cover recomputation
    // below absorbs their perturbation
    std::vector<Coeff> coeffs(k);
    for (std::size_t j = 0; j + 1 < k; ++j) {
        Coeff snap = nearest_rational(theta[j], cfg.max_denominator);
        coeffs[j] = std::abs(snap.value() - theta[j]) <= cfg.snap_tol
                        ? snap
                        : round_to_3dp(theta[j]);
    }

    const bool is_floor = tmpl.family == Family::FloorLinSqrt;
    const bool upper = dir == Direction::UpperBound;
    std::vector<double> quotients;
    std::vector<std::string> base_violations;
    for (std::size_t r = 0; r < data.rows.size(); ++r) {
        double other = data.fixed[r];
        for (std::size_t j = 0; j + 1 < k; ++j)
            other += coeffs[j].value() * data.basis[r][j];
        double goal = is_floor ? std::ceil(data.target[r]) : data.target[r];
        double resid = goal - other;
        double w = data.basis[r][shift];
        if (w < 0.0) {
            why = "shift weights change sign";
            return std::nullopt;
        }
        if (w > 0.0)
            quotients.push_back(resid / w);
        else if (upper ? resid > 0.0 : resid < 0.0)
            base_violations.push_back(table.rows[data.rows[r]].instance_id);
    }
    if (static_cast<int>(quotients.size()) < cfg.min_touches) {
        why = "too few rows carry the shift term";
        return std::nullopt;
    }

    std::sort(quotients.begin(), quotients.end());
    const double delta = upper ? quotients[quotients.size() - cfg.min_touches]
                               : quotients[cfg.min_touches - 1];
    std::size_t uncovered = 0;
    for (double q : quotients)
        if (upper ? q > delta : q < delta) ++uncovered;
    if (static_cast<int>(uncovered) + static_cast<int>(base_violations.size()) >
        cfg.max_violations) {
        why = "violation budget exhausted before rounding";
        return std::nullopt;
    }

    std::vector<double> raw(k);
    for (std::size_t j = 0; j + 1 < k; ++j) raw[j] = coeffs[j].value();
    raw[shift] = delta;

    // collect the full pre-rounding violation set for the snap test
    for (std::size_t r = 0; r < data.rows.size(); ++r) {
        double w = data.basis[r][shift];
        if (w <= 0.0) continue;
        double other = data.fixed[r];
        for (std::size_t j = 0; j + 1 < k; ++j)
            other += coeffs[j].value() * data.basis[r][j];
        double goal = is_floor ? std::ceil(data.target[r]) : data.target[r];
        double q = (goal - other) / w;
        if (upper ? q > delta : q < delta)
            base_violations.push_back(table.rows[data.rows[r]].instance_id);
    }

    Coeff snap = nearest_rational(delta, cfg.max_denominator);
    if (std::abs(snap.value() - delta) <= cfg.snap_tol) {
        coeffs[shift] = snap;
        ExprPtr expr = build_expression(tmpl, coeffs);
        Stats s = compute_stats(expr, target, dir, table, cfg.touch_tol);
        if (is_subset(s.violations, base_violations)) {
            if (auto conj = qualify(ctx, expr)) return Candidate{*conj, raw};
        }
    }
    coeffs[shift] = round_3dp_directed(delta, upper);
    ExprPtr expr = build_expression(tmpl, coeffs);
    if (auto conj = qualify(ctx, expr)) return Candidate{*conj, raw};
    why = "no qualifying bound after rounding";
    return std::nullopt;
}

struct Point {
    double x, y;
};

/// hull of the scatter on the bounding side: upper hull for upper bounds,
/// lower hull for lower bounds (Andrew monotone chain)
std::vector<Point> bounding_hull(std::vector<Point> pts, bool upper) {
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Point& a, const Point& b) {
                              return a.x == b.x && a.y == b.y;
                          }),
              pts.end());
    auto cross = [](const Point& o, const Point& a, const Point& b) {
        return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
    };
    std::vector<Point> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            double c = cross(hull[hull.size() - 2], hull.back(), p);
            if (upper ? c < 0.0 : c > 0.0) break;
            hull.pop_back();
        }
        hull.push_back(p);
    }
    return hull;
}

/// Chord/ratio backend for single-feature linear templates: lines through
/// pairs of bounding-hull vertices plus lines through the origin and one
/// data point, each validated against the budget after rounding.
std::vector<Candidate> fit_chords(const FitContext& ctx) {
    const auto& [tmpl, table, target, dir, cfg, data] = ctx;
    const bool upper = dir == Direction::UpperBound;

    std::vector<Point> pts(data.rows.size());
    for (std::size_t r = 0; r < data.rows.size(); ++r)
        pts[r] = {data.basis[r][0], data.target[r]};

    std::vector<std::pair<double, double>> lines; // (slope, intercept)
    auto hull = bounding_hull(pts, upper);
    for (std::size_t i = 0; i < hull.size(); ++i)
        for (std::size_t j = i + 1; j < hull.size(); ++j) {
            if (hull[i].x == hull[j].x) continue;
            double a = (hull[j].y - hull[i].y) / (hull[j].x - hull[i].x);
            lines.emplace_back(a, hull[i].y - a * hull[i].x);
        }
    for (const auto& p : pts)
        if (p.x != 0.0) lines.emplace_back(p.y / p.x, 0.0);

    std::vector<Candidate> out;
    for (auto [a, b] : lines) {
        Stats raw_stats = compute_stats(
            build_expression(tmpl, {Coeff::make_real(a), Coeff::make_real(b)}), target,
            dir, table, cfg.touch_tol);
        if (static_cast<int>(raw_stats.violations.size()) > cfg.max_violations) continue;

        Coeff a_fin = round_to_3dp(a);
        Coeff a_snap = nearest_rational(a, cfg.max_denominator);
        if (std::abs(a_snap.value() - a) <= cfg.snap_tol) {
            Stats s = compute_stats(
                build_expression(tmpl, {a_snap, Coeff::make_real(b)}), target, dir,
                table, cfg.touch_tol);
            if (is_subset(s.violations, raw_stats.violations)) a_fin = a_snap;
        }
        Stats mid_stats = compute_stats(
            build_expression(tmpl, {a_fin, Coeff::make_real(b)}), target, dir, table,
            cfg.touch_tol);

        Coeff b_fin = round_3dp_directed(b, upper);
        Coeff b_snap = nearest_rational(b, cfg.max_denominator);
        if (std::abs(b_snap.value() - b) <= cfg.snap_tol) {
            Stats s = compute_stats(build_expression(tmpl, {a_fin, b_snap}), target, dir,
                                    table, cfg.touch_tol);
            if (is_subset(s.violations, mid_stats.violations)) b_fin = b_snap;
        }
        if (auto conj = qualify(ctx, build_expression(tmpl, {a_fin, b_fin})))
            out.push_back(Candidate{*conj, {a, b}});
    }
    return out;
}

} // namespace

FitOutcome fit_bound(const FormTemplate& tmpl, const KnowledgeTable& table,
                     Direction direction, const EngineConfig& config) {
    FitOutcome outcome;
    auto data_opt = collect(tmpl, table, tmpl.target);
    const int needed = std::max(3, free_coefficients(tmpl.family) + 1);
    if (!data_opt || static_cast<int>(data_opt->rows.size()) < needed) {
        outcome.rejection = "insufficient rows with defined features";
        return outcome;
    }
    const FitData& data = *data_opt;

    // zero-variance feature columns cannot support a non-constant shape
    const std::size_t k = data.basis[0].size();
    const std::size_t cols = has_intercept(tmpl.family) ? k - 1 : k;
    for (std::size_t j = 0; j < cols; ++j) {
        bool varies = false;
        for (std::size_t r = 1; r < data.basis.size() && !varies; ++r)
            varies = data.basis[r][j] != data.basis[0][j];
        if (!varies && tmpl.family != Family::Constant) {
            outcome.rejection = "degenerate feature with zero variance";
            return outcome;
        }
    }

    FitContext ctx{tmpl, table, tmpl.target, direction, config, data};
    std::vector<Candidate> candidates;
    std::string why = "no qualifying bound";
    if (auto c = fit_shift(ctx, why)) candidates.push_back(std::move(*c));
    if (tmpl.family == Family::Linear) {
        auto chords = fit_chords(ctx);
        candidates.insert(candidates.end(), chords.begin(), chords.end());
    }
    if (candidates.empty()) {
        outcome.rejection = why;
        return outcome;
    }
    const Candidate* best = &candidates.front();
    for (const auto& c : candidates)
        if (c.conj.mean_slack < best->conj.mean_slack) best = &c;
    outcome.conjecture = best->conj;
    outcome.raw_coefficients = best->raw;
    return outcome;
}

double slack(const Conjecture& conj, const KnowledgeRow& row) {
    auto s = claim_slack(conj.expr, conj.target, conj.direction, row);
    if (!s)
        throw UndefinedFeatureError("row " + row.instance_id +
                                    " does not define the claim '" + conj.statement() +
                                    "'");
    return *s;
}

namespace {

using SlackMatrix = std::vector<std::vector<std::optional<double>>>;

SlackMatrix slack_matrix(const std::vector<Conjecture>& conjs,
                         const KnowledgeTable& table) {
    SlackMatrix m(conjs.size(), std::vector<std::optional<double>>(table.rows.size()));
    for (std::size_t c = 0; c < conjs.size(); ++c)
        for (std::size_t r = 0; r < table.rows.size(); ++r)
            m[c][r] = claim_slack(conjs[c].expr, conjs[c].target, conjs[c].direction,
                                  table.rows[r]);
    return m;
}

bool strictly_tightest_somewhere(const SlackMatrix& m, std::size_t cand,
                                 const std::vector<std::size_t>& others,
                                 std::size_t n_rows) {
    for (std::size_t r = 0; r < n_rows; ++r) {
        if (!m[cand][r]) continue;
        double best_other = std::numeric_limits<double>::infinity();
        for (std::size_t o : others)
            if (m[o][r]) best_other = std::min(best_other, *m[o][r]);
        if (*m[cand][r] < best_other) return true;
    }
    return false;
}

} // namespace

std::vector<Conjecture> dalmatian_filter(std::vector<Conjecture> conjs,
                                         const KnowledgeTable& table) {
    // exact duplicates collapse first
    std::set<std::string> seen;
    std::vector<Conjecture> unique;
    for (auto& c : conjs) {
        if (seen.insert(print(c.expr)).second) unique.push_back(std::move(c));
    }
    std::stable_sort(unique.begin(), unique.end(),
                     [](const Conjecture& a, const Conjecture& b) {
                         if (a.mean_slack != b.mean_slack) return a.mean_slack < b.mean_slack;
                         if (a.touches != b.touches) return a.touches > b.touches;
                         return print(a.expr) < print(b.expr);
                     });

    SlackMatrix m = slack_matrix(unique, table);
    std::vector<std::size_t> kept;
    for (std::size_t c = 0; c < unique.size(); ++c)
        if (strictly_tightest_somewhere(m, c, kept, table.rows.size())) kept.push_back(c);

    // prune until every kept conjecture wins strictly on some row
    for (;;) {
        std::size_t worst = kept.size();
        for (std::size_t i = 0; i < kept.size(); ++i) {
            std::vector<std::size_t> others;
            for (std::size_t j = 0; j < kept.size(); ++j)
                if (j != i) others.push_back(kept[j]);
            if (!strictly_tightest_somewhere(m, kept[i], others, table.rows.size()))
                worst = i; // later entries have worse mean slack
        }
        if (worst == kept.size()) break;
        kept.erase(kept.begin() + worst);
    }

    std::vector<Conjecture> out;
    for (std::size_t c : kept) out.push_back(std::move(unique[c]));
    return out;
}

std::vector<Conjecture> SlackTightnessRanker::rank(std::vector<Conjecture> conjs,
                                                   const KnowledgeTable&) const {
    std::stable_sort(conjs.begin(), conjs.end(),
                     [](const Conjecture& a, const Conjecture& b) {
                         if (a.mean_slack != b.mean_slack) return a.mean_slack < b.mean_slack;
                         if (a.touches != b.touches) return a.touches > b.touches;
                         std::string sa = a.statement(), sb = b.statement();
                         if (sa.size() != sb.size()) return sa.size() < sb.size();
                         return sa < sb;
                     });
    return conjs;
}

std::vector<Conjecture> rank_conjectures(std::vector<Conjecture> conjs,
                                         const KnowledgeTable& table) {
    return SlackTightnessRanker{}.rank(std::move(conjs), table);
}

std::vector<Conjecture> generate_conjectures(const KnowledgeTable& table,
                                             const EngineConfig& config,
                                             const ConjectureRanker* ranker) {
    if (table.rows.empty()) throw InvalidParamsError("no rows in the knowledge table");
    std::vector<Conjecture> all;
    for (const auto& target : config.targets) {
        std::vector<std::string> features = config.features;
        if (features.empty()) features = table.feature_columns();
        std::erase(features, target);
        auto forms = enumerate_forms(features, target, config);
        for (Direction dir : {Direction::UpperBound, Direction::LowerBound}) {
            // Dalmatian runs per family; a family's survivors are not erased
            // by a uniformly tighter family, so coarse bounds (the constant
            // one in particular) stay in the report next to sharp ones.
            std::map<Family, std::vector<Conjecture>> batches;
            for (const auto& tmpl : forms) {
                auto outcome = fit_bound(tmpl, table, dir, config);
                if (outcome.conjecture)
                    batches[tmpl.family].push_back(std::move(*outcome.conjecture));
            }
            for (auto& [family, fitted] : batches) {
                std::stable_sort(fitted.begin(), fitted.end(),
                                 [](const Conjecture& a, const Conjecture& b) {
                                     return print(a.expr) < print(b.expr);
                                 });
                auto kept = dalmatian_filter(std::move(fitted), table);
                all.insert(all.end(), kept.begin(), kept.end());
            }
        }
    }
    // identical statements can emerge from different families (a linear fit
    // whose slope rounds to zero prints as a constant); keep the first
    std::set<std::string> seen;
    std::vector<Conjecture> unique;
    for (auto& c : all)
        if (seen.insert(direction_name(c.direction) + ':' + c.statement()).second)
            unique.push_back(std::move(c));
    SlackTightnessRanker fallback;
    const ConjectureRanker& r = ranker ? *ranker : static_cast<ConjectureRanker&>(fallback);
    return r.rank(std::move(unique), table);
}

namespace {

std::string format_real17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

void save_conjectures(const std::vector<Conjecture>& conjs,
                      const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << "target\tdirection\texpression\ttouches\tmean_slack\tmin_slack\tviolations\n";
    for (const auto& c : conjs) {
        out << c.target << '\t' << direction_name(c.direction) << '\t' << print(c.expr)
            << '\t' << c.touches << '\t' << format_real17(c.mean_slack) << '\t'
            << format_real17(c.min_slack) << '\t';
        for (std::size_t i = 0; i < c.violations.size(); ++i) {
            if (i) out << ';';
            out << c.violations[i];
        }
        out << '\n';
    }
}

std::vector<Conjecture> load_conjectures(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string(), 0);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty file " + path.string(), 0);
    std::vector<Conjecture> out;
    long lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cur;
        for (char ch : line) {
            if (ch == '\t') {
                cells.push_back(std::move(cur));
                cur.clear();
            } else if (ch != '\r') {
                cur += ch;
            }
        }
        cells.push_back(std::move(cur));
        if (cells.size() != 7)
            throw ParseError("expected 7 fields in " + path.string(), lineno);
        Conjecture c;
        c.target = cells[0];
        c.direction = direction_from_name(cells[1]);
        c.expr = parse_expression(cells[2]);
        c.touches = static_cast<int>(std::strtol(cells[3].c_str(), nullptr, 10));
        c.mean_slack = std::strtod(cells[4].c_str(), nullptr);
        c.min_slack = std::strtod(cells[5].c_str(), nullptr);
        std::string id;
        for (char ch : cells[6]) {
            if (ch == ';') {
                if (!id.empty()) c.violations.push_back(id);
                id.clear();
            } else {
                id += ch;
            }
        }
        if (!id.empty()) c.violations.push_back(id);
        out.push_back(std::move(c));
    }
    return out;
}

} // namespace cutbound
