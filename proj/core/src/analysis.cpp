#include "cutbound/analysis.hpp"

#include "cutbound/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace cutbound {

namespace {

std::int64_t to_micro(double v) { return std::llround(v * 1e6); }

std::string micro_text(const std::optional<std::int64_t>& m) {
    if (!m) return "?";
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6f", static_cast<double>(*m) / 1e6);
    return buf;
}

double population_sigma(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    return std::sqrt(var / xs.size());
}

} // namespace

bool Fingerprint::operator<(const Fingerprint& other) const {
    return cells < other.cells;
}

std::string Fingerprint::to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += cells[i].first + '=' + micro_text(cells[i].second);
    }
    out += '}';
    return out;
}

std::vector<std::string> fingerprint_base_columns() {
    return {"n", "mean_degree", "clustering", "mis_ratio"};
}

Fingerprint fingerprint_of(const KnowledgeRow& row,
                           const std::vector<std::string>& invariant_set) {
    Fingerprint fp;
    for (const auto& col : invariant_set) {
        auto v = column_value(row, col);
        fp.cells.emplace_back(col, v ? std::optional(to_micro(*v)) : std::nullopt);
    }
    return fp;
}

UniversalityReport universality(const KnowledgeTable& table,
                                const std::vector<std::string>& invariant_set,
                                double epsilon, bool within_model) {
    if (table.rows.empty()) throw InvalidParamsError("empty knowledge table");

    struct Key {
        int depth;
        std::string model;
        Fingerprint fp;
        bool operator<(const Key& o) const {
            if (depth != o.depth) return depth < o.depth;
            if (model != o.model) return model < o.model;
            return fp < o.fp;
        }
    };
    std::map<Key, std::vector<std::size_t>> buckets;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        Key key{row.depth, within_model ? row.model_kind : std::string{},
                fingerprint_of(row, invariant_set)};
        buckets[key].push_back(i);
    }

    UniversalityReport report;
    report.epsilon = epsilon;
    int counted = 0, universal = 0;
    for (const auto& [key, members] : buckets) {
        UniversalityGroup g;
        g.fingerprint = key.fp;
        g.model_kind = key.model;
        g.depth = key.depth;
        for (std::size_t i : members) g.members.push_back(table.rows[i].instance_id);
        for (int k = 1; k <= key.depth; ++k) {
            for (const auto& col : {gamma_column(k), beta_column(k)}) {
                std::vector<double> xs;
                for (std::size_t i : members) {
                    auto v = column_value(table.rows[i], col);
                    if (v) xs.push_back(*v);
                }
                double s = population_sigma(xs);
                g.sigma.emplace_back(col, s);
                if (s >= epsilon) g.universal = false;
            }
        }
        if (members.size() >= 2) {
            ++counted;
            if (g.universal) ++universal;
        }
        report.groups.push_back(std::move(g));
    }
    report.rate = counted ? static_cast<double>(universal) / counted : 1.0;
    return report;
}

ViolationClusterReport violation_cluster(const Conjecture& conj,
                                         const KnowledgeTable& table,
                                         const std::vector<std::string>& invariant_set) {
    std::set<std::string> ids(conj.violations.begin(), conj.violations.end());
    std::vector<const KnowledgeRow*> rows;
    for (const auto& row : table.rows)
        if (ids.count(row.instance_id)) rows.push_back(&row);
    if (rows.empty())
        throw NoViolationsError("conjecture '" + conj.statement() +
                                "' has no violating rows in the table");

    ViolationClusterReport report;
    report.statement = conj.statement();
    for (const auto* row : rows) report.violators.push_back(row->instance_id);

    const std::vector<std::string> static_columns = {
        "n",         "m",         "mean_degree",   "clustering",
        "chromatic", "mis_ratio", "assortativity", "degree_std"};
    for (const auto& col : static_columns) {
        SharedColumn sc;
        sc.column = col;
        std::optional<std::int64_t> first;
        bool first_set = false;
        sc.shared = true;
        for (const auto* row : rows) {
            auto v = column_value(*row, col);
            auto micro = v ? std::optional(to_micro(*v)) : std::nullopt;
            if (!first_set) {
                first = micro;
                first_set = true;
            } else if (micro != first) {
                sc.shared = false;
                break;
            }
        }
        if (sc.shared && first) sc.value = static_cast<double>(*first) / 1e6;
        report.invariants.push_back(std::move(sc));
    }

    std::vector<Fingerprint> fps;
    for (const auto* row : rows) fps.push_back(fingerprint_of(*row, invariant_set));
    std::sort(fps.begin(), fps.end());
    fps.erase(std::unique(fps.begin(), fps.end()), fps.end());
    report.fingerprints = std::move(fps);

    int max_depth = 0;
    for (const auto* row : rows) max_depth = std::max(max_depth, row->depth);
    for (int k = 1; k <= max_depth; ++k) {
        for (const auto& col : {gamma_column(k), beta_column(k)}) {
            std::vector<double> xs;
            for (const auto* row : rows) {
                auto v = column_value(*row, col);
                if (v) xs.push_back(*v);
            }
            if (xs.empty()) continue;
            ParameterSpread ps;
            ps.column = col;
            ps.lo = *std::min_element(xs.begin(), xs.end());
            ps.hi = *std::max_element(xs.begin(), xs.end());
            ps.sigma = population_sigma(xs);
            report.parameters.push_back(std::move(ps));
        }
    }
    return report;
}

ViolationClusterReport violation_cluster(const Conjecture& conj,
                                         const KnowledgeTable& table) {
    return violation_cluster(conj, table, fingerprint_base_columns());
}

std::vector<BasinCluster> basin_detect(const std::vector<std::vector<double>>& params,
                                       double epsilon) {
    if (params.size() < 2)
        throw InvalidParamsError("basin detection needs at least two members");
    const std::size_t dim = params[0].size();
    for (const auto& p : params)
        if (p.size() != dim)
            throw LengthMismatchError("parameter vectors differ in length");

    std::vector<std::size_t> parent(params.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };

    const double threshold = 10.0 * epsilon;
    for (std::size_t i = 0; i < params.size(); ++i)
        for (std::size_t j = i + 1; j < params.size(); ++j) {
            double d2 = 0.0;
            for (std::size_t k = 0; k < dim; ++k) {
                double diff = params[i][k] - params[j][k];
                d2 += diff * diff;
            }
            if (std::sqrt(d2) <= threshold) parent[find(i)] = find(j);
        }

    std::map<std::size_t, std::vector<std::size_t>> comps;
    for (std::size_t i = 0; i < params.size(); ++i) comps[find(i)].push_back(i);

    std::vector<BasinCluster> clusters;
    for (auto& [root, members] : comps) {
        BasinCluster c;
        c.members = members; // ascending by construction
        c.centroid.assign(dim, 0.0);
        for (std::size_t i : members)
            for (std::size_t k = 0; k < dim; ++k) c.centroid[k] += params[i][k];
        for (double& v : c.centroid) v /= static_cast<double>(members.size());
        clusters.push_back(std::move(c));
    }
    std::sort(clusters.begin(), clusters.end(),
              [](const BasinCluster& a, const BasinCluster& b) {
                  return a.members.front() < b.members.front();
              });
    return clusters;
}

std::string universality_report_text(const UniversalityReport& report) {
    std::ostringstream out;
    int counted = 0, universal = 0;
    for (const auto& g : report.groups) {
        if (g.members.size() < 2) continue;
        ++counted;
        if (g.universal) ++universal;
    }
    char head[160];
    std::snprintf(head, sizeof head,
                  "universality rate %.6f (%d of %d groups with >= 2 members, epsilon "
                  "%.3g)\n",
                  report.rate, universal, counted, report.epsilon);
    out << head;
    int idx = 0;
    for (const auto& g : report.groups) {
        out << "group " << ++idx << ": " << g.fingerprint.to_string();
        if (!g.model_kind.empty()) out << " model=" << g.model_kind;
        out << " p=" << g.depth << " size=" << g.members.size()
            << " universal=" << (g.universal ? "yes" : "no") << '\n';
        out << "  sigma";
        for (const auto& [col, s] : g.sigma) {
            char buf[64];
            std::snprintf(buf, sizeof buf, " %s=%.3e", col.c_str(), s);
            out << buf;
        }
        out << '\n';
        out << "  members ";
        for (std::size_t i = 0; i < g.members.size(); ++i) {
            if (i) out << ',';
            out << g.members[i];
        }
        out << '\n';
    }
    return out.str();
}

std::string violation_report_text(const ViolationClusterReport& report) {
    std::ostringstream out;
    out << "violated: " << report.statement << '\n';
    out << "violators (" << report.violators.size() << ") ";
    for (std::size_t i = 0; i < report.violators.size(); ++i) {
        if (i) out << ',';
        out << report.violators[i];
    }
    out << '\n';
    out << "shared invariants:";
    bool any = false;
    for (const auto& sc : report.invariants) {
        if (!sc.shared) continue;
        any = true;
        out << ' ' << sc.column << '=';
        if (sc.value) {
            char buf[48];
            std::snprintf(buf, sizeof buf, "%.6f", *sc.value);
            out << buf;
        } else {
            out << '?';
        }
    }
    if (!any) out << " none";
    out << '\n';
    out << "unshared invariants:";
    any = false;
    for (const auto& sc : report.invariants) {
        if (sc.shared) continue;
        any = true;
        out << ' ' << sc.column;
    }
    if (!any) out << " none";
    out << '\n';
    out << "fingerprints:\n";
    for (const auto& fp : report.fingerprints) out << "  " << fp.to_string() << '\n';
    if (!report.parameters.empty()) {
        out << "parameter spread:\n";
        for (const auto& ps : report.parameters) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "  %s lo=%.6f hi=%.6f sigma=%.3e\n",
                          ps.column.c_str(), ps.lo, ps.hi, ps.sigma);
            out << buf;
        }
    }
    return out.str();
}

} // namespace cutbound
