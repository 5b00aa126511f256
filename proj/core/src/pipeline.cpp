#include "cutbound/pipeline.hpp"

#include "cutbound/errors.hpp"
#include "cutbound/rng.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

namespace cutbound {

namespace fs = std::filesystem;
using nlohmann::json;

RunConfig default_config() {
    RunConfig cfg;
    cfg.seed = 727;
    // 150 per model over n in [6, 14] keeps collisions in the four-invariant
    // fingerprint frequent enough that the degree-spread refinement has
    // something to resolve; sparser sampling leaves most fingerprints unique.
    cfg.models = {
        {"ba", 150, 6, 14, 2, 4, 0.1, 4.0, 4},
        {"ws", 150, 6, 14, 2, 4, 0.1, 4.0, 4},
        {"gnm", 150, 6, 14, 2, 4, 0.1, 4.0, 4},
        {"regular", 150, 6, 14, 2, 4, 0.1, 4.0, 4},
    };
    cfg.depths = {1, 2};
    cfg.analysis.invariant_sets = {
        fingerprint_base_columns(),
        {"n", "mean_degree", "clustering", "mis_ratio", "degree_std"},
    };
    return cfg;
}

namespace {

[[noreturn]] void bad_field(const std::string& path, const std::string& what) {
    throw InvalidParamsError(path + ": " + what);
}

double get_num(const json& j, const std::string& path, const char* key, double dflt) {
    if (!j.contains(key)) return dflt;
    if (!j[key].is_number()) bad_field(path + "." + key, "must be a number");
    return j[key].get<double>();
}

long get_int(const json& j, const std::string& path, const char* key, long dflt) {
    if (!j.contains(key)) return dflt;
    if (!j[key].is_number_integer()) bad_field(path + "." + key, "must be an integer");
    return j[key].get<long>();
}

bool get_bool(const json& j, const std::string& path, const char* key, bool dflt) {
    if (!j.contains(key)) return dflt;
    if (!j[key].is_boolean()) bad_field(path + "." + key, "must be a boolean");
    return j[key].get<bool>();
}

std::vector<std::string> get_strings(const json& j, const std::string& path,
                                     const char* key) {
    std::vector<std::string> out;
    if (!j.contains(key)) return out;
    if (!j[key].is_array()) bad_field(path + "." + key, "must be an array");
    for (const auto& v : j[key]) {
        if (!v.is_string()) bad_field(path + "." + key, "must hold strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

/// gnm edge counts scale with n; everything else is fixed by the spec block.
GraphModel resolve_model(const ModelSpec& spec, int n) {
    if (spec.model == "gnm") {
        long lo = n - 1;
        long hi = static_cast<long>(n) * (n - 1) / 2;
        long m = std::llround(spec.mean_degree * n / 2.0);
        m = std::clamp(m, lo, hi);
        return Gnm{static_cast<int>(m)};
    }
    return model_from_name(spec.model, spec.attach, spec.k, spec.beta, 0, spec.d);
}

} // namespace

RunConfig load_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParamsError("cannot open config " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError("config " + path.string() + ": " + e.what(), 0);
    }
    if (!j.is_object()) throw InvalidParamsError("config root must be an object");

    RunConfig cfg;
    cfg.models.clear();
    cfg.depths.clear();
    cfg.seed = static_cast<std::uint64_t>(get_int(j, "config", "seed", 1));
    cfg.threads = static_cast<int>(get_int(j, "config", "threads", 1));
    if (cfg.threads < 1) bad_field("threads", "must be >= 1");

    if (j.contains("depths")) {
        if (!j["depths"].is_array()) bad_field("depths", "must be an array");
        for (const auto& d : j["depths"]) {
            if (!d.is_number_integer() || d.get<int>() < 1)
                bad_field("depths", "entries must be integers >= 1");
            cfg.depths.push_back(d.get<int>());
        }
    }
    if (cfg.depths.empty()) cfg.depths = {1};

    if (j.contains("models")) {
        if (!j["models"].is_array()) bad_field("models", "must be an array");
        for (std::size_t i = 0; i < j["models"].size(); ++i) {
            const json& mj = j["models"][i];
            std::string path_i = "models[" + std::to_string(i) + "]";
            if (!mj.is_object()) bad_field(path_i, "must be an object");
            ModelSpec spec;
            if (!mj.contains("model") || !mj["model"].is_string())
                bad_field(path_i + ".model", "must name a graph model");
            spec.model = mj["model"].get<std::string>();
            model_from_name(spec.model, 2, 4, 0.1, 0, 3); // name check
            spec.count = static_cast<int>(get_int(mj, path_i, "count", 0));
            if (spec.count < 1) bad_field(path_i + ".count", "must be >= 1");
            spec.n_min = static_cast<int>(get_int(mj, path_i, "n_min", 6));
            spec.n_max = static_cast<int>(get_int(mj, path_i, "n_max", spec.n_min));
            if (spec.n_min < 2 || spec.n_max < spec.n_min || spec.n_max > kMaxVertices)
                bad_field(path_i, "needs 2 <= n_min <= n_max <= " +
                                      std::to_string(kMaxVertices));
            spec.attach = static_cast<int>(get_int(mj, path_i, "attach", 2));
            spec.k = static_cast<int>(get_int(mj, path_i, "k", 4));
            spec.beta = get_num(mj, path_i, "beta", 0.1);
            spec.mean_degree = get_num(mj, path_i, "mean_degree", 3.0);
            spec.d = static_cast<int>(get_int(mj, path_i, "d", 3));
            cfg.models.push_back(std::move(spec));
        }
    }

    if (j.contains("optimizer")) {
        const json& oj = j["optimizer"];
        if (!oj.is_object()) bad_field("optimizer", "must be an object");
        cfg.optimizer.restarts = static_cast<int>(get_int(oj, "optimizer", "restarts", 5));
        if (cfg.optimizer.restarts < 1) bad_field("optimizer.restarts", "must be >= 1");
        cfg.optimizer.tol = get_num(oj, "optimizer", "tol", 1e-8);
        cfg.optimizer.max_iters = get_int(oj, "optimizer", "max_iters", 0);
    }

    if (j.contains("engine")) {
        const json& ej = j["engine"];
        if (!ej.is_object()) bad_field("engine", "must be an object");
        cfg.engine.max_violations =
            static_cast<int>(get_int(ej, "engine", "max_violations", 2));
        cfg.engine.min_touches = static_cast<int>(get_int(ej, "engine", "min_touches", 1));
        if (cfg.engine.max_violations < 0) bad_field("engine.max_violations", "must be >= 0");
        if (cfg.engine.min_touches < 1) bad_field("engine.min_touches", "must be >= 1");
        cfg.engine.touch_tol = get_num(ej, "engine", "touch_tol", 1e-3);
        cfg.engine.snap_tol = get_num(ej, "engine", "snap_tol", 1e-6);
        cfg.engine.max_denominator = get_int(ej, "engine", "max_denominator", 60);
        auto feats = get_strings(ej, "engine", "features");
        if (ej.contains("features")) cfg.engine.features = feats;
        if (ej.contains("targets")) cfg.engine.targets = get_strings(ej, "engine", "targets");
        if (ej.contains("families")) cfg.engine.families = get_strings(ej, "engine", "families");
    }

    if (j.contains("analysis")) {
        const json& aj = j["analysis"];
        if (!aj.is_object()) bad_field("analysis", "must be an object");
        cfg.analysis.epsilon = get_num(aj, "analysis", "epsilon", 1e-3);
        if (cfg.analysis.epsilon <= 0.0) bad_field("analysis.epsilon", "must be positive");
        cfg.analysis.within_model = get_bool(aj, "analysis", "within_model", false);
        if (aj.contains("invariant_sets")) {
            if (!aj["invariant_sets"].is_array())
                bad_field("analysis.invariant_sets", "must be an array of arrays");
            for (const auto& set : aj["invariant_sets"]) {
                if (!set.is_array())
                    bad_field("analysis.invariant_sets", "must be an array of arrays");
                std::vector<std::string> cols;
                for (const auto& c : set) {
                    if (!c.is_string())
                        bad_field("analysis.invariant_sets", "must hold column names");
                    cols.push_back(c.get<std::string>());
                }
                cfg.analysis.invariant_sets.push_back(std::move(cols));
            }
        }
    }
    return cfg;
}

std::string config_to_json(const RunConfig& cfg) {
    json j;
    j["seed"] = cfg.seed;
    j["threads"] = cfg.threads;
    j["depths"] = cfg.depths;
    j["models"] = json::array();
    for (const auto& spec : cfg.models) {
        json mj;
        mj["model"] = spec.model;
        mj["count"] = spec.count;
        mj["n_min"] = spec.n_min;
        mj["n_max"] = spec.n_max;
        if (spec.model == "ba") mj["attach"] = spec.attach;
        if (spec.model == "ws") {
            mj["k"] = spec.k;
            mj["beta"] = spec.beta;
        }
        if (spec.model == "gnm") mj["mean_degree"] = spec.mean_degree;
        if (spec.model == "regular") mj["d"] = spec.d;
        j["models"].push_back(mj);
    }
    j["optimizer"] = {{"restarts", cfg.optimizer.restarts},
                      {"tol", cfg.optimizer.tol},
                      {"max_iters", cfg.optimizer.max_iters}};
    j["engine"] = {{"max_violations", cfg.engine.max_violations},
                   {"min_touches", cfg.engine.min_touches},
                   {"touch_tol", cfg.engine.touch_tol},
                   {"snap_tol", cfg.engine.snap_tol},
                   {"max_denominator", cfg.engine.max_denominator},
                   {"features", cfg.engine.features},
                   {"targets", cfg.engine.targets},
                   {"families", cfg.engine.families}};
    j["analysis"] = {{"epsilon", cfg.analysis.epsilon},
                     {"within_model", cfg.analysis.within_model},
                     {"invariant_sets", cfg.analysis.invariant_sets}};
    return j.dump(2) + "\n";
}

void save_config(const RunConfig& cfg, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << config_to_json(cfg);
}

Manifest cmd_generate(const RunConfig& cfg, const fs::path& out_dir) {
    if (cfg.models.empty()) throw InvalidParamsError("models: at least one spec required");
    fs::create_directories(out_dir / "graphs");

    Manifest man;
    man.seed = cfg.seed;
    std::size_t idx = 0;
    for (std::size_t s = 0; s < cfg.models.size(); ++s) {
        const ModelSpec& spec = cfg.models[s];
        std::vector<int> feasible;
        for (int n = spec.n_min; n <= spec.n_max; ++n)
            if (is_feasible(resolve_model(spec, n), n)) feasible.push_back(n);
        if (feasible.empty())
            throw InvalidParamsError("models[" + std::to_string(s) + "]: no feasible " +
                                     spec.model + " vertex count in [" +
                                     std::to_string(spec.n_min) + "," +
                                     std::to_string(spec.n_max) + "]");
        for (int c = 0; c < spec.count; ++c, ++idx) {
            std::uint64_t iseed = derive_seed(cfg.seed, idx);
            Rng pick(iseed);
            int n = feasible[static_cast<std::size_t>(
                pick.below(static_cast<std::uint64_t>(feasible.size())))];
            GraphModel model = resolve_model(spec, n);
            Graph g = generate(model, n, derive_seed(iseed, 1));

            char id[64];
            std::snprintf(id, sizeof id, "g%04zu_%s_n%02d", idx, spec.model.c_str(), n);
            ManifestEntry entry;
            entry.id = id;
            entry.model = model_name(model);
            entry.n = n;
            entry.params = model;
            entry.seed = iseed;
            entry.file = std::string("graphs/") + id + ".txt";
            write_edge_list(g, out_dir / entry.file);
            man.entries.push_back(std::move(entry));
        }
    }

    json j;
    j["seed"] = man.seed;
    j["instances"] = json::array();
    for (const auto& e : man.entries) {
        json ej;
        ej["id"] = e.id;
        ej["model"] = e.model;
        ej["n"] = e.n;
        ej["seed"] = e.seed;
        ej["file"] = e.file;
        if (auto* ba = std::get_if<BarabasiAlbert>(&e.params)) ej["attach"] = ba->attach;
        if (auto* ws = std::get_if<WattsStrogatz>(&e.params)) {
            ej["k"] = ws->k;
            ej["beta"] = ws->beta;
        }
        if (auto* gnm = std::get_if<Gnm>(&e.params)) ej["m"] = gnm->m;
        if (auto* reg = std::get_if<RandomRegular>(&e.params)) ej["d"] = reg->d;
        j["instances"].push_back(ej);
    }
    std::ofstream out(out_dir / "manifest.json");
    if (!out) throw Error("cannot write " + (out_dir / "manifest.json").string());
    out << j.dump(2) << '\n';
    return man;
}

Manifest load_manifest(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParamsError("cannot open manifest " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError("manifest " + path.string() + ": " + e.what(), 0);
    }
    Manifest man;
    man.seed = static_cast<std::uint64_t>(get_int(j, "manifest", "seed", 0));
    if (!j.contains("instances") || !j["instances"].is_array())
        throw InvalidParamsError("manifest.instances: must be an array");
    for (std::size_t i = 0; i < j["instances"].size(); ++i) {
        const json& ej = j["instances"][i];
        std::string path_i = "instances[" + std::to_string(i) + "]";
        ManifestEntry e;
        if (!ej.contains("id") || !ej["id"].is_string())
            bad_field(path_i + ".id", "must be a string");
        e.id = ej["id"].get<std::string>();
        if (!ej.contains("model") || !ej["model"].is_string())
            bad_field(path_i + ".model", "must be a string");
        e.model = ej["model"].get<std::string>();
        e.n = static_cast<int>(get_int(ej, path_i, "n", 0));
        e.seed = static_cast<std::uint64_t>(get_int(ej, path_i, "seed", 0));
        if (!ej.contains("file") || !ej["file"].is_string())
            bad_field(path_i + ".file", "must be a string");
        e.file = ej["file"].get<std::string>();
        e.params = model_from_name(e.model, static_cast<int>(get_int(ej, path_i, "attach", 2)),
                                   static_cast<int>(get_int(ej, path_i, "k", 4)),
                                   get_num(ej, path_i, "beta", 0.1),
                                   static_cast<int>(get_int(ej, path_i, "m", 0)),
                                   static_cast<int>(get_int(ej, path_i, "d", 3)));
        man.entries.push_back(std::move(e));
    }
    return man;
}

SimulateOutcome cmd_simulate(const fs::path& manifest_path, const RunConfig& cfg,
                             const fs::path& out_dir) {
    Manifest man = load_manifest(manifest_path);
    const fs::path base = manifest_path.parent_path();

    std::vector<int> depths = cfg.depths;
    std::sort(depths.begin(), depths.end());
    depths.erase(std::unique(depths.begin(), depths.end()), depths.end());

    struct Task {
        const ManifestEntry* entry;
        int p;
    };
    std::vector<Task> tasks;
    for (const auto& e : man.entries)
        for (int p : depths) tasks.push_back({&e, p});
    std::sort(tasks.begin(), tasks.end(), [](const Task& a, const Task& b) {
        if (a.entry->id != b.entry->id) return a.entry->id < b.entry->id;
        return a.p < b.p;
    });

    std::vector<std::optional<KnowledgeRow>> slots(tasks.size());
    std::vector<std::string> errors(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            const Task& t = tasks[i];
            try {
                Graph g = read_edge_list(base / t.entry->file);
                // One optimizer seed per depth, shared by every instance: all rows see
                // the same restart initializations, so parameter spread within a
                // fingerprint group reflects the graphs rather than initializer luck.
                // Landscapes with symmetric twin optima (e.g. even-degree graphs,
                // where the objective repeats under gamma -> pi - gamma combined with
                // beta -> pi/2 - beta) would otherwise split groups of isomorphic
                // instances across twins at random.
                slots[i] = build_row(g, t.p, derive_seed(cfg.seed, 1000 + t.p),
                                     cfg.optimizer, t.entry->id, t.entry->model);
            } catch (const std::exception& ex) {
                errors[i] = t.entry->id + " p=" + std::to_string(t.p) + ": " + ex.what();
            }
        }
    };

    int threads = std::max(1, cfg.threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    SimulateOutcome outcome;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (slots[i]) outcome.table.rows.push_back(std::move(*slots[i]));
        if (!errors[i].empty()) outcome.failures.push_back(errors[i]);
    }

    fs::create_directories(out_dir);
    save(outcome.table, out_dir / "knowledge.csv");
    if (!outcome.failures.empty()) {
        std::ofstream err(out_dir / "simulate_errors.txt");
        for (const auto& line : outcome.failures) err << line << '\n';
    }
    return outcome;
}

std::vector<Conjecture> cmd_conjecture(const fs::path& table_path, const RunConfig& cfg,
                                       const fs::path& out_dir) {
    KnowledgeTable table = load(table_path);
    auto conjs = generate_conjectures(table, cfg.engine);
    fs::create_directories(out_dir);
    save_conjectures(conjs, out_dir / "conjectures.tsv");
    return conjs;
}

AnalyzeOutcome cmd_analyze(const fs::path& table_path, const fs::path& conjectures_path,
                           const RunConfig& cfg, const fs::path& out_dir) {
    KnowledgeTable table = load(table_path);
    std::vector<Conjecture> conjs;
    if (!conjectures_path.empty() && fs::exists(conjectures_path))
        conjs = load_conjectures(conjectures_path);

    std::vector<std::vector<std::string>> sets = cfg.analysis.invariant_sets;
    if (sets.empty())
        sets = {fingerprint_base_columns(),
                {"n", "mean_degree", "clustering", "mis_ratio", "degree_std"}};

    // (instance, depth) -> row
    std::map<std::pair<std::string, int>, const KnowledgeRow*> by_key;
    for (const auto& row : table.rows) by_key[{row.instance_id, row.depth}] = &row;

    AnalyzeOutcome outcome;
    std::ostringstream text;
    json j;
    j["epsilon"] = cfg.analysis.epsilon;
    j["universality"] = json::array();

    for (const auto& set : sets) {
        outcome.reports.push_back(
            universality(table, set, cfg.analysis.epsilon, cfg.analysis.within_model));
        const UniversalityReport& report = outcome.reports.back();

        text << "invariant set:";
        for (const auto& c : set) text << ' ' << c;
        text << '\n' << universality_report_text(report);

        json rj;
        rj["invariants"] = set;
        rj["rate"] = report.rate;
        rj["groups"] = json::array();
        for (const auto& g : report.groups) {
            if (g.members.size() >= 2 && !g.universal) outcome.exceptions = true;
            json gj;
            gj["fingerprint"] = g.fingerprint.to_string();
            if (!g.model_kind.empty()) gj["model"] = g.model_kind;
            gj["p"] = g.depth;
            gj["size"] = g.members.size();
            gj["universal"] = g.universal;
            gj["members"] = g.members;
            json sj;
            for (const auto& [col, s] : g.sigma) sj[col] = s;
            gj["sigma"] = sj;

            if (g.members.size() >= 2 && !g.universal) {
                std::vector<std::vector<double>> params;
                for (const auto& id : g.members) {
                    auto it = by_key.find({id, g.depth});
                    if (it == by_key.end()) continue;
                    std::vector<double> v = it->second->gamma_star;
                    v.insert(v.end(), it->second->beta_star_abs.begin(),
                             it->second->beta_star_abs.end());
                    params.push_back(std::move(v));
                }
                if (params.size() >= 2) {
                    auto basins = basin_detect(params, cfg.analysis.epsilon);
                    gj["basins"] = basins.size();
                    text << "  basins " << basins.size() << " for "
                         << g.fingerprint.to_string() << " p=" << g.depth << '\n';
                }
            }
            rj["groups"].push_back(std::move(gj));
        }
        j["universality"].push_back(std::move(rj));
        text << '\n';
    }

    j["violations"] = json::array();
    for (const auto& conj : conjs) {
        if (conj.violations.empty()) continue;
        ViolationClusterReport report;
        try {
            report = violation_cluster(conj, table);
        } catch (const NoViolationsError&) {
            continue; // conjecture from a different table
        }
        ++outcome.violation_clusters;
        text << violation_report_text(report) << '\n';

        json vj;
        vj["statement"] = report.statement;
        vj["violators"] = report.violators;
        json shared = json::object();
        json unshared = json::array();
        for (const auto& sc : report.invariants) {
            if (sc.shared)
                shared[sc.column] = sc.value ? json(*sc.value) : json(nullptr);
            else
                unshared.push_back(sc.column);
        }
        vj["shared"] = shared;
        vj["unshared"] = unshared;
        json fps = json::array();
        for (const auto& fp : report.fingerprints) fps.push_back(fp.to_string());
        vj["fingerprints"] = fps;
        j["violations"].push_back(std::move(vj));
    }
    j["exceptions"] = outcome.exceptions;

    fs::create_directories(out_dir);
    std::ofstream txt(out_dir / "analysis.txt");
    if (!txt) throw Error("cannot write " + (out_dir / "analysis.txt").string());
    txt << text.str();
    std::ofstream js(out_dir / "analysis.json");
    if (!js) throw Error("cannot write " + (out_dir / "analysis.json").string());
    js << j.dump(2) << '\n';
    return outcome;
}

} // namespace cutbound
