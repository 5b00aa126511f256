#pragma once

#include "cutbound/analysis.hpp"
#include "cutbound/conjecture.hpp"
#include "cutbound/graph.hpp"
#include "cutbound/knowledge.hpp"
#include "cutbound/optimizer.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace cutbound {

/// One generator request: `count` connected graphs with n drawn uniformly
/// from the feasible values in [n_min, n_max]. For gnm the edge count is
/// resolved per instance as round(mean_degree * n / 2), clamped to the
/// connected-simple range.
struct ModelSpec {
    std::string model = "gnm"; // ba | ws | gnm | regular
    int count = 0;
    int n_min = 6;
    int n_max = 14;
    int attach = 2;          // ba
    int k = 4;               // ws
    double beta = 0.1;       // ws
    double mean_degree = 3.0; // gnm
    int d = 3;               // regular
};

struct AnalysisConfig {
    std::vector<std::vector<std::string>> invariant_sets;
    double epsilon = 1e-3;
    bool within_model = false;
};

/// Everything a run depends on. A run is a pure function of this struct.
struct RunConfig {
    std::uint64_t seed = 1;
    std::vector<ModelSpec> models;
    std::vector<int> depths = {1};
    OptimizeOptions optimizer;
    EngineConfig engine;
    AnalysisConfig analysis;
    int threads = 1;
};

RunConfig default_config();

/// JSON round-trip. load_config reports bad fields by path
/// ("models[2].count: must be positive").
RunConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const RunConfig& cfg);
void save_config(const RunConfig& cfg, const std::filesystem::path& path);

struct ManifestEntry {
    std::string id;
    std::string model;
    int n = 0;
    GraphModel params;
    std::uint64_t seed = 0;   // generation seed; simulation seeds derive from it
    std::string file;         // edge list path relative to the manifest
};

struct Manifest {
    std::uint64_t seed = 0;
    std::vector<ManifestEntry> entries;
};

/// Writes <out_dir>/graphs/*.txt and <out_dir>/manifest.json.
Manifest cmd_generate(const RunConfig& cfg, const std::filesystem::path& out_dir);

Manifest load_manifest(const std::filesystem::path& path);

struct SimulateOutcome {
    KnowledgeTable table;              // sorted by (instance_id, depth)
    std::vector<std::string> failures; // "id p=k: message" lines, task order
};

/// One row per (manifest entry, depth), parallel across tasks; writes
/// <out_dir>/knowledge.csv and, when failures occur,
/// <out_dir>/simulate_errors.txt. Output is identical for any thread count.
SimulateOutcome cmd_simulate(const std::filesystem::path& manifest_path,
                             const RunConfig& cfg,
                             const std::filesystem::path& out_dir);

/// Full enumerate -> fit -> filter -> rank sweep; writes
/// <out_dir>/conjectures.tsv.
std::vector<Conjecture> cmd_conjecture(const std::filesystem::path& table_path,
                                       const RunConfig& cfg,
                                       const std::filesystem::path& out_dir);

struct AnalyzeOutcome {
    std::vector<UniversalityReport> reports; // one per configured invariant set
    int violation_clusters = 0;
    bool exceptions = false; // some size >= 2 group failed the epsilon test
};

/// Writes <out_dir>/analysis.txt and <out_dir>/analysis.json.
AnalyzeOutcome cmd_analyze(const std::filesystem::path& table_path,
                           const std::filesystem::path& conjectures_path,
                           const RunConfig& cfg,
                           const std::filesystem::path& out_dir);

} // namespace cutbound
