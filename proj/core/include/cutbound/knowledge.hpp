#pragma once

#include "cutbound/invariants.hpp"
#include "cutbound/optimizer.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace cutbound {

/// One problem instance: static graph features plus the optimized circuit
/// quantities for one depth.
struct KnowledgeRow {
    std::string instance_id;
    std::string model_kind;
    InvariantVector invariants;
    int depth = 0;
    std::vector<double> gamma_star;    // raw optimizer output per layer
    std::vector<double> beta_star_abs; // |beta*| per layer
    double expectation = 0.0;
    int maxcut = 0;
    double ratio = 0.0;
    long obj_calls = 0;
    std::uint64_t seed = 0;
};

struct KnowledgeTable {
    std::vector<KnowledgeRow> rows;

    int max_depth() const;

    /// Numeric columns the conjecture engine may reference, in serialization
    /// order. Per-layer parameter columns run up to the table's max depth.
    std::vector<std::string> feature_columns() const;
};

/// Numeric value of a named column on one row; nullopt when the column is
/// undefined there (assortativity on degenerate graphs, parameter layers
/// beyond the row's depth). Throws MissingColumnError for unknown names.
std::optional<double> column_value(const KnowledgeRow& row, const std::string& column);

/// Column naming helpers for the per-layer parameters.
std::string gamma_column(int layer);
std::string beta_column(int layer);

KnowledgeRow build_row(const Graph& g, int p, std::uint64_t seed,
                       const OptimizeOptions& opts, const std::string& instance_id,
                       const std::string& model_kind);

/// Comma-separated text with a header row; reals at 17 significant digits so
/// save -> load is exact; undefined cells are empty.
void save(const KnowledgeTable& table, const std::filesystem::path& path);
KnowledgeTable load(const std::filesystem::path& path);

} // namespace cutbound
