#pragma once

#include "cutbound/conjecture.hpp"
#include "cutbound/knowledge.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cutbound {

/// Invariant values rounded to 6 decimals, held in micro-units so equality
/// is exact; an undefined cell stays distinguishable from every number.
struct Fingerprint {
    std::vector<std::pair<std::string, std::optional<std::int64_t>>> cells;

    bool operator==(const Fingerprint&) const = default;
    bool operator<(const Fingerprint& other) const;
    std::string to_string() const;
};

/// The four-column structural fingerprint: n, mean_degree, clustering,
/// mis_ratio.
std::vector<std::string> fingerprint_base_columns();

Fingerprint fingerprint_of(const KnowledgeRow& row,
                           const std::vector<std::string>& invariant_set);

struct UniversalityGroup {
    Fingerprint fingerprint;
    std::string model_kind; // empty when grouping ignores the model
    int depth = 1;
    std::vector<std::string> members;                  // instance ids, table order
    std::vector<std::pair<std::string, double>> sigma; // per gamma_k / beta_k column
    bool universal = true;                             // all sigma < epsilon
};

struct UniversalityReport {
    std::vector<UniversalityGroup> groups; // deterministic order
    double rate = 1.0; // universal fraction of size >= 2 groups; 1 when none exist
    double epsilon = 1e-3;
};

/// Groups rows by fingerprint over invariant_set (plus model kind when
/// within_model, plus depth always) and tests per-layer parameter spread.
UniversalityReport universality(const KnowledgeTable& table,
                                const std::vector<std::string>& invariant_set,
                                double epsilon, bool within_model);

struct SharedColumn {
    std::string column;
    bool shared = false;
    std::optional<double> value; // the common value; empty when unshared or undefined
};

struct ParameterSpread {
    std::string column;
    double lo = 0.0;
    double hi = 0.0;
    double sigma = 0.0;
};

struct ViolationClusterReport {
    std::string statement;
    std::vector<std::string> violators;
    std::vector<SharedColumn> invariants;  // static graph invariants
    std::vector<Fingerprint> fingerprints; // distinct among violators, sorted
    std::vector<ParameterSpread> parameters;
};

/// Structural summary of a conjecture's violating rows. Throws
/// NoViolationsError when no violator appears in the table.
ViolationClusterReport
violation_cluster(const Conjecture& conj, const KnowledgeTable& table,
                  const std::vector<std::string>& invariant_set);

ViolationClusterReport violation_cluster(const Conjecture& conj,
                                         const KnowledgeTable& table);

struct BasinCluster {
    std::vector<std::size_t> members; // indices into the input list, ascending
    std::vector<double> centroid;
};

/// Single-linkage clustering at Euclidean threshold 10 * epsilon. Vectors
/// are compared as stored; no periodic wrapping of angles. One cluster means
/// the group sits in a single basin.
std::vector<BasinCluster> basin_detect(const std::vector<std::vector<double>>& params,
                                       double epsilon);

std::string universality_report_text(const UniversalityReport& report);
std::string violation_report_text(const ViolationClusterReport& report);

} // namespace cutbound
