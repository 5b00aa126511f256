#pragma once

#include "cutbound/expression.hpp"
#include "cutbound/knowledge.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace cutbound {

/// LowerBound claims expr <= target (slack = target - expr);
/// UpperBound claims target <= expr (slack = expr - target).
/// Negative slack is a violation either way.
enum class Direction { LowerBound, UpperBound };

std::string direction_name(Direction d);
Direction direction_from_name(const std::string& name);

struct Conjecture {
    std::string target;
    Direction direction = Direction::UpperBound;
    ExprPtr expr;
    int touches = 0;                      // rows with |slack| <= touch_tol
    std::vector<std::string> violations;  // instance ids with slack < 0
    double mean_slack = 0.0;              // over rows where the claim is defined
    double min_slack = 0.0;

    /// "target >= expr" or "target <= expr".
    std::string statement() const;
};

struct EngineConfig {
    int max_violations = 2;
    int min_touches = 1;
    double touch_tol = 1e-3;
    double snap_tol = 1e-6;       // max coefficient move when snapping to a rational
    long max_denominator = 60;
    std::vector<std::string> features; // empty = every numeric column except the target
    std::vector<std::string> targets = {"gamma_1", "beta_1", "ratio", "obj_calls"};
    std::vector<std::string> families; // empty = all form families
};

/// Parametric shapes the fitter can instantiate. Every family is a linear
/// combination of fixed basis functions of one or two features (the floor
/// family wraps the combination in a floor and pins the sqrt coefficient).
enum class Family {
    Constant,     // c
    Linear,       // a*x + b
    PairLinear,   // a*x + b*y + c
    Quadratic,    // a*x^2 + b*x + c
    LinSqrt,      // a*x + b*sqrt(y), no constant
    SqrtLinear,   // a*sqrt(x) + b
    FloorLinSqrt, // floor(a*x + sqrt(y)), upper bounds only
};

std::string family_name(Family f);
std::vector<std::string> all_family_names();

struct FormTemplate {
    Family family = Family::Constant;
    std::string target;
    std::string x;
    std::string y;
};

std::vector<FormTemplate> enumerate_forms(const std::vector<std::string>& features,
                                          const std::string& target,
                                          const EngineConfig& config);

struct FitOutcome {
    std::optional<Conjecture> conjecture;
    std::string rejection;                // set when conjecture is empty
    std::vector<double> raw_coefficients; // least-squares stage, pre-rounding
};

FitOutcome fit_bound(const FormTemplate& tmpl, const KnowledgeTable& table,
                     Direction direction, const EngineConfig& config);

/// Signed slack of the claim on one row. Throws UndefinedFeatureError when
/// the target or a referenced feature is undefined there.
double slack(const Conjecture& conj, const KnowledgeRow& row);

/// Keeps a conjecture iff some row has it strictly tighter than every other
/// kept conjecture; duplicates (same canonical expression) collapse first.
/// Inputs must share target and direction.
std::vector<Conjecture> dalmatian_filter(std::vector<Conjecture> conjs,
                                         const KnowledgeTable& table);

/// Interpretation stage: orders conjectures and carries their violation
/// annotations. Pluggable so a different reasoner can replace the default.
class ConjectureRanker {
public:
    virtual ~ConjectureRanker() = default;
    virtual std::vector<Conjecture> rank(std::vector<Conjecture> conjs,
                                         const KnowledgeTable& table) const = 0;
};

/// Default ranker: ascending mean slack, ties to more touches, then shorter
/// canonical statement, then lexicographic.
class SlackTightnessRanker final : public ConjectureRanker {
public:
    std::vector<Conjecture> rank(std::vector<Conjecture> conjs,
                                 const KnowledgeTable& table) const override;
};

std::vector<Conjecture> rank_conjectures(std::vector<Conjecture> conjs,
                                         const KnowledgeTable& table);

/// enumerate -> fit -> filter -> rank over every configured target and both
/// directions.
std::vector<Conjecture> generate_conjectures(const KnowledgeTable& table,
                                             const EngineConfig& config,
                                             const ConjectureRanker* ranker = nullptr);

/// Tab-separated records: target, direction, expression, touches,
/// mean_slack, min_slack, violation ids.
void save_conjectures(const std::vector<Conjecture>& conjs,
                      const std::filesystem::path& path);
std::vector<Conjecture> load_conjectures(const std::filesystem::path& path);

} // namespace cutbound
