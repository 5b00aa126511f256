#include "cutbound/knowledge.hpp"

#include "cutbound/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <unordered_map>

namespace cutbound {

namespace {

const char* const kFixedColumns[] = {
    "instance_id", "model",       "n",       "m",           "mean_degree",
    "clustering",  "chromatic",   "mis_ratio", "assortativity", "degree_std",
    "p",           "maxcut",      "expectation", "ratio",      "obj_calls",
    "seed",
};

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string gamma_column(int layer) { return "gamma_" + std::to_string(layer); }
std::string beta_column(int layer) { return "beta_" + std::to_string(layer); }

int KnowledgeTable::max_depth() const {
    int p = 0;
    for (const auto& row : rows) p = std::max(p, row.depth);
    return p;
}

std::vector<std::string> KnowledgeTable::feature_columns() const {
    std::vector<std::string> cols = {"n",          "m",         "mean_degree",
                                     "clustering", "chromatic", "mis_ratio",
                                     "assortativity", "degree_std", "p",
                                     "maxcut",     "expectation", "ratio",
                                     "obj_calls"};
    const int p = max_depth();
    for (int k = 1; k <= p; ++k) cols.push_back(gamma_column(k));
    for (int k = 1; k <= p; ++k) cols.push_back(beta_column(k));
    return cols;
}

std::optional<double> column_value(const KnowledgeRow& row, const std::string& column) {
    const auto& iv = row.invariants;
    if (column == "n") return static_cast<double>(iv.n);
    if (column == "m") return static_cast<double>(iv.m);
    if (column == "mean_degree") return iv.mean_degree;
    if (column == "clustering") return iv.clustering;
    if (column == "chromatic") return static_cast<double>(iv.chromatic);
    if (column == "mis_ratio") return iv.mis_ratio;
    if (column == "assortativity") return iv.assortativity;
    if (column == "degree_std") return iv.degree_std;
    if (column == "p") return static_cast<double>(row.depth);
    if (column == "maxcut") return static_cast<double>(row.maxcut);
    if (column == "expectation") return row.expectation;
    if (column == "ratio") return row.ratio;
    if (column == "obj_calls") return static_cast<double>(row.obj_calls);
    if (column.rfind("gamma_", 0) == 0 || column.rfind("beta_", 0) == 0) {
        bool is_gamma = column[0] == 'g';
        const std::string tail = column.substr(is_gamma ? 6 : 5);
        char* end = nullptr;
        long k = std::strtol(tail.c_str(), &end, 10);
        if (end != tail.c_str() + tail.size() || k < 1)
            throw MissingColumnError("unknown column '" + column + "'");
        if (k > row.depth) return std::nullopt;
        return is_gamma ? row.gamma_star[k - 1] : row.beta_star_abs[k - 1];
    }
    throw MissingColumnError("unknown column '" + column + "'");
}

KnowledgeRow build_row(const Graph& g, int p, std::uint64_t seed,
                       const OptimizeOptions& opts, const std::string& instance_id,
                       const std::string& model_kind) {
    KnowledgeRow row;
    row.instance_id = instance_id;
    row.model_kind = model_kind;
    row.invariants = invariant_vector(g);
    row.depth = p;
    OptResult opt = optimize_qaoa(g, p, seed, opts);
    row.gamma_star = opt.params.gamma;
    row.beta_star_abs = opt.params.beta;
    for (double& b : row.beta_star_abs) b = std::abs(b);
    row.expectation = opt.value;
    row.maxcut = opt.maxcut;
    row.ratio = opt.ratio;
    row.obj_calls = opt.obj_calls;
    row.seed = seed;
    return row;
}

void save(const KnowledgeTable& table, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    const int p = table.max_depth();

    std::string header;
    for (const char* c : kFixedColumns) {
        if (!header.empty()) header += ',';
        header += c;
    }
    for (int k = 1; k <= p; ++k) header += ',' + gamma_column(k);
    for (int k = 1; k <= p; ++k) header += ',' + beta_column(k);
    out << header << '\n';

    for (const auto& row : table.rows) {
        const auto& iv = row.invariants;
        out << row.instance_id << ',' << row.model_kind << ',' << iv.n << ',' << iv.m
            << ',' << format_real(iv.mean_degree) << ',' << format_real(iv.clustering)
            << ',' << iv.chromatic << ',' << format_real(iv.mis_ratio) << ',';
        if (iv.assortativity) out << format_real(*iv.assortativity);
        out << ',' << format_real(iv.degree_std) << ',' << row.depth << ','
            << row.maxcut << ',' << format_real(row.expectation) << ','
            << format_real(row.ratio) << ',' << row.obj_calls << ',' << row.seed;
        for (int k = 0; k < p; ++k) {
            out << ',';
            if (k < row.depth) out << format_real(row.gamma_star[k]);
        }
        for (int k = 0; k < p; ++k) {
            out << ',';
            if (k < row.depth) out << format_real(row.beta_star_abs[k]);
        }
        out << '\n';
    }
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    cells.push_back(std::move(cur));
    return cells;
}

struct CellParser {
    const std::filesystem::path& path;
    long row_number; // 1-based data row

    [[noreturn]] void fail(const std::string& column, const std::string& what) const {
        throw ParseError("row " + std::to_string(row_number) + ", column " + column +
                             " of " + path.string() + ": " + what,
                         row_number + 1);
    }

    double real(const std::string& cell, const std::string& column) const {
        char* end = nullptr;
        double v = std::strtod(cell.c_str(), &end);
        if (cell.empty() || end != cell.c_str() + cell.size())
            fail(column, "expected a real number, got '" + cell + "'");
        return v;
    }

    long integer(const std::string& cell, const std::string& column) const {
        char* end = nullptr;
        long v = std::strtol(cell.c_str(), &end, 10);
        if (cell.empty() || end != cell.c_str() + cell.size())
            fail(column, "expected an integer, got '" + cell + "'");
        return v;
    }

    std::uint64_t uinteger(const std::string& cell, const std::string& column) const {
        char* end = nullptr;
        std::uint64_t v = std::strtoull(cell.c_str(), &end, 10);
        if (cell.empty() || end != cell.c_str() + cell.size())
            fail(column, "expected an unsigned integer, got '" + cell + "'");
        return v;
    }
};

} // namespace

KnowledgeTable load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string(), 0);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty file " + path.string(), 0);

    auto header = split_csv(line);
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < header.size(); ++i) index[header[i]] = i;
    for (const char* c : kFixedColumns)
        if (!index.count(c))
            throw ParseError("missing column '" + std::string(c) + "' in " +
                                 path.string(),
                             1);
    int file_depth = 0;
    while (index.count(gamma_column(file_depth + 1))) ++file_depth;
    for (int k = 1; k <= file_depth; ++k)
        if (!index.count(beta_column(k)))
            throw ParseError("missing column '" + beta_column(k) + "' in " +
                                 path.string(),
                             1);

    KnowledgeTable table;
    long row_number = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++row_number;
        auto cells = split_csv(line);
        CellParser parse{path, row_number};
        if (cells.size() != header.size())
            parse.fail("*", "expected " + std::to_string(header.size()) +
                                " cells, got " + std::to_string(cells.size()));
        auto cell = [&](const std::string& name) -> const std::string& {
            return cells[index.at(name)];
        };

        KnowledgeRow row;
        row.instance_id = cell("instance_id");
        row.model_kind = cell("model");
        auto& iv = row.invariants;
        iv.n = static_cast<int>(parse.integer(cell("n"), "n"));
        iv.m = static_cast<int>(parse.integer(cell("m"), "m"));
        iv.mean_degree = parse.real(cell("mean_degree"), "mean_degree");
        iv.clustering = parse.real(cell("clustering"), "clustering");
        iv.chromatic = static_cast<int>(parse.integer(cell("chromatic"), "chromatic"));
        iv.mis_ratio = parse.real(cell("mis_ratio"), "mis_ratio");
        if (!cell("assortativity").empty())
            iv.assortativity = parse.real(cell("assortativity"), "assortativity");
        iv.degree_std = parse.real(cell("degree_std"), "degree_std");
        row.depth = static_cast<int>(parse.integer(cell("p"), "p"));
        row.maxcut = static_cast<int>(parse.integer(cell("maxcut"), "maxcut"));
        row.expectation = parse.real(cell("expectation"), "expectation");
        row.ratio = parse.real(cell("ratio"), "ratio");
        row.obj_calls = parse.integer(cell("obj_calls"), "obj_calls");
        row.seed = parse.uinteger(cell("seed"), "seed");
        if (row.depth < 0 || row.depth > file_depth)
            parse.fail("p", "depth exceeds the table's parameter columns");
        for (int k = 1; k <= row.depth; ++k) {
            row.gamma_star.push_back(parse.real(cell(gamma_column(k)), gamma_column(k)));
            row.beta_star_abs.push_back(parse.real(cell(beta_column(k)), beta_column(k)));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace cutbound
