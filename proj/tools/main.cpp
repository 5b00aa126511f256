// Batch pipeline driver: generate -> simulate -> conjecture -> analyze, each
// stage reading the previous stage's files. Exit codes: 0 ok, 1 validation
// or input error, 2 simulation finished with per-instance failures, 3 the
// analysis found non-universal fingerprint groups.

#include "cutbound/errors.hpp"
#include "cutbound/pipeline.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;

int main(int argc, char** argv) {
    CLI::App app{"MaxCut QAOA knowledge-table and conjecture pipeline"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::string manifest_path;
    std::string table_path;
    std::string conjectures_path;
    std::string init_path = "config.json";
    std::uint64_t seed = 0;
    int threads = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "run config JSON file");
        cmd->add_option("--out", out_dir, "output directory")->capture_default_str();
        cmd->add_option("--threads", threads, "worker threads (overrides config)");
        cmd->add_option("--seed", seed, "base seed (overrides config)");
    };

    CLI::App* init = app.add_subcommand("config-init", "write the default run config");
    init->add_option("--path", init_path, "destination file")->capture_default_str();

    CLI::App* generate =
        app.add_subcommand("generate", "sample graphs and write the manifest");
    add_common(generate);

    CLI::App* simulate =
        app.add_subcommand("simulate", "optimize every (graph, depth) into a table");
    add_common(simulate);
    simulate->add_option("--manifest", manifest_path, "manifest from generate");

    CLI::App* conjecture =
        app.add_subcommand("conjecture", "fit and filter inequality conjectures");
    add_common(conjecture);
    conjecture->add_option("--table", table_path, "knowledge table CSV");

    CLI::App* analyze =
        app.add_subcommand("analyze", "universality and violation reports");
    add_common(analyze);
    analyze->add_option("--table", table_path, "knowledge table CSV");
    analyze->add_option("--conjectures", conjectures_path, "conjecture TSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (init->parsed()) {
            cutbound::save_config(cutbound::default_config(), init_path);
            std::cout << "wrote " << init_path << '\n';
            return 0;
        }

        cutbound::RunConfig cfg = config_path.empty()
                                      ? cutbound::default_config()
                                      : cutbound::load_config(config_path);
        if (app.get_subcommands().front()->count("--seed") > 0) cfg.seed = seed;
        if (app.get_subcommands().front()->count("--threads") > 0) cfg.threads = threads;

        const fs::path out(out_dir);
        if (generate->parsed()) {
            auto man = cutbound::cmd_generate(cfg, out);
            std::cout << "generated " << man.entries.size() << " graphs -> "
                      << (out / "manifest.json").string() << '\n';
            return 0;
        }
        if (simulate->parsed()) {
            fs::path man = manifest_path.empty() ? out / "manifest.json"
                                                 : fs::path(manifest_path);
            auto outcome = cutbound::cmd_simulate(man, cfg, out);
            std::cout << "simulated " << outcome.table.rows.size() << " rows -> "
                      << (out / "knowledge.csv").string() << '\n';
            if (!outcome.failures.empty()) {
                std::cerr << outcome.failures.size() << " instance(s) failed, see "
                          << (out / "simulate_errors.txt").string() << '\n';
                return 2;
            }
            return 0;
        }
        if (conjecture->parsed()) {
            fs::path table = table_path.empty() ? out / "knowledge.csv"
                                                : fs::path(table_path);
            auto conjs = cutbound::cmd_conjecture(table, cfg, out);
            std::cout << "kept " << conjs.size() << " conjectures -> "
                      << (out / "conjectures.tsv").string() << '\n';
            return 0;
        }
        if (analyze->parsed()) {
            fs::path table = table_path.empty() ? out / "knowledge.csv"
                                                : fs::path(table_path);
            fs::path conjs = conjectures_path.empty() ? out / "conjectures.tsv"
                                                      : fs::path(conjectures_path);
            auto outcome = cutbound::cmd_analyze(table, conjs, cfg, out);
            std::cout << "analysis -> " << (out / "analysis.txt").string() << '\n';
            for (std::size_t i = 0; i < outcome.reports.size(); ++i)
                std::cout << "  set " << i + 1 << " rate "
                          << outcome.reports[i].rate << '\n';
            if (outcome.exceptions) {
                std::cerr << "non-universal groups present\n";
                return 3;
            }
            return 0;
        }
    } catch (const cutbound::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
