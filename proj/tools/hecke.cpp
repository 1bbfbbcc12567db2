#include <CLI11.hpp>

#include "hecke/cli.hpp"

// Batch front end: exact tables and verification suites for the degenerate
// cyclotomic Hecke algebras H_{m,n}(Q).
//
// Exit codes: 0 ok, 1 verification failure, 2 configuration error.

int main(int argc, char** argv) {
    CLI::App app{"exact computations in degenerate cyclotomic Hecke algebras"};
    app.require_subcommand(1);

    hecke::cli::RunConfig cfg;
    std::string output = "json";
    std::string qspec;
    std::string bindingFile;
    std::string suitesArg;
    std::string configFile;

    auto addCommon = [&](CLI::App* sub) {
        sub->add_option("--m", cfg.m, "number of parameters (components)");
        sub->add_option("--n", cfg.n, "number of strands");
        sub->add_option("--q", qspec, "comma-separated exact parameter values, e.g. \"0,7\"");
        sub->add_option("--binding", bindingFile, "JSON binding file {m, n, q}");
        sub->add_option("--output", output, "output format: json, csv, md");
        sub->add_option("--cache-dir", cfg.cache_dir,
                        "cache directory (default: HECKE_CACHE_DIR when set)");
        sub->add_option("--seed", cfg.seed, "seed for randomized property checks");
        sub->add_option("--shape", cfg.shape, "restrict to one shape, e.g. \"3.1|1\"");
        sub->add_option("--config", configFile, "JSON config file; flags override its fields");
    };

    CLI::App* cSchur = app.add_subcommand("schur", "Schur elements by three routes");
    CLI::App* cGram = app.add_subcommand("gram", "Gram matrices and determinants");
    CLI::App* cGamma = app.add_subcommand("gamma", "gamma tables (symbolic and evaluated)");
    CLI::App* cTab = app.add_subcommand("tableaux", "standard tableaux listings");
    CLI::App* cDims = app.add_subcommand("dims", "dimension identities");
    CLI::App* cVerify = app.add_subcommand("verify", "run verification suites");
    for (CLI::App* sub : {cSchur, cGram, cGamma, cTab, cDims, cVerify}) addCommon(sub);
    cGamma->add_flag("--characters", cfg.characters, "append character tables");
    cGram->add_flag("--matrix", cfg.include_matrix, "include full matrices (json only)");
    cGram->add_flag("--action", cfg.include_action,
                    "include generator action matrices on the Specht basis (json only)");
    cVerify->add_option("--suites", suitesArg,
                        "comma-separated subset of: relations,cellular,seminormal,matrix-units,"
                        "idempotents,dual,tau-z,schur (default: all)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!configFile.empty()) {
            std::ifstream in(configFile);
            if (!in) throw hecke::ConfigError("cannot open config file: " + configFile);
            hecke::Json j;
            in >> j;
            if (j.contains("m") && cSchur->count("--m") == 0) cfg.m = j["m"].get<int>();
            if (j.contains("n")) cfg.n = j["n"].get<int>();
            if (j.contains("q") && qspec.empty()) qspec = j["q"].get<std::string>();
            if (j.contains("output")) output = j["output"].get<std::string>();
            if (j.contains("seed")) cfg.seed = j["seed"].get<uint64_t>();
            if (j.contains("cache_dir") && cfg.cache_dir.empty())
                cfg.cache_dir = j["cache_dir"].get<std::string>();
            if (j.contains("suites") && suitesArg.empty())
                suitesArg = j["suites"].get<std::string>();
        }

        if (cSchur->parsed()) cfg.command = hecke::cli::Command::schur;
        if (cGram->parsed()) cfg.command = hecke::cli::Command::gram;
        if (cGamma->parsed()) cfg.command = hecke::cli::Command::gamma;
        if (cTab->parsed()) cfg.command = hecke::cli::Command::tableaux;
        if (cDims->parsed()) cfg.command = hecke::cli::Command::dims;
        if (cVerify->parsed()) cfg.command = hecke::cli::Command::verify;

        cfg.output = hecke::parse_format(output);
        if (!bindingFile.empty()) cfg.binding_spec = "@" + bindingFile;
        else if (!qspec.empty()) cfg.binding_spec = qspec;
        if (cfg.cache_dir.empty()) {
            if (const char* env = std::getenv("HECKE_CACHE_DIR")) cfg.cache_dir = env;
        }
        if (!suitesArg.empty() && suitesArg != "all") {
            std::stringstream ss(suitesArg);
            std::string tok;
            while (std::getline(ss, tok, ',')) cfg.suites.push_back(tok);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    return hecke::cli::run(cfg, std::cout, std::cerr);
}
