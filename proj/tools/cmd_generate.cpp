#include <iostream>
#include <memory>

#include "commands.hpp"
#include "concord/errors.hpp"

namespace concord::cli {
namespace {

struct GenerateOpts {
    std::string scenario;
    std::size_t n = 1000;
    std::uint64_t seed = 0;
    std::string out = "-";
    double mu = 0.1;
    double kappa = 50.0;
    int trials = 1;
    double rho = 0.5;
};

void run_generate(const GenerateOpts& o) {
    std::vector<ScoredPair> rows;
    if (o.scenario == "discrete") {
        BetaBinConfig cfg;
        cfg.mu = o.mu;
        cfg.kappa = o.kappa;
        cfg.n_trials = o.trials;
        cfg.seed = o.seed;
        if (!cfg.unimodal())
            std::cerr << "warning: beta shape below 1 (alpha " << cfg.alpha() << ", beta "
                      << cfg.beta() << "), rates pile up at the extremes\n";
        rows = sample_beta_binomial(cfg, o.n);
    } else {
        GaussianPairConfig cfg;
        cfg.rho = o.rho;
        cfg.seed = o.seed;
        rows = sample_gaussian_pairs(cfg, o.n);
    }
    if (o.out == "-") {
        write_csv(rows, std::cout);
    } else {
        write_csv_file(rows, o.out);
    }
}

}  // namespace

void register_generate(CLI::App& app) {
    auto o = std::make_shared<GenerateOpts>();
    CLI::App* sub = app.add_subcommand("generate", "Sample a scenario dataset to CSV");
    sub->add_option("--scenario", o->scenario, "data generating process")
        ->required()
        ->check(CLI::IsMember({"discrete", "continuous"}));
    sub->add_option("--n", o->n, "rows to sample")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o->seed, "generator seed");
    sub->add_option("--out", o->out, "output path, - for standard output");
    sub->add_option("--mu", o->mu, "mean event rate (discrete)");
    sub->add_option("--kappa", o->kappa, "beta concentration (discrete)");
    sub->add_option("--trials", o->trials, "binomial trials per row (discrete)");
    sub->add_option("--rho", o->rho, "response-prediction correlation (continuous)");
    sub->callback([o] { run_generate(*o); });
}

}  // namespace concord::cli
