#include <omp.h>

#include <iostream>
#include <map>
#include <memory>

#include "commands.hpp"
#include "concord/errors.hpp"

namespace concord::cli {
namespace {

struct BenchOpts {
    std::string mode;
    std::vector<std::size_t> sizes;
    std::vector<std::string> methods;
    std::size_t k = 1000;
    std::size_t q = 1000;
    double nu = 0.0;
    double mu = 0.1;
    double kappa = 50.0;
    int trials = 1;
    double rho = 0.5;
    std::size_t reps = 3;
    std::uint64_t seed = 0;
    int threads = 0;
};

void run_bench(const BenchOpts& o) {
    if (o.threads > 0) omp_set_num_threads(o.threads);
    const bool discrete = o.mode == "discrete";

    std::vector<std::string> methods = o.methods;
    if (methods.empty())
        methods = discrete ? std::vector<std::string>{"rank", "trapezium", "kmeans", "marginal"}
                           : std::vector<std::string>{"kmeans", "marginal"};
    for (const auto& m : methods)
        if (!discrete && (m == "rank" || m == "trapezium"))
            throw CLI::ValidationError("--methods", m + " needs binary outcomes");

    // one dataset per size, reused by every method
    std::vector<GroupedBinaryData> grouped(o.sizes.size());
    std::vector<ContinuousDataset> cont(o.sizes.size());
    for (std::size_t i = 0; i < o.sizes.size(); ++i) {
        const std::uint64_t seed_i = derive_seed(o.seed, i);
        if (discrete) {
            BetaBinConfig cfg;
            cfg.mu = o.mu;
            cfg.kappa = o.kappa;
            cfg.n_trials = o.trials;
            cfg.seed = seed_i;
            grouped[i] = split_binary(sample_beta_binomial(cfg, o.sizes[i]));
        } else {
            GaussianPairConfig cfg;
            cfg.rho = o.rho;
            cfg.nu = o.nu;
            cfg.seed = seed_i;
            cont[i] = ContinuousDataset{sample_gaussian_pairs(cfg, o.sizes[i]), o.nu};
        }
    }

    std::cout << "method,n,median_ms,ratio_vs_prev\n";
    for (const auto& method : methods) {
        double prev = 0.0;
        for (std::size_t i = 0; i < o.sizes.size(); ++i) {
            const MethodRun m{method, o.k, o.q, TiesPolicy::exclude, o.seed};
            std::vector<double> times;
            for (std::size_t r = 0; r < o.reps; ++r) {
                const ConcordanceEstimate est =
                    discrete ? run_discrete(grouped[i], m) : run_continuous(cont[i], m);
                times.push_back(est.elapsed_seconds * 1e3);
            }
            const double med = summarize(std::move(times)).median;
            std::cout << method << ',' << o.sizes[i] << ',' << fmt_double(med) << ',';
            if (i > 0 && prev > 0.0) std::cout << fmt_double(med / prev);
            std::cout << '\n';
            prev = med;
        }
    }
}

}  // namespace

void register_bench(CLI::App& app) {
    auto o = std::make_shared<BenchOpts>();
    CLI::App* sub = app.add_subcommand("bench", "Estimator wall times across dataset sizes");
    sub->add_option("--mode", o->mode, "outcome type")
        ->required()
        ->check(CLI::IsMember({"discrete", "continuous"}));
    sub->add_option("--sizes", o->sizes, "dataset sizes to time")
        ->required()
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    sub->add_option("--methods", o->methods,
                    "estimators to time (default skips the quadratic exact scan)")
        ->delimiter(',')
        ->check(CLI::IsMember({"exact", "rank", "trapezium", "kmeans", "marginal"}));
    sub->add_option("--k", o->k, "clusters (kmeans)")->check(CLI::PositiveNumber);
    sub->add_option("--q", o->q, "percentile boundaries (marginal)")->check(CLI::PositiveNumber);
    sub->add_option("--nu", o->nu, "comparability gap (continuous)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--mu", o->mu, "mean event rate (discrete)");
    sub->add_option("--kappa", o->kappa, "beta concentration (discrete)");
    sub->add_option("--trials", o->trials, "binomial trials per row (discrete)");
    sub->add_option("--rho", o->rho, "response-prediction correlation (continuous)");
    sub->add_option("--reps", o->reps, "timed repetitions per cell, median reported")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", o->seed, "data and clustering seed");
    sub->add_option("--threads", o->threads, "worker cap")->check(CLI::PositiveNumber);
    sub->callback([o] { run_bench(*o); });
}

}  // namespace concord::cli
