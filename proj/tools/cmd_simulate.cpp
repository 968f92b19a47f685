#include <omp.h>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>

#include "commands.hpp"
#include "concord/errors.hpp"

namespace concord::cli {
namespace {

struct SimulateOpts {
    std::string scenario;
    double mu = 0.1;
    double kappa = 50.0;
    int trials = 1;
    double rho = 0.5;
    double nu = 0.0;
    double nu_percent = -1.0;
    std::size_t n = 1000;
    std::size_t reps = 100;
    std::vector<std::string> methods;
    std::vector<std::size_t> k_list{100};
    std::vector<std::size_t> q_list{100};
    std::string ties = "exclude";
    std::uint64_t seed = 0;
    std::string records;
    std::string pop_cache = "pop_cache.json";
    double pop_value = std::numeric_limits<double>::quiet_NaN();
    std::size_t pop_n = 0;
    std::size_t pop_reps = 5;
    std::uint64_t pop_seed = 777;
    int threads = 0;
};

// Population values are slow to recompute, so they are memoized in a small
// JSON file keyed by every parameter that shapes them.
double population_value(const SimulateOpts& o, double nu, std::size_t pop_n) {
    if (!std::isnan(o.pop_value)) return o.pop_value;

    std::string key = o.scenario + "|";
    if (o.scenario == "discrete")
        key += "mu=" + fmt_double(o.mu) + "|kappa=" + fmt_double(o.kappa) +
               "|trials=" + std::to_string(o.trials);
    else
        key += "rho=" + fmt_double(o.rho) + "|nu=" + fmt_double(nu);
    key += "|pop_n=" + std::to_string(pop_n) + "|pop_reps=" + std::to_string(o.pop_reps) +
           "|pop_seed=" + std::to_string(o.pop_seed);

    nlohmann::json cache = nlohmann::json::object();
    {
        std::ifstream in(o.pop_cache);
        if (in) {
            try {
                in >> cache;
            } catch (const nlohmann::json::exception&) {
                cache = nlohmann::json::object();
            }
            if (!cache.is_object()) cache = nlohmann::json::object();
        }
    }
    if (cache.contains(key) && cache[key].is_number()) return cache[key].get<double>();

    double value = 0.0;
    if (o.scenario == "discrete") {
        BetaBinConfig cfg;
        cfg.mu = o.mu;
        cfg.kappa = o.kappa;
        cfg.n_trials = o.trials;
        cfg.seed = o.pop_seed;
        value = population_c_discrete(cfg, pop_n, o.pop_reps);
    } else {
        value = population_c_continuous(o.rho, nu, pop_n, o.pop_reps, o.pop_seed);
    }
    cache[key] = value;
    std::ofstream out(o.pop_cache);
    if (out) out << cache.dump(2) << '\n';
    return value;
}

struct Entry {
    MethodRun run;
    std::vector<double> c_hats;
    std::vector<double> times_ms;
};

std::string cell_k(const MethodRun& m) { return m.method == "kmeans" ? std::to_string(m.k) : ""; }
std::string cell_q(const MethodRun& m) { return m.method == "marginal" ? std::to_string(m.q) : ""; }
std::string cell_ties(const SimulateOpts& o, const MethodRun& m) {
    return m.method == "exact" || m.method == "rank" ? o.ties : "";
}

void run_simulate(const SimulateOpts& o) {
    if (o.threads > 0) omp_set_num_threads(o.threads);
    const bool discrete = o.scenario == "discrete";

    double nu = o.nu;
    if (o.nu_percent >= 0.0) {
        if (discrete) throw CLI::ValidationError("--nu-percent", "gap percentiles are continuous-only");
        nu = calibrate_nu({o.nu_percent})[0];
    }

    std::vector<std::string> methods = o.methods;
    if (methods.empty())
        methods = discrete
                      ? std::vector<std::string>{"exact", "rank", "trapezium", "kmeans", "marginal"}
                      : std::vector<std::string>{"exact", "kmeans", "marginal"};

    std::vector<Entry> entries;
    for (const auto& method : methods) {
        if (!discrete && (method == "rank" || method == "trapezium"))
            throw CLI::ValidationError("--methods", method + " needs binary outcomes");
        if (method == "kmeans") {
            for (std::size_t k : o.k_list)
                entries.push_back({MethodRun{method, k, 0, parse_ties(o.ties), 0}, {}, {}});
        } else if (method == "marginal") {
            for (std::size_t q : o.q_list)
                entries.push_back({MethodRun{method, 0, q, parse_ties(o.ties), 0}, {}, {}});
        } else {
            entries.push_back({MethodRun{method, 0, 0, parse_ties(o.ties), 0}, {}, {}});
        }
    }

    BetaBinConfig bcfg;
    bcfg.mu = o.mu;
    bcfg.kappa = o.kappa;
    bcfg.n_trials = o.trials;
    if (discrete && !bcfg.unimodal())
        std::cerr << "warning: beta shape below 1 (alpha " << bcfg.alpha() << ", beta "
                  << bcfg.beta() << "), rates pile up at the extremes\n";

    const std::size_t pop_n = o.pop_n > 0 ? o.pop_n : (discrete ? 1000000 : 50000);
    const double pop = population_value(o, nu, pop_n);

    std::ofstream rec;
    if (!o.records.empty()) {
        rec.open(o.records);
        if (!rec) throw IoError("cannot open " + o.records + " for writing");
        rec << "method,k,q,nu,ties,n,rep,seed,c_hat,bias,elapsed_ms\n";
    }

    for (std::size_t r = 0; r < o.reps; ++r) {
        const std::uint64_t seed_r = derive_seed(o.seed, r);
        GroupedBinaryData grouped;
        ContinuousDataset cont;
        if (discrete) {
            bcfg.seed = seed_r;
            grouped = split_binary(sample_beta_binomial(bcfg, o.n));
        } else {
            GaussianPairConfig gcfg;
            gcfg.rho = o.rho;
            gcfg.nu = nu;
            gcfg.seed = seed_r;
            cont = ContinuousDataset{sample_gaussian_pairs(gcfg, o.n), nu};
        }
        for (auto& e : entries) {
            MethodRun m = e.run;
            m.seed = seed_r;
            const ConcordanceEstimate est =
                discrete ? run_discrete(grouped, m) : run_continuous(cont, m);
            e.c_hats.push_back(est.c_hat);
            e.times_ms.push_back(est.elapsed_seconds * 1e3);
            if (rec)
                rec << m.method << ',' << cell_k(m) << ',' << cell_q(m) << ','
                    << (discrete ? "" : fmt_double(nu)) << ',' << cell_ties(o, m) << ',' << o.n
                    << ',' << r << ',' << seed_r << ',' << fmt_double(est.c_hat) << ','
                    << fmt_double(est.c_hat - pop) << ',' << fmt_double(est.elapsed_seconds * 1e3)
                    << '\n';
        }
    }

    std::cout << "method,k,q,nu,ties,n,reps,population_c,bias_mean,bias_median,sigma,iqr,"
                 "time_ms_mean,time_ms_median,time_ms_sigma,time_ms_iqr\n";
    for (auto& e : entries) {
        std::vector<double> biases = e.c_hats;
        for (auto& b : biases) b -= pop;
        const Summary sb = summarize(std::move(biases));
        const Summary st = summarize(e.times_ms);
        std::cout << e.run.method << ',' << cell_k(e.run) << ',' << cell_q(e.run) << ','
                  << (discrete ? "" : fmt_double(nu)) << ',' << cell_ties(o, e.run) << ',' << o.n
                  << ',' << o.reps << ',' << fmt_double(pop) << ',' << fmt_double(sb.mean) << ','
                  << fmt_double(sb.median) << ',' << fmt_double(sb.sigma) << ','
                  << fmt_double(sb.iqr) << ',' << fmt_double(st.mean) << ','
                  << fmt_double(st.median) << ',' << fmt_double(st.sigma) << ','
                  << fmt_double(st.iqr) << '\n';
    }
}

}  // namespace

void register_simulate(CLI::App& app) {
    auto o = std::make_shared<SimulateOpts>();
    CLI::App* sub = app.add_subcommand("simulate", "Repeated-sampling sweep with bias against the population value");
    sub->add_option("--scenario", o->scenario, "data generating process")
        ->required()
        ->check(CLI::IsMember({"discrete", "continuous"}));
    sub->add_option("--mu", o->mu, "mean event rate (discrete)");
    sub->add_option("--kappa", o->kappa, "beta concentration (discrete)");
    sub->add_option("--trials", o->trials, "binomial trials per row (discrete)");
    sub->add_option("--rho", o->rho, "response-prediction correlation (continuous)");
    sub->add_option("--nu", o->nu, "comparability gap (continuous)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--nu-percent", o->nu_percent,
                    "calibrate the gap to this percentile of normal pair gaps");
    sub->add_option("--n", o->n, "rows per repetition")->check(CLI::PositiveNumber);
    sub->add_option("--reps", o->reps, "repetitions")->check(CLI::PositiveNumber);
    sub->add_option("--methods", o->methods, "estimators to sweep")
        ->delimiter(',')
        ->check(CLI::IsMember({"exact", "rank", "trapezium", "kmeans", "marginal"}));
    sub->add_option("--k-list", o->k_list, "cluster counts for kmeans")->delimiter(',');
    sub->add_option("--q-list", o->q_list, "boundary counts for marginal")->delimiter(',');
    sub->add_option("--ties", o->ties, "prediction-tie policy for exact forms")
        ->check(CLI::IsMember({"exclude", "half"}));
    sub->add_option("--seed", o->seed, "master seed, repetition seeds derive from it");
    sub->add_option("--records", o->records, "write per-repetition rows to this CSV");
    sub->add_option("--pop-cache", o->pop_cache, "population value cache file");
    sub->add_option("--pop-value", o->pop_value, "population value override, skips the oracle");
    sub->add_option("--pop-n", o->pop_n, "oracle sample size, 0 picks a scenario default");
    sub->add_option("--pop-reps", o->pop_reps, "oracle repetitions")->check(CLI::PositiveNumber);
    sub->add_option("--pop-seed", o->pop_seed, "oracle seed");
    sub->add_option("--threads", o->threads, "worker cap")->check(CLI::PositiveNumber);
    sub->callback([o] { run_simulate(*o); });
}

}  // namespace concord::cli
