#include <omp.h>

#include <fstream>
#include <iostream>
#include <memory>

#include "commands.hpp"
#include "concord/errors.hpp"

namespace concord::cli {
namespace {

struct ComputeOpts {
    std::string mode, method, input;
    std::string output = "json";
    std::string ties = "exclude";
    std::size_t k = 8;
    std::size_t q = 10;
    double nu = 0.0;
    std::uint64_t seed = 0;
    int threads = 0;
    std::string roc_out, cells_out;
    int response_col = 0;
    int prediction_col = 1;
    std::string response_name, prediction_name;
    std::string header = "auto";
};

CsvFormat make_format(const ComputeOpts& o) {
    CsvFormat fmt;
    fmt.response_col = o.response_name.empty() ? o.response_col : -1;
    fmt.prediction_col = o.prediction_name.empty() ? o.prediction_col : -1;
    fmt.response_name = o.response_name;
    fmt.prediction_name = o.prediction_name;
    fmt.header = o.header == "yes"  ? CsvFormat::Header::present
                 : o.header == "no" ? CsvFormat::Header::absent
                                    : CsvFormat::Header::autodetect;
    return fmt;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    return out;
}

void run_compute(const ComputeOpts& o) {
    if (!o.roc_out.empty() && (o.mode != "discrete" || o.method != "trapezium"))
        throw CLI::ValidationError("--roc-out", "vertex dumps need --mode discrete --method trapezium");
    if (!o.cells_out.empty() && (o.mode != "continuous" || o.method != "marginal"))
        throw CLI::ValidationError("--cells-out",
                                   "cell dumps need --mode continuous --method marginal");
    if (o.threads > 0) omp_set_num_threads(o.threads);

    const auto rows = ingest_csv_file(o.input, make_format(o));
    const MethodRun m{o.method, o.k, o.q, parse_ties(o.ties), o.seed};

    nlohmann::json params{{"mode", o.mode}};
    ConcordanceEstimate est;
    if (o.mode == "discrete") {
        const GroupedBinaryData g = split_binary(rows);
        est = run_discrete(g, m);
        if (!o.roc_out.empty()) {
            auto out = open_out(o.roc_out);
            write_roc_csv(roc_points(g), out);
        }
    } else {
        const ContinuousDataset data{rows, o.nu};
        est = run_continuous(data, m);
        params["nu"] = o.nu;
        if (!o.cells_out.empty()) {
            std::vector<double> responses;
            responses.reserve(rows.size());
            for (const auto& r : rows) responses.push_back(r.response);
            auto out = open_out(o.cells_out);
            write_cells_csv(build_cell_counts(rows, percentile_boundaries(responses, o.q)), out);
        }
    }
    if (o.method == "exact" || o.method == "rank") params["ties"] = o.ties;
    if (o.method == "kmeans") {
        params["k"] = o.k;
        params["seed"] = o.seed;
    }
    if (o.method == "marginal") params["q"] = o.q;

    if (o.output == "json") {
        std::cout << record_json(est, params, rows.size()).dump(2) << '\n';
        return;
    }
    std::cout << "method,mode,k,q,nu,ties,seed,c_hat,concordant_mass,discordant_mass,elapsed_ms,n\n"
              << o.method << ',' << o.mode << ','
              << (o.method == "kmeans" ? std::to_string(o.k) : "") << ','
              << (o.method == "marginal" ? std::to_string(o.q) : "") << ','
              << (o.mode == "continuous" ? fmt_double(o.nu) : "") << ','
              << (o.method == "exact" || o.method == "rank" ? o.ties : "") << ','
              << (o.method == "kmeans" ? std::to_string(o.seed) : "") << ','
              << fmt_double(est.c_hat) << ',' << fmt_double(est.concordant_mass) << ','
              << fmt_double(est.discordant_mass) << ',' << fmt_double(est.elapsed_seconds * 1e3)
              << ',' << rows.size() << '\n';
}

}  // namespace

void register_compute(CLI::App& app) {
    auto o = std::make_shared<ComputeOpts>();
    CLI::App* sub = app.add_subcommand("compute", "Estimate concordance from a CSV file");
    sub->add_option("--mode", o->mode, "outcome type")
        ->required()
        ->check(CLI::IsMember({"discrete", "continuous"}));
    sub->add_option("--input", o->input, "CSV with response and prediction columns")->required();
    sub->add_option("--method", o->method, "estimator")
        ->required()
        ->check(CLI::IsMember({"exact", "rank", "trapezium", "kmeans", "marginal"}));
    sub->add_option("--k", o->k, "clusters (kmeans)")->check(CLI::PositiveNumber);
    sub->add_option("--q", o->q, "percentile boundaries (marginal)")->check(CLI::PositiveNumber);
    sub->add_option("--nu", o->nu, "comparability gap (continuous)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", o->seed, "clustering seed");
    sub->add_option("--ties", o->ties, "prediction-tie policy for exact forms")
        ->check(CLI::IsMember({"exclude", "half"}));
    sub->add_option("--output", o->output, "record format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--roc-out", o->roc_out, "write ROC vertices here (trapezium)");
    sub->add_option("--cells-out", o->cells_out, "write joint band counts here (marginal)");
    sub->add_option("--threads", o->threads, "worker cap")->check(CLI::PositiveNumber);
    sub->add_option("--response-col", o->response_col, "0-based response column");
    sub->add_option("--prediction-col", o->prediction_col, "0-based prediction column");
    sub->add_option("--response-name", o->response_name, "response column header name");
    sub->add_option("--prediction-name", o->prediction_name, "prediction column header name");
    sub->add_option("--header", o->header, "header row handling")
        ->check(CLI::IsMember({"auto", "yes", "no"}));
    sub->callback([o] { run_compute(*o); });
}

}  // namespace concord::cli
