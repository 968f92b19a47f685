#include <iostream>

#include "commands.hpp"
#include "concord/errors.hpp"

// Exit codes: 0 success, 1 usage or input-data error, 2 estimation error
// (the estimator cannot produce a value on this input).
int main(int argc, char** argv) {
    CLI::App app{"concordance probability toolkit"};
    app.require_subcommand(1);
    concord::cli::register_compute(app);
    concord::cli::register_generate(app);
    concord::cli::register_simulate(app);
    concord::cli::register_bench(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    } catch (const concord::EstimationError& e) {
        std::cerr << e.name() << ": " << e.what() << '\n';
        return 2;
    } catch (const concord::DataError& e) {
        std::cerr << e.name() << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
