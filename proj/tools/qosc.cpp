#include "CLI11.hpp"
#include "suites.hpp"

#include "qosc/scalars.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

int env_threads() {
    const char* v = std::getenv("QOSC_THREADS");
    if (!v || !*v) return 1;
    try {
        return std::max(1, std::stoi(v));
    } catch (const std::exception&) {
        return 1;
    }
}

void add_int(CLI::App& app, const std::string& flag, std::optional<int>& slot, const std::string& help) {
    app.add_option_function<int>(flag, [&slot](const int& v) { slot = v; }, help);
}

}  // namespace

int main(int argc, char** argv) {
    using namespace qosc::cli;
    CLI::App app{"Exact checks for q-oscillator representations"};
    app.require_subcommand(1, 1);

    Params p;
    p.threads = env_threads();
    std::string out_path;
    bool timing = false;

    for (const auto& name : suite_names()) {
        CLI::App* sub = app.add_subcommand(name, "run the " + name + " suite");
        sub->add_option("--eps", p.eps, "parity bitstring, e.g. 0101");
        sub->add_option("--r", p.r, "split point");
        sub->add_option("--degree", p.degree, "maximal total occupation");
        sub->add_option("--depth", p.depth, "depth below the top weight");
        add_int(*sub, "--l", p.l, "first charge");
        add_int(*sub, "--m", p.m, "second charge");
        add_int(*sub, "--k", p.k, "third charge (yangbaxter)");
        sub->add_option("--components", p.components, "number of components beyond the top");
        sub->add_option("--s", p.s, "number of factors (kr)");
        sub->add_option("--c", p.c, "spectral parameter (kr), exact text such as q^2");
        sub->add_option("--charges", p.charges, "charges of the fused factors")->delimiter(',');
        sub->add_option("--params", p.params, "spectral parameters of the fused factors")->delimiter(',');
        sub->add_option("--remove", p.remove, "parent slots removed by the truncation")->delimiter(',');
        sub->add_option_function<std::string>("--z", [&p](const std::string& v) { p.z = v; }, "specialize z (rmatrix)");
        sub->add_option("--order", p.order, "series order (drinfeld)");
        sub->add_option("--csv", p.csv, "character table output (chars)");
        sub->add_option("--threads", p.threads, "worker threads (default QOSC_THREADS or 1)")->check(CLI::PositiveNumber);
        sub->add_option("--out", out_path, "report file (default stdout)");
        sub->add_flag("--timing", timing, "add wall time to the report");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const std::string suite = app.get_subcommands().front()->get_name();
    Json rep;
    auto t0 = std::chrono::steady_clock::now();
    try {
        rep = run_suite(suite, p);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const qosc::Error& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    }
    if (timing) rep["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();

    std::string text = rep.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path);
        if (!f) {
            std::cerr << "cannot write " << out_path << '\n';
            return 2;
        }
        f << text;
    }
    return rep["pass"].get<bool>() ? 0 : 1;
}
