#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "hermackey/cli/runner.hpp"

namespace {

using namespace hermackey;
using namespace hermackey::cli;

struct Options {
    std::string input, emit, coeff, nerve;
    std::optional<std::size_t> dim, dim_bound, trunc;
    std::optional<std::uint64_t> seed;
    std::map<std::string, std::string> objects;  // --mackey U3 and friends
    bool timing = false;
};

const std::vector<std::string> kObjectFlags = {"mackey", "ring", "tambara", "morphism", "group", "monoid"};

void add_options(CLI::App* sub, Options& o, bool objects) {
    sub->add_option("--input", o.input, "problem document (JSON)");
    sub->add_option("--emit", o.emit, "also write the report as JSON to this file");
    sub->add_option("--dim-bound", o.dim_bound, "dimension bound D for kh0, witt0 and induced-map");
    sub->add_option("--dim", o.dim, "form dimension for classify-forms");
    sub->add_option("--trunc", o.trunc, "truncation degree for nerve commands");
    sub->add_option("--coeff", o.coeff, "homology coefficients: z, q or zp:P");
    sub->add_option("--seed", o.seed, "seed for sampled checks");
    sub->add_flag("--timing", o.timing, "print wall-clock time per task");
    if (!objects) return;
    for (const auto& k : kObjectFlags)
        sub->add_option_function<std::string>("--" + k, [&o, k](const std::string& v) { o.objects[k] = v; },
                                              "name of a declared or catalog " + k);
    sub->add_option("--nerve", o.nerve,
                    "nerve for nerve-homology: plain, sigma, dihedral, sym, symcy, sd-sigma, sd-dihedral, fixed-sigma, "
                    "fixed-dihedral");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Task task_from_flags(const std::string& command, const Options& o) {
    Task t{command, Json::object(), "command line"};
    for (const auto& k : kObjectFlags)
        if (auto it = o.objects.find(k); it != o.objects.end()) t.args[k] = it->second;
    if (!o.nerve.empty()) t.args["nerve"] = o.nerve;
    if (o.dim) t.args["dim"] = *o.dim;
    if (o.dim_bound) t.args["dim_bound"] = *o.dim_bound;
    if (o.trunc) t.args["trunc"] = *o.trunc;
    if (!o.coeff.empty()) t.args["coeff"] = o.coeff;
    return t;
}

int usage_error(const std::string& msg) {
    std::cerr << "hermackey: " << msg << "\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations with Hermitian Mackey functors, forms and real nerves"};
    app.require_subcommand(1);
    Options opt;
    std::map<CLI::App*, std::string> commands;
    for (const auto& c : task_commands()) {
        CLI::App* sub = app.add_subcommand(c, "run the " + c + " task");
        add_options(sub, opt, true);
        commands[sub] = c;
    }
    CLI::App* run = app.add_subcommand("run", "run every task of an input document");
    add_options(run, opt, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    CLI::App* chosen = app.get_subcommands().front();
    Defaults defaults;
    if (opt.dim) defaults.dim = *opt.dim;
    defaults.dim_bound = opt.dim_bound;
    defaults.trunc = opt.trunc;
    if (!opt.coeff.empty()) defaults.coeff = opt.coeff;
    if (opt.seed) defaults.seed = *opt.seed;

    // Everything that identifies the computation, in argument order.
    std::string invocation;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--emit") {
            ++i;
            continue;
        }
        if (a.rfind("--emit=", 0) == 0 || a == "--timing") continue;
        invocation += (invocation.empty() ? "" : " ") + a;
    }

    std::vector<TaskReport> reports;
    try {
        Problem problem;
        if (!opt.input.empty()) problem = parse_input(read_file(opt.input));
        std::vector<Task> tasks;
        if (chosen == run) {
            if (opt.input.empty()) return usage_error("run needs --input FILE");
            tasks = problem.tasks;
            if (tasks.empty()) return usage_error(opt.input + " declares no tasks");
        } else {
            tasks.push_back(task_from_flags(commands.at(chosen), opt));
        }
        for (const auto& t : tasks) {
            reports.push_back(run_task(t, problem.registry, defaults));
            std::cout << render_text(reports.back(), opt.timing) << std::flush;
        }
    } catch (const ParseError& e) {
        return usage_error(e.what());
    } catch (const ValidationError& e) {
        return usage_error(std::string("validation error: ") + e.what());
    } catch (const UnknownName& e) {
        return usage_error(e.what());
    } catch (const std::exception& e) {
        return usage_error(e.what());
    }

    const Status s = overall(reports);
    std::size_t failed = 0;
    for (const auto& r : reports) failed += r.status() != Status::pass;
    std::cout << "summary: " << reports.size() << " task(s), " << failed << " not passing, overall " << status_name(s) << "\n";
    if (!opt.emit.empty()) {
        std::ofstream out(opt.emit, std::ios::binary);
        if (!out) return usage_error("cannot write " + opt.emit);
        out << report_json(invocation, defaults.seed, reports).dump(2) << "\n";
    }
    return s == Status::pass ? 0 : 1;
}
