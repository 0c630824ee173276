#include "hannerlab/flags.hpp"
#include "hannerlab/io.hpp"
#include "hannerlab/suites.hpp"
#include "hannerlab/witness.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

using namespace hannerlab;

namespace {

// Exit codes: 0 all checks pass, 1 a check failed, 2 invalid input or usage.
constexpr int kCheckFailed = 1;
constexpr int kBadInput = 2;

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Source {
    std::string expr;
    std::string graph;
};

void add_source(CLI::App* cmd, Source& src) {
    auto* e = cmd->add_option("--expr", src.expr, "Hanner expression, e.g. \"((I1 +1 I2) +inf I3)\"");
    auto* g = cmd->add_option("--graph", src.graph, "JSON graph file {\"n\": N, \"edges\": [[i, j], ...]}, 1-based");
    e->excludes(g);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

HannerExpr load(const Source& src) {
    if (!src.expr.empty()) return parse_expr(src.expr);
    if (!src.graph.empty()) return hanner_of_graph(parse_graph_json(read_file(src.graph)));
    throw InputError("one of --expr or --graph is required");
}

void guard(const HannerExpr& h, int max_dim, const char* what) {
    if (h.dim() > max_dim)
        throw InputError(std::string(what) + " is limited to n <= " + std::to_string(max_dim) + " (got n = " +
                         std::to_string(h.dim()) + "); raise --max-dim to override");
}

unsigned thread_cap() {
    const char* env = std::getenv("HANNERLAB_THREADS");
    if (!env || !*env) return 1;
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (*end != '\0' || v == 0) throw InputError("HANNERLAB_THREADS must be a positive integer");
    return static_cast<unsigned>(v);
}

int print_suites(const std::vector<SuiteResult>& results, const std::string& expr) {
    bool ok = true;
    std::cout << "expr: " << expr << "\n";
    for (const auto& r : results) {
        std::cout << "[" << (r.ok ? "PASS" : "FAIL") << "] " << r.name << "\n";
        for (const auto& l : r.lines) std::cout << "  " << l << "\n";
        ok = ok && r.ok;
    }
    return ok ? 0 : kCheckFailed;
}

bool report_ok(const ExperimentReport& rep) {
    if (!rep.failures.empty() || rep.rows.empty()) return false;
    if (!rep.min_gap || *rep.min_gap < 0) return false;
    for (const auto& row : rep.rows)
        if (row.santalo_excess < 0 || !row.pairings_ok || !row.normalized_ok) return false;
    return true;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hanner polytopes: faces, flags, exact identities and the local-minimality experiment"};
    app.require_subcommand(1);

    Source src;
    int max_dim = 0;

    auto* build = app.add_subcommand("build", "JSON bundle: tree, graph, vertices, polar vertices, counts, volumes");
    add_source(build, src);

    auto* faces = app.add_subcommand("faces", "Proper faces with dimensions, centroids and dual faces");
    add_source(faces, src);

    auto* flags = app.add_subcommand("flags", "All 2^n n! flags with their types");
    add_source(flags, src);
    flags->add_option("--max-dim", max_dim, "Dimension guard")->default_val(6);

    auto* graph = app.add_subcommand("graph", "Graph of a tree, or the tree of a P4-free graph");
    add_source(graph, src);

    std::string suite = "all";
    std::string fault_name;
    std::uint64_t seed = 0;
    auto* verify = app.add_subcommand("verify", "Exact identity suites");
    add_source(verify, src);
    verify->add_option("--suite", suite, "abc | equal-volumes | derivative | cl | all")
        ->check(CLI::IsMember({"abc", "equal-volumes", "derivative", "cl", "all"}));
    verify->add_option("--seed", seed, "Seed for the random directions")->default_val(1);
    verify->add_option("--max-dim", max_dim, "Dimension guard")->default_val(6);
    verify->add_option("--inject-fault", fault_name, "Negative control")
        ->check(CLI::IsMember({"perturbed-centroid", "wrong-l1-weight"}))
        ->group("");

    std::string delta_text, out_dir, format = "csv";
    std::size_t trials = 1;
    bool ladder = false;
    auto* experiment = app.add_subcommand("experiment", "Perturb, normalize and measure volume products");
    add_source(experiment, src);
    experiment->add_option("--delta", delta_text, "Perturbation size p/q, at most 1/8")->required();
    experiment->add_option("--trials", trials, "Number of trials")->default_val(1)->check(CLI::PositiveNumber);
    experiment->add_option("--seed", seed, "Base seed")->default_val(0);
    experiment->add_flag("--ladder", ladder, "Also run delta/2 and delta/4 with the same directions");
    experiment->add_option("--out", out_dir, "Directory for the report file");
    experiment->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    experiment->add_option("--max-dim", max_dim, "Dimension guard")->default_val(4);

    CLI11_PARSE(app, argc, argv);

    try {
        HannerExpr h = load(src);
        if (*build) {
            std::cout << build_bundle_json(h) << "\n";
            return 0;
        }
        if (*faces) {
            std::cout << faces_json(h) << "\n";
            return 0;
        }
        if (*flags) {
            guard(h, max_dim, "flag enumeration");
            std::cout << flags_json(h) << "\n";
            return 0;
        }
        if (*graph) {
            std::cout << graph_report_json(h) << "\n";
            return 0;
        }
        if (*verify) {
            guard(h, max_dim, "verify");
            SuiteOptions opt;
            opt.seed = seed;
            if (fault_name == "perturbed-centroid") opt.fault = Fault::PerturbedCentroid;
            if (fault_name == "wrong-l1-weight") opt.fault = Fault::WrongL1Weight;
            return print_suites(run_suites(h, suite, opt), h.to_string());
        }
        if (*experiment) {
            guard(h, max_dim, "experiment");
            ExperimentOptions opt;
            opt.delta = parse_rat(delta_text);
            opt.trials = trials;
            opt.seed = seed;
            opt.ladder = ladder;
            opt.threads = thread_cap();
            ExperimentReport rep = local_min_experiment(h, opt);
            std::string body = format == "json" ? report_json(rep) : report_csv(rep);
            if (out_dir.empty()) {
                std::cout << body;
                std::cerr << report_summary(rep);
            } else {
                std::filesystem::create_directories(out_dir);
                std::string path = (std::filesystem::path(out_dir) / ("experiment." + format)).string();
                std::ofstream out(path, std::ios::binary);
                out << body;
                out.close();
                if (!out) throw InputError("cannot write " + path);
                std::cout << report_summary(rep) << "wrote " << path << "\n";
            }
            return report_ok(rep) ? 0 : kCheckFailed;
        }
    } catch (const NotP4FreeError& e) {
        const auto& p = e.path();
        std::cerr << "error: graph is not P4-free; induced path " << p[0] + 1 << " - " << p[1] + 1 << " - " << p[2] + 1
                  << " - " << p[3] + 1 << "\n";
        return kBadInput;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << " at position " << e.position() << "\n";
        return kBadInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    }
    return 0;
}
