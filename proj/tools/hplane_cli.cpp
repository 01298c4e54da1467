// verification runs over the hermitian plane library, JSON reports on stdout or --out
//
// exit codes: 0 all checks pass, 1 some check failed, 2 bad input, 3 internal error

#include "hplane/suites.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace hplane;

namespace {

struct Cli {
    RunOptions opts;
    std::string config_path, out_path, suite = "all";
    long disc = 0;
    std::string kase;
    json raw_config;
};

int emit(const Cli& cli, const json& report)
{
    std::string text = report.dump(2) + "\n";
    if (cli.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(cli.out_path);
        if (!out)
            throw ParseError("cannot write " + cli.out_path);
        out << text;
    }
    return report.value("pass", false) ? 0 : 1;
}

int run_suites(Cli& cli, const std::string& command, const std::string& suite)
{
    std::vector<Check> checks;
    if (suite == "all") {
        for (auto& s : suite_names())
            for (auto& c : run_suite(s, cli.opts))
                checks.push_back(c);
    } else {
        checks = run_suite(suite, cli.opts);
    }
    return emit(cli, make_report(command, cli.opts, checks));
}

void valid_disc(long D)
{
    try {
        check_discriminant(D);
    } catch (const PreconditionError& e) {
        throw ParseError(e.what());
    }
}

int cusps_report(Cli& cli)
{
    valid_disc(cli.disc);
    json rep = cusp_report(cli.disc);
    std::vector<Check> checks;
    if (cli.disc < 0) {
        auto qp = quad_plane(cli.disc);
        rep["cusp_count_d1"] = cusp_count(qp.P);
        // isotropic census as a cross-check at a small height
        auto cen = isotropic_cusp_census(qp, cli.opts.count("census_height", 2));
        json per = json::object();
        for (auto& [f, k] : cen.per_class)
            per[f.str()] = k;
        rep["census"] = {{"vectors", cen.vectors}, {"per_class", per}, {"witness_failures", cen.witness_failures}};
        checks.push_back({"census witnesses", "derived", cen.witness_failures == 0, nullptr});
    }
    auto report = make_report("cusps --disc " + std::to_string(cli.disc), cli.opts, checks);
    report["result"] = rep;
    return emit(cli, report);
}

int moduli_gram(Cli& cli)
{
    if (cli.kase != "d1")
        throw ParseError("moduli gram supports --case d1");
    if (cli.disc >= 0)
        throw ParseError("moduli gram needs a negative --disc");
    valid_disc(cli.disc);
    auto c = check_gram_d1(cli.disc);
    auto report = make_report("moduli gram --case d1 --disc " + std::to_string(cli.disc), cli.opts, {c});
    report["result"] = c.detail;
    return emit(cli, report);
}

int moduli_split(Cli& cli)
{
    Check c;
    if (cli.kase == "d3")
        c = check_split_d3();
    else if (cli.kase == "d2")
        c = check_split_d2();
    else
        throw ParseError("moduli split supports --case d2 or d3");
    auto report = make_report("moduli split --case " + cli.kase, cli.opts, {c});
    report["result"] = c.detail;
    return emit(cli, report);
}

int example7_verify(Cli& cli)
{
    auto checks = example7_checks(cli.opts.count("probe_bound", 3));
    auto report = make_report("example7 verify", cli.opts, checks);
    for (auto& c : checks)
        if (c.name == "certificate")
            report["certificate"] = c.detail;
    return emit(cli, report);
}

void load_samples(Cli& cli)
{
    if (cli.config_path.empty())
        return;
    std::ifstream in(cli.config_path);
    if (!in)
        throw ParseError("cannot open " + cli.config_path);
    try {
        in >> cli.raw_config;
    } catch (const json::exception& e) {
        throw ParseError(cli.config_path + ": " + e.what());
    }
    if (cli.raw_config.contains("samples")) {
        auto& s = cli.raw_config["samples"];
        if (!s.is_object())
            throw ParseError("samples must be an object");
        for (auto& [k, v] : s.items()) {
            if (!v.is_number_integer() || v.get<long>() <= 0)
                throw ParseError("sample count for " + k + " must be a positive integer");
            cli.opts.samples[k] = v.get<long>();
        }
    }
}

} // namespace

int main(int argc, char** argv)
{
    Cli cli;
    CLI::App app{"hplane: exact checks for unitary groups of hermitian planes over cyclic algebras"};
    app.add_option("--config", cli.config_path, "JSON document with fields, towers, automorphisms, algebras");
    app.add_option("--seed", cli.opts.seed, "seed for all sampling");
    app.add_option("--tolerance", cli.opts.tol, "numeric tolerance")->check(CLI::PositiveNumber);
    app.add_option("--out", cli.out_path, "report destination (default stdout)");
    app.add_option("--suite", cli.suite, "suite to run when no subcommand is given")
        ->check(CLI::IsMember({"algebra", "unitary", "cusps", "domains", "example7", "moduli", "all"}));
    app.fallthrough();
    app.require_subcommand(0, 1);

    std::vector<CLI::App*> suite_cmds;
    for (auto name : {"algebra", "unitary", "domains", "all"})
        suite_cmds.push_back(app.add_subcommand(name, std::string("run the ") + name + " suite"));

    auto* cusps = app.add_subcommand("cusps", "cusp suite, or a class group report with --disc");
    cusps->add_option("--disc", cli.disc, "fundamental discriminant");

    auto* ex7 = app.add_subcommand("example7", "the degree-3 example over Q(sqrt -7)");
    auto* ex7_verify = ex7->add_subcommand("verify", "full certificate");
    ex7->require_subcommand(0, 1);

    auto* moduli = app.add_subcommand("moduli", "moduli suite, or gram / split reports");
    auto* gram = moduli->add_subcommand("gram", "polarization type on O_K^2");
    gram->add_option("--case", cli.kase, "d1")->required();
    gram->add_option("--disc", cli.disc, "discriminant of K")->required();
    auto* split = moduli->add_subcommand("split", "lattice splitting into O_L-stable summands");
    split->add_option("--case", cli.kase, "d2 or d3")->required();
    moduli->require_subcommand(0, 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        load_samples(cli);
        ConfigDoc doc;
        if (!cli.config_path.empty()) {
            try {
                doc = load_config(cli.raw_config);
            } catch (const ParseError&) {
                throw;
            } catch (const Error& e) {
                throw ParseError(std::string("invalid config: ") + e.what());
            }
            cli.opts.doc = &doc;
        }
        for (auto* s : suite_cmds)
            if (*s)
                return run_suites(cli, s->get_name(), s->get_name());
        if (*cusps)
            return cli.disc != 0 ? cusps_report(cli) : run_suites(cli, "cusps", "cusps");
        if (*ex7)
            return *ex7_verify ? example7_verify(cli) : run_suites(cli, "example7", "example7");
        if (*moduli) {
            if (*gram)
                return moduli_gram(cli);
            if (*split)
                return moduli_split(cli);
            return run_suites(cli, "moduli", "moduli");
        }
        return run_suites(cli, "--suite " + cli.suite, cli.suite);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
