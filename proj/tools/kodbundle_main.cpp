#include <CLI11.hpp>

#include <iostream>

#include "kodbundle/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"exact existence tests and construction plans for holomorphic bundles on "
                 "primary Kodaira surfaces"};
    app.require_subcommand(1);

    std::string instance_path, plan_path, out_path, out_dir;
    bool json_output = false;
    std::uint64_t seed = 1;
    int count = 100;
    long max_r = 4;

    auto* decide = app.add_subcommand("decide", "decide existence for an instance");
    decide->add_option("--instance", instance_path, "instance file")->required();
    decide->add_flag("--json", json_output, "machine-readable output");

    auto* plan = app.add_subcommand("plan", "build a construction plan");
    plan->add_option("--instance", instance_path, "instance file")->required();
    plan->add_option("--out", out_path, "plan output file")->required();

    auto* verify = app.add_subcommand("verify", "verify a plan against an instance");
    verify->add_option("--plan", plan_path, "plan file")->required();
    verify->add_option("--instance", instance_path, "instance file")->required();
    verify->add_flag("--json", json_output, "machine-readable output");

    auto* mbound = app.add_subcommand("mbound", "compute the filtrability bound m(r, c1)");
    mbound->add_option("--instance", instance_path, "instance file")->required();
    mbound->add_flag("--json", json_output, "machine-readable output");

    auto* corpus = app.add_subcommand("corpus", "generate a deterministic instance corpus");
    corpus->add_option("--seed", seed, "random seed");
    corpus->add_option("--count", count, "number of instances");
    corpus->add_option("--max-r", max_r, "maximum rank");
    corpus->add_option("--out", out_dir, "output directory")->required();

    CLI11_PARSE(app, argc, argv);

    using namespace kodbundle::cli;
    if (decide->parsed()) return cmd_decide(instance_path, json_output, std::cout, std::cerr);
    if (plan->parsed()) return cmd_plan(instance_path, out_path, std::cout, std::cerr);
    if (verify->parsed())
        return cmd_verify(plan_path, instance_path, json_output, std::cout, std::cerr);
    if (mbound->parsed()) return cmd_mbound(instance_path, json_output, std::cout, std::cerr);
    if (corpus->parsed()) return cmd_corpus(seed, count, max_r, out_dir, std::cout, std::cerr);
    return kInputError;
}
