/**
 * weightlab: verification tool for the weight filtrations, purity and
 * decomposition machinery of nilpotent orbits.
 *
 * Usage:
 *   weightlab <command> <orbit-file> [options]
 *   weightlab sweep [options]
 *   weightlab gen <jordan|tensor|conjugated> --sizes a,b,... [options]
 *
 * Exit codes: 0 all checks pass, 1 at least one check failed, 2 input or
 * resource error.
 */

#include <weightlab/runner.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace weightlab;

std::vector<int> parse_int_list(const std::string& csv)
{
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            throw input_error("empty entry in list: '" + csv + "'");
        out.push_back(std::stoi(item));
    }
    if (out.empty())
        throw input_error("empty list: '" + csv + "'");
    return out;
}

Mask parse_subset(const std::string& csv, int count)
{
    Mask m = 0;
    for (int v : parse_int_list(csv)) {
        if (v < 1 || v > count)
            throw input_error("index " + std::to_string(v) + " outside 1.."
                              + std::to_string(count));
        m |= Mask(1) << (v - 1);
    }
    return m;
}

Json load_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw input_error("cannot open orbit file: " + path);
    Json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw input_error("orbit file " + path + ": " + e.what());
    }
    return doc;
}

void emit(const Report& rep, const std::string& report_path)
{
    for (const auto& rec : rep.doc["checks"]) {
        std::cout << "[" << (rec["status"] == "pass" ? "PASS" : "FAIL") << "] "
                  << rec["name"].get<std::string>();
        if (rec.contains("orbit"))
            std::cout << " (" << rec["orbit"].get<std::string>() << ")";
        Json params = rec["params"];
        if (!params.empty()) {
            std::cout << " ";
            for (auto it = params.begin(); it != params.end(); ++it)
                std::cout << it.key() << "=" << it.value().get<std::string>() << " ";
        }
        std::string details = rec["details"].get<std::string>();
        if (!details.empty())
            std::cout << ": " << details;
        std::cout << "\n";
    }
    std::cout << rep.doc["summary"]["checks"].get<int>() << " checks, "
              << rep.doc["summary"]["failed"].get<int>() << " failed\n";
    if (!report_path.empty()) {
        std::ofstream out(report_path);
        if (!out)
            throw input_error("cannot write report file: " + report_path);
        out << rep.doc.dump(2) << "\n";
    }
}

int run(int argc, char** argv)
{
    CLI::App app{"weight filtration and nearby-cycles verification on nilpotent orbits"};
    app.require_subcommand(1);

    std::string orbit_path, report_path, subset_csv, k_csv, mults_csv, mode_str = "cokernel";
    std::string gen_kind, gen_sizes, gen_out;
    int r_level = 0;
    bool r_given = false;
    int p_max = -1;
    std::uint64_t seed = 2024;
    bool corrupt = false;

    std::vector<std::string> command_names = {"weight",    "keylemma",  "omega",
                                              "graded",    "purity",    "elementary",
                                              "decompose", "ic",        "psi-build",
                                              "psi-monodromy", "psi-acyclic", "all"};
    std::vector<CLI::App*> subs;
    for (const auto& name : command_names) {
        CLI::App* sub = app.add_subcommand(name, "run the " + name + " checks");
        sub->add_option("orbit", orbit_path, "orbit-spec file")->required();
        sub->add_option("--subset", subset_csv, "index subset, e.g. 1,2");
        sub->add_option("-K,--K", k_csv, "subset K, e.g. 1,2");
        sub->add_option("--r", r_level, "weight level r")->each([&](const std::string&) {
            r_given = true;
        });
        sub->add_option("--multiplicities", mults_csv, "positive multiplicities n_i");
        sub->add_option("--mode", mode_str, "psi column convention")
            ->check(CLI::IsMember({"kernel", "cokernel"}));
        sub->add_option("--p-max", p_max, "psi truncation override");
        sub->add_option("--report", report_path, "write the full JSON report here");
        sub->add_option("--seed", seed, "seed for randomized checks");
        sub->add_flag("--corrupt-test-hook", corrupt,
                      "inject a deliberate fault (negative-control testing)");
        subs.push_back(sub);
    }
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "generate the corpus and run all checks");
    sweep_cmd->add_option("--report", report_path, "write the full JSON report here");
    sweep_cmd->add_option("--seed", seed, "seed for the generated corpus");
    sweep_cmd->add_flag("--corrupt-test-hook", corrupt,
                        "inject a deliberate fault (negative-control testing)");

    CLI::App* gen_cmd = app.add_subcommand("gen", "emit a generated orbit spec");
    gen_cmd->add_option("kind", gen_kind, "jordan | tensor | conjugated")->required();
    gen_cmd->add_option("--sizes", gen_sizes, "block sizes, e.g. 2,2")->required();
    gen_cmd->add_option("-o,--output", gen_out, "output path (default stdout)");
    gen_cmd->add_option("--seed", seed, "seed for the conjugating matrix");
    gen_cmd->add_option("--multiplicities", mults_csv, "attach multiplicities");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen_cmd->parsed()) {
            std::vector<int> sizes = parse_int_list(gen_sizes);
            NilpotentOrbit orbit = [&]() {
                if (gen_kind == "jordan")
                    return gen_jordan(sizes);
                if (gen_kind == "tensor")
                    return gen_sl2_tensor(sizes);
                if (gen_kind == "conjugated") {
                    NilpotentOrbit base = gen_sl2_tensor(sizes);
                    std::mt19937_64 rng(seed);
                    std::uniform_int_distribution<int> d(-2, 2);
                    for (;;) {
                        Mat g(base.dim(), base.dim());
                        for (int i = 0; i < base.dim(); ++i)
                            for (int j = 0; j < base.dim(); ++j)
                                g(i, j) = d(rng);
                        if (rank_of(g) == base.dim())
                            return gen_conjugated(base, g);
                    }
                }
                throw input_error("unknown generator kind: " + gen_kind);
            }();
            std::vector<int> mults;
            Json doc = mults_csv.empty()
                           ? print_orbit(orbit)
                           : (mults = parse_int_list(mults_csv), print_orbit(orbit, &mults));
            if (gen_out.empty())
                std::cout << doc.dump(2) << "\n";
            else {
                std::ofstream out(gen_out);
                if (!out)
                    throw input_error("cannot write: " + gen_out);
                out << doc.dump(2) << "\n";
            }
            return 0;
        }

        if (sweep_cmd->parsed()) {
            RunOptions opt;
            opt.seed = seed;
            opt.corrupt_hook = corrupt;
            Report rep = sweep(opt);
            emit(rep, report_path);
            return rep.ok() ? 0 : 1;
        }

        std::string command;
        for (std::size_t i = 0; i < subs.size(); ++i)
            if (subs[i]->parsed())
                command = command_names[i];
        Json doc = load_json(orbit_path);
        NilpotentOrbit orbit = parse_orbit(doc);
        RunOptions opt;
        opt.seed = seed;
        opt.corrupt_hook = corrupt;
        opt.mode = (mode_str == "kernel") ? PsiMode::kernel : PsiMode::cokernel;
        if (!subset_csv.empty())
            opt.subset = parse_subset(subset_csv, orbit.index_count());
        if (!k_csv.empty())
            opt.k_subset = parse_subset(k_csv, orbit.index_count());
        if (r_given)
            opt.r_level = r_level;
        if (p_max >= 0)
            opt.p_max = p_max;
        if (!mults_csv.empty())
            opt.multiplicities = parse_int_list(mults_csv);
        else
            opt.multiplicities = parse_multiplicities(doc, orbit.index_count());
        int i0 = support_radius(orbit);
        if (opt.r_level && std::abs(*opt.r_level) > i0 + 2)
            throw input_error("--r outside the support window [-" + std::to_string(i0 + 2)
                              + ", " + std::to_string(i0 + 2) + "]");
        Report rep = run_command(command, orbit, opt);
        emit(rep, report_path);
        return rep.ok() ? 0 : 1;
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const resource_error& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 2;
    } catch (const contract_error& e) {
        std::cerr << "internal contract violation: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
