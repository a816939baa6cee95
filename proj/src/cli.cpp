#include "kodbundle/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "kodbundle/constructor.hpp"
#include "kodbundle/corpus.hpp"
#include "kodbundle/serialize.hpp"
#include "kodbundle/verifier.hpp"

namespace kodbundle::cli {

namespace {

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError(path + ": invalid JSON: " + e.what());
    }
    return j;
}

ChernInstance load_instance(const std::string& path) {
    return instance_from_json(load_json(path), /*strict=*/true);
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << bytes;
}

}  // namespace

int cmd_decide(const std::string& instance_path, bool json_output, std::ostream& out,
               std::ostream& err) {
    try {
        ChernInstance inst = load_instance(instance_path);
        InvariantReport rep = invariants(inst);
        bool exists = rep.delta >= 0;
        if (json_output) {
            Json j{{"exists", exists},
                   {"delta", rational_to_json(rep.delta)},
                   {"R", rep.Rval.str()},
                   {"d", rep.d.str()},
                   {"m", rational_to_json(rep.mbound)},
                   {"region", region_name(rep.region)}};
            out << dump_deterministic(j);
        } else {
            out << (exists ? "exists" : "no bundle") << "; Δ=" << rep.delta.str()
                << "; R=" << rep.Rval.str() << "; d=" << rep.d.str() << "; m=" << rep.mbound.str()
                << "; region=" << region_name(rep.region) << "\n";
        }
        return exists ? kOk : kNoBundle;
    } catch (const std::exception& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    }
}

int cmd_plan(const std::string& instance_path, const std::string& out_path, std::ostream& out,
             std::ostream& err) {
    try {
        ChernInstance inst = load_instance(instance_path);
        ConstructionPlan plan;
        try {
            plan = build_plan(inst);
        } catch (const NegativeDiscriminant& e) {
            err << "no bundle: " << e.what() << "\n";
            return kNoBundle;
        }
        write_file(out_path, dump_deterministic(plan_to_json(plan, inst)));
        out << "plan written: " << out_path << " (root=" << plan_node_kind(*plan.root) << ")\n";
        return kOk;
    } catch (const ParseError& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
}

int cmd_verify(const std::string& plan_path, const std::string& instance_path, bool json_output,
               std::ostream& out, std::ostream& err) {
    try {
        ChernInstance inst = load_instance(instance_path);
        auto [plan, plan_inst] = plan_from_json(load_json(plan_path));

        VerificationReport report;
        // the plan must target exactly the given instance
        if (dump_deterministic(instance_to_json(plan_inst)) !=
            dump_deterministic(instance_to_json(inst))) {
            report.checks.push_back(
                {"plan/instance_matches", false, "plan instance", "given instance"});
        } else {
            report = verify_plan(plan, inst);
        }

        if (json_output) {
            out << dump_deterministic(report_to_json(report));
        } else {
            for (const auto& c : report.checks) {
                out << (c.ok ? "[ok]   " : "[FAIL] ") << c.name;
                if (!c.lhs.empty() || !c.rhs.empty())
                    out << "  lhs=" << c.lhs << " rhs=" << c.rhs;
                out << "\n";
            }
            out << "overall: " << (report.overall() ? "PASS" : "FAIL") << "\n";
        }
        return report.overall() ? kOk : kVerificationFailure;
    } catch (const ParseError& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
}

int cmd_mbound(const std::string& instance_path, bool json_output, std::ostream& out,
               std::ostream& err) {
    try {
        ChernInstance inst = load_instance(instance_path);
        Rational m = m_bound(inst.surface, inst.r, inst.c1);
        if (json_output) {
            out << dump_deterministic(Json{{"m", rational_to_json(m)}});
        } else {
            out << "m(" << inst.r.str() << ", " << inst.c1.free.str() << ") = " << m.str() << "\n";
        }
        return kOk;
    } catch (const std::exception& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    }
}

int cmd_corpus(std::uint64_t seed, int count, long max_r, const std::string& out_dir,
               std::ostream& out, std::ostream& err) {
    try {
        std::filesystem::create_directories(out_dir);
        std::vector<ChernInstance> corpus =
            generate_corpus(CorpusOptions{seed, count, max_r});
        long region_count[3] = {0, 0, 0};
        Json index = Json::array();
        for (size_t i = 0; i < corpus.size(); ++i) {
            std::ostringstream name;
            name << "instance_" << std::setw(4) << std::setfill('0') << i << ".json";
            write_file(out_dir + "/" + name.str(),
                       dump_deterministic(instance_to_json(corpus[i])));
            InvariantReport rep = invariants(corpus[i]);
            region_count[static_cast<int>(rep.region)] += 1;
            index.push_back(Json{{"file", name.str()},
                                 {"delta", rational_to_json(rep.delta)},
                                 {"d", rep.d.str()},
                                 {"region", region_name(rep.region)}});
        }
        Json summary{{"seed", seed},
                     {"count", count},
                     {"max_r", max_r},
                     {"regions",
                      Json{{"NoBundle", region_count[0]},
                           {"NonFiltrableOnly", region_count[1]},
                           {"FiltrableRange", region_count[2]}}},
                     {"instances", index}};
        write_file(out_dir + "/summary.json", dump_deterministic(summary));
        out << "corpus written: " << out_dir << " (" << corpus.size() << " instances; NoBundle="
            << region_count[0] << ", NonFiltrableOnly=" << region_count[1] << ", FiltrableRange=" << region_count[2]
            << ")\n";
        return kOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
}

}  // namespace kodbundle::cli
