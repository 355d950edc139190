// SPDX-License-Identifier: Apache-2.0
// dwsat: emptiness and satisfiability checks for data-word problem files.
//
//   dwsat check FILE       exit 0 nonempty/sat, 1 empty/unsat, 2 input error, 3 search limit hit
//   dwsat witness FILE --unroll N
//   dwsat translate FILE --target adc|zonal|normalform
#include "dw/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using dw::cli::Json;

namespace {

Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw dw::cli::SchemaError("", "cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw dw::cli::SchemaError("", std::string("malformed JSON: ") + e.what());
    }
}

void print_text(const Json& r, std::ostream& os) {
    os << "verdict: " << r.value("verdict", "?") << "\n";
    os << "mode: " << r.value("mode", "?") << "  procedure: " << r.value("procedure", "?") << "\n";
    if (r.contains("prefix")) {
        os << "prefix:";
        for (const auto& l : r["prefix"])
            os << " (" << l[0].get<std::string>() << "," << l[1] << ")";
        os << "\n";
    }
    if (r.contains("word")) {
        os << "word:";
        for (const auto& l : r["word"])
            os << " " << l.get<std::string>();
        os << "\n";
    }
    if (r.contains("verification"))
        os << "verification: " << r["verification"].dump() << "\n";
    if (r.contains("error"))
        os << "error: " << r["error"].get<std::string>() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decision procedures for data omega-words"};
    app.require_subcommand(1);
    std::string file, mode, target, out_path;
    dw::cli::RunOptions opts;
    std::uint64_t seed = 0;
    bool text = false;

    auto common = [&](CLI::App* sub) {
        sub->add_option("file", file, "problem file (JSON)")->required();
        sub->add_option("--mode", mode, "override the file's mode");
        sub->add_option("--max-support", opts.maxSupport, "cap on connectivity branches per Presburger query");
        sub->add_option("--partition-limit", opts.partitionLimit, "give up after this many partition guesses");
        sub->add_option("--node-limit", opts.nodeLimit, "give up after this many branch-and-bound nodes");
        sub->add_flag("--parallel", opts.parallel, "parallel partition enumeration");
        sub->add_option("--seed", seed, "accepted for generator scripts; decision procedures ignore it");
        auto* fmt = sub->add_option_group("format");
        fmt->add_flag("--text", text, "human-readable output");
        fmt->add_flag_function("--json", [&](std::int64_t) { text = false; }, "JSON output (default)");
    };
    auto* check = app.add_subcommand("check", "decide the problem");
    common(check);
    check->add_option("--unroll", opts.unroll, "prefix length, default 3 * recipe length");
    auto* witness = app.add_subcommand("witness", "decide and print a verified prefix");
    common(witness);
    witness->add_option("--unroll", opts.unroll, "prefix length, default 3 * recipe length");
    auto* translate = app.add_subcommand("translate", "emit an equivalent problem file");
    common(translate);
    translate->add_option("--target", target, "adc, zonal or normalform")->required();
    translate->add_option("--out", out_path, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        std::optional<dw::cli::Mode> mode_override;
        if (!mode.empty()) {
            mode_override = dw::cli::parse_mode(mode);
            if (!mode_override)
                throw dw::cli::SchemaError("", "unknown mode '" + mode + "'");
        }
        auto problem = dw::cli::load_problem(read_json(file), mode_override);
        if (translate->parsed()) {
            auto t = dw::cli::parse_target(target);
            if (!t)
                throw dw::cli::TranslateError("unknown target '" + target + "'");
            auto doc = dw::cli::cmd_translate(problem, *t);
            if (out_path.empty()) {
                std::cout << doc.dump(2) << "\n";
            } else {
                std::ofstream os(out_path);
                os << doc.dump(2) << "\n";
            }
            return 0;
        }
        auto outcome = witness->parsed() ? dw::cli::cmd_witness(problem, opts) : dw::cli::cmd_check(problem, opts);
        if (text)
            print_text(outcome.report, std::cout);
        else
            std::cout << outcome.report.dump(2) << "\n";
        return outcome.exitCode;
    } catch (const dw::cli::SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cout << Json{{"error", e.what()}, {"pointer", e.pointer}}.dump(2) << "\n";
        return 2;
    } catch (const dw::SearchLimitExceeded& e) {
        std::cerr << "undecided: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cout << Json{{"error", e.what()}}.dump(2) << "\n";
        return 2;
    }
}
