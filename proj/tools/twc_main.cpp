// twc: exact verification of the twisted-complex calculus on finite
// simplicial instances. Commands: validate, phi, generate, ho-invert,
// selftest. Exit codes: 0 all checks pass, 1 a mathematical check failed,
// 2 structural or parse error.
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "twc/cli.hpp"
#include "twc/errors.hpp"
#include "twc/version.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw twc::StructuralError("cannot read file: " + path);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw twc::StructuralError("cannot write file: " + path);
    out << text;
}

struct Output {
    std::string format = "json";
    std::string out_path;
    bool timing = false;

    int emit(const twc::ValidationReport& rep, const std::string& command,
             std::optional<std::uint64_t> seed, double ms) const {
        std::string text = format == "text"
                               ? twc::report_text(rep, command)
                               : twc::report_json(rep, command, seed,
                                                  timing ? std::optional<double>(ms) : std::nullopt);
        if (out_path.empty()) {
            std::cout << text;
        } else {
            spit(out_path, text);
        }
        if (format == "text" && timing) std::cerr << "wall: " << ms << " ms\n";
        return rep.all_pass() ? 0 : 1;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact twisted-complex calculus workbench"};
    app.set_version_flag("--version", std::string("twc ") + twc::kVersion);
    app.require_subcommand(1);

    std::string bundle_path, homotopy = "h", probe = "main", morphism, phi_out;
    int max_level = 3;
    std::uint64_t seed = 0;
    Output output;
    twc::cli::GenerateOptions gen_opts;

    auto add_output = [&](CLI::App* cmd) {
        cmd->add_option("--format", output.format, "json or text")
            ->check(CLI::IsMember({"json", "text"}));
        cmd->add_option("--out", output.out_path, "write the report to a file");
        cmd->add_flag("--timing", output.timing, "include wall-clock timing (non-canonical)");
    };

    auto* validate = app.add_subcommand("validate", "run every validator over a bundle");
    validate->add_option("--bundle", bundle_path, "bundle file")->required();
    add_output(validate);

    auto* phi = app.add_subcommand("phi", "build and verify the homotopy-induced transformation");
    phi->add_option("--bundle", bundle_path, "bundle file")->required();
    phi->add_option("--homotopy", homotopy, "homotopy name (default h)");
    phi->add_option("--probe", probe, "probe name (default main)");
    phi->add_option("--max-level", max_level, "closure depth (default 3)");
    phi->add_option("--components-out", phi_out, "write the component data to a file");
    add_output(phi);

    auto* generate = app.add_subcommand("generate", "emit a seeded instance bundle");
    generate->add_option("--seed", gen_opts.seed, "64-bit seed")->required();
    generate->add_option("--ring", gen_opts.ring, "Q or F<p> (default Q)");
    generate->add_option("--kind", gen_opts.kind, "fold, constant, or auto");
    generate->add_option("--max-sets", gen_opts.max_sets, "cover sets (1..6)");
    generate->add_option("--max-points", gen_opts.max_points, "ground set points (2..8)");
    generate->add_option("--truncation", gen_opts.truncation, "window size (2..5)");
    generate->add_option("--amplitude", gen_opts.amplitude, "sheaf amplitude (0..3)");
    generate->add_option("--max-rank", gen_opts.max_rank, "module ranks (1..4)");
    generate->add_option("--objects", gen_opts.objects, "twisted objects (1..6)");
    generate->add_option("--morphisms", gen_opts.morphisms, "probe morphisms (0..12)");
    generate->add_option("--out", output.out_path, "bundle output file");

    auto* hoinv = app.add_subcommand("ho-invert", "solve for a homotopy inverse of a closed degree-0 morphism");
    hoinv->add_option("--bundle", bundle_path, "bundle file")->required();
    hoinv->add_option("--morphism", morphism, "morphism name")->required();
    hoinv->add_option("--witness-out", phi_out, "write the witness to a file");
    add_output(hoinv);

    auto* selftest = app.add_subcommand("selftest", "generate a mini corpus and verify everything");
    selftest->add_option("--seed", seed, "64-bit seed (default 0)");
    add_output(selftest);

    CLI11_PARSE(app, argc, argv);

    auto t0 = std::chrono::steady_clock::now();
    auto ms = [&] {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    };
    try {
        if (validate->parsed()) {
            auto b = twc::parse_bundle(slurp(bundle_path));
            return output.emit(twc::cli::cmd_validate(b), "validate", std::nullopt, ms());
        }
        if (phi->parsed()) {
            auto b = twc::parse_bundle(slurp(bundle_path));
            auto res = twc::cli::cmd_phi(b, homotopy, probe, max_level);
            if (!phi_out.empty()) spit(phi_out, res.components_json);
            return output.emit(res.report, "phi", std::nullopt, ms());
        }
        if (generate->parsed()) {
            auto b = twc::cli::cmd_generate(gen_opts);
            std::string text = twc::serialize_bundle(b);
            if (output.out_path.empty()) {
                std::cout << text;
            } else {
                spit(output.out_path, text);
            }
            return 0;
        }
        if (hoinv->parsed()) {
            auto b = twc::parse_bundle(slurp(bundle_path));
            auto res = twc::cli::cmd_ho_invert(b, morphism);
            if (!phi_out.empty() && !res.witness_json.empty()) spit(phi_out, res.witness_json);
            return output.emit(res.report, "ho-invert", std::nullopt, ms());
        }
        if (selftest->parsed()) {
            return output.emit(twc::cli::cmd_selftest(seed), "selftest", seed, ms());
        }
    } catch (const twc::StructuralError& e) {
        std::cerr << "structural error: " << e.what() << "\n";
        return 2;
    } catch (const twc::TruncationError& e) {
        std::cerr << "truncation error: " << e.what() << "\n";
        return 2;
    } catch (const twc::ConventionError& e) {
        std::cerr << "convention error: " << e.what() << "\n";
        return 1;
    } catch (const twc::InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
