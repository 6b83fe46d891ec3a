// Command-line front end: check, reduce, enumerate, verify, corpus.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lamcl/driver.hpp"

using namespace lamcl;

int main(int argc, char** argv) {
    CLI::App app{"lamcl - a parallel lambda calculus for classical logic"};
    app.require_subcommand(1);

    std::string file, trace_path, strategy_name = "master", corpus_dir;
    uint64_t seed = 0;
    uint64_t max_steps = default_budget();
    size_t depth = 20;

    auto* check = app.add_subcommand("check", "typecheck a source file and print the type");
    check->add_option("file", file)->required();

    auto* reduce = app.add_subcommand("reduce", "reduce a source file and print the final term");
    reduce->add_option("file", file)->required();
    reduce->add_option("--strategy", strategy_name, "master|leftmost|random");
    reduce->add_option("--seed", seed);
    reduce->add_option("--max-steps", max_steps);
    reduce->add_option("--trace", trace_path, "write one JSON record per step");

    auto* enumerate = app.add_subcommand("enumerate", "explore all redex choices breadth-first");
    enumerate->add_option("file", file)->required();
    enumerate->add_option("--depth", depth);

    auto* verify = app.add_subcommand("verify", "normalize and run the metatheory checkers");
    verify->add_option("file", file)->required();
    verify->add_option("--max-steps", max_steps);

    auto* corpus = app.add_subcommand("corpus", "run every .lamcl file and compare expectations");
    corpus->add_option("dir", corpus_dir)->required();
    corpus->add_option("--max-steps", max_steps);

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) {
            Parser::Source src = load_source(file);
            Formula type = typecheck(src.ctx, src.term, TypecheckOptions{src.bool_extension});
            std::cout << formula_to_string(type) << "\n";
            return 0;
        }
        if (reduce->parsed()) {
            auto strat = strategy_from_string(strategy_name);
            if (!strat) {
                std::cerr << "error[usage]: unknown strategy '" << strategy_name << "'\n";
                return 64;
            }
            Parser::Source src = load_source(file);
            ReduceOutcome res = reduce_term(src, *strat, seed, max_steps);
            if (!trace_path.empty()) {
                std::ofstream out(trace_path, std::ios::binary);
                if (!out) throw IoError("cannot write " + trace_path);
                write_trace(res.steps, out);
            }
            std::cout << term_to_string(res.final_term) << "\n";
            std::cerr << res.steps.size() << " steps\n";
            if (src.expect && !alpha_eq(res.final_term, *src.expect)) {
                std::cerr << "error[expect_mismatch]: expected "
                          << term_to_string(*src.expect) << "\n";
                return 1;
            }
            return 0;
        }
        if (enumerate->parsed()) {
            Parser::Source src = load_source(file);
            auto normals = enumerate_normal_forms(src, depth);
            for (const std::string& n : normals) std::cout << n << "\n";
            std::cerr << normals.size() << " normal forms\n";
            return 0;
        }
        if (verify->parsed()) {
            Parser::Source src = load_source(file);
            VerificationReport rep = verify_source(src, max_steps);
            std::cout << "subject: " << rep.subject << "\n";
            for (const auto& c : rep.checks) {
                std::cout << (c.passed ? "  pass  " : "  FAIL  ") << c.name;
                if (!c.passed)
                    std::cout << " at " << path_to_string(c.witness)
                              << (c.detail.empty() ? "" : " (" + c.detail + ")");
                std::cout << "\n";
            }
            return rep.all_passed() ? 0 : 1;
        }
        if (corpus->parsed()) {
            auto entries = run_corpus(corpus_dir, max_steps);
            bool all_ok = true;
            for (const auto& e : entries) {
                std::cout << (e.ok ? "ok    " : "FAIL  ") << e.file << ": " << e.message << "\n";
                all_ok = all_ok && e.ok;
            }
            if (!all_ok) {
                std::cerr << "error[expect_mismatch]: corpus had failures\n";
                return 1;
            }
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error[" << e.code << "]: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error[internal]: " << e.what() << "\n";
        return 70;
    }
    return 64;
}
