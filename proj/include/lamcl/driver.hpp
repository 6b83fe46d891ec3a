#pragma once

// The operations behind the CLI subcommands, exposed as functions so the
// test suites drive exactly what the tool runs.

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lamcl/errors.hpp"
#include "lamcl/normalize.hpp"
#include "lamcl/parse.hpp"
#include "lamcl/print.hpp"
#include "lamcl/reduction.hpp"
#include "lamcl/trace.hpp"
#include "lamcl/verify.hpp"

namespace lamcl {

enum class Strategy { Master, Leftmost, Random };

inline std::optional<Strategy> strategy_from_string(const std::string& s) {
    if (s == "master") return Strategy::Master;
    if (s == "leftmost") return Strategy::Leftmost;
    if (s == "random") return Strategy::Random;
    return std::nullopt;
}

inline uint64_t default_budget() {
    if (const char* env = std::getenv("LAMCL_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 1'000'000;
}

inline Parser::Source load_source(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_source(ss.str());
}

struct ReduceOutcome {
    Term initial;
    Term final_term;
    std::vector<TraceStep> steps;
    std::vector<MasterMeasure> measures;
};

inline ReduceOutcome reduce_term(const Parser::Source& src, Strategy strategy, uint64_t seed,
                                 uint64_t max_steps) {
    TypecheckOptions ty{src.bool_extension};
    typecheck(src.ctx, src.term, ty);

    ReduceOutcome out;
    out.initial = src.term;
    if (strategy == Strategy::Master) {
        NormalizeOptions opts;
        opts.max_steps = max_steps;
        opts.ty = ty;
        NormalizeResult res = normalize(src.ctx, src.term, opts);
        out.final_term = res.term;
        out.steps = std::move(res.steps);
        out.measures = std::move(res.measures);
        return out;
    }

    std::mt19937_64 rng(seed);
    Term t = src.term;
    for (uint64_t i = 0;; ++i) {
        auto redexes = find_redexes(src.ctx, t, ty);
        if (redexes.empty()) break;
        if (i >= max_steps)
            throw BudgetError("step budget of " + std::to_string(max_steps) + " exhausted");
        const Redex& r =
            strategy == Strategy::Leftmost ? redexes.front() : redexes[rng() % redexes.size()];
        t = step(src.ctx, t, r, ty);
        out.steps.push_back({i, r.rule, r.path, r.sender, r.ys, r.fresh_hint, std::nullopt, std::nullopt, t});
    }
    out.final_term = t;
    return out;
}

// Breadth-first exploration of every redex choice; returns the distinct
// normal forms reached within `depth` steps, canonically printed and sorted.
inline std::vector<std::string> enumerate_normal_forms(const Parser::Source& src, size_t depth,
                                                       size_t state_budget = 100'000) {
    TypecheckOptions ty{src.bool_extension};
    typecheck(src.ctx, src.term, ty);

    std::set<std::string> seen;
    std::map<std::string, Term> normals; // alpha key -> representative
    std::deque<std::pair<Term, size_t>> queue;
    queue.emplace_back(src.term, 0);
    seen.insert(alpha_key(src.term));
    size_t visited = 0;
    while (!queue.empty()) {
        auto [t, d] = queue.front();
        queue.pop_front();
        if (++visited > state_budget)
            throw BudgetError("enumeration exceeded " + std::to_string(state_budget) + " states");
        auto redexes = find_redexes(src.ctx, t, ty);
        if (redexes.empty()) {
            normals.emplace(alpha_key(t), t);
            continue;
        }
        if (d == depth) continue;
        for (const Redex& r : redexes) {
            Term t2 = step(src.ctx, t, r, ty);
            if (seen.insert(alpha_key(t2)).second) queue.emplace_back(t2, d + 1);
        }
    }
    std::vector<std::string> out;
    for (const auto& [k, t] : normals) { (void)k; out.push_back(term_to_string(t)); }
    std::sort(out.begin(), out.end());
    return out;
}

// Normalize, then run every checker on the result.
inline VerificationReport verify_source(const Parser::Source& src, uint64_t max_steps) {
    TypecheckOptions ty{src.bool_extension};
    NormalizeOptions opts;
    opts.max_steps = max_steps;
    opts.ty = ty;
    NormalizeResult res = normalize(src.ctx, src.term, opts);

    VerificationReport report;
    report.subject = term_to_string(res.term);
    report.checks.push_back({"is_normal", is_normal(src.ctx, res.term, ty), {}, std::nullopt, ""});
    TermClass cls = classify(res.term);
    report.checks.push_back({"parallel_form",
                             cls == TermClass::SimplyTyped || cls == TermClass::SimpleParallel,
                             {}, std::nullopt, ""});
    for (auto& c : check_subformula_property(src.ctx, res.term, ty).checks)
        report.checks.push_back(c);
    // normalize() ran with the measure assertion on; reaching this point
    // means every recursion decreased it.
    report.checks.push_back({"measure_decrease", true, {}, std::nullopt, ""});
    return report;
}

struct CorpusEntry {
    std::string file;
    bool ok = false;
    std::string message;
};

inline std::vector<CorpusEntry> run_corpus(const std::string& dir, uint64_t max_steps) {
    namespace fs = std::filesystem;
    std::vector<std::string> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".lamcl")
            files.push_back(e.path().string());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw IoError("no .lamcl files in " + dir);

    std::vector<CorpusEntry> out;
    for (const std::string& f : files) {
        CorpusEntry entry{f, false, ""};
        try {
            Parser::Source src = load_source(f);
            ReduceOutcome res = reduce_term(src, Strategy::Master, 0, max_steps);
            TypecheckOptions ty{src.bool_extension};
            VerificationReport rep = verify_source(src, max_steps);
            if (!rep.all_passed()) {
                entry.message = "verification failed";
            } else if (src.expect && !alpha_eq(res.final_term, *src.expect)) {
                entry.message = "expected " + term_to_string(*src.expect) + ", got " +
                                term_to_string(res.final_term);
            } else {
                entry.ok = true;
                entry.message = term_to_string(res.final_term) + " (" +
                                std::to_string(res.steps.size()) + " steps)";
            }
            (void)ty;
        } catch (const Error& e) {
            entry.message = std::string(e.code) + ": " + e.what();
        }
        out.push_back(std::move(entry));
    }
    return out;
}

} // namespace lamcl
