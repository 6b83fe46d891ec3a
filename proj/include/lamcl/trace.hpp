#pragma once

// Trace records: one self-delimiting JSON object per line, stable key order,
// bit-exact across runs given identical flags and seed.

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lamcl/normalize.hpp"
#include "lamcl/print.hpp"

namespace lamcl {

using json = nlohmann::ordered_json;

inline json trace_record(const TraceStep& s) {
    json j;
    j["step"] = s.index;
    j["rule"] = rule_name(s.rule);
    j["path"] = s.path;
    if (!s.sender.empty()) j["sender"] = s.sender;
    if (!s.ys.empty()) j["ys"] = s.ys;
    if (!s.fresh.empty() && s.rule == RuleId::Cross) j["fresh"] = s.fresh;
    if (s.measure) {
        j["measure"] = {{"asize", s.measure->safe_set_size},
                        {"r", s.measure->max_complexity},
                        {"k", s.measure->max_count},
                        {"s", s.measure->term_size}};
    }
    if (s.complexity) {
        j["complexity"] = {{"c", s.complexity->kind_cost},
                           {"d", s.complexity->par_count},
                           {"l", s.complexity->reduction_len},
                           {"o", s.complexity->occurrences}};
    }
    j["term_after"] = term_to_string(s.after);
    return j;
}

inline void write_trace(const std::vector<TraceStep>& steps, std::ostream& out) {
    for (const TraceStep& s : steps) out << trace_record(s).dump() << "\n";
}

} // namespace lamcl
