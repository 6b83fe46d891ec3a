#pragma once

#include <string>
#include <vector>

#include "lamcl/formula.hpp"
#include "lamcl/parse.hpp"
#include "lamcl/term.hpp"

namespace lamcl::testing {

inline Formula F(const std::string& s) { return parse_formula(s); }
inline Term T(const std::string& s, bool ext = false) { return parse_term(s, ext); }

// Every formula of exactly `size` symbols over the given leaves, smallest
// sizes memoized by the caller.
inline void formulas_of_size(size_t size, const std::vector<Formula>& leaves,
                             std::vector<std::vector<Formula>>& by_size) {
    while (by_size.size() <= size) {
        size_t s = by_size.size();
        std::vector<Formula> out;
        if (s == 1) out = leaves;
        if (s >= 3 && s % 2 == 1) {
            for (size_t l = 1; l + 2 <= s; l += 2) {
                size_t r = s - 1 - l;
                for (const Formula& a : by_size[l])
                    for (const Formula& b : by_size[r]) {
                        out.push_back(Formula::arrow(a, b));
                        out.push_back(Formula::conj(a, b));
                    }
            }
        }
        by_size.push_back(std::move(out));
    }
}

inline std::vector<Formula> all_formulas_up_to(size_t size) {
    std::vector<Formula> leaves = {Formula::atom("P"), Formula::atom("Q"), Formula::atom("R"),
                                   Formula::bot(), Formula::top()};
    std::vector<std::vector<Formula>> by_size;
    formulas_of_size(size, leaves, by_size);
    std::vector<Formula> out;
    for (const auto& bucket : by_size) out.insert(out.end(), bucket.begin(), bucket.end());
    return out;
}

// Independent strong-subformula oracle: enumerate the prime proper
// subformulas, then collect their proper subformulas.
inline FormulaSet strong_subformulas_oracle(const Formula& a) {
    FormulaSet out;
    for (const Formula& x : proper_subformulas(a))
        if (is_prime(x))
            for (const Formula& b : proper_subformulas(x)) out.insert(b);
    return out;
}

} // namespace lamcl::testing
