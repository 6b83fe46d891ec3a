#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lamcl/formula.hpp"

namespace lamcl {

// Ordered name -> Formula map.  Extension shadows, lookup finds the newest
// binding; used both for file-level assumptions and binders in scope.
class TypingContext {
public:
    TypingContext() = default;

    void push(const std::string& name, Formula type) { entries_.emplace_back(name, std::move(type)); }
    void pop() { entries_.pop_back(); }

    std::optional<Formula> lookup(const std::string& name) const {
        for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
            if (it->first == name) return it->second;
        return std::nullopt;
    }

    TypingContext extended(const std::string& name, Formula type) const {
        TypingContext c = *this;
        c.push(name, std::move(type));
        return c;
    }

    const std::vector<std::pair<std::string, Formula>>& entries() const { return entries_; }
    size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

private:
    std::vector<std::pair<std::string, Formula>> entries_;
};

} // namespace lamcl
