#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kr/errors.hpp"

namespace kr {

// Ordered set of variable names. The order is the canonical one used for
// monomial comparison and printing: x, y, z, t, lambda come first, user
// extras follow. Tables are immutable and shared; two tables are compatible
// when their name lists are identical.
class VarTable {
public:
    static constexpr std::size_t kMaxVars = 8;

    explicit VarTable(std::vector<std::string> names) : names_(std::move(names)) {
        if (names_.empty()) throw DomainError("variable table must not be empty");
        if (names_.size() > kMaxVars)
            throw DomainError("variable table limited to 8 variables");
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (names_[i].empty()) throw DomainError("empty variable name");
            for (std::size_t j = i + 1; j < names_.size(); ++j)
                if (names_[i] == names_[j])
                    throw DomainError("duplicate variable name: " + names_[i]);
        }
    }

    // x, y, z, t, lambda plus the given extras.
    static std::shared_ptr<const VarTable> with_extras(const std::vector<std::string>& extras) {
        std::vector<std::string> names{"x", "y", "z", "t", "lambda"};
        names.insert(names.end(), extras.begin(), extras.end());
        return std::make_shared<const VarTable>(std::move(names));
    }

    // The table used throughout the toolkit: x, y, z, t, lambda, w.
    // w is the formal flow parameter.
    static const std::shared_ptr<const VarTable>& standard() {
        static const std::shared_ptr<const VarTable> table = with_extras({"w"});
        return table;
    }

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }

    std::optional<std::size_t> index_of(const std::string& name) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return i;
        return std::nullopt;
    }

    std::size_t require(const std::string& name) const {
        auto i = index_of(name);
        if (!i) throw DomainError("unknown variable: " + name);
        return *i;
    }

    bool operator==(const VarTable& other) const { return names_ == other.names_; }
    bool operator!=(const VarTable& other) const { return !(*this == other); }

private:
    std::vector<std::string> names_;
};

using VarTablePtr = std::shared_ptr<const VarTable>;

inline void check_same_table(const VarTablePtr& a, const VarTablePtr& b) {
    if (a == b) return;
    if (!a || !b || *a != *b) throw DomainError("variable table mismatch");
}

// Fixed indices in the standard table.
namespace var {
inline constexpr std::size_t x = 0;
inline constexpr std::size_t y = 1;
inline constexpr std::size_t z = 2;
inline constexpr std::size_t t = 3;
inline constexpr std::size_t lambda = 4;
inline constexpr std::size_t w = 5;
} // namespace var

} // namespace kr
