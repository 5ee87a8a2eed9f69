#pragma once

#include <array>
#include <cstdint>
#include <cstddef>

#include "kr/errors.hpp"

namespace kr {

// Exponent vector of fixed small width. Total degree is cached so the
// graded-lex comparison is cheap.
class Monomial {
public:
    static constexpr std::size_t kWidth = 8;

    explicit Monomial(std::size_t nvars) : n_(static_cast<std::uint8_t>(nvars)) {
        exp_.fill(0);
    }

    std::size_t nvars() const { return n_; }
    std::uint16_t operator[](std::size_t i) const { return exp_[i]; }

    void set(std::size_t i, unsigned e) {
        if (e > 0xffff) throw DomainError("exponent too large");
        deg_ += static_cast<std::int32_t>(e) - exp_[i];
        exp_[i] = static_cast<std::uint16_t>(e);
    }

    unsigned degree() const { return static_cast<unsigned>(deg_); }

    bool is_one() const { return deg_ == 0; }

    Monomial operator*(const Monomial& o) const {
        Monomial r(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            std::uint32_t e = static_cast<std::uint32_t>(exp_[i]) + o.exp_[i];
            if (e > 0xffff) throw DomainError("exponent overflow in monomial product");
            r.exp_[i] = static_cast<std::uint16_t>(e);
        }
        r.deg_ = deg_ + o.deg_;
        return r;
    }

    bool divides(const Monomial& o) const {
        for (std::size_t i = 0; i < n_; ++i)
            if (exp_[i] > o.exp_[i]) return false;
        return true;
    }

    // o / *this; caller must ensure divisibility.
    Monomial divide_into(const Monomial& o) const {
        Monomial r(n_);
        for (std::size_t i = 0; i < n_; ++i)
            r.exp_[i] = static_cast<std::uint16_t>(o.exp_[i] - exp_[i]);
        r.deg_ = o.deg_ - deg_;
        return r;
    }

    bool operator==(const Monomial& o) const {
        return n_ == o.n_ && deg_ == o.deg_ && exp_ == o.exp_;
    }
    bool operator!=(const Monomial& o) const { return !(*this == o); }

    // Ascending graded-lex: lower total degree first; ties broken so that a
    // lexicographically larger exponent vector (earlier variables weigh more)
    // compares as larger.
    bool operator<(const Monomial& o) const {
        if (deg_ != o.deg_) return deg_ < o.deg_;
        for (std::size_t i = 0; i < n_; ++i)
            if (exp_[i] != o.exp_[i]) return exp_[i] < o.exp_[i];
        return false;
    }

private:
    std::array<std::uint16_t, kWidth> exp_;
    std::int32_t deg_ = 0;
    std::uint8_t n_;
};

} // namespace kr
