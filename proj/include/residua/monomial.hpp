#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "residua/error.hpp"

namespace residua {

/// Exponent vector of fixed length (the ring's variable count).
class monomial {
public:
    explicit monomial(std::size_t nvars) : e_(nvars, 0) {}
    explicit monomial(std::vector<std::uint32_t> e) : e_(std::move(e)) {}

    static monomial one(std::size_t nvars) { return monomial(nvars); }
    static monomial var(std::size_t nvars, std::size_t i, std::uint32_t p = 1) {
        monomial m(nvars);
        m.e_[i] = p;
        return m;
    }

    std::size_t nvars() const { return e_.size(); }
    std::uint32_t operator[](std::size_t i) const { return e_[i]; }
    const std::vector<std::uint32_t>& exponents() const { return e_; }

    bool is_one() const {
        for (auto x : e_)
            if (x) return false;
        return true;
    }

    std::uint64_t deg() const { return std::accumulate(e_.begin(), e_.end(), std::uint64_t{0}); }

    long weighted_deg(std::span<const long> w) const {
        long d = 0;
        for (std::size_t i = 0; i < e_.size(); ++i) d += w[i] * static_cast<long>(e_[i]);
        return d;
    }

    monomial operator*(const monomial& o) const {
        monomial r(*this);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
        return r;
    }

    bool divides(const monomial& m) const {
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > m.e_[i]) return false;
        return true;
    }

    /// Exact quotient m / this; pre: this->divides(m).
    monomial divide_into(const monomial& m) const {
        monomial r(m);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= e_[i];
        return r;
    }

    static monomial lcm(const monomial& a, const monomial& b) {
        monomial r(a);
        for (std::size_t i = 0; i < r.e_.size(); ++i)
            if (b.e_[i] > r.e_[i]) r.e_[i] = b.e_[i];
        return r;
    }

    // Structural order for use as a container key; not a monomial order.
    auto operator<=>(const monomial&) const = default;

private:
    std::vector<std::uint32_t> e_;
};

enum class order_kind { lex, grlex, grevlex, weighted };

/// Total multiplicative well-ordering on monomials. weighted(w) compares
/// the w-degree first and breaks ties by graded reverse lexicographic.
class monomial_order {
public:
    static monomial_order lex() { return monomial_order(order_kind::lex, {}); }
    static monomial_order grlex() { return monomial_order(order_kind::grlex, {}); }
    static monomial_order grevlex() { return monomial_order(order_kind::grevlex, {}); }
    static monomial_order weighted(std::vector<long> w) {
        for (long x : w)
            if (x <= 0) fail(errc::invalid_argument, "order weights must be positive");
        return monomial_order(order_kind::weighted, std::move(w));
    }

    order_kind kind() const { return kind_; }
    const std::vector<long>& weights() const { return weights_; }

    /// <0 iff a < b, 0 iff equal, >0 iff a > b.
    int compare(const monomial& a, const monomial& b) const {
        switch (kind_) {
            case order_kind::lex:
                return cmp_lex(a, b);
            case order_kind::grlex: {
                if (int c = cmp_deg(a, b)) return c;
                return cmp_lex(a, b);
            }
            case order_kind::grevlex: {
                if (int c = cmp_deg(a, b)) return c;
                return cmp_revlex_tail(a, b);
            }
            case order_kind::weighted: {
                if (weights_.size() != a.nvars())
                    fail(errc::invalid_argument, "order weight count != variable count");
                long da = a.weighted_deg(weights_), db = b.weighted_deg(weights_);
                if (da != db) return da < db ? -1 : 1;
                if (int c = cmp_deg(a, b)) return c;
                return cmp_revlex_tail(a, b);
            }
        }
        return 0;
    }

    bool less(const monomial& a, const monomial& b) const { return compare(a, b) < 0; }

    std::string str() const {
        switch (kind_) {
            case order_kind::lex: return "lex";
            case order_kind::grlex: return "grlex";
            case order_kind::grevlex: return "grevlex";
            case order_kind::weighted: {
                std::string s = "weighted:";
                for (std::size_t i = 0; i < weights_.size(); ++i)
                    s += (i ? "," : "") + std::to_string(weights_[i]);
                return s;
            }
        }
        return "?";
    }

private:
    monomial_order(order_kind k, std::vector<long> w) : kind_(k), weights_(std::move(w)) {}

    static int cmp_deg(const monomial& a, const monomial& b) {
        auto da = a.deg(), db = b.deg();
        return da == db ? 0 : (da < db ? -1 : 1);
    }
    static int cmp_lex(const monomial& a, const monomial& b) {
        for (std::size_t i = 0; i < a.nvars(); ++i)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }
    // Equal total degree: larger = smaller exponent at the last differing slot.
    static int cmp_revlex_tail(const monomial& a, const monomial& b) {
        for (std::size_t i = a.nvars(); i-- > 0;)
            if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
        return 0;
    }

    order_kind kind_;
    std::vector<long> weights_;
};

} // namespace residua
