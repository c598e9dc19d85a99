#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "residua/error.hpp"
#include "residua/monomial.hpp"
#include "residua/rational.hpp"

namespace residua {

/// Variable context shared by all polynomials of one ring. Rings either
/// hold plain holomorphic variables z1..zn or the doubled set
/// z1..zn, zb1..zbn where zb_i stands for the conjugate of z_i.
struct poly_ring {
    std::vector<std::string> vars;
    int conj_pairs = 0; // n when vars = z1..zn, zb1..zbn; 0 otherwise

    std::size_t nvars() const { return vars.size(); }

    static std::shared_ptr<const poly_ring> make(int n) {
        auto r = std::make_shared<poly_ring>();
        for (int i = 1; i <= n; ++i) r->vars.push_back("z" + std::to_string(i));
        return r;
    }

    static std::shared_ptr<const poly_ring> make_with_conjugates(int n) {
        auto r = std::make_shared<poly_ring>();
        for (int i = 1; i <= n; ++i) r->vars.push_back("z" + std::to_string(i));
        for (int i = 1; i <= n; ++i) r->vars.push_back("zb" + std::to_string(i));
        r->conj_pairs = n;
        return r;
    }

    int var_index(const std::string& name) const {
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == name) return static_cast<int>(i);
        return -1;
    }

    bool same(const poly_ring& o) const { return vars == o.vars && conj_pairs == o.conj_pairs; }
};

using ring_ptr = std::shared_ptr<const poly_ring>;

inline void check_same_ring(const ring_ptr& a, const ring_ptr& b) {
    if (a == b) return;
    if (!a || !b || !a->same(*b)) fail(errc::ring_mismatch, "operands live in different rings");
}

/// Sparse multivariate polynomial over Q(i). Zero coefficients are never
/// stored; the term map key order is structural, display order is grevlex.
class polynomial {
public:
    using term_map = std::map<monomial, gaussian_rational>;

    explicit polynomial(ring_ptr ring) : ring_(std::move(ring)) {}

    static polynomial zero(ring_ptr ring) { return polynomial(std::move(ring)); }
    static polynomial constant(ring_ptr ring, gaussian_rational c) {
        polynomial p(std::move(ring));
        if (!c.is_zero()) p.terms_.emplace(monomial::one(p.ring_->nvars()), std::move(c));
        return p;
    }
    static polynomial one(ring_ptr ring) { return constant(std::move(ring), 1); }
    static polynomial variable(ring_ptr ring, std::size_t i, std::uint32_t pow = 1) {
        polynomial p(ring);
        if (i >= ring->nvars()) fail(errc::invalid_argument, "variable index out of range");
        p.terms_.emplace(monomial::var(ring->nvars(), i, pow), gaussian_rational(1));
        return p;
    }
    static polynomial from_monomial(ring_ptr ring, monomial m, gaussian_rational c) {
        polynomial p(std::move(ring));
        if (!c.is_zero()) p.terms_.emplace(std::move(m), std::move(c));
        return p;
    }

    const ring_ptr& ring() const { return ring_; }
    const term_map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
    }
    std::size_t term_count() const { return terms_.size(); }

    gaussian_rational coeff(const monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? gaussian_rational(0) : it->second;
    }
    gaussian_rational constant_term() const { return coeff(monomial::one(ring_->nvars())); }

    void add_term(const monomial& m, const gaussian_rational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    polynomial operator-() const {
        polynomial r(ring_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }

    polynomial& operator+=(const polynomial& o) {
        check_same_ring(ring_, o.ring_);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    polynomial& operator-=(const polynomial& o) {
        check_same_ring(ring_, o.ring_);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend polynomial operator+(polynomial a, const polynomial& b) { return a += b; }
    friend polynomial operator-(polynomial a, const polynomial& b) { return a -= b; }

    friend polynomial operator*(const polynomial& a, const polynomial& b) {
        check_same_ring(a.ring_, b.ring_);
        polynomial r(a.ring_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }

    polynomial scaled(const gaussian_rational& c) const {
        polynomial r(ring_);
        if (c.is_zero()) return r;
        for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
        return r;
    }

    polynomial mul_monomial(const monomial& m, const gaussian_rational& c) const {
        polynomial r(ring_);
        if (c.is_zero()) return r;
        for (const auto& [mm, k] : terms_) r.terms_.emplace(mm * m, k * c);
        return r;
    }

    polynomial pow(unsigned e) const {
        polynomial r = one(ring_);
        for (unsigned k = 0; k < e; ++k) r = r * *this;
        return r;
    }

    polynomial derivative(std::size_t var) const {
        polynomial r(ring_);
        for (const auto& [m, c] : terms_) {
            std::uint32_t e = m[var];
            if (e == 0) continue;
            auto ex = m.exponents();
            ex[var] = e - 1;
            r.add_term(monomial(std::move(ex)), c * gaussian_rational(static_cast<long>(e)));
        }
        return r;
    }

    /// Complex conjugate in a ring with conjugate pairs: swaps z_i <-> zb_i
    /// and conjugates coefficients.
    polynomial conj() const {
        int n = ring_->conj_pairs;
        if (n == 0) fail(errc::invalid_argument, "ring has no conjugate variables");
        polynomial r(ring_);
        for (const auto& [m, c] : terms_) {
            std::vector<std::uint32_t> ex(m.exponents());
            for (int i = 0; i < n; ++i) std::swap(ex[i], ex[i + n]);
            r.terms_.emplace(monomial(std::move(ex)), c.conj());
        }
        return r;
    }

    std::pair<monomial, gaussian_rational> leading(const monomial_order& ord) const {
        if (terms_.empty()) fail(errc::invalid_argument, "leading term of zero polynomial");
        auto best = terms_.begin();
        for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
            if (ord.less(best->first, it->first)) best = it;
        return {best->first, best->second};
    }

    std::uint64_t total_deg() const { // 0 for the zero polynomial
        std::uint64_t d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.deg());
        return d;
    }

    std::complex<double> eval(std::span<const std::complex<double>> vals) const {
        std::complex<double> acc{0.0, 0.0};
        for (const auto& [m, c] : terms_) {
            std::complex<double> t = c.to_complex();
            for (std::size_t i = 0; i < m.nvars(); ++i)
                for (std::uint32_t k = 0; k < m[i]; ++k) t *= vals[i];
            acc += t;
        }
        return acc;
    }

    friend bool operator==(const polynomial& a, const polynomial& b) {
        return a.ring_->same(*b.ring_) && a.terms_ == b.terms_;
    }
    friend bool operator!=(const polynomial& a, const polynomial& b) { return !(a == b); }

    /// Canonical text form: terms in descending grevlex, rationals in lowest
    /// terms, mixed complex coefficients parenthesized.
    std::string str() const {
        if (terms_.empty()) return "0";
        std::vector<const std::pair<const monomial, gaussian_rational>*> ts;
        ts.reserve(terms_.size());
        for (const auto& t : terms_) ts.push_back(&t);
        auto ord = monomial_order::grevlex();
        std::sort(ts.begin(), ts.end(),
                  [&](auto* a, auto* b) { return ord.less(b->first, a->first); });
        std::string out;
        bool first = true;
        for (auto* t : ts) {
            auto [body, neg] = term_str(t->first, t->second);
            if (first) {
                out += neg ? "-" + body : body;
                first = false;
            } else {
                out += neg ? " - " + body : " + " + body;
            }
        }
        return out;
    }

    std::string monomial_str(const monomial& m) const {
        std::string out;
        for (std::size_t i = 0; i < m.nvars(); ++i) {
            if (m[i] == 0) continue;
            if (!out.empty()) out += "*";
            out += ring_->vars[i];
            if (m[i] > 1) out += "^" + std::to_string(m[i]);
        }
        return out;
    }

private:
    // Returns the printed magnitude and whether a leading '-' was factored out.
    std::pair<std::string, bool> term_str(const monomial& m, const gaussian_rational& c) const {
        std::string mono = monomial_str(m);
        if (c.is_real()) {
            bool neg = c.re() < 0;
            mpq_class mag = abs(c.re());
            if (mono.empty()) return {mag.get_str(), neg};
            if (mag == 1) return {mono, neg};
            return {mag.get_str() + "*" + mono, neg};
        }
        if (c.re() == 0) {
            bool neg = c.im() < 0;
            mpq_class mag = abs(c.im());
            std::string unit = (mag == 1) ? "i" : mag.get_str() + "*i";
            if (mono.empty()) return {unit, neg};
            return {unit + "*" + mono, neg};
        }
        std::string body = "(" + c.str() + ")";
        if (!mono.empty()) body += "*" + mono;
        return {body, false};
    }

    ring_ptr ring_;
    term_map terms_;
};

} // namespace residua
