#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <utility>

#include "residua/error.hpp"

namespace residua {

/// Element of Q(i), the Gaussian rationals. Both components are GMP
/// rationals kept in lowest terms; every operation is exact.
class gaussian_rational {
public:
    gaussian_rational() : re_(0), im_(0) {}
    gaussian_rational(long v) : re_(v), im_(0) {} // NOLINT: implicit on purpose
    gaussian_rational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static gaussian_rational rational(long p, long q) {
        if (q == 0) fail(errc::invalid_argument, "zero denominator");
        mpq_class t(p, q);
        t.canonicalize();
        return gaussian_rational(std::move(t));
    }
    static gaussian_rational i() { return gaussian_rational(mpq_class(0), mpq_class(1)); }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    gaussian_rational conj() const { return gaussian_rational(re_, -im_); }

    gaussian_rational operator-() const { return gaussian_rational(-re_, -im_); }

    gaussian_rational& operator+=(const gaussian_rational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    gaussian_rational& operator-=(const gaussian_rational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    gaussian_rational& operator*=(const gaussian_rational& o) {
        mpq_class r = re_ * o.re_ - im_ * o.im_;
        mpq_class i2 = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i2);
        return *this;
    }

    friend gaussian_rational operator+(gaussian_rational a, const gaussian_rational& b) { return a += b; }
    friend gaussian_rational operator-(gaussian_rational a, const gaussian_rational& b) { return a -= b; }
    friend gaussian_rational operator*(gaussian_rational a, const gaussian_rational& b) { return a *= b; }

    gaussian_rational inv() const {
        if (is_zero()) fail(errc::invalid_argument, "division by zero in Q(i)");
        mpq_class n = re_ * re_ + im_ * im_;
        return gaussian_rational(re_ / n, -im_ / n);
    }
    friend gaussian_rational operator/(const gaussian_rational& a, const gaussian_rational& b) {
        return a * b.inv();
    }

    friend bool operator==(const gaussian_rational& a, const gaussian_rational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const gaussian_rational& a, const gaussian_rational& b) { return !(a == b); }

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

    /// Canonical text form, reparseable by the expression grammar:
    /// "0", "-3/2", "i", "-2*i", "1/2 + 3/4*i", "1/2 - i".
    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        if (re_ != 0) out = re_.get_str();
        if (im_ != 0) {
            mpq_class a = abs(im_);
            std::string unit = (a == 1) ? "i" : a.get_str() + "*i";
            if (out.empty())
                out = (im_ < 0 ? "-" : "") + unit;
            else
                out += (im_ < 0 ? " - " : " + ") + unit;
        }
        return out;
    }

private:
    mpq_class re_;
    mpq_class im_;
};

} // namespace residua
