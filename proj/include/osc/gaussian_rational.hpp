#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <complex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace osc {

using Rational = boost::multiprecision::mpq_rational;

/// Parse "p", "-p/q" or a plain integer into an exact rational.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto trim = [](std::string& t) {
        while (!t.empty() && (t.front() == ' ')) t.erase(t.begin());
        while (!t.empty() && (t.back() == ' ')) t.pop_back();
    };
    trim(s);
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto check_digits = [&](std::string_view part) {
        std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
        if (i == part.size()) throw std::invalid_argument("not a rational literal: " + s);
        for (; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9')
                throw std::invalid_argument("not a rational literal: " + s);
    };
    auto slash = s.find('/');
    if (slash == std::string::npos) {
        check_digits(s);
        if (s[0] == '+') s.erase(s.begin());
        return Rational(boost::multiprecision::mpz_int(s));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    trim(num);
    trim(den);
    check_digits(num);
    check_digits(den);
    if (num[0] == '+') num.erase(num.begin());
    if (den[0] == '+') den.erase(den.begin());
    boost::multiprecision::mpz_int d(den);
    if (d == 0) throw std::invalid_argument("zero denominator: " + s);
    return Rational(boost::multiprecision::mpz_int(num), d);
}

inline std::string rational_to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

/// Complex number with exact rational parts. GMP keeps both parts in lowest terms.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(Rational re, Rational im = Rational(0)) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    static GaussianRational parse(std::string_view re, std::string_view im) {
        return {parse_rational(re), parse_rational(im)};
    }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    GaussianRational conj() const { return {re_, -im_}; }
    Rational norm() const { return re_ * re_ + im_ * im_; }

    std::complex<double> to_complex() const {
        return {re_.convert_to<double>(), im_.convert_to<double>()};
    }

    GaussianRational operator-() const { return {-re_, -im_}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        if (o.is_zero()) throw std::domain_error("Division by zero Gaussian rational");
        Rational d = o.norm();
        Rational r = (re_ * o.re_ + im_ * o.im_) / d;
        Rational i = (im_ * o.re_ - re_ * o.im_) / d;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& q) {
        os << rational_to_string(q.re_);
        if (q.im_ != 0) os << (q.im_ > 0 ? "+" : "-") << rational_to_string(abs(q.im_)) << "i";
        return os;
    }

private:
    Rational re_{0};
    Rational im_{0};
};

}  // namespace osc
