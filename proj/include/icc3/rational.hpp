#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "icc3/errors.hpp"

namespace icc3 {

// Exact rational over int64 with eager normalization. Intermediate products
// go through __int128, which is ample at the scales this library handles.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n), den(1) {}
    Rational(long long n, long long d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw InputError("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num == 0) den = 1;
    }

    static Rational make128(__int128 n, __int128 d) {
        if (d == 0) throw InputError("rational with zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        __int128 a = n < 0 ? -n : n;
        __int128 b = d;
        while (b) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        if (a > 1) {
            n /= a;
            d /= a;
        }
        return Rational{static_cast<long long>(n), static_cast<long long>(d), 0};
    }

    friend Rational operator+(const Rational& x, const Rational& y) {
        return make128((__int128)x.num * y.den + (__int128)y.num * x.den, (__int128)x.den * y.den);
    }
    friend Rational operator-(const Rational& x, const Rational& y) {
        return make128((__int128)x.num * y.den - (__int128)y.num * x.den, (__int128)x.den * y.den);
    }
    friend Rational operator*(const Rational& x, const Rational& y) {
        return make128((__int128)x.num * y.num, (__int128)x.den * y.den);
    }
    friend Rational operator/(const Rational& x, const Rational& y) {
        if (y.num == 0) throw InputError("rational division by zero");
        return make128((__int128)x.num * y.den, (__int128)x.den * y.num);
    }

    friend bool operator==(const Rational& x, const Rational& y) {
        return x.num == y.num && x.den == y.den;
    }
    friend bool operator!=(const Rational& x, const Rational& y) { return !(x == y); }
    friend bool operator<(const Rational& x, const Rational& y) {
        return (__int128)x.num * y.den < (__int128)y.num * x.den;
    }
    friend bool operator<=(const Rational& x, const Rational& y) {
        return (__int128)x.num * y.den <= (__int128)y.num * x.den;
    }
    friend bool operator>(const Rational& x, const Rational& y) { return y < x; }
    friend bool operator>=(const Rational& x, const Rational& y) { return y <= x; }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    static Rational parse(const std::string& s) {
        auto whole = [](const std::string& t) {
            size_t used = 0;
            long long v = std::stoll(t, &used);
            if (used != t.size()) throw std::invalid_argument(t);
            return v;
        };
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rational(whole(s));
            return Rational(whole(s.substr(0, slash)), whole(s.substr(slash + 1)));
        } catch (const std::exception&) {
            throw ParseError("bad rational: " + s);
        }
    }

private:
    Rational(long long n, long long d, int) : num(n), den(d) {}
};

}  // namespace icc3
