#include "lks/rational.hpp"

#include <stdexcept>

namespace lks {

namespace {

// BigInt's string constructor reads a leading 0 as an octal prefix
BigInt decimal_int(const std::string& s) {
    bool neg = !s.empty() && s[0] == '-';
    std::string digits = neg ? s.substr(1) : s;
    if (digits.empty()) throw std::invalid_argument("no digits");
    auto nz = digits.find_first_not_of('0');
    BigInt v(nz == std::string::npos ? std::string("0") : digits.substr(nz));
    return neg ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            if (text.find('.') != std::string::npos) {
                // decimal literal, read exactly
                auto dot = text.find('.');
                std::string whole = text.substr(0, dot);
                std::string frac = text.substr(dot + 1);
                bool neg = !whole.empty() && whole[0] == '-';
                if (neg) whole = whole.substr(1);
                if (whole.empty()) whole = "0";
                for (char c : whole + frac)
                    if (c < '0' || c > '9') throw std::invalid_argument("bad digit");
                BigInt num = decimal_int(whole + frac);
                BigInt den = 1;
                for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
                Rational r(num, den);
                return neg ? Rational(-r) : r;
            }
            for (std::size_t i = 0; i < text.size(); ++i)
                if (!(text[i] >= '0' && text[i] <= '9') && !(i == 0 && text[i] == '-'))
                    throw std::invalid_argument("bad digit");
            if (text.empty() || text == "-") throw std::invalid_argument("empty");
            return Rational(decimal_int(text));
        }
        std::string p = text.substr(0, slash), q = text.substr(slash + 1);
        if (p.empty() || q.empty()) throw std::invalid_argument("empty part");
        for (std::size_t i = 0; i < p.size(); ++i)
            if (!(p[i] >= '0' && p[i] <= '9') && !(i == 0 && p[i] == '-'))
                throw std::invalid_argument("bad digit");
        for (char c : q)
            if (c < '0' || c > '9') throw std::invalid_argument("bad digit");
        BigInt den = decimal_int(q);
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(decimal_int(p), den);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("cannot parse rational '" + text + "'");
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("cannot parse rational '" + text + "'");
    }
}

std::string to_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

Rational make_rational(std::int64_t p, std::int64_t q) {
    return Rational(BigInt(p), BigInt(q));
}

std::int64_t floor_int(const Rational& r) {
    BigInt q = numerator(r) / denominator(r);  // truncates toward zero
    if (r < 0 && q * denominator(r) != numerator(r)) q -= 1;
    return q.convert_to<std::int64_t>();
}

std::int64_t ceil_int(const Rational& r) {
    return -floor_int(-r);
}

double to_double(const Rational& r) {
    return r.convert_to<double>();
}

Rational sqrt_upper(const Rational& x) {
    if (x < 0) throw std::domain_error("sqrt_upper of negative value");
    const std::int64_t den = 1 << 16;
    // binary search the least p with (p/den)^2 >= x
    std::int64_t lo = 0, hi = den;
    while (Rational(hi, den) * Rational(hi, den) < x) hi *= 2;
    while (lo < hi) {
        std::int64_t mid = lo + (hi - lo) / 2;
        Rational m(mid, den);
        if (m * m >= x) hi = mid;
        else lo = mid + 1;
    }
    return Rational(lo, den);
}

}  // namespace lks
