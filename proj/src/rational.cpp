#include "locgh/rational.hpp"

#include <cctype>

namespace locgh {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

std::optional<Rational> parse_rational(const std::string& text) {
    if (text.empty()) return std::nullopt;
    std::string s = text;

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        bool neg = false;
        if (!num.empty() && (num[0] == '-' || num[0] == '+')) {
            neg = num[0] == '-';
            num = num.substr(1);
        }
        if (!all_digits(num) || !all_digits(den)) return std::nullopt;
        mpz_class n(num), d(den);
        if (d == 0) return std::nullopt;
        Rational q(n, d);
        q.canonicalize();
        if (neg) q = -q;
        return q;
    }

    bool neg = false;
    std::size_t i = 0;
    if (s[i] == '+' || s[i] == '-') {
        neg = s[i] == '-';
        ++i;
    }
    std::string int_part, frac_part, exp_part;
    bool exp_neg = false;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) int_part += s[i++];
    if (i < s.size() && s[i] == '.') {
        ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) frac_part += s[i++];
    }
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            exp_neg = s[i] == '-';
            ++i;
        }
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) exp_part += s[i++];
        if (exp_part.empty()) return std::nullopt;
    }
    if (i != s.size()) return std::nullopt;
    if (int_part.empty() && frac_part.empty()) return std::nullopt;

    mpz_class mantissa((int_part.empty() ? "0" : int_part) + frac_part, 10);
    Rational q(mantissa);
    for (std::size_t k = 0; k < frac_part.size(); ++k) q /= 10;
    if (!exp_part.empty()) {
        mpz_class ten(10);
        mpz_class p;
        mpz_pow_ui(p.get_mpz_t(), ten.get_mpz_t(), std::stoul(exp_part));
        if (exp_neg)
            q /= Rational(p);
        else
            q *= Rational(p);
    }
    q.canonicalize();
    if (neg) q = -q;
    return q;
}

std::string format_rational(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string format_rational_decimal(const Rational& q) {
    mpz_class den = q.get_den();
    unsigned long twos = 0, fives = 0;
    mpz_class d = den;
    while (d % 2 == 0) {
        d /= 2;
        ++twos;
    }
    while (d % 5 == 0) {
        d /= 5;
        ++fives;
    }
    if (d != 1) return format_rational(q);
    unsigned long shift = twos > fives ? twos : fives;
    mpz_class ten(10), p;
    mpz_pow_ui(p.get_mpz_t(), ten.get_mpz_t(), shift);
    mpz_class scaled = q.get_num() * (p / den);
    bool neg = scaled < 0;
    mpz_class mag = neg ? mpz_class(-scaled) : scaled;
    std::string digits = mag.get_str();
    std::string out;
    if (shift == 0) {
        out = digits;
    } else {
        while (digits.size() <= shift) digits.insert(digits.begin(), '0');
        out = digits.substr(0, digits.size() - shift) + "." + digits.substr(digits.size() - shift);
        while (out.back() == '0') out.pop_back();
        if (out.back() == '.') out.pop_back();
    }
    return neg ? "-" + out : out;
}

}  // namespace locgh
