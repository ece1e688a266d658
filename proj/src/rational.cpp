#include "vflab/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace vflab {

Rational::Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::inverse() const {
    if (is_zero()) throw std::domain_error("Rational: inverse of zero");
    return Rational(mpq_class(1 / v_));
}

mpz_class Rational::floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
    return q;
}

mpz_class Rational::ceil() const {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
    return q;
}

std::optional<Rational> Rational::parse(const std::string& text) {
    if (text.empty()) return std::nullopt;
    auto is_int = [](const std::string& s) {
        if (s.empty()) return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            if (!is_int(text)) return std::nullopt;
            return Rational(mpq_class(mpz_class(text)));
        }
        std::string p = text.substr(0, slash), q = text.substr(slash + 1);
        if (!is_int(p) || !is_int(q)) return std::nullopt;
        mpz_class den(q);
        if (den == 0) return std::nullopt;
        mpq_class v{mpz_class(p)};
        v /= mpq_class(den);
        return Rational(v);
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

std::string Rational::str() const {
    if (is_integer()) return num().get_str();
    return num().get_str() + "/" + den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational gcd(const Rational& a, const Rational& b) {
    // gcd of rationals: gcd of numerators over lcm of denominators.
    mpz_class n, d;
    mpz_gcd(n.get_mpz_t(), a.num().get_mpz_t(), b.num().get_mpz_t());
    d = lcm(a.den(), b.den());
    mpq_class q(n);
    q /= mpq_class(d);
    return Rational(q);
}

mpz_class lcm(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

}  // namespace vflab
