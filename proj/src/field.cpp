#include "graphcohom/field.hpp"

#include <cctype>
#include <stdexcept>

namespace gcoh {

bool is_prime_number(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

Field Field::prime(std::uint32_t p)
{
    if (p >= (1u << 31) || !is_prime_number(p))
        throw std::invalid_argument("field characteristic must be a prime below 2^31, got " + std::to_string(p));
    return Field(Kind::Prime, p);
}

Field Field::parse(std::string_view text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)) && c != '_' && c != ':')
            s.push_back(c);
    if (s == "Q" || s == "q")
        return rationals();
    if (s.size() >= 2 && (s[0] == 'F' || s[0] == 'f')) {
        std::string digits = s.substr(1);
        if (!digits.empty() && (digits[0] == 'p' || digits[0] == 'P'))
            digits = digits.substr(1);
        if (digits.empty() || digits.size() > 10)
            throw std::invalid_argument("malformed field '" + std::string(text) + "'");
        for (char c : digits)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw std::invalid_argument("malformed field '" + std::string(text) + "'");
        std::uint64_t p = std::stoull(digits);
        if (p >= (1ull << 31))
            throw std::invalid_argument("field characteristic must be below 2^31");
        return prime(static_cast<std::uint32_t>(p));
    }
    throw std::invalid_argument("malformed field '" + std::string(text) + "' (expected Q or F <p>)");
}

std::string Field::name() const
{
    return kind_ == Kind::Rational ? "Q" : "F" + std::to_string(p_);
}

namespace {

mpz_class mod_p(const mpz_class& v, std::uint32_t p)
{
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p);
    return r;
}

}  // namespace

Scalar Field::from_int(long v) const
{
    return normalize(mpq_class(v));
}

Scalar Field::normalize(const mpq_class& v) const
{
    if (kind_ == Kind::Rational) {
        mpq_class r(v);
        r.canonicalize();
        return r;
    }
    mpz_class num = mod_p(v.get_num(), p_);
    mpz_class den = mod_p(v.get_den(), p_);
    if (den == 0)
        throw std::domain_error("denominator vanishes modulo " + std::to_string(p_));
    mpz_class den_inv;
    mpz_class modulus(p_);
    mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t());
    return mpq_class(mod_p(num * den_inv, p_));
}

Scalar Field::add(const Scalar& a, const Scalar& b) const
{
    if (kind_ == Kind::Rational)
        return a + b;
    mpz_class r = a.get_num() + b.get_num();
    if (r >= p_)
        r -= p_;
    return mpq_class(r);
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const
{
    if (kind_ == Kind::Rational)
        return a - b;
    mpz_class r = a.get_num() - b.get_num();
    if (r < 0)
        r += p_;
    return mpq_class(r);
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const
{
    if (kind_ == Kind::Rational)
        return a * b;
    return mpq_class(mod_p(a.get_num() * b.get_num(), p_));
}

Scalar Field::neg(const Scalar& a) const
{
    if (kind_ == Kind::Rational)
        return -a;
    if (a == 0)
        return a;
    return mpq_class(mpz_class(p_) - a.get_num());
}

Scalar Field::inv(const Scalar& a) const
{
    if (is_zero(a))
        throw std::domain_error("division by zero in field " + name());
    if (kind_ == Kind::Rational)
        return 1 / a;
    mpz_class r;
    mpz_class modulus(p_);
    mpz_invert(r.get_mpz_t(), a.get_num_mpz_t(), modulus.get_mpz_t());
    return mpq_class(r);
}

}  // namespace gcoh
