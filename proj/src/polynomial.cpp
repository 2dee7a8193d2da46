#include "graphcohom/polynomial.hpp"

#include <sstream>

namespace gcoh {

IntPolynomial::IntPolynomial(std::vector<mpz_class> coefficients) : c_(std::move(coefficients))
{
    trim();
}

void IntPolynomial::trim()
{
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

IntPolynomial IntPolynomial::constant(long c)
{
    return IntPolynomial({mpz_class(c)});
}

IntPolynomial IntPolynomial::monomial(long c, std::size_t k)
{
    std::vector<mpz_class> v(k + 1, 0);
    v[k] = c;
    return IntPolynomial(std::move(v));
}

mpz_class IntPolynomial::evaluate(const mpz_class& x) const
{
    mpz_class acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

IntPolynomial IntPolynomial::compose(const IntPolynomial& inner) const
{
    IntPolynomial acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * inner + IntPolynomial({*it});
    return acc;
}

IntPolynomial IntPolynomial::pow(std::size_t e) const
{
    IntPolynomial acc = constant(1), base = *this;
    while (e > 0) {
        if (e & 1u)
            acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

std::string IntPolynomial::to_string(const std::string& var) const
{
    if (c_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
        const mpz_class& c = c_[k];
        if (c == 0)
            continue;
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        mpz_class mag = abs(c);
        if (mag != 1 || k == 0)
            os << mag.get_str();
        if (k >= 1)
            os << var;
        if (k >= 2)
            os << '^' << k;
    }
    return os.str();
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b)
{
    std::vector<mpz_class> v(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i)
        v[i] += b.c_[i];
    return IntPolynomial(std::move(v));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b)
{
    std::vector<mpz_class> v(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i)
        v[i] -= b.c_[i];
    return IntPolynomial(std::move(v));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<mpz_class> v(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            v[i + j] += a.c_[i] * b.c_[j];
    return IntPolynomial(std::move(v));
}

}  // namespace gcoh
