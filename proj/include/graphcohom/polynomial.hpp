#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

namespace gcoh {

/// Integer polynomial, coefficients in ascending degree with trailing zeros trimmed.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<mpz_class> coefficients);

    static IntPolynomial constant(long c);
    /// c·x^k
    static IntPolynomial monomial(long c, std::size_t k);

    const std::vector<mpz_class>& coefficients() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    mpz_class coefficient(std::size_t k) const { return k < c_.size() ? c_[k] : mpz_class(0); }

    mpz_class evaluate(const mpz_class& x) const;
    /// this(inner(x))
    IntPolynomial compose(const IntPolynomial& inner) const;
    IntPolynomial pow(std::size_t e) const;

    /// e.g. "λ^3 - 3λ^2 + 2λ"; "0" for zero.
    std::string to_string(const std::string& var = "x") const;

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.c_ == b.c_; }

private:
    void trim();
    std::vector<mpz_class> c_;
};

}  // namespace gcoh
