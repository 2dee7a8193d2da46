#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace gcoh {

/// Exact field element. Over F_p the value is always a canonical integer in [0, p).
using Scalar = mpq_class;

/// Ground field: the rationals or a prime field F_p with p < 2^31.
class Field {
public:
    enum class Kind { Rational, Prime };

    Field() = default;

    static Field rationals() { return Field(); }
    static Field prime(std::uint32_t p);

    /// Accepts "Q", "F 101", "F101", "F_101" (case-insensitive on the letter).
    static Field parse(std::string_view text);

    Kind kind() const { return kind_; }
    bool is_prime() const { return kind_ == Kind::Prime; }
    std::uint32_t characteristic() const { return p_; }
    std::string name() const;

    Scalar from_int(long v) const;
    Scalar normalize(const mpq_class& v) const;

    Scalar add(const Scalar& a, const Scalar& b) const;
    Scalar sub(const Scalar& a, const Scalar& b) const;
    Scalar mul(const Scalar& a, const Scalar& b) const;
    Scalar neg(const Scalar& a) const;
    Scalar inv(const Scalar& a) const;
    Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

    static bool is_zero(const Scalar& a) { return sgn(a) == 0; }

    friend bool operator==(const Field& a, const Field& b) { return a.kind_ == b.kind_ && a.p_ == b.p_; }
    friend bool operator!=(const Field& a, const Field& b) { return !(a == b); }

private:
    Field(Kind k, std::uint32_t p) : kind_(k), p_(p) {}

    Kind kind_ = Kind::Rational;
    std::uint32_t p_ = 0;
};

bool is_prime_number(std::uint64_t n);

}  // namespace gcoh
