#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace topoflow {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParseError : Error {
    using Error::Error;
};
struct DiagramError : Error {
    using Error::Error;
};
struct LimitError : Error {
    using Error::Error;
};
struct OverflowError : Error {
    using Error::Error;
};

// Laurent polynomial in one variable A with exact int64 coefficients.
// Canonical form: zero coefficients are never stored, so map equality is
// value equality.  Arithmetic overflow aborts with OverflowError instead
// of wrapping.
class LaurentPoly {
  public:
    LaurentPoly() = default;  // zero

    static LaurentPoly constant(std::int64_t c);
    static LaurentPoly term(std::int64_t coeff, int exponent);
    static LaurentPoly parse(const std::string& text);

    bool is_zero() const { return terms_.empty(); }
    std::int64_t coeff(int exponent) const;
    int min_exponent() const;  // throws on zero polynomial
    int max_exponent() const;

    LaurentPoly operator+(const LaurentPoly& rhs) const;
    LaurentPoly operator-(const LaurentPoly& rhs) const;
    LaurentPoly operator*(const LaurentPoly& rhs) const;
    LaurentPoly operator-() const;
    LaurentPoly pow(unsigned n) const;

    // Variable inversion A -> A^-1 (exponent negation); a ring involution.
    LaurentPoly mirror() const;

    bool operator==(const LaurentPoly& rhs) const { return terms_ == rhs.terms_; }
    bool operator!=(const LaurentPoly& rhs) const { return !(*this == rhs); }
    bool operator<(const LaurentPoly& rhs) const { return terms_ < rhs.terms_; }

    // Sorted sum, highest exponent first: "-A^16 + A^12 + 2*A^4 - 3".
    std::string to_string() const;
    // Same polynomial written in t = A^-4; fractional exponents appear for
    // links and are rendered as t^(p/4) reduced.
    std::string to_string_t() const;

    const std::map<int, std::int64_t>& terms() const { return terms_; }

  private:
    void set(int exponent, std::int64_t coeff);
    std::map<int, std::int64_t> terms_;
};

}  // namespace topoflow
