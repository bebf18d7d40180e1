#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace knotspec {

/// Exact Laurent polynomial in one variable A with int64 coefficients.
/// Stored densely from the lowest nonzero exponent; no zero coefficient is
/// ever kept at either end, so equality is structural. Overflow throws.
class LaurentPolynomial {
  public:
    LaurentPolynomial() = default;
    /// The constant c.
    explicit LaurentPolynomial(std::int64_t c) { if (c != 0) coeffs_ = {c}; }
    /// c * A^e.
    static LaurentPolynomial monomial(std::int64_t c, int e);
    static LaurentPolynomial from_terms(const std::map<int, std::int64_t>& terms);
    /// The loop value -A^2 - A^-2.
    static LaurentPolynomial loop_value();

    bool is_zero() const { return coeffs_.empty(); }
    int min_exponent() const { return low_; }
    int max_exponent() const { return low_ + static_cast<int>(coeffs_.size()) - 1; }
    std::int64_t coefficient(int e) const;
    /// Nonzero terms, ascending exponent.
    std::map<int, std::int64_t> terms() const;

    LaurentPolynomial operator+(const LaurentPolynomial& o) const;
    LaurentPolynomial operator-(const LaurentPolynomial& o) const;
    LaurentPolynomial operator*(const LaurentPolynomial& o) const;
    LaurentPolynomial operator-() const;
    LaurentPolynomial& operator+=(const LaurentPolynomial& o) { return *this = *this + o; }
    LaurentPolynomial& operator*=(const LaurentPolynomial& o) { return *this = *this * o; }
    LaurentPolynomial scaled(std::int64_t c) const;
    /// Multiply by A^k.
    LaurentPolynomial shifted(int k) const;
    /// Substitute A -> A^-1.
    LaurentPolynomial mirrored() const;
    LaurentPolynomial pow(unsigned k) const;

    /// Evaluate at a real A (for scalar reporting only).
    double evaluate(double a) const;

    bool operator==(const LaurentPolynomial& o) const = default;

    /// Canonical text: "c*A^e" terms with exponents descending, e.g.
    /// "-1*A^16 + 1*A^12 + 1*A^4"; the zero polynomial is "0".
    std::string to_string() const;
    static LaurentPolynomial parse(const std::string& text);

  private:
    void trim();

    int low_ = 0;
    std::vector<std::int64_t> coeffs_;
};

} // namespace knotspec
