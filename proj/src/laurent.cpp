#include "knotspec/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "knotspec/errors.hpp"

namespace knotspec {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw ComputationRefused("polynomial coefficient overflow", "overflow");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw ComputationRefused("polynomial coefficient overflow", "overflow");
    return r;
}

} // namespace

LaurentPolynomial LaurentPolynomial::monomial(std::int64_t c, int e)
{
    LaurentPolynomial p;
    if (c != 0) {
        p.low_ = e;
        p.coeffs_ = {c};
    }
    return p;
}

LaurentPolynomial LaurentPolynomial::from_terms(const std::map<int, std::int64_t>& terms)
{
    LaurentPolynomial p;
    for (auto [e, c] : terms) p += monomial(c, e);
    return p;
}

LaurentPolynomial LaurentPolynomial::loop_value()
{
    static const LaurentPolynomial d = monomial(-1, 2) + monomial(-1, -2);
    return d;
}

void LaurentPolynomial::trim()
{
    std::size_t first = 0;
    while (first < coeffs_.size() && coeffs_[first] == 0) ++first;
    if (first == coeffs_.size()) {
        coeffs_.clear();
        low_ = 0;
        return;
    }
    std::size_t last = coeffs_.size();
    while (coeffs_[last - 1] == 0) --last;
    coeffs_ = std::vector<std::int64_t>(coeffs_.begin() + static_cast<long>(first), coeffs_.begin() + static_cast<long>(last));
    low_ += static_cast<int>(first);
}

std::int64_t LaurentPolynomial::coefficient(int e) const
{
    if (coeffs_.empty() || e < low_ || e > max_exponent()) return 0;
    return coeffs_[static_cast<std::size_t>(e - low_)];
}

std::map<int, std::int64_t> LaurentPolynomial::terms() const
{
    std::map<int, std::int64_t> out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) out[low_ + static_cast<int>(i)] = coeffs_[i];
    return out;
}

LaurentPolynomial LaurentPolynomial::operator+(const LaurentPolynomial& o) const
{
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    LaurentPolynomial r;
    r.low_ = std::min(low_, o.low_);
    const int high = std::max(max_exponent(), o.max_exponent());
    r.coeffs_.assign(static_cast<std::size_t>(high - r.low_ + 1), 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i + static_cast<std::size_t>(low_ - r.low_)] = coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) {
        auto& slot = r.coeffs_[i + static_cast<std::size_t>(o.low_ - r.low_)];
        slot = checked_add(slot, o.coeffs_[i]);
    }
    r.trim();
    return r;
}

LaurentPolynomial LaurentPolynomial::operator-() const { return scaled(-1); }

LaurentPolynomial LaurentPolynomial::operator-(const LaurentPolynomial& o) const { return *this + (-o); }

LaurentPolynomial LaurentPolynomial::operator*(const LaurentPolynomial& o) const
{
    if (is_zero() || o.is_zero()) return {};
    LaurentPolynomial r;
    r.low_ = low_ + o.low_;
    r.coeffs_.assign(coeffs_.size() + o.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            r.coeffs_[i + j] = checked_add(r.coeffs_[i + j], checked_mul(coeffs_[i], o.coeffs_[j]));
    }
    r.trim();
    return r;
}

LaurentPolynomial LaurentPolynomial::scaled(std::int64_t c) const
{
    if (c == 0) return {};
    LaurentPolynomial r = *this;
    for (auto& x : r.coeffs_) x = checked_mul(x, c);
    return r;
}

LaurentPolynomial LaurentPolynomial::shifted(int k) const
{
    LaurentPolynomial r = *this;
    if (!r.is_zero()) r.low_ += k;
    return r;
}

LaurentPolynomial LaurentPolynomial::mirrored() const
{
    if (is_zero()) return {};
    LaurentPolynomial r;
    r.low_ = -max_exponent();
    r.coeffs_.assign(coeffs_.rbegin(), coeffs_.rend());
    return r;
}

LaurentPolynomial LaurentPolynomial::pow(unsigned k) const
{
    LaurentPolynomial r(1), base = *this;
    while (k) {
        if (k & 1u) r *= base;
        k >>= 1u;
        if (k) base *= base;
    }
    return r;
}

double LaurentPolynomial::evaluate(double a) const
{
    double sum = 0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        sum += static_cast<double>(coeffs_[i]) * std::pow(a, low_ + static_cast<int>(i));
    return sum;
}

std::string LaurentPolynomial::to_string() const
{
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
        const std::int64_t c = coeffs_[k];
        if (c == 0) continue;
        const int e = low_ + static_cast<int>(k);
        if (first) {
            if (c < 0) out << "-";
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        // Magnitude via unsigned to survive INT64_MIN.
        const std::uint64_t mag = c < 0 ? 0 - static_cast<std::uint64_t>(c) : static_cast<std::uint64_t>(c);
        out << mag << "*A^" << e;
        first = false;
    }
    return out.str();
}

LaurentPolynomial LaurentPolynomial::parse(const std::string& text)
{
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw InputError("empty polynomial text", "malformed_polynomial");
    if (s == "0") return {};
    LaurentPolynomial p;
    std::size_t i = 0;
    auto fail = [&]() { throw InputError("malformed polynomial '" + text + "'", "malformed_polynomial"); };
    auto read_int = [&](bool allow_sign) -> long long {
        std::size_t start = i;
        if (allow_sign && i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
        const std::size_t digits = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == digits) fail();
        return std::stoll(s.substr(start, i - start));
    };
    bool first = true;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            fail();
        }
        const long long c = read_int(false);
        if (s.compare(i, 3, "*A^") != 0) fail();
        i += 3;
        const long long e = read_int(true);
        p += monomial(sign * c, static_cast<int>(e));
        first = false;
    }
    return p;
}

} // namespace knotspec
