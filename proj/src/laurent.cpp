#include "topoflow/laurent.hpp"

#include <cctype>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace topoflow {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw OverflowError("coefficient overflow in addition");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw OverflowError("coefficient overflow in multiplication");
    return r;
}

}  // namespace

LaurentPoly LaurentPoly::constant(std::int64_t c) { return term(c, 0); }

LaurentPoly LaurentPoly::term(std::int64_t coeff, int exponent) {
    LaurentPoly p;
    if (coeff != 0) p.terms_[exponent] = coeff;
    return p;
}

std::int64_t LaurentPoly::coeff(int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? 0 : it->second;
}

int LaurentPoly::min_exponent() const {
    if (is_zero()) throw Error("zero polynomial has no exponents");
    return terms_.begin()->first;
}

int LaurentPoly::max_exponent() const {
    if (is_zero()) throw Error("zero polynomial has no exponents");
    return terms_.rbegin()->first;
}

void LaurentPoly::set(int exponent, std::int64_t coeff) {
    if (coeff == 0)
        terms_.erase(exponent);
    else
        terms_[exponent] = coeff;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& rhs) const {
    LaurentPoly out = *this;
    for (const auto& [e, c] : rhs.terms_) out.set(e, checked_add(out.coeff(e), c));
    return out;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& rhs) const { return *this + (-rhs); }

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly out;
    for (const auto& [e, c] : terms_) out.terms_[e] = checked_mul(c, -1);
    return out;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& rhs) const {
    LaurentPoly out;
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : rhs.terms_)
            out.set(e1 + e2, checked_add(out.coeff(e1 + e2), checked_mul(c1, c2)));
    return out;
}

LaurentPoly LaurentPoly::pow(unsigned n) const {
    LaurentPoly out = constant(1);
    for (unsigned i = 0; i < n; ++i) out = out * *this;
    return out;
}

LaurentPoly LaurentPoly::mirror() const {
    LaurentPoly out;
    for (const auto& [e, c] : terms_) out.terms_[-e] = c;
    return out;
}

std::string LaurentPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const int e = it->first;
        const std::int64_t c = it->second;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        const std::uint64_t mag = c < 0 ? -static_cast<std::uint64_t>(c) : c;
        if (e == 0) {
            os << mag;
        } else {
            if (mag != 1) os << mag << "*";
            os << "A";
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

std::string LaurentPoly::to_string_t() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.begin(); it != terms_.end(); ++it) {
        // ascending A-exponent = descending t-exponent (t = A^-4)
        const int e = it->first;
        const std::int64_t c = it->second;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        const std::uint64_t mag = c < 0 ? -static_cast<std::uint64_t>(c) : c;
        if (e == 0) {
            os << mag;
            continue;
        }
        if (mag != 1) os << mag << "*";
        os << "t";
        int num = -e, den = 4;
        int g = std::gcd(std::abs(num), den);
        num /= g;
        den /= g;
        if (den == 1) {
            if (num != 1) os << "^" << num;
        } else {
            os << "^(" << num << "/" << den << ")";
        }
    }
    return os.str();
}

LaurentPoly LaurentPoly::parse(const std::string& text) {
    LaurentPoly out;
    size_t i = 0;
    const auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    if (i == text.size()) throw ParseError("empty polynomial text");
    bool first = true;
    while (true) {
        skip_ws();
        if (i == text.size()) break;
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            if (text[i] == '-') sign = -1;
            ++i;
            skip_ws();
        } else if (!first) {
            throw ParseError("expected '+' or '-' between polynomial terms");
        }
        first = false;
        std::int64_t mag = 1;
        bool have_digits = false;
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            have_digits = true;
            mag = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                mag = checked_add(checked_mul(mag, 10), text[i++] - '0');
            skip_ws();
            if (i < text.size() && text[i] == '*') {
                ++i;
                skip_ws();
            }
        }
        int exponent = 0;
        if (i < text.size() && text[i] == 'A') {
            ++i;
            exponent = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                int esign = 1;
                if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
                    if (text[i] == '-') esign = -1;
                    ++i;
                }
                if (i == text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
                    throw ParseError("expected integer exponent after '^'");
                long e = 0;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                    e = e * 10 + (text[i++] - '0');
                exponent = esign * static_cast<int>(e);
            }
        } else if (!have_digits) {
            throw ParseError("expected coefficient or 'A' in polynomial term");
        }
        out.set(exponent, checked_add(out.coeff(exponent), sign * mag));
    }
    return out;
}

}  // namespace topoflow
