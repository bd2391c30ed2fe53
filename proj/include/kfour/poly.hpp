#pragma once

// Univariate polynomials over GF(2^e): just enough for theta bookkeeping
// (powers of irreducibles) and minimal polynomials in module identification.

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "kfour/field.hpp"

namespace kfour {

class Poly {
    Field field_;
    std::vector<uint8_t> c_;  // ascending degree, no trailing zeros

    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

public:
    explicit Poly(Field f) : field_(std::move(f)) {}
    Poly(Field f, std::vector<uint8_t> coeffs) : field_(std::move(f)), c_(std::move(coeffs)) {
        for (uint8_t v : c_)
            if (v >= field_.size()) throw std::invalid_argument("polynomial coefficient out of field range");
        normalize();
    }

    static Poly zero(const Field& f) { return Poly(f); }
    static Poly one(const Field& f) { return Poly(f, {1}); }
    static Poly x(const Field& f) { return Poly(f, {0, 1}); }
    /// x + c
    static Poly x_plus(const Field& f, uint8_t c) { return Poly(f, {c, 1}); }

    const Field& field() const { return field_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    uint8_t coeff(size_t i) const { return i < c_.size() ? c_[i] : 0; }
    uint8_t leading() const { return c_.empty() ? 0 : c_.back(); }
    bool is_monic() const { return leading() == 1; }
    const std::vector<uint8_t>& coeffs() const { return c_; }

    Poly operator+(const Poly& o) const {
        field_.check_same(o.field_);
        std::vector<uint8_t> r(std::max(c_.size(), o.c_.size()), 0);
        for (size_t i = 0; i < r.size(); ++i) r[i] = field_.add(coeff(i), o.coeff(i));
        return Poly(field_, std::move(r));
    }

    Poly operator*(const Poly& o) const {
        field_.check_same(o.field_);
        if (is_zero() || o.is_zero()) return zero(field_);
        std::vector<uint8_t> r(c_.size() + o.c_.size() - 1, 0);
        for (size_t i = 0; i < c_.size(); ++i)
            for (size_t j = 0; j < o.c_.size(); ++j)
                r[i + j] = field_.add(r[i + j], field_.mul(c_[i], o.c_[j]));
        return Poly(field_, std::move(r));
    }

    Poly scaled(uint8_t s) const {
        std::vector<uint8_t> r = c_;
        for (auto& v : r) v = field_.mul(v, s);
        return Poly(field_, std::move(r));
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return scaled(field_.inv(leading()));
    }

    /// Quotient and remainder; divisor must be nonzero.
    std::pair<Poly, Poly> divmod(const Poly& d) const {
        field_.check_same(d.field_);
        if (d.is_zero()) throw std::domain_error("polynomial division by zero");
        Poly rem = *this;
        std::vector<uint8_t> q(degree() >= d.degree() ? degree() - d.degree() + 1 : 0, 0);
        const uint8_t lead_inv = field_.inv(d.leading());
        while (!rem.is_zero() && rem.degree() >= d.degree()) {
            const size_t shift = static_cast<size_t>(rem.degree() - d.degree());
            const uint8_t f = field_.mul(rem.leading(), lead_inv);
            q[shift] = f;
            std::vector<uint8_t> sub(shift, 0);
            for (uint8_t dc : d.c_) sub.push_back(field_.mul(dc, f));
            rem = rem + Poly(field_, std::move(sub));  // + is - in characteristic 2
        }
        return {Poly(field_, std::move(q)), rem};
    }

    bool divides(const Poly& other) const { return other.divmod(*this).second.is_zero(); }

    Poly pow(unsigned m) const {
        Poly r = one(field_);
        Poly b = *this;
        while (m) {
            if (m & 1) r = r * b;
            b = b * b;
            m >>= 1;
        }
        return r;
    }

    bool operator==(const Poly& o) const { return field_ == o.field_ && c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    /// Lexicographic on (degree, coefficients high-to-low); total order for
    /// canonical choices.
    bool operator<(const Poly& o) const {
        if (degree() != o.degree()) return degree() < o.degree();
        for (int i = degree(); i >= 0; --i)
            if (coeff(static_cast<size_t>(i)) != o.coeff(static_cast<size_t>(i)))
                return coeff(static_cast<size_t>(i)) < o.coeff(static_cast<size_t>(i));
        return false;
    }

    /// "x^3+x+1", "x+2", "2*x^2+1", "0". Coefficients print as their integer
    /// bit encoding.
    std::string to_string() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            const uint8_t v = coeff(static_cast<size_t>(i));
            if (!v) continue;
            if (!first) os << "+";
            first = false;
            if (i == 0) {
                os << unsigned(v);
            } else {
                if (v != 1) os << unsigned(v) << "*";
                os << "x";
                if (i > 1) os << "^" << i;
            }
        }
        return os.str();
    }

    static Poly parse(const Field& f, const std::string& text);
};

/// Irreducibility by exhaustive trial division over all monic polynomials of
/// degree 1..deg/2. Fine at desk scale (deg q <= 4 is all the catalogue needs).
inline bool is_irreducible(const Poly& p) {
    const int d = p.degree();
    if (d < 1) return false;
    const Field& f = p.field();
    const unsigned q = f.size();
    for (int dd = 1; dd <= d / 2; ++dd) {
        // enumerate all monic polynomials of degree dd
        std::vector<uint8_t> cs(static_cast<size_t>(dd) + 1, 0);
        cs[static_cast<size_t>(dd)] = 1;
        uint64_t count = 1;
        for (int i = 0; i < dd; ++i) count *= q;
        for (uint64_t idx = 0; idx < count; ++idx) {
            uint64_t t = idx;
            for (int i = 0; i < dd; ++i) {
                cs[static_cast<size_t>(i)] = static_cast<uint8_t>(t % q);
                t /= q;
            }
            Poly div(f, cs);
            if (div.divides(p)) return false;
        }
    }
    return true;
}

inline Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a.divmod(b).second;
        a = b;
        b = r;
    }
    return a.is_zero() ? a : a.monic();
}

inline Poly poly_lcm(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly::zero(a.field());
    Poly g = poly_gcd(a, b);
    return (a * b).divmod(g).first.monic();
}

inline Poly Poly::parse(const Field& f, const std::string& text) {
    std::vector<uint8_t> coeffs;
    auto set = [&](size_t deg, unsigned v) {
        if (v >= f.size()) throw std::invalid_argument("coefficient '" + std::to_string(v) + "' out of field range");
        if (coeffs.size() <= deg) coeffs.resize(deg + 1, 0);
        coeffs[deg] = f.add(coeffs[deg], static_cast<uint8_t>(v));
    };
    size_t pos = 0;
    while (pos < text.size()) {
        size_t next = text.find('+', pos);
        std::string term = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        pos = next == std::string::npos ? text.size() : next + 1;
        if (term.empty()) throw std::invalid_argument("empty term in polynomial '" + text + "'");
        unsigned coef = 1;
        std::string rest = term;
        size_t star = term.find('*');
        if (star != std::string::npos) {
            coef = static_cast<unsigned>(std::stoul(term.substr(0, star)));
            rest = term.substr(star + 1);
        }
        if (rest == "x") {
            set(1, coef);
        } else if (rest.rfind("x^", 0) == 0) {
            set(static_cast<size_t>(std::stoul(rest.substr(2))), coef);
        } else if (star == std::string::npos) {
            set(0, static_cast<unsigned>(std::stoul(rest)));
        } else {
            throw std::invalid_argument("bad polynomial term '" + term + "'");
        }
    }
    return Poly(f, std::move(coeffs));
}

} // namespace kfour
