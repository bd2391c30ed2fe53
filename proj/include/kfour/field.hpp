#pragma once

// Exact arithmetic in GF(2^e), e <= 8. Elements are polynomial-basis bit
// vectors stored as integers 0 .. 2^e-1 (bit i = coefficient of x^i).

#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace kfour {

class FieldMismatchError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline int poly2_degree(unsigned p) {
    int d = -1;
    while (p) { ++d; p >>= 1; }
    return d;
}

inline unsigned poly2_mod(unsigned a, unsigned m) {
    const int dm = poly2_degree(m);
    int da = poly2_degree(a);
    while (a && da >= dm) {
        a ^= m << (da - dm);
        da = poly2_degree(a);
    }
    return a;
}

// Irreducibility over GF(2) by exhaustive trial division, feasible for deg <= 8.
inline bool poly2_irreducible(unsigned p) {
    const int d = poly2_degree(p);
    if (d < 1) return false;
    for (unsigned q = 2u; q < (2u << (d / 2)); ++q) {
        if (poly2_degree(q) < 1) continue;
        if (poly2_mod(p, q) == 0) return false;
    }
    return true;
}

} // namespace detail

// One canonical irreducible modulus per degree, so serialized data is
// reproducible bit-for-bit across runs.
inline constexpr std::array<unsigned, 9> kCanonicalModulus = {
    0,
    0b11,        // x + 1
    0b111,       // x^2 + x + 1
    0b1011,      // x^3 + x + 1
    0b10011,     // x^4 + x + 1
    0b100101,    // x^5 + x^2 + 1
    0b1000011,   // x^6 + x + 1
    0b10000011,  // x^7 + x + 1
    0b100011011, // x^8 + x^4 + x^3 + x + 1
};

/// GF(2^e) with a fixed modulus. Cheap to copy; arithmetic is table-driven.
class Field {
    struct Impl {
        unsigned degree;
        unsigned modulus;
        unsigned size;
        std::vector<uint8_t> mul;  // size x size
        std::vector<uint8_t> inv;  // size

        Impl(unsigned e, unsigned mod) : degree(e), modulus(mod), size(1u << e) {
            if (e < 1 || e > 8)
                throw std::invalid_argument("field degree must be in 1..8, got " + std::to_string(e));
            if (detail::poly2_degree(mod) != static_cast<int>(e))
                throw std::invalid_argument("modulus is not monic of the stated degree");
            if (!detail::poly2_irreducible(mod))
                throw std::invalid_argument("modulus is reducible over GF(2)");
            mul.assign(static_cast<size_t>(size) * size, 0);
            for (unsigned a = 0; a < size; ++a)
                for (unsigned b = a; b < size; ++b) {
                    unsigned r = 0, x = a, y = b;
                    while (y) {
                        if (y & 1) r ^= x;
                        x <<= 1;
                        if (x & size) x ^= mod;
                        y >>= 1;
                    }
                    mul[a * size + b] = static_cast<uint8_t>(r);
                    mul[b * size + a] = static_cast<uint8_t>(r);
                }
            inv.assign(size, 0);
            for (unsigned a = 1; a < size; ++a)
                for (unsigned b = 1; b < size; ++b)
                    if (mul[a * size + b] == 1) { inv[a] = static_cast<uint8_t>(b); break; }
        }
    };

    std::shared_ptr<const Impl> impl_;

    explicit Field(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

public:
    explicit Field(unsigned degree) : Field(degree, canonical_modulus(degree)) {}
    Field(unsigned degree, unsigned modulus) : impl_(std::make_shared<Impl>(degree, modulus)) {}

    /// The canonical field of the given degree (shared immutable tables).
    static Field gf(unsigned degree) {
        static std::array<std::shared_ptr<const Impl>, 9> cache;
        static std::mutex mu;
        std::lock_guard<std::mutex> lock(mu);
        if (degree < 1 || degree > 8)
            throw std::invalid_argument("field degree must be in 1..8");
        if (!cache[degree])
            cache[degree] = std::make_shared<Impl>(degree, canonical_modulus(degree));
        return Field(cache[degree]);
    }

    static unsigned canonical_modulus(unsigned degree) {
        if (degree < 1 || degree > 8)
            throw std::invalid_argument("field degree must be in 1..8");
        return kCanonicalModulus[degree];
    }

    unsigned degree() const { return impl_->degree; }
    unsigned modulus() const { return impl_->modulus; }
    unsigned size() const { return impl_->size; }

    uint8_t add(uint8_t a, uint8_t b) const { return a ^ b; }
    uint8_t sub(uint8_t a, uint8_t b) const { return a ^ b; }  // characteristic 2
    uint8_t mul(uint8_t a, uint8_t b) const { return impl_->mul[static_cast<size_t>(a) * impl_->size + b]; }
    uint8_t inv(uint8_t a) const {
        if (a == 0) throw std::domain_error("inverse of zero in GF(2^" + std::to_string(degree()) + ")");
        return impl_->inv[a];
    }
    uint8_t neg(uint8_t a) const { return a; }

    bool operator==(const Field& o) const {
        return impl_ == o.impl_ || (degree() == o.degree() && modulus() == o.modulus());
    }
    bool operator!=(const Field& o) const { return !(*this == o); }

    void check_same(const Field& o) const {
        if (*this != o)
            throw FieldMismatchError("operands belong to different fields: GF(2^" +
                                     std::to_string(degree()) + ") vs GF(2^" + std::to_string(o.degree()) + ")");
    }
};

/// A field element together with its field, for the typed public surface.
class Scalar {
    Field field_;
    uint8_t value_;

public:
    Scalar(Field f, uint8_t v) : field_(std::move(f)), value_(v) {
        if (v >= field_.size()) throw std::invalid_argument("scalar value out of field range");
    }

    const Field& field() const { return field_; }
    uint8_t value() const { return value_; }

    static Scalar zero(const Field& f) { return Scalar(f, 0); }
    static Scalar one(const Field& f) { return Scalar(f, 1); }

    Scalar operator+(const Scalar& o) const {
        field_.check_same(o.field_);
        return Scalar(field_, field_.add(value_, o.value_));
    }
    Scalar operator-(const Scalar& o) const { return *this + o; }
    Scalar operator*(const Scalar& o) const {
        field_.check_same(o.field_);
        return Scalar(field_, field_.mul(value_, o.value_));
    }
    Scalar inverse() const { return Scalar(field_, field_.inv(value_)); }

    bool operator==(const Scalar& o) const { return field_ == o.field_ && value_ == o.value_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    bool is_zero() const { return value_ == 0; }
};

} // namespace kfour
