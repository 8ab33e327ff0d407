#pragma once

// Prime finite fields F_q. The modulus rides along with each element; mixing
// moduli is a programming error and is rejected. q is restricted to primes
// <= 2^15 so products fit comfortably in 64 bits.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hitchin {

constexpr uint32_t kMaxPrime = 1u << 15;

inline bool is_prime_u32(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

inline void require_prime_modulus(uint32_t q) {
    if (q > kMaxPrime || !is_prime_u32(q))
        throw std::invalid_argument("modulus must be a prime <= 2^15, got " + std::to_string(q));
}

class Fq {
  public:
    Fq(int64_t value, uint32_t q) : q_(q) {
        int64_t r = value % static_cast<int64_t>(q);
        if (r < 0) r += q;
        v_ = static_cast<uint32_t>(r);
    }

    uint32_t value() const { return v_; }
    uint32_t modulus() const { return q_; }
    bool is_zero() const { return v_ == 0; }

    Fq operator+(const Fq& o) const { return raw((v_ + o.checked(q_)) % q_, q_); }
    Fq operator-(const Fq& o) const { return raw((v_ + q_ - o.checked(q_)) % q_, q_); }
    Fq operator-() const { return raw(v_ == 0 ? 0 : q_ - v_, q_); }
    Fq operator*(const Fq& o) const {
        return raw(static_cast<uint32_t>(static_cast<uint64_t>(v_) * o.checked(q_) % q_), q_);
    }
    Fq operator/(const Fq& o) const { return *this * o.inverse(); }
    Fq& operator+=(const Fq& o) { return *this = *this + o; }
    Fq& operator-=(const Fq& o) { return *this = *this - o; }
    Fq& operator*=(const Fq& o) { return *this = *this * o; }

    bool operator==(const Fq& o) const { return v_ == o.v_ && q_ == o.q_; }
    bool operator!=(const Fq& o) const { return !(*this == o); }

    Fq inverse() const {
        if (v_ == 0) throw std::domain_error("inverse of zero in F_q");
        // extended Euclid on (v, q)
        int64_t a = v_, b = q_, x0 = 1, x1 = 0;
        while (b) {
            int64_t t = a / b;
            a -= t * b;
            std::swap(a, b);
            x0 -= t * x1;
            std::swap(x0, x1);
        }
        return Fq(x0, q_);
    }

    Fq pow(uint64_t e) const {
        Fq r = one_like(*this);
        Fq b = *this;
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    static Fq zero(uint32_t q) { return raw(0, q); }
    static Fq one(uint32_t q) { return raw(1 % q, q); }
    static Fq zero_like(const Fq& s) { return raw(0, s.q_); }
    static Fq one_like(const Fq& s) { return raw(1 % s.q_, s.q_); }

  private:
    static Fq raw(uint32_t v, uint32_t q) {
        Fq e;
        e.v_ = v;
        e.q_ = q;
        return e;
    }
    uint32_t checked(uint32_t q) const {
        if (q_ != q) throw std::logic_error("mixed moduli in F_q arithmetic");
        return v_;
    }
    Fq() : v_(0), q_(0) {}

    uint32_t v_;
    uint32_t q_;
};

}  // namespace hitchin
