#pragma once

#include "cycalc/ratqa.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace cycalc::modular {

using u64 = std::uint64_t;

struct Field {
    u64 p;

    u64 add(u64 a, u64 b) const {
        u64 s = a + b;
        return s >= p ? s - p : s;
    }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
    u64 neg(u64 a) const { return a == 0 ? 0 : p - a; }
    u64 mul(u64 a, u64 b) const { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p); }
    u64 pow(u64 a, u64 e) const;
    u64 inv(u64 a) const;  // throws on zero
    u64 from_int(long long v) const;
    u64 from_rational(const Rational& r) const;  // throws when p divides the denominator
};

// Primes in (2^61, 2^62), in increasing order.
u64 prime(std::size_t index);

// Incremental CRT with rational reconstruction over a fixed number of slots.
class Reconstructor {
public:
    explicit Reconstructor(std::size_t slots);
    void add(u64 p, const std::vector<u64>& residues);
    std::size_t primes_used() const { return count_; }
    // Reconstruction succeeds when every slot is recovered and unchanged since the previous prime.
    std::optional<std::vector<Rational>> stable() ;

private:
    std::vector<Integer> value_;
    Integer modulus_ = 1;
    std::size_t count_ = 0;
    std::optional<std::vector<Rational>> last_;
};

std::optional<Rational> rational_reconstruct(const Integer& a, const Integer& m);

// Runs f(field) -> residues for successive primes until reconstruction stabilizes.
template <class F>
std::vector<Rational> solve_multimodular(std::size_t slots, F&& f, std::size_t max_primes = 200) {
    Reconstructor rec(slots);
    for (std::size_t i = 0; i < max_primes; ++i) {
        Field fd{prime(i)};
        rec.add(fd.p, f(fd));
        if (i >= 1) {
            if (auto r = rec.stable()) return *r;
        }
    }
    throw std::runtime_error("rational reconstruction did not stabilize");
}

}  // namespace cycalc::modular
