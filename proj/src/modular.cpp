#include "modular.hpp"

#include "cycalc/error.hpp"

#include <mutex>

namespace cycalc::modular {

u64 Field::pow(u64 a, u64 e) const {
    u64 r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

u64 Field::inv(u64 a) const {
    if (a % p == 0) fail("modular inverse of zero");
    return pow(a, p - 2);
}

u64 Field::from_int(long long v) const {
    long long m = v % static_cast<long long>(p);
    return m < 0 ? static_cast<u64>(m + static_cast<long long>(p)) : static_cast<u64>(m);
}

static u64 mpz_mod_u64(const Integer& z, u64 p) {
    Integer r;
    Integer pm;
    mpz_import(pm.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &p);
    mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), pm.get_mpz_t());
    u64 out = 0;
    std::size_t cnt = 0;
    mpz_export(&out, &cnt, 1, sizeof(u64), 0, 0, r.get_mpz_t());
    return cnt ? out : 0;
}

u64 Field::from_rational(const Rational& r) const {
    u64 n = mpz_mod_u64(r.get_num(), p);
    u64 d = mpz_mod_u64(r.get_den(), p);
    return mul(n, inv(d));
}

u64 prime(std::size_t index) {
    static std::mutex mu;
    static std::vector<u64> cache;
    std::lock_guard<std::mutex> lock(mu);
    while (cache.size() <= index) {
        Integer z;
        if (cache.empty()) {
            z = 1;
            z <<= 61;
        } else {
            mpz_import(z.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &cache.back());
        }
        mpz_nextprime(z.get_mpz_t(), z.get_mpz_t());
        u64 out = 0;
        std::size_t cnt = 0;
        mpz_export(&out, &cnt, 1, sizeof(u64), 0, 0, z.get_mpz_t());
        cache.push_back(out);
    }
    return cache[index];
}

Reconstructor::Reconstructor(std::size_t slots) : value_(slots, Integer(0)) {}

void Reconstructor::add(u64 p, const std::vector<u64>& residues) {
    if (residues.size() != value_.size()) fail("residue count mismatch");
    Integer pm;
    mpz_import(pm.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &p);
    if (count_ == 0) {
        for (std::size_t i = 0; i < value_.size(); ++i)
            mpz_import(value_[i].get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &residues[i]);
        modulus_ = pm;
    } else {
        // x = v + M * ((r - v) * M^{-1} mod p)
        Integer minv;
        mpz_invert(minv.get_mpz_t(), modulus_.get_mpz_t(), pm.get_mpz_t());
        for (std::size_t i = 0; i < value_.size(); ++i) {
            Integer r;
            mpz_import(r.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &residues[i]);
            Integer t = (r - value_[i]) * minv;
            mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), pm.get_mpz_t());
            value_[i] += modulus_ * t;
        }
        modulus_ *= pm;
    }
    ++count_;
}

std::optional<Rational> rational_reconstruct(const Integer& a, const Integer& m) {
    Integer bound;
    Integer half = m / 2;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    Integer r0 = m, r1 = a, s0 = 0, s1 = 1;
    mpz_fdiv_r(r1.get_mpz_t(), r1.get_mpz_t(), m.get_mpz_t());
    while (r1 > bound) {
        Integer q = r0 / r1;
        Integer r2 = r0 - q * r1;
        Integer s2 = s0 - q * s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if (abs(s1) > bound || s1 == 0) return std::nullopt;
    Integer g;
    mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), s1.get_mpz_t());
    if (g != 1) return std::nullopt;
    Rational out(r1, s1);
    out.canonicalize();
    return out;
}

std::optional<std::vector<Rational>> Reconstructor::stable() {
    std::vector<Rational> cur;
    cur.reserve(value_.size());
    bool ok = true;
    for (const auto& v : value_) {
        auto r = rational_reconstruct(v, modulus_);
        if (!r) {
            ok = false;
            break;
        }
        cur.push_back(*r);
    }
    if (!ok) {
        last_.reset();
        return std::nullopt;
    }
    bool same = last_ && *last_ == cur;
    last_ = cur;
    if (same) return cur;
    return std::nullopt;
}

}  // namespace cycalc::modular
