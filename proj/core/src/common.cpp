#include "torfib/common.hpp"

#include <array>

namespace torfib {

bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
    if (p >= (1u << 16)) throw ArgumentError("modulus " + std::to_string(p) + " exceeds 2^16");
    if (!is_prime_u32(p)) throw ArgumentError("modulus " + std::to_string(p) + " is not prime");
    init();
}

void PrimeField::init() { magic_ = (std::uint64_t(1) << 32) / p_; }

std::uint32_t PrimeField::pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1 % p_;
    std::uint32_t base = a % p_;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
    if (a % p_ == 0) throw ArgumentError("inverse of zero mod " + std::to_string(p_));
    return pow(a, p_ - 2);
}

FFScalar::FFScalar(std::uint32_t v, std::uint32_t p) : modulus(p) {
    PrimeField f(p);  // validates p
    value = v % p;
}

namespace {
const PrimeField& field_of(const FFScalar& a, const FFScalar& b) {
    if (a.modulus != b.modulus)
        throw DimensionMismatchError("mixed moduli " + std::to_string(a.modulus) + " vs " +
                                     std::to_string(b.modulus));
    static thread_local PrimeField cached(2);
    if (cached.modulus() != a.modulus) cached = PrimeField(a.modulus);
    return cached;
}
}  // namespace

FFScalar FFScalar::operator+(const FFScalar& o) const {
    return {field_of(*this, o).add(value, o.value), modulus};
}
FFScalar FFScalar::operator-(const FFScalar& o) const {
    return {field_of(*this, o).sub(value, o.value), modulus};
}
FFScalar FFScalar::operator*(const FFScalar& o) const {
    return {field_of(*this, o).mul(value, o.value), modulus};
}
FFScalar FFScalar::inverse() const { return {PrimeField(modulus).inv(value), modulus}; }

std::string Digest64::hex() const { return to_hex_u64(h_); }

std::string to_hex_u64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

namespace {
std::uint64_t splitmix_step(std::uint64_t& s) {
    s += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
    // Mix seed and stream index through two scrambler rounds so streams with
    // nearby indices are decorrelated.
    std::uint64_t s = seed;
    std::uint64_t a = splitmix_step(s);
    s ^= stream * 0x9e3779b97f4a7c15ULL;
    std::uint64_t b = splitmix_step(s);
    state_ = a ^ (b + 0x632be59bd9b4e019ULL);
}

std::uint64_t Rng::next_u64() { return splitmix_step(state_); }

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw ArgumentError("Rng::below(0)");
    return next_u64() % n;
}

bool Rng::chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

std::uint32_t Rng::nonzero_mod(std::uint32_t p) {
    return static_cast<std::uint32_t>(1 + below(p - 1));
}

}  // namespace torfib
