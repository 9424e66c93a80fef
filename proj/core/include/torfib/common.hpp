#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace torfib {

// ---------------------------------------------------------------------------
// Error taxonomy.  The CLI maps these onto process exit codes: input problems
// (ArgumentError, ParseError, SettingViolation, ...) -> 2, ResourceError -> 3,
// failed checks -> 1.
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid argument values (non-prime modulus, bad bounds, window violations).
struct ArgumentError : Error {
    using Error::Error;
};

/// Shapes or ambient dimensions that do not line up.
struct DimensionMismatchError : Error {
    using Error::Error;
};

/// Inputs that violate the standing fiber-product hypotheses (e.g. a factor
/// equal to its residue field).
struct SettingViolationError : Error {
    using Error::Error;
};

/// Monomial quotient without a power of every variable.
struct InfiniteDimensionError : Error {
    using Error::Error;
};

/// A computation exceeded its configured size budget.
struct ResourceError : Error {
    using Error::Error;
};

/// The candidate second-syzygy decomposition failed its postconditions.
/// `witness` carries a serialized description of the offending instance.
struct SplitError : Error {
    std::string witness;
    SplitError(const std::string& msg, std::string witness_json)
        : Error(msg), witness(std::move(witness_json)) {}
};

/// Internal consistency failure (e.g. the two Tor routes disagree).
struct InternalError : Error {
    using Error::Error;
};

/// DSL diagnostics carry a 1-based source position.
struct ParseError : Error {
    int line;
    int col;
    ParseError(int line_, int col_, const std::string& msg)
        : Error(std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg),
          line(line_),
          col(col_) {}
};

// ---------------------------------------------------------------------------
// GF(p) scalar arithmetic.  Moduli are primes below 2^16 so every product of
// two reduced residues fits a 32-bit word; Barrett reduction keeps row
// operations division-free.
// ---------------------------------------------------------------------------

bool is_prime_u32(std::uint32_t n);

class PrimeField {
  public:
    PrimeField() : p_(2) { init(); }
    explicit PrimeField(std::uint32_t p);

    std::uint32_t modulus() const { return p_; }

    std::uint32_t reduce_u64(std::uint64_t x) const {
        // Valid for x < 2^32; callers keep intermediate values in that range.
        std::uint64_t q = (x * magic_) >> 32;
        std::uint64_t r = x - q * p_;
        if (r >= p_) r -= p_;
        return static_cast<std::uint32_t>(r);
    }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
        return a >= b ? a - b : a + p_ - b;
    }
    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return reduce_u64(static_cast<std::uint64_t>(a) * b);
    }
    /// a + f*b in one reduction; all inputs reduced.
    std::uint32_t mul_add(std::uint32_t a, std::uint32_t f, std::uint32_t b) const {
        return reduce_u64(static_cast<std::uint64_t>(f) * b + a);
    }
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
    std::uint32_t inv(std::uint32_t a) const;

    std::uint32_t from_int(long long v) const {
        long long r = v % static_cast<long long>(p_);
        if (r < 0) r += p_;
        return static_cast<std::uint32_t>(r);
    }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }

  private:
    void init();
    std::uint32_t p_;
    std::uint64_t magic_ = 0;  // floor(2^32 / p)
};

/// One residue tagged with its modulus.  Mixed-modulus arithmetic is rejected
/// here, at construction of the combined value, so matrix kernels never have
/// to re-check.
struct FFScalar {
    std::uint32_t value = 0;
    std::uint32_t modulus = 2;

    FFScalar() = default;
    FFScalar(std::uint32_t v, std::uint32_t p);

    FFScalar operator+(const FFScalar& o) const;
    FFScalar operator-(const FFScalar& o) const;
    FFScalar operator*(const FFScalar& o) const;
    FFScalar inverse() const;
    bool operator==(const FFScalar& o) const = default;
};

// ---------------------------------------------------------------------------
// Deterministic utilities shared by the corpus and the report format.
// ---------------------------------------------------------------------------

/// FNV-1a over an explicit little-endian byte encoding, so digests agree
/// across platforms and implementations.
class Digest64 {
  public:
    void put_u8(std::uint8_t b) {
        h_ ^= b;
        h_ *= 0x100000001b3ULL;
    }
    void put_u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) put_u8(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void put_u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) put_u8(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void put_bytes(std::string_view s) {
        for (char c : s) put_u8(static_cast<std::uint8_t>(c));
    }
    std::uint64_t value() const { return h_; }
    std::string hex() const;

  private:
    std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

/// SplitMix64 stream, keyed by (seed, stream index).  The generator is pinned
/// here rather than taken from <random> so corpora regenerate identically on
/// any platform or implementation.
class Rng {
  public:
    Rng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();
    /// Uniform value in [0, n); n > 0.  Plain rejection-free modulo: the tiny
    /// bias is irrelevant for test-instance sampling and keeps the stream
    /// specification one line long.
    std::uint64_t below(std::uint64_t n);
    /// True with probability num/den.
    bool chance(std::uint64_t num, std::uint64_t den);
    /// Nonzero residue mod p.
    std::uint32_t nonzero_mod(std::uint32_t p);

  private:
    std::uint64_t state_;
};

std::string to_hex_u64(std::uint64_t v);

}  // namespace torfib
