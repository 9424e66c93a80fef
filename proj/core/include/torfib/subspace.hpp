#pragma once

#include <optional>

#include "torfib/matrix.hpp"

namespace torfib {

/// A subspace of GF(p)^n held by its canonical basis: rows in reduced echelon
/// form with strictly increasing pivots.  Equal subspaces compare equal.
class Subspace {
  public:
    /// Zero subspace of the given ambient dimension.
    Subspace(int ambient_dim, std::uint32_t p)
        : ambient_(ambient_dim), basis_(0, ambient_dim, p) {}

    /// Row span of `vectors` (any spanning set; canonicalized here).
    static Subspace from_span(const FFMatrix& vectors);
    static Subspace full(int ambient_dim, std::uint32_t p);

    int ambient_dim() const { return ambient_; }
    int dim() const { return basis_.rows(); }
    std::uint32_t modulus() const { return basis_.modulus(); }
    const FFMatrix& basis() const { return basis_; }
    const std::vector<int>& pivots() const { return pivots_; }

    bool contains(std::span<const std::uint32_t> v) const;
    bool contains(const Subspace& other) const;

    /// Coefficients of v in the canonical basis, or nullopt if v is outside.
    std::optional<std::vector<std::uint32_t>> coords(std::span<const std::uint32_t> v) const;

    /// Pivot-coordinate extraction without the membership check; only valid
    /// when v is known to lie in the subspace.
    std::vector<std::uint32_t> coords_unchecked(std::span<const std::uint32_t> v) const {
        std::vector<std::uint32_t> c(dim());
        for (int i = 0; i < dim(); ++i) c[i] = v[pivots_[i]];
        return c;
    }

    /// v minus its projection onto this subspace along the pivot coordinates;
    /// the residual has zeros in every pivot position.
    std::vector<std::uint32_t> reduce(std::span<const std::uint32_t> v) const;

    bool operator==(const Subspace& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }

    void absorb(Digest64& d) const {
        d.put_u32(static_cast<std::uint32_t>(ambient_));
        basis_.absorb(d);
    }

  private:
    int ambient_ = 0;
    FFMatrix basis_;
    std::vector<int> pivots_;
};

struct MeetJoin {
    Subspace intersection;
    Subspace sum;
};

/// Intersection and sum in one call; dim U + dim V = dim(U∩V) + dim(U+V).
MeetJoin subspace_meet_join(const Subspace& u, const Subspace& v);
Subspace subspace_meet(const Subspace& u, const Subspace& v);
Subspace subspace_join(const Subspace& u, const Subspace& v);

/// The projection GF(p)^n -> GF(p)^n / W in explicit coordinates: the
/// quotient is coordinatized by the non-pivot columns of W's canonical basis.
class QuotientMap {
  public:
    explicit QuotientMap(Subspace w);

    int source_dim() const { return w_.ambient_dim(); }
    int target_dim() const { return static_cast<int>(free_cols_.size()); }
    const Subspace& denominator() const { return w_; }
    const std::vector<int>& free_cols() const { return free_cols_; }

    std::vector<std::uint32_t> apply(std::span<const std::uint32_t> v) const;
    /// Applies the projection to every column of m.
    FFMatrix apply_to_columns(const FFMatrix& m) const;
    /// The canonical lift of a quotient coordinate vector (zeros at pivots).
    std::vector<std::uint32_t> lift(std::span<const std::uint32_t> q) const;

  private:
    Subspace w_;
    std::vector<int> free_cols_;
};

}  // namespace torfib
