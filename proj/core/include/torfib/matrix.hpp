#pragma once

#include <optional>
#include <span>
#include <vector>

#include "torfib/common.hpp"

namespace torfib {

/// Dense row-major matrix over GF(p).  All entries share the matrix's
/// modulus; values are kept reduced.  Instances are cheap value types and
/// immutable in spirit: the mutating accessors exist for construction code.
class FFMatrix {
  public:
    FFMatrix() = default;
    FFMatrix(int rows, int cols, std::uint32_t p)
        : rows_(rows), cols_(cols), field_(p), a_(static_cast<std::size_t>(rows) * cols, 0) {
        if (rows < 0 || cols < 0) throw ArgumentError("negative matrix dimension");
    }

    static FFMatrix identity(int n, std::uint32_t p);
    static FFMatrix from_rows(const std::vector<std::vector<std::uint32_t>>& rows,
                              std::uint32_t p);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::uint32_t modulus() const { return field_.modulus(); }
    const PrimeField& field() const { return field_; }

    std::uint32_t at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    void set(int i, int j, std::uint32_t v) {
        a_[static_cast<std::size_t>(i) * cols_ + j] = v % field_.modulus();
    }
    FFScalar scalar_at(int i, int j) const { return {at(i, j), modulus()}; }

    std::span<const std::uint32_t> row(int i) const {
        return {a_.data() + static_cast<std::size_t>(i) * cols_, static_cast<std::size_t>(cols_)};
    }
    std::span<std::uint32_t> row(int i) {
        return {a_.data() + static_cast<std::size_t>(i) * cols_, static_cast<std::size_t>(cols_)};
    }

    bool is_zero() const;
    bool operator==(const FFMatrix& o) const = default;

    FFMatrix operator+(const FFMatrix& o) const;
    FFMatrix operator-(const FFMatrix& o) const;
    FFMatrix operator*(const FFMatrix& o) const;
    FFMatrix scaled(std::uint32_t c) const;
    FFMatrix transpose() const;

    std::vector<std::uint32_t> apply(std::span<const std::uint32_t> v) const;

    /// Column j as a contiguous vector.
    std::vector<std::uint32_t> column(int j) const;
    void set_column(int j, std::span<const std::uint32_t> v);

    /// Writes `block` with its top-left corner at (i0, j0).
    void paste(int i0, int j0, const FFMatrix& block);

    void absorb(Digest64& d) const;

  private:
    void check_same_shape(const FFMatrix& o) const;
    int rows_ = 0;
    int cols_ = 0;
    PrimeField field_;
    std::vector<std::uint32_t> a_;
};

FFMatrix hstack(const FFMatrix& a, const FFMatrix& b);
FFMatrix vstack(const FFMatrix& a, const FFMatrix& b);

struct RrefResult {
    FFMatrix reduced;         // the reduced row-echelon form
    std::vector<int> pivots;  // pivot column of each nonzero row, strictly increasing
    int rank = 0;
};

/// Gauss-Jordan with deterministic pivoting: first nonzero entry in column
/// order.  Downstream bases are therefore reproducible byte-for-byte.
RrefResult rref(const FFMatrix& m);

int rank_of(const FFMatrix& m);

/// Rows span the right null space {x : m x = 0}; returned in reduced echelon
/// form (canonical for the subspace).
FFMatrix kernel_basis(const FFMatrix& m);

/// One solution of m x = b (free coordinates zero), or nullopt when the
/// system is inconsistent.
std::optional<std::vector<std::uint32_t>> solve(const FFMatrix& m,
                                                std::span<const std::uint32_t> b);

/// Columnwise solve: X with a X = b, or nullopt if any column is
/// inconsistent.  Free coordinates are zero, so the solution is deterministic
/// (and unique when a has full column rank).
std::optional<FFMatrix> solve_columns(const FFMatrix& a, const FFMatrix& b);

}  // namespace torfib
