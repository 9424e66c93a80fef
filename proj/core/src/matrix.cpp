#include "torfib/matrix.hpp"

#include <algorithm>

namespace torfib {

FFMatrix FFMatrix::identity(int n, std::uint32_t p) {
    FFMatrix m(n, n, p);
    for (int i = 0; i < n; ++i) m.set(i, i, 1 % p);
    return m;
}

FFMatrix FFMatrix::from_rows(const std::vector<std::vector<std::uint32_t>>& rows,
                             std::uint32_t p) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    FFMatrix m(r, c, p);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c)
            throw DimensionMismatchError("ragged row list");
        for (int j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

bool FFMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](std::uint32_t v) { return v == 0; });
}

void FFMatrix::check_same_shape(const FFMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || modulus() != o.modulus())
        throw DimensionMismatchError("matrix shape/modulus mismatch");
}

FFMatrix FFMatrix::operator+(const FFMatrix& o) const {
    check_same_shape(o);
    FFMatrix r = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = field_.add(a_[k], o.a_[k]);
    return r;
}

FFMatrix FFMatrix::operator-(const FFMatrix& o) const {
    check_same_shape(o);
    FFMatrix r = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = field_.sub(a_[k], o.a_[k]);
    return r;
}

FFMatrix FFMatrix::operator*(const FFMatrix& o) const {
    if (cols_ != o.rows_ || modulus() != o.modulus())
        throw DimensionMismatchError("matrix product shape/modulus mismatch");
    FFMatrix r(rows_, o.cols_, modulus());
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < cols_; ++k) {
            std::uint32_t f = at(i, k);
            if (f == 0) continue;
            const std::uint32_t* src = o.a_.data() + static_cast<std::size_t>(k) * o.cols_;
            std::uint32_t* dst = r.a_.data() + static_cast<std::size_t>(i) * o.cols_;
            for (int j = 0; j < o.cols_; ++j)
                dst[j] = field_.mul_add(dst[j], f, src[j]);
        }
    }
    return r;
}

FFMatrix FFMatrix::scaled(std::uint32_t c) const {
    FFMatrix r = *this;
    c %= modulus();
    for (auto& v : r.a_) v = field_.mul(v, c);
    return r;
}

FFMatrix FFMatrix::transpose() const {
    FFMatrix r(cols_, rows_, modulus());
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
    return r;
}

std::vector<std::uint32_t> FFMatrix::apply(std::span<const std::uint32_t> v) const {
    if (static_cast<int>(v.size()) != cols_)
        throw DimensionMismatchError("matrix-vector shape mismatch");
    std::vector<std::uint32_t> out(rows_, 0);
    // cols * (p-1)^2 stays below 2^64 for p < 2^16 and cols < 2^32, so one
    // u64 accumulator per row needs a single final reduction.
    for (int i = 0; i < rows_; ++i) {
        std::uint64_t acc = 0;
        const std::uint32_t* r = a_.data() + static_cast<std::size_t>(i) * cols_;
        for (int j = 0; j < cols_; ++j) acc += static_cast<std::uint64_t>(r[j]) * v[j];
        out[i] = static_cast<std::uint32_t>(acc % field_.modulus());
    }
    return out;
}

std::vector<std::uint32_t> FFMatrix::column(int j) const {
    std::vector<std::uint32_t> out(rows_);
    for (int i = 0; i < rows_; ++i) out[i] = at(i, j);
    return out;
}

void FFMatrix::set_column(int j, std::span<const std::uint32_t> v) {
    if (static_cast<int>(v.size()) != rows_) throw DimensionMismatchError("column length mismatch");
    for (int i = 0; i < rows_; ++i) set(i, j, v[i]);
}

void FFMatrix::paste(int i0, int j0, const FFMatrix& block) {
    if (block.modulus() != modulus()) throw DimensionMismatchError("paste modulus mismatch");
    if (i0 + block.rows() > rows_ || j0 + block.cols() > cols_)
        throw DimensionMismatchError("paste out of range");
    for (int i = 0; i < block.rows(); ++i) {
        const std::uint32_t* src = block.a_.data() + static_cast<std::size_t>(i) * block.cols_;
        std::uint32_t* dst = a_.data() + static_cast<std::size_t>(i0 + i) * cols_ + j0;
        std::copy(src, src + block.cols_, dst);
    }
}

void FFMatrix::absorb(Digest64& d) const {
    d.put_u32(static_cast<std::uint32_t>(rows_));
    d.put_u32(static_cast<std::uint32_t>(cols_));
    d.put_u32(modulus());
    for (std::uint32_t v : a_) d.put_u32(v);
}

FFMatrix hstack(const FFMatrix& a, const FFMatrix& b) {
    if (a.rows() != b.rows() || a.modulus() != b.modulus())
        throw DimensionMismatchError("hstack shape/modulus mismatch");
    FFMatrix r(a.rows(), a.cols() + b.cols(), a.modulus());
    r.paste(0, 0, a);
    r.paste(0, a.cols(), b);
    return r;
}

FFMatrix vstack(const FFMatrix& a, const FFMatrix& b) {
    if (a.cols() != b.cols() || a.modulus() != b.modulus())
        throw DimensionMismatchError("vstack shape/modulus mismatch");
    FFMatrix r(a.rows() + b.rows(), a.cols(), a.modulus());
    r.paste(0, 0, a);
    r.paste(a.rows(), 0, b);
    return r;
}

namespace {

// dst += f * src (mod p), the elimination hot loop.
inline void axpy(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t f, int n,
                 const PrimeField& field) {
    for (int k = 0; k < n; ++k)
        dst[k] = field.reduce_u64(static_cast<std::uint64_t>(f) * src[k] + dst[k]);
}

}  // namespace

RrefResult rref(const FFMatrix& m) {
    RrefResult res;
    res.reduced = m;
    FFMatrix& a = res.reduced;
    const PrimeField& field = m.field();
    int r = 0;
    for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
        int pivot = -1;
        for (int i = r; i < a.rows(); ++i) {
            if (a.at(i, c) != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) continue;
        if (pivot != r) {
            auto ra = a.row(r), rb = a.row(pivot);
            std::swap_ranges(ra.begin(), ra.end(), rb.begin());
        }
        std::uint32_t inv = field.inv(a.at(r, c));
        if (inv != 1) {
            auto row = a.row(r);
            for (auto& v : row) v = field.mul(v, inv);
        }
        for (int i = 0; i < a.rows(); ++i) {
            if (i == r) continue;
            std::uint32_t f = a.at(i, c);
            if (f == 0) continue;
            axpy(a.row(i).data() + c, a.row(r).data() + c, field.neg(f), a.cols() - c, field);
        }
        res.pivots.push_back(c);
        ++r;
    }
    res.rank = r;
    return res;
}

int rank_of(const FFMatrix& m) { return rref(m).rank; }

FFMatrix kernel_basis(const FFMatrix& m) {
    RrefResult rr = rref(m);
    std::vector<int> is_pivot(m.cols(), 0);
    for (int c : rr.pivots) is_pivot[c] = 1;
    int nfree = m.cols() - rr.rank;
    FFMatrix basis(nfree, m.cols(), m.modulus());
    const PrimeField& field = m.field();
    int out = 0;
    for (int f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        basis.set(out, f, 1);
        for (int r = 0; r < rr.rank; ++r)
            basis.set(out, rr.pivots[r], field.neg(rr.reduced.at(r, f)));
        ++out;
    }
    // Canonicalize so equal kernels have equal bases.
    return rref(basis).reduced;
}

std::optional<std::vector<std::uint32_t>> solve(const FFMatrix& m,
                                                std::span<const std::uint32_t> b) {
    if (static_cast<int>(b.size()) != m.rows()) throw DimensionMismatchError("solve rhs length");
    FFMatrix aug(m.rows(), m.cols() + 1, m.modulus());
    aug.paste(0, 0, m);
    for (int i = 0; i < m.rows(); ++i) aug.set(i, m.cols(), b[i]);
    RrefResult rr = rref(aug);
    std::vector<std::uint32_t> x(m.cols(), 0);
    for (int r = 0; r < rr.rank; ++r) {
        if (rr.pivots[r] == m.cols()) return std::nullopt;  // pivot in the rhs column
        x[rr.pivots[r]] = rr.reduced.at(r, m.cols());
    }
    return x;
}

std::optional<FFMatrix> solve_columns(const FFMatrix& a, const FFMatrix& b) {
    if (a.rows() != b.rows() || a.modulus() != b.modulus())
        throw DimensionMismatchError("solve_columns shape/modulus mismatch");
    RrefResult rr = rref(hstack(a, b));
    FFMatrix x(a.cols(), b.cols(), a.modulus());
    for (int r = 0; r < rr.rank; ++r) {
        if (rr.pivots[r] >= a.cols()) return std::nullopt;
        for (int j = 0; j < b.cols(); ++j)
            x.set(rr.pivots[r], j, rr.reduced.at(r, a.cols() + j));
    }
    return x;
}

}  // namespace torfib
