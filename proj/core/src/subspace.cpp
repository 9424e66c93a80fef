#include "torfib/subspace.hpp"

namespace torfib {

Subspace Subspace::from_span(const FFMatrix& vectors) {
    RrefResult rr = rref(vectors);
    Subspace s(vectors.cols(), vectors.modulus());
    FFMatrix basis(rr.rank, vectors.cols(), vectors.modulus());
    for (int i = 0; i < rr.rank; ++i) {
        auto src = rr.reduced.row(i);
        auto dst = basis.row(i);
        std::copy(src.begin(), src.end(), dst.begin());
    }
    s.basis_ = std::move(basis);
    s.pivots_ = std::move(rr.pivots);
    return s;
}

Subspace Subspace::full(int ambient_dim, std::uint32_t p) {
    return from_span(FFMatrix::identity(ambient_dim, p));
}

std::vector<std::uint32_t> Subspace::reduce(std::span<const std::uint32_t> v) const {
    if (static_cast<int>(v.size()) != ambient_)
        throw DimensionMismatchError("subspace reduce: ambient mismatch");
    std::vector<std::uint32_t> r(v.begin(), v.end());
    const PrimeField& field = basis_.field();
    for (int i = 0; i < basis_.rows(); ++i) {
        std::uint32_t c = r[pivots_[i]];
        if (c == 0) continue;
        std::uint32_t nc = field.neg(c);
        auto row = basis_.row(i);
        for (int j = pivots_[i]; j < ambient_; ++j)
            r[j] = field.mul_add(r[j], nc, row[j]);
    }
    return r;
}

bool Subspace::contains(std::span<const std::uint32_t> v) const {
    auto r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](std::uint32_t x) { return x == 0; });
}

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw DimensionMismatchError("subspace ambient mismatch");
    for (int i = 0; i < other.dim(); ++i)
        if (!contains(other.basis_.row(i))) return false;
    return true;
}

std::optional<std::vector<std::uint32_t>> Subspace::coords(
    std::span<const std::uint32_t> v) const {
    std::vector<std::uint32_t> c(dim());
    for (int i = 0; i < dim(); ++i) c[i] = v[pivots_[i]];
    // Echelon pivots are 1 with zeros above/below, so the pivot entries are
    // the coefficients; verify membership by reducing.
    if (!contains(v)) return std::nullopt;
    return c;
}

MeetJoin subspace_meet_join(const Subspace& u, const Subspace& v) {
    return {subspace_meet(u, v), subspace_join(u, v)};
}

Subspace subspace_join(const Subspace& u, const Subspace& v) {
    if (u.ambient_dim() != v.ambient_dim() || u.modulus() != v.modulus())
        throw DimensionMismatchError("subspace join: ambient/modulus mismatch");
    return Subspace::from_span(vstack(u.basis(), v.basis()));
}

Subspace subspace_meet(const Subspace& u, const Subspace& v) {
    if (u.ambient_dim() != v.ambient_dim() || u.modulus() != v.modulus())
        throw DimensionMismatchError("subspace meet: ambient/modulus mismatch");
    const int n = u.ambient_dim();
    const std::uint32_t p = u.modulus();
    // x in U∩V  <=>  x = a^T U = b^T V; solve [U^T | -V^T] (a;b) = 0.
    FFMatrix sys(n, u.dim() + v.dim(), p);
    sys.paste(0, 0, u.basis().transpose());
    sys.paste(0, u.dim(), v.basis().transpose().scaled(p - 1));
    FFMatrix ker = kernel_basis(sys);
    FFMatrix vecs(ker.rows(), n, p);
    const PrimeField& field = u.basis().field();
    for (int i = 0; i < ker.rows(); ++i) {
        for (int t = 0; t < u.dim(); ++t) {
            std::uint32_t a = ker.at(i, t);
            if (a == 0) continue;
            auto row = u.basis().row(t);
            auto dst = vecs.row(i);
            for (int j = 0; j < n; ++j) dst[j] = field.mul_add(dst[j], a, row[j]);
        }
    }
    return Subspace::from_span(vecs);
}

QuotientMap::QuotientMap(Subspace w) : w_(std::move(w)) {
    std::vector<int> is_pivot(w_.ambient_dim(), 0);
    for (int c : w_.pivots()) is_pivot[c] = 1;
    for (int j = 0; j < w_.ambient_dim(); ++j)
        if (!is_pivot[j]) free_cols_.push_back(j);
}

std::vector<std::uint32_t> QuotientMap::apply(std::span<const std::uint32_t> v) const {
    auto r = w_.reduce(v);
    std::vector<std::uint32_t> out(free_cols_.size());
    for (std::size_t i = 0; i < free_cols_.size(); ++i) out[i] = r[free_cols_[i]];
    return out;
}

FFMatrix QuotientMap::apply_to_columns(const FFMatrix& m) const {
    if (m.rows() != source_dim()) throw DimensionMismatchError("quotient map shape mismatch");
    FFMatrix out(target_dim(), m.cols(), m.modulus());
    for (int j = 0; j < m.cols(); ++j) {
        auto q = apply(m.column(j));
        out.set_column(j, q);
    }
    return out;
}

std::vector<std::uint32_t> QuotientMap::lift(std::span<const std::uint32_t> q) const {
    if (static_cast<int>(q.size()) != target_dim())
        throw DimensionMismatchError("quotient lift shape mismatch");
    std::vector<std::uint32_t> v(source_dim(), 0);
    for (std::size_t i = 0; i < free_cols_.size(); ++i) v[free_cols_[i]] = q[i];
    return v;
}

}  // namespace torfib
