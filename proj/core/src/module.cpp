#include "torfib/module.hpp"

#include <algorithm>

namespace torfib {

namespace {

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
    return a.get() == b.get() || a->content_hash() == b->content_hash();
}

void require_same_algebra(const AlgebraPtr& a, const AlgebraPtr& b, const char* where) {
    if (!same_algebra(a, b))
        throw ArgumentError(std::string(where) + ": modules live over different algebras");
}

// A (x) I_n, the action of a free or tensor factor.
FFMatrix kron_with_identity(const FFMatrix& a, int n) {
    FFMatrix out(a.rows() * n, a.cols() * n, a.modulus());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            std::uint32_t v = a.at(i, j);
            if (v == 0) continue;
            for (int t = 0; t < n; ++t) out.set(i * n + t, j * n + t, v);
        }
    return out;
}

FFMatrix block_diag(const FFMatrix& a, int copies) {
    FFMatrix out(a.rows() * copies, a.cols() * copies, a.modulus());
    for (int t = 0; t < copies; ++t) out.paste(t * a.rows(), t * a.cols(), a);
    return out;
}

}  // namespace

FDModule::FDModule(AlgebraPtr algebra, std::vector<FFMatrix> action)
    : algebra_(std::move(algebra)), dim_(0), action_(std::move(action)) {
    const int d = algebra_->dim();
    if (static_cast<int>(action_.size()) != d)
        throw ArgumentError("module needs one action matrix per algebra basis element");
    dim_ = action_.empty() ? 0 : action_[0].rows();
    for (const FFMatrix& m : action_)
        if (m.rows() != dim_ || m.cols() != dim_ || m.modulus() != algebra_->modulus())
            throw DimensionMismatchError("action matrix shape/modulus mismatch");
    if (action_[0] != FFMatrix::identity(dim_, algebra_->modulus()))
        throw ArgumentError("unit basis element must act as the identity");
}

FDModule FDModule::zero(AlgebraPtr algebra) { return free_module(std::move(algebra), 0); }

FDModule FDModule::free_module(AlgebraPtr algebra, int rank) {
    if (rank < 0) throw ArgumentError("negative free rank");
    std::vector<FFMatrix> action;
    action.reserve(algebra->dim());
    for (int i = 0; i < algebra->dim(); ++i)
        action.push_back(block_diag(algebra->left_mult(i), rank));
    return FDModule(std::move(algebra), std::move(action));
}

FDModule FDModule::residue(AlgebraPtr algebra) {
    std::vector<FFMatrix> action;
    const std::uint32_t p = algebra->modulus();
    for (int i = 0; i < algebra->dim(); ++i) {
        FFMatrix m(1, 1, p);
        if (i == 0) m.set(0, 0, 1);
        action.push_back(std::move(m));
    }
    return FDModule(std::move(algebra), std::move(action));
}

FDModule FDModule::maximal_ideal(AlgebraPtr algebra) {
    const int d = algebra->dim();
    const std::uint32_t p = algebra->modulus();
    std::vector<FFMatrix> action;
    for (int i = 0; i < d; ++i) {
        FFMatrix m(d - 1, d - 1, p);
        for (int r = 1; r < d; ++r)
            for (int c = 1; c < d; ++c) m.set(r - 1, c - 1, algebra->left_mult(i).at(r, c));
        action.push_back(std::move(m));
    }
    return FDModule(std::move(algebra), std::move(action));
}

FFMatrix FDModule::act_elem(std::span<const std::uint32_t> elem) const {
    if (static_cast<int>(elem.size()) != algebra_->dim())
        throw DimensionMismatchError("element length mismatch");
    FFMatrix out(dim_, dim_, algebra_->modulus());
    for (int i = 0; i < algebra_->dim(); ++i)
        if (elem[i] != 0) out = out + action_[i].scaled(elem[i]);
    return out;
}

Subspace FDModule::radical_subspace() const {
    const int d = algebra_->dim();
    FFMatrix span((d - 1) * dim_, dim_, algebra_->modulus());
    for (int a = 1; a < d; ++a)
        for (int j = 0; j < dim_; ++j) {
            auto col = action_[a].column(j);
            for (int r = 0; r < dim_; ++r) span.set((a - 1) * dim_ + j, r, col[r]);
        }
    return Subspace::from_span(span);
}

void FDModule::validate() const {
    const int d = algebra_->dim();
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            FFMatrix lhs = action_[i] * action_[j];
            FFMatrix rhs(dim_, dim_, algebra_->modulus());
            for (int l = 0; l < d; ++l) {
                std::uint32_t c = algebra_->structure_constant(i, j, l);
                if (c != 0) rhs = rhs + action_[l].scaled(c);
            }
            if (lhs != rhs)
                throw ArgumentError("action matrices do not realize the structure constants");
            if (action_[i] * action_[j] != action_[j] * action_[i])
                throw ArgumentError("action matrices do not commute");
        }
    }
}

std::uint64_t FDModule::content_hash() const {
    Digest64 d;
    absorb(d);
    return d.value();
}

void FDModule::absorb(Digest64& d) const {
    d.put_bytes("mod");
    d.put_u64(algebra_->content_hash());
    d.put_u32(static_cast<std::uint32_t>(dim_));
    for (const FFMatrix& m : action_) m.absorb(d);
}

ModuleMap::ModuleMap(FDModule src, FDModule tgt, FFMatrix mat)
    : source(std::move(src)), target(std::move(tgt)), matrix(std::move(mat)) {
    require_same_algebra(source.algebra(), target.algebra(), "ModuleMap");
    if (matrix.rows() != target.dim() || matrix.cols() != source.dim() ||
        matrix.modulus() != source.algebra()->modulus())
        throw DimensionMismatchError("module map matrix shape mismatch");
    validate();
}

void ModuleMap::validate() const {
    for (int g : source.algebra()->generator_indices())
        if (matrix * source.action(g) != target.action(g) * matrix)
            throw ArgumentError("matrix does not intertwine the module actions");
}

AlgebraMatrix::AlgebraMatrix(AlgebraPtr algebra, int rows, int cols)
    : algebra_(std::move(algebra)), rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw ArgumentError("negative presentation shape");
    entries_.assign(static_cast<std::size_t>(rows) * cols,
                    std::vector<std::uint32_t>(algebra_->dim(), 0));
}

void AlgebraMatrix::set_entry(int i, int j, std::vector<std::uint32_t> e) {
    if (static_cast<int>(e.size()) != algebra_->dim())
        throw DimensionMismatchError("entry length does not match algebra dimension");
    const std::uint32_t p = algebra_->modulus();
    for (auto& v : e) v %= p;
    entries_[static_cast<std::size_t>(i) * cols_ + j] = std::move(e);
}

FFMatrix AlgebraMatrix::expand() const {
    const int d = algebra_->dim();
    FFMatrix out(rows_ * d, cols_ * d, algebra_->modulus());
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            const auto& e = entry(i, j);
            if (std::all_of(e.begin(), e.end(), [](std::uint32_t v) { return v == 0; }))
                continue;
            out.paste(i * d, j * d, algebra_->mult_operator(e));
        }
    return out;
}

FFMatrix AlgebraMatrix::expand_action(const FDModule& N) const {
    require_same_algebra(algebra_, N.algebra(), "expand_action");
    const int n = N.dim();
    FFMatrix out(rows_ * n, cols_ * n, algebra_->modulus());
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            const auto& e = entry(i, j);
            if (std::all_of(e.begin(), e.end(), [](std::uint32_t v) { return v == 0; }))
                continue;
            out.paste(i * n, j * n, N.act_elem(e));
        }
    return out;
}

bool AlgebraMatrix::entries_in_radical() const {
    for (const auto& e : entries_)
        if (e[0] != 0) return false;  // adapted basis: unit coefficient first
    return true;
}

AlgebraMatrix AlgebraMatrix::operator*(const AlgebraMatrix& o) const {
    require_same_algebra(algebra_, o.algebra_, "AlgebraMatrix product");
    if (cols_ != o.rows_) throw DimensionMismatchError("algebra matrix product shape");
    AlgebraMatrix out(algebra_, rows_, o.cols_);
    const PrimeField& field = algebra_->field();
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < o.cols_; ++j) {
            std::vector<std::uint32_t> acc(algebra_->dim(), 0);
            for (int k = 0; k < cols_; ++k) {
                auto prod = algebra_->multiply(entry(i, k), o.entry(k, j));
                for (int l = 0; l < algebra_->dim(); ++l) acc[l] = field.add(acc[l], prod[l]);
            }
            out.set_entry(i, j, std::move(acc));
        }
    return out;
}

bool AlgebraMatrix::is_zero() const {
    for (const auto& e : entries_)
        for (std::uint32_t v : e)
            if (v != 0) return false;
    return true;
}

void AlgebraMatrix::absorb(Digest64& d) const {
    d.put_bytes("amat");
    d.put_u32(static_cast<std::uint32_t>(rows_));
    d.put_u32(static_cast<std::uint32_t>(cols_));
    for (const auto& e : entries_)
        for (std::uint32_t v : e) d.put_u32(v);
}

FDModule quotient_module(const FDModule& M, const Subspace& W) {
    if (W.ambient_dim() != M.dim()) throw DimensionMismatchError("quotient ambient mismatch");
    const AlgebraPtr& A = M.algebra();
    // Invariance.
    for (int i = 1; i < A->dim(); ++i)
        for (int r = 0; r < W.dim(); ++r)
            if (!W.contains(M.action(i).apply(W.basis().row(r))))
                throw ArgumentError("subspace is not action-invariant");
    QuotientMap q(W);
    std::vector<FFMatrix> action;
    for (int i = 0; i < A->dim(); ++i) {
        FFMatrix cols(M.dim(), q.target_dim(), A->modulus());
        for (int t = 0; t < q.target_dim(); ++t)
            cols.set_column(t, M.action(i).column(q.free_cols()[t]));
        action.push_back(q.apply_to_columns(cols));
    }
    return FDModule(A, std::move(action));
}

FDModule submodule(const FDModule& M, const Subspace& W) {
    if (W.ambient_dim() != M.dim()) throw DimensionMismatchError("submodule ambient mismatch");
    const AlgebraPtr& A = M.algebra();
    std::vector<FFMatrix> action;
    for (int i = 0; i < A->dim(); ++i) {
        FFMatrix act(W.dim(), W.dim(), A->modulus());
        for (int r = 0; r < W.dim(); ++r) {
            auto img = M.action(i).apply(W.basis().row(r));
            auto c = W.coords(img);
            if (!c) throw ArgumentError("subspace is not action-invariant");
            act.set_column(r, *c);
        }
        action.push_back(std::move(act));
    }
    return FDModule(A, std::move(action));
}

FDModule module_from_presentation(const AlgebraMatrix& P) {
    FDModule free = FDModule::free_module(P.algebra(), P.rows());
    Subspace image = Subspace::from_span(P.expand().transpose());
    return quotient_module(free, image);
}

FDModule restrict_scalars(const AlgebraSurjection& phi, const FDModule& Y) {
    require_same_algebra(phi.target(), Y.algebra(), "restrict_scalars");
    std::vector<FFMatrix> action;
    for (int i = 0; i < phi.source()->dim(); ++i)
        action.push_back(Y.act_elem(phi.matrix().column(i)));
    return FDModule(phi.source(), std::move(action));
}

FDModule direct_sum(const FDModule& M, const FDModule& N) {
    require_same_algebra(M.algebra(), N.algebra(), "direct_sum");
    std::vector<FFMatrix> action;
    for (int i = 0; i < M.algebra()->dim(); ++i) {
        FFMatrix m(M.dim() + N.dim(), M.dim() + N.dim(), M.algebra()->modulus());
        m.paste(0, 0, M.action(i));
        m.paste(M.dim(), M.dim(), N.action(i));
        action.push_back(std::move(m));
    }
    return FDModule(M.algebra(), std::move(action));
}

FDModule tensor(const FDModule& M, const FDModule& N) {
    require_same_algebra(M.algebra(), N.algebra(), "tensor");
    const AlgebraPtr& A = M.algebra();
    const int nm = M.dim(), nn = N.dim();
    const std::uint32_t p = A->modulus();
    const PrimeField& field = A->field();
    const auto& gens = A->generator_indices();

    // Relations (a m) (x) n - m (x) (a n) for algebra generators a; products
    // of generators follow by linearity, so the span is the full relation
    // space.
    FFMatrix rel(static_cast<int>(gens.size()) * nm * nn, nm * nn, p);
    int row = 0;
    for (int g : gens) {
        const FFMatrix& am = M.action(g);
        const FFMatrix& an = N.action(g);
        for (int s = 0; s < nm; ++s)
            for (int t = 0; t < nn; ++t) {
                for (int s2 = 0; s2 < nm; ++s2) {
                    std::uint32_t v = am.at(s2, s);
                    if (v != 0) rel.set(row, s2 * nn + t, field.add(rel.at(row, s2 * nn + t), v));
                }
                for (int t2 = 0; t2 < nn; ++t2) {
                    std::uint32_t v = an.at(t2, t);
                    if (v != 0)
                        rel.set(row, s * nn + t2, field.sub(rel.at(row, s * nn + t2), v));
                }
                ++row;
            }
    }

    std::vector<FFMatrix> big_action;
    for (int i = 0; i < A->dim(); ++i) big_action.push_back(kron_with_identity(M.action(i), nn));
    FDModule plain(A, std::move(big_action));
    return quotient_module(plain, Subspace::from_span(rel));
}

MinimalCover minimal_generators(const FDModule& M) {
    const AlgebraPtr& A = M.algebra();
    const int d = A->dim();
    QuotientMap q(M.radical_subspace());
    MinimalCover out;
    out.count = q.target_dim();
    FFMatrix cover(M.dim(), out.count * d, A->modulus());
    for (int t = 0; t < out.count; ++t) {
        std::vector<std::uint32_t> g(M.dim(), 0);
        g[q.free_cols()[t]] = 1;
        out.generators.push_back(g);
        for (int l = 0; l < d; ++l) cover.set_column(t * d + l, M.action(l).column(q.free_cols()[t]));
    }
    out.matrix = std::move(cover);
    if (rank_of(out.matrix) != M.dim())
        throw InternalError("minimal cover is not surjective");  // contradicts Nakayama
    return out;
}

ModuleMap MinimalCover::as_map(const FDModule& M) const {
    return ModuleMap(FDModule::free_module(M.algebra(), count), M, matrix);
}

bool is_free(const FDModule& M) {
    return minimal_generators(M).count * M.algebra()->dim() == M.dim();
}

HomSpace hom_space(const FDModule& M, const FDModule& N) {
    require_same_algebra(M.algebra(), N.algebra(), "hom_space");
    const AlgebraPtr& A = M.algebra();
    const int d = A->dim();
    const int nn = N.dim();
    const std::uint32_t p = A->modulus();

    MinimalCover cover = minimal_generators(M);
    const int b = cover.count;
    // Relations of M: any k-basis of ker(cover) generates the relation module.
    FFMatrix relations = kernel_basis(cover.matrix);  // rows in A^b, length b*d

    // A map is a tuple (v_1..v_b) in N^b killed by every relation.
    FFMatrix sys(relations.rows() * nn, b * nn, p);
    for (int r = 0; r < relations.rows(); ++r) {
        for (int t = 0; t < b; ++t) {
            std::vector<std::uint32_t> elem(d);
            for (int l = 0; l < d; ++l) elem[l] = relations.at(r, t * d + l);
            if (std::all_of(elem.begin(), elem.end(), [](std::uint32_t v) { return v == 0; }))
                continue;
            sys.paste(r * nn, t * nn, N.act_elem(elem));
        }
    }
    FFMatrix sols = kernel_basis(sys);

    HomSpace out(FDModule::zero(A), Subspace(b * nn, p));
    out.dim = sols.rows();
    out.source_cover = std::move(cover);
    out.solutions = Subspace::from_span(sols);

    // Module structure: a acts blockwise through N.
    std::vector<FFMatrix> action;
    for (int i = 0; i < d; ++i) {
        FFMatrix act(out.dim, out.dim, p);
        for (int j = 0; j < out.dim; ++j) {
            std::vector<std::uint32_t> moved(b * nn, 0);
            for (int t = 0; t < b; ++t) {
                std::vector<std::uint32_t> block(sols.row(j).begin() + t * nn,
                                                 sols.row(j).begin() + (t + 1) * nn);
                auto img = N.action(i).apply(block);
                std::copy(img.begin(), img.end(), moved.begin() + t * nn);
            }
            auto c = out.solutions.coords(moved);
            if (!c) throw InternalError("hom space is not action-stable");
            act.set_column(j, *c);
        }
        action.push_back(std::move(act));
    }
    out.module_structure = FDModule(A, std::move(action));

    // Matrices on M's own coordinates: Phi composed with the cover sends the
    // free basis vector (t, l) to a_l v_t; the cover has full row rank so
    // Phi is determined.
    if (out.dim > 0 && M.dim() > 0) {
        FFMatrix rhs(b * d, out.dim * nn, p);
        for (int j = 0; j < out.dim; ++j)
            for (int t = 0; t < b; ++t) {
                std::vector<std::uint32_t> block(sols.row(j).begin() + t * nn,
                                                 sols.row(j).begin() + (t + 1) * nn);
                for (int l = 0; l < d; ++l) {
                    auto img = N.action(l).apply(block);
                    for (int r = 0; r < nn; ++r) rhs.set(t * d + l, j * nn + r, img[r]);
                }
            }
        auto solved = solve_columns(out.source_cover.matrix.transpose(), rhs);
        if (!solved) throw InternalError("hom matrix system inconsistent");
        for (int j = 0; j < out.dim; ++j) {
            FFMatrix phi(nn, M.dim(), p);
            for (int c = 0; c < M.dim(); ++c)
                for (int r = 0; r < nn; ++r) phi.set(r, c, solved->at(c, j * nn + r));
            out.basis.emplace_back(M, N, std::move(phi));
        }
    }
    return out;
}

BidualityResult biduality(const FDModule& M) {
    const AlgebraPtr& A = M.algebra();
    const int d = A->dim();
    FDModule reg = FDModule::regular(A);
    HomSpace mstar = hom_space(M, reg);
    HomSpace mstarstar = hom_space(mstar.module_structure, reg);

    FFMatrix delta(mstarstar.dim, M.dim(), A->modulus());
    if (M.dim() > 0 && mstar.dim > 0) {
        // delta(m) is the evaluation functional f -> f(m).  In Hom(M*, A)'s
        // internal coordinates it is the tuple (g_i(m))_i over the minimal
        // generators g_i of M*, which are coordinate unit vectors of M*, i.e.
        // specific basis functionals.
        const MinimalCover& cover_star = mstarstar.source_cover;
        const int bs = cover_star.count;
        for (int j = 0; j < M.dim(); ++j) {
            std::vector<std::uint32_t> w(bs * d, 0);
            for (int i = 0; i < bs; ++i) {
                int f = -1;
                for (int c = 0; c < mstar.dim; ++c)
                    if (cover_star.generators[i][c] != 0) {
                        f = c;
                        break;
                    }
                if (f < 0) throw InternalError("empty generator in biduality");
                const FFMatrix& G = mstar.basis[f].matrix;  // d x dim M
                for (int r = 0; r < d; ++r) w[i * d + r] = G.at(r, j);
            }
            auto c = mstarstar.solutions.coords(w);
            if (!c) throw InternalError("biduality image escapes Hom(M*, A)");
            delta.set_column(j, *c);
        }
    }
    bool injective = rank_of(delta) == M.dim();
    ModuleMap map(M, mstarstar.module_structure, std::move(delta));
    return BidualityResult{std::move(map), injective};
}

IsoVerdict iso_probably(const FDModule& M, const FDModule& N, int trials) {
    require_same_algebra(M.algebra(), N.algebra(), "iso_probably");
    if (M.dim() != N.dim()) return IsoVerdict::not_isomorphic;
    if (M.dim() == 0) return IsoVerdict::isomorphic;

    HomSpace mn = hom_space(M, N);
    HomSpace mm = hom_space(M, M);
    HomSpace nn = hom_space(N, N);
    if (mm.dim != mn.dim || nn.dim != mn.dim) return IsoVerdict::not_isomorphic;
    if (mn.dim == 0) return IsoVerdict::not_isomorphic;  // no maps at all but M != 0

    Digest64 key;
    key.put_bytes("iso");
    key.put_u64(M.content_hash());
    key.put_u64(N.content_hash());
    Rng rng(key.value(), 0);
    const std::uint32_t p = M.algebra()->modulus();
    for (int t = 0; t < trials; ++t) {
        FFMatrix cand(N.dim(), M.dim(), p);
        for (const ModuleMap& f : mn.basis) {
            std::uint32_t c = static_cast<std::uint32_t>(rng.below(p));
            if (c != 0) cand = cand + f.matrix.scaled(c);
        }
        if (rank_of(cand) == M.dim()) return IsoVerdict::isomorphic;
    }
    return IsoVerdict::undetermined;
}

const char* to_string(IsoVerdict v) {
    switch (v) {
        case IsoVerdict::isomorphic: return "isomorphic";
        case IsoVerdict::not_isomorphic: return "not_isomorphic";
        default: return "undetermined";
    }
}

}  // namespace torfib
