#include "torfib/resolution.hpp"

#include <algorithm>

namespace torfib {

namespace {

// Image of g under the free-module action of basis element l: blockwise
// multiplication by L_l.
std::vector<std::uint32_t> free_action(const FiniteLocalAlgebra& A, int l,
                                       std::span<const std::uint32_t> g, int rank) {
    const int d = A.dim();
    std::vector<std::uint32_t> out(g.size(), 0);
    const FFMatrix& L = A.left_mult(l);
    for (int r = 0; r < rank; ++r) {
        auto block = g.subspan(static_cast<std::size_t>(r) * d, d);
        bool nonzero = std::any_of(block.begin(), block.end(),
                                   [](std::uint32_t v) { return v != 0; });
        if (!nonzero) continue;
        auto img = L.apply(block);
        std::copy(img.begin(), img.end(), out.begin() + static_cast<std::size_t>(r) * d);
    }
    return out;
}

}  // namespace

FDModule MinimalResolution::syzygy_module(int i) const {
    if (i == 0) return module_;
    const Subspace& W = syzygy_subspace(i);
    const AlgebraPtr& A = module_.algebra();
    const int d = A->dim();
    const int rank = betti_.at(i - 1);
    std::vector<FFMatrix> action;
    for (int l = 0; l < d; ++l) {
        FFMatrix act(W.dim(), W.dim(), A->modulus());
        for (int r = 0; r < W.dim(); ++r) {
            auto img = free_action(*A, l, W.basis().row(r), rank);
            act.set_column(r, W.coords_unchecked(img));
        }
        action.push_back(std::move(act));
    }
    return FDModule(A, std::move(action));
}

void MinimalResolution::verify_exactness() const {
    const AlgebraPtr& A = module_.algebra();
    const int d = A->dim();
    for (int i = 1; i <= num_differentials(); ++i) {
        const AlgebraMatrix& di = differential(i);
        if (!di.entries_in_radical())
            throw InternalError("resolution differential " + std::to_string(i) +
                                " is not minimal");
        if (i > 1 && !(differential(i - 1) * di).is_zero())
            throw InternalError("d" + std::to_string(i - 1) + " d" + std::to_string(i) +
                                " != 0");
        FFMatrix exp = di.expand();
        if (rank_of(exp) != syzygy_subspace(i).dim())
            throw InternalError("image of d" + std::to_string(i) +
                                " does not fill the syzygy");
        // Columns of the expansion land in the recorded syzygy subspace.
        for (int j = 0; j < exp.cols(); ++j)
            if (!syzygy_subspace(i).contains(exp.column(j)))
                throw InternalError("d" + std::to_string(i) + " image escapes the syzygy");
        // Exactness at stage i: ker(expansion of d_i) equals Omega^{i+1}.
        if (i + 1 <= num_syzygies()) {
            int nullity = betti_[i] * d - rank_of(exp);
            if (nullity != syzygy_subspace(i + 1).dim())
                throw InternalError("exactness fails at homological degree " +
                                    std::to_string(i));
        }
    }
}

std::uint64_t MinimalResolution::content_hash() const {
    Digest64 dg;
    dg.put_bytes("res");
    dg.put_u64(module_.content_hash());
    dg.put_u32(static_cast<std::uint32_t>(length_));
    for (int b : betti_) dg.put_u32(static_cast<std::uint32_t>(b));
    for (const AlgebraMatrix& m : diffs_) m.absorb(dg);
    return dg.value();
}

MinimalResolution minimal_resolution(const FDModule& M, const ResolutionOptions& opt) {
    if (opt.length < 0) throw ArgumentError("negative resolution length");
    const AlgebraPtr& A = M.algebra();
    const int d = A->dim();
    const std::uint32_t p = A->modulus();

    MinimalResolution res(M);
    res.length_ = opt.length;

    // Stage 0: minimal cover of M itself.
    QuotientMap q0(M.radical_subspace());
    const int b0 = q0.target_dim();
    if (static_cast<long long>(b0) * d > opt.max_stage_dim)
        throw ResourceError("resolution stage 0 exceeds the size budget");
    res.betti_.push_back(b0);

    FFMatrix cover0(M.dim(), b0 * d, p);
    for (int t = 0; t < b0; ++t)
        for (int l = 0; l < d; ++l)
            cover0.set_column(t * d + l, M.action(l).column(q0.free_cols()[t]));
    res.syzygies_.push_back(Subspace::from_span(kernel_basis(cover0)));

    for (int i = 1; i <= opt.length; ++i) {
        const Subspace& W = res.syzygies_.back();  // Omega^i in k^{beta_{i-1} d}
        const int w = W.dim();
        const int prev_rank = res.betti_[i - 1];
        if (w == 0) {
            res.terminated_ = true;
            break;
        }

        // m*W in W's own coordinates.
        FFMatrix mw((d - 1) * w, w, p);
        for (int l = 1; l < d; ++l)
            for (int r = 0; r < w; ++r) {
                auto img = free_action(*A, l, W.basis().row(r), prev_rank);
                auto c = W.coords_unchecked(img);
                for (int j = 0; j < w; ++j) mw.set((l - 1) * w + r, j, c[j]);
            }
        QuotientMap q(Subspace::from_span(mw));
        const int bi = q.target_dim();
        if (static_cast<long long>(bi) * d > opt.max_stage_dim)
            throw ResourceError("resolution stage " + std::to_string(i) +
                                " exceeds the size budget");
        res.betti_.push_back(bi);

        // Generators: echelon-order representatives, one per free coordinate.
        AlgebraMatrix di(A, prev_rank, bi);
        for (int t = 0; t < bi; ++t) {
            auto gen = W.basis().row(q.free_cols()[t]);
            for (int r = 0; r < prev_rank; ++r) {
                std::vector<std::uint32_t> e(gen.begin() + static_cast<std::size_t>(r) * d,
                                             gen.begin() + static_cast<std::size_t>(r + 1) * d);
                di.set_entry(r, t, std::move(e));
            }
        }
        if (!di.entries_in_radical())
            throw InternalError("non-minimal differential: generator outside m*F");
        res.diffs_.push_back(std::move(di));

        // Next syzygy: kernel of the cover of W, written in W coordinates.
        FFMatrix cover(w, bi * d, p);
        for (int t = 0; t < bi; ++t) {
            auto gen = W.basis().row(q.free_cols()[t]);
            for (int l = 0; l < d; ++l) {
                auto img = free_action(*A, l, gen, prev_rank);
                auto c = W.coords_unchecked(img);
                cover.set_column(t * d + l, c);
            }
        }
        res.syzygies_.push_back(Subspace::from_span(kernel_basis(cover)));
    }

    // Betti numbers vanish past termination; pad so the table always has
    // length+1 entries.
    while (static_cast<int>(res.betti_.size()) <= opt.length) res.betti_.push_back(0);
    if (!res.terminated_ && res.syzygies_.back().dim() == 0) res.terminated_ = true;
    if (res.terminated_) {
        int pd = 0;
        for (std::size_t j = 0; j < res.betti_.size(); ++j)
            if (res.betti_[j] > 0) pd = static_cast<int>(j);
        res.pd_ = pd;
    }
    return res;
}

FDModule syzygy(const FDModule& M, int i) {
    if (i < 0) throw ArgumentError("negative syzygy index");
    if (i == 0) return M;
    ResolutionOptions opt;
    opt.length = i;
    MinimalResolution res = minimal_resolution(M, opt);
    if (i > res.num_syzygies()) return FDModule::zero(M.algebra());
    return res.syzygy_module(i);
}

PdResult pd_detect(const FDModule& M, int bound, long long max_stage_dim) {
    ResolutionOptions opt;
    opt.length = bound;
    opt.max_stage_dim = max_stage_dim;
    MinimalResolution res = minimal_resolution(M, opt);
    if (res.terminated()) return {true, res.pd_if_terminated()};
    return {false, bound + 1};
}

}  // namespace torfib
