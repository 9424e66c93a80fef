#pragma once

#include "torfib/module.hpp"

namespace torfib {

struct ResolutionOptions {
    int length = 8;
    /// Stage cap: beta_i * dim A may not exceed this; beyond it the
    /// computation aborts with a ResourceError instead of thrashing.
    long long max_stage_dim = 5000;
};

/// A minimal free resolution computed stage by stage with deterministic
/// generator choices (echelon order), so Betti tables and syzygies are
/// reproducible byte-for-byte.
///
/// Internally each syzygy is held as a subspace of its free cover; the
/// FDModule view is materialized on demand.
class MinimalResolution {
  public:
    const FDModule& module() const { return module_; }
    int requested_length() const { return length_; }

    /// beta_0 .. beta_length (padded with zeros past termination).
    const std::vector<int>& betti() const { return betti_; }
    bool terminated() const { return terminated_; }
    /// Projective dimension when terminated; -1 otherwise.
    int pd_if_terminated() const { return pd_; }

    int num_differentials() const { return static_cast<int>(diffs_.size()); }
    /// d_i : A^{beta_i} -> A^{beta_{i-1}}, 1-based.
    const AlgebraMatrix& differential(int i) const { return diffs_.at(i - 1); }

    int num_syzygies() const { return static_cast<int>(syzygies_.size()); }
    /// Omega^i inside k^{beta_{i-1} * d}, 1-based; one more than the number
    /// of differentials, so termination at the requested length is visible.
    const Subspace& syzygy_subspace(int i) const { return syzygies_.at(i - 1); }

    /// Omega^i as a module (i = 0 gives back M).
    FDModule syzygy_module(int i) const;

    /// Deep re-verification: d d = 0, minimality, and exactness of the
    /// k-linear expansions at every computed stage.
    void verify_exactness() const;

    std::uint64_t content_hash() const;

  private:
    friend MinimalResolution minimal_resolution(const FDModule& M, const ResolutionOptions& opt);
    explicit MinimalResolution(FDModule m) : module_(std::move(m)) {}

    FDModule module_;
    int length_ = 0;
    std::vector<int> betti_;
    std::vector<AlgebraMatrix> diffs_;
    std::vector<Subspace> syzygies_;
    bool terminated_ = false;
    int pd_ = -1;
};

MinimalResolution minimal_resolution(const FDModule& M, const ResolutionOptions& opt = {});

/// Omega^i M with the same deterministic generator choices the resolution
/// makes.
FDModule syzygy(const FDModule& M, int i);

struct PdResult {
    bool finite = false;
    int value = 0;  // the projective dimension when finite; otherwise bound+1
                    // is a strict lower bound
};

/// Detects pd(M) <= bound by resolving until Omega vanishes or the bound is
/// passed.
PdResult pd_detect(const FDModule& M, int bound,
                   long long max_stage_dim = ResolutionOptions{}.max_stage_dim);

}  // namespace torfib
