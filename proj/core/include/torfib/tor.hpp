#pragma once

#include "torfib/resolution.hpp"

namespace torfib {

enum class TorMethod { left_resolved, right_resolved, both };

struct TorTable {
    int bound = 0;
    std::vector<int> dims;  // dim_k Tor_i for i = 0..bound
    TorMethod method = TorMethod::left_resolved;
    /// When method == both the two routes agreed entrywise (a disagreement
    /// throws instead; the flag records that the cross-check ran).
    bool balanced = false;
};

/// Homology dimensions of (minimal resolution of one side) tensored with the
/// other side.  `both` computes the two routes independently and requires
/// entrywise agreement: this is the oracle every formula is checked against.
TorTable tor_dims(const FDModule& M, const FDModule& N, int bound,
                  TorMethod method = TorMethod::both, const ResolutionOptions& opt = {});

/// Same, reusing an already computed resolution of the left argument.  The
/// resolution must extend to stage bound+1 or be terminated.
std::vector<int> tor_dims_via_resolution(const MinimalResolution& left, const FDModule& N,
                                         int bound);

/// Dimension predictions of the two closed-form Tor_1 expressions over a
/// fiber product: dimXY for a pair of S-modules, dimYZ for an S-module
/// against a T-module.  Callers compare them with the oracle.
struct Tor1FormulaResult {
    int dimXY = 0;
    int dimYZ = 0;
};

Tor1FormulaResult tor_via_formula_tor1(const FDModule& X, const FDModule& Y,
                                       const FDModule& Z, const FiberProductData& data);

}  // namespace torfib
