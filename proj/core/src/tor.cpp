#include "torfib/tor.hpp"

#include <sstream>

namespace torfib {

std::vector<int> tor_dims_via_resolution(const MinimalResolution& left, const FDModule& N,
                                         int bound) {
    if (!left.terminated() && left.num_differentials() < bound + 1)
        throw ArgumentError("resolution too short for the requested Tor bound");
    const int nn = N.dim();
    const auto& betti = left.betti();

    // ranks[i] = rank of d_i (x) N; d_0 = 0 and differentials past
    // termination are zero.
    std::vector<int> ranks(bound + 2, 0);
    for (int i = 1; i <= bound + 1; ++i) {
        if (i > left.num_differentials()) break;
        if (nn == 0 || betti[i] == 0) continue;
        ranks[i] = rank_of(left.differential(i).expand_action(N));
    }
    std::vector<int> dims(bound + 1, 0);
    for (int i = 0; i <= bound; ++i) {
        int bi = i < static_cast<int>(betti.size()) ? betti[i] : 0;
        dims[i] = bi * nn - ranks[i] - ranks[i + 1];
        if (dims[i] < 0) throw InternalError("negative homology dimension");
    }
    return dims;
}

TorTable tor_dims(const FDModule& M, const FDModule& N, int bound, TorMethod method,
                  const ResolutionOptions& opt) {
    if (bound < 0) throw ArgumentError("negative Tor bound");
    ResolutionOptions ropt = opt;
    ropt.length = bound + 1;

    TorTable out;
    out.bound = bound;
    out.method = method;

    if (method == TorMethod::left_resolved || method == TorMethod::both) {
        MinimalResolution res = minimal_resolution(M, ropt);
        out.dims = tor_dims_via_resolution(res, N, bound);
    }
    if (method == TorMethod::right_resolved || method == TorMethod::both) {
        MinimalResolution res = minimal_resolution(N, ropt);
        std::vector<int> rdims = tor_dims_via_resolution(res, M, bound);
        if (method == TorMethod::right_resolved) {
            out.dims = std::move(rdims);
        } else if (rdims != out.dims) {
            std::ostringstream msg;
            msg << "Tor balance violation: left route (";
            for (int v : out.dims) msg << v << " ";
            msg << ") vs right route (";
            for (int v : rdims) msg << v << " ";
            msg << ") for modules of dim " << M.dim() << " and " << N.dim();
            throw InternalError(msg.str());
        } else {
            out.balanced = true;
        }
    }
    return out;
}

Tor1FormulaResult tor_via_formula_tor1(const FDModule& X, const FDModule& Y,
                                       const FDModule& Z, const FiberProductData& data) {
    // X, Y live over S; Z lives over T.
    const AlgebraPtr& S = data.S;
    const AlgebraPtr& T = data.T;
    FDModule kS = FDModule::residue(S);
    FDModule kT = FDModule::residue(T);

    auto beta0 = [](const FDModule& m) { return minimal_generators(m).count; };
    auto beta1 = [](const FDModule& m) {
        ResolutionOptions o;
        o.length = 1;
        return minimal_resolution(m, o).betti()[1];
    };

    TorTable torS_XY = tor_dims(X, Y, 1, TorMethod::both);
    int b1Tk = beta1(kT);

    Tor1FormulaResult out;
    // Tor_1 over R of two S-modules: the S-side Tor_1 plus (Y/mY) copies
    // counted by beta_1^T(k) * beta_0^S(X).
    out.dimXY = torS_XY.dims[1] + beta0(Y) * b1Tk * beta0(X);
    // Tor_1 over R of an S-module against a T-module.
    out.dimYZ = tor_dims(Y, kS, 1, TorMethod::both).dims[1] * beta0(Z) +
                beta0(Y) * beta1(Z);
    return out;
}

}  // namespace torfib
