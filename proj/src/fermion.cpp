#include "partalg/fermion.hpp"

#include <Eigen/LU>

namespace partalg {

namespace {

CMat kron_chain(const std::vector<CMat>& factors) {
    CMat out = CMat::Identity(1, 1);
    for (const auto& f : factors) out = kron(out, f);
    return out;
}

} // namespace

FermionSystem jw_system(int modes) {
    if (modes < 1 || modes > 12)
        throw std::invalid_argument("jw_system: modes out of range [1, 12]");

    CMat A(2, 2), Z(2, 2), I2 = CMat::Identity(2, 2);
    A << 0, 1, 0, 0;   // |0><1| in occupation order |0>, |1>
    Z << 1, 0, 0, -1;

    FermionSystem sys;
    sys.modes = modes;
    for (int i = 0; i < modes; ++i) {
        std::vector<CMat> chain;
        for (int j = 0; j < i; ++j) chain.push_back(Z);
        chain.push_back(A);
        for (int j = i + 1; j < modes; ++j) chain.push_back(I2);
        sys.a.push_back(kron_chain(chain));
    }
    return sys;
}

OperatorAlgebra physical_algebra(const FermionSystem& sys,
                                 const std::vector<int>& S,
                                 const Config& cfg) {
    std::vector<CMat> gens;
    for (int i : S)
        for (int j : S) {
            const CMat& ai = sys.a[i];
            const CMat& aj = sys.a[j];
            gens.push_back(ai * aj);
            gens.push_back(ai * CMat(aj.adjoint()));
            gens.push_back(CMat(ai.adjoint()) * aj);
            gens.push_back(CMat(ai.adjoint()) * CMat(aj.adjoint()));
        }
    return generate(sys.dim(), gens, cfg);
}

CMat parity_projector(const FermionSystem& sys, const std::vector<int>& S) {
    const int D = sys.dim();
    CMat out = CMat::Zero(D, D);
    const int s = int(S.size());
    for (int mask = 1; mask < (1 << s); ++mask) {
        CMat prod = CMat::Identity(D, D);
        int size = 0;
        for (int b = 0; b < s; ++b)
            if (mask & (1 << b)) {
                const CMat& a = sys.a[S[b]];
                prod = prod * (CMat(a.adjoint()) * a);
                ++size;
            }
        double coeff = (size % 2 == 1) ? 1.0 : -1.0;  // sign of (-2)^{|Y|-1}
        for (int k = 1; k < size; ++k) coeff *= 2.0;
        out += coeff * prod;
    }
    return out;
}

CMat word_operator(const FermionSystem& sys, const std::vector<int>& codes) {
    if (int(codes.size()) != sys.modes)
        throw std::invalid_argument("word_operator: wrong number of codes");
    const int D = sys.dim();
    CMat out = CMat::Identity(D, D);
    for (int i = 0; i < sys.modes; ++i) {
        const CMat& a = sys.a[i];
        switch (codes[i]) {
            case 0: break;
            case 1: out = out * CMat(a.adjoint()); break;
            case 2: out = out * a; break;
            case 3: out = out * CMat(CMat(a.adjoint()) * a); break;
            default:
                throw std::invalid_argument("word_operator: bad code");
        }
    }
    return out;
}

std::vector<CanonicalTerm> canonical_decompose(const FermionSystem& sys,
                                               const CMat& y,
                                               const Config& cfg) {
    const int D = sys.dim();
    if (y.rows() != D || y.cols() != D)
        throw std::invalid_argument("canonical_decompose: shape mismatch");
    const int words = D * D;  // 4^modes

    CMat m(words, words);
    std::vector<int> codes(sys.modes, 0);
    for (int w = 0; w < words; ++w) {
        int t = w;
        for (int i = sys.modes - 1; i >= 0; --i) {
            codes[i] = t & 3;
            t >>= 2;
        }
        m.col(w) = vectorize(word_operator(sys, codes));
    }
    const CVec alpha = m.lu().solve(vectorize(y));

    const double cutoff = cfg.tol * std::max(1.0, y.norm());
    std::vector<CanonicalTerm> out;
    for (int w = 0; w < words; ++w) {
        if (std::abs(alpha(w)) <= cutoff) continue;
        CanonicalTerm term;
        term.coeff = alpha(w);
        term.codes.resize(sys.modes);
        int t = w;
        for (int i = sys.modes - 1; i >= 0; --i) {
            term.codes[i] = t & 3;
            t >>= 2;
        }
        out.push_back(std::move(term));
    }
    return out;
}

CMat b_operator(const FermionSystem& sys, int i, int j) {
    if (i == j) throw std::invalid_argument("b_operator: indices must differ");
    const CMat mi = sys.a[i] + CMat(sys.a[i].adjoint());
    const CMat mj = sys.a[j] + CMat(sys.a[j].adjoint());
    const CMat b = mi * mj;
    // the product is quadratic in the two modes, hence in their algebra
    const OperatorAlgebra pair = physical_algebra(sys, {i, j});
    if (!contains(pair, b))
        throw std::runtime_error("b_operator: product left the pair algebra");
    return b;
}

} // namespace partalg
