#include "amalgam/propagator.hpp"
#include "amalgam/verify.hpp"

#include <stdexcept>

namespace amalgam::verify {
namespace {

void check_pair(const grid::SpaceTimeField& F, const grid::SpaceTimeField& G, double sigma) {
    F.validate();
    G.validate();
    if (!(F.grid == G.grid)) throw std::invalid_argument("bilinear form needs a shared grid");
    if (F.times != G.times) throw std::invalid_argument("bilinear form needs a shared time list");
    if (F.quadrature_weights() != G.quadrature_weights())
        throw std::invalid_argument("bilinear form needs shared quadrature weights");
    if (!(sigma >= 0.0) || !(2.0 * sigma < F.grid.n)) throw std::invalid_argument("bilinear form needs 0 <= sigma < n/2");
}

} // namespace

std::complex<double> bilinear_form(const grid::SpaceTimeField& F, const grid::SpaceTimeField& G, double sigma) {
    check_pair(F, G, sigma);
    auto w = F.quadrature_weights();
    std::size_t S = F.times.size();
    std::vector<grid::SampledField> A, B;
    A.reserve(S);
    B.reserve(S);
    for (std::size_t i = 0; i < S; ++i) {
        A.push_back(propagator::evolve(F.slices[i], -F.times[i], sigma));
        B.push_back(propagator::evolve(G.slices[i], -G.times[i], sigma));
    }
    std::complex<double> acc = 0.0;
    for (std::size_t s = 0; s < S; ++s) {
        std::complex<double> row = 0.0;
        for (std::size_t t = 0; t < S; ++t) row += w[t] * propagator::inner_product(A[s], B[t]);
        acc += w[s] * row;
    }
    return acc;
}

std::complex<double> bilinear_form_factorized(const grid::SpaceTimeField& F, const grid::SpaceTimeField& G,
                                              double sigma) {
    check_pair(F, G, sigma);
    return propagator::inner_product(propagator::adjoint_accumulate(F, sigma), propagator::adjoint_accumulate(G, sigma));
}

} // namespace amalgam::verify
