#include "laguerre.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace amalgam::detail {
namespace {

// L_m^{(alpha)}(x) and L_{m-1}^{(alpha)}(x) by the three-term recurrence.
std::pair<double, double> laguerre_pair(int m, double alpha, double x) {
    double prev = 1.0;
    double cur = 1.0 + alpha - x;
    if (m == 0) return {prev, 0.0};
    for (int k = 1; k < m; ++k) {
        double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return {cur, prev};
}

GaussRule build(double alpha, int m) {
    // Golub-Welsch: symmetric tridiagonal Jacobi matrix of the monic recurrence.
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        J(i, i) = 2.0 * i + alpha + 1.0;
        if (i + 1 < m) {
            double b = std::sqrt((i + 1.0) * (i + 1.0 + alpha));
            J(i, i + 1) = b;
            J(i + 1, i) = b;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("Laguerre eigenproblem failed");

    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(m));
    rule.weights.resize(static_cast<std::size_t>(m));
    double log_ratio = std::lgamma(m + alpha + 1.0) - std::lgamma(m + 1.0);
    for (int i = 0; i < m; ++i) {
        double x = es.eigenvalues()(i);
        for (int it = 0; it < 4; ++it) {
            auto [lm, lm1] = laguerre_pair(m, alpha, x);
            double dl = (m * lm - (m + alpha) * lm1) / x;
            double dx = lm / dl;
            x -= dx;
            if (std::abs(dx) <= 1e-16 * std::abs(x)) break;
        }
        auto [lm, lm1] = laguerre_pair(m, alpha, x);
        double dl = (m * lm - (m + alpha) * lm1) / x;
        rule.nodes[static_cast<std::size_t>(i)] = x;
        // w_i = Gamma(m+alpha+1) / (m! x_i L'_m(x_i)^2)
        rule.weights[static_cast<std::size_t>(i)] = std::exp(log_ratio) / (x * dl * dl);
    }
    return rule;
}

} // namespace

GaussRule gauss_laguerre(double alpha, int m) {
    if (!(alpha > -1.0)) throw std::invalid_argument("Laguerre parameter must exceed -1");
    if (m < 1 || m > 400) throw std::invalid_argument("Laguerre node count out of range");
    static std::mutex mutex;
    static std::map<std::pair<double, int>, GaussRule> cache;
    std::lock_guard lock(mutex);
    auto key = std::make_pair(alpha, m);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    return cache.emplace(key, build(alpha, m)).first->second;
}

} // namespace amalgam::detail
