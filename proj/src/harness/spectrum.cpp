#include "hexmix/spectrum.hpp"

#include <cmath>
#include <stdexcept>

#include "hexmix/dynamics.hpp"

namespace hexmix {

std::size_t ChainSpectrum::index_of(const HeightField& f) const {
    auto it = index_.find(f.values());
    if (it == index_.end()) throw std::out_of_range("state not in the enumerated chain");
    return it->second;
}

Eigen::VectorXd ChainSpectrum::law(std::size_t i, double t) const {
    const Eigen::VectorXd e = (eigenvalues.array() * t).exp();
    const Eigen::VectorXd sq = target.array().sqrt();
    // Row i of D^{-1/2} V e^{Lt} V^T D^{1/2}.
    const Eigen::VectorXd coef = eigenvectors.row(i).transpose().cwiseProduct(e);
    Eigen::VectorXd row = eigenvectors * coef;
    return row.cwiseProduct(sq) / sq(i);
}

double ChainSpectrum::tv_from(std::size_t i, double t) const {
    return 0.5 * (law(i, t) - target).cwiseAbs().sum();
}

double ChainSpectrum::tv(double t) const {
    double m = 0;
    for (std::size_t i = 0; i < states.size(); ++i) m = std::max(m, tv_from(i, t));
    return m;
}

double ChainSpectrum::row_sum_residual() const { return generator.rowwise().sum().cwiseAbs().maxCoeff(); }

double ChainSpectrum::stationary_residual() const {
    return (stationary.transpose() * generator).cwiseAbs().maxCoeff();
}

double ChainSpectrum::target_residual() const { return (target.transpose() * generator).cwiseAbs().maxCoeff(); }

double ChainSpectrum::stationary_vs_target() const { return (stationary - target).cwiseAbs().maxCoeff(); }

double ChainSpectrum::detailed_balance_residual() const {
    const Eigen::MatrixXd flow = target.asDiagonal() * generator;
    return (flow - flow.transpose()).cwiseAbs().maxCoeff();
}

ChainSpectrum exact_spectrum(const DomainPtr& d, double q, double scale, std::size_t max_states) {
    ChainSpectrum s;
    s.domain = d;
    s.q = q;
    s.scale = scale > 0 ? scale : d->na();
    s.states = enumerate_all(d, max_states);
    const std::size_t n = s.states.size();
    for (std::size_t i = 0; i < n; ++i) s.index_[s.states[i].values()] = i;

    ChainConfig cfg;
    cfg.domain = d;
    cfg.q = q;
    cfg.scale = s.scale;
    const double pu = cfg.p_up();
    const double up = 2.0 * pu, down = 2.0 * (1.0 - pu);

    s.generator = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        HeightField f = s.states[i];
        for (const FlipSite& fs : flippable(f)) {
            const int old = f[fs.site];
            const bool at_top = old == fs.h_max;
            f[fs.site] = at_top ? fs.h_min : fs.h_max;
            const std::size_t j = s.index_of(f);
            f[fs.site] = old;
            const double r = at_top ? down : up;
            s.generator(i, j) += r;
            s.generator(i, i) -= r;
        }
    }

    // Target law exp((q/N) * volume), normalised stably.
    s.target.resize(n);
    double vmax = -1e300;
    for (std::size_t i = 0; i < n; ++i) vmax = std::max(vmax, q / s.scale * volume(s.states[i]));
    for (std::size_t i = 0; i < n; ++i) s.target(i) = std::exp(q / s.scale * volume(s.states[i]) - vmax);
    s.target /= s.target.sum();

    // Null vector of Q^T with a normalisation row.
    Eigen::MatrixXd M(n + 1, n);
    M.topRows(n) = s.generator.transpose();
    M.row(n).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
    rhs(n) = 1.0;
    s.stationary = M.colPivHouseholderQr().solve(rhs);

    const Eigen::VectorXd sq = s.target.array().sqrt();
    const Eigen::MatrixXd S = sq.asDiagonal() * s.generator * sq.cwiseInverse().asDiagonal();
    const Eigen::MatrixXd Ssym = 0.5 * (S + S.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Ssym);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigen decomposition failed");
    s.eigenvalues = es.eigenvalues();
    s.eigenvectors = es.eigenvectors();
    s.gap = n > 1 ? -s.eigenvalues(n - 2) : 0.0;
    return s;
}

double tmix_exact(const ChainSpectrum& s, double eps) {
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("epsilon must lie in (0, 1)");
    if (s.tv(0.0) <= eps) return 0.0;
    double hi = 1e-3;
    while (s.tv(hi) > eps) {
        hi *= 2.0;
        if (hi > 1e12) throw std::runtime_error("total variation curve does not reach epsilon");
    }
    double lo = hi / 2.0;
    if (hi == 1e-3) lo = 0.0;
    for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (s.tv(mid) > eps) lo = mid;
        else hi = mid;
    }
    return hi;
}

bool submultiplicativity_holds(const ChainSpectrum& s, double eps, double eps2) {
    if (!(eps < 0.5)) throw std::invalid_argument("submultiplicativity needs eps < 1/2");
    const double t1 = tmix_exact(s, eps), t2 = tmix_exact(s, eps2);
    const double k = std::ceil(std::fabs(std::log(eps2)) / std::fabs(std::log(2.0 * eps)));
    return t2 <= t1 * k * (1.0 + 1e-9);
}

}  // namespace hexmix
