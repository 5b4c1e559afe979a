#include "cvsteer/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace cvsteer {

void validate(const TmstParams& p) {
    if (!(p.s >= 0.0)) {
        throw std::invalid_argument("TmstParams: s must be >= 0");
    }
    if (!(p.eta >= 0.0 && p.eta <= 1.0)) {
        throw std::invalid_argument("TmstParams: eta must lie in [0,1]");
    }
    if (!(p.r >= 0.0)) {
        throw std::invalid_argument("TmstParams: r must be >= 0");
    }
}

Eigen::Matrix4d symplectic_form() {
    Eigen::Matrix4d o = Eigen::Matrix4d::Zero();
    o(0, 1) = 1.0;
    o(1, 0) = -1.0;
    o(2, 3) = 1.0;
    o(3, 2) = -1.0;
    return o;
}

Eigen::MatrixXd symplectic_form(int n_modes) {
    Eigen::MatrixXd o = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (int m = 0; m < n_modes; ++m) {
        o(2 * m, 2 * m + 1) = 1.0;
        o(2 * m + 1, 2 * m) = -1.0;
    }
    return o;
}

Eigen::Matrix4d to_matrix(const StandardForm& sf) {
    Eigen::Matrix4d v = Eigen::Matrix4d::Zero();
    v(0, 0) = sf.a;
    v(1, 1) = sf.a;
    v(2, 2) = sf.b;
    v(3, 3) = sf.b;
    v(0, 2) = v(2, 0) = sf.c;
    v(1, 3) = v(3, 1) = sf.d;
    return v;
}

double det_cov(const StandardForm& sf) {
    return (sf.a * sf.b - sf.c * sf.c) * (sf.a * sf.b - sf.d * sf.d);
}

double det_alpha(const StandardForm& sf) {
    return sf.a * sf.a;
}

bool canonicalize(StandardForm& sf) {
    if (sf.c < 0.0) {
        sf.c = -sf.c;
        sf.d = -sf.d;
        return true;
    }
    return false;
}

std::array<double, 2> symplectic_eigenvalues(const Eigen::Matrix4d& v) {
    // Moduli of the eigenvalues of i O V come in two degenerate pairs.
    Eigen::Matrix4d ov = symplectic_form() * v;
    Eigen::EigenSolver<Eigen::Matrix4d> solver(ov, /*computeEigenvectors=*/false);
    std::array<double, 4> mods{};
    for (int i = 0; i < 4; ++i) {
        mods[i] = std::abs(solver.eigenvalues()(i));
    }
    std::sort(mods.begin(), mods.end());
    return {0.5 * (mods[0] + mods[1]), 0.5 * (mods[2] + mods[3])};
}

namespace {

bool is_symmetric(const Eigen::MatrixXd& m, double tol = 1e-12) {
    return (m - m.transpose()).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace

bool is_bona_fide(const Eigen::Matrix4d& v, double tol) {
    if (!is_symmetric(v)) {
        return false;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(v, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() <= 0.0) {
        return false;
    }
    return symplectic_eigenvalues(v)[0] >= 1.0 - tol;
}

bool is_bona_fide(const StandardForm& sf, double tol) {
    return is_bona_fide(to_matrix(sf), tol);
}

StandardForm epr_covariance(double s) {
    StandardForm sf;
    sf.a = sf.b = std::cosh(2.0 * s);
    sf.c = std::sinh(2.0 * s);
    sf.d = -sf.c;
    return sf;
}

StandardForm tmst_covariance(const TmstParams& p) {
    validate(p);
    const double b = std::cosh(2.0 * p.s);
    const double ch2 = std::cosh(p.r) * std::cosh(p.r);
    const double sh2 = std::sinh(p.r) * std::sinh(p.r);
    StandardForm sf;
    sf.a = p.eta * ch2 * b + (1.0 - p.eta) * ch2 + sh2;
    sf.b = b;
    sf.c = std::sqrt(p.eta) * std::cosh(p.r) * std::sinh(2.0 * p.s);
    sf.d = -sf.c;
    return sf;
}

Eigen::Matrix4d beam_splitter(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("beam_splitter: eta must lie in [0,1]");
    }
    const double t = std::sqrt(eta);
    const double rfl = std::sqrt(1.0 - eta);
    Eigen::Matrix4d s = Eigen::Matrix4d::Zero();
    s.block<2, 2>(0, 0) = t * Eigen::Matrix2d::Identity();
    s.block<2, 2>(0, 2) = -rfl * Eigen::Matrix2d::Identity();
    s.block<2, 2>(2, 0) = rfl * Eigen::Matrix2d::Identity();
    s.block<2, 2>(2, 2) = t * Eigen::Matrix2d::Identity();
    return s;
}

Eigen::Matrix4d two_mode_squeezer(double r) {
    Eigen::Matrix2d sz;
    sz << 1.0, 0.0, 0.0, -1.0;
    Eigen::Matrix4d s = Eigen::Matrix4d::Zero();
    s.block<2, 2>(0, 0) = std::cosh(r) * Eigen::Matrix2d::Identity();
    s.block<2, 2>(0, 2) = std::sinh(r) * sz;
    s.block<2, 2>(2, 0) = std::sinh(r) * sz;
    s.block<2, 2>(2, 2) = std::cosh(r) * Eigen::Matrix2d::Identity();
    return s;
}

Eigen::MatrixXd apply_symplectic(const Eigen::MatrixXd& v, const Eigen::MatrixXd& s) {
    if (v.rows() != v.cols() || s.rows() != s.cols() || v.rows() != s.rows() || v.rows() % 2 != 0) {
        throw std::invalid_argument("apply_symplectic: dimension mismatch");
    }
    if (!is_symmetric(v)) {
        throw std::invalid_argument("apply_symplectic: covariance matrix not symmetric");
    }
    const int n_modes = static_cast<int>(v.rows()) / 2;
    const Eigen::MatrixXd omega = symplectic_form(n_modes);
    const double dev = (s * omega * s.transpose() - omega).cwiseAbs().maxCoeff();
    if (dev > kSymplecticTol) {
        std::ostringstream msg;
        msg << "apply_symplectic: matrix is not symplectic, |S O S^T - O|_inf = " << dev;
        throw std::invalid_argument(msg.str());
    }
    return s * v * s.transpose();
}

Eigen::MatrixXd embed_two_mode(const Eigen::Matrix4d& s2, int n_modes, int mode_i, int mode_j) {
    if (mode_i == mode_j || mode_i < 0 || mode_j < 0 || mode_i >= n_modes || mode_j >= n_modes) {
        throw std::invalid_argument("embed_two_mode: invalid mode indices");
    }
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
    const int oi = 2 * mode_i;
    const int oj = 2 * mode_j;
    s.block<2, 2>(oi, oi) = s2.block<2, 2>(0, 0);
    s.block<2, 2>(oi, oj) = s2.block<2, 2>(0, 2);
    s.block<2, 2>(oj, oi) = s2.block<2, 2>(2, 0);
    s.block<2, 2>(oj, oj) = s2.block<2, 2>(2, 2);
    return s;
}

Eigen::MatrixXd direct_sum(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

Eigen::MatrixXd discard_mode(const Eigen::MatrixXd& v, int mode) {
    const int n = static_cast<int>(v.rows());
    if (mode < 0 || 2 * mode + 1 >= n) {
        throw std::invalid_argument("discard_mode: mode out of range");
    }
    Eigen::MatrixXd out(n - 2, n - 2);
    int ro = 0;
    for (int rr = 0; rr < n; ++rr) {
        if (rr == 2 * mode || rr == 2 * mode + 1) continue;
        int co = 0;
        for (int cc = 0; cc < n; ++cc) {
            if (cc == 2 * mode || cc == 2 * mode + 1) continue;
            out(ro, co) = v(rr, cc);
            ++co;
        }
        ++ro;
    }
    return out;
}

StandardForm loss_channel_on_A(const StandardForm& epr, double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("loss_channel_on_A: eta must lie in [0,1]");
    }
    const double b = epr.b;
    if (std::abs(epr.a - epr.b) > 1e-12 || std::abs(epr.c + epr.d) > 1e-12 ||
        std::abs(epr.c * epr.c - (b * b - 1.0)) > 1e-9 * std::max(1.0, b * b)) {
        throw std::invalid_argument("loss_channel_on_A: input is not an EPR standard form");
    }
    StandardForm out;
    out.a = b * eta + 1.0 - eta;
    out.b = b;
    out.c = std::sqrt(eta * (b * b - 1.0));
    out.d = -out.c;
    return out;
}

bool is_gaussian_steerable_AtoB(const StandardForm& sf, double tol) {
    if (!is_bona_fide(sf, tol)) {
        throw std::invalid_argument("is_gaussian_steerable_AtoB: state is not physical");
    }
    return gaussian_steering_gap(sf) > 0.0;
}

double gaussian_steering_gap(const StandardForm& sf) {
    return det_alpha(sf) - det_cov(sf);
}

double wigner_at(const StandardForm& sf, const Eigen::Vector4d& xi, double tol) {
    if (!is_bona_fide(sf, tol)) {
        throw std::invalid_argument("wigner_at: state is not physical");
    }
    const Eigen::Matrix4d v = to_matrix(sf);
    const double det = v.determinant();
    if (det <= 0.0) {
        throw std::invalid_argument("wigner_at: singular covariance matrix");
    }
    const double quad = xi.dot(v.ldlt().solve(xi));
    const double pi = std::numbers::pi;
    return std::exp(-quad) / (pi * pi * std::sqrt(det));
}

}  // namespace cvsteer
