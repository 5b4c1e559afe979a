#ifndef CVSTEER_GAUSSIAN_HPP
#define CVSTEER_GAUSSIAN_HPP

#include <Eigen/Dense>
#include <array>

namespace cvsteer {

/// Default tolerance on symplectic eigenvalues when testing physicality.
/// Adjustable per call; kept loose enough to absorb eigensolver noise.
inline constexpr double kBonaFideTol = 1e-9;

/// Tolerance for accepting a matrix as symplectic (|S O S^T - O|_inf).
inline constexpr double kSymplecticTol = 1e-10;

/// Standard-form parameters (a, b, c, d) of a two-mode covariance matrix
///
///     [ a . c . ]
///     [ . a . d ]        quadrature ordering (qA, pA, qB, pB),
///     [ c . b . ]        vacuum units (V = 1 for the vacuum).
///     [ . d . b ]
///
/// Two-mode squeezed thermal (TMST) states have d = -c; the canonical sign
/// convention is c >= 0, d <= 0.
struct StandardForm {
    double a{1.0};
    double b{1.0};
    double c{0.0};
    double d{0.0};
};

/// Generative parameters of a TMST state: initial two-mode squeezing s,
/// attenuator transmissivity eta in [0,1], amplifier squeezing r.
struct TmstParams {
    double s{0.0};
    double eta{1.0};
    double r{0.0};
};

/// Throws std::invalid_argument unless 0 <= eta <= 1, s >= 0, r >= 0.
void validate(const TmstParams& p);

/// Two-mode symplectic form (block diag of [[0,1],[-1,0]]).
Eigen::Matrix4d symplectic_form();

/// Symplectic form for n modes (2n x 2n).
Eigen::MatrixXd symplectic_form(int n_modes);

/// Assembles the 4x4 covariance matrix of a standard form.
Eigen::Matrix4d to_matrix(const StandardForm& sf);

/// det of the 4x4 covariance matrix: (ab - c^2)(ab - d^2).
double det_cov(const StandardForm& sf);

/// det of Alice's 2x2 block: a^2.
double det_alpha(const StandardForm& sf);

/// Flips the signs of (c, d) when c < 0, which corresponds to a local phase
/// flip on one mode. Returns true when a flip was applied.
bool canonicalize(StandardForm& sf);

/// Symplectic eigenvalues (moduli of the eigenvalues of i O V), ascending.
std::array<double, 2> symplectic_eigenvalues(const Eigen::Matrix4d& v);

/// Physicality test: V symmetric, V > 0, and all symplectic eigenvalues
/// >= 1 - tol.
bool is_bona_fide(const Eigen::Matrix4d& v, double tol = kBonaFideTol);
bool is_bona_fide(const StandardForm& sf, double tol = kBonaFideTol);

/// Covariance of the two-mode squeezed vacuum: a = b = cosh(2s),
/// c = -d = sinh(2s). Negative s flips the sign of c.
StandardForm epr_covariance(double s);

/// Covariance of the TMST state produced by an attenuator (transmissivity
/// eta) followed by an amplifier (squeezing r) on mode A of a two-mode
/// squeezed vacuum with squeezing s.
StandardForm tmst_covariance(const TmstParams& p);

/// Beam-splitter symplectic matrix of transmissivity eta on two modes.
/// Throws for eta outside [0,1].
Eigen::Matrix4d beam_splitter(double eta);

/// Two-mode squeezer symplectic matrix with parameter r.
Eigen::Matrix4d two_mode_squeezer(double r);

/// Congruence action V -> S V S^T. S must be symplectic; otherwise throws
/// std::invalid_argument with the deviation |S O S^T - O|_inf in the message.
Eigen::MatrixXd apply_symplectic(const Eigen::MatrixXd& v, const Eigen::MatrixXd& s);

/// Embeds a two-mode symplectic matrix into an n-mode identity, acting on
/// modes (i, j).
Eigen::MatrixXd embed_two_mode(const Eigen::Matrix4d& s2, int n_modes, int mode_i, int mode_j);

/// Direct sum of two covariance matrices.
Eigen::MatrixXd direct_sum(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Removes one mode (its two rows/columns) from a covariance matrix.
Eigen::MatrixXd discard_mode(const Eigen::MatrixXd& v, int mode);

/// Pure-loss channel of transmissivity eta on mode A of a two-mode squeezed
/// vacuum standard form. The input must be an EPR form (a = b, c = -d,
/// c^2 = b^2 - 1); otherwise throws.
StandardForm loss_channel_on_A(const StandardForm& epr, double eta);

/// A->B steerability by Gaussian measurements: det(alpha) > det(V), strict.
/// Throws for non-physical input.
bool is_gaussian_steerable_AtoB(const StandardForm& sf, double tol = kBonaFideTol);

/// Signed criterion value det(alpha) - det(V); positive means steerable.
double gaussian_steering_gap(const StandardForm& sf);

/// Zero-mean Wigner function of the state at phase-space point xi
/// (ordering qA, pA, qB, pB). Throws for non-physical input.
double wigner_at(const StandardForm& sf, const Eigen::Vector4d& xi, double tol = kBonaFideTol);

}  // namespace cvsteer

#endif
