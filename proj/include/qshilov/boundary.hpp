// Boundary ideal, annihilation classification, maximum-modulus and
// regular-function checks.
#pragma once

#include <array>
#include <random>
#include <string>
#include <vector>

#include "qshilov/ncalg.hpp"
#include "qshilov/oprep.hpp"

namespace qshilov {

/// g_ij = sum_k q^{4-i-j} z_ik z_jk^* - delta_ij with z12 = q z21, in the
/// order g11, g12, g21, g22, each in normal form.
std::vector<NcExpr> j_generators();

/// z22 z11 - q^-1 z21^2
NcExpr det_q();

/// Truncation per leg count.
struct Truncations {
  int n1 = 64;
  int n2 = 32;
  int n3 = 16;
  int for_legs(int legs) const { return legs >= 3 ? n3 : legs == 2 ? n2 : n1; }
};

/// Largest singular value on the guard block.
double guard_norm(const TruncatedMatrix& m);
/// Guard-block norm with the truncation raised in steps of 8 from N until it
/// changes by at most rel_tol (guard-block norms increase with N).
double converged_norm(const OpSymbolExpr& e, int N, double q, double rel_tol = 1e-11);

struct NormSeries {
  double value = 0;
  int N = 0;  // last truncation used
  bool converged = false;
};

/// converged_norm together with the truncation it stopped at.
NormSeries norm_series(const OpSymbolExpr& e, int N, double q, double rel_tol = 1e-11);

/// Families whose every member kills the ideal J.
bool annihilates_j(Family f);

struct AnnihilationResult {
  std::array<double, 4> residuals{};  // g11, g12, g21, g22
  double product_residual = 0;        // max over g_ij w, deg w <= product_degree
  double witness = 0;                 // max |<pi(g_ij) Omega, Omega>|
  double max_residual() const;
};

AnnihilationResult annihilation_residual(const RepSpec& spec, int N, double q, int product_degree = 2,
                                         const PhaseBindings& bindings = {});

/// sup over phi = 2 pi j / grid of ||omega_phi(z21) + e^{i theta} I||.
double shilov_norm(const Angle& theta, int grid, int N, double q);

/// Phases on a grid of the given size for each phase slot of the family.
std::vector<RepSpec> phase_sweep(Family f, int grid);
std::vector<Family> matsym_families();

struct DominationResult {
  std::size_t comparisons = 0;
  double worst_excess = 0;  // max of ||pi(x)|| - ||pi_F(x)|| - slack(x)
  double max_slack = 0;
  std::string worst;        // description of the worst comparison
};

/// ||pi(x)|| <= ||pi_F(x)|| for every x and every pol-matsym family on the phase grid;
/// the Fock side uses norm_series.  When it stops at the dimension cap without
/// converging, slack(x) = deg(x) |x|_1 q^{N - deg(x)}, else 0.
DominationResult norm_domination(const std::vector<NcExpr>& sample, const Truncations& n, double q, int grid);

/// Degree uniform in [1, max_deg], letters uniform.
std::vector<NcExpr> random_words(std::mt19937_64& rng, AlgebraId alg, std::size_t count, int max_deg);
/// n x n arrays of holomorphic polynomials with entries of degree <= max_deg.
std::vector<std::vector<NcExpr>> random_holomorphic_arrays(std::mt19937_64& rng, int n, std::size_t count,
                                                           int max_deg);

struct HoloInequality {
  double fock = 0;     // ||(pi_F(a_ij))||
  double tau_sup = 0;  // sup_phi ||(tau_phi(a_ij))||
  double chi_sup = 0;  // sup_{phi1, phi2} ||(chi-coact(a_ij))||
};

/// Row-major n x n array of holomorphic elements; sups use a phase grid
/// refined by golden-section search around the best grid points.
HoloInequality holo_matrix_inequality(const std::vector<NcExpr>& a, int n, const Truncations& t, double q, int grid);

struct DilationResult {
  double unitarity = 0;     // ||U* U - I||
  double compression = 0;   // max_n ||P U^n P - T^n||, n <= m
  double psi = 0;           // Psi compressions against pi_F
  double psi_phi = 0;       // Psi_phi compressions against Fphi-coact
};

/// Dilation of the truncated C4 S and the Psi/Psi_phi compressions of
/// holomorphic samples whose degree stays within m.
DilationResult dilation_check(int N, int m, double q, const std::vector<NcExpr>& holomorphic, const Angle& phi);

/// Number of generators for which character_substitute(omega_{(phi1+phi2+pi)/2}(z), 1, phi2)
/// differs from theta_{phi1,phi2}(z); zero when the identity holds.
int lemma_bound_check(const Angle& phi1, const Angle& phi2);

struct DetUnitarity {
  double star_det = 0;  // ||omega(det)* omega(det) - q^-2||
  double det_star = 0;  // ||omega(det) omega(det)* - q^-2||
  Complex omega_det;    // <omega(det) e_0, e_0>
  double theta_modulus_residual = 0;  // | |theta(det)|^2 - q^-2 |
};

DetUnitarity det_unitarity_check(const Angle& phi, int N, double q);

/// Residuals of z11*, z21*, z22* against their det^-1 expressions in omega_phi
/// with det^-1 realized as q^2 omega_phi(det)*.
std::array<double, 3> regular_involution_check(const Angle& phi, int N, double q);

}  // namespace qshilov
